"""Group-constructed regular quantum LDPC codes over GF(4).

Builds two families of self-orthogonal GF(4) parity-check matrices from
finite matrix-group data, validates the commutation constraints, decodes
syndromes with message passing, and measures block-error rates over a
simulated depolarizing channel.
"""

__version__ = "0.1.0"

from .stabilizer import CodeSummary, OmegaCycleWitness, ParityCheck, read_qpc, write_qpc
from .tanner import FourCycleGraph, TannerGraph, four_cycle_graph

__all__ = [
    "CodeSummary",
    "FourCycleGraph",
    "OmegaCycleWitness",
    "ParityCheck",
    "TannerGraph",
    "four_cycle_graph",
    "read_qpc",
    "write_qpc",
]
