"""Exact arithmetic over GF(4) = {0, 1, w, W} in a 2-bit (x, z) encoding.

Symbols are plain ints 0..3.  Bit 0 is the x-bit, bit 1 the z-bit, so

    0 -> (0,0)   identity Pauli I
    1 -> (1,0)   w      (Pauli X)
    2 -> (0,1)   W = w^2 (Pauli Z)
    3 -> (1,1)   field one (Pauli Y)

Field addition is XOR of codes, so vectors of symbols stored as numpy
uint8 arrays add with ``^``.  The Hermitian trace pairing reduces to the
binary symplectic product of the (x, z) bits, which is what every hot
loop in the decoder and the rank routines actually computes.
"""

from __future__ import annotations

import numpy as np

# Symbol codes (2-bit encoding, x-bit | z-bit << 1).
ZERO = 0
OMEGA = 1
OMEGA_BAR = 2
ONE = 3

SYMBOLS = (ZERO, OMEGA, OMEGA_BAR, ONE)

# Fixed text rendering for files and logs (case-sensitive).
SYMBOL_CHARS = {ZERO: ".", OMEGA: "w", OMEGA_BAR: "W", ONE: "y"}
CHAR_SYMBOLS = {c: s for s, c in SYMBOL_CHARS.items()}

# Multiplication table.  3 is the multiplicative identity; w*w = W,
# w*W = 1, W*W = w.
MUL_TABLE = (
    (0, 0, 0, 0),
    (0, 2, 3, 1),
    (0, 3, 1, 2),
    (0, 1, 2, 3),
)

# Conjugation x -> x^2 swaps w and W.
CONJ_TABLE = (0, 2, 1, 3)

# tr(x) = x + x^2, identified with a bit: nonzero exactly for w, W.
TRACE_TABLE = (0, 1, 1, 0)

# herm_pair(a, b) = tr(a * conj(b)) = (a.x & b.z) ^ (a.z & b.x).
HERM_TABLE = tuple(
    tuple(((a & 1) & (b >> 1)) ^ (((a >> 1) & (b & 1))) for b in SYMBOLS)
    for a in SYMBOLS
)

# Numpy copies of the tables for vectorised lookups.
MUL_ARR = np.array(MUL_TABLE, dtype=np.uint8)
HERM_ARR = np.array(HERM_TABLE, dtype=np.uint8)
TRACE_ARR = np.array(TRACE_TABLE, dtype=np.uint8)


def f4_add(a: int, b: int) -> int:
    """Field addition (characteristic 2)."""
    return a ^ b


def f4_mul(a: int, b: int) -> int:
    """Field multiplication."""
    return MUL_TABLE[a][b]


def f4_conj(a: int) -> int:
    """Conjugation x -> x^2."""
    return CONJ_TABLE[a]


def f4_trace(a: int) -> int:
    """tr(x) = x + conj(x), returned as a bit."""
    return TRACE_TABLE[a]


def herm_pair(a: int, b: int) -> int:
    """tr(a * conj(b)): 0 iff the associated Pauli operators commute."""
    return HERM_TABLE[a][b]


def as_vector(symbols) -> np.ndarray:
    """Coerce a sequence of symbol codes to a uint8 vector, validating range."""
    v = np.asarray(symbols, dtype=np.uint8)
    if v.ndim != 1:
        raise ValueError(f"expected a 1-D symbol sequence, got shape {v.shape}")
    if v.size and v.max() > 3:
        raise ValueError("symbol codes must be in 0..3")
    return v


def vec_inner(u, v) -> int:
    """Hermitian trace inner product of two symbol vectors, as a bit.

    XOR over positions of herm_pair(u_i, v_i); raises on length mismatch.
    """
    u = np.asarray(u, dtype=np.uint8)
    v = np.asarray(v, dtype=np.uint8)
    if u.shape != v.shape:
        raise ValueError(f"length mismatch: {u.shape} vs {v.shape}")
    if u.size == 0:
        return 0
    bits = ((u & 1) & (v >> 1)) ^ ((u >> 1) & (v & 1))
    return int(np.bitwise_xor.reduce(bits))


def to_symplectic(v) -> np.ndarray:
    """Binary image of a symbol vector: all x-bits, then all z-bits (length 2n)."""
    v = np.asarray(v, dtype=np.uint8)
    return np.concatenate([v & 1, v >> 1])


def from_symplectic(bits) -> np.ndarray:
    """Inverse of :func:`to_symplectic`."""
    bits = np.asarray(bits, dtype=np.uint8)
    if bits.size % 2:
        raise ValueError("symplectic vector length must be even")
    n = bits.size // 2
    return (bits[:n] | (bits[n:] << 1)).astype(np.uint8)


def symplectic_int(v) -> int:
    """Pack a symbol vector into a Python int bitset (x-bits low, z-bits high).

    Bit i is the x-bit of position i; bit n+i its z-bit.  This is the
    carrier for the bit-packed GF(2) rank and membership routines.
    """
    bits = to_symplectic(v)
    return int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little")


def int_to_symbols(acc: int, n: int) -> np.ndarray:
    """Inverse of :func:`symplectic_int` for a known length n."""
    nbytes = (2 * n + 7) // 8
    raw = np.frombuffer(acc.to_bytes(nbytes, "little"), dtype=np.uint8)
    bits = np.unpackbits(raw, bitorder="little")[: 2 * n]
    return from_symplectic(bits)


def format_vector(v) -> str:
    """Render a symbol vector with the fixed . w W y alphabet."""
    return "".join(SYMBOL_CHARS[int(s)] for s in np.asarray(v))


def parse_vector(text: str) -> np.ndarray:
    """Parse the rendering produced by :func:`format_vector`."""
    try:
        return np.array([CHAR_SYMBOLS[c] for c in text], dtype=np.uint8)
    except KeyError as exc:
        raise ValueError(f"invalid symbol character {exc.args[0]!r}") from None
