"""Cayley-graph (4,8) construction: validation, cycles, labeling."""

from collections import Counter

import numpy as np
import pytest

from gf4ldpc import gf4
from gf4ldpc.cayley_code import (
    CYCLE_TYPES,
    CayleySpec,
    build_48_code,
    build_cayley_graph,
    cayley_p13_spec,
    enumerate_check_cycles,
    validate_cayley,
)
from gf4ldpc.coset_code import ConstructionError
from gf4ldpc.matgroup import Mat2, enumerate_group
from gf4ldpc.stabilizer import ParityCheck, qpc_dumps
from gf4ldpc.tanner import four_cycle_graph


@pytest.fixture(scope="module")
def group13():
    return enumerate_group("det4", 13)


@pytest.fixture(scope="module")
def spec13():
    return cayley_p13_spec()


@pytest.fixture(scope="module")
def graph13(spec13, group13):
    return build_cayley_graph(spec13, group13)


@pytest.fixture(scope="module")
def code13(spec13, group13):
    return build_48_code(spec13, group13)


def test_spec_requires_one_mod_four():
    with pytest.raises(ValueError):
        CayleySpec(7, Mat2.identity(7), Mat2.identity(7))


def test_validation_passes_for_pinned_pair(spec13, group13):
    report = validate_cayley(spec13, group13)
    assert report.all_passed, str(report)
    assert report["generators_generate_group"].passed
    assert report["relation_plus_minusinv_order_4"].passed
    assert report["relation_minus_plus_order_4"].passed


def test_degenerate_pair_fails_validation(group13):
    # g- equal to g+ collapses S to two elements.
    m = Mat2.make(12, 1, 5, 0, 13)
    report = validate_cayley(CayleySpec(13, m, m), group13)
    assert not report["generator_set_has_4_elements"].passed


def test_inverse_pair_fails_validation(group13):
    # g- equal to g+^-1 (the degenerate published pair's defect):
    # |S| = 2 and the relation orders are wrong.
    gp = Mat2.make(9, 9, 12, 10, 13)
    gm = gp.inv()
    assert gm.entries() == (11, 7, 5, 6)
    report = validate_cayley(CayleySpec(13, gp, gm), group13)
    assert not report.all_passed
    assert not report["generator_set_has_4_elements"].passed
    assert not report["generators_generate_group"].passed


def test_cayley_graph_shape(graph13):
    assert graph13.n_vertices == 4 * 13 * (13 ** 2 - 1) == 8736
    assert graph13.n_edges == 17472
    degrees = {len(set(nbrs)) for nbrs in graph13.neighbors}
    assert degrees == {4}


def test_identity_vertex_neighbors(graph13, group13, spec13):
    g = group13
    e = g.identity
    expected = {g.index_of((spec13.gplus,)),
                g.inv(g.index_of((spec13.gplus,))),
                g.index_of((spec13.gminus,)),
                g.inv(g.index_of((spec13.gminus,)))}
    assert set(graph13.neighbors[e]) == expected


def test_class_flips_exactly_on_gminus_edges(graph13, group13):
    """det g+ is in {+-1} so g+ edges preserve determinant class, while
    g- edges cross; each check cycle then carries 4 qubits per class."""
    rng = np.random.default_rng(4)
    for _ in range(300):
        x = int(rng.integers(0, graph13.n_vertices))
        np_, nP, nm, nM = graph13.neighbors[x]
        cls = graph13.det_class_one(x)
        assert graph13.det_class_one(np_) == cls
        assert graph13.det_class_one(nP) == cls
        assert graph13.det_class_one(nm) != cls
        assert graph13.det_class_one(nM) != cls


def test_cycle_count_and_incidence(graph13):
    cycles, vertex_cycles = enumerate_check_cycles(graph13)
    n = graph13.n_vertices
    assert len(cycles) == n // 2 == 4368
    assert all(len(c.vertices) == 8 for c in cycles)
    assert all(len(set(ids)) == 4 for ids in vertex_cycles)
    # every vertex appears on exactly 4 cycles in total
    appearances = Counter()
    for c in cycles:
        appearances.update(c.vertices)
    assert set(appearances.values()) == {4}


def test_incident_cycles_use_each_edge_twice(graph13, group13):
    cycles, vertex_cycles = enumerate_check_cycles(graph13)
    rng = np.random.default_rng(8)
    for _ in range(60):
        x = int(rng.integers(0, graph13.n_vertices))
        edge_use = Counter()
        for cid in vertex_cycles[x]:
            verts = cycles[cid].vertices
            i = verts.index(x)
            edge_use[verts[(i + 1) % 8]] += 1
            edge_use[verts[(i - 1) % 8]] += 1
        assert edge_use == Counter({nbr: 2 for nbr in graph13.neighbors[x]})


def test_walk_closure_from_identity(graph13, group13, spec13):
    g = group13
    gp = g.index_of((spec13.gplus,))
    gm = g.index_of((spec13.gminus,))
    cur = g.identity
    for step in range(8):
        cur = g.mul(cur, gp if step % 2 == 0 else gm)
    assert cur == g.identity


def test_code_shape_and_column_types(code13):
    assert code13.n_qubits == 8736
    assert code13.n_checks == 4368
    assert code13.regularity() == (4, 8)
    for adj in code13.by_qubit:
        counts = Counter(label for _, label in adj)
        assert counts[gf4.OMEGA] == 2 and counts[gf4.OMEGA_BAR] == 2
    for adj in code13.by_check:
        counts = Counter(label for _, label in adj)
        assert counts[gf4.OMEGA] == 4 and counts[gf4.OMEGA_BAR] == 4


def test_code_orthogonal_and_k(code13):
    pc = ParityCheck.from_tanner(code13)
    assert pc.verify_orthogonality() == []
    k, deps = pc.logical_count()
    assert k == 4370
    assert deps == pc.m - (pc.n - k) == 2


def test_omega_subgraph_is_2_4_regular(code13):
    wq = {sum(1 for _, l in adj if l == gf4.OMEGA) for adj in code13.by_qubit}
    wc = {sum(1 for _, l in adj if l == gf4.OMEGA) for adj in code13.by_check}
    assert wq == {2} and wc == {4}


def test_four_cycle_graph_is_4_regular(code13):
    fc = four_cycle_graph(code13)
    assert fc.min_degree == fc.max_degree == 4


def test_four_cycle_graph_matches_cayley_graph(code13, graph13):
    fc = four_cycle_graph(code13)
    rng = np.random.default_rng(15)
    for _ in range(100):
        x = int(rng.integers(0, code13.n_qubits))
        assert fc.adjacency[x] == set(graph13.neighbors[x])


def test_determinism_identical_bytes(spec13, group13):
    a = qpc_dumps(ParityCheck.from_tanner(build_48_code(spec13, group13)))
    b = qpc_dumps(ParityCheck.from_tanner(build_48_code(spec13, group13)))
    assert a == b


def test_build_rejects_failing_spec(group13):
    m = Mat2.make(12, 1, 5, 0, 13)
    with pytest.raises(ConstructionError):
        build_48_code(CayleySpec(13, m, m), group13)
