"""Field arithmetic, trace pairing, and the Pauli commutation oracle."""

import numpy as np
import pytest
from hypothesis import given, strategies as st

from gf4ldpc import gf4

# Independent oracle: explicit 2x2 complex Pauli matrices under the fixed
# correspondence 0<->I, w<->X, W<->Z, 1<->Y.
_PAULI = {
    gf4.ZERO: np.eye(2, dtype=complex),
    gf4.OMEGA: np.array([[0, 1], [1, 0]], dtype=complex),
    gf4.OMEGA_BAR: np.array([[1, 0], [0, -1]], dtype=complex),
    gf4.ONE: np.array([[0, -1j], [1j, 0]], dtype=complex),
}


def _anticommute_bit(a: int, b: int) -> int:
    pa, pb = _PAULI[a], _PAULI[b]
    return 0 if np.allclose(pa @ pb, pb @ pa) else 1


symbols = st.sampled_from(gf4.SYMBOLS)
vectors = st.lists(symbols, min_size=1, max_size=24).map(np.array)


def test_addition_examples():
    assert gf4.f4_add(gf4.OMEGA, gf4.OMEGA_BAR) == gf4.ONE
    assert gf4.f4_add(gf4.ZERO, gf4.OMEGA) == gf4.OMEGA
    for x in gf4.SYMBOLS:
        assert gf4.f4_add(x, x) == gf4.ZERO


def test_one_plus_omega_plus_omegabar_is_zero():
    assert gf4.f4_add(gf4.ONE, gf4.f4_add(gf4.OMEGA, gf4.OMEGA_BAR)) == gf4.ZERO


def test_multiplication_examples():
    assert gf4.f4_mul(gf4.OMEGA, gf4.OMEGA) == gf4.OMEGA_BAR
    assert gf4.f4_mul(gf4.OMEGA, gf4.OMEGA_BAR) == gf4.ONE
    for x in gf4.SYMBOLS:
        assert gf4.f4_mul(gf4.ZERO, x) == gf4.ZERO
        assert gf4.f4_mul(gf4.ONE, x) == x


def test_field_axioms_exhaustive():
    for a in gf4.SYMBOLS:
        for b in gf4.SYMBOLS:
            assert gf4.f4_mul(a, b) == gf4.f4_mul(b, a)
            for c in gf4.SYMBOLS:
                left = gf4.f4_mul(a, gf4.f4_add(b, c))
                right = gf4.f4_add(gf4.f4_mul(a, b), gf4.f4_mul(a, c))
                assert left == right


def test_conjugation_is_squaring():
    for x in gf4.SYMBOLS:
        assert gf4.f4_conj(x) == gf4.f4_mul(x, x)


def test_trace_values():
    assert gf4.f4_trace(gf4.ZERO) == 0
    assert gf4.f4_trace(gf4.ONE) == 0
    assert gf4.f4_trace(gf4.OMEGA) == 1
    assert gf4.f4_trace(gf4.OMEGA_BAR) == 1
    for x in gf4.SYMBOLS:
        # tr(x) = x + conj(x) lands in the prime subfield {0, 1};
        # the bit 1 is the field element ONE.
        field_val = gf4.f4_add(x, gf4.f4_conj(x))
        assert field_val == (gf4.ONE if gf4.f4_trace(x) else gf4.ZERO)


def test_herm_pair_matches_pauli_oracle_exhaustively():
    for a in gf4.SYMBOLS:
        for b in gf4.SYMBOLS:
            assert gf4.herm_pair(a, b) == _anticommute_bit(a, b), (a, b)


def test_herm_pair_equals_trace_formula():
    for a in gf4.SYMBOLS:
        for b in gf4.SYMBOLS:
            assert gf4.herm_pair(a, b) == gf4.f4_trace(gf4.f4_mul(a, gf4.f4_conj(b)))


def test_herm_pair_examples():
    assert gf4.herm_pair(gf4.OMEGA, gf4.OMEGA_BAR) == 1
    assert gf4.herm_pair(gf4.OMEGA, gf4.OMEGA) == 0
    # Y vs X anticommute (cross-checked by the oracle above).
    assert gf4.herm_pair(gf4.ONE, gf4.OMEGA) == 1


@given(symbols, symbols)
def test_herm_pair_symmetric(a, b):
    assert gf4.herm_pair(a, b) == gf4.herm_pair(b, a)
    assert gf4.herm_pair(a, gf4.ZERO) == 0
    assert gf4.herm_pair(a, a) == 0


def test_vec_inner_examples():
    assert gf4.vec_inner([gf4.OMEGA], [gf4.OMEGA_BAR]) == 1
    assert gf4.vec_inner([gf4.OMEGA, gf4.OMEGA], [gf4.OMEGA_BAR, gf4.OMEGA_BAR]) == 0


@given(vectors)
def test_vec_inner_self_zero(u):
    assert gf4.vec_inner(u, u) == 0


@given(st.integers(1, 16), st.data())
def test_vec_inner_biadditive(n, data):
    u = np.array(data.draw(st.lists(symbols, min_size=n, max_size=n)), dtype=np.uint8)
    w = np.array(data.draw(st.lists(symbols, min_size=n, max_size=n)), dtype=np.uint8)
    v = np.array(data.draw(st.lists(symbols, min_size=n, max_size=n)), dtype=np.uint8)
    assert gf4.vec_inner(u ^ w, v) == gf4.vec_inner(u, v) ^ gf4.vec_inner(w, v)


def test_vec_inner_length_mismatch():
    with pytest.raises(ValueError):
        gf4.vec_inner([0, 1], [0])


def test_to_symplectic_layout():
    v = np.array([gf4.OMEGA], dtype=np.uint8)
    assert gf4.to_symplectic(v).tolist() == [1, 0]
    z = np.zeros(5, dtype=np.uint8)
    assert not gf4.to_symplectic(z).any()


@given(vectors)
def test_symplectic_roundtrip(v):
    assert np.array_equal(gf4.from_symplectic(gf4.to_symplectic(v)), v)


@given(st.integers(1, 16), st.data())
def test_symplectic_additivity(n, data):
    u = np.array(data.draw(st.lists(symbols, min_size=n, max_size=n)), dtype=np.uint8)
    v = np.array(data.draw(st.lists(symbols, min_size=n, max_size=n)), dtype=np.uint8)
    lhs = gf4.to_symplectic(u ^ v)
    rhs = gf4.to_symplectic(u) ^ gf4.to_symplectic(v)
    assert np.array_equal(lhs, rhs)


@given(vectors)
def test_symplectic_int_roundtrip(v):
    acc = gf4.symplectic_int(v)
    assert np.array_equal(gf4.int_to_symbols(acc, len(v)), v)


def test_rendering_alphabet():
    v = [gf4.ZERO, gf4.OMEGA, gf4.OMEGA_BAR, gf4.ONE]
    assert gf4.format_vector(v) == ".wWy"
    assert np.array_equal(gf4.parse_vector(".wWy"), np.array(v, dtype=np.uint8))
    with pytest.raises(ValueError):
        gf4.parse_vector("x")
