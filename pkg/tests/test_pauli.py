import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from egvqc.errors import DomainError, ResourceError
from egvqc.pauli import (
    GraphHamiltonian,
    HamiltonianTerm,
    PauliZString,
    build_diagonal,
    diagonal_entry,
    make_zstring,
    max_term_bound,
    merge_terms,
    multiply_zstrings,
    spectral_bounds,
    walsh_hadamard,
)
from oracles import H, kron_all, zstring_matrix

masks4 = st.integers(0, 15)


def test_label_puts_highest_qubit_first():
    assert PauliZString(1, 4).label() == "IIIZ"
    assert PauliZString(0b1010, 4).label() == "ZIZI"
    assert PauliZString(5, 3).bits() == "101"
    assert PauliZString(0b1011, 4).weight == 3


def test_string_validation():
    with pytest.raises(DomainError):
        PauliZString(4, 2)
    with pytest.raises(DomainError):
        PauliZString(-1, 2)
    with pytest.raises(DomainError):
        PauliZString(0, 0)


def test_make_zstring():
    assert make_zstring([0, 2], 3).mask == 5
    assert make_zstring([], 3).mask == 0
    with pytest.raises(DomainError):
        make_zstring([3], 3)


def test_multiply_mismatched_sizes():
    with pytest.raises(DomainError):
        multiply_zstrings(PauliZString(1, 2), PauliZString(1, 3))


@given(masks4, masks4, masks4)
def test_product_group_law(a, b, c):
    pa, pb, pc = (PauliZString(m, 4) for m in (a, b, c))
    e = PauliZString(0, 4)
    assert (pa * pb) * pc == pa * (pb * pc)
    assert pa * e == pa
    assert pa * pa == e
    assert pa * pb == pb * pa


@settings(max_examples=40)
@given(masks4, masks4)
def test_product_matches_matrix_product(a, b):
    prod = PauliZString(a, 4) * PauliZString(b, 4)
    np.testing.assert_array_equal(zstring_matrix(prod.mask, 4), zstring_matrix(a, 4) @ zstring_matrix(b, 4))


def test_diagonal_entry_matches_dense():
    for n in (1, 2, 3):
        for mask in range(1 << n):
            dense = np.diag(zstring_matrix(mask, n))
            for x in range(1 << n):
                assert diagonal_entry(PauliZString(mask, n), x) == dense[x]
    with pytest.raises(DomainError):
        diagonal_entry(PauliZString(1, 2), 4)


def test_term_rejects_non_finite():
    with pytest.raises(DomainError):
        HamiltonianTerm(float("nan"), PauliZString(1, 2))
    with pytest.raises(DomainError):
        HamiltonianTerm(float("inf"), PauliZString(1, 2))


def test_merge_sums_drops_and_sorts():
    z = lambda m: PauliZString(m, 3)
    merged = merge_terms(
        [HamiltonianTerm(1.0, z(5)), HamiltonianTerm(2.0, z(1)), HamiltonianTerm(0.5, z(5)), HamiltonianTerm(-2.0, z(1))]
    )
    assert [(t.mask, t.coefficient) for t in merged] == [(5, 1.5)]
    assert merge_terms([]) == []
    with pytest.raises(DomainError):
        merge_terms([HamiltonianTerm(1.0, PauliZString(1, 2)), HamiltonianTerm(1.0, PauliZString(1, 3))])


def test_walsh_hadamard_matches_hadamard_matrix(rng):
    for n in (1, 2, 4):
        v = rng.normal(size=1 << n)
        hn = kron_all([H * np.sqrt(2)] * n)
        np.testing.assert_allclose(walsh_hadamard(v), hn @ v, atol=1e-12)
    batch = rng.normal(size=(3, 8))
    np.testing.assert_allclose(walsh_hadamard(batch), np.stack([walsh_hadamard(b) for b in batch]))
    with pytest.raises(DomainError):
        walsh_hadamard(np.ones(6))


def test_hamiltonian_rejects_duplicates():
    t = HamiltonianTerm(1.0, PauliZString(1, 2))
    with pytest.raises(DomainError):
        GraphHamiltonian(2, (t, t))
    with pytest.raises(DomainError):
        GraphHamiltonian(3, (t,))


def test_build_diagonal_matches_kronecker_oracle(rng):
    n = 4
    terms = [HamiltonianTerm(float(c), PauliZString(int(m), n)) for c, m in zip(rng.normal(size=10), rng.integers(0, 16, 10))]
    h = GraphHamiltonian.from_terms(n, terms)
    dense = sum(t.coefficient * zstring_matrix(t.mask, n) for t in terms)
    np.testing.assert_allclose(build_diagonal(h), np.diag(dense), atol=1e-12)
    lo, hi = spectral_bounds(h)
    eig = np.linalg.eigvalsh(dense)
    assert abs(lo - eig[0]) < 1e-12 and abs(hi - eig[-1]) < 1e-12


def test_diagonal_is_cached_and_read_only():
    h = GraphHamiltonian.from_terms(2, [HamiltonianTerm(0.5, PauliZString(3, 2))])
    d = h.diagonal()
    assert d is h.diagonal()
    with pytest.raises(ValueError):
        d[0] = 1.0


def test_diagonal_cap():
    h = GraphHamiltonian.from_terms(5, [HamiltonianTerm(1.0, PauliZString(1, 5))])
    with pytest.raises(ResourceError):
        build_diagonal(h, cap=4)


def test_json_round_trip_and_scaling():
    h = GraphHamiltonian.from_terms(
        3, [HamiltonianTerm(0.25, PauliZString(3, 3)), HamiltonianTerm(-1.5, PauliZString(4, 3))], origin_bound=2.0
    )
    back = GraphHamiltonian.from_json(h.to_json())
    assert back == h
    s = h.scaled(-2.0)
    assert [t.coefficient for t in s.terms] == [-0.5, 3.0]
    assert s.origin_bound == 4.0
    assert h.coefficient_l1 == 1.75
    assert max_term_bound(h.terms) == 1.5
    assert max_term_bound([]) == 0.0
