import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from egvqc.errors import DomainError, ResourceError
from egvqc.simulator import (
    AnsatzParams,
    StateVector,
    angle_encode,
    apply_ansatz,
    apply_cnot,
    apply_hadamard,
    apply_layers,
    apply_ry,
    basis_state,
    entangler_pairs,
    expectation_diagonal,
    init_plus_state,
    z_diagonal,
)
from oracles import H, ansatz_unitary, cnot_matrix, plus_state, ry, single_qubit


def random_state(rng, n):
    v = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return StateVector(n, v / np.linalg.norm(v))


def test_basis_and_plus_states():
    s = basis_state(3, 5)
    assert s.amplitudes[5] == 1 and s.norm_squared() == 1
    np.testing.assert_allclose(init_plus_state(3).amplitudes, plus_state(3))
    assert init_plus_state(2, batch_shape=(4,)).batch_shape == (4,)
    with pytest.raises(DomainError):
        basis_state(2, 4)
    with pytest.raises(DomainError):
        init_plus_state(0)
    with pytest.raises(ResourceError):
        init_plus_state(21)
    with pytest.raises(DomainError):
        StateVector(2, np.ones(3))


def test_ry_pi_flips_zero():
    s = apply_ry(basis_state(1), 0, np.pi)
    np.testing.assert_allclose(s.amplitudes, [0, 1], atol=1e-15)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_single_qubit_gates_match_dense(rng, n):
    for q in range(n):
        theta = rng.uniform(-np.pi, np.pi)
        s = random_state(rng, n)
        ref = single_qubit(ry(theta), q, n) @ s.amplitudes
        np.testing.assert_allclose(apply_ry(s.copy(), q, theta).amplitudes, ref, atol=1e-12)
        ref = single_qubit(H, q, n) @ s.amplitudes
        np.testing.assert_allclose(apply_hadamard(s.copy(), q).amplitudes, ref, atol=1e-12)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_cnot_matches_permutation(rng, n):
    for c in range(n):
        for t in range(n):
            if c == t:
                continue
            s = random_state(rng, n)
            ref = cnot_matrix(c, t, n) @ s.amplitudes
            np.testing.assert_allclose(apply_cnot(s.copy(), c, t).amplitudes, ref, atol=1e-15)


def test_gate_argument_errors():
    s = basis_state(2)
    with pytest.raises(DomainError):
        apply_ry(s, 2, 0.1)
    with pytest.raises(DomainError):
        apply_cnot(s, 1, 1)


def test_batched_rotation_equals_loop(rng):
    angles = rng.uniform(-np.pi, np.pi, size=5)
    batch = apply_ry(init_plus_state(3, batch_shape=(5,)), 1, angles)
    for k, a in enumerate(angles):
        np.testing.assert_allclose(batch.amplitudes[k], apply_ry(init_plus_state(3), 1, a).amplitudes, atol=1e-15)


def test_entangler_pairs():
    assert entangler_pairs(3) == [(0, 1), (1, 2), (2, 0)]
    assert entangler_pairs(3, "chain") == [(0, 1), (1, 2)]
    assert entangler_pairs(1) == []
    assert entangler_pairs(2) == [(0, 1), (1, 0)]
    with pytest.raises(DomainError):
        entangler_pairs(3, "star")


def test_ansatz_params():
    rng = np.random.default_rng(0)
    p = AnsatzParams.random(200, 5, rng)
    assert p.layers == 200 and p.n_qubits == 5
    assert np.all(p.angles > -np.pi) and np.all(p.angles <= np.pi)
    assert AnsatzParams.zeros(2, 3).angles.shape == (2, 3)
    with pytest.raises(DomainError):
        AnsatzParams(np.ones(3))
    with pytest.raises(DomainError):
        AnsatzParams([[np.inf]])
    q = p.copy()
    q.angles[0, 0] = 10
    assert p.angles[0, 0] != 10


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4), st.integers(0, 3), st.sampled_from(["ring", "chain"]), st.integers(0, 2**32))
def test_ansatz_matches_dense_unitary_and_preserves_norm(n, layers, entangler, seed):
    r = np.random.default_rng(seed)
    params = AnsatzParams.random(layers, n, r)
    psi = apply_ansatz(init_plus_state(n), params, entangler)
    ref = ansatz_unitary(params.angles.reshape(layers, n), n, entangler) @ plus_state(n)
    np.testing.assert_allclose(psi.amplitudes, ref, atol=1e-10)
    assert psi.norm_squared() == pytest.approx(1.0, abs=1e-12)


def test_ansatz_qubit_mismatch():
    with pytest.raises(DomainError):
        apply_ansatz(init_plus_state(2), AnsatzParams.zeros(1, 3))


def test_batched_layers_equal_loop(rng):
    angles = rng.uniform(-np.pi, np.pi, size=(4, 2, 3))
    batch = apply_layers(init_plus_state(3, batch_shape=(4,)), angles)
    for k in range(4):
        single = apply_layers(init_plus_state(3), angles[k])
        np.testing.assert_allclose(batch.amplitudes[k], single.amplitudes, atol=1e-14)


def test_expectation_diagonal(rng):
    s = random_state(rng, 3)
    d = rng.normal(size=8)
    ref = np.vdot(s.amplitudes, np.diag(d) @ s.amplitudes).real
    assert expectation_diagonal(s, d) == pytest.approx(ref, abs=1e-12)
    with pytest.raises(DomainError):
        expectation_diagonal(s, np.ones(4))


def test_z_diagonal_and_angle_encoding():
    np.testing.assert_array_equal(z_diagonal(1, 2), [1, 1, -1, -1])
    s = angle_encode([np.pi / 2, 0.0], 2)
    assert expectation_diagonal(s, z_diagonal(0, 2)) == pytest.approx(0.0, abs=1e-15)
    assert expectation_diagonal(s, z_diagonal(1, 2)) == pytest.approx(1.0)
    assert angle_encode(np.zeros((3, 2)), 2).batch_shape == (3,)
    with pytest.raises(DomainError):
        angle_encode([0.1], 2)
    with pytest.raises(DomainError):
        angle_encode([np.nan, 0.0], 2)
