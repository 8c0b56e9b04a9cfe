"""Dense statevector simulation of RY / Hadamard / CNOT circuits.

Amplitude index bit ``k`` is the state of qubit ``k``.  Kernels mutate the
amplitude array in place and also return the state for chaining.  A state may
carry leading batch axes (shape ``(..., 2**n)``); rotation angles then
broadcast against those axes, which is how many inputs share one circuit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ResourceError
from .pauli import MAX_DIAGONAL_QUBITS

MAX_STATE_QUBITS = MAX_DIAGONAL_QUBITS
ENTANGLERS = ("ring", "chain")


@dataclass
class StateVector:
    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        # in-place kernels rely on reshape returning views
        self.amplitudes = np.ascontiguousarray(self.amplitudes, dtype=complex)
        if self.amplitudes.shape[-1] != 1 << self.n_qubits:
            raise DomainError(f"expected {1 << self.n_qubits} amplitudes, got {self.amplitudes.shape[-1]}")

    @property
    def batch_shape(self) -> tuple:
        return self.amplitudes.shape[:-1]

    def copy(self) -> StateVector:
        return StateVector(self.n_qubits, self.amplitudes.copy())

    def norm_squared(self) -> np.ndarray | float:
        return np.sum(np.abs(self.amplitudes) ** 2, axis=-1)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


def _check_qubits(n_qubits: int):
    if n_qubits < 1:
        raise DomainError("n_qubits must be >= 1")
    if n_qubits > MAX_STATE_QUBITS:
        raise ResourceError(f"{n_qubits} qubits exceeds the simulator cap of {MAX_STATE_QUBITS}")


def _check_qubit(state: StateVector, qubit: int):
    if not 0 <= qubit < state.n_qubits:
        raise DomainError(f"qubit {qubit} out of range for {state.n_qubits} qubits")


def basis_state(n_qubits: int, index: int = 0, batch_shape: tuple = ()) -> StateVector:
    _check_qubits(n_qubits)
    if not 0 <= index < 1 << n_qubits:
        raise DomainError(f"basis index {index} out of range")
    amps = np.zeros((*batch_shape, 1 << n_qubits), dtype=complex)
    amps[..., index] = 1.0
    return StateVector(n_qubits, amps)


def init_plus_state(n_qubits: int, batch_shape: tuple = ()) -> StateVector:
    """Uniform superposition, i.e. a Hadamard on every qubit of ``|0...0>``."""
    _check_qubits(n_qubits)
    amps = np.full((*batch_shape, 1 << n_qubits), 2.0 ** (-n_qubits / 2), dtype=complex)
    return StateVector(n_qubits, amps)


def _pair_view(state: StateVector, qubit: int) -> np.ndarray:
    # (..., high, 2, low): axis -2 selects the qubit value.
    return state.amplitudes.reshape(*state.batch_shape, -1, 2, 1 << qubit)


def _apply_real_2x2(state: StateVector, qubit: int, m00, m01, m10, m11) -> StateVector:
    v = _pair_view(state, qubit)
    a = v[..., 0, :].copy()
    b = v[..., 1, :]
    v[..., 0, :] = m00 * a + m01 * b
    v[..., 1, :] = m10 * a + m11 * b
    return state


def apply_ry(state: StateVector, qubit: int, angle) -> StateVector:
    """RY(t) = [[cos t/2, -sin t/2], [sin t/2, cos t/2]] on ``qubit``.

    ``angle`` is a scalar or an array broadcastable to the batch shape.
    """
    _check_qubit(state, qubit)
    half = np.asarray(angle, dtype=float) / 2
    c = np.cos(half)[..., None, None]
    s = np.sin(half)[..., None, None]
    return _apply_real_2x2(state, qubit, c, -s, s, c)


def apply_hadamard(state: StateVector, qubit: int) -> StateVector:
    _check_qubit(state, qubit)
    r = 1 / math.sqrt(2)
    return _apply_real_2x2(state, qubit, r, r, r, -r)


def apply_cnot(state: StateVector, control: int, target: int) -> StateVector:
    """Flip ``target`` on every amplitude whose ``control`` bit is 1."""
    _check_qubit(state, control)
    _check_qubit(state, target)
    if control == target:
        raise DomainError("control and target must differ")
    hi, lo = max(control, target), min(control, target)
    n = state.n_qubits
    v = state.amplitudes.reshape(*state.batch_shape, 1 << (n - hi - 1), 2, 1 << (hi - lo - 1), 2, 1 << lo)
    # axis -4 is qubit `hi`, axis -2 is qubit `lo`
    if control == hi:
        sub = v[..., 1, :, :, :]
        tmp = sub[..., 0, :].copy()
        sub[..., 0, :] = sub[..., 1, :]
        sub[..., 1, :] = tmp
    else:
        tmp = v[..., 0, :, 1, :].copy()
        v[..., 0, :, 1, :] = v[..., 1, :, 1, :]
        v[..., 1, :, 1, :] = tmp
    return state


def entangler_pairs(n_qubits: int, entangler: str = "ring") -> list[tuple[int, int]]:
    """(control, target) pairs in application order."""
    if entangler not in ENTANGLERS:
        raise DomainError(f"entangler must be one of {ENTANGLERS}, got {entangler!r}")
    if n_qubits < 2:
        return []
    if entangler == "chain":
        return [(q, q + 1) for q in range(n_qubits - 1)]
    return [(q, (q + 1) % n_qubits) for q in range(n_qubits)]


@dataclass
class AnsatzParams:
    """Rotation angles in radians, one row per layer and one column per qubit."""

    angles: np.ndarray

    def __post_init__(self):
        self.angles = np.array(self.angles, dtype=float)
        if self.angles.ndim == 1 and self.angles.size == 0:
            self.angles = self.angles.reshape(0, 0)
        if self.angles.ndim != 2:
            raise DomainError(f"angles must be a (layers, n_qubits) matrix, got shape {self.angles.shape}")
        if not np.all(np.isfinite(self.angles)):
            raise DomainError("angles must be finite")

    @classmethod
    def zeros(cls, layers: int, n_qubits: int) -> AnsatzParams:
        return cls(np.zeros((layers, n_qubits)))

    @classmethod
    def random(cls, layers: int, n_qubits: int, rng: np.random.Generator) -> AnsatzParams:
        """Uniform on (-pi, pi]."""
        return cls(np.pi - rng.uniform(0.0, 2 * np.pi, size=(layers, n_qubits)))

    @property
    def layers(self) -> int:
        return self.angles.shape[0]

    @property
    def n_qubits(self) -> int:
        return self.angles.shape[1]

    def copy(self) -> AnsatzParams:
        return AnsatzParams(self.angles.copy())


def apply_ansatz(state: StateVector, params: AnsatzParams, entangler: str = "ring") -> StateVector:
    """Each layer: RY on every qubit, then the CNOT entangler in ascending control order."""
    if params.layers and params.n_qubits != state.n_qubits:
        raise DomainError(f"params cover {params.n_qubits} qubits, state has {state.n_qubits}")
    return apply_layers(state, params.angles, entangler)


def apply_layers(state: StateVector, angles: np.ndarray, entangler: str = "ring") -> StateVector:
    """Ansatz with angles of shape ``(..., layers, n_qubits)``.

    Leading axes of ``angles`` broadcast against the state's batch axes, so a
    batch of parameter sets (e.g. parameter shifts) runs in one pass.
    """
    angles = np.asarray(angles, dtype=float)
    if angles.shape[-1] != state.n_qubits and angles.shape[-2] != 0:
        raise DomainError(f"angles cover {angles.shape[-1]} qubits, state has {state.n_qubits}")
    pairs = entangler_pairs(state.n_qubits, entangler)
    for layer in range(angles.shape[-2]):
        for q in range(state.n_qubits):
            apply_ry(state, q, angles[..., layer, q])
        for c, t in pairs:
            apply_cnot(state, c, t)
    return state


def expectation_diagonal(state: StateVector, diag: np.ndarray):
    """<psi|D|psi> for a diagonal operator D, per batch element."""
    diag = np.asarray(diag, dtype=float)
    if diag.shape[-1] != state.amplitudes.shape[-1]:
        raise DomainError(f"diagonal length {diag.shape[-1]} does not match {state.amplitudes.shape[-1]} amplitudes")
    return np.sum(state.probabilities() * diag, axis=-1)


def z_diagonal(qubit: int, n_qubits: int) -> np.ndarray:
    """Diagonal of Z on a single qubit."""
    idx = np.arange(1 << n_qubits)
    return 1.0 - 2.0 * ((idx >> qubit) & 1)


def angle_encode(features, n_qubits: int) -> StateVector:
    """Product state RY(x_q)|0> on each qubit.

    ``features`` has shape ``(..., n_qubits)``; leading axes become batch axes.
    """
    x = np.asarray(features, dtype=float)
    if x.shape[-1:] != (n_qubits,):
        raise DomainError(f"expected {n_qubits} features, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise DomainError("features must be finite")
    state = basis_state(n_qubits, 0, batch_shape=x.shape[:-1])
    for q in range(n_qubits):
        apply_ry(state, q, x[..., q])
    return state
