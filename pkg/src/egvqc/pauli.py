"""Tensor products of Pauli-Z and identity factors, stored as bitmasks.

Qubit ``k`` corresponds to bit ``k`` of both the mask and the computational
basis index, so qubit 0 is the least significant bit.  In tensor notation the
rightmost factor is qubit 0: ``I⊗I⊗I⊗Z`` is ``mask=0b0001``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, ResourceError

#: Largest qubit count for which a dense diagonal is materialised (8 MB of float64).
MAX_DIAGONAL_QUBITS = 20

#: Merged coefficients below this magnitude are dropped.
MERGE_TOLERANCE = 1e-12


@dataclass(frozen=True, order=True)
class PauliZString:
    """Z on every qubit whose bit is set in ``mask``, identity elsewhere."""

    mask: int
    n_qubits: int

    def __post_init__(self):
        if self.n_qubits < 1:
            raise DomainError(f"n_qubits must be >= 1, got {self.n_qubits}")
        if not 0 <= self.mask < (1 << self.n_qubits):
            raise DomainError(f"mask {self.mask} does not fit in {self.n_qubits} qubits")

    @property
    def weight(self) -> int:
        """Number of Z factors."""
        return self.mask.bit_count()

    def label(self) -> str:
        """Operator string with qubit ``n-1`` first, e.g. ``'IIIZ'``."""
        return "".join("Z" if (self.mask >> k) & 1 else "I" for k in reversed(range(self.n_qubits)))

    def bits(self) -> str:
        return format(self.mask, f"0{self.n_qubits}b")

    def __mul__(self, other: PauliZString) -> PauliZString:
        return multiply_zstrings(self, other)


def make_zstring(qubit_indices: Iterable[int], n_qubits: int) -> PauliZString:
    mask = 0
    for q in qubit_indices:
        if not 0 <= q < n_qubits:
            raise DomainError(f"qubit index {q} out of range for {n_qubits} qubits")
        mask |= 1 << q
    return PauliZString(mask, n_qubits)


def multiply_zstrings(a: PauliZString, b: PauliZString) -> PauliZString:
    """Operator product. Z·Z = I on shared qubits, so the masks XOR."""
    if a.n_qubits != b.n_qubits:
        raise DomainError(f"qubit count mismatch: {a.n_qubits} vs {b.n_qubits}")
    return PauliZString(a.mask ^ b.mask, a.n_qubits)


def diagonal_entry(zs: PauliZString, basis_index: int) -> int:
    """Eigenvalue (+1 or -1) of ``zs`` on the basis state ``|basis_index>``."""
    if not 0 <= basis_index < (1 << zs.n_qubits):
        raise DomainError(f"basis index {basis_index} out of range for {zs.n_qubits} qubits")
    return -1 if (zs.mask & basis_index).bit_count() & 1 else 1


@dataclass(frozen=True)
class HamiltonianTerm:
    coefficient: float
    string: PauliZString

    def __post_init__(self):
        if not math.isfinite(self.coefficient):
            raise DomainError(f"non-finite coefficient {self.coefficient}")

    @property
    def mask(self) -> int:
        return self.string.mask


def merge_terms(terms: Iterable[HamiltonianTerm]) -> list[HamiltonianTerm]:
    """Sum coefficients of equal strings, drop near-zero results, sort by mask."""
    acc: dict[int, float] = {}
    n_qubits = None
    for t in terms:
        if n_qubits is None:
            n_qubits = t.string.n_qubits
        elif t.string.n_qubits != n_qubits:
            raise DomainError("cannot merge terms acting on different qubit counts")
        acc[t.mask] = acc.get(t.mask, 0.0) + t.coefficient
    return [
        HamiltonianTerm(c, PauliZString(m, n_qubits))
        for m, c in sorted(acc.items())
        if abs(c) >= MERGE_TOLERANCE
    ]


def walsh_hadamard(values: np.ndarray) -> np.ndarray:
    """Unnormalised Walsh-Hadamard transform along the last axis.

    ``out[x] = sum_m values[m] * (-1)**popcount(m & x)``.  Length must be a power of two.
    """
    out = np.array(values, dtype=float, copy=True)
    size = out.shape[-1]
    n = size.bit_length() - 1
    if size != 1 << n:
        raise DomainError(f"length {size} is not a power of two")
    lead = out.shape[:-1]
    for k in range(n):
        v = out.reshape(*lead, size >> (k + 1), 2, 1 << k)
        a = v[..., 0, :].copy()
        b = v[..., 1, :]
        v[..., 0, :] += b
        v[..., 1, :] = a - b
    return out


@dataclass(frozen=True)
class GraphHamiltonian:
    """Weighted sum of Z-strings in merged form (pairwise distinct masks)."""

    n_qubits: int
    terms: tuple[HamiltonianTerm, ...]
    # Largest edge coefficient plus largest vertex coefficient, when the origin of terms is known.
    origin_bound: float | None = field(default=None, compare=False)
    _diagonal: list = field(default_factory=list, init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n_qubits < 1:
            raise DomainError(f"n_qubits must be >= 1, got {self.n_qubits}")
        seen = set()
        for t in self.terms:
            if t.string.n_qubits != self.n_qubits:
                raise DomainError("term qubit count does not match Hamiltonian")
            if t.mask in seen:
                raise DomainError(f"duplicate mask {t.mask}; merge terms first")
            seen.add(t.mask)

    @classmethod
    def from_terms(
        cls, n_qubits: int, terms: Iterable[HamiltonianTerm], origin_bound: float | None = None
    ) -> GraphHamiltonian:
        return cls(n_qubits, tuple(merge_terms(terms)), origin_bound)

    @property
    def coefficient_l1(self) -> float:
        return float(sum(abs(t.coefficient) for t in self.terms))

    def scaled(self, factor: float) -> GraphHamiltonian:
        return GraphHamiltonian.from_terms(
            self.n_qubits,
            (HamiltonianTerm(t.coefficient * factor, t.string) for t in self.terms),
            None if self.origin_bound is None else self.origin_bound * abs(factor),
        )

    def diagonal(self, cap: int = MAX_DIAGONAL_QUBITS) -> np.ndarray:
        """Cached read-only diagonal, see :func:`build_diagonal`."""
        if not self._diagonal:
            self._diagonal.append(build_diagonal(self, cap=cap))
        return self._diagonal[0]

    def to_json(self) -> dict:
        return {
            "n_qubits": self.n_qubits,
            "terms": [{"coeff": t.coefficient, "mask": t.mask} for t in self.terms],
        }

    @classmethod
    def from_json(cls, obj: dict) -> GraphHamiltonian:
        n = int(obj["n_qubits"])
        return cls.from_terms(
            n, (HamiltonianTerm(float(t["coeff"]), PauliZString(int(t["mask"]), n)) for t in obj["terms"])
        )


def build_diagonal(h: GraphHamiltonian, cap: int = MAX_DIAGONAL_QUBITS) -> np.ndarray:
    """Diagonal of ``h`` in the computational basis, length ``2**n_qubits``.

    The diagonal is the Walsh-Hadamard transform of the coefficient vector
    indexed by mask, which costs O(n 2^n) regardless of the term count.
    """
    if h.n_qubits > cap:
        raise ResourceError(f"{h.n_qubits} qubits exceeds the diagonal cap of {cap}")
    coeffs = np.zeros(1 << h.n_qubits)
    for t in h.terms:
        coeffs[t.mask] += t.coefficient
    diag = walsh_hadamard(coeffs)
    diag.setflags(write=False)
    return diag


def spectral_bounds(h: GraphHamiltonian, cap: int = MAX_DIAGONAL_QUBITS) -> tuple[float, float]:
    """Exact (min, max) eigenvalue; the operator is diagonal so enumeration is exact."""
    diag = h.diagonal(cap)
    return float(diag.min()), float(diag.max())


def max_term_bound(terms: Sequence[HamiltonianTerm]) -> float:
    """Largest coefficient magnitude, 0 for an empty list."""
    return max((abs(t.coefficient) for t in terms), default=0.0)
