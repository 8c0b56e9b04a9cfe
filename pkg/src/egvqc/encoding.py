"""Binary vertex encoding and graph Hamiltonian assembly.

Vertex ``i`` becomes the Z-string whose mask is the binary expansion of ``i``;
edge ``(i, j)`` becomes the product of the two vertex strings (mask ``i ^ j``).
The Hamiltonian sums ``w_ij`` times each edge string and the weighted degree
of each vertex times its vertex string, then rescales by one shared constant
chosen by ``norm_mode``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateHamiltonianError, DomainError
from .graphs import Graph
from .pauli import (
    GraphHamiltonian,
    HamiltonianTerm,
    PauliZString,
    max_term_bound,
    merge_terms,
    spectral_bounds,
)

NORM_MODES = ("paper", "strict", "exact")


@dataclass(frozen=True)
class EncodingConfig:
    n_qubits: int
    norm_mode: str = "exact"
    include_vertex_terms: bool = True

    def __post_init__(self):
        if self.n_qubits < 1:
            raise DomainError("n_qubits must be >= 1")
        if self.norm_mode not in NORM_MODES:
            raise DomainError(f"norm_mode must be one of {NORM_MODES}, got {self.norm_mode!r}")


def required_qubits(n_vertices: int) -> int:
    """Smallest N with ``n_vertices <= 2**N - 1`` (vertex id 0 is reserved for identity)."""
    if n_vertices < 1:
        raise DomainError("n_vertices must be >= 1")
    return n_vertices.bit_length()


def encode_vertex(i: int, n_qubits: int) -> PauliZString:
    if not 1 <= i < (1 << n_qubits):
        raise DomainError(f"vertex id {i} not encodable on {n_qubits} qubits (need 1 <= i < {1 << n_qubits})")
    return PauliZString(i, n_qubits)


def encode_edge(i: int, j: int, n_qubits: int) -> PauliZString:
    if i == j:
        raise DomainError(f"self-loop on vertex {i}")
    return encode_vertex(i, n_qubits) * encode_vertex(j, n_qubits)


def raw_terms(g: Graph, n_qubits: int, include_vertex_terms: bool = True) -> list[HamiltonianTerm]:
    """Unnormalised, unmerged terms: one per edge then one per vertex."""
    if g.n_vertices >= (1 << n_qubits):
        raise DomainError(
            f"graph with {g.n_vertices} vertices needs {required_qubits(g.n_vertices)} qubits, got {n_qubits}"
        )
    terms = [HamiltonianTerm(w, encode_edge(u, v, n_qubits)) for u, v, w in g.edges]
    if include_vertex_terms:
        deg = g.degrees()
        terms.extend(HamiltonianTerm(float(deg[i]), encode_vertex(i, n_qubits)) for i in range(1, g.n_vertices + 1))
    return terms


def paper_scale(g: Graph, include_vertex_terms: bool = True) -> float:
    """Largest edge weight plus largest weighted degree."""
    max_j = max((w for _, _, w in g.edges), default=0.0)
    max_h = float(g.degrees().max()) if include_vertex_terms else 0.0
    return max_j + max_h


def encode_graph(g: Graph, cfg: EncodingConfig) -> GraphHamiltonian:
    terms = raw_terms(g, cfg.n_qubits, cfg.include_vertex_terms)
    if not merge_terms(terms):
        raise DegenerateHamiltonianError(
            f"graph with {g.n_vertices} vertices and {g.n_edges} edges encodes to the zero operator"
        )

    delta = paper_scale(g, cfg.include_vertex_terms)
    if cfg.norm_mode == "strict":
        # L1 norm of the raw coefficients, before any XOR aliasing.
        scale = sum(abs(t.coefficient) for t in terms)
        return _inside_unit(_rescale(cfg.n_qubits, terms, 1.0 / scale, delta))

    h = _rescale(cfg.n_qubits, terms, 1.0 / delta, delta)
    if cfg.norm_mode == "paper":
        return h
    lo, hi = spectral_bounds(h)
    bound = max(abs(lo), abs(hi))
    if bound == 0.0:
        raise DegenerateHamiltonianError("encoded Hamiltonian has an all-zero spectrum")
    return _inside_unit(h.scaled(1.0 / bound))


def _inside_unit(h: GraphHamiltonian) -> GraphHamiltonian:
    # rounding in the rescale can leave an extreme eigenvalue an ulp past 1
    shrink = np.nextafter(1.0, 0.0)
    for _ in range(64):
        lo, hi = spectral_bounds(h)
        if lo >= -1.0 and hi <= 1.0:
            return h
        h = h.scaled(shrink)
    raise DegenerateHamiltonianError(f"could not bring spectrum ({lo}, {hi}) inside [-1, 1]")


def _rescale(n_qubits: int, terms, factor: float, delta: float) -> GraphHamiltonian:
    return GraphHamiltonian.from_terms(
        n_qubits, (HamiltonianTerm(t.coefficient * factor, t.string) for t in terms), delta * factor
    )


@dataclass(frozen=True)
class BoundReport:
    lambda_min: float
    lambda_max: float
    delta_j_plus_delta_h: float
    l1_bound: float
    within_unit: bool

    def to_json(self) -> dict:
        return {
            "lambda_min": self.lambda_min,
            "lambda_max": self.lambda_max,
            "delta_j_plus_delta_h": self.delta_j_plus_delta_h,
            "l1_bound": self.l1_bound,
            "within_unit": self.within_unit,
        }


def verify_bound(h: GraphHamiltonian, tol: float = 1e-12) -> BoundReport:
    """Exact spectrum check.

    ``delta_j_plus_delta_h`` is the largest edge coefficient plus the largest
    vertex coefficient, taken before merging.  It is reported for comparison
    only; it does not bound the spectrum once several terms are present.
    Hamiltonians not produced by :func:`encode_graph` fall back to the largest
    merged coefficient.
    """
    lo, hi = spectral_bounds(h)
    delta = h.origin_bound if h.origin_bound is not None else max_term_bound(h.terms)
    return BoundReport(lo, hi, delta, h.coefficient_l1, bool(lo >= -1.0 - tol and hi <= 1.0 + tol))


def collision_count(g: Graph, h: GraphHamiltonian, include_vertex_terms: bool = True) -> int:
    """Raw terms lost to merging (XOR aliasing or cancellation)."""
    return len(raw_terms(g, h.n_qubits, include_vertex_terms)) - len(h.terms)
