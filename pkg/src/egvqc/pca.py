"""Spectral features of graph matrices for the PCA-VQC baseline.

Each graph is summarised by the top-k singular values of its weighted
adjacency (or Laplacian) matrix.  Both matrices are symmetric, so the singular
values are the absolute eigenvalues, which a cyclic Jacobi sweep computes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import DomainError
from .graphs import Graph

MATRIX_KINDS = ("adjacency", "laplacian")


@njit(cache=True)
def _jacobi_sweeps(a, tol, max_sweeps):
    n = a.shape[0]
    total = 0.0
    for i in range(n):
        for j in range(n):
            total += a[i, j] * a[i, j]
    for sweep in range(max_sweeps):
        off = 0.0
        for i in range(n):
            for j in range(n):
                if i != j:
                    off += a[i, j] * a[i, j]
        if off <= tol * tol * total or off == 0.0:
            return sweep
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                if tau >= 0.0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[k, q] = s * akp + c * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * aqk
                    a[q, k] = s * apk + c * aqk
    return max_sweeps


@njit(cache=True)
def _asymmetry(a):
    """Largest |a_ij - a_ji| and largest |a_ij|."""
    n = a.shape[0]
    worst = 0.0
    top = 0.0
    for i in range(n):
        for j in range(n):
            d = abs(a[i, j] - a[j, i])
            if d > worst:
                worst = d
            if abs(a[i, j]) > top:
                top = abs(a[i, j])
    return worst, top


def jacobi_eigenvalues(a, tol: float = 1e-14, max_sweeps: int = 60) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations.

    Sweeps visit every off-diagonal pair in row order; each rotation
    annihilates its pair and touches two rows and two columns, so one sweep
    costs O(n^3).  Stops once the off-diagonal Frobenius norm falls below
    ``tol`` times the total norm.  Returned in descending order.
    """
    a = np.array(a, dtype=float, order="C")
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {a.shape}")
    if a.shape[0] == 0:
        return np.zeros(0)
    worst, top = _asymmetry(a)
    if not np.isfinite(top):
        raise DomainError("matrix entries must be finite")
    if worst > 1e-12 * max(1.0, top):
        raise DomainError("matrix is not symmetric")
    if worst:
        a = np.ascontiguousarray((a + a.T) / 2)
    _jacobi_sweeps(a, tol, max_sweeps)
    return np.sort(np.diag(a))[::-1]


def singular_values_symmetric(a) -> np.ndarray:
    """Singular values of a symmetric matrix, descending."""
    return np.sort(np.abs(jacobi_eigenvalues(a)))[::-1]


def adjacency_matrix(g: Graph) -> np.ndarray:
    a = np.zeros((g.n_vertices, g.n_vertices))
    if g.edges:
        flat = itertools.chain.from_iterable(g.edges)
        e = np.fromiter(flat, dtype=float, count=3 * len(g.edges)).reshape(-1, 3)
        u, v = e[:, 0].astype(np.intp) - 1, e[:, 1].astype(np.intp) - 1
        a[u, v] = e[:, 2]
        a[v, u] = e[:, 2]
    return a


def laplacian_matrix(g: Graph) -> np.ndarray:
    a = adjacency_matrix(g)
    return np.diag(a.sum(axis=1)) - a


def spectrum(g: Graph, k: int, matrix: str = "adjacency") -> np.ndarray:
    """Top-k singular values, zero-padded when the graph has fewer than k vertices."""
    if k < 1:
        raise DomainError("k must be >= 1")
    if matrix not in MATRIX_KINDS:
        raise DomainError(f"matrix must be one of {MATRIX_KINDS}")
    m = adjacency_matrix(g) if matrix == "adjacency" else laplacian_matrix(g)
    sv = singular_values_symmetric(m)[:k]
    out = np.zeros(k)
    out[: len(sv)] = sv
    return out


def fit_scale(spectra) -> float:
    """Factor mapping the largest training singular value to pi."""
    top = float(np.max(spectra)) if len(spectra) else 0.0
    return np.pi / top if top > 0 else 1.0


@dataclass(frozen=True)
class PcaFeatures:
    """Rotation angles in [0, pi], one per qubit."""

    values: np.ndarray

    def __post_init__(self):
        if not np.all(np.isfinite(self.values)):
            raise DomainError("features must be finite")


def scale_features(raw: np.ndarray, scale: float) -> np.ndarray:
    return np.clip(np.asarray(raw) * scale, 0.0, np.pi)


def pca_features(g: Graph, k: int, scale: float, matrix: str = "adjacency") -> PcaFeatures:
    return PcaFeatures(scale_features(spectrum(g, k, matrix), scale))


def pca_pipeline(ds, cfg):
    """Train the PCA-VQC baseline; see :func:`egvqc.classifier.train`."""
    from dataclasses import replace

    from .classifier import train

    return train(ds, replace(cfg, pipeline="pca_vqc"))
