"""Graph data model, TU Dortmund dataset loading and stratified splitting."""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, ParseError

log = logging.getLogger(__name__)

EDGE_WEIGHT_MODES = ("uniform", "from_edge_labels")


@dataclass(frozen=True)
class Graph:
    """Undirected weighted graph on vertices ``1..n_vertices``.

    Edges are stored as ``(u, v, w)`` with ``u < v``, each unordered pair once.
    """

    n_vertices: int
    edges: tuple[tuple[int, int, float], ...] = ()

    def __post_init__(self):
        if self.n_vertices < 1:
            raise DomainError(f"a graph needs at least one vertex, got {self.n_vertices}")
        seen = set()
        normalized = []
        for u, v, w in self.edges:
            u, v, w = int(u), int(v), float(w)
            if u == v:
                raise DomainError(f"self-loop on vertex {u}")
            if not (1 <= u <= self.n_vertices and 1 <= v <= self.n_vertices):
                raise DomainError(f"edge ({u}, {v}) outside vertices 1..{self.n_vertices}")
            if not (math.isfinite(w) and w > 0):
                raise DomainError(f"edge ({u}, {v}) has invalid weight {w}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise DomainError(f"duplicate edge {key}")
            seen.add(key)
            normalized.append((key[0], key[1], w))
        object.__setattr__(self, "edges", tuple(normalized))

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def degrees(self) -> np.ndarray:
        """Weighted degrees indexed by vertex id; index 0 is unused and zero."""
        deg = np.zeros(self.n_vertices + 1)
        for u, v, w in self.edges:
            deg[u] += w
            deg[v] += w
        return deg

    def to_json(self) -> dict:
        return {"n_vertices": self.n_vertices, "edges": [[u, v, w] for u, v, w in self.edges]}

    @classmethod
    def from_json(cls, obj: dict) -> Graph:
        return cls(int(obj["n_vertices"]), tuple((int(u), int(v), float(w)) for u, v, w in obj["edges"]))

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def loads(cls, text: str) -> Graph:
        return cls.from_json(json.loads(text))


def weighted_degree(g: Graph, v: int) -> float:
    if not 1 <= v <= g.n_vertices:
        raise DomainError(f"vertex {v} outside 1..{g.n_vertices}")
    return float(sum(w for a, b, w in g.edges if a == v or b == v))


@dataclass(frozen=True)
class LabeledGraphSet:
    graphs: tuple[Graph, ...]
    labels: tuple[int, ...]
    class_count: int
    name: str = "graphs"
    raw_labels: tuple = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "graphs", tuple(self.graphs))
        object.__setattr__(self, "labels", tuple(int(y) for y in self.labels))
        if not self.graphs:
            raise DomainError("a labeled graph set must not be empty")
        if len(self.graphs) != len(self.labels):
            raise DomainError(f"{len(self.graphs)} graphs but {len(self.labels)} labels")
        if self.class_count < 2:
            raise DomainError(f"class_count must be >= 2, got {self.class_count}")
        bad = [y for y in self.labels if not 0 <= y < self.class_count]
        if bad:
            raise DomainError(f"label {bad[0]} outside [0, {self.class_count})")

    def __len__(self):
        return len(self.graphs)

    def subset(self, indices: Iterable[int], name: str | None = None) -> LabeledGraphSet:
        idx = list(indices)
        return LabeledGraphSet(
            tuple(self.graphs[i] for i in idx),
            tuple(self.labels[i] for i in idx),
            self.class_count,
            name or self.name,
            self.raw_labels,
        )

    def class_sizes(self) -> list[int]:
        return np.bincount(self.labels, minlength=self.class_count).tolist()

    @property
    def max_vertices(self) -> int:
        return max(g.n_vertices for g in self.graphs)


def _read_lines(path: Path) -> list[str]:
    if not path.is_file():
        raise ParseError("required file is missing", path)
    with open(path) as fh:
        return [ln.strip() for ln in fh]


def _parse_ints(line: str, path: Path, lineno: int, expect: int | None = None) -> list[int]:
    try:
        vals = [int(float(tok)) for tok in line.replace(",", " ").split()]
    except ValueError:
        raise ParseError(f"not an integer row: {line!r}", path, lineno) from None
    if expect is not None and len(vals) != expect:
        raise ParseError(f"expected {expect} values, got {len(vals)}", path, lineno)
    return vals


def load_tu_dataset(directory, name: str, edge_weight_mode: str = "uniform") -> LabeledGraphSet:
    """Read a dataset in TU Dortmund plain-text layout.

    Nodes are renumbered ``1..N_G`` within each graph in file order, reversed
    duplicate pairs collapse into one undirected edge, and raw graph labels map
    to ``0..class_count-1`` in ascending order.
    """
    if edge_weight_mode not in EDGE_WEIGHT_MODES:
        raise DomainError(f"edge_weight_mode must be one of {EDGE_WEIGHT_MODES}")
    root = Path(directory)
    p_a = root / f"{name}_A.txt"
    p_ind = root / f"{name}_graph_indicator.txt"
    p_lab = root / f"{name}_graph_labels.txt"
    p_el = root / f"{name}_edge_labels.txt"

    indicator = []
    for i, line in enumerate(_read_lines(p_ind), 1):
        if line:
            (gid,) = _parse_ints(line, p_ind, i, 1)
            if gid < 1:
                raise ParseError(f"graph id {gid} must be >= 1", p_ind, i)
            indicator.append(gid)
    raw_labels = []
    for i, line in enumerate(_read_lines(p_lab), 1):
        if line:
            raw_labels.append(_parse_ints(line, p_lab, i, 1)[0])
    n_graphs = len(raw_labels)
    if not indicator:
        raise ParseError("no nodes listed", p_ind)
    if max(indicator) != n_graphs:
        raise ParseError(
            f"graph indicator references {max(indicator)} graphs but {n_graphs} labels were read", p_lab
        )

    local_id = []
    counts = [0] * (n_graphs + 1)
    for gid in indicator:
        counts[gid] += 1
        local_id.append(counts[gid])
    for gid in range(1, n_graphs + 1):
        if counts[gid] == 0:
            raise ParseError(f"graph {gid} has no nodes", p_ind)

    edge_labels = None
    if edge_weight_mode == "from_edge_labels":
        if not p_el.is_file():
            raise ParseError("edge labels requested but file is missing", p_el)
        edge_labels = [
            (i, _parse_ints(line, p_el, i, 1)[0]) for i, line in enumerate(_read_lines(p_el), 1) if line
        ]

    edges: list[dict] = [dict() for _ in range(n_graphs + 1)]
    self_loops = 0
    k = 0
    for i, line in enumerate(_read_lines(p_a), 1):
        if not line:
            continue
        a, b = _parse_ints(line, p_a, i, 2)
        for node in (a, b):
            if not 1 <= node <= len(indicator):
                raise ParseError(f"node id {node} outside 1..{len(indicator)}", p_a, i)
        ga, gb = indicator[a - 1], indicator[b - 1]
        if ga != gb:
            raise ParseError(f"edge ({a}, {b}) crosses graphs {ga} and {gb}", p_a, i)
        if edge_labels is not None:
            if k >= len(edge_labels):
                raise ParseError("fewer edge labels than edges", p_el)
            weight = edge_labels[k][1] + 1.0
            if weight <= 0:
                raise ParseError(f"edge label {edge_labels[k][1]} gives non-positive weight", p_el, edge_labels[k][0])
        else:
            weight = 1.0
        k += 1
        u, v = local_id[a - 1], local_id[b - 1]
        if u == v:
            self_loops += 1
            continue
        edges[ga].setdefault((min(u, v), max(u, v)), weight)
    if edge_labels is not None and k != len(edge_labels):
        raise ParseError(f"{len(edge_labels)} edge labels for {k} edges", p_el)
    if self_loops:
        log.warning("%s: dropped %d self-loop entries", name, self_loops)

    label_values = sorted(set(raw_labels))
    remap = {raw: j for j, raw in enumerate(label_values)}
    graphs = tuple(
        Graph(counts[gid], tuple((u, v, w) for (u, v), w in edges[gid].items())) for gid in range(1, n_graphs + 1)
    )
    if len(label_values) < 2:
        raise ParseError("dataset has fewer than two classes", p_lab)
    return LabeledGraphSet(graphs, tuple(remap[r] for r in raw_labels), len(label_values), name, tuple(label_values))


def stratified_split_indices(labels: Sequence[int], test_fraction: float, seed: int) -> tuple[list[int], list[int]]:
    """Per-class seeded split, returning ascending (train, test) index lists.

    Each class sends ``round_half_up(size * test_fraction)`` members to test,
    at least one and at most ``size - 1``.
    """
    if not 0 < test_fraction < 1:
        raise DomainError(f"test_fraction must be in (0, 1), got {test_fraction}")
    labels = np.asarray(labels)
    rng = np.random.default_rng(seed)
    test: list[int] = []
    for c in np.unique(labels):
        members = np.flatnonzero(labels == c)
        if len(members) < 2:
            raise DomainError(f"class {int(c)} has {len(members)} member(s); need at least 2")
        k = math.floor(len(members) * test_fraction + 0.5)
        k = min(max(k, 1), len(members) - 1)
        test.extend(rng.permutation(members)[:k].tolist())
    test_set = set(test)
    train = [i for i in range(len(labels)) if i not in test_set]
    return train, sorted(test)


def stratified_split(ds: LabeledGraphSet, test_fraction: float, seed: int) -> tuple[LabeledGraphSet, LabeledGraphSet]:
    train, test = stratified_split_indices(ds.labels, test_fraction, seed)
    return ds.subset(train, ds.name + ":train"), ds.subset(test, ds.name + ":test")


def random_graph(n_vertices: int, edge_prob: float, seed: int) -> Graph:
    """Erdos-Renyi draw with unit weights; pairs are visited in lexicographic order."""
    if n_vertices < 1:
        raise DomainError("n_vertices must be >= 1")
    if not 0.0 <= edge_prob <= 1.0:
        raise DomainError("edge_prob must lie in [0, 1]")
    rng = np.random.default_rng(seed)
    edges = []
    for u in range(1, n_vertices + 1):
        for v in range(u + 1, n_vertices + 1):
            if rng.random() < edge_prob:
                edges.append((u, v, 1.0))
    return Graph(n_vertices, tuple(edges))


def complete_graph(n_vertices: int, weight: float = 1.0) -> Graph:
    return Graph(
        n_vertices,
        tuple((u, v, weight) for u in range(1, n_vertices + 1) for v in range(u + 1, n_vertices + 1)),
    )


def density_dataset(
    n_graphs: int = 20,
    n_vertices: int = 20,
    densities: tuple[float, float] = (0.15, 0.85),
    seed: int = 0,
) -> LabeledGraphSet:
    """Synthetic set alternating sparse and dense random graphs.

    The label is 1 when a graph's edge count exceeds the median edge count,
    so with well separated densities it coincides with the density class.
    """
    if n_graphs < 2:
        raise DomainError("need at least two graphs")
    rng = np.random.default_rng(seed)
    graphs = [
        random_graph(n_vertices, densities[i % 2], int(rng.integers(2**63 - 1)))
        for i in range(n_graphs)
    ]
    counts = np.array([g.n_edges for g in graphs])
    labels = tuple(int(c > np.median(counts)) for c in counts)
    return LabeledGraphSet(tuple(graphs), labels, 2, name="synthetic-density")
