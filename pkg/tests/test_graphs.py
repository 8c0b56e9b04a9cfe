import logging

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from egvqc.encoding import EncodingConfig, encode_graph
from egvqc.errors import DomainError, ParseError
from egvqc.graphs import (
    Graph,
    LabeledGraphSet,
    complete_graph,
    density_dataset,
    load_tu_dataset,
    random_graph,
    stratified_split,
    stratified_split_indices,
    weighted_degree,
)
from oracles import write_tu


def test_edges_are_normalised():
    g = Graph(3, ((3, 1, 2), (2, 3, 1.5)))
    assert g.edges == ((1, 3, 2.0), (2, 3, 1.5))
    assert g.n_edges == 2


@pytest.mark.parametrize(
    "edges",
    [((1, 1, 1.0),), ((0, 1, 1.0),), ((1, 4, 1.0),), ((1, 2, 0.0),), ((1, 2, -1.0),), ((1, 2, float("nan")),), ((1, 2, 1.0), (2, 1, 1.0))],
)
def test_invalid_graphs(edges):
    with pytest.raises(DomainError):
        Graph(3, edges)


def test_needs_a_vertex():
    with pytest.raises(DomainError):
        Graph(0)


@settings(max_examples=50)
@given(st.integers(1, 12), st.floats(0, 1), st.integers(0, 2**32))
def test_handshake_lemma(n, p, seed):
    g = random_graph(n, p, seed)
    deg = g.degrees()
    assert deg[0] == 0
    assert deg.sum() == pytest.approx(2 * sum(w for _, _, w in g.edges))
    for v in range(1, n + 1):
        assert weighted_degree(g, v) == pytest.approx(deg[v])


def test_weighted_degree_range():
    with pytest.raises(DomainError):
        weighted_degree(Graph(2), 3)


def test_graph_json_round_trip():
    g = Graph(4, ((1, 2, 0.5), (3, 4, 2.0)))
    assert Graph.loads(g.dumps()) == g
    assert Graph.from_json(g.to_json()) == g


def test_labeled_set_validation():
    g = Graph(2, ((1, 2, 1.0),))
    with pytest.raises(DomainError):
        LabeledGraphSet((), (), 2)
    with pytest.raises(DomainError):
        LabeledGraphSet((g,), (0, 1), 2)
    with pytest.raises(DomainError):
        LabeledGraphSet((g,), (2,), 2)
    with pytest.raises(DomainError):
        LabeledGraphSet((g,), (0,), 1)
    ds = LabeledGraphSet((g, g, Graph(5)), (0, 1, 1), 2)
    assert ds.class_sizes() == [1, 2]
    assert ds.max_vertices == 5
    assert ds.subset([2]).labels == (1,)


def test_random_graph_determinism_and_extremes():
    assert random_graph(8, 0.5, 3) == random_graph(8, 0.5, 3)
    assert random_graph(8, 0.0, 3).n_edges == 0
    assert random_graph(8, 1.0, 3) == complete_graph(8)
    assert complete_graph(6).n_edges == 15
    with pytest.raises(DomainError):
        random_graph(3, 1.5, 0)


# ---------------------------------------------------------------- TU loader


def test_mutag_census(mutag, data_dir):
    """Counts checked against the raw files."""
    assert len(mutag) == 188
    assert mutag.class_sizes() == [63, 125]
    assert mutag.raw_labels == (-1, 1)
    assert mutag.max_vertices == 28
    directed = sum(1 for line in open(data_dir / "MUTAG" / "MUTAG_A.txt") if line.strip())
    assert sum(g.n_edges for g in mutag.graphs) * 2 == directed
    nodes = sum(1 for line in open(data_dir / "MUTAG" / "MUTAG_graph_indicator.txt") if line.strip())
    assert sum(g.n_vertices for g in mutag.graphs) == nodes


def test_mutag_edge_label_weights(mutag, data_dir):
    weighted = load_tu_dataset(data_dir / "MUTAG", "MUTAG", "from_edge_labels")
    weights = {w for g in weighted.graphs for _, _, w in g.edges}
    assert weights <= {1.0, 2.0, 3.0, 4.0}
    assert [g.n_edges for g in weighted.graphs] == [g.n_edges for g in mutag.graphs]


def test_loader_renumbers_and_collapses(tmp_path):
    d = write_tu(tmp_path, "T", [(3, [(1, 2), (2, 3)]), (2, [(1, 2)])], [5, -3], both_directions=True)
    ds = load_tu_dataset(d, "T")
    assert ds.graphs[0] == Graph(3, ((1, 2, 1.0), (2, 3, 1.0)))
    assert ds.graphs[1] == Graph(2, ((1, 2, 1.0),))
    assert ds.labels == (1, 0)
    assert ds.raw_labels == (-3, 5)


def test_loader_edge_labels(tmp_path):
    d = write_tu(tmp_path, "T", [(3, [(1, 2), (2, 3)]), (2, [(1, 2)])], [0, 1], edge_labels=[[0, 2], [1]])
    ds = load_tu_dataset(d, "T", "from_edge_labels")
    assert ds.graphs[0].edges == ((1, 2, 1.0), (2, 3, 3.0))
    assert ds.graphs[1].edges == ((1, 2, 2.0),)


def test_loader_drops_self_loops(tmp_path, caplog):
    d = write_tu(tmp_path, "T", [(2, [(1, 2), (2, 2)]), (2, [(1, 2)])], [0, 1], both_directions=False)
    with caplog.at_level(logging.WARNING):
        ds = load_tu_dataset(d, "T")
    assert ds.graphs[0].n_edges == 1
    assert "self-loop" in caplog.text


def _base(tmp_path):
    return write_tu(tmp_path, "T", [(2, [(1, 2)]), (2, [(1, 2)])], [0, 1])


def test_parse_error_has_file_and_line(tmp_path):
    d = _base(tmp_path)
    (d / "T_A.txt").write_text("1, 2\n2, x\n")
    with pytest.raises(ParseError) as err:
        load_tu_dataset(d, "T")
    assert err.value.line == 2 and "T_A.txt:2" in str(err.value)


@pytest.mark.parametrize(
    "fname, content, fragment",
    [
        ("T_A.txt", "1, 3\n", "crosses graphs"),
        ("T_A.txt", "1, 9\n", "outside"),
        ("T_graph_indicator.txt", "1\n1\n1\n1\n", "labels were read"),
        ("T_graph_labels.txt", "0\n0\n", "fewer than two classes"),
        ("T_graph_indicator.txt", "1\n1\n3\n3\n", "labels were read"),
    ],
)
def test_parse_errors(tmp_path, fname, content, fragment):
    d = _base(tmp_path)
    (d / fname).write_text(content)
    with pytest.raises(ParseError, match=fragment):
        load_tu_dataset(d, "T")


def test_missing_files(tmp_path):
    with pytest.raises(ParseError, match="missing"):
        load_tu_dataset(tmp_path, "NOPE")
    d = _base(tmp_path)
    with pytest.raises(ParseError, match="edge labels"):
        load_tu_dataset(d, "T", "from_edge_labels")
    with pytest.raises(DomainError):
        load_tu_dataset(d, "T", "bogus")


# ---------------------------------------------------------------- splitting


def test_split_counts_round_half_up():
    labels = [0] * 63 + [1] * 125
    train, test = stratified_split_indices(labels, 0.1, 0)
    test_labels = [labels[i] for i in test]
    # 6.3 -> 6 and 12.5 -> 13
    assert test_labels.count(0) == 6 and test_labels.count(1) == 13
    assert sorted(train + test) == list(range(188))
    assert train == sorted(train) and test == sorted(test)


def test_split_clamps_to_one_and_size_minus_one():
    _, test = stratified_split_indices([0, 0, 1, 1, 1], 0.01, 0)
    assert len(test) == 2
    _, test = stratified_split_indices([0, 0, 1, 1], 0.99, 0)
    assert len(test) == 2


def test_split_determinism_and_seed_dependence():
    labels = [0] * 30 + [1] * 30
    assert stratified_split_indices(labels, 0.2, 4) == stratified_split_indices(labels, 0.2, 4)
    assert stratified_split_indices(labels, 0.2, 4) != stratified_split_indices(labels, 0.2, 5)


def test_split_errors():
    with pytest.raises(DomainError):
        stratified_split_indices([0, 1, 1], 0.5, 0)
    with pytest.raises(DomainError):
        stratified_split_indices([0, 0, 1, 1], 0.0, 0)


def test_stratified_split_sets():
    g = Graph(2, ((1, 2, 1.0),))
    ds = LabeledGraphSet((g,) * 10, (0, 1) * 5, 2, name="x")
    tr, te = stratified_split(ds, 0.2, 1)
    assert len(tr) == 8 and len(te) == 2
    assert te.class_sizes() == [1, 1]
    assert tr.name == "x:train"


def test_density_dataset_is_separable_by_term_count():
    ds = density_dataset()
    assert len(ds) == 20 and ds.class_sizes() == [10, 10]
    counts = np.array([g.n_edges for g in ds.graphs])
    assert np.array_equal(np.array(ds.labels), (counts > np.median(counts)).astype(int))
    terms = np.array([len(encode_graph(g, EncodingConfig(5)).terms) for g in ds.graphs])
    labels = np.array(ds.labels)
    assert terms[labels == 0].max() < terms[labels == 1].min()
