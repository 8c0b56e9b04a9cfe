"""Graph classification with variational quantum circuits.

Graphs are encoded as diagonal Pauli-Z Hamiltonians and measured against a
trained RY + CNOT ansatz (``eg_vqc``); a spectral-feature baseline
(``pca_vqc``) shares the same circuit and optimiser.
"""

from .classifier import TrainConfig, TrainReport, evaluate, one_vs_rest_train, train
from .encoding import EncodingConfig, encode_graph, verify_bound
from .graphs import Graph, LabeledGraphSet, load_tu_dataset
from .pauli import GraphHamiltonian, PauliZString, build_diagonal, spectral_bounds

__version__ = "0.1.0"

__all__ = [
    "EncodingConfig",
    "Graph",
    "GraphHamiltonian",
    "LabeledGraphSet",
    "PauliZString",
    "TrainConfig",
    "TrainReport",
    "build_diagonal",
    "encode_graph",
    "evaluate",
    "load_tu_dataset",
    "one_vs_rest_train",
    "spectral_bounds",
    "train",
    "verify_bound",
]
