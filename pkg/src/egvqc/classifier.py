"""Variational classifier: forward passes, loss, parameter-shift gradients, Adam, training.

Two pipelines share one ansatz and one optimiser:

* ``eg_vqc``: the plus state is rotated by the ansatz and the graph
  Hamiltonian is measured, ``p = (1 + <H>) / 2``.  The circuit does not depend
  on the graph, so a whole dataset is evaluated as one probability vector
  against a matrix of stacked Hamiltonian diagonals.
* ``pca_vqc``: the graph's spectral features are angle-encoded, the ansatz is
  applied, and Z on qubit 0 is measured.
"""

from __future__ import annotations

import logging
import math
import time
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np

from . import pca
from .encoding import NORM_MODES, EncodingConfig, encode_graph, required_qubits
from .errors import ContractError, DegenerateHamiltonianError, DomainError, TrainingError
from .graphs import LabeledGraphSet, stratified_split_indices
from .pauli import GraphHamiltonian, spectral_bounds
from .seeding import head_seed, split_seed
from .simulator import (
    ENTANGLERS,
    AnsatzParams,
    angle_encode,
    apply_layers,
    expectation_diagonal,
    init_plus_state,
    z_diagonal,
)

log = logging.getLogger(__name__)

PIPELINES = ("eg_vqc", "pca_vqc")
MULTICLASS = ("native_binary", "one_vs_rest")
PROB_CLAMP = 1e-7
UNIT_TOL = 1e-9


@dataclass(frozen=True)
class TrainConfig:
    layers: int = 3
    learning_rate: float = 0.01
    epochs: int = 100
    seed: int = 0
    test_fraction: float = 0.1
    norm_mode: str = "exact"
    pipeline: str = "eg_vqc"
    n_qubits: int | None = None  # None selects the smallest count fitting the largest graph
    batch: str = "full"
    multiclass: str = "native_binary"
    entangler: str = "ring"
    include_vertex_terms: bool = True
    pca_matrix: str = "adjacency"

    def __post_init__(self):
        if self.learning_rate <= 0:
            raise DomainError("learning_rate must be > 0")
        if self.epochs < 1:
            raise DomainError("epochs must be >= 1")
        if self.layers < 1:
            raise DomainError("layers must be >= 1")
        if self.pipeline not in PIPELINES:
            raise DomainError(f"pipeline must be one of {PIPELINES}")
        if self.norm_mode not in NORM_MODES:
            raise DomainError(f"norm_mode must be one of {NORM_MODES}")
        if self.multiclass not in MULTICLASS:
            raise DomainError(f"multiclass must be one of {MULTICLASS}")
        if self.entangler not in ENTANGLERS:
            raise DomainError(f"entangler must be one of {ENTANGLERS}")
        if self.batch != "full":
            raise DomainError("only full-batch training is supported")
        if self.n_qubits is not None and self.n_qubits < 1:
            raise DomainError("n_qubits must be >= 1")
        if not 0 < self.test_fraction < 1:
            raise DomainError("test_fraction must be in (0, 1)")
        if self.pca_matrix not in pca.MATRIX_KINDS:
            raise DomainError(f"pca_matrix must be one of {pca.MATRIX_KINDS}")


# ---------------------------------------------------------------- forward passes


def _check_unit_spectrum(h: GraphHamiltonian):
    lo, hi = spectral_bounds(h)
    if lo < -1 - UNIT_TOL or hi > 1 + UNIT_TOL:
        raise ContractError(
            f"Hamiltonian spectrum [{lo:.6g}, {hi:.6g}] leaves [-1, 1]; encode with norm_mode 'strict' or 'exact'"
        )


def forward_eg(h: GraphHamiltonian, params: AnsatzParams, entangler: str = "ring") -> float:
    """Probability ``(1 + <psi|H|psi>) / 2`` with ``psi`` the ansatz applied to the plus state."""
    _check_unit_spectrum(h)
    state = init_plus_state(h.n_qubits)
    if params.layers:
        apply_layers(state, params.angles, entangler)
    return float((1 + expectation_diagonal(state, h.diagonal())) / 2)


def forward_pca(features, params: AnsatzParams, entangler: str = "ring") -> float:
    """Probability ``(1 + <Z_0>) / 2`` after angle encoding and the ansatz."""
    x = np.asarray(getattr(features, "values", features), dtype=float)
    state = angle_encode(x, x.shape[-1])
    if params.layers:
        apply_layers(state, params.angles, entangler)
    return float((1 + expectation_diagonal(state, z_diagonal(0, state.n_qubits))) / 2)


class EgInputs:
    """Stacked Hamiltonian diagonals, shape ``(n_samples, 2**n_qubits)``."""

    def __init__(self, diagonals: np.ndarray, n_qubits: int, entangler: str = "ring"):
        self.diagonals = np.asarray(diagonals, dtype=float)
        self.n_qubits = n_qubits
        self.entangler = entangler

    def __len__(self):
        return self.diagonals.shape[0]

    def subset(self, idx) -> EgInputs:
        return EgInputs(self.diagonals[idx], self.n_qubits, self.entangler)

    def expectations(self, angles: np.ndarray) -> np.ndarray:
        """``<H_i>`` for every sample; ``angles`` is ``(..., layers, n_qubits)``, result ``(..., n_samples)``."""
        angles = np.asarray(angles, dtype=float)
        state = init_plus_state(self.n_qubits, batch_shape=angles.shape[:-2])
        apply_layers(state, angles, self.entangler)
        return state.probabilities() @ self.diagonals.T


class PcaInputs:
    """Angle-encoding features, shape ``(n_samples, n_qubits)``."""

    def __init__(self, features: np.ndarray, entangler: str = "ring"):
        self.features = np.asarray(features, dtype=float)
        self.n_qubits = self.features.shape[1]
        self.entangler = entangler
        self._z0 = z_diagonal(0, self.n_qubits)

    def __len__(self):
        return self.features.shape[0]

    def subset(self, idx) -> PcaInputs:
        return PcaInputs(self.features[idx], self.entangler)

    def expectations(self, angles: np.ndarray) -> np.ndarray:
        angles = np.asarray(angles, dtype=float)
        batch = angles.shape[:-2]
        x = np.broadcast_to(self.features, (*batch, *self.features.shape))
        state = angle_encode(x, self.n_qubits)
        apply_layers(state, angles[..., None, :, :], self.entangler)
        return state.probabilities() @ self._z0


def probabilities(expectations: np.ndarray) -> np.ndarray:
    return (1 + np.asarray(expectations)) / 2


# ---------------------------------------------------------------- loss and gradients


def bce_loss(predictions, labels) -> float:
    """Mean binary cross-entropy with probabilities clamped to ``[1e-7, 1 - 1e-7]``."""
    p = np.asarray(predictions, dtype=float)
    y = np.asarray(labels, dtype=float)
    if p.size == 0:
        raise DomainError("empty prediction vector")
    if p.shape != y.shape:
        raise DomainError(f"shape mismatch: {p.shape} vs {y.shape}")
    p = np.clip(p, PROB_CLAMP, 1 - PROB_CLAMP)
    return float(-np.mean(y * np.log(p) + (1 - y) * np.log(1 - p)))


def bce_grad(predictions, labels) -> np.ndarray:
    """dL/dp of :func:`bce_loss`; zero where the clamp is active."""
    p = np.asarray(predictions, dtype=float)
    y = np.asarray(labels, dtype=float)
    inside = (p > PROB_CLAMP) & (p < 1 - PROB_CLAMP)
    pc = np.clip(p, PROB_CLAMP, 1 - PROB_CLAMP)
    return np.where(inside, (-y / pc + (1 - y) / (1 - pc)) / p.size, 0.0)


def shifted_angles(angles: np.ndarray, shift: float = np.pi / 2) -> np.ndarray:
    """Stack of ``2 * P`` parameter sets: ``+shift`` on parameter k at row k, ``-shift`` at row P + k."""
    flat = np.asarray(angles, dtype=float).ravel()
    n = flat.size
    out = np.tile(flat, (2 * n, 1))
    out[np.arange(n), np.arange(n)] += shift
    out[n + np.arange(n), np.arange(n)] -= shift
    return out.reshape(2 * n, *np.shape(angles))


def parameter_shift_gradient(
    evaluate: Callable[[np.ndarray], np.ndarray],
    params: AnsatzParams,
    vectorized: bool = False,
) -> np.ndarray:
    """Exact gradient of an RY-generated expectation by the two-term shift rule.

    ``evaluate`` maps an angle matrix to the raw expectation (a scalar or an
    array of per-sample values).  With ``vectorized=True`` it receives all
    shifted parameter sets at once as an array of shape ``(2P, layers, n_qubits)``.
    Returns an array of shape ``(layers, n_qubits, *value_shape)``.
    """
    theta = params.angles
    stack = shifted_angles(theta)
    if vectorized:
        values = np.asarray(evaluate(stack), dtype=float)
    else:
        values = np.stack([np.asarray(evaluate(s), dtype=float) for s in stack])
    n = theta.size
    grad = (values[:n] - values[n:]) / 2
    return grad.reshape(*theta.shape, *values.shape[1:])


# ---------------------------------------------------------------- optimiser


@dataclass
class AdamState:
    first_moment: np.ndarray
    second_moment: np.ndarray
    step_count: int = 0
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8

    @classmethod
    def zeros_like(cls, params: np.ndarray) -> AdamState:
        return cls(np.zeros_like(params, dtype=float), np.zeros_like(params, dtype=float))


def adam_update(params: np.ndarray, grads: np.ndarray, state: AdamState, lr: float) -> tuple[np.ndarray, AdamState]:
    """One bias-corrected Adam step. Inputs are left untouched."""
    params = np.asarray(params, dtype=float)
    grads = np.asarray(grads, dtype=float)
    if params.shape != grads.shape or params.shape != state.first_moment.shape:
        raise DomainError(f"shape mismatch: params {params.shape}, grads {grads.shape}")
    if not np.all(np.isfinite(grads)):
        raise TrainingError("non-finite gradient")
    t = state.step_count + 1
    m = state.beta1 * state.first_moment + (1 - state.beta1) * grads
    v = state.beta2 * state.second_moment + (1 - state.beta2) * grads * grads
    m_hat = m / (1 - state.beta1**t)
    v_hat = v / (1 - state.beta2**t)
    new = params - lr * m_hat / (np.sqrt(v_hat) + state.eps)
    return new, AdamState(m, v, t, state.beta1, state.beta2, state.eps)


# ---------------------------------------------------------------- evaluation


def binary_accuracy(probs, labels) -> float:
    """Predict 1 when ``p >= 0.5``."""
    p = np.asarray(probs)
    y = np.asarray(labels)
    if p.size == 0:
        raise DomainError("cannot evaluate an empty set")
    return float(np.mean((p >= 0.5).astype(int) == y))


def argmax_predictions(head_probs: np.ndarray) -> np.ndarray:
    """Class with the largest head probability; ties go to the lowest class id."""
    return np.argmax(np.asarray(head_probs), axis=-1)


def multiclass_accuracy(head_probs, labels) -> float:
    y = np.asarray(labels)
    if y.size == 0:
        raise DomainError("cannot evaluate an empty set")
    return float(np.mean(argmax_predictions(head_probs) == y))


@dataclass
class VqcModel:
    """Trained classifier: one angle matrix per head plus the input transform."""

    pipeline: str
    n_qubits: int
    heads: list[AnsatzParams]
    entangler: str = "ring"
    norm_mode: str = "exact"
    include_vertex_terms: bool = True
    pca_scale: float = 1.0
    pca_matrix: str = "adjacency"

    def inputs(self, graphs):
        if self.pipeline == "eg_vqc":
            return EgInputs(
                encode_diagonals(graphs, self.n_qubits, self.norm_mode, self.include_vertex_terms),
                self.n_qubits,
                self.entangler,
            )
        raw = np.array([pca.spectrum(g, self.n_qubits, self.pca_matrix) for g in graphs])
        return PcaInputs(pca.scale_features(raw, self.pca_scale), self.entangler)

    def head_probabilities(self, inputs) -> np.ndarray:
        """Shape ``(n_samples, n_heads)``."""
        return np.stack([probabilities(inputs.expectations(h.angles)) for h in self.heads], axis=-1)

    def predict(self, graphs) -> np.ndarray:
        hp = self.head_probabilities(self.inputs(graphs))
        if len(self.heads) == 1:
            return (hp[:, 0] >= 0.5).astype(int)
        return argmax_predictions(hp)


def evaluate(ds: LabeledGraphSet, model: VqcModel) -> float:
    """Accuracy of ``model`` on ``ds``."""
    if len(ds) == 0:
        raise DomainError("cannot evaluate an empty set")
    return float(np.mean(model.predict(ds.graphs) == np.asarray(ds.labels)))


# ---------------------------------------------------------------- data preparation


def encode_diagonals(graphs, n_qubits: int, norm_mode: str, include_vertex_terms: bool = True) -> np.ndarray:
    cfg = EncodingConfig(n_qubits, norm_mode, include_vertex_terms)
    rows = []
    for i, g in enumerate(graphs):
        try:
            h = encode_graph(g, cfg)
        except DegenerateHamiltonianError as exc:
            raise DegenerateHamiltonianError(f"graph {i}: {exc}") from exc
        try:
            _check_unit_spectrum(h)
        except ContractError as exc:
            raise ContractError(f"graph {i}: {exc}") from exc
        rows.append(h.diagonal())
    return np.array(rows)


def fit_to_qubits(ds: LabeledGraphSet, n_qubits: int | None) -> tuple[LabeledGraphSet, int, int]:
    """Drop graphs that do not fit ``n_qubits``; returns (subset, n_qubits, excluded count)."""
    if n_qubits is None:
        return ds, required_qubits(ds.max_vertices), 0
    keep = [i for i, g in enumerate(ds.graphs) if g.n_vertices < (1 << n_qubits)]
    if not keep:
        raise DomainError(f"no graph fits on {n_qubits} qubits")
    return ds.subset(keep), n_qubits, len(ds) - len(keep)


# ---------------------------------------------------------------- training


@dataclass
class TrainReport:
    config: dict
    seed: int
    n_qubits: int
    class_count: int
    n_train: int
    n_test: int
    excluded_graphs: int
    train_loss: list[float]
    val_loss: list[float]
    val_accuracy: list[float]
    initial_train_loss: float
    final_test_accuracy: float
    final_params: list
    head_accuracy: list[float] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    wall_time: float = 0.0
    model: VqcModel | None = field(default=None, repr=False)

    def deterministic(self) -> dict:
        return {
            "config": self.config,
            "seed": self.seed,
            "n_qubits": self.n_qubits,
            "class_count": self.class_count,
            "n_train": self.n_train,
            "n_test": self.n_test,
            "excluded_graphs": self.excluded_graphs,
            "initial_train_loss": self.initial_train_loss,
            "train_loss": self.train_loss,
            "val_loss": self.val_loss,
            "val_accuracy": self.val_accuracy,
            "final_test_accuracy": self.final_test_accuracy,
            "head_accuracy": self.head_accuracy,
            "final_params": self.final_params,
            "notes": self.notes,
        }

    def to_json(self) -> dict:
        return {"deterministic": self.deterministic(), "nondeterministic": {"wall_time": self.wall_time}}

    def to_csv(self) -> str:
        rows = ["epoch,train_loss,val_loss,val_acc"]
        for e, (a, b, c) in enumerate(zip(self.train_loss, self.val_loss, self.val_accuracy), 1):
            rows.append(f"{e},{a!r},{b!r},{c!r}")
        return "\n".join(rows) + "\n"


def _head_labels(labels: np.ndarray, class_count: int) -> list[np.ndarray]:
    if class_count == 2:
        return [labels.astype(float)]
    return [(labels == k).astype(float) for k in range(class_count)]


def fit_heads(train_inputs, train_targets, val_inputs, val_labels, init_params, cfg: TrainConfig):
    """Full-batch Adam on every head in lock step.

    ``train_targets`` holds one binary target vector per head.  With one head
    accuracy thresholds at 0.5; with several it is the argmax over heads.
    Returns ``(params, history)``; metrics are recorded after each update.
    """
    thetas = [p.angles.copy() for p in init_params]
    states = [AdamState.zeros_like(t) for t in thetas]
    val_targets = _head_labels(np.asarray(val_labels), len(thetas) if len(thetas) > 1 else 2)
    history = {"train_loss": [], "val_loss": [], "val_accuracy": []}

    def metrics(thetas):
        tr = [probabilities(train_inputs.expectations(t)) for t in thetas]
        va = [probabilities(val_inputs.expectations(t)) for t in thetas]
        train_loss = float(np.mean([bce_loss(p, y) for p, y in zip(tr, train_targets)]))
        val_loss = float(np.mean([bce_loss(p, y) for p, y in zip(va, val_targets)]))
        if len(thetas) == 1:
            acc = binary_accuracy(va[0], val_labels)
        else:
            acc = multiclass_accuracy(np.stack(va, axis=-1), val_labels)
        return train_loss, val_loss, acc

    history["initial_train_loss"] = metrics(thetas)[0]
    for epoch in range(1, cfg.epochs + 1):
        for k, (theta, y) in enumerate(zip(thetas, train_targets)):
            # row 0: unshifted; rows 1..: parameter shifts
            stack = np.concatenate([theta[None], shifted_angles(theta)])
            values = train_inputs.expectations(stack)
            dldp = bce_grad(probabilities(values[0]), y)
            n = theta.size
            d_exp = (values[1 : n + 1] - values[n + 1 :]) / 2
            grad = (d_exp @ dldp * 0.5).reshape(theta.shape)
            try:
                thetas[k], states[k] = adam_update(theta, grad, states[k], cfg.learning_rate)
            except TrainingError as exc:
                raise TrainingError(f"epoch {epoch}, head {k}: {exc}") from exc
        tl, vl, va = metrics(thetas)
        history["train_loss"].append(tl)
        history["val_loss"].append(vl)
        history["val_accuracy"].append(va)
    return [AnsatzParams(t) for t in thetas], history


def _build_inputs(ds: LabeledGraphSet, n_qubits: int, cfg: TrainConfig, train_idx):
    if cfg.pipeline == "eg_vqc":
        diags = encode_diagonals(ds.graphs, n_qubits, cfg.norm_mode, cfg.include_vertex_terms)
        return EgInputs(diags, n_qubits, cfg.entangler), 1.0
    raw = np.array([pca.spectrum(g, n_qubits, cfg.pca_matrix) for g in ds.graphs])
    scale = pca.fit_scale(raw[train_idx])
    return PcaInputs(pca.scale_features(raw, scale), cfg.entangler), scale


def train(ds: LabeledGraphSet, cfg: TrainConfig) -> TrainReport:
    """Encode inputs once, split, and run full-batch training.

    Binary datasets train one head.  Datasets with more classes need
    ``multiclass='one_vs_rest'`` and train one head per class.
    """
    start = time.perf_counter()
    if ds.class_count > 2 and cfg.multiclass != "one_vs_rest":
        raise TrainingError(
            f"{ds.name} has {ds.class_count} classes; native_binary needs exactly 2 (use one_vs_rest)"
        )
    fitted, n_qubits, excluded = fit_to_qubits(ds, cfg.n_qubits)
    if excluded:
        log.info("%s: excluded %d graphs larger than %d vertices", ds.name, excluded, (1 << n_qubits) - 1)
    labels = np.asarray(fitted.labels)
    missing = sorted(set(range(fitted.class_count)) - set(labels.tolist()))
    if missing:
        why = " after excluding oversized graphs" if excluded else ""
        raise TrainingError(f"{ds.name}: no graphs of class {missing[0]}{why}")
    train_idx, test_idx = stratified_split_indices(labels, cfg.test_fraction, split_seed(cfg.seed))
    inputs, scale = _build_inputs(fitted, n_qubits, cfg, train_idx)

    n_heads = 1 if fitted.class_count == 2 else fitted.class_count
    init = [
        AnsatzParams.random(cfg.layers, n_qubits, np.random.default_rng(head_seed(cfg.seed, k)))
        for k in range(n_heads)
    ]
    targets = _head_labels(labels[train_idx], fitted.class_count)
    heads, hist = fit_heads(inputs.subset(train_idx), targets, inputs.subset(test_idx), labels[test_idx], init, cfg)

    notes = []
    head_acc = []
    if n_heads > 1:
        notes.append("one-vs-rest: one binary head per class, prediction is the argmax head probability")
        test_inputs = inputs.subset(test_idx)
        for k, h in enumerate(heads):
            p = probabilities(test_inputs.expectations(h.angles))
            head_acc.append(binary_accuracy(p, (labels[test_idx] == k).astype(int)))
    model = VqcModel(
        cfg.pipeline, n_qubits, heads, cfg.entangler, cfg.norm_mode, cfg.include_vertex_terms, scale, cfg.pca_matrix
    )
    config = asdict(cfg)
    config["n_qubits"] = n_qubits
    config["dataset"] = ds.name
    return TrainReport(
        config=config,
        seed=cfg.seed,
        n_qubits=n_qubits,
        class_count=fitted.class_count,
        n_train=len(train_idx),
        n_test=len(test_idx),
        excluded_graphs=excluded,
        train_loss=hist["train_loss"],
        val_loss=hist["val_loss"],
        val_accuracy=hist["val_accuracy"],
        initial_train_loss=hist["initial_train_loss"],
        final_test_accuracy=hist["val_accuracy"][-1],
        final_params=[h.angles.tolist() for h in heads],
        head_accuracy=head_acc,
        notes=notes,
        wall_time=time.perf_counter() - start,
        model=model,
    )


def one_vs_rest_train(ds: LabeledGraphSet, cfg: TrainConfig) -> TrainReport:
    if ds.class_count < 3:
        raise DomainError("one-vs-rest needs at least 3 classes")
    from dataclasses import replace

    return train(ds, replace(cfg, multiclass="one_vs_rest"))


def mean_std(values) -> tuple[float, float]:
    """Mean and population standard deviation (0 for a single value)."""
    v = np.asarray(values, dtype=float)
    return float(v.mean()), float(v.std()) if v.size > 1 else 0.0


def chance_bce() -> float:
    return math.log(2)
