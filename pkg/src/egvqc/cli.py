"""Command-line entry point.

Commands: ``train``, ``compare``, ``bench``, ``inspect`` and ``plot``.
Exit codes are a stable contract: 0 success, 2 usage or configuration error,
1 runtime failure.

Every JSON file written here has two blocks.  ``deterministic`` is a pure
function of the dataset, configuration and seed; ``nondeterministic`` holds
wall times.  Files are written atomically (temporary file, then rename) and
only after every job of a command has finished, so a failing run leaves no
partial outputs.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import statistics
import sys
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields
from pathlib import Path

import numpy as np

from . import pca
from .classifier import TrainConfig, TrainReport, mean_std, train
from .encoding import EncodingConfig, collision_count, encode_graph, raw_terms, required_qubits, verify_bound
from .errors import DomainError, EgvqcError
from .graphs import Graph, LabeledGraphSet, complete_graph, density_dataset, load_tu_dataset
from .seeding import head_seed
from .simulator import AnsatzParams, apply_ansatz, init_plus_state

log = logging.getLogger("egvqc")

EXIT_OK, EXIT_RUNTIME, EXIT_USAGE = 0, 1, 2

PIPELINE_ALIASES = {"eg-vqc": "eg_vqc", "eg_vqc": "eg_vqc", "pca-vqc": "pca_vqc", "pca_vqc": "pca_vqc"}
EDGE_WEIGHT_ALIASES = {"uniform": "uniform", "labels": "from_edge_labels", "from_edge_labels": "from_edge_labels"}
MODEL_NAMES = {"eg_vqc": "EG-VQC", "pca_vqc": "PCA-VQC"}
SYNTHETIC_DATASET = "synthetic-density"
DEFAULT_BENCH_SIZES = (16, 32, 64, 128, 256)
SUBSAMPLE_SEED = 0


class UsageError(Exception):
    """Bad flags, config file or dataset path; maps to exit code 2."""


# ---------------------------------------------------------------- run configuration


def _positive_int(name):
    def conv(v):
        if isinstance(v, bool) or not isinstance(v, (int, str)):
            raise UsageError(f"{name} must be an integer, got {v!r}")
        try:
            n = int(v)
        except ValueError:
            raise UsageError(f"{name} must be an integer, got {v!r}") from None
        if n < 1:
            raise UsageError(f"{name} must be >= 1, got {n}")
        return n

    return conv


def _real(name):
    def conv(v):
        if isinstance(v, bool):
            raise UsageError(f"{name} must be a number, got {v!r}")
        try:
            return float(v)
        except (TypeError, ValueError):
            raise UsageError(f"{name} must be a number, got {v!r}") from None

    return conv


def _choice(name, mapping):
    def conv(v):
        if v not in mapping:
            raise UsageError(f"{name} must be one of {sorted(set(mapping))}, got {v!r}")
        return mapping[v]

    return conv


def _qubits(v):
    if v is None or v == "auto":
        return None
    return _positive_int("n_qubits")(v)


def _optional_count(name):
    def conv(v):
        return None if v is None else _positive_int(name)(v)

    return conv


def _seeds(v):
    """An integer count, or an explicit list (JSON list or comma-separated string)."""
    if isinstance(v, list):
        items = v
    elif isinstance(v, str) and "," in v:
        items = [s for s in v.split(",") if s.strip()]
    else:
        return _positive_int("seeds")(v)
    try:
        out = [int(s) for s in items]
    except (TypeError, ValueError):
        raise UsageError(f"seeds must be integers, got {v!r}") from None
    if not out or any(s < 0 for s in out):
        raise UsageError("seeds must be a non-empty list of non-negative integers")
    return out


def _seed(v):
    if isinstance(v, bool):
        raise UsageError(f"seed must be an integer, got {v!r}")
    try:
        s = int(v)
    except (TypeError, ValueError):
        raise UsageError(f"seed must be an integer, got {v!r}") from None
    if s < 0:
        raise UsageError("seed must be >= 0")
    return s


def _string(name):
    def conv(v):
        if v is not None and not isinstance(v, str):
            raise UsageError(f"{name} must be a string, got {v!r}")
        return v

    return conv


@dataclass
class RunConfig:
    """Configuration shared by ``train`` and ``compare``.

    ``seeds`` is either a count (seeds ``seed, seed+1, ...``) or an explicit
    list; :meth:`seed_list` resolves it.
    """

    dataset: str | None = None
    data_dir: str = field(default_factory=lambda: os.environ.get("EGVQC_DATA_DIR", "data"))
    pipeline: str = "eg_vqc"
    n_qubits: int | None = None
    layers: int = 3
    lr: float = 0.01
    epochs: int = 100
    seeds: int | list = 1
    seed: int = 0
    test_fraction: float = 0.1
    norm_mode: str = "exact"
    edge_weights: str = "uniform"
    entangler: str = "ring"
    multiclass: str = "auto"
    max_graphs: int | None = None
    out: str = "runs"
    jobs: int = 1

    def seed_list(self) -> list[int]:
        if isinstance(self.seeds, list):
            return list(self.seeds)
        return list(range(self.seed, self.seed + self.seeds))

    def train_config(self, seed: int, pipeline: str | None = None, class_count: int = 2) -> TrainConfig:
        multiclass = self.multiclass
        if multiclass == "auto":
            multiclass = "one_vs_rest" if class_count > 2 else "native_binary"
        return TrainConfig(
            layers=self.layers,
            learning_rate=self.lr,
            epochs=self.epochs,
            seed=seed,
            test_fraction=self.test_fraction,
            norm_mode=self.norm_mode,
            pipeline=pipeline or self.pipeline,
            n_qubits=self.n_qubits,
            multiclass=multiclass,
            entangler=self.entangler,
        )


CONVERTERS = {
    "dataset": _string("dataset"),
    "data_dir": _string("data_dir"),
    "pipeline": _choice("pipeline", PIPELINE_ALIASES),
    "n_qubits": _qubits,
    "layers": _positive_int("layers"),
    "lr": _real("lr"),
    "epochs": _positive_int("epochs"),
    "seeds": _seeds,
    "seed": _seed,
    "test_fraction": _real("test_fraction"),
    "norm_mode": _choice("norm_mode", {m: m for m in ("paper", "strict", "exact")}),
    "edge_weights": _choice("edge_weights", EDGE_WEIGHT_ALIASES),
    "entangler": _choice("entangler", {"ring": "ring", "chain": "chain"}),
    "multiclass": _choice("multiclass", {m: m for m in ("auto", "native_binary", "one_vs_rest")}),
    "max_graphs": _optional_count("max_graphs"),
    "out": _string("out"),
    "jobs": _positive_int("jobs"),
}
assert set(CONVERTERS) == {f.name for f in fields(RunConfig)}


def load_config_file(path) -> dict:
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"config file {path} is not valid JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise UsageError(f"config file {path} must hold a JSON object")
    unknown = sorted(set(obj) - set(CONVERTERS))
    if unknown:
        raise UsageError(f"config file {path}: unknown keys {unknown}")
    return obj


def resolve_config(flags: dict, config_path=None) -> RunConfig:
    """Defaults, then the config file, then explicit flags (flags win)."""
    merged = load_config_file(config_path) if config_path else {}
    merged.update({k: v for k, v in flags.items() if k in CONVERTERS})
    values = {k: CONVERTERS[k](v) for k, v in merged.items()}
    cfg = RunConfig(**values)
    try:
        # surfaces optimiser and split errors before any work starts
        cfg.train_config(cfg.seed_list()[0])
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    return cfg


# ---------------------------------------------------------------- datasets


def subsample(ds: LabeledGraphSet, max_graphs: int) -> LabeledGraphSet:
    """Seeded subset shared by every run seed, so all seeds see the same graphs."""
    if max_graphs >= len(ds):
        return ds
    idx = np.random.default_rng(SUBSAMPLE_SEED).permutation(len(ds))[:max_graphs]
    sub = ds.subset(sorted(int(i) for i in idx))
    present = sorted(set(sub.labels))
    if len(present) < ds.class_count:
        raise UsageError(f"--max-graphs {max_graphs} leaves {ds.name} with classes {present} only")
    return sub


def load_dataset(cfg: RunConfig) -> LabeledGraphSet:
    if not cfg.dataset:
        raise UsageError("--dataset is required")
    if cfg.dataset == SYNTHETIC_DATASET:
        ds = density_dataset()
    else:
        root = Path(cfg.data_dir)
        directory = root / cfg.dataset if (root / cfg.dataset).is_dir() else root
        if not (directory / f"{cfg.dataset}_A.txt").is_file():
            raise UsageError(
                f"dataset {cfg.dataset!r} not found: expected {cfg.dataset}_A.txt under {root} or {root / cfg.dataset}"
            )
        ds = load_tu_dataset(directory, cfg.dataset, cfg.edge_weights)
    if cfg.max_graphs is not None:
        ds = subsample(ds, cfg.max_graphs)
    return ds


# ---------------------------------------------------------------- output helpers


def dumps_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def write_atomic(path: Path, text: str):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_outputs(files: dict):
    for path, text in files.items():
        write_atomic(path, text)


def _train_job(job):
    ds, tcfg = job
    report = train(ds, tcfg)
    report.model = None  # not needed downstream and not worth pickling back
    return report


def run_seeds(ds: LabeledGraphSet, cfgs: list[TrainConfig], jobs: int = 1) -> list[TrainReport]:
    """Independent training runs; results come back in input order."""
    work = [(ds, c) for c in cfgs]
    if jobs <= 1 or len(work) <= 1:
        return [_train_job(w) for w in work]
    with ProcessPoolExecutor(max_workers=min(jobs, len(work))) as pool:
        return list(pool.map(_train_job, work))


def summarize(reports: list[TrainReport], dataset: str, pipeline: str) -> dict:
    accs = [r.final_test_accuracy for r in reports]
    mean, std = mean_std(accs)
    notes = sorted({n for r in reports for n in r.notes})
    return {
        "dataset": dataset,
        "pipeline": pipeline,
        "seeds": [r.seed for r in reports],
        "accuracies": accs,
        "mean_acc": mean,
        "std_acc": std,
        "n_seeds": len(reports),
        "n_qubits": reports[0].n_qubits,
        "class_count": reports[0].class_count,
        "excluded_graphs": reports[0].excluded_graphs,
        "notes": notes,
    }


# ---------------------------------------------------------------- commands


def cmd_train(cfg: RunConfig) -> dict:
    ds = load_dataset(cfg)
    start = time.perf_counter()
    seeds = cfg.seed_list()
    reports = run_seeds(ds, [cfg.train_config(s, class_count=ds.class_count) for s in seeds], cfg.jobs)
    summary = summarize(reports, ds.name, cfg.pipeline)

    out = Path(cfg.out)
    stem = f"{ds.name}_{cfg.pipeline}"
    files = {}
    for r in reports:
        files[out / f"{stem}_seed{r.seed}.json"] = dumps_json(r.to_json())
        files[out / f"{stem}_seed{r.seed}.csv"] = r.to_csv()
    files[out / f"{stem}_summary.json"] = dumps_json(
        {"deterministic": summary, "nondeterministic": {"wall_time": time.perf_counter() - start}}
    )
    write_outputs(files)
    print(
        f"{ds.name} {MODEL_NAMES[cfg.pipeline]}: "
        f"{100 * summary['mean_acc']:.2f} +/- {100 * summary['std_acc']:.2f} % over {len(seeds)} seed(s)"
    )
    for n in summary["notes"]:
        print(f"note: {n}")
    return summary


def comparison_markdown(rows: list[dict]) -> str:
    lines = ["| Model | Dataset | Accuracy (%) |", "|---|---|---|"]
    for r in rows:
        lines.append(f"| {r['model']} | {r['dataset']} | {100 * r['mean_acc']:.2f} ± {100 * r['std_acc']:.2f} |")
    return "\n".join(lines) + "\n"


def cmd_compare(cfg: RunConfig) -> dict:
    """Both pipelines on the same graphs, seeds and therefore splits."""
    ds = load_dataset(cfg)
    start = time.perf_counter()
    seeds = cfg.seed_list()
    rows = []
    for pipeline in ("eg_vqc", "pca_vqc"):
        cfgs = [cfg.train_config(s, pipeline, ds.class_count) for s in seeds]
        s = summarize(run_seeds(ds, cfgs, cfg.jobs), ds.name, pipeline)
        s["model"] = MODEL_NAMES[pipeline]
        rows.append(s)
    table = {"dataset": ds.name, "seeds": seeds, "rows": rows}
    out = Path(cfg.out)
    md = comparison_markdown(rows)
    write_outputs(
        {
            out / f"compare_{ds.name}.json": dumps_json(
                {"deterministic": table, "nondeterministic": {"wall_time": time.perf_counter() - start}}
            ),
            out / f"compare_{ds.name}.md": md,
        }
    )
    print(md, end="")
    return table


def _median_time(fn, repeats: int) -> float:
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def loglog_slope(sizes, times) -> float | None:
    if len(set(sizes)) < 2:
        return None
    return float(np.polyfit(np.log(sizes), np.log(times), 1)[0])


def bench_scaling(sizes=DEFAULT_BENCH_SIZES, repeats: int = 5) -> dict:
    """Median wall time of encoding and spectral features on complete graphs.

    Encoding uses the default (exact) normalisation on the smallest qubit
    count that fits.  The spectral timing covers building the adjacency
    matrix and the Jacobi eigenvalue sweep.
    """
    sizes = [int(s) for s in sizes]
    if not sizes or min(sizes) < 4:
        raise UsageError("bench sizes must be >= 4")
    if repeats < 1:
        raise UsageError("repeats must be >= 1")
    pca.jacobi_eigenvalues(np.eye(3))  # compile outside the timed region
    rows = []
    for n in sizes:
        g = complete_graph(n)
        nq = required_qubits(n)
        ecfg = EncodingConfig(nq)
        rows.append(
            {
                "size": n,
                "n_terms": len(raw_terms(g, nq)),
                "expected_terms": n * (n - 1) // 2 + n,
                "t_encode": _median_time(lambda: encode_graph(g, ecfg), repeats),
                "t_pca": _median_time(lambda: pca.spectrum(g, nq), repeats),
            }
        )
    return {
        "rows": rows,
        "slope_encode": loglog_slope(sizes, [r["t_encode"] for r in rows]),
        "slope_pca": loglog_slope(sizes, [r["t_pca"] for r in rows]),
    }


def bench_csv(result: dict) -> str:
    lines = ["size,n_terms,t_encode,t_pca"]
    for r in result["rows"]:
        lines.append(f"{r['size']},{r['n_terms']},{r['t_encode']!r},{r['t_pca']!r}")
    return "\n".join(lines) + "\n"


def cmd_bench(sizes, repeats: int, out) -> dict:
    result = bench_scaling(sizes, repeats)
    det = {"sizes": [r["size"] for r in result["rows"]], "n_terms": [r["n_terms"] for r in result["rows"]]}
    nondet = {
        "t_encode": [r["t_encode"] for r in result["rows"]],
        "t_pca": [r["t_pca"] for r in result["rows"]],
        "slope_encode": result["slope_encode"],
        "slope_pca": result["slope_pca"],
        "repeats": repeats,
    }
    out = Path(out)
    csv = bench_csv(result)
    write_outputs(
        {
            out / "bench.csv": csv,
            out / "bench.json": dumps_json({"deterministic": det, "nondeterministic": nondet}),
        }
    )
    print(csv, end="")
    for key in ("slope_encode", "slope_pca"):
        v = result[key]
        print(f"{key}: {'n/a (single size)' if v is None else f'{v:.3f}'}")
    return result


def demo_graph() -> Graph:
    """Single unit edge on two vertices; encodes on two qubits."""
    return Graph(2, ((1, 2, 1.0),))


def inspect_graph(
    g: Graph,
    n_qubits: int,
    norm_mode: str = "exact",
    label: int | None = None,
    title: str = "graph",
) -> tuple[str, dict]:
    """Human-readable dump plus the same facts as a dict."""
    h = encode_graph(g, EncodingConfig(n_qubits, norm_mode))
    report = verify_bound(h)
    collisions = collision_count(g, h)
    lines = [
        f"{title}: {g.n_vertices} vertices, {g.n_edges} edges" + ("" if label is None else f", label {label}"),
        f"qubits: {n_qubits}  norm_mode: {norm_mode}",
        f"terms: {len(h.terms)} (edges + vertices - collisions = {g.n_edges} + {g.n_vertices} - {collisions})",
        "",
        f"{'mask':>{n_qubits + 2}}  {'string':>{n_qubits}}  coefficient",
    ]
    for t in h.terms:
        lines.append(f"{t.string.bits():>{n_qubits + 2}}  {t.string.label():>{n_qubits}}  {t.coefficient:+.12g}")
    lines += [
        "",
        f"lambda_min: {report.lambda_min:+.12g}",
        f"lambda_max: {report.lambda_max:+.12g}",
        f"delta_j_plus_delta_h: {report.delta_j_plus_delta_h:.12g}",
        f"l1_bound: {report.l1_bound:.12g}",
        f"within_unit: {report.within_unit}",
        f"collisions: {collisions}",
    ]
    info = {"n_terms": len(h.terms), "collisions": collisions, "bound": report.to_json(), "hamiltonian": h}
    return "\n".join(lines) + "\n", info


def pca_feature_csv(graphs, index: int, k: int) -> str:
    """Raw and scaled top-k singular values of one graph.

    The scale maps the largest singular value over ``graphs`` to pi, mirroring
    how training fits it on the training split.
    """
    raw = np.array([pca.spectrum(g, k) for g in graphs])
    angles = pca.scale_features(raw[index], pca.fit_scale(raw))
    lines = ["qubit,singular_value,angle"]
    lines += [f"{q},{float(raw[index, q])!r},{float(angles[q])!r}" for q in range(k)]
    return "\n".join(lines) + "\n"


def ansatz_state_json(n_qubits: int, layers: int, seed: int, entangler: str = "ring") -> dict:
    """Amplitudes of the ansatz on the plus state with seed-derived head-0 angles."""
    params = AnsatzParams.random(layers, n_qubits, np.random.default_rng(head_seed(seed, 0)))
    state = apply_ansatz(init_plus_state(n_qubits), params, entangler)
    return {
        "n_qubits": n_qubits,
        "layers": layers,
        "seed": seed,
        "amplitudes": [[float(a.real), float(a.imag)] for a in state.amplitudes],
    }


def cmd_inspect(args) -> int:
    if args.dataset:
        cfg = resolve_config({k: getattr(args, k) for k in ("dataset", "data_dir", "edge_weights") if hasattr(args, k)})
        ds = load_dataset(cfg)
        if not 0 <= args.graph_index < len(ds):
            raise UsageError(f"graph index {args.graph_index} out of range for {ds.name} ({len(ds)} graphs)")
        graphs, g, label = ds.graphs, ds.graphs[args.graph_index], ds.labels[args.graph_index]
        title = f"{ds.name}[{args.graph_index}]"
        auto_n = required_qubits(ds.max_vertices)
    else:
        if args.graph_index != 0:
            raise UsageError("without --dataset only the demo graph (index 0) is available")
        g = demo_graph()
        graphs, label, title = [g], None, "demo"
        auto_n = required_qubits(g.n_vertices)
    n = _qubits(args.n_qubits) or auto_n
    if g.n_vertices >= 1 << n:
        raise UsageError(f"{title} has {g.n_vertices} vertices and does not fit on {n} qubits")

    text, info = inspect_graph(g, n, args.norm_mode, label, title)
    print(text, end="")
    if args.pca:
        print()
        print(pca_feature_csv(graphs, args.graph_index, n), end="")
    if args.state:
        print()
        print(dumps_json(ansatz_state_json(n, args.layers, args.seed, args.entangler)), end="")
    if args.json:
        print()
        print(dumps_json(info["hamiltonian"].to_json()), end="")
    return EXIT_OK


# ---------------------------------------------------------------- argument parsing


def _add_run_flags(p: argparse.ArgumentParser):
    s = argparse.SUPPRESS
    p.add_argument("--config", default=None, help="JSON file of run options; explicit flags take precedence")
    p.add_argument("--dataset", default=s, help=f"TU dataset name, or {SYNTHETIC_DATASET}")
    p.add_argument("--data-dir", dest="data_dir", default=s, help="directory holding <NAME>/ or <NAME>_*.txt")
    p.add_argument("--pipeline", default=s, help="eg-vqc or pca-vqc")
    p.add_argument("--n-qubits", dest="n_qubits", default=s, help="integer or 'auto'")
    p.add_argument("--layers", default=s)
    p.add_argument("--lr", default=s)
    p.add_argument("--epochs", default=s)
    p.add_argument("--seeds", default=s, help="number of seeds, or a comma-separated list")
    p.add_argument("--seed", default=s, help="first seed when --seeds is a count")
    p.add_argument("--test-fraction", dest="test_fraction", default=s)
    p.add_argument("--norm-mode", dest="norm_mode", default=s, help="paper, strict or exact")
    p.add_argument("--edge-weights", dest="edge_weights", default=s, help="uniform or labels")
    p.add_argument("--entangler", default=s, help="ring or chain")
    p.add_argument("--multiclass", default=s, help="auto, native_binary or one_vs_rest")
    p.add_argument("--max-graphs", dest="max_graphs", default=s, help="seeded subset size")
    p.add_argument("--out", default=s, help="output directory")
    p.add_argument("--jobs", default=s, help="parallel seed jobs")


def _parse_sizes(text: str) -> list[int]:
    try:
        return [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"sizes must be comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="egvqc", description=__doc__.split("\n")[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="train one pipeline over several seeds")
    _add_run_flags(p)
    p.set_defaults(func=_run_train)

    p = sub.add_parser("compare", help="EG-VQC against PCA-VQC on shared seeds")
    _add_run_flags(p)
    p.set_defaults(func=_run_compare)

    p = sub.add_parser("bench", help="encoding vs spectral-feature scaling on complete graphs")
    p.add_argument("--sizes", type=_parse_sizes, default=list(DEFAULT_BENCH_SIZES))
    p.add_argument("--repeats", type=int, default=5)
    p.add_argument("--out", default="runs")
    p.set_defaults(func=lambda a: (cmd_bench(a.sizes, a.repeats, a.out), EXIT_OK)[1])

    p = sub.add_parser("inspect", help="dump one graph's Hamiltonian and bound report")
    p.add_argument("--dataset", default=None)
    p.add_argument("--data-dir", dest="data_dir", default=argparse.SUPPRESS)
    p.add_argument("--edge-weights", dest="edge_weights", default=argparse.SUPPRESS)
    p.add_argument("--graph-index", dest="graph_index", type=int, default=0)
    p.add_argument("--n-qubits", dest="n_qubits", default="auto")
    p.add_argument("--norm-mode", dest="norm_mode", choices=("paper", "strict", "exact"), default="exact")
    p.add_argument("--pca", action="store_true", help="append spectral features as CSV")
    p.add_argument("--state", action="store_true", help="append ansatz amplitudes as JSON")
    p.add_argument("--layers", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--entangler", choices=("ring", "chain"), default="ring")
    p.add_argument("--json", action="store_true", help="append the Hamiltonian as JSON")
    p.set_defaults(func=cmd_inspect)

    p = sub.add_parser("plot", help="render loss-curve or bench CSV files (needs matplotlib)")
    p.add_argument("csv", nargs="+")
    p.add_argument("--out", required=True, help="image path, format from the suffix")
    p.set_defaults(func=_run_plot)
    return parser


def _run_flags(args) -> dict:
    return {k: v for k, v in vars(args).items() if k in CONVERTERS}


def _run_train(args) -> int:
    cmd_train(resolve_config(_run_flags(args), args.config))
    return EXIT_OK


def _run_compare(args) -> int:
    cmd_compare(resolve_config(_run_flags(args), args.config))
    return EXIT_OK


def _run_plot(args) -> int:
    from .plotting import plot_csv_files

    plot_csv_files(args.csv, args.out)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"egvqc {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (EgvqcError, OSError, ValueError) as exc:
        print(f"egvqc {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
