"""Monte-Carlo sampling-and-reconstruction benchmark.

Each trial draws a fresh sensor graph and signal, designs a sampling
matrix, reconstructs from its samples, and scores the mean squared
error; a random vertex-selection baseline runs through the identical
reconstruction machinery so the sampling design is the only varied
factor. All randomness derives from the master seed through documented
stream mixing, so a benchmark run is reproducible byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .design import DesignConfig, design_sampling_operator
from .fileio import _fmt
from .graphs import eigendecompose, laplacian, random_sensor_graph
from .reconstruct import build_pipeline, sample
from .seeds import mix_seed
from .signals import SignalModelSpec, generate_signal
from .variation import SpectralResponse, build_variation_operator

METHOD_PROPOSED = "proposed"
METHOD_RANDOM_VERTEX = "random_vertex"
BASELINE_CHOICES = (METHOD_RANDOM_VERTEX, "none")

# purpose tags for the per-trial seed streams
_GRAPH_STREAM = 0
_DESIGN_STREAM = 1
_SIGNAL_STREAM = 2
_BASELINE_STREAM = 3


def default_radius(n: int, num_samples: int) -> float:
    """Frobenius budget sqrt(n * K) used by the experiment presets."""
    return float(np.sqrt(n * num_samples))


@dataclass(frozen=True)
class ExperimentConfig:
    """Full description of one benchmark run."""

    n: int
    num_samples: int
    graph_k: int = 6
    response: SpectralResponse = field(default_factory=lambda: SpectralResponse(1.0, 0.1))
    model: SignalModelSpec = field(default_factory=lambda: SignalModelSpec("gmrf"))
    design: DesignConfig | None = None
    trials: int = 1
    baseline: str = METHOD_RANDOM_VERTEX
    master_seed: int = 0
    output_dir: str | None = None
    fixed_graph: bool = False

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"n must be at least 2, got {self.n}")
        if not 1 <= self.num_samples < self.n:
            raise ValueError(
                f"num_samples must satisfy 1 <= K < n, got K={self.num_samples}, n={self.n}"
            )
        if not 1 <= self.graph_k < self.n:
            raise ValueError(f"graph_k must satisfy 1 <= k < n, got {self.graph_k}")
        if self.trials < 1:
            raise ValueError(f"trials must be at least 1, got {self.trials}")
        if self.baseline not in BASELINE_CHOICES:
            raise ValueError(
                f"baseline must be one of {BASELINE_CHOICES}, got {self.baseline!r}"
            )
        if self.design is None:
            object.__setattr__(
                self,
                "design",
                DesignConfig(epsilon=default_radius(self.n, self.num_samples)),
            )

    @property
    def sampling_ratio(self) -> float:
        return self.num_samples / self.n

    def methods(self) -> tuple[str, ...]:
        if self.baseline == "none":
            return (METHOD_PROPOSED,)
        return (METHOD_PROPOSED, METHOD_RANDOM_VERTEX)


@dataclass(frozen=True)
class TrialRecord:
    trial: int
    method: str
    mse: float
    design_iterations: int
    design_converged: bool
    used_pseudo_inverse: bool


@dataclass(frozen=True)
class MethodSummary:
    method: str
    mean_mse: float
    std_mse: float
    trials: int


@dataclass(frozen=True, eq=False)
class ExperimentReport:
    """Per-trial records plus per-method aggregates."""

    n: int
    num_samples: int
    records: list[TrialRecord]
    summaries: list[MethodSummary]

    @property
    def sampling_ratio(self) -> float:
        return self.num_samples / self.n


def mse(x_hat: np.ndarray, x: np.ndarray) -> float:
    """Mean squared error: squared distance divided by signal length."""
    a = np.asarray(x_hat, dtype=float).ravel()
    b = np.asarray(x, dtype=float).ravel()
    if a.shape != b.shape:
        raise ValueError(f"length mismatch: {a.shape} vs {b.shape}")
    diff = a - b
    return float(diff @ diff) / a.size


def random_vertex_selection(n: int, num_samples: int, seed: int) -> np.ndarray:
    """Selection matrix of ``num_samples`` distinct uniform vertex columns."""
    if not 1 <= num_samples <= n:
        raise ValueError(f"need 1 <= K <= n, got K={num_samples}, n={n}")
    rng = np.random.default_rng(int(seed))
    chosen = rng.choice(n, size=num_samples, replace=False)
    S = np.zeros((n, num_samples))
    S[chosen, np.arange(num_samples)] = 1.0
    return S


def trial_seeds(cfg: ExperimentConfig, trial_index: int) -> tuple[int, int, int, int]:
    """Per-trial (graph, design, signal, baseline) seed streams.

    Streams are independent across trials and purposes; with
    ``fixed_graph`` the graph stream is pinned to trial 0 so every trial
    sees the same graph while everything else stays independent.
    """
    base = mix_seed(cfg.master_seed, trial_index)
    graph_base = mix_seed(cfg.master_seed, 0) if cfg.fixed_graph else base
    return (
        mix_seed(graph_base, _GRAPH_STREAM),
        mix_seed(base, _DESIGN_STREAM),
        mix_seed(base, _SIGNAL_STREAM),
        mix_seed(base, _BASELINE_STREAM),
    )


def run_trial(cfg: ExperimentConfig, trial_index: int) -> list[TrialRecord]:
    """Run one independent trial and score every configured method."""
    graph_seed, design_seed, signal_seed, baseline_seed = trial_seeds(cfg, trial_index)
    graph = random_sensor_graph(cfg.n, cfg.graph_k, graph_seed)
    lap = laplacian(graph)
    spectrum = eigendecompose(lap)
    vo = build_variation_operator(spectrum, cfg.response)
    x = generate_signal(cfg.model, graph, spectrum, lap, seed=signal_seed)
    design = design_sampling_operator(
        vo.whitener, cfg.num_samples, replace(cfg.design, seed=design_seed)
    )
    records = []
    for method in cfg.methods():
        if method == METHOD_PROPOSED:
            S = design.matrix
            iterations = design.iterations
            converged = design.converged
        else:
            S = random_vertex_selection(cfg.n, cfg.num_samples, baseline_seed)
            iterations = 0
            converged = True
        pipeline = build_pipeline(vo, S)
        x_hat = pipeline.reconstruct(sample(S, x))
        records.append(
            TrialRecord(
                trial=trial_index,
                method=method,
                mse=mse(x_hat, x),
                design_iterations=iterations,
                design_converged=converged,
                used_pseudo_inverse=pipeline.used_pseudo_inverse,
            )
        )
    return records


def summarize(records: list[TrialRecord]) -> list[MethodSummary]:
    """Per-method mean and population standard deviation of the MSEs."""
    order: list[str] = []
    grouped: dict[str, list[float]] = {}
    for rec in records:
        if rec.method not in grouped:
            order.append(rec.method)
            grouped[rec.method] = []
        grouped[rec.method].append(rec.mse)
    summaries = []
    for method in order:
        values = np.asarray(grouped[method])
        summaries.append(
            MethodSummary(
                method=method,
                mean_mse=float(values.mean()),
                std_mse=float(values.std()),
                trials=int(values.size),
            )
        )
    return summaries


def run_benchmark(cfg: ExperimentConfig) -> ExperimentReport:
    """Run all trials, aggregate, and write CSVs when an output dir is set.

    Raises:
        RuntimeError: naming the failing trial when any trial dies.
    """
    records: list[TrialRecord] = []
    for index in range(cfg.trials):
        try:
            records.extend(run_trial(cfg, index))
        except Exception as exc:
            raise RuntimeError(f"trial {index} failed: {exc}") from exc
    report = ExperimentReport(
        n=cfg.n,
        num_samples=cfg.num_samples,
        records=records,
        summaries=summarize(records),
    )
    if cfg.output_dir is not None:
        write_report(report, cfg.output_dir)
    return report


def write_report(report: ExperimentReport, out_dir) -> tuple[Path, Path]:
    """Write trials.csv and summary.csv; byte-stable for a fixed report."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    lines = ["trial,method,mse,design_iterations,design_converged,used_pseudo_inverse"]
    for r in report.records:
        lines.append(
            f"{r.trial},{r.method},{_fmt(r.mse)},{r.design_iterations},"
            f"{str(r.design_converged).lower()},{str(r.used_pseudo_inverse).lower()}"
        )
    trials_path = out / "trials.csv"
    trials_path.write_text("\n".join(lines) + "\n")
    lines = [
        f"# n {report.n}",
        f"# num_samples {report.num_samples}",
        f"# sampling_ratio {_fmt(report.sampling_ratio)}",
        "method,mean_mse,std_mse,trials",
    ]
    for s in report.summaries:
        lines.append(f"{s.method},{_fmt(s.mean_mse)},{_fmt(s.std_mse)},{s.trials}")
    summary_path = out / "summary.csv"
    summary_path.write_text("\n".join(lines) + "\n")
    return trials_path, summary_path


_CONFIG_KEYS = {
    "n",
    "k",
    "graph_k",
    "trials",
    "master_seed",
    "baseline",
    "fixed_graph",
    "output_dir",
    "response.slope",
    "response.offset",
    "model.kind",
    "model.eta",
    "model.density",
    "model.seed",
    "design.epsilon",
    "design.gamma",
    "design.t_mode",
    "design.stop_tol",
    "design.max_iter",
    "design.rank_tol",
}

_BOOL_WORDS = {"true": True, "yes": True, "1": True, "false": False, "no": False, "0": False}


def _parse_bool(raw: str) -> bool:
    word = raw.strip().lower()
    if word not in _BOOL_WORDS:
        raise ValueError(f"expected a boolean, got {raw!r}")
    return _BOOL_WORDS[word]


def config_from_mapping(raw: dict[str, str]) -> ExperimentConfig:
    """Build an ExperimentConfig from flat string key-value pairs."""
    unknown = sorted(set(raw) - _CONFIG_KEYS)
    if unknown:
        raise ValueError(f"unknown config keys: {', '.join(unknown)}")
    for required in ("n", "k"):
        if required not in raw:
            raise ValueError(f"config is missing required key {required!r}")
    n = int(raw["n"])
    num_samples = int(raw["k"])
    response = SpectralResponse(
        slope=float(raw.get("response.slope", 1.0)),
        offset=float(raw.get("response.offset", 0.1)),
    )
    model = SignalModelSpec(
        kind=raw.get("model.kind", "gmrf"),
        eta=float(raw.get("model.eta", 0.1)),
        density=float(raw.get("model.density", 0.125)),
        seed=int(raw.get("model.seed", 0)),
    )
    eps_raw = raw.get("design.epsilon", "auto")
    epsilon = default_radius(n, num_samples) if eps_raw == "auto" else float(eps_raw)
    design = DesignConfig(
        epsilon=epsilon,
        gamma=float(raw.get("design.gamma", 1.0)),
        t_mode=raw.get("design.t_mode", "zero"),
        stop_tol=float(raw.get("design.stop_tol", 1e-5)),
        max_iter=int(raw.get("design.max_iter", 10000)),
        rank_tol=float(raw.get("design.rank_tol", 1e-10)),
    )
    return ExperimentConfig(
        n=n,
        num_samples=num_samples,
        graph_k=int(raw.get("graph_k", 6)),
        response=response,
        model=model,
        design=design,
        trials=int(raw.get("trials", 1)),
        baseline=raw.get("baseline", METHOD_RANDOM_VERTEX),
        master_seed=int(raw.get("master_seed", 0)),
        output_dir=raw.get("output_dir"),
        fixed_graph=_parse_bool(raw.get("fixed_graph", "false")),
    )


def load_experiment_config(path, overrides: dict[str, str] | None = None) -> ExperimentConfig:
    """Parse the key-value experiment file into an ExperimentConfig.

    Lines are ``key value``; ``#`` starts a comment. Keys are listed in
    the README. ``overrides`` (same key space) win over file values.
    """
    raw: dict[str, str] = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        parts = stripped.split(None, 1)
        if len(parts) != 2:
            raise ValueError(f"{path}:{lineno}: expected 'key value', got {line!r}")
        raw[parts[0]] = parts[1].strip()
    if overrides:
        raw.update({key: str(value) for key, value in overrides.items()})
    return config_from_mapping(raw)
