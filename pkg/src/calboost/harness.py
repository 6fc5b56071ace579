"""Multi-run experiment execution and machine-readable result emission.

One experiment = one dataset (CSV or synthetic), one or more policies,
R independent runs per policy (run r is seeded base_seed + r; stationary
data get a fresh shuffle per run).  Outputs per policy directory:
run_<r>.jsonl with one RoundRecord per line; plus experiment-level
aggregate.json / aggregate.csv / reliability.json / meta.json.
"""

import csv
import json
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import _accel, metrics
from .bandits import POLICIES
from .boosting import Ensemble
from .data import SyntheticSpec, generate_synthetic, load_csv, make_stream
from .metrics import ReliabilityBins, aggregate_ci
from .rng import RngStream
from .scheduler import FIXED_NC_GRID, Orchestrator, PolicySpec

# distinct stream for data generation so run 0 (seeded base_seed) does not
# replay the generator's draws
DATA_SEED_SALT = 0x9E3779B97F4A7C15

POLICY_ALIASES = {
    "ucb1": "ucb1",
    "ucb1i": "ucb1_improved",
    "gts": "gts",
    "ducb1": "disc_ucb1",
    "ducb1i": "disc_ucb1_improved",
    "dgts": "disc_gts",
}


@dataclass
class StreamConfig:
    data_path: str | None = None
    synthetic: SyntheticSpec | None = None
    label_column: str | None = None
    positive_classes: list[str] | None = None
    stationary: bool = True
    batch_size: int = 50
    ensemble_size: int = 10
    weak_learner: str = "nb"
    l1: float = 0.0
    eta: float = 0.01
    score_kind: str = "vote"
    policy: str = "ucb1"
    runs: int = 10
    base_seed: int = 0
    gamma: float = 0.95
    reward_timing: str = "prequential"
    eps_clip: float = metrics.EPS_CLIP
    reliability_bins: int = metrics.DEFAULT_BINS
    include_probs: bool = False
    out_dir: str | None = None

    def __post_init__(self):
        if (self.data_path is None) == (self.synthetic is None):
            raise ValueError("configure exactly one of data_path or synthetic")
        if self.batch_size < 1 or self.ensemble_size < 1 or self.runs < 1:
            raise ValueError("batch_size, ensemble_size and runs must be >= 1")


def parse_policy(token: str) -> PolicySpec:
    if token == "uncalibrated":
        return PolicySpec(kind="uncalibrated")
    if token.startswith("fixed:"):
        return PolicySpec(kind="fixed", n_c=int(token.split(":", 1)[1]))
    name = POLICY_ALIASES.get(token, token)
    if name in POLICIES:
        return PolicySpec(kind="bandit", bandit_policy=name)
    raise ValueError(f"unknown policy: {token!r}")


def expand_policies(policy: str, gamma: float) -> list[PolicySpec]:
    if policy == "grid":
        tokens = ["uncalibrated"]
        tokens += [f"fixed:{n}" for n in FIXED_NC_GRID]
        tokens += list(POLICY_ALIASES)
    else:
        tokens = [policy]
    specs = [parse_policy(tok) for tok in tokens]
    for spec in specs:
        spec.gamma = gamma
    return specs


def load_examples(config: StreamConfig):
    if config.data_path is not None:
        return load_csv(config.data_path, config.label_column, config.positive_classes)
    rng = RngStream((config.base_seed + DATA_SEED_SALT) & 0xFFFFFFFFFFFFFFFF)
    X, y = generate_synthetic(config.synthetic, rng)
    return X, y, {"synthetic": asdict(config.synthetic)}


@dataclass
class RunResult:
    records: list
    bins: ReliabilityBins
    running_loss: np.ndarray
    final_logloss: float
    final_brier: float
    action_seconds: dict = field(default_factory=dict)
    n_bandit_actions: int = 0
    n_rewards: int = 0


def run_single(config: StreamConfig, spec: PolicySpec, X, y, run_index: int) -> RunResult:
    rng = RngStream(config.base_seed + run_index)
    batches = make_stream(X, y, config.batch_size, config.stationary, rng)
    ensemble = Ensemble(
        config.weak_learner,
        config.ensemble_size,
        X.shape[1],
        eta=config.eta,
        l1=config.l1,
    )
    orch = Orchestrator(
        ensemble,
        spec,
        score_kind=config.score_kind,
        eps_clip=config.eps_clip,
        reward_timing=config.reward_timing,
    )
    bins = ReliabilityBins(config.reliability_bins)
    records = []
    brier_total = 0.0
    n_total = 0
    action_seconds = {"TRAIN": [0.0, 0], "CALIBRATE": [0.0, 0]}
    for mb in batches:
        t0 = time.perf_counter()
        rec = orch.run_round(mb, rng)
        elapsed = time.perf_counter() - t0
        action_seconds[rec.action][0] += elapsed
        action_seconds[rec.action][1] += 1
        bins.update_batch(rec.probs, mb.y)
        brier_total += rec.brier * len(mb)
        n_total += len(mb)
        records.append(rec)
    return RunResult(
        records=records,
        bins=bins,
        running_loss=np.array([r.running_loss for r in records]),
        final_logloss=records[-1].running_loss,
        final_brier=brier_total / n_total,
        action_seconds={
            name: (tot / cnt if cnt else None) for name, (tot, cnt) in action_seconds.items()
        },
        n_bandit_actions=orch.n_bandit_actions,
        n_rewards=orch.n_rewards,
    )


def _series_ci(series_list):
    if len(series_list) == 1:
        s = np.asarray(series_list[0], dtype=np.float64)
        return s, np.zeros_like(s)
    return aggregate_ci(series_list)


def run_policy(config: StreamConfig, spec: PolicySpec, X, y):
    results = [run_single(config, spec, X, y, r) for r in range(config.runs)]
    curves = [res.running_loss for res in results]
    mean, half = _series_ci(curves)
    finals = np.array([res.final_logloss for res in results])
    briers = np.array([res.final_brier for res in results])
    final_mean, final_half = _scalar_ci(finals)
    brier_mean, brier_half = _scalar_ci(briers)
    pooled = ReliabilityBins(config.reliability_bins)
    for res in results:
        pooled.merge(res.bins)
    summary = {
        "rounds": list(range(1, len(mean) + 1)),
        "running_logloss_mean": mean.tolist(),
        "running_logloss_halfwidth": half.tolist(),
        "final_logloss_mean": final_mean,
        "final_logloss_halfwidth": final_half,
        "final_brier_mean": brier_mean,
        "final_brier_halfwidth": brier_half,
        "runs": config.runs,
    }
    return results, summary, pooled


def _scalar_ci(values: np.ndarray):
    if values.size == 1:
        return float(values[0]), 0.0
    mean, half = aggregate_ci([np.array([v]) for v in values])
    return float(mean[0]), float(half[0])


def run_experiment(config: StreamConfig) -> dict:
    X, y, data_meta = load_examples(config)
    specs = expand_policies(config.policy, config.gamma)
    out_dir = Path(config.out_dir) if config.out_dir else None
    if out_dir:
        out_dir.mkdir(parents=True, exist_ok=True)

    aggregate = {}
    reliability = {}
    timing = {}
    for spec in specs:
        results, summary, pooled = run_policy(config, spec, X, y)
        aggregate[spec.label] = summary
        reliability[spec.label] = pooled.as_dict()
        timing[spec.label] = [res.action_seconds for res in results]
        if out_dir:
            policy_dir = out_dir / spec.label.replace(":", "_")
            policy_dir.mkdir(parents=True, exist_ok=True)
            for r, res in enumerate(results):
                path = policy_dir / f"run_{r}.jsonl"
                with open(path, "w") as fh:
                    for rec in res.records:
                        fh.write(json.dumps(rec.to_json(config.include_probs)) + "\n")

    out = {
        "aggregate": {"policies": aggregate},
        "reliability": {"bin_count": config.reliability_bins, "policies": reliability},
    }
    if out_dir:
        with open(out_dir / "aggregate.json", "w") as fh:
            json.dump(out["aggregate"], fh, indent=2)
        with open(out_dir / "reliability.json", "w") as fh:
            json.dump(out["reliability"], fh, indent=2)
        with open(out_dir / "aggregate.csv", "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(
                [
                    "policy",
                    "final_logloss_mean",
                    "final_logloss_halfwidth",
                    "final_brier_mean",
                    "final_brier_halfwidth",
                ]
            )
            for label, summary in aggregate.items():
                writer.writerow(
                    [
                        label,
                        summary["final_logloss_mean"],
                        summary["final_logloss_halfwidth"],
                        summary["final_brier_mean"],
                        summary["final_brier_halfwidth"],
                    ]
                )
        meta = {
            "config": _config_dict(config),
            "run_seeds": [config.base_seed + r for r in range(config.runs)],
            "policies": [spec.label for spec in specs],
            "data": data_meta,
            "numba_enabled": _accel.NUMBA_ENABLED,
            "mean_seconds_per_action": timing,
        }
        with open(out_dir / "meta.json", "w") as fh:
            json.dump(meta, fh, indent=2)
    return out


def _config_dict(config: StreamConfig) -> dict:
    d = asdict(config)
    if config.synthetic is not None:
        d["synthetic"] = asdict(config.synthetic)
    return d
