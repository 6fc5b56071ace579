"""Command-line entry point for running stream experiments."""

import argparse
import sys

from .data import SyntheticSpec
from .harness import StreamConfig, run_experiment


def parse_synthetic(text: str) -> SyntheticSpec:
    """Parse "n=5000,d=5,delta=2[,drift=0.01]" into a SyntheticSpec."""
    fields = {}
    for part in text.split(","):
        key, _, value = part.partition("=")
        if not value:
            raise argparse.ArgumentTypeError(f"bad synthetic spec fragment: {part!r}")
        fields[key.strip()] = float(value)
    if "n" not in fields:
        raise argparse.ArgumentTypeError("synthetic spec needs n=<examples>")
    spec = SyntheticSpec(
        n_examples=int(fields.pop("n")),
        n_features=int(fields.pop("d", 5)),
        delta=fields.pop("delta", 2.0),
        drift=fields.pop("drift", 0.0),
        drift_block=int(fields.pop("block", 50)),
    )
    if fields:
        raise argparse.ArgumentTypeError(f"unknown synthetic fields: {sorted(fields)}")
    return spec


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="calboost",
        description="Online boosting with bandit-scheduled probability calibration.",
    )
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--data", metavar="PATH", help="headered CSV with numeric features")
    src.add_argument(
        "--synthetic",
        type=parse_synthetic,
        metavar="SPEC",
        help='e.g. "n=5000,d=5,delta=2,drift=0.01"',
    )
    p.add_argument("--label-col", default=None, help="label column name (default: last)")
    p.add_argument(
        "--positive-classes",
        default=None,
        help="comma-separated raw label values mapped to +1 (default: most frequent class)",
    )
    p.add_argument(
        "--policy",
        default="ucb1",
        help="uncalibrated | fixed:N | ucb1 | ucb1i | gts | ducb1 | ducb1i | dgts | grid",
    )
    p.add_argument(
        "--weak-learner", default="nb", choices=["nb", "logreg", "svm", "perceptron"]
    )
    p.add_argument("--T", type=int, default=10, dest="ensemble_size", help="ensemble size")
    p.add_argument("--batch-size", type=int, default=50)
    p.add_argument("--l1", type=float, default=0.0, help="L1 strength for SGD learners")
    p.add_argument("--score", default="vote", choices=["vote", "sigmoid"])
    p.add_argument("--gamma", type=float, default=0.95, help="reward discount factor")
    p.add_argument(
        "--reward-timing", default="prequential", choices=["prequential", "same_batch"]
    )
    p.add_argument("--runs", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--stationary",
        default="true",
        choices=["true", "false"],
        help="shuffle each run (true) or respect arrival order (false)",
    )
    p.add_argument("--out", required=True, metavar="DIR", help="output directory")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    config = StreamConfig(
        data_path=args.data,
        synthetic=args.synthetic,
        label_column=args.label_col,
        positive_classes=(
            args.positive_classes.split(",") if args.positive_classes else None
        ),
        stationary=args.stationary == "true",
        batch_size=args.batch_size,
        ensemble_size=args.ensemble_size,
        weak_learner=args.weak_learner,
        l1=args.l1,
        score_kind=args.score,
        policy=args.policy,
        runs=args.runs,
        base_seed=args.seed,
        gamma=args.gamma,
        reward_timing=args.reward_timing,
        out_dir=args.out,
    )
    out = run_experiment(config)
    for label, summary in out["aggregate"]["policies"].items():
        print(
            f"{label}: final log-loss {summary['final_logloss_mean']:.4f} "
            f"± {summary['final_logloss_halfwidth']:.4f} "
            f"(Brier {summary['final_brier_mean']:.4f})"
        )
    print(f"results written to {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
