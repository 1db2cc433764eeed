"""Command-line entry point: ``rankfuse {aggregate,bench,crowd,metrics}``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .bench import ALL_ALGORITHMS, PROPOSED, SweepConfig, normalize_algorithm, run_algorithm, run_sweep
from .crowd import PipelineConfig, run_pipeline
from .errors import RankFuseError
from .io import (annotators_csv, auc_csv, config_line, crowd_report_text, curves_csv, format_rankings,
                 parse_rankings_file, read_gold, read_labels)
from .merge import MergeConfig, aggregate
from .metrics import (DistanceKind, footrule_distance, kendall_distance, normalized_similarity,
                      similarity_matrix, weighted_total_distance)

EXIT_IO = 3


def _existing_file(value: str) -> Path:
    p = Path(value)
    if not p.is_file():
        raise argparse.ArgumentTypeError(f"no such file: {value}")
    return p


def _merge_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--distance", default="footrule", choices=[k.value for k in DistanceKind])
    p.add_argument("--alpha", type=float, default=0.5, help="parent-weight share of the merge weight")
    p.add_argument("--tie-cap", type=int, default=720, help="max tie arrangements tried per merge")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rankfuse", description="Weighted rank aggregation toolkit")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("aggregate", help="aggregate a rankings file into one consensus ranking")
    p.add_argument("--rankings", required=True, type=_existing_file)
    p.add_argument("--weights", type=_existing_file, help="one non-negative weight per line")
    p.add_argument("--algorithm", default=PROPOSED, help=f"one of {', '.join(ALL_ALGORITHMS)}")
    p.add_argument("--uniform", action="store_true", help="ignore provided weights")
    p.add_argument("--output", type=Path, help="write the consensus ranking here")
    _merge_args(p)

    p = sub.add_parser("bench", help="Gaussian noise sweep with AUC summary")
    p.add_argument("--n-rankings", type=int, default=20)
    p.add_argument("--m-objects", type=int, default=30)
    p.add_argument("--iterations", type=int, default=50)
    p.add_argument("--sigma-step", type=float, default=0.02)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--algorithms", default=",".join(ALL_ALGORITHMS), help="comma-separated list")
    p.add_argument("--workers", type=int, help="process count (default: RANKFUSE_THREADS or CPU count)")
    p.add_argument("--output-dir", type=Path, required=True)
    _merge_args(p)

    p = sub.add_parser("crowd", help="annotator-ranked weighted label aggregation")
    p.add_argument("--labels", required=True, type=_existing_file, help="worker,item,label (.csv or .tsv)")
    p.add_argument("--gold", type=_existing_file, help="item,label")
    p.add_argument("--features", default="default",
                   help="'default', 'literal', or a comma list of accuracy,specificity,sensitivity,precision")
    p.add_argument("--tie-label", type=int, default=1, choices=[0, 1])
    p.add_argument("--undefined-value", type=float, default=0.0)
    p.add_argument("--uniform-weights", action="store_true", help="vote with equal worker weights")
    p.add_argument("--output-dir", type=Path)
    _merge_args(p)

    p = sub.add_parser("metrics", help="distances between rankings in a file")
    p.add_argument("--rankings", required=True, type=_existing_file)
    p.add_argument("--pair", type=int, nargs=2, metavar=("I", "J"), help="0-based line indices")
    p.add_argument("--distance", default="footrule", choices=[k.value for k in DistanceKind])
    return parser


def _merge_cfg(args, uniform: bool = False) -> MergeConfig:
    return MergeConfig(distance=args.distance, alpha=args.alpha, tie_enum_cap=args.tie_cap,
                       initial_weight_policy="uniform" if uniform else "provided")


def cmd_aggregate(args, out) -> int:
    inputs = parse_rankings_file(args.rankings, args.weights)
    cfg = _merge_cfg(args, args.uniform)
    algo = normalize_algorithm(args.algorithm)
    if args.uniform:
        inputs = inputs.with_weights([1.0] * len(inputs))
    settings = {"algorithm": algo, "distance": cfg.distance.value, "alpha": cfg.alpha,
                "tie_enum_cap": cfg.tie_enum_cap, "rankings": args.rankings,
                "weights": "uniform" if args.uniform or not args.weights else args.weights}
    if algo == PROPOSED:
        res = aggregate(inputs, cfg)
        consensus, objective = res.consensus, res.objective
        extra = [f"weight={res.weight!r}", f"merges={len(res.merge_trace)}"]
    else:
        consensus = run_algorithm(algo, inputs, cfg)
        objective = weighted_total_distance(consensus, inputs, cfg.distance)
        extra = []
    header = config_line("aggregate", settings)
    print(header, file=out)
    print(f"consensus={consensus}", file=out)
    print(f"objective={objective:g}", file=out)
    for line in extra:
        print(line, file=out)
    if args.output:
        args.output.write_text(format_rankings([consensus], header), encoding="utf-8")
    return 0


def cmd_bench(args, out) -> int:
    cfg = SweepConfig(
        n_rankings=args.n_rankings, m_objects=args.m_objects, iterations=args.iterations,
        sigma_step=args.sigma_step, seed=args.seed,
        algorithms=tuple(a for a in args.algorithms.split(",") if a.strip()),
        merge_cfg=_merge_cfg(args),
    )
    result = run_sweep(cfg, workers=args.workers)
    header = config_line("bench", cfg.describe())
    args.output_dir.mkdir(parents=True, exist_ok=True)
    (args.output_dir / "curves.csv").write_text(curves_csv(result, header), encoding="utf-8")
    (args.output_dir / "auc.csv").write_text(auc_csv(result, header), encoding="utf-8")
    out.write(auc_csv(result, header))
    return 0


def cmd_crowd(args, out) -> int:
    labels = read_labels(args.labels)
    gold = read_gold(args.gold) if args.gold else None
    cfg = PipelineConfig(features=args.features, tie_label=args.tie_label, merge_cfg=_merge_cfg(args),
                         undefined_feature_value=args.undefined_value, uniform_weights=args.uniform_weights)
    report = run_pipeline(labels, gold, cfg)
    header = config_line("crowd", {"labels": args.labels, "gold": args.gold or "none", **cfg.describe()})
    text = crowd_report_text(report, header)
    out.write(text)
    if args.output_dir:
        args.output_dir.mkdir(parents=True, exist_ok=True)
        (args.output_dir / "report.txt").write_text(text, encoding="utf-8")
        (args.output_dir / "annotators.csv").write_text(annotators_csv(report, header), encoding="utf-8")
        (args.output_dir / "predictions.csv").write_text(
            header + "\nitem,label\n" + "".join(f"{i},{v}\n" for i, v in report.predicted.items()),
            encoding="utf-8")
    return 0


def cmd_metrics(args, out) -> int:
    inputs = parse_rankings_file(args.rankings)
    kind = DistanceKind.parse(args.distance)
    print(config_line("metrics", {"rankings": args.rankings, "distance": kind.value}), file=out)
    if args.pair:
        i, j = args.pair
        if not (0 <= i < len(inputs) and 0 <= j < len(inputs)):
            raise RankFuseError(f"pair indices must lie in 0..{len(inputs) - 1}")
        a, b = inputs[i].ranking, inputs[j].ranking
        print(f"footrule={footrule_distance(a, b)}", file=out)
        print(f"kendall={kendall_distance(a, b)}", file=out)
        print(f"similarity={normalized_similarity(a, b, kind)!r}", file=out)
        return 0
    S = similarity_matrix(inputs, kind)
    for row in S:
        print(",".join(f"{v:.6f}" for v in row), file=out)
    return 0


_COMMANDS = {"aggregate": cmd_aggregate, "bench": cmd_bench, "crowd": cmd_crowd, "metrics": cmd_metrics}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args, out)
    except RankFuseError as exc:
        print(f"rankfuse: error: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        print(f"rankfuse: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"rankfuse: error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
