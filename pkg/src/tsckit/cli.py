"""The ``bench`` command line interface: run, compare, distance."""

import argparse
import sys
import time
from pathlib import Path

import numpy as np

from .datasets import parse_ts_file, stratified_resample
from .distances import DistanceSpec, distance
from .exceptions import DatasetNotFound, TsckitError
from .metrics import compute_metrics
from .registry import build_classifier
from .results import ClassifierResults, read_results, results_path
from .stats import average_ranks_and_cliques

METRIC_KEYS = {"acc": "accuracy", "balacc": "balanced_accuracy", "auc": "auc", "nll": "nll"}


def _parse_params(text):
    """Parse "k=v,k=v" into a parameter dict (delta coerced to int)."""
    params = {}
    if not text:
        return params
    for chunk in text.split(","):
        key, _, value = chunk.partition("=")
        if not _:
            raise ValueError(f"bad parameter {chunk!r}, expected key=value")
        key = key.strip()
        params[key] = int(value) if key == "delta" else float(value)
    return params


def _load_problem(data_dir, problem):
    problem_dir = Path(data_dir) / problem
    train_path = problem_dir / f"{problem}_TRAIN.ts"
    test_path = problem_dir / f"{problem}_TEST.ts"
    if not train_path.exists() or not test_path.exists():
        raise DatasetNotFound(f"no {problem}_TRAIN.ts/_TEST.ts under {problem_dir}")
    return (
        parse_ts_file(train_path.read_text(encoding="utf-8")),
        parse_ts_file(test_path.read_text(encoding="utf-8")),
    )


def _cmd_run(args):
    train, test = _load_problem(args.data_dir, args.problem)
    pair = stratified_resample(train, test, args.resample, args.seed)
    options = {
        "threads": args.threads,
        "params": _parse_params(args.param),
    }
    for key in (
        "n_trees",
        "n_stump_evaluations",
        "n_parameter_samples",
        "max_ensemble_size",
        "contract_minutes",
        "max_candidates",
        "forest_trees",
        "proportion_of_param_options",
        "proportion_of_train_in_param_finding",
    ):
        value = getattr(args, key)
        if value is not None:
            options[key] = value
    runner = build_classifier(args.classifier, seed=args.seed, options=options)

    t0 = time.monotonic_ns()
    model = runner.fit(pair.train)
    build_ns = time.monotonic_ns() - t0
    t0 = time.monotonic_ns()
    probabilities = runner.predict_proba(model, pair.test)
    test_ns = time.monotonic_ns() - t0

    results = ClassifierResults.from_probabilities(
        args.problem,
        args.classifier,
        args.resample,
        runner.parameter_text,
        pair.test.label_indices,
        probabilities,
        build_ns,
        test_ns,
    )
    out_path = results.write(
        results_path(args.out, args.classifier, args.problem, args.resample)
    )
    print(
        f"RESULT problem={args.problem} classifier={args.classifier} "
        f"resample={args.resample} accuracy={results.accuracy:.6f} "
        f"build_ns={build_ns} test_ns={test_ns} out={out_path}"
    )
    return 0


def _cmd_distance(args):
    dataset = parse_ts_file(Path(args.file).read_text(encoding="utf-8"))
    spec = DistanceSpec(args.measure, _parse_params(args.params))
    value = distance(
        dataset.series[args.i].values, dataset.series[args.j].values, spec
    )
    print(value)
    return 0


def _discover(results_dir, classifiers):
    """problems x classifiers -> {problem: {classifier: {resample: path}}}."""
    table = {}
    for name in classifiers:
        base = Path(results_dir) / name
        if not base.is_dir():
            raise DatasetNotFound(f"no results directory for classifier {name!r}")
        for problem_dir in sorted(p for p in base.iterdir() if p.is_dir()):
            for f in sorted(problem_dir.glob("testResample*.csv")):
                rid = int(f.stem.replace("testResample", ""))
                table.setdefault(problem_dir.name, {}).setdefault(name, {})[rid] = f
    return table


def _cmd_compare(args):
    classifiers = [c.strip() for c in args.classifiers.split(",") if c.strip()]
    if len(classifiers) < 2:
        raise ValueError("compare needs at least two classifiers")
    metric_key = METRIC_KEYS[args.metric]
    table = _discover(args.results_dir, classifiers)

    problems = []
    rows = []
    for problem in sorted(table):
        per_clf = table[problem]
        if set(per_clf) != set(classifiers):
            continue  # only problems every classifier has run
        common = set.intersection(*(set(per_clf[c]) for c in classifiers))
        if not common:
            continue
        row = []
        for name in classifiers:
            values = []
            for rid in sorted(common):
                results = read_results(per_clf[name][rid])
                n_classes = results.probabilities.shape[1]
                values.append(getattr(compute_metrics(results, n_classes), metric_key))
            row.append(float(np.mean(values)))
        problems.append(problem)
        rows.append(row)
    if len(rows) < 5:
        raise TsckitError(
            f"need >= 5 datasets common to all classifiers, found {len(rows)}"
        )

    matrix = np.array(rows)
    summary = average_ranks_and_cliques(
        matrix,
        args.alpha,
        classifier_names=classifiers,
        dataset_names=problems,
        higher_is_better=(args.metric != "nll"),
    )

    lines = [f"# metric matrix,metric={args.metric},alpha={args.alpha}"]
    lines.append("dataset," + ",".join(classifiers))
    for problem, row in zip(problems, matrix):
        lines.append(problem + "," + ",".join(f"{v:.6f}" for v in row))
    lines.append("# average ranks")
    lines.append("classifier,average_rank")
    for name, rank in zip(classifiers, summary.average_ranks):
        lines.append(f"{name},{rank:.6f}")
    lines.append("# pairwise")
    lines.append("classifier_a,classifier_b,p_value,holm_adjusted,reject,wins,draws,losses")
    for (i, j), p in sorted(summary.pairwise_p.items()):
        w, d, l = summary.wdl[(i, j)]
        lines.append(
            f"{classifiers[i]},{classifiers[j]},{p:.6g},"
            f"{summary.pairwise_adjusted[(i, j)]:.6g},"
            f"{int(summary.pairwise_reject[(i, j)])},{w},{d},{l}"
        )
    lines.append("# cliques")
    lines.append("clique,members")
    for idx, clique in enumerate(summary.cliques):
        lines.append(f"{idx}," + ";".join(classifiers[i] for i in clique))
    lines.append("# scatter")
    lines.append("classifier_a,classifier_b,dataset,x,y")
    for (i, j) in sorted(summary.pairwise_p):
        for d_idx, problem in enumerate(problems):
            lines.append(
                f"{classifiers[i]},{classifiers[j]},{problem},"
                f"{matrix[d_idx, i]:.6f},{matrix[d_idx, j]:.6f}"
            )
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text("\n".join(lines) + "\n", encoding="utf-8")

    ranked = np.argsort(summary.average_ranks)
    print(f"COMPARE datasets={len(problems)} metric={args.metric} out={out}")
    for i in ranked:
        print(f"  rank {summary.average_ranks[i]:.3f}  {classifiers[i]}")
    return 0


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="bench", description="Time series classification benchmark harness"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="fit + predict one classifier on one resample")
    run.add_argument("--classifier", required=True)
    run.add_argument("--data-dir", required=True)
    run.add_argument("--problem", required=True)
    run.add_argument("--resample", type=int, default=0)
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--out", required=True)
    run.add_argument("--threads", type=int, default=1)
    run.add_argument("--n-trees", dest="n_trees", type=int, default=None)
    run.add_argument(
        "--n-stump-evaluations", dest="n_stump_evaluations", type=int, default=None
    )
    run.add_argument(
        "--n-parameter-samples", dest="n_parameter_samples", type=int, default=None
    )
    run.add_argument(
        "--max-ensemble-size", dest="max_ensemble_size", type=int, default=None
    )
    run.add_argument(
        "--contract-minutes", dest="contract_minutes", type=float, default=None
    )
    run.add_argument("--max-candidates", dest="max_candidates", type=int, default=None)
    run.add_argument("--forest-trees", dest="forest_trees", type=int, default=None)
    run.add_argument(
        "--proportion-of-param-options",
        dest="proportion_of_param_options",
        type=float,
        default=None,
    )
    run.add_argument(
        "--proportion-of-train-in-param-finding",
        dest="proportion_of_train_in_param_finding",
        type=float,
        default=None,
    )
    run.add_argument("--param", default="", help="distance parameters, e.g. w=0.1")
    run.set_defaults(func=_cmd_run)

    compare = sub.add_parser("compare", help="rank classifiers over shared results")
    compare.add_argument("--results-dir", required=True)
    compare.add_argument("--classifiers", required=True, help="comma-separated names")
    compare.add_argument("--metric", choices=sorted(METRIC_KEYS), default="acc")
    compare.add_argument("--alpha", type=float, default=0.05)
    compare.add_argument("--out", required=True)
    compare.set_defaults(func=_cmd_compare)

    dist = sub.add_parser("distance", help="distance between two cases of a .ts file")
    dist.add_argument("--measure", required=True)
    dist.add_argument("--params", default="")
    dist.add_argument("--file", required=True)
    dist.add_argument("--i", type=int, required=True)
    dist.add_argument("--j", type=int, required=True)
    dist.set_defaults(func=_cmd_distance)
    return parser


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (TsckitError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
