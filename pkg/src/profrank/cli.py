"""``profrank`` command line interface."""

import argparse
import csv
import io
import json
import logging
import os
import sys
import tempfile
from pathlib import Path

from . import __version__
from .baselines import cefr_baseline_correlation, load_cefr_profiles, votes_baseline
from .config import load_config, parse_types
from .evaluation import gold_vector, theta_sweep
from .graph import (
    DatasetError,
    incoming_vote_counts,
    load_dataset_dir,
    signal_count_matrices,
    write_dataset,
)
from .rank import proficiency_rank
from .search import DEFAULT_STAGES, grid_search
from .synth import GenParams, SynthesisError, generate_network, load_params

logger = logging.getLogger("profrank")


def _write_atomic(path, text):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _dump_json(obj):
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=False) + "\n"


def _csv_text(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _fmt(x):
    return "" if x is None else repr(float(x))


def _cmd_rank(args):
    data = load_dataset_dir(args.data)
    config = load_config(args.config)
    counts = signal_count_matrices(data)
    result = proficiency_rank(counts, config)
    if not result.converged:
        logger.warning("power iteration did not converge within max_iter")
    votes = incoming_vote_counts(counts, config)
    rows = [
        [uid, _fmt(result.pr[i]), _fmt(result.pr_plus[i]), _fmt(result.pr_minus[i]), int(votes[i])]
        for i, uid in enumerate(data.user_ids)
    ]
    header = ["user_id", "pr", "pr_plus", "pr_minus", "incoming_votes"]
    _write_atomic(args.out, _csv_text(header, rows))
    meta = {
        "command": "rank",
        "data": str(args.data),
        "config": config.to_dict(),
        "iterations": [result.plus_info.iterations, result.minus_info.iterations],
        "converged": result.converged,
        "n_users": data.n_users,
    }
    _write_atomic(f"{args.out}.meta.json", _dump_json(meta))
    return {"out": str(args.out), "n_users": data.n_users, "converged": result.converged}


def _cmd_sweep(args):
    data = load_dataset_dir(args.data)
    config = load_config(args.config)
    counts = signal_count_matrices(data)
    result = proficiency_rank(counts, config)
    report = theta_sweep(result.pr, incoming_vote_counts(counts, config), gold_vector(data))
    payload = {
        "command": "sweep",
        "data": str(args.data),
        "config": config.to_dict(),
        **report.to_dict(),
    }
    _write_atomic(args.out, _dump_json(payload))
    if args.plot_data:
        rows = [
            [r.theta, r.n_users, _fmt(r.result.r), _fmt(r.result.p), str(r.significant).lower()]
            for r in report.records
        ]
        header = ["theta", "n_users", "r", "p", "significant"]
        _write_atomic(args.plot_data, _csv_text(header, rows))
    return {"out": str(args.out), "objective": report.objective, "records": len(report.records)}


def _cmd_search(args):
    data = load_dataset_dir(args.data)
    types = parse_types(args.types)
    stages = tuple(float(s) for s in args.stages.split(","))
    result = grid_search(data, types, stages=stages, n_jobs=args.jobs)
    logger.info("evaluated %d grid points", len(result.trace))
    payload = {
        "command": "search",
        "data": str(args.data),
        "types": list(types),
        "stages": list(stages),
        **result.to_dict(),
    }
    _write_atomic(args.out, _dump_json(payload))
    return {
        "out": str(args.out),
        "objective": result.best_objective,
        "evaluated": len(result.trace),
    }


def _cmd_baseline_votes(args):
    data = load_dataset_dir(args.data)
    config = load_config(args.config)
    result = votes_baseline(data, config)
    payload = {
        "command": "baseline votes",
        "data": str(args.data),
        "config": config.to_dict(),
        **result.to_dict(),
    }
    if args.out:
        _write_atomic(args.out, _dump_json(payload))
    return {"r": result.r, "p": result.p, "n": result.n}


def _cmd_baseline_cefr(args):
    data = load_dataset_dir(args.data)
    profiles = load_cefr_profiles(args.profiles)
    report = cefr_baseline_correlation(data, profiles)
    payload = {
        "command": "baseline cefr",
        "data": str(args.data),
        "profiles": str(args.profiles),
        "profile_report": profiles.report(),
        **report.to_dict(),
    }
    _write_atomic(args.out, _dump_json(payload))
    return {"out": str(args.out), "objective": report.objective}


def _cmd_signals(args):
    data = load_dataset_dir(args.data)
    counts = signal_count_matrices(data)
    users = []
    for i, uid in enumerate(data.user_ids):
        users.append(
            {
                "user_id": uid,
                "in": {t: int(m[i, :].sum()) for t, m in counts.items()},
                "out": {t: int(m[:, i].sum()) for t, m in counts.items()},
            }
        )
    totals = {t: int(m.sum()) for t, m in counts.items()}
    payload = {"command": "signals", "data": str(args.data), "totals": totals, "users": users}
    _write_atomic(args.out, _dump_json(payload))
    return {"out": str(args.out), "totals": totals}


def _cmd_simulate(args):
    params = load_params(args.params) if args.params else GenParams()
    if args.seed is not None:
        params = GenParams.from_dict({**params.to_dict(), "seed": args.seed})
    data, _ = generate_network(params)
    out = Path(args.out_dir)
    with tempfile.TemporaryDirectory() as tmp:
        write_dataset(data, tmp)
        for name in ("users.csv", "answers.csv", "votes.csv"):
            _write_atomic(out / name, (Path(tmp) / name).read_text(encoding="utf-8"))
    _write_atomic(out / "params.json", _dump_json(params.to_dict()))
    return {
        "out_dir": str(out),
        "n_users": data.n_users,
        "n_answers": len(data.answers),
        "n_votes": len(data.votes),
    }


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--quiet", action="store_true", help="suppress the JSON summary line")
    common.add_argument("--seed", type=int, default=None, help="random seed (default 0)")
    common.add_argument("--jobs", type=int, default=None, help="parallel workers for search")

    parser = argparse.ArgumentParser(
        prog="profrank", description="Signed vote-graph ranking of user proficiency."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    p = sub.add_parser("rank", parents=[common], help="rank users under one configuration")
    p.add_argument("--data", required=True)
    p.add_argument("--config", required=True, help="preset name (conf1..conf7) or JSON file")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_rank)

    p = sub.add_parser("sweep", parents=[common], help="theta sweep against self-reported levels")
    p.add_argument("--data", required=True)
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--plot-data", default=None, help="also write theta,n_users,r,p,significant CSV")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("search", parents=[common], help="coarse-to-fine parameter search")
    p.add_argument("--data", required=True)
    p.add_argument("--types", required=True, help="e.g. exp+,exp-,iav-,iov-")
    p.add_argument("--out", required=True)
    p.add_argument("--stages", default=",".join(str(s) for s in DEFAULT_STAGES))
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("baseline", help="comparison baselines")
    bsub = p.add_subparsers(dest="baseline", metavar="kind")
    bsub.required = True
    b = bsub.add_parser("votes", parents=[common], help="incoming vote count baseline")
    b.add_argument("--data", required=True)
    b.add_argument("--config", required=True)
    b.add_argument("--out", default=None)
    b.set_defaults(func=_cmd_baseline_votes)
    b = bsub.add_parser("cefr", parents=[common], help="CEFR vocabulary profile baseline")
    b.add_argument("--data", required=True)
    b.add_argument("--profiles", required=True, help="directory with A1.txt .. C2.txt")
    b.add_argument("--out", required=True)
    b.set_defaults(func=_cmd_baseline_cefr)

    p = sub.add_parser("signals", parents=[common], help="dump signal totals and degrees")
    p.add_argument("--data", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_signals)

    p = sub.add_parser("simulate", parents=[common], help="write a synthetic dataset")
    p.add_argument("--params", default=None, help="JSON file with generator parameters")
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=_cmd_simulate)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING if args.quiet else logging.INFO,
        format="%(message)s",
        stream=sys.stderr,
    )
    try:
        summary = args.func(args)
    except (DatasetError, SynthesisError, ValueError, OSError) as exc:
        print(f"profrank: error: {exc}", file=sys.stderr)
        return 1
    if not args.quiet:
        print(json.dumps({"command": args.command, **summary}, sort_keys=True, allow_nan=False))
    return 0


if __name__ == "__main__":
    sys.exit(main())
