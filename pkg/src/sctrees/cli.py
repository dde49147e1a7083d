"""Command-line front door.

Exit codes: 0 success / yes-verdict, 1 negative verdict, 2 usage or input
error, 3 internal invariant failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import math
import os
import random
import sys
from pathlib import Path

from . import io as fmt
from .closure import ClosureInconsistencyError, CyclicMajorityError, triad_closure
from .elicit import (
    DomainViolationError,
    elicit_sequential,
    naive_elicit_all,
    query_budget,
)
from .gen import GenSpec, gen_sc_tree_profile, sample_instance, subsample_weakly_sc
from .oracle import CountingMemoOracle, SimulatedOracle
from .prefs import VoterSequence, dedupe
from .recognize import recognize_weakly_sc
from .sctree import NoTreeError, build_sc_tree, verify_single_crossing_tree

EXIT_OK = 0
EXIT_NO = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3

log = logging.getLogger("sctrees")


def _setup_logging() -> None:
    level = os.environ.get("CF_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING))


def _write_json(data: dict, path: str | None) -> None:
    text = json.dumps(data, indent=2)
    if path:
        Path(path).write_text(text + "\n")
    else:
        print(text)


def cmd_recognize(args: argparse.Namespace) -> int:
    profile, names = fmt.load_profile(args.infile)
    outcome = recognize_weakly_sc(profile)
    if outcome.verdict:
        _write_json(
            {
                "verdict": "yes",
                "closure": fmt.profile_to_json(outcome.closure, names),
                "tree": fmt.tree_to_json(outcome.tree, names),
            },
            args.out,
        )
        return EXIT_OK
    cert = outcome.certificate
    payload: dict = {"verdict": "no", "certificate": {"kind": cert.kind}}
    if cert.kind == "cyclic-majority":
        payload["certificate"]["witness"] = [
            [names[c] for c in p.order] for p in cert.witness_prefs
        ]
    else:
        payload["certificate"]["reason"] = cert.reason
    _write_json(payload, args.out)
    return EXIT_NO


def cmd_closure(args: argparse.Namespace) -> int:
    profile, names = fmt.load_profile(args.infile)
    distinct, _ = dedupe(profile)
    try:
        result = triad_closure(distinct)
    except CyclicMajorityError as e:
        _write_json(
            {
                "error": "cyclic-majority",
                "witness": [[names[c] for c in p.order] for p in e.prefs],
            },
            args.out,
        )
        return EXIT_NO
    _write_json(fmt.profile_to_json(result.closure, names), args.out)
    if args.witnesses:
        _write_json(
            {
                "added": [
                    {
                        "order": [names[c] for c in p.order],
                        "witness_indices": list(w),
                    }
                    for p, w in result.added
                ]
            },
            args.witnesses,
        )
    return EXIT_OK


def cmd_tree_build(args: argparse.Namespace) -> int:
    profile, names = fmt.load_profile(args.infile)
    distinct, _ = dedupe(profile)
    try:
        tree = build_sc_tree(distinct)
    except NoTreeError as e:
        _write_json({"error": "no-tree", "reason": e.reason}, args.out)
        return EXIT_NO
    _write_json(fmt.tree_to_json(tree, names), args.out)
    return EXIT_OK


def cmd_tree_verify(args: argparse.Namespace) -> int:
    profile, names = fmt.load_profile(args.profile)
    tree, _ = fmt.load_tree(args.tree, names)
    ok = verify_single_crossing_tree(profile, tree)
    _write_json({"single_crossing": ok}, args.out)
    return EXIT_OK if ok else EXIT_NO


def _arrival(profile, spec: str, seed: int) -> VoterSequence:
    ids = profile.voter_ids()
    if spec == "file-order":
        return VoterSequence(tuple(ids))
    if spec == "random":
        rng = random.Random(seed)
        shuffled = list(ids)
        rng.shuffle(shuffled)
        return VoterSequence(tuple(shuffled))
    order = json.loads(Path(spec).read_text())
    return VoterSequence(tuple(int(v) for v in order))


def cmd_elicit(args: argparse.Namespace, naive: bool = False) -> int:
    profile, names = fmt.load_profile(args.profile)
    arrival = _arrival(profile, args.order, args.seed)
    oracle = CountingMemoOracle(SimulatedOracle(profile))
    if naive:
        result = naive_elicit_all(oracle, profile.m, arrival)
    else:
        result = elicit_sequential(oracle, profile.m, arrival)
    baseline = CountingMemoOracle(SimulatedOracle(profile))
    naive_elicit_all(baseline, profile.m, arrival)
    exact = result.profile.preference_of
    mismatch = any(exact(v) != profile.preference_of(v) for v in profile.voter_ids())
    report = {
        "m": profile.m,
        "n": profile.n,
        "total_queries": result.total_queries,
        "fallback_count": result.fallback_count,
        "per_voter_queries": {str(k): v for k, v in result.per_voter_queries.items()},
        "budget": query_budget(profile.m, profile.n),
        "naive_queries": baseline.query_count,
        "exact": not mismatch,
        "profile": fmt.profile_to_json(result.profile, names),
    }
    _write_json(report, args.report)
    if mismatch:
        log.error("elicited profile differs from the ground truth")
        return EXIT_INTERNAL
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    writer = csv.writer(
        open(args.out, "w", newline="") if args.out else sys.stdout
    )
    writer.writerow(["m", "n", "total_queries", "bound_value", "naive_queries"])
    rng = random.Random(args.seed)
    for m in range(3, args.max_m + 1):
        for n in args.n_values:
            profile, _, _ = sample_instance(
                m, n, duplication=max(1, math.ceil(n / 4)), seed=rng.randrange(2**32)
            )
            arrival = _arrival(profile, "random", rng.randrange(2**32))
            oracle = CountingMemoOracle(SimulatedOracle(profile))
            result = elicit_sequential(oracle, m, arrival)
            naive = CountingMemoOracle(SimulatedOracle(profile))
            naive_elicit_all(naive, m, arrival)
            writer.writerow(
                [m, n, result.total_queries, query_budget(m, n), naive.query_count]
            )
    return EXIT_OK


def cmd_generate(args: argparse.Namespace) -> int:
    spec = GenSpec(
        m=args.m,
        node_count=args.nodes,
        style=args.style,
        duplication=args.duplication,
        subsample=args.subsample,
        seed=args.seed,
    )
    names = [f"c{i}" for i in range(args.m)]
    profile, tree = gen_sc_tree_profile(spec)
    sampled = subsample_weakly_sc(profile, tree, spec)
    _write_json(fmt.profile_to_json(sampled, names), args.out)
    if args.tree_out:
        _write_json(fmt.tree_to_json(tree, names), args.tree_out)
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(args.state_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sctrees",
        description="Recognize and elicit weakly single crossing profiles on trees",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("recognize", help="decide domain membership")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("closure", help="triad majority closure")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out")
    p.add_argument("--witnesses")
    p.set_defaults(func=cmd_closure)

    tree = sub.add_parser("tree", help="single crossing tree operations")
    tree_sub = tree.add_subparsers(dest="tree_command", required=True)
    p = tree_sub.add_parser("build")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_tree_build)
    p = tree_sub.add_parser("verify")
    p.add_argument("--profile", required=True)
    p.add_argument("--tree", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_tree_verify)

    for name, naive in (("elicit", False), ("naive-elicit", True)):
        p = sub.add_parser(name)
        p.add_argument("--profile", required=True)
        p.add_argument("--order", default="file-order",
                       help="file-order | random | path to a JSON id list")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--report")
        p.set_defaults(func=lambda a, _n=naive: cmd_elicit(a, naive=_n))

    p = sub.add_parser("bench", help="query-count sweep, CSV output")
    p.add_argument("--max-m", type=int, default=8)
    p.add_argument("--n-values", type=int, nargs="+", default=[10, 50, 100])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("generate")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--nodes", type=int, required=True)
    p.add_argument("--style", choices=["path", "star", "random"], default="random")
    p.add_argument("--duplication", type=int, default=1)
    p.add_argument("--subsample", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--tree-out")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("serve", help="run the interactive elicitation service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8731)
    p.add_argument("--state-dir")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    _setup_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except (fmt.FormatError, ValueError, OSError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (ClosureInconsistencyError, DomainViolationError, AssertionError) as e:
        print(f"internal invariant failure: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
