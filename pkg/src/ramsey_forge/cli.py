"""ramsey-forge command line: play, verify, solve, replay."""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from .engine import GameError, ReplayMismatch, Status, Transcript, replay
from .painters import PAINTERS, PainterAbort, make_painter
from .solver import SolverConfig, solve
from .verify import (MAX_EXHAUSTIVE_BOUND, InfeasibleBound, builder_spec, default_jobs,
                     emit_report, exhaustive_verify, play_checked, randomized_verify)

log = logging.getLogger("ramsey_forge")

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_BOUND = 2
EXIT_BRACKET = 3
EXIT_MISMATCH = 4
EXIT_USAGE = 64
EXIT_INFEASIBLE = 65
EXIT_BAD_INPUT = 66

DEFAULT_PAINTERS = ("all-blue", "red-greedy", "heuristic", "random")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit 2, which means "bound violated" here
        raise UsageError(message)


def _n_range(text: str) -> range:
    try:
        a, b = (int(x) for x in text.split(".."))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}") from None
    if a > b:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return range(a, b + 1)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ramsey-forge", description="Online size Ramsey games on paths.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    play = sub.add_parser("play", help="play one game")
    play.add_argument("--builder", choices=("pk", "p4"), required=True)
    play.add_argument("--painter", choices=PAINTERS, default="heuristic")
    play.add_argument("--n", type=int, required=True)
    play.add_argument("--k", type=int)
    play.add_argument("--seed", type=int, default=0)
    play.add_argument("--script", default="", help="0/1 string for --painter script")
    play.add_argument("--out", type=Path, help="write the transcript here")

    ver = sub.add_parser("verify", help="check a builder against its round bound")
    ver.add_argument("--builder", choices=("pk", "p4"), default="p4")
    ver.add_argument("--mode", choices=("exhaustive", "randomized"), required=True)
    ver.add_argument("--n-range", type=_n_range, required=True, metavar="A..B")
    ver.add_argument("--k", type=int, default=5, help="red path order for pk")
    ver.add_argument("--trials", type=int, default=100)
    ver.add_argument("--painters", default=",".join(DEFAULT_PAINTERS))
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--jobs", type=int, default=default_jobs())
    ver.add_argument("--format", choices=("json", "csv"), default="json")
    ver.add_argument("--out", type=Path, help="report file; witnesses go next to it")

    sol = sub.add_parser("solve", help="exact value by game-tree search")
    sol.add_argument("--k", type=int, required=True)
    sol.add_argument("--n", type=int, required=True)
    sol.add_argument("--budget", type=int, help="round horizon")
    sol.add_argument("--node-limit", type=int)
    sol.add_argument("--json", action="store_true", help="print the full result record")

    rep = sub.add_parser("replay", help="re-validate a transcript")
    rep.add_argument("--in", dest="infile", type=Path, required=True)
    return p


def _check_builder(builder: str, n: int, k: Optional[int]) -> int:
    if builder == "p4":
        if k not in (None, 4):
            raise UsageError("the p4 builder plays k = 4")
        if n < 10:
            raise UsageError("the p4 builder needs n >= 10")
        return 4
    k = 5 if k is None else k
    if k < 5:
        raise UsageError("the pk builder needs k >= 5")
    if n < 2:
        raise UsageError("n must be at least 2")
    return k


def cmd_play(args) -> int:
    k = _check_builder(args.builder, args.n, args.k)
    if args.painter == "script" and not args.script:
        raise UsageError("--painter script needs --script")
    try:
        painter = make_painter(args.painter, seed=args.seed, script=args.script)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    spec = builder_spec(args.builder, args.n, k)
    bound = spec.bound()
    res = play_checked(spec, painter, bound)
    if args.out is not None:
        res.transcript.write(args.out)
    print(f"outcome {res.status.value} in {res.rounds} rounds (bound {bound})")
    aborted = any(f.startswith(PainterAbort.__name__) for f in res.failures)
    for f in res.failures:
        print(f"failure: {f}", file=sys.stderr)
    if aborted or (res.failures and res.status is Status.IN_PROGRESS):
        return EXIT_ERROR
    if res.failures:
        return EXIT_BOUND
    return EXIT_OK


def cmd_verify(args) -> int:
    painters = [p.strip() for p in args.painters.split(",") if p.strip()]
    bad = set(painters) - {"all-blue", "red-greedy", "heuristic", "random"}
    if bad:
        raise UsageError(f"painters not usable in verify: {sorted(bad)}")
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    for n in args.n_range:
        _check_builder(args.builder, n, args.k if args.builder == "pk" else None)
    specs = [builder_spec(args.builder, n, args.k if args.builder == "pk" else None, checks=True)
             for n in args.n_range]
    if args.mode == "exhaustive":
        too_big = [s.n for s in specs if s.bound() > MAX_EXHAUSTIVE_BOUND]
        if too_big:
            print(f"exhaustive search infeasible: bound exceeds {MAX_EXHAUSTIVE_BOUND} "
                  f"for n = {too_big[0]}..{too_big[-1]}", file=sys.stderr)
            return EXIT_INFEASIBLE
    witness_dir = args.out.parent if args.out is not None else None
    reports = []
    for spec in specs:
        try:
            if args.mode == "exhaustive":
                rep = exhaustive_verify(spec, jobs=args.jobs, witness_dir=witness_dir)
            else:
                rep = randomized_verify(spec, painters, args.trials, seed=args.seed,
                                        witness_dir=witness_dir)
        except InfeasibleBound as exc:
            print(str(exc), file=sys.stderr)
            return EXIT_INFEASIBLE
        log.info("%s n=%d: %s (max %d / bound %d, %d games)", spec.name, spec.n, rep.status,
                 rep.max_rounds, rep.bound, rep.leaves)
        reports.append(rep)
    body = emit_report(reports, args.format)
    if args.out is not None:
        args.out.write_bytes(body)
    else:
        sys.stdout.write(body.decode("utf-8"))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_BOUND


def cmd_solve(args) -> int:
    try:
        cfg = SolverConfig(args.k, args.n, round_budget=args.budget)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    res = solve(cfg, node_limit=args.node_limit)
    if args.json:
        print(json.dumps(res.to_json()))
    else:
        print(res.value if res.exact else str(res.bracket))
    return EXIT_OK if res.exact else EXIT_BRACKET


def cmd_replay(args) -> int:
    try:
        text = args.infile.read_text(encoding="utf-8")
        transcript = Transcript.loads(text)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        print(f"malformed transcript {args.infile}: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    try:
        state = replay(transcript)
    except ReplayMismatch as exc:
        print(f"replay mismatch: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    for m in transcript.moves:
        flags = "".join((" forced" if m.forced else "", " reselect" if m.reselect else ""))
        print(f"{m.r:4d} ({m.u},{m.v}) {m.color.value}{flags} {m.note}".rstrip())
    print(f"outcome {state.status.value} in {state.round} rounds")
    return EXIT_OK


COMMANDS = {"play": cmd_play, "verify": cmd_verify, "solve": cmd_solve, "replay": cmd_replay}


def _setup_logging() -> None:
    level = os.environ.get("RAMSEY_FORGE_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s")


def main(argv: Optional[Sequence[str]] = None) -> int:
    _setup_logging()
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"ramsey-forge: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GameError as exc:
        print(f"ramsey-forge: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
