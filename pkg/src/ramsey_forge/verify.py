"""Exhaustive and randomized verification of Builder strategies against round bounds."""
from __future__ import annotations

import csv
import io
import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Iterator, Optional, Sequence

from .builders import p4 as p4mod
from .builders import pk as pkmod
from .engine import GameConfig, GameError, GameState, Status, Transcript, run_game
from .painters import ChoicePainter, make_painter

log = logging.getLogger(__name__)

MAX_EXHAUSTIVE_BOUND = 30
CSV_FIELDS = ("builder", "k", "n", "mode", "max_rounds", "bound", "leaves", "status")


class InfeasibleBound(ValueError):
    pass


@dataclass(frozen=True)
class BuilderSpec:
    """Everything needed to start a fresh game for one builder: picklable by name."""

    name: str
    k: int
    n: int
    checks: bool = True

    def make(self):
        if self.name == "p4":
            return p4mod.builder_p4(self.n, self.checks)
        if self.name == "pk":
            return pkmod.builder_pk(self.k, self.n, self.checks)
        raise ValueError(f"unknown builder {self.name!r}")

    def config(self) -> GameConfig:
        if self.name == "p4":
            return GameConfig(4, self.n)
        # stage 3 leaves blue trees hanging off the red picket, so blue components
        # can span every stage-1 vertex
        guard = max(64, 3 * pkmod.num_p3(self.n, self.k) + 2 * self.k)
        return GameConfig(self.k, self.n, allow_reselect=True, component_guard=guard)

    def bound(self) -> int:
        if self.name == "p4":
            return p4mod.round_bound(self.n)
        return pkmod.round_bound(self.n, self.k)


def builder_spec(name: str, n: int, k: Optional[int] = None, checks: bool = True) -> BuilderSpec:
    if name == "p4":
        if k not in (None, 4):
            raise ValueError("the p4 builder plays k = 4")
        return BuilderSpec("p4", 4, n, checks)
    if k is None:
        raise ValueError("the pk builder needs k")
    return BuilderSpec(name, k, n, checks)


@dataclass
class GameResult:
    status: Status
    rounds: int
    failures: list[str]
    transcript: Transcript
    choices: int = 0
    checks_run: int = 0


def play_checked(spec: BuilderSpec, painter, bound: int) -> GameResult:
    """One game with every end-of-game and per-stage check collected as failure strings."""
    builder = spec.make()
    strat = builder.strategy
    config = spec.config()
    failures: list[str] = []
    try:
        transcript, state = run_game(builder, painter, config)
    except (GameError, AssertionError) as exc:
        state = strat.state or GameState(config)
        transcript = state.transcript()
        failures.append(f"{type(exc).__name__}: {exc}")
    if not failures:
        if state.status is not Status.BLUE_WIN:
            failures.append(f"outcome {state.status.value}")
        if state.round > bound:
            failures.append(f"{state.round} rounds exceed bound {bound}")
        if spec.name == "p4":
            failures += strat.final_check(state)
        else:
            failures += strat.stage_violations()
            if spec.checks and strat.stage1_checks != strat.stage_rounds["one"]:
                failures.append(f"stage-1 invariant checked {strat.stage1_checks} times "
                                f"in {strat.stage_rounds['one']} rounds")
            if state.round > pkmod.internal_bound(spec.n, spec.k):
                failures.append(f"{state.round} rounds exceed 5T+7k-6")
    return GameResult(state.status, state.round, failures, transcript,
                      getattr(painter, "choices", 0), strat.checks_run)


@dataclass
class VerifyReport:
    builder: str
    k: int
    n: int
    mode: str
    bound: int
    max_rounds: int = 0
    leaves: int = 0
    trials: Optional[int] = None
    seed: Optional[int] = None
    invariant_failures: list[str] = field(default_factory=list)
    witness: Optional[str] = None
    status: str = "pass"
    checks_run: int = 0

    def finalize(self) -> "VerifyReport":
        ok = self.max_rounds <= self.bound and not self.invariant_failures
        self.status = "pass" if ok else "fail"
        return self

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        return asdict(self)


def emit_report(reports: VerifyReport | Sequence[VerifyReport], fmt: str = "json") -> bytes:
    if isinstance(reports, VerifyReport):
        reports = [reports]
    if fmt == "json":
        body = [r.to_json() for r in reports]
        text = json.dumps(body[0] if len(body) == 1 else body, indent=2) + "\n"
        return text.encode("utf-8")
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_FIELDS)
        for r in reports:
            w.writerow([r.builder, r.k, r.n, r.mode, r.max_rounds, r.bound, r.leaves, r.status])
        return buf.getvalue().encode("utf-8")
    raise ValueError(f"unknown report format {fmt!r}")


# -- exhaustive ---------------------------------------------------------------------


def iter_leaves(spec: BuilderSpec, bound: int, prefix: Sequence[int] = ()) -> Iterator[GameResult]:
    """Every game whose Painter choice string starts with ``prefix``.

    Painter choice points are the rounds where both colours are legal; each
    leaf is one complete game replayed from scratch with a fresh Builder.
    A game that ends before reading the whole prefix is owned by the prefix
    whose unread tail is all zeros, so the 2^d prefixes of length d partition
    the leaves.
    """
    floor = len(prefix)
    bits = list(prefix)
    while True:
        painter = ChoicePainter(bits)
        res = play_checked(spec, painter, bound)
        used = painter.choices
        if used < floor:
            if not any(prefix[used:]):
                yield res
            return
        yield res
        actual = (bits + [0] * used)[:used]
        while len(actual) > floor and actual[-1] == 1:
            actual.pop()
        if len(actual) <= floor:
            return
        actual[-1] = 1
        bits = actual


@dataclass
class _Partial:
    max_rounds: int = 0
    leaves: int = 0
    failures: list[str] = field(default_factory=list)
    witness: Optional[dict] = None
    checks_run: int = 0


def _explore(args) -> _Partial:
    spec, bound, prefix = args
    out = _Partial()
    for res in iter_leaves(spec, bound, prefix):
        out.leaves += 1
        out.max_rounds = max(out.max_rounds, res.rounds)
        out.checks_run += res.checks_run
        if res.rounds > bound and not res.failures:
            res.failures.append(f"{res.rounds} rounds exceed bound {bound}")
        if res.failures:
            out.failures += [f"leaf {out.leaves} (prefix {''.join(map(str, prefix))}): {f}"
                             for f in res.failures]
            if out.witness is None:
                out.witness = res.transcript.to_json()
    return out


def _write_witness(witness: Optional[dict], witness_dir, spec: BuilderSpec, mode: str) -> Optional[str]:
    if witness is None or witness_dir is None:
        return None
    d = Path(witness_dir)
    d.mkdir(parents=True, exist_ok=True)
    path = d / f"witness-{spec.name}-k{spec.k}-n{spec.n}-{mode}.json"
    Transcript.from_json(witness).write(path)
    return str(path)


def default_jobs() -> int:
    try:
        return len(os.sched_getaffinity(0))
    except AttributeError:  # pragma: no cover - non-Linux
        return os.cpu_count() or 1


def exhaustive_verify(spec: BuilderSpec, bound: Optional[int] = None, jobs: int = 1,
                      witness_dir=None, max_bound: int = MAX_EXHAUSTIVE_BOUND,
                      split_depth: Optional[int] = None) -> VerifyReport:
    bound = spec.bound() if bound is None else bound
    if bound > max_bound:
        raise InfeasibleBound(f"bound {bound} exceeds the exhaustive guard {max_bound}")
    if split_depth is None:
        split_depth = 0 if jobs <= 1 else max(1, (4 * jobs - 1).bit_length())
    prefixes = [tuple((i >> (split_depth - 1 - j)) & 1 for j in range(split_depth))
                for i in range(2 ** split_depth)]
    tasks = [(spec, bound, p) for p in prefixes]
    if jobs <= 1:
        parts = [_explore(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_explore, tasks))
    rep = VerifyReport(spec.name, spec.k, spec.n, "exhaustive", bound)
    for p in parts:
        rep.leaves += p.leaves
        rep.checks_run += p.checks_run
        rep.max_rounds = max(rep.max_rounds, p.max_rounds)
        rep.invariant_failures += p.failures
    witness = next((p.witness for p in parts if p.witness is not None), None)
    rep.witness = _write_witness(witness, witness_dir, spec, "exhaustive")
    return rep.finalize()


# -- randomized -----------------------------------------------------------------------

DETERMINISTIC_PAINTERS = ("all-blue", "red-greedy", "heuristic")


def randomized_verify(spec: BuilderSpec, painters: Iterable[str], trials: int,
                      bound: Optional[int] = None, seed: int = 0,
                      witness_dir=None, on_game: Optional[Callable[[GameResult], None]] = None
                      ) -> VerifyReport:
    """``trials`` seeded games for the random painter; one game per deterministic painter."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    bound = spec.bound() if bound is None else bound
    rep = VerifyReport(spec.name, spec.k, spec.n, "randomized", bound, trials=trials, seed=seed)
    witness = None
    for kind in painters:
        runs = trials if kind == "random" else 1
        for i in range(runs):
            painter = make_painter(kind, seed=seed + i)
            res = play_checked(spec, painter, bound)
            rep.leaves += 1
            rep.max_rounds = max(rep.max_rounds, res.rounds)
            rep.checks_run += res.checks_run
            if on_game is not None:
                on_game(res)
            if res.failures:
                tag = f"{kind}" + (f"(seed={seed + i})" if kind == "random" else "")
                rep.invariant_failures += [f"{tag}: {f}" for f in res.failures]
                witness = witness or res.transcript.to_json()
    rep.witness = _write_witness(witness, witness_dir, spec, "randomized")
    return rep.finalize()
