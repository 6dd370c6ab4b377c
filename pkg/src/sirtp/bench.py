"""Experiment harness comparing bounds and solver sizes over instance families.

Random families draw from :class:`random.Random` (MT19937), whose output for a
given integer seed is fixed across platforms and Python versions.
"""

from __future__ import annotations

import csv
import io
import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from . import oracle, solver
from .core import SirtpInstance

SUCCESSOR = "successor"
COPRIME_RANDOM = "coprime"
RATIO_BAND = "ratio-band"

DEFAULT_ORACLE_CAP = 36


@dataclass(frozen=True)
class Family:
    kind: str
    p_min: int = 2
    p_max: int = 100
    n: int = 0
    seed: int | None = None
    epsilon: float = 0.5

    @classmethod
    def successor(cls, p_min: int, p_max: int) -> Family:
        return cls(SUCCESSOR, p_min=p_min, p_max=p_max)

    @classmethod
    def coprime(cls, n: int, p_max: int, seed: int) -> Family:
        return cls(COPRIME_RANDOM, p_max=p_max, n=n, seed=seed)

    @classmethod
    def ratio_band(cls, epsilon: float, n: int, seed: int, p_max: int = 1000) -> Family:
        return cls(RATIO_BAND, p_max=p_max, n=n, seed=seed, epsilon=epsilon)


@dataclass(frozen=True)
class BenchRecord:
    p: int
    q: int
    lower_bound: int
    euclid_size: int
    square_transfer_size: int | None
    algsirtp_size: int
    trace_depth: int
    lemma_bound: float
    theorem_bound: float
    oracle_min: int | None
    oracle_exhausted: bool | None
    wall_us: dict[str, int] | None = None


COLUMNS = [
    "p",
    "q",
    "lower_bound",
    "euclid_size",
    "square_transfer_size",
    "algsirtp_size",
    "trace_depth",
    "lemma_bound",
    "theorem_bound",
    "oracle_min",
    "oracle_exhausted",
]
TIMING_COLUMNS = ["wall_us_euclid", "wall_us_algsirtp", "wall_us_oracle"]


def instances(family: Family) -> Iterator[SirtpInstance]:
    if family.kind == SUCCESSOR:
        for p in range(family.p_min, family.p_max + 1):
            yield SirtpInstance(p, p + 1)
        return
    if family.seed is None:
        raise ValueError(f"family {family.kind!r} needs a seed")
    rng = random.Random(family.seed)
    if family.kind == COPRIME_RANDOM:
        if family.p_max < 1:
            raise ValueError("p_max must be >= 1")
        made = 0
        while made < family.n:
            p, q = rng.randint(1, family.p_max), rng.randint(1, family.p_max)
            if math.gcd(p, q) != 1:
                continue
            made += 1
            yield SirtpInstance(min(p, q), max(p, q))
    elif family.kind == RATIO_BAND:
        eps = Fraction(str(family.epsilon))
        if eps <= 0:
            raise ValueError("epsilon must be positive")
        if family.n and family.p_max < 2:
            raise ValueError("p_max must be >= 2")
        made = 0
        while made < family.n:
            p = rng.randint(2, family.p_max)
            # largest integer strictly below (1 + eps) * p
            top = math.ceil((1 + eps) * p) - 1
            if top <= p:
                continue
            made += 1
            yield SirtpInstance(p, rng.randint(p + 1, top))
    else:
        raise ValueError(f"unknown family {family.kind!r}")


def lemma_bound(p: int, q: int, depth: int) -> float:
    p, q = min(p, q), max(p, q)
    return q // p + 8 * math.sqrt(p) + math.log2(p) + 4 * depth


def theorem_bound(p: int, q: int) -> float:
    p, q = min(p, q), max(p, q)
    return q // p + 8 * math.sqrt(p) + 10 * math.log2(p)


def _timed(fn, *args):
    t0 = time.perf_counter()
    out = fn(*args)
    return out, int((time.perf_counter() - t0) * 1e6)


def solve_record(inst: SirtpInstance, oracle_cap: int = DEFAULT_ORACLE_CAP,
                 oracle_budget_ms: int | None = None, timings: bool = False) -> BenchRecord:
    p, q = inst.normalized().p, inst.normalized().q
    eu, t_eu = _timed(solver.euclid_sirtp_size, inst)
    (alg, trace), t_alg = _timed(solver.algsirtp_size, inst)
    st = None
    if q == p + 1 and p >= 2:
        st = solver.square_transfer_pair(p).size
    omin = oexh = None
    t_or = 0
    if p * q <= oracle_cap:
        budget = oracle.Budget(max_area=oracle_cap, time_ms=oracle_budget_ms)
        res, t_or = _timed(oracle.min_sirtp, inst, budget)
        omin, oexh = res.min_size, res.exhausted
    return BenchRecord(
        p, q, solver.lower_bound(inst), eu, st, alg, trace.depth,
        lemma_bound(p, q, trace.depth), theorem_bound(p, q), omin, oexh,
        {"euclid": t_eu, "algsirtp": t_alg, "oracle": t_or} if timings else None,
    )


def run_family(family: Family, oracle_cap: int = DEFAULT_ORACLE_CAP,
               oracle_budget_ms: int | None = None, timings: bool = False) -> list[BenchRecord]:
    return [solve_record(inst, oracle_cap, oracle_budget_ms, timings) for inst in instances(family)]


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.4f}"
    return str(v)


def emit_csv(records: Iterable[BenchRecord], timings: bool = False) -> str:
    """CSV text with a header row. Timing columns come last and only on request."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS + (TIMING_COLUMNS if timings else []))
    for r in records:
        row = [_cell(getattr(r, c)) for c in COLUMNS]
        if timings:
            wall = r.wall_us or {}
            row += [_cell(wall.get(k)) for k in ("euclid", "algsirtp", "oracle")]
        w.writerow(row)
    return buf.getvalue()
