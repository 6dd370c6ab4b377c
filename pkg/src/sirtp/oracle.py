"""Exhaustive integer-grid minimum for small SIRTP instances.

Tilings are built on a bitmask grid. Cells are numbered column-major
(``x * H + y``), so the lowest empty bit is always the leftmost-lowest empty
cell. Any rectangle covering that cell must have it as its bottom-left
corner, which makes every tiling reachable along exactly one path.
"""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .analysis import Mode, check_isomorphism, check_tiling
from .core import Dims, Partition, PartitionPair, SirtpInstance, ceil_div
from . import solver

DEFAULT_MAX_AREA = 36
DEFAULT_MULTISET_MAX_AREA = 64
DEFAULT_MEMO_LIMIT = 200_000


class BudgetError(ValueError):
    """The instance is beyond the configured search caps."""


class _OutOfBudget(Exception):
    pass


@dataclass(frozen=True)
class Budget:
    max_area: int = DEFAULT_MAX_AREA
    time_ms: int | None = None
    max_nodes: int | None = None
    memo_limit: int = DEFAULT_MEMO_LIMIT


@dataclass(frozen=True)
class OracleResult:
    min_size: int
    witness: PartitionPair
    exhausted: bool
    budget: Budget = field(default_factory=Budget)
    nodes: int = 0

    label = "integer-grid minimum"


class _Grid:
    def __init__(self, parent: Dims, max_w: int | None = None, max_h: int | None = None):
        self.W, self.H = parent.width, parent.height
        self.full = (1 << (self.W * self.H)) - 1
        self.max_w = min(self.W, max_w or self.W)
        self.max_h = min(self.H, max_h or self.H)
        self._masks: dict[tuple[int, int, int, int], int] = {}

    def cell(self, bit: int) -> tuple[int, int]:
        return divmod(bit, self.H)

    def rect_mask(self, x: int, y: int, w: int, h: int) -> int:
        key = (x, y, w, h)
        m = self._masks.get(key)
        if m is None:
            col = ((1 << h) - 1) << y
            m = 0
            for i in range(w):
                m |= col << ((x + i) * self.H)
            self._masks[key] = m
        return m

    def candidates(self, mask: int):
        """Rectangles anchored at the leftmost-lowest empty cell of ``mask``."""
        free = ~mask & self.full
        bit = (free & -free).bit_length() - 1
        x, y = self.cell(bit)
        for h in range(1, min(self.max_h, self.H - y) + 1):
            if mask & self.rect_mask(x, y + h - 1, 1, 1):
                break
            for w in range(1, min(self.max_w, self.W - x) + 1):
                rm = self.rect_mask(x, y, w, h)
                if mask & rm:
                    break
                yield x, y, w, h, rm


class _Clock:
    def __init__(self, budget: Budget):
        self.deadline = None if budget.time_ms is None else time.monotonic() + budget.time_ms / 1000
        self.max_nodes = budget.max_nodes
        self.nodes = 0

    def tick(self) -> None:
        self.nodes += 1
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            raise _OutOfBudget
        if self.deadline is not None and self.nodes % 1024 == 0 and time.monotonic() > self.deadline:
            raise _OutOfBudget


def _tilings(grid: _Grid, k_min: int, k_max: int, clock: _Clock | None = None):
    """Placement lists of every tiling with k_min..k_max modules."""
    max_piece = grid.max_w * grid.max_h
    placed: list[tuple[int, int, int, int]] = []

    def rec(mask: int):
        if clock is not None:
            clock.tick()
        if mask == grid.full:
            if len(placed) >= k_min:
                yield list(placed)
            return
        left = k_max - len(placed)
        remaining = grid.full.bit_count() - mask.bit_count()
        if left <= 0 or ceil_div(remaining, max_piece) > left:
            return
        for x, y, w, h, rm in grid.candidates(mask):
            placed.append((x, y, w, h))
            yield from rec(mask | rm)
            placed.pop()

    yield from rec(0)


def _check_area(parent: Dims, cap: int) -> None:
    if parent.area > cap:
        raise BudgetError(f"parent {parent} has area {parent.area}, above the cap of {cap}")


def enumerate_tilings(parent: Dims, max_k: int, max_area: int = DEFAULT_MAX_AREA) -> Iterator[Partition]:
    """Every integer tiling of ``parent`` with at most ``max_k`` modules, once each."""
    _check_area(parent, max_area)
    if max_k < 1:
        return
    for rects in _tilings(_Grid(parent), 1, max_k):
        yield Partition.from_tuples(parent, rects)


def _find_tiling(parent: Dims, dims: Iterable[Dims], clock: _Clock | None = None,
                 memo_limit: int = DEFAULT_MEMO_LIMIT):
    """Placements of exactly the given oriented pieces tiling ``parent``, or None."""
    counts = Counter((d.width, d.height) for d in dims)
    if sum(w * h * n for (w, h), n in counts.items()) != parent.area:
        raise ValueError("piece areas do not sum to the parent area")
    kinds = sorted(counts)
    if any(w > parent.width or h > parent.height for w, h in kinds):
        return None
    grid = _Grid(parent)
    left = [counts[k] for k in kinds]
    failed: set[tuple[int, tuple[int, ...]]] = set()
    placed: list[tuple[int, int, int, int]] = []

    def rec(mask: int) -> bool:
        if clock is not None:
            clock.tick()
        if mask == grid.full:
            return True
        key = (mask, tuple(left))
        if key in failed:
            return False
        free = ~mask & grid.full
        x, y = grid.cell((free & -free).bit_length() - 1)
        for i, (w, h) in enumerate(kinds):
            if not left[i] or x + w > grid.W or y + h > grid.H:
                continue
            rm = grid.rect_mask(x, y, w, h)
            if mask & rm:
                continue
            left[i] -= 1
            placed.append((x, y, w, h))
            if rec(mask | rm):
                return True
            placed.pop()
            left[i] += 1
        if len(failed) < memo_limit:
            failed.add(key)
        return False

    return list(placed) if rec(0) else None


def tiles_with_multiset(parent: Dims, dims: Iterable[Dims],
                        max_area: int = DEFAULT_MULTISET_MAX_AREA) -> bool:
    """Whether ``parent`` can be tiled by exactly these pieces, without rotation."""
    _check_area(parent, max_area)
    return _find_tiling(parent, list(dims)) is not None


def _pair_from(parent_a: Dims, rects_a, parent_b: Dims, rects_b) -> PartitionPair:
    pool: dict[tuple[int, int], list[int]] = {}
    for j, (_, _, w, h) in enumerate(rects_b):
        pool.setdefault((w, h), []).append(j)
    pairing = [pool[(w, h)].pop(0) for (_, _, w, h) in rects_a]
    return PartitionPair(
        Partition.from_tuples(parent_a, rects_a),
        Partition.from_tuples(parent_b, rects_b),
        tuple(pairing),
    )


def _verified(pair: PartitionPair) -> PartitionPair:
    for rep in (check_tiling(pair.a), check_tiling(pair.b), check_isomorphism(pair, Mode.STRICT)):
        if not rep.ok:
            raise AssertionError(f"oracle witness failed verification: {rep.violations[0]}")
    return pair


def _best_heuristic(norm: SirtpInstance) -> PartitionPair:
    cands = [solver.algsirtp_partition(norm), solver.euclid_sirtp(norm)]
    if norm.q == norm.p + 1 and norm.p >= 2:
        cands.append(solver.square_transfer_pair(norm.p))
    return min(cands, key=lambda pr: pr.size)


def min_sirtp(inst: SirtpInstance, budget: Budget | None = None) -> OracleResult:
    """Smallest strict solution whose cuts all lie on integer coordinates.

    Iterative deepening on k from ceil(q/p): tilings of the p x q side with
    exactly k modules are enumerated and the first whose oriented module
    multiset also tiles q x p wins. The best heuristic solution bounds the
    search from above; if nothing smaller exists it is the minimum.
    """
    budget = budget or Budget()
    norm = inst.normalized()
    p, q = norm.p, norm.q
    pa, pb = Dims(p, q), Dims(q, p)
    _check_area(pa, budget.max_area)

    best = _best_heuristic(norm)
    clock = _Clock(budget)
    # a module of the tall side fits the wide side only if its height is <= p
    grid = _Grid(pa, max_w=p, max_h=p)
    rejected: set[tuple] = set()
    try:
        for k in range(ceil_div(q, p), best.size):
            for rects_a in _tilings(grid, k, k, clock):
                ms = tuple(sorted((w, h) for _, _, w, h in rects_a))
                if ms in rejected:
                    continue
                rects_b = _find_tiling(pb, (Dims(w, h) for w, h in ms), clock, budget.memo_limit)
                if rects_b is None:
                    rejected.add(ms)
                    continue
                pair = _verified(_pair_from(pa, rects_a, pb, rects_b))
                return OracleResult(k, _oriented(inst, pair), True, budget, clock.nodes)
    except _OutOfBudget:
        return OracleResult(best.size, _oriented(inst, _verified(best)), False, budget, clock.nodes)
    return OracleResult(best.size, _oriented(inst, _verified(best)), True, budget, clock.nodes)


def _oriented(inst: SirtpInstance, pair: PartitionPair) -> PartitionPair:
    return pair if inst.p <= inst.q else pair.swapped()
