"""Constructive algorithms for strict and rotational rectangle transformation.

All geometry is built on integer coordinates. Every SIRTP construction works
on a pair of regions: a *tall* region of dims (p, q) and a *wide* region of
dims (q, p), with p < q. One round cuts common pieces off both regions and
leaves a residual pair that is again tall/wide, but with the tall residual on
the opposite side. The builder tracks which side currently holds the tall
region, so the output always lands on the right partition.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .core import (
    BASE,
    EUCLID_STEP,
    SQUARE_TRANSFER,
    Dims,
    IrtpInstance,
    Partition,
    PartitionPair,
    Round,
    SirtpInstance,
    SolveTrace,
    ceil_div,
    ceil_log2,
    isqrt,
)

# refuse to materialize geometry beyond this many modules per side
DEFAULT_MAX_MODULES = 10_000_000


class AlignmentRule(enum.Enum):
    ALIGN_LONG = "long"
    ALIGN_SHORT = "short"
    GREEDY = "greedy"


def lower_bound(inst: SirtpInstance) -> int:
    inst = inst.normalized()
    return ceil_div(inst.q, inst.p)


def _transfer_count(p: int, delta: int) -> int:
    """floor(sqrt(p/delta - 1)) without leaving the integers."""
    t = (p - delta) // delta
    m = isqrt(t)
    assert m * m <= t < (m + 1) * (m + 1)
    return m


def algsirtp_rounds(p: int, q: int):
    """Yield the rounds of the hybrid recursion, base case last."""
    if p > q:
        p, q = q, p
    while True:
        n, delta = divmod(q, p)
        if delta == 0:
            yield Round(p, q, 0, BASE, n)
            return
        if 4 * delta >= p:
            k = p // delta - 1
            yield Round(p, q, delta, EUCLID_STEP, n + k)
            p, q = delta, p - k * delta
        else:
            m = _transfer_count(p, delta)
            yield Round(p, q, delta, SQUARE_TRANSFER, n + 2 * m + 1)
            p, q = delta, p - m * m * delta


def depth_bound(p: int) -> int:
    """Upper bound 2*ceil(log2 p) + 1 on the number of recursive rounds."""
    return 2 * ceil_log2(p) + 1


def algsirtp_size(inst: SirtpInstance) -> tuple[int, SolveTrace]:
    trace = SolveTrace(tuple(algsirtp_rounds(inst.p, inst.q)))
    return trace.size, trace


def euclid_sirtp_size(inst: SirtpInstance) -> int:
    """Number of squares in the successive-division partition."""
    p, q = sorted((inst.p, inst.q))
    total = 0
    while p:
        n, r = divmod(q, p)
        total += n
        p, q = r, p
    return total


# ---------------------------------------------------------------------------
# geometry


class _Builder:
    """Collects matched module pairs for both sides of a strict solution.

    ``tall_on_a`` says whether the current sub-instance's tall region sits in
    partition A. Every piece is added as (piece in tall region, piece in wide
    region) with equal dims, so the pairing is the identity by construction.
    """

    def __init__(self) -> None:
        self.a: list[tuple[int, int, int, int]] = []
        self.b: list[tuple[int, int, int, int]] = []
        self.tall_on_a = True

    def add(self, tall_piece, wide_piece) -> None:
        assert tall_piece[2:] == wide_piece[2:], (tall_piece, wide_piece)
        if self.tall_on_a:
            self.a.append(tall_piece)
            self.b.append(wide_piece)
        else:
            self.a.append(wide_piece)
            self.b.append(tall_piece)

    def flip(self) -> None:
        self.tall_on_a = not self.tall_on_a

    def build(self, pa: Dims, pb: Dims) -> PartitionPair:
        a = Partition.from_tuples(pa, self.a)
        b = Partition.from_tuples(pb, self.b)
        return PartitionPair(a, b, tuple(range(len(self.a))))


def _euclid_cut(bld: _Builder, p: int, q: int, t, w) -> tuple:
    """Cut floor(q/p) p-squares off both regions.

    Squares stack upward from the bottom of the tall region and rightward
    from the left of the wide region. Returns the origins of the two residual
    strips: (p x delta) on top of the tall region, (delta x p) at the right of
    the wide region.
    """
    (tx, ty), (wx, wy) = t, w
    n = q // p
    for j in range(n):
        bld.add((tx, ty + j * p, p, p), (wx + j * p, wy, p, p))
    return (tx, ty + n * p), (wx + n * p, wy)


def _carve_transfer(bld: _Builder, p: int, piece: int, m: int, t, w) -> int:
    """Replace the first p-square on each side by a transfer corner.

    The s x s corner (s = m * piece) sits at the bottom-left of the square.
    The tall side's corner holds m slivers piece x s side by side, the wide
    side's corner holds m slivers s x piece stacked. The L-shaped remainder is
    a full-height right slab (p - s) x p and a top slab s x (p - s), identical
    on both sides.
    """
    (tx, ty), (wx, wy) = t, w
    s = m * piece
    assert 0 < s < p
    bld.add((tx + s, ty, p - s, p), (wx + s, wy, p - s, p))
    bld.add((tx, ty + s, s, p - s), (wx, wy + s, s, p - s))
    return s


def _transfer_round(bld: _Builder, p: int, q: int, delta: int, m: int, t, w):
    """Square-transfer round for SIRTP(p, q) with slivers of thickness delta.

    Emits the Euclid squares (the first replaced by the carved L-remainder),
    the m strip pieces and the m corner fills. Returns the residual strip
    length and the residual origins (tall-side strip, wide-side strip).
    """
    (tx, ty), (wx, wy) = t, w
    n = q // p
    s = m * delta
    # first square on each side is carved; the rest are plain
    _carve_transfer(bld, p, delta, m, t, w)
    for j in range(1, n):
        bld.add((tx, ty + j * p, p, p), (wx + j * p, wy, p, p))
    sx, sy = tx, ty + n * p  # strip p x delta on the tall side
    vx, vy = wx + n * p, wy  # strip delta x p on the wide side
    for j in range(m):
        # tall-side strip piece s x delta lands in the wide side's corner
        bld.add((sx + j * s, sy, s, delta), (wx, wy + j * delta, s, delta))
        # wide-side strip piece delta x s lands in the tall side's corner
        bld.add((tx + j * delta, ty, delta, s), (vx, vy + j * s, delta, s))
    rest = p - m * s
    return rest, (sx + m * s, sy), (vx, vy + m * s)


def _check_limit(size: int, max_modules: int | None) -> None:
    if max_modules is not None and size > max_modules:
        raise ValueError(
            f"solution has {size} modules per side, above the limit of {max_modules}"
        )


def _oriented(inst: SirtpInstance, pair: PartitionPair) -> PartitionPair:
    # geometry is always built with the tall rectangle on side A
    return pair if inst.p <= inst.q else pair.swapped()


def algsirtp_partition(
    inst: SirtpInstance, max_modules: int | None = DEFAULT_MAX_MODULES
) -> PartitionPair:
    """Strict solution realizing the hybrid Euclid/square-transfer recursion."""
    size, trace = algsirtp_size(inst)
    _check_limit(size, max_modules)
    norm = inst.normalized()
    bld = _Builder()
    t, w = (0, 0), (0, 0)
    for rnd in trace.rounds:
        p, q, delta = rnd.p, rnd.q, rnd.delta
        if rnd.branch == BASE:
            _euclid_cut(bld, p, q, t, w)
            break
        if rnd.branch == EUCLID_STEP:
            (sx, sy), (vx, vy) = _euclid_cut(bld, p, q, t, w)
            k = p // delta - 1
            for j in range(k):
                bld.add((sx + j * delta, sy, delta, delta), (vx, vy + j * delta, delta, delta))
            # residual: wide (rest x delta) on the tall side, tall (delta x rest)
            # on the wide side, so the roles swap
            new_tall, new_wide = (vx, vy + k * delta), (sx + k * delta, sy)
        else:
            m = _transfer_count(p, delta)
            _, tall_rest, wide_rest = _transfer_round(bld, p, q, delta, m, t, w)
            new_tall, new_wide = wide_rest, tall_rest
        bld.flip()
        t, w = new_tall, new_wide
    pair = bld.build(Dims(norm.p, norm.q), Dims(norm.q, norm.p))
    assert pair.size == size
    return _oriented(inst, pair)


def euclid_sirtp(
    inst: SirtpInstance, max_modules: int | None = DEFAULT_MAX_MODULES
) -> PartitionPair:
    """Successive-division solution: every module is a square."""
    _check_limit(euclid_sirtp_size(inst), max_modules)
    norm = inst.normalized()
    bld = _Builder()
    p, q = norm.p, norm.q
    t, w = (0, 0), (0, 0)
    while True:
        (sx, sy), (vx, vy) = _euclid_cut(bld, p, q, t, w)
        r = q % p
        if r == 0:
            break
        bld.flip()
        # residual strips: (p x r) wide on the tall side, (r x p) tall on the other
        t, w = (vx, vy), (sx, sy)
        p, q = r, p
    return _oriented(inst, bld.build(Dims(norm.p, norm.q), Dims(norm.q, norm.p)))


def square_transfer_pair(p: int) -> PartitionPair:
    """Square-transfer solution of SIRTP(p, p+1).

    A floor(sqrt(p)) square is carved from the shared p x p module; whatever
    of the 1-thick strips does not fit the transfer square is cut into unit
    squares.
    """
    if isinstance(p, bool) or not isinstance(p, int):
        raise TypeError("p must be an int")
    if p < 2:
        raise ValueError("square transfer needs p >= 2")
    m = isqrt(p)
    bld = _Builder()
    rest, (sx, sy), (vx, vy) = _transfer_round(bld, p, p + 1, 1, m, (0, 0), (0, 0))
    for j in range(rest):
        bld.add((sx + j, sy, 1, 1), (vx, vy + j, 1, 1))
    pair = bld.build(Dims(p, p + 1), Dims(p + 1, p))
    assert pair.size == 2 * m + 2 + rest
    return pair


# ---------------------------------------------------------------------------
# IRTP: Euclidean baseline with rotation allowed


@dataclass(frozen=True)
class _Region:
    side: int  # 0 -> partition A, 1 -> partition B
    x: int
    y: int
    w: int
    h: int

    @property
    def long(self) -> int:
        return max(self.w, self.h)

    @property
    def short(self) -> int:
        return min(self.w, self.h)

    def cut(self, along_x: bool, length: int, count: int):
        """Cut ``count`` slabs of ``length`` along one axis; return slabs and rest."""
        slabs = []
        if along_x:
            for j in range(count):
                slabs.append((self.x + j * length, self.y, length, self.h))
            used = count * length
            rest = _Region(self.side, self.x + used, self.y, self.w - used, self.h)
        else:
            for j in range(count):
                slabs.append((self.x, self.y + j * length, self.w, length))
            used = count * length
            rest = _Region(self.side, self.x, self.y + used, self.w, self.h - used)
        return slabs, rest

    def axis_of(self, length: int) -> bool:
        """True if ``length`` runs along x (prefers x when the region is square)."""
        return self.w == length


def _choose(rule: AlignmentRule) -> AlignmentRule:
    if rule is AlignmentRule.GREEDY:
        # largest common modules first: floor(a/c) <= floor(a/d), so align a with c
        return AlignmentRule.ALIGN_LONG
    return rule


def euclid_irtp(
    inst: IrtpInstance, rule: AlignmentRule = AlignmentRule.GREEDY
) -> tuple[int, PartitionPair]:
    """Recursive Euclidean transform of a x b into c x d (rotation allowed).

    Side A is drawn as a (horizontal) x b, side B as c x d.
    """
    r1 = _Region(0, 0, 0, inst.a, inst.b)
    r2 = _Region(1, 0, 0, inst.c, inst.d)
    pieces: list[list[tuple[int, int, int, int]]] = [[], []]
    while True:
        if r1.long < r2.long:
            r1, r2 = r2, r1
        a, b = r1.long, r1.short
        c, d = r2.long, r2.short
        if (a, b) == (c, d):
            pieces[r1.side].append((r1.x, r1.y, r1.w, r1.h))
            pieces[r2.side].append((r2.x, r2.y, r2.w, r2.h))
            break
        along_a = r1.axis_of(a)
        choice = _choose(rule)
        if choice is AlignmentRule.ALIGN_LONG:
            # a -> pieces of length c; d -> pieces of length b; modules c x b
            n = a // c
            s1, r1 = r1.cut(along_a, c, n)
            s2, r2 = r2.cut(r2.axis_of(d), b, n)
        else:
            # a -> pieces of length d; c -> pieces of length b; modules d x b
            n = a // d
            s1, r1 = r1.cut(along_a, d, n)
            s2, r2 = r2.cut(r2.axis_of(c), b, n)
        pieces[r1.side].extend(s1)
        pieces[r2.side].extend(s2)
        if r1.w == 0 or r1.h == 0:
            assert r2.w == 0 or r2.h == 0
            break
    side_a = pieces[0]
    side_b = pieces[1]
    part_a = Partition.from_tuples(Dims(inst.a, inst.b), side_a)
    part_b = Partition.from_tuples(Dims(inst.c, inst.d), side_b)
    # both lists were appended in lockstep, one module per side per step
    pair = PartitionPair(part_a, part_b, tuple(range(len(side_a))))
    return pair.size, pair


# ---------------------------------------------------------------------------
# stretch reduction

Rational = Union[int, Fraction, str]


@dataclass(frozen=True)
class SrtpReduction:
    """SIRTP instance equivalent to an SRTP input, plus the way back.

    A solution on the integer rectangles ``(p, q)`` / ``(q, p)`` (before
    normalization: width ``p0`` x height ``q0`` for the first input
    rectangle) maps to the original rectangles by scaling every x coordinate
    by ``x_scale`` and every y coordinate by ``y_scale``. ``transposed`` is
    set when normalization to p <= q swapped the two sides.
    """

    instance: SirtpInstance
    x_scale: Fraction
    y_scale: Fraction
    transposed: bool


def _as_fraction(v: Rational) -> Fraction:
    f = Fraction(v)
    if f <= 0:
        raise ValueError(f"side lengths must be positive, got {v}")
    return f


def reduce_srtp(a: Rational, b: Rational, c: Rational, d: Rational) -> SrtpReduction:
    """Reduce SRTP(a, b, c, d) with a parallel to c to a coprime SIRTP.

    Shrinking a and c by d/a turns a x b into d x b and c x d into b x d.
    Clearing denominators and common factors gives integers p0 = d*t and
    q0 = b*t for a rational t.
    """
    a, b, c, d = (_as_fraction(v) for v in (a, b, c, d))
    if a * b != c * d:
        raise ValueError(f"areas differ: {a}*{b} != {c}*{d}")
    ratio = d / b  # p0 / q0 in lowest terms
    p0, q0 = ratio.numerator, ratio.denominator
    t = Fraction(p0) / d  # integer rectangle = t * (d x b)
    x_scale = (a / d) / t
    y_scale = 1 / t
    inst = SirtpInstance(p0, q0)
    return SrtpReduction(inst.normalized(), x_scale, y_scale, p0 > q0)


def map_back(pair: PartitionPair, red: SrtpReduction):
    """Module rectangles of ``pair`` in the original (rational) coordinates.

    Returns two lists of ``(x, y, w, h)`` Fractions: one for a x b, one for
    c x d.
    """
    if red.transposed:
        pair = pair.swapped()

    def scale(part: Partition):
        return [
            (m.x * red.x_scale, m.y * red.y_scale, m.dims.width * red.x_scale, m.dims.height * red.y_scale)
            for m in part.modules
        ]

    return scale(pair.a), scale(pair.b)
