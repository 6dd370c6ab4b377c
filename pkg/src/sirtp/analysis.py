"""Verification and structural analysis of rectangle partitions."""

from __future__ import annotations

import enum
from bisect import bisect_left, bisect_right
from collections import Counter, defaultdict
from dataclasses import dataclass, field

from .core import Dims, Partition, PartitionPair, PlacedRect


class Mode(enum.Enum):
    STRICT = "strict"
    ROTATIONAL = "rotational"


@dataclass(frozen=True)
class Violation:
    kind: str
    modules: tuple[int, ...]
    description: str

    def __str__(self) -> str:
        ids = ",".join(map(str, self.modules))
        return f"{self.kind} [{ids}]: {self.description}"


@dataclass(frozen=True)
class CheckReport:
    violations: tuple[Violation, ...] = ()
    applicable: bool = True

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def status(self) -> str:
        if not self.applicable:
            return "NOT_APPLICABLE"
        return "OK" if self.ok else "FAIL"

    def __bool__(self) -> bool:
        return self.ok


def _report(violations) -> CheckReport:
    return CheckReport(tuple(violations))


# ---------------------------------------------------------------------------
# tiling


def check_tiling(part: Partition, side: str = "") -> CheckReport:
    """Decide whether the modules tile the parent exactly.

    Area sums must agree, and for every vertical slab between consecutive
    distinct x-coordinates the y-intervals of the modules crossing it must
    chain from 0 to the parent height with no gap and no overlap.
    """
    tag = f"{side}: " if side else ""
    W, H = part.parent.width, part.parent.height
    out: list[Violation] = []
    for m in part.modules:
        if m.x2 > W or m.y2 > H:
            out.append(Violation("bounds", (m.id,), f"{tag}module {m.as_tuple()} leaves the {W}x{H} parent"))
    if out:
        return _report(out)

    total = sum(m.dims.area for m in part.modules)
    if total != part.parent.area:
        out.append(
            Violation("coverage", (), f"{tag}module areas sum to {total}, parent area is {part.parent.area}")
        )

    xs = sorted({0, W, *(m.x for m in part.modules), *(m.x2 for m in part.modules)})
    index = {x: i for i, x in enumerate(xs)}
    slabs: list[list[tuple[int, int, int]]] = [[] for _ in range(len(xs) - 1)]
    for m in part.modules:
        for s in range(index[m.x], index[m.x2]):
            slabs[s].append((m.y, m.y2, m.id))

    for s, column in enumerate(slabs):
        column.sort()
        x0, x1 = xs[s], xs[s + 1]
        top, owner = 0, None
        for y0, y1, mid in column:
            if y0 < top:
                out.append(Violation("overlap", (owner, mid),
                                     f"{tag}modules {owner} and {mid} overlap in x={x0}..{x1}, y={y0}..{min(top, y1)}"))
            elif y0 > top:
                out.append(Violation("coverage", (mid,), f"{tag}gap at x={x0}..{x1}, y={top}..{y0}"))
            if y1 > top:
                top, owner = y1, mid
        if top < H:
            out.append(Violation("coverage", (), f"{tag}gap at x={x0}..{x1}, y={top}..{H}"))
    return _report(out)


# ---------------------------------------------------------------------------
# isomorphism


def _key(d: Dims, mode: Mode) -> tuple[int, int]:
    return (d.width, d.height) if mode is Mode.STRICT else d.unoriented()


def check_isomorphism(pair: PartitionPair, mode: Mode = Mode.STRICT) -> CheckReport:
    """Check that the pairing matches modules of equal dims."""
    mode = Mode(mode)
    a, b = pair.a.modules, pair.b.modules
    out: list[Violation] = []
    if pair.a.parent.area != pair.b.parent.area:
        out.append(Violation("parent", (), f"parent areas differ: {pair.a.parent} vs {pair.b.parent}"))
    if len(a) != len(b) or len(pair.pairing) != len(a):
        out.append(Violation("size", (), f"sizes differ: |a|={len(a)}, |b|={len(b)}, |pairing|={len(pair.pairing)}"))
        return _report(out)
    seen: dict[int, int] = {}
    for i, j in enumerate(pair.pairing):
        if not 0 <= j < len(b):
            out.append(Violation("pairing", (i,), f"a[{i}] maps to missing b[{j}]"))
            continue
        if j in seen:
            out.append(Violation("pairing", (seen[j], i), f"b[{j}] is the image of both a[{seen[j]}] and a[{i}]"))
            continue
        seen[j] = i
        if _key(a[i].dims, mode) != _key(b[j].dims, mode):
            out.append(Violation("dims", (i, j), f"a[{i}] is {a[i].dims} but b[{j}] is {b[j].dims}"))
    return _report(out)


def isomorphic(a: Partition, b: Partition, mode: Mode = Mode.STRICT) -> bool:
    """Whether some pairing makes ``a`` and ``b`` isomorphic (multiset test)."""
    mode = Mode(mode)
    return Counter(_key(m.dims, mode) for m in a.modules) == Counter(_key(m.dims, mode) for m in b.modules)


def find_pairing(a: Partition, b: Partition, mode: Mode = Mode.STRICT) -> tuple[int, ...] | None:
    mode = Mode(mode)
    pool: dict[tuple[int, int], list[int]] = defaultdict(list)
    for m in reversed(b.modules):
        pool[_key(m.dims, mode)].append(m.id)
    pairing = []
    for m in a.modules:
        bucket = pool.get(_key(m.dims, mode))
        if not bucket:
            return None
        pairing.append(bucket.pop())
    if len(b.modules) != len(a.modules):
        return None
    return tuple(pairing)


def verify_pair(pair: PartitionPair, mode: Mode = Mode.STRICT) -> CheckReport:
    """Tiling on both sides plus isomorphism, as one report."""
    v = [*check_tiling(pair.a, "a").violations, *check_tiling(pair.b, "b").violations,
         *check_isomorphism(pair, mode).violations]
    return _report(v)


# ---------------------------------------------------------------------------
# patterns


@dataclass(frozen=True)
class Pattern:
    """Grid extension of a partition.

    ``blocks[i]`` is ``(row_lo, row_hi, col_lo, col_hi)`` (inclusive) of the
    all-ones block of module i's membership matrix. Rows index the y
    direction from the bottom, columns the x direction from the left.
    ``alpha`` holds the column widths, ``beta`` the row heights.
    """

    r: int
    c: int
    blocks: tuple[tuple[int, int, int, int], ...]
    alpha: tuple[int, ...] | None = field(default=None, compare=False)
    beta: tuple[int, ...] | None = field(default=None, compare=False)

    @property
    def k(self) -> int:
        return len(self.blocks)

    def matrix(self, i: int) -> list[list[int]]:
        r0, r1, c0, c1 = self.blocks[i]
        return [[int(r0 <= u <= r1 and c0 <= v <= c1) for v in range(self.c)] for u in range(self.r)]

    def module_dims(self, i: int) -> Dims:
        """Rebuild module i's dims from the length vectors."""
        if self.alpha is None or self.beta is None:
            raise ValueError("pattern carries no length vectors")
        r0, r1, c0, c1 = self.blocks[i]
        return Dims(sum(self.alpha[c0:c1 + 1]), sum(self.beta[r0:r1 + 1]))

    def reindexed(self, order) -> Pattern:
        return Pattern(self.r, self.c, tuple(self.blocks[i] for i in order), self.alpha, self.beta)


def extract_pattern(part: Partition) -> Pattern:
    xs = sorted({0, part.parent.width, *(m.x for m in part.modules), *(m.x2 for m in part.modules)})
    ys = sorted({0, part.parent.height, *(m.y for m in part.modules), *(m.y2 for m in part.modules)})
    xi = {x: i for i, x in enumerate(xs)}
    yi = {y: i for i, y in enumerate(ys)}
    blocks = tuple((yi[m.y], yi[m.y2] - 1, xi[m.x], xi[m.x2] - 1) for m in part.modules)
    alpha = tuple(b - a for a, b in zip(xs, xs[1:]))
    beta = tuple(b - a for a, b in zip(ys, ys[1:]))
    assert all(alpha) and all(beta)
    return Pattern(len(ys) - 1, len(xs) - 1, blocks, alpha, beta)


def patterns_equal(p1: Pattern, p2: Pattern) -> bool:
    return p1.r == p2.r and p1.c == p2.c and p1.blocks == p2.blocks


def check_ratio_lemma(pair1: PartitionPair, pair2: PartitionPair) -> CheckReport:
    """Equivalent solutions must solve instances with the same side ratio.

    Both pairs are reindexed so their pairings become the identity. If the
    A-side patterns agree and the B-side patterns agree, the pairs are
    equivalent and p*q' must equal p'*q; otherwise the check does not apply.
    """

    def patterns(pair: PartitionPair) -> tuple[Pattern, Pattern]:
        pa = extract_pattern(pair.a)
        pb = extract_pattern(pair.b).reindexed(pair.pairing)
        return pa, pb

    a1, b1 = patterns(pair1)
    a2, b2 = patterns(pair2)
    if not (patterns_equal(a1, a2) and patterns_equal(b1, b2)):
        return CheckReport(applicable=False)
    p, q = pair1.p, pair1.q
    p2, q2 = pair2.p, pair2.q
    if p * q2 != p2 * q:
        return _report([Violation("ratio", (), f"equivalent pairs but {p}/{q} != {p2}/{q2}")])
    return CheckReport()


# ---------------------------------------------------------------------------
# slat partitions


def is_slat(part: Partition) -> bool:
    """True if overlapping horizontal module sides are always identical."""
    tops: dict[int, list[tuple[int, int]]] = defaultdict(list)
    bottoms: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for m in part.modules:
        tops[m.y2].append((m.x, m.x2))
        bottoms[m.y].append((m.x, m.x2))
    for y, upper in tops.items():
        lower = bottoms.get(y)
        if not lower:
            continue
        upper.sort()
        lower.sort()
        i = j = 0
        while i < len(upper) and j < len(lower):
            u, v = upper[i], lower[j]
            if min(u[1], v[1]) > max(u[0], v[0]) and u != v:
                return False
            if u[1] <= v[1]:
                i += 1
            else:
                j += 1
    return True


def _cut_vertically(m: PlacedRect, offsets: list[int]) -> list[tuple[int, int, int, int]]:
    edges = [0, *offsets, m.dims.width]
    return [(m.x + lo, m.y, hi - lo, m.dims.height) for lo, hi in zip(edges, edges[1:])]


def slat_refine(pair: PartitionPair, side: str = "a") -> PartitionPair:
    """Refine one side into a slat partition, mirroring every cut.

    Every vertical module side of the chosen side is extended through the
    whole parent. A module crossed at relative offset t is cut there, and its
    partner on the other side is cut at the same offset. Pieces are paired
    left to right. Modules keep their relative order, each replaced in place
    by its pieces, so a pair that needs no cuts comes back unchanged.
    """
    if side == "b":
        return slat_refine(pair.swapped(), "a").swapped()
    if side != "a":
        raise ValueError(f"side must be 'a' or 'b', got {side!r}")
    a, b = pair.a, pair.b
    xs = sorted({m.x for m in a.modules} | {m.x2 for m in a.modules})
    inverse = [0] * len(pair.pairing)
    for i, j in enumerate(pair.pairing):
        inverse[j] = i

    offsets: list[list[int]] = []
    for m in a.modules:
        lo, hi = bisect_right(xs, m.x), bisect_left(xs, m.x2)
        offsets.append([x - m.x for x in xs[lo:hi]])

    if not any(offsets):
        return pair

    new_a: list[tuple[int, int, int, int]] = []
    a_start = []
    for m, offs in zip(a.modules, offsets):
        a_start.append(len(new_a))
        new_a.extend(_cut_vertically(m, offs))
    new_b: list[tuple[int, int, int, int]] = []
    b_start = []
    for m in b.modules:
        b_start.append(len(new_b))
        new_b.extend(_cut_vertically(m, offsets[inverse[m.id]]))
    pairing = [0] * len(new_a)
    for i, j in enumerate(pair.pairing):
        for k in range(len(offsets[i]) + 1):
            pairing[a_start[i] + k] = b_start[j] + k
    return PartitionPair(
        Partition.from_tuples(a.parent, new_a),
        Partition.from_tuples(b.parent, new_b),
        tuple(pairing),
    )
