"""Domain types and exact integer helpers.

Coordinates follow a single convention everywhere: ``Dims(w, h)`` is a
horizontal extent ``w`` and a vertical extent ``h``; the origin is the
bottom-left corner of the parent and ``y`` grows upward.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

MAX_SIDE = 2**63 - 1


class InputRangeError(ValueError):
    """A side length falls outside the supported integer range."""


def _check_side(name: str, value: int) -> None:
    if isinstance(value, bool) or not isinstance(value, int):
        raise TypeError(f"{name} must be an int, got {type(value).__name__}")
    if value < 1:
        raise ValueError(f"{name} must be positive, got {value}")
    if value > MAX_SIDE:
        raise InputRangeError(f"{name}={value} exceeds 2**63-1")


def isqrt(n: int) -> int:
    """Largest r with r*r <= n, in pure integer arithmetic."""
    if n < 0:
        raise ValueError("isqrt of a negative number")
    return math.isqrt(n)


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def ceil_log2(n: int) -> int:
    """Exact ceil(log2 n) for n >= 1."""
    if n < 1:
        raise ValueError("ceil_log2 needs n >= 1")
    return (n - 1).bit_length()


@dataclass(frozen=True, order=True)
class Dims:
    width: int
    height: int

    def __post_init__(self) -> None:
        _check_side("width", self.width)
        _check_side("height", self.height)

    @property
    def area(self) -> int:
        return self.width * self.height

    def transposed(self) -> Dims:
        return Dims(self.height, self.width)

    def unoriented(self) -> tuple[int, int]:
        return (min(self.width, self.height), max(self.width, self.height))

    def __str__(self) -> str:
        return f"{self.width}x{self.height}"


def area(d: Dims) -> int:
    a = d.width * d.height
    # both factors are < 2**63, so the product always fits 126 bits
    assert a < 2**126
    return a


@dataclass(frozen=True)
class PlacedRect:
    x: int
    y: int
    dims: Dims
    id: int = 0

    def __post_init__(self) -> None:
        if self.x < 0 or self.y < 0:
            raise ValueError(f"negative coordinate in module {self.id}: ({self.x}, {self.y})")

    @property
    def x2(self) -> int:
        return self.x + self.dims.width

    @property
    def y2(self) -> int:
        return self.y + self.dims.height

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.x, self.y, self.dims.width, self.dims.height)


@dataclass(frozen=True)
class Partition:
    """A parent rectangle and the modules placed inside it.

    Construction only checks that the data is well formed. Whether the
    modules actually tile the parent is decided by
    :func:`sirtp.analysis.check_tiling`.
    """

    parent: Dims
    modules: tuple[PlacedRect, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        object.__setattr__(self, "modules", tuple(self.modules))
        for i, m in enumerate(self.modules):
            if m.id != i:
                raise ValueError(f"module at position {i} carries id {m.id}")

    @classmethod
    def from_tuples(cls, parent: Dims | Sequence[int], rects: Iterable[Sequence[int]]) -> Partition:
        if not isinstance(parent, Dims):
            parent = Dims(*parent)
        # solver output repeats a handful of shapes many times over
        # (types are part of the key so 1.0 cannot ride on a cached 1)
        shapes: dict[tuple, Dims] = {}
        mods = []
        for i, (x, y, w, h) in enumerate(rects):
            key = (w, h, type(w), type(h))
            d = shapes.get(key)
            if d is None:
                d = shapes[key] = Dims(w, h)
            mods.append(PlacedRect(x, y, d, i))
        return cls(parent, tuple(mods))

    def __len__(self) -> int:
        return len(self.modules)

    def as_tuples(self) -> list[tuple[int, int, int, int]]:
        return [m.as_tuple() for m in self.modules]


@dataclass(frozen=True)
class PartitionPair:
    """Two partitions of equal-area parents plus a module correspondence.

    ``pairing[i]`` is the index in ``b.modules`` matched to ``a.modules[i]``.
    """

    a: Partition
    b: Partition
    pairing: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "pairing", tuple(self.pairing))

    @property
    def size(self) -> int:
        return len(self.a.modules)

    @property
    def p(self) -> int:
        return self.a.parent.width

    @property
    def q(self) -> int:
        return self.a.parent.height

    def is_sirtp_shaped(self) -> bool:
        return self.b.parent == self.a.parent.transposed()

    def swapped(self) -> PartitionPair:
        """The same solution with the roles of the two sides exchanged."""
        inverse = [0] * len(self.pairing)
        for i, j in enumerate(self.pairing):
            inverse[j] = i
        return PartitionPair(self.b, self.a, tuple(inverse))


@dataclass(frozen=True)
class SirtpInstance:
    """SIRTP(p, q): transform p x q into q x p without rotating modules."""

    p: int
    q: int

    def __post_init__(self) -> None:
        _check_side("p", self.p)
        _check_side("q", self.q)

    def normalized(self) -> SirtpInstance:
        if self.p <= self.q:
            return self
        return SirtpInstance(self.q, self.p)

    def reduced(self) -> SirtpInstance:
        g = math.gcd(self.p, self.q)
        return SirtpInstance(self.p // g, self.q // g)


@dataclass(frozen=True)
class IrtpInstance:
    """IRTP(a, b, c, d): transform a x b into c x d, rotation allowed."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self) -> None:
        for name in ("a", "b", "c", "d"):
            _check_side(name, getattr(self, name))
        if self.a * self.b != self.c * self.d:
            raise ValueError(f"areas differ: {self.a}*{self.b} != {self.c}*{self.d}")
        if not (self.a >= self.c >= self.d >= self.b):
            raise ValueError(
                f"expected a >= c >= d >= b, got ({self.a}, {self.b}, {self.c}, {self.d})"
            )


BASE = "BASE"
EUCLID_STEP = "EUCLID_STEP"
SQUARE_TRANSFER = "SQUARE_TRANSFER"


@dataclass(frozen=True)
class Round:
    p: int
    q: int
    delta: int
    branch: str
    added: int

    @property
    def transfer_side(self) -> int | None:
        """Side of the transfer square, for square-transfer rounds."""
        if self.branch != SQUARE_TRANSFER:
            return None
        return isqrt((self.p - self.delta) // self.delta) * self.delta


@dataclass(frozen=True)
class SolveTrace:
    """Per-round record of one solver run.

    The last round is always the base case; its ``added`` is q/p, so the
    solution size is the sum of ``added`` over all rounds. ``depth`` counts
    the recursive calls, i.e. the non-base rounds.
    """

    rounds: tuple[Round, ...]

    @property
    def depth(self) -> int:
        return sum(1 for r in self.rounds if r.branch != BASE)

    @property
    def size(self) -> int:
        return sum(r.added for r in self.rounds)
