"""Exact interval arithmetic on a model circle of circumference 2.

Coordinates are rationals in ``[0, 2)``.  The closed arc ``[0, 1]`` is the
marked base interval carrying the middle-thirds construction, and the open
arc ``(1, 2)`` is the coordinate home of everything outside it.  The
circumference-2 convention is exactly that, a convention: nothing below
depends on the length of the outer arc.

Everything is computed with ``fractions.Fraction``; floats are rejected at
every entry point, and rationals serialize as ``"p/q"`` strings.

Sets of points are finite unions of arcs held in a canonical unrolled
form: pairwise disjoint pieces sorted along ``[0, 2]``, abutting pieces
merged, the seam point 0 always carried by a piece starting at 0.  The
canonical form is unique for a given point set, so structural equality is
point-set equality.
"""

from __future__ import annotations

import re
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Iterator

from .errors import InvalidInputError

TWO = Fraction(2)

_RATIONAL_RE = re.compile(r"\A[+-]?\d+(?:/\d+)?\Z")


def parse_rational(text: str) -> Fraction:
    """Parse a strict ``"p/q"`` literal.  Decimal notation is rejected."""
    if not isinstance(text, str):
        raise InvalidInputError(f"expected a rational string, got {type(text).__name__}")
    s = text.strip()
    if not _RATIONAL_RE.match(s):
        raise InvalidInputError(f"not a rational 'p/q' literal: {text!r}")
    num, _, den = s.partition("/")
    if den:
        if int(den) == 0:
            raise InvalidInputError(f"zero denominator: {text!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(num))


def as_fraction(value) -> Fraction:
    """Coerce an exact value (int, Fraction, or 'p/q' string) to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InvalidInputError("booleans are not coordinates")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise InvalidInputError(
        f"expected an exact rational, got {type(value).__name__}: {value!r} "
        "(floating point is forbidden)"
    )


def format_rational(value: Fraction) -> str:
    return str(Fraction(value))


def circle_point(value) -> Fraction:
    """Reduce a rational to its canonical representative in [0, 2)."""
    return as_fraction(value) % TWO


@dataclass(frozen=True)
class Interval:
    """One arc of the circle.

    The arc runs counterclockwise (increasing coordinate) from ``lo`` to
    ``hi``.  ``lo > hi`` marks an arc crossing the 0/2 seam (``wraps``).
    ``hi == 2`` is kept literally so that the outer arc reads as ``(1, 2)``;
    a closed right end at 2 means the seam point 0 belongs to the arc.
    Degenerate closed points ``[x, x]`` are allowed; an equal-endpoint arc
    with an open end is rejected as ambiguous.
    """

    lo: Fraction
    hi: Fraction
    lo_closed: bool = True
    hi_closed: bool = True

    def __post_init__(self) -> None:
        lo = circle_point(self.lo)
        hi = as_fraction(self.hi)
        if hi != TWO:
            hi = hi % TWO
        lo_closed = bool(self.lo_closed)
        hi_closed = bool(self.hi_closed)
        if lo == 0 and hi == TWO and (lo_closed or hi_closed):
            lo_closed, hi_closed = True, False  # whole circle, seam carried at 0
        if lo == hi:
            if not (lo_closed and hi_closed):
                raise InvalidInputError(
                    "equal endpoints need both ends closed (a point); "
                    "an open end would be empty or ambiguous"
                )
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        object.__setattr__(self, "lo_closed", lo_closed)
        object.__setattr__(self, "hi_closed", hi_closed)

    @property
    def wraps(self) -> bool:
        """True when the arc crosses the 0/2 seam."""
        return self.lo > self.hi

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    @property
    def length(self) -> Fraction:
        if self.wraps:
            return TWO - self.lo + self.hi
        return self.hi - self.lo

    def pieces(self) -> tuple["Interval", ...]:
        """Canonical unrolled pieces: seam membership moves to lo = 0."""
        if self.wraps:
            out = [Interval(self.lo, TWO, self.lo_closed, False)]
            if self.hi > 0:
                out.append(Interval(0, self.hi, True, self.hi_closed))
            elif self.hi_closed:
                out.append(Interval(0, 0, True, True))
            return tuple(out)
        if self.hi == TWO and self.hi_closed:
            return (Interval(self.lo, TWO, self.lo_closed, False), Interval(0, 0, True, True))
        return (self,)

    def to_record(self) -> dict:
        return {
            "lo": format_rational(self.lo),
            "hi": format_rational(self.hi),
            "lo_closed": self.lo_closed,
            "hi_closed": self.hi_closed,
        }

    @staticmethod
    def from_record(record: dict) -> "Interval":
        if not isinstance(record, dict) or "lo" not in record or "hi" not in record:
            raise InvalidInputError(f"interval record needs lo/hi fields: {record!r}")
        return Interval(
            as_fraction(record["lo"]),
            as_fraction(record["hi"]),
            bool(record.get("lo_closed", True)),
            bool(record.get("hi_closed", True)),
        )

    def __str__(self) -> str:
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"{left}{self.lo}, {self.hi}{right}"


def open_arc(lo, hi) -> Interval:
    return Interval(lo, hi, False, False)


def closed_arc(lo, hi) -> Interval:
    return Interval(lo, hi, True, True)


def point_arc(x) -> Interval:
    x = circle_point(x)
    return Interval(x, x, True, True)


def _piece_contains(piece: Interval, x: Fraction) -> bool:
    if piece.lo < x < piece.hi:
        return True
    if x == piece.lo and piece.lo_closed:
        return True
    if x == piece.hi and piece.hi_closed:
        return True
    return False


def _merge_sorted(raw: list[Interval]) -> tuple[Interval, ...]:
    """Union-merge a list of unrolled pieces into canonical form."""
    if not raw:
        return ()
    raw.sort(key=lambda p: (p.lo, not p.lo_closed, p.hi, not p.hi_closed))
    out: list[Interval] = []
    lo, hi = raw[0].lo, raw[0].hi
    lo_c, hi_c = raw[0].lo_closed, raw[0].hi_closed
    for p in raw[1:]:
        touching = p.lo < hi or (p.lo == hi and (p.lo_closed or hi_c))
        if touching:
            if p.hi > hi:
                hi, hi_c = p.hi, p.hi_closed
            elif p.hi == hi:
                hi_c = hi_c or p.hi_closed
        else:
            out.append(Interval(lo, hi, lo_c, hi_c))
            lo, hi, lo_c, hi_c = p.lo, p.hi, p.lo_closed, p.hi_closed
    out.append(Interval(lo, hi, lo_c, hi_c))
    return tuple(out)


def _clip_pieces(a: Interval, b: Interval) -> Interval | None:
    """Intersection of two unrolled (non-wrapping) pieces, or None."""
    if a.lo > b.lo:
        lo, lo_c = a.lo, a.lo_closed
    elif a.lo < b.lo:
        lo, lo_c = b.lo, b.lo_closed
    else:
        lo, lo_c = a.lo, a.lo_closed and b.lo_closed
    if a.hi < b.hi:
        hi, hi_c = a.hi, a.hi_closed
    elif a.hi > b.hi:
        hi, hi_c = b.hi, b.hi_closed
    else:
        hi, hi_c = a.hi, a.hi_closed and b.hi_closed
    if lo > hi:
        return None
    if lo == hi and not (lo_c and hi_c):
        return None
    return Interval(lo, hi, lo_c, hi_c)


class IntervalSet:
    """Canonical finite union of arcs.  Immutable and hashable."""

    __slots__ = ("_pieces", "_los", "_his")

    def __init__(self, intervals: Iterable[Interval] = ()):
        raw: list[Interval] = []
        for ivl in intervals:
            if not isinstance(ivl, Interval):
                raise InvalidInputError(f"expected Interval, got {type(ivl).__name__}")
            raw.extend(ivl.pieces())
        pieces = _merge_sorted(raw)
        object.__setattr__(self, "_pieces", pieces)
        object.__setattr__(self, "_los", [p.lo for p in pieces])
        object.__setattr__(self, "_his", [p.hi for p in pieces])

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("IntervalSet is immutable")

    @classmethod
    def empty(cls) -> "IntervalSet":
        return cls(())

    @classmethod
    def full(cls) -> "IntervalSet":
        return cls((Interval(0, TWO, True, False),))

    @classmethod
    def point(cls, x) -> "IntervalSet":
        return cls((point_arc(x),))

    @classmethod
    def of(cls, *intervals: Interval) -> "IntervalSet":
        return cls(intervals)

    @property
    def intervals(self) -> tuple[Interval, ...]:
        return self._pieces

    @property
    def is_empty(self) -> bool:
        return not self._pieces

    @property
    def measure(self) -> Fraction:
        return sum((p.hi - p.lo for p in self._pieces), Fraction(0))

    def __contains__(self, x) -> bool:
        x = circle_point(x)
        idx = bisect_right(self._los, x) - 1
        return idx >= 0 and _piece_contains(self._pieces[idx], x)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntervalSet):
            return NotImplemented
        return self._pieces == other._pieces

    def __hash__(self) -> int:
        return hash(self._pieces)

    def __repr__(self) -> str:
        body = " ".join(str(p) for p in self._pieces)
        return f"IntervalSet<{body or 'empty'}>"

    def __iter__(self) -> Iterator[Interval]:
        return iter(self._pieces)

    # -- set algebra ----------------------------------------------------

    def _combine(self, other: "IntervalSet", keep: Callable[[bool, bool], bool]) -> "IntervalSet":
        cuts = {Fraction(0), TWO}
        for s in (self, other):
            for p in s._pieces:
                cuts.add(p.lo)
                cuts.add(p.hi)
        ordered = sorted(cuts)
        raw: list[Interval] = []
        start: Fraction | None = None
        start_closed = False
        end: Fraction | None = None
        end_closed = False

        def flush() -> None:
            nonlocal start
            if start is not None:
                raw.append(Interval(start, end, start_closed, end_closed))
                start = None

        for i, cut in enumerate(ordered[:-1]):
            nxt = ordered[i + 1]
            if keep(cut in self, cut in other):
                if start is None:
                    start, start_closed = cut, True
                end, end_closed = cut, True
            else:
                flush()
            mid = (cut + nxt) / 2
            if keep(mid in self, mid in other):
                if start is None:
                    start, start_closed = cut, False
                end, end_closed = nxt, False
            else:
                flush()
        flush()
        return IntervalSet(raw)

    def union(self, other: "IntervalSet") -> "IntervalSet":
        return IntervalSet(self._pieces + other._pieces)

    def intersection(self, other: "IntervalSet") -> "IntervalSet":
        return self._combine(other, lambda a, b: a and b)

    def difference(self, other: "IntervalSet") -> "IntervalSet":
        return self._combine(other, lambda a, b: a and not b)

    def complement(self) -> "IntervalSet":
        return self._combine(IntervalSet.empty(), lambda a, _: not a)

    __or__ = union
    __and__ = intersection
    __sub__ = difference

    def issubset(self, other: "IntervalSet") -> bool:
        return self.difference(other).is_empty

    def isdisjoint(self, other: "IntervalSet") -> bool:
        return self.intersection(other).is_empty

    def clip(self, window: Interval) -> "IntervalSet":
        """Fast intersection with a single non-wrapping arc."""
        out: list[Interval] = []
        for w in window.pieces():
            if w.hi == TWO and w.hi_closed:  # normalized away by pieces()
                raise InvalidInputError("clip window may not close at the seam")
            start = bisect_left(self._his, w.lo)
            stop = bisect_right(self._los, w.hi)
            for p in self._pieces[start:stop]:
                clipped = _clip_pieces(p, w)
                if clipped is not None:
                    out.append(clipped)
        return IntervalSet(out)

    def closure(self) -> "IntervalSet":
        return IntervalSet(Interval(p.lo, p.hi, True, True) for p in self._pieces)

    @property
    def is_closed(self) -> bool:
        return self.closure() == self

    # -- circle-aware components ----------------------------------------

    def components(self) -> tuple["IntervalSet", ...]:
        """Connected components, joining pieces that meet across the seam."""
        if not self._pieces:
            return ()
        groups: list[list[Interval]] = [[p] for p in self._pieces]
        if len(groups) >= 2:
            first, last = self._pieces[0], self._pieces[-1]
            if last.hi == TWO and first.lo == 0 and first.lo_closed:
                seam = groups.pop() + groups[0]
                groups[0] = seam
        return tuple(IntervalSet(g) for g in groups)

    @property
    def n_components(self) -> int:
        return len(self.components())

    # -- serialization ---------------------------------------------------

    def to_records(self) -> list[dict]:
        return [p.to_record() for p in self._pieces]

    @staticmethod
    def from_records(records) -> "IntervalSet":
        if not isinstance(records, list):
            raise InvalidInputError("interval set must be a list of records")
        return IntervalSet(Interval.from_record(r) for r in records)


def canonicalize(intervals: Iterable[Interval]) -> IntervalSet:
    """Canonical form of a raw interval list; point-set equality preserved."""
    return IntervalSet(intervals)


# -- the marked arcs ------------------------------------------------------

BASE_ARC = Interval(0, 1, True, True)
OUTER_ARC = Interval(1, TWO, False, False)
LOW_THIRD = Interval(0, Fraction(1, 3), True, True)
HIGH_THIRD = Interval(Fraction(2, 3), 1, True, True)

BASE_SET = IntervalSet((BASE_ARC,))
OUTER_SET = IntervalSet((OUTER_ARC,))


# -- middle-thirds construction -------------------------------------------


@dataclass(frozen=True)
class CantorStage:
    """Finite-depth truncation of the middle-thirds construction on [0, 1].

    ``remaining`` is the closed stage-``depth`` set (2^depth arcs of length
    3^-depth) and ``removed_by_level[i]`` is the open level-(i+1) removal
    (2^i arcs of length 3^-(i+1)).
    """

    depth: int
    remaining: IntervalSet
    removed_by_level: tuple[IntervalSet, ...]


@lru_cache(maxsize=128)
def cantor_stage(depth: int) -> CantorStage:
    if not isinstance(depth, int) or depth < 0:
        raise InvalidInputError(f"depth must be a non-negative integer, got {depth!r}")
    remaining: list[Interval] = [BASE_ARC]
    removed_levels: list[IntervalSet] = []
    for _ in range(depth):
        removed: list[Interval] = []
        nxt: list[Interval] = []
        for piece in remaining:
            third = (piece.hi - piece.lo) / 3
            nxt.append(Interval(piece.lo, piece.lo + third, True, True))
            removed.append(Interval(piece.lo + third, piece.hi - third, False, False))
            nxt.append(Interval(piece.hi - third, piece.hi, True, True))
        remaining = nxt
        removed_levels.append(IntervalSet(removed))
    return CantorStage(depth, IntervalSet(remaining), tuple(removed_levels))


def removal_levels(depth: int) -> tuple[IntervalSet, ...]:
    """The open removal levels 1..depth."""
    return cantor_stage(depth).removed_by_level


@lru_cache(maxsize=128)
def c1_c2(depth: int) -> tuple[IntervalSet, IntervalSet]:
    """Depth-``depth`` truncations of the two halves of the construction."""
    if not isinstance(depth, int) or depth < 1:
        raise InvalidInputError(f"half truncations need depth >= 1, got {depth!r}")
    remaining = cantor_stage(depth).remaining
    return remaining.clip(LOW_THIRD), remaining.clip(HIGH_THIRD)


def lift(s: IntervalSet, n: int) -> IntervalSet:
    """Preimage of ``s`` under the n-fold self-cover of the circle.

    The cover circle is modeled as the same circumference-2 circle; the
    covering map sends x to n*x mod 2, so the preimage consists of n copies
    scaled by 1/n.  Total measure is preserved.
    """
    if not isinstance(n, int) or n < 1:
        raise InvalidInputError(f"cover degree must be a positive integer, got {n!r}")
    raw: list[Interval] = []
    for j in range(n):
        shift = TWO * j
        for p in s.intervals:
            raw.append(
                Interval((p.lo + shift) / n, (p.hi + shift) / n, p.lo_closed, p.hi_closed)
            )
    return IntervalSet(raw)
