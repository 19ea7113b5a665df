"""Interlacing numbers on the circle and their lower-bound propagators.

Two disjoint compact sets interlace ``k`` times when ``k`` is the largest
count of points, alternately chosen from the two sets, that can be placed
around the circle in strictly alternating cyclic order.  For finite unions
of arcs this reduces to one representative per connected component: the
number of cyclic label changes, halved.

Solid-torus level interlacing never appears here as geometry.  It enters
only through lower-bound propagators: an inner torus of winding order
``n`` over a ``k``-interlacing forces at least ``2nk - 1`` on the inside.
These values are tagged LOWER and only ever grow along a nesting chain.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations

from .circle import TWO, Interval, IntervalSet, circle_point, lift
from .errors import InvalidInputError, NoWitnessError, PropertyViolation


class BoundKind(str, Enum):
    EXACT = "EXACT"
    LOWER = "LOWER"


@dataclass(frozen=True)
class InterlaceBound:
    value: int
    kind: BoundKind

    def __post_init__(self) -> None:
        if not isinstance(self.value, int) or self.value < 0:
            raise InvalidInputError(f"bound value must be a non-negative int: {self.value!r}")

    def to_doc(self) -> dict:
        return {"value": self.value, "kind": self.kind.value}


@dataclass(frozen=True)
class LabeledConfig:
    """Cyclic block labels with one anchor position per block."""

    labels: tuple[str, ...]
    anchors: tuple[Fraction, ...]

    @property
    def alternations(self) -> int:
        if len(self.labels) < 2:
            return 0
        total = len(self.labels)
        return sum(1 for i in range(total) if self.labels[i] != self.labels[(i + 1) % total])


def _normalize_points(points) -> list[Fraction]:
    out = sorted({circle_point(p) for p in points})
    return out


def interlace_points(a_points, b_points) -> InterlaceBound:
    """Exact interlacing number of two finite point sets."""
    a = _normalize_points(a_points)
    b = _normalize_points(b_points)
    shared = set(a) & set(b)
    if shared:
        raise InvalidInputError(f"point sets share {sorted(shared)}")
    if not a or not b:
        return InterlaceBound(0, BoundKind.EXACT)
    merged = sorted([(p, "A") for p in a] + [(p, "B") for p in b])
    config = LabeledConfig(
        labels=tuple(lbl for _, lbl in merged),
        anchors=tuple(p for p, _ in merged),
    )
    return InterlaceBound(config.alternations // 2, BoundKind.EXACT)


def brute_force_interlace_points(a_points, b_points) -> int:
    """Independent oracle: maximal k over all alternating sub-selections."""
    a = _normalize_points(a_points)
    b = _normalize_points(b_points)
    if set(a) & set(b):
        raise InvalidInputError("point sets overlap")
    if not a or not b:
        return 0
    for k in range(min(len(a), len(b)), 0, -1):
        for sub_a in combinations(a, k):
            set_a = set(sub_a)
            for sub_b in combinations(b, k):
                merged = sorted(sub_a + sub_b)
                labels = ["A" if p in set_a else "B" for p in merged]
                if all(labels[i] != labels[(i + 1) % len(labels)] for i in range(len(labels))):
                    return k
    return 0


@dataclass(frozen=True)
class _Arc:
    """One circle-aware component: its span and an interior anchor."""

    start: Fraction
    end: Fraction
    anchor: Fraction


def _component_arcs(s: IntervalSet) -> list[_Arc]:
    arcs: list[_Arc] = []
    for comp in s.components():
        pieces = comp.intervals
        if len(pieces) > 1:  # joined across the seam
            start_piece = pieces[-1]
            start, end = start_piece.lo, pieces[0].hi
        else:
            start_piece = pieces[0]
            start, end = start_piece.lo, start_piece.hi
        if start_piece.is_point:
            anchor = start_piece.lo
        else:
            anchor = (start_piece.lo + start_piece.hi) / 2
        arcs.append(_Arc(start=start, end=end, anchor=anchor))
    return arcs


def labeled_config(a: IntervalSet, b: IntervalSet) -> LabeledConfig:
    """Component representatives of two disjoint sets, in cyclic order."""
    if not a.isdisjoint(b):
        raise InvalidInputError("interval sets overlap")
    entries = [(arc.anchor, "A") for arc in _component_arcs(a)]
    entries += [(arc.anchor, "B") for arc in _component_arcs(b)]
    entries.sort()
    return LabeledConfig(
        labels=tuple(lbl for _, lbl in entries),
        anchors=tuple(p for p, _ in entries),
    )


def interlace_intervals(a: IntervalSet, b: IntervalSet) -> InterlaceBound:
    """Exact interlacing number of two disjoint compact interval sets.

    Equals the point interlacing of one representative per component,
    which is maximal over all point sub-selections.
    """
    for name, s in (("first", a), ("second", b)):
        if not s.is_closed:
            raise InvalidInputError(f"{name} set is not compact (has open ends)")
    if not a.isdisjoint(b):
        raise InvalidInputError("interval sets overlap")
    if a.is_empty or b.is_empty:
        return InterlaceBound(0, BoundKind.EXACT)
    config = labeled_config(a, b)
    return InterlaceBound(config.alternations // 2, BoundKind.EXACT)


def _cyclic_midpoint(lo: Fraction, hi: Fraction) -> Fraction:
    """Midpoint of the counterclockwise arc from lo to hi."""
    if lo < hi:
        return (lo + hi) / 2
    return ((lo + hi + TWO) / 2) % TWO


def neighborhood_witness(
    a: IntervalSet, b: IntervalSet, k: int | None = None
) -> tuple[IntervalSet, IntervalSet]:
    """Disjoint open neighborhoods with exactly k components each.

    Each maximal run of same-labeled components widens to the midpoints of
    the gaps separating it from the neighboring opposite runs.  Any
    compact sandwich between the originals and these neighborhoods keeps
    the same interlacing number.
    """
    bound = interlace_intervals(a, b)
    if k is not None and k != bound.value:
        raise InvalidInputError(f"stated interlacing {k} != computed {bound.value}")
    if bound.value == 0:
        raise NoWitnessError("no witness exists for a 0-interlacing")

    entries = [(arc.anchor, "A", arc) for arc in _component_arcs(a)]
    entries += [(arc.anchor, "B", arc) for arc in _component_arcs(b)]
    entries.sort(key=lambda e: e[0])

    runs: list[tuple[str, list[_Arc]]] = []
    for _, label, arc in entries:
        if runs and runs[-1][0] == label:
            runs[-1][1].append(arc)
        else:
            runs.append((label, [arc]))
    if len(runs) >= 2 and runs[0][0] == runs[-1][0]:
        label, arcs = runs.pop()
        runs[0] = (label, arcs + runs[0][1])

    total = len(runs)
    u_raw: list[Interval] = []
    v_raw: list[Interval] = []
    for idx, (label, arcs) in enumerate(runs):
        prev_arcs = runs[(idx - 1) % total][1]
        next_arcs = runs[(idx + 1) % total][1]
        left = _cyclic_midpoint(prev_arcs[-1].end, arcs[0].start)
        right = _cyclic_midpoint(arcs[-1].end, next_arcs[0].start)
        widened = Interval(left, right, False, False)
        (u_raw if label == "A" else v_raw).append(widened)
    u = IntervalSet(u_raw)
    v = IntervalSet(v_raw)
    if u.n_components != bound.value or v.n_components != bound.value:
        raise PropertyViolation("witness lost components while widening")
    if not (a.issubset(u) and b.issubset(v) and u.isdisjoint(v)):
        raise PropertyViolation("witness fails containment or disjointness")
    return u, v


def cover_interlace(a: IntervalSet, b: IntervalSet, n: int) -> InterlaceBound:
    """Interlacing of the n-fold lifts; exactly n times the base number."""
    base = interlace_intervals(a, b)
    lifted = interlace_intervals(lift(a, n), lift(b, n))
    if lifted.value != n * base.value:
        raise PropertyViolation(
            f"cover multiplicativity failed: {lifted.value} != {n} * {base.value}"
        )
    return lifted


def whitehead_bound(k: int) -> InterlaceBound:
    """Inner-torus lower bound across one clasped double pass: 2k - 1."""
    if not isinstance(k, int) or k < 0:
        raise InvalidInputError(f"interlacing number must be a non-negative int: {k!r}")
    return InterlaceBound(max(0, 2 * k - 1), BoundKind.LOWER)


def mcmillan_bound(k: int, n: int) -> InterlaceBound:
    """Lower bound across a winding-n clasped pass: 2nk - 1.

    Strictly exceeds k whenever k >= 1 and n >= 2, which is what drives
    divergence along a nested chain.
    """
    if not isinstance(k, int) or k < 0:
        raise InvalidInputError(f"interlacing number must be a non-negative int: {k!r}")
    if not isinstance(n, int) or n < 1:
        raise InvalidInputError(f"order must be a positive integer: {n!r}")
    return InterlaceBound(max(0, 2 * n * k - 1), BoundKind.LOWER)
