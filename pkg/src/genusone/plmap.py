"""Piecewise-affine partial self-maps of the model circle.

A map is a finite list of pieces, each an affine ``x -> slope*x + offset``
on one non-wrapping arc.  Pieces may reverse orientation (negative slope).
Maps are partial: the domain is whatever the pieces cover.  Images and
preimages of interval sets are exact, and the adjunction
``x in preimage(f, S)  iff  f(x) in S`` holds on the domain.

Global injectivity is not required at construction (distinct pieces may
share image arcs); it is checked only where it matters, by ``invert``.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction

from .circle import (
    TWO,
    Interval,
    IntervalSet,
    _clip_pieces,
    as_fraction,
    circle_point,
    format_rational,
)
from .errors import CompositionError, DomainError, InvalidInputError


def _affine_interval(ivl: Interval, slope: Fraction, offset: Fraction) -> Interval:
    a = slope * ivl.lo + offset
    b = slope * ivl.hi + offset
    if ivl.is_point:
        x = circle_point(a)
        return Interval(x, x, True, True)
    if slope > 0:
        lo, hi, lo_c, hi_c = a, b, ivl.lo_closed, ivl.hi_closed
    else:
        lo, hi, lo_c, hi_c = b, a, ivl.hi_closed, ivl.lo_closed
    if lo < 0 or hi > TWO:
        raise InvalidInputError(f"affine image {lo}..{hi} leaves the circle chart [0, 2]")
    if hi == TWO and hi_c:
        raise InvalidInputError("affine image may not close onto the seam point")
    return Interval(lo, hi, lo_c, hi_c)


@dataclass(frozen=True)
class MapPiece:
    """One affine piece: ``x -> slope*x + offset`` on a non-wrapping arc."""

    domain: Interval
    slope: Fraction
    offset: Fraction

    def __post_init__(self) -> None:
        slope = as_fraction(self.slope)
        offset = as_fraction(self.offset)
        if slope == 0:
            raise InvalidInputError("piece slope must be nonzero")
        if self.domain.wraps:
            raise InvalidInputError("piece domains may not cross the seam; split them")
        if self.domain.is_point:
            raise InvalidInputError("piece domains must have positive length")
        object.__setattr__(self, "slope", slope)
        object.__setattr__(self, "offset", offset)
        _affine_interval(self.domain, slope, offset)  # validates the image chart

    @property
    def image(self) -> Interval:
        return _affine_interval(self.domain, self.slope, self.offset)

    def apply(self, x: Fraction) -> Fraction:
        return self.slope * x + self.offset

    def invert_point(self, y: Fraction) -> Fraction:
        return (y - self.offset) / self.slope

    def to_record(self) -> dict:
        return {
            "domain": self.domain.to_record(),
            "slope": format_rational(self.slope),
            "offset": format_rational(self.offset),
        }

    @staticmethod
    def from_record(record: dict) -> "MapPiece":
        return MapPiece(
            Interval.from_record(record["domain"]),
            as_fraction(record["slope"]),
            as_fraction(record["offset"]),
        )


def _disjoint_in_order(a: Interval, b: Interval) -> bool:
    """a entirely left of b (sorted order), sharing at most an open endpoint."""
    if a.hi < b.lo:
        return True
    return a.hi == b.lo and not (a.hi_closed and b.lo_closed)


def _canonical_pieces(pieces) -> tuple[MapPiece, ...]:
    ordered = sorted(pieces, key=lambda p: (p.domain.lo, p.domain.hi))
    for left, right in zip(ordered, ordered[1:]):
        if not _disjoint_in_order(left.domain, right.domain):
            raise InvalidInputError(
                f"piece domains overlap: {left.domain} and {right.domain}"
            )
    merged: list[MapPiece] = []
    for piece in ordered:
        if merged:
            prev = merged[-1]
            abut = prev.domain.hi == piece.domain.lo and (
                prev.domain.hi_closed or piece.domain.lo_closed
            )
            if abut and prev.slope == piece.slope and prev.offset == piece.offset:
                merged[-1] = MapPiece(
                    Interval(
                        prev.domain.lo,
                        piece.domain.hi,
                        prev.domain.lo_closed,
                        piece.domain.hi_closed,
                    ),
                    prev.slope,
                    prev.offset,
                )
                continue
        merged.append(piece)
    return tuple(merged)


class PLCircleMap:
    """An exact piecewise-affine partial map of the circle."""

    __slots__ = ("_pieces", "_los", "_domain")

    def __init__(self, pieces):
        canon = _canonical_pieces(pieces)
        if not canon:
            raise InvalidInputError("a map needs at least one piece")
        object.__setattr__(self, "_pieces", canon)
        object.__setattr__(self, "_los", [p.domain.lo for p in canon])
        object.__setattr__(self, "_domain", IntervalSet(p.domain for p in canon))

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("PLCircleMap is immutable")

    @property
    def pieces(self) -> tuple[MapPiece, ...]:
        return self._pieces

    @property
    def total_domain(self) -> IntervalSet:
        return self._domain

    def __eq__(self, other) -> bool:
        if not isinstance(other, PLCircleMap):
            return NotImplemented
        return self._pieces == other._pieces

    def __hash__(self) -> int:
        return hash(self._pieces)

    def __repr__(self) -> str:
        return f"PLCircleMap<{len(self._pieces)} pieces>"

    @classmethod
    def identity(cls, domain: IntervalSet) -> "PLCircleMap":
        return cls(MapPiece(p, Fraction(1), Fraction(0)) for p in domain.intervals)

    def piece_at(self, x) -> MapPiece:
        x = circle_point(x)
        idx = bisect_right(self._los, x) - 1
        if idx >= 0:
            piece = self._pieces[idx]
            ivl = piece.domain
            if ivl.lo < x < ivl.hi or (x == ivl.lo and ivl.lo_closed) or (
                x == ivl.hi and ivl.hi_closed
            ):
                return piece
        raise DomainError(f"{x} is outside the map domain")

    def apply(self, x) -> Fraction:
        x = circle_point(x)
        return circle_point(self.piece_at(x).apply(x))

    def image(self, s: IntervalSet) -> IntervalSet:
        raw: list[Interval] = []
        for piece in self._pieces:
            for ivl in s.clip(piece.domain).intervals:
                raw.append(_affine_interval(ivl, piece.slope, piece.offset))
        return IntervalSet(raw)

    def preimage(self, s: IntervalSet) -> IntervalSet:
        raw: list[Interval] = []
        for piece in self._pieces:
            hit = s.clip(piece.image)
            inv_slope = 1 / piece.slope
            inv_offset = -piece.offset / piece.slope
            for ivl in hit.intervals:
                raw.append(_affine_interval(ivl, inv_slope, inv_offset))
        return IntervalSet(raw)

    def is_injective(self) -> bool:
        images = sorted((p.image for p in self._pieces), key=lambda i: (i.lo, i.hi))
        return all(_disjoint_in_order(a, b) for a, b in zip(images, images[1:]))

    def to_records(self) -> list[dict]:
        return [p.to_record() for p in self._pieces]

    @staticmethod
    def from_records(records) -> "PLCircleMap":
        return PLCircleMap(MapPiece.from_record(r) for r in records)


def compose(g: PLCircleMap, f: PLCircleMap) -> PLCircleMap:
    """The composite g after f, restricted to where it is defined.

    The domain is the part of f's domain whose image lands in g's domain
    (isolated single points where pieces merely touch are dropped).
    """
    out: list[MapPiece] = []
    for fp in f.pieces:
        image = fp.image
        inv_slope = 1 / fp.slope
        inv_offset = -fp.offset / fp.slope
        for gp in g.pieces:
            overlap = _clip_pieces(image, gp.domain)
            if overlap is None or overlap.is_point:
                continue
            sub_domain = _affine_interval(overlap, inv_slope, inv_offset)
            out.append(
                MapPiece(
                    sub_domain,
                    gp.slope * fp.slope,
                    gp.slope * fp.offset + gp.offset,
                )
            )
    if not out:
        raise CompositionError("composite has empty domain")
    return PLCircleMap(out)


def invert(f: PLCircleMap) -> PLCircleMap:
    """Inverse of a globally injective map; errors otherwise."""
    if not f.is_injective():
        raise InvalidInputError("map is not injective; pieces share image points")
    out = [
        MapPiece(p.image, 1 / p.slope, -p.offset / p.slope)
        for p in f.pieces
    ]
    return PLCircleMap(out)
