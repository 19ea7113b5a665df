"""Piecewise-affine maps: evaluation, images, composition, inversion."""

import random
from fractions import Fraction as F

import pytest

from genusone import (
    CompositionError,
    DomainError,
    Interval,
    IntervalSet,
    InvalidInputError,
    MapPiece,
    PLCircleMap,
    closed_arc,
    compose,
    invert,
    open_arc,
)

from genhelpers import random_pl_homeo, random_points, random_subset_of_unit

UNIT = IntervalSet([closed_arc(0, 1)])


def slope3_piece():
    return PLCircleMap([MapPiece(closed_arc(0, F(1, 9)), F(3), F(0))])


def test_apply_examples():
    ident = PLCircleMap.identity(UNIT)
    assert ident.apply(F(1, 3)) == F(1, 3)
    assert slope3_piece().apply(F(1, 27)) == F(1, 9)
    shifted = PLCircleMap([MapPiece(closed_arc(F(2, 3), 1), F(3), F(-2))])
    assert shifted.apply(F(7, 9)) == F(1, 3)


def test_apply_outside_domain():
    with pytest.raises(DomainError):
        slope3_piece().apply(F(1, 2))


def test_piece_validation():
    with pytest.raises(InvalidInputError):
        MapPiece(closed_arc(0, F(1, 2)), F(0), F(0))
    with pytest.raises(InvalidInputError):
        MapPiece(Interval(F(7, 4), F(1, 4)), F(1), F(0))  # wrapping domain
    with pytest.raises(InvalidInputError):
        MapPiece(closed_arc(0, 1), F(3), F(0))  # image leaves [0, 2]


def test_image_preimage_examples():
    ident = PLCircleMap.identity(UNIT)
    u1 = IntervalSet([open_arc(F(1, 3), F(2, 3))])
    assert ident.image(u1) == u1
    f = slope3_piece()
    assert f.image(IntervalSet([open_arc(F(1, 27), F(2, 27))])) == IntervalSet(
        [open_arc(F(1, 9), F(2, 9))]
    )
    assert f.preimage(IntervalSet([open_arc(F(1, 9), F(2, 9))])) == IntervalSet(
        [open_arc(F(1, 27), F(2, 27))]
    )


def test_adjunction_property():
    rng = random.Random(711)
    for _ in range(40):
        f = random_pl_homeo(rng)
        s = random_subset_of_unit(rng)
        pre = f.preimage(s)
        for x in random_points(rng, 6):
            x = x / 2  # bias into [0, 1]
            try:
                fx = f.apply(x)
            except DomainError:
                continue
            assert (x in pre) == (fx in s)
        img = f.image(pre)
        assert img.issubset(s)


def test_compose_identity_and_restriction():
    ident = PLCircleMap.identity(UNIT)
    f = slope3_piece()
    assert compose(ident, f) == f
    ff = compose(f, f)
    assert ff.pieces[0].domain == closed_arc(0, F(1, 27))
    assert ff.pieces[0].slope == 9
    assert ff.apply(F(1, 81)) == F(1, 9)


def test_compose_disjoint_errors():
    f = slope3_piece()  # image [0, 1/3]
    g = PLCircleMap([MapPiece(closed_arc(F(1, 2), 1), F(1), F(0))])
    with pytest.raises(CompositionError):
        compose(g, f)


def test_compose_associative():
    rng = random.Random(722)
    for _ in range(25):
        f = random_pl_homeo(rng)
        g = random_pl_homeo(rng)
        h = random_pl_homeo(rng)
        assert compose(h, compose(g, f)) == compose(compose(h, g), f)


def test_invert_examples():
    ident = PLCircleMap.identity(UNIT)
    assert invert(ident) == ident
    f = slope3_piece()
    finv = invert(f)
    assert finv.pieces[0].domain == closed_arc(0, F(1, 3))
    assert finv.pieces[0].slope == F(1, 3)


def test_invert_roundtrip():
    rng = random.Random(733)
    hits = 0
    while hits < 100:
        f = random_pl_homeo(rng)
        finv = invert(f)
        x = random_points(rng, 1)[0] / 2
        try:
            y = f.apply(x)
        except DomainError:
            continue
        assert finv.apply(y) == x
        hits += 1


def test_invert_rejects_non_injective():
    two_onto_one = PLCircleMap(
        [
            MapPiece(closed_arc(0, F(1, 4)), F(1), F(0)),
            MapPiece(closed_arc(F(1, 2), F(3, 4)), F(1), F(-1, 2)),
        ]
    )
    assert not two_onto_one.is_injective()
    with pytest.raises(InvalidInputError):
        invert(two_onto_one)


def test_overlapping_domains_rejected():
    with pytest.raises(InvalidInputError):
        PLCircleMap(
            [
                MapPiece(closed_arc(0, F(1, 2)), F(1), F(0)),
                MapPiece(closed_arc(F(1, 2), 1), F(1), F(0)),
            ]
        )


def test_adjacent_same_affine_pieces_merge():
    merged = PLCircleMap(
        [
            MapPiece(Interval(0, F(1, 2), True, True), F(1, 2), F(0)),
            MapPiece(Interval(F(1, 2), 1, False, True), F(1, 2), F(0)),
        ]
    )
    assert len(merged.pieces) == 1
    assert merged.pieces[0].domain == closed_arc(0, 1)


def test_records_roundtrip():
    rng = random.Random(744)
    for _ in range(10):
        f = random_pl_homeo(rng)
        assert PLCircleMap.from_records(f.to_records()) == f
