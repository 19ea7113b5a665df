"""Interlacing numbers, witnesses, cover multiplicativity, lower bounds."""

import random
from fractions import Fraction as F

import pytest

from genusone import (
    BoundKind,
    IntervalSet,
    InvalidInputError,
    NoWitnessError,
    brute_force_interlace_points,
    c1_c2,
    closed_arc,
    cover_interlace,
    interlace_intervals,
    interlace_points,
    labeled_config,
    lift,
    mcmillan_bound,
    neighborhood_witness,
    open_arc,
    point_arc,
    whitehead_bound,
)

from genhelpers import random_disjoint_compact_pair, random_point_config


def iset(*pairs):
    return IntervalSet([closed_arc(lo, hi) for lo, hi in pairs])


# -- points --------------------------------------------------------------------


def test_point_examples():
    assert interlace_points([F(1, 8), F(5, 8)], [F(3, 8), F(7, 8)]).value == 2
    assert interlace_points([F(1, 8), F(2, 8)], [F(5, 8), F(6, 8)]).value == 1
    empty = interlace_points([F(1, 8)], [])
    assert empty.value == 0 and empty.kind is BoundKind.EXACT


def test_point_overlap_rejected():
    with pytest.raises(InvalidInputError):
        interlace_points([F(1, 2)], [F(1, 2), F(3, 4)])


def test_points_match_oracle():
    rng = random.Random(912)
    for _ in range(150):
        a, b = random_point_config(rng, max_each=5)
        assert interlace_points(a, b).value == brute_force_interlace_points(a, b)


def test_point_symmetry():
    rng = random.Random(913)
    for _ in range(50):
        a, b = random_point_config(rng)
        assert interlace_points(a, b).value == interlace_points(b, a).value


# -- interval sets ---------------------------------------------------------------


def test_interval_examples():
    low, high = c1_c2(1)
    assert interlace_intervals(low, high).value == 1
    three_three = interlace_intervals(
        iset((0, F(1, 8)), (F(1, 2), F(5, 8)), (1, F(9, 8))),
        iset((F(1, 4), F(3, 8)), (F(3, 4), F(7, 8)), (F(3, 2), F(13, 8))),
    )
    assert three_three.value == 3
    adjacent_pair = interlace_intervals(
        iset((0, F(1, 8)), (F(1, 4), F(3, 8))), iset((F(5, 8), F(6, 8)))
    )
    assert adjacent_pair.value == 1


def test_interval_input_validation():
    with pytest.raises(InvalidInputError):
        interlace_intervals(IntervalSet([open_arc(0, F(1, 4))]), iset((F(1, 2), 1)))
    with pytest.raises(InvalidInputError):
        interlace_intervals(iset((0, F(1, 2))), iset((F(1, 4), F(3, 4))))


def test_interval_empty_is_zero():
    assert interlace_intervals(iset((0, F(1, 4))), IntervalSet.empty()).value == 0


def test_interval_equals_component_representatives():
    rng = random.Random(914)
    for _ in range(120):
        a, b = random_disjoint_compact_pair(rng)
        config = labeled_config(a, b)
        reps_a = [p for p, lbl in zip(config.anchors, config.labels) if lbl == "A"]
        reps_b = [p for p, lbl in zip(config.anchors, config.labels) if lbl == "B"]
        expected = interlace_points(reps_a, reps_b).value
        assert interlace_intervals(a, b).value == expected


def test_interval_symmetry_and_bound():
    rng = random.Random(915)
    for _ in range(60):
        a, b = random_disjoint_compact_pair(rng)
        k = interlace_intervals(a, b).value
        assert k == interlace_intervals(b, a).value
        assert k <= min(a.n_components, b.n_components)


def test_monotone_under_superset():
    rng = random.Random(916)
    grown = 0
    for _ in range(200):
        a, b = random_disjoint_compact_pair(rng)
        c, d = random_disjoint_compact_pair(rng)
        big_a, big_b = a.union(c), b.union(d)
        if not big_a.isdisjoint(big_b):
            continue
        grown += 1
        assert (
            interlace_intervals(big_a, big_b).value >= interlace_intervals(a, b).value
        )
    assert grown > 20


# -- neighborhood witnesses -------------------------------------------------------


def test_witness_examples():
    a = IntervalSet([point_arc(F(1, 8)), point_arc(F(5, 8))])
    b = IntervalSet([point_arc(F(3, 8)), point_arc(F(7, 8))])
    u, v = neighborhood_witness(a, b)
    assert u.n_components == 2 and v.n_components == 2
    assert u.isdisjoint(v) and a.issubset(u) and b.issubset(v)

    low, high = c1_c2(1)
    u1, v1 = neighborhood_witness(low, high, 1)
    assert u1.n_components == 1 and v1.n_components == 1


def test_witness_rejections():
    with pytest.raises(NoWitnessError):
        neighborhood_witness(iset((0, F(1, 4))), IntervalSet.empty())
    with pytest.raises(InvalidInputError):
        neighborhood_witness(c1_c2(1)[0], c1_c2(1)[1], 2)


def test_witness_sandwich_property():
    # any compact set squeezed between the originals and the open witness
    # keeps the interlacing number
    rng = random.Random(917)
    checked = 0
    while checked < 60:
        a, b = random_disjoint_compact_pair(rng)
        k = interlace_intervals(a, b).value
        if k == 0:
            continue
        u, v = neighborhood_witness(a, b)

        def grow(base, nbhd):
            extra = []
            for comp in nbhd.components():
                arc = comp.intervals[rng.randrange(len(comp.intervals))]
                if not arc.is_point:
                    third = arc.length / 3
                    extra.append(closed_arc(arc.lo + third, arc.hi - third))
            return base.union(IntervalSet(extra))

        sand_a = grow(a, u)
        sand_b = grow(b, v)
        assert a.issubset(sand_a) and sand_a.issubset(u)
        assert b.issubset(sand_b) and sand_b.issubset(v)
        assert interlace_intervals(sand_a, sand_b).value == k
        checked += 1


# -- cover lifts --------------------------------------------------------------------


def test_cover_examples():
    low, high = c1_c2(1)
    assert cover_interlace(low, high, 2).value == 2
    a = iset((0, F(1, 8)), (F(1, 2), F(5, 8)))
    b = iset((F(1, 4), F(3, 8)), (F(3, 4), F(7, 8)))
    assert interlace_intervals(a, b).value == 2
    assert cover_interlace(a, b, 3).value == 6
    assert cover_interlace(a, IntervalSet.empty(), 4).value == 0


def test_cover_multiplicative_random():
    rng = random.Random(918)
    for _ in range(60):
        a, b = random_disjoint_compact_pair(rng)
        n = rng.randint(1, 5)
        base = interlace_intervals(a, b).value
        assert cover_interlace(a, b, n).value == n * base
        assert interlace_intervals(lift(a, n), lift(b, n)).value == n * base


# -- lower bounds -----------------------------------------------------------------


def test_whitehead_bound():
    assert whitehead_bound(1).value == 1
    assert whitehead_bound(0).value == 0
    assert whitehead_bound(3).value == 5
    assert whitehead_bound(2).kind is BoundKind.LOWER


def test_mcmillan_bound():
    assert mcmillan_bound(1, 2).value == 3
    assert mcmillan_bound(2, 3).value == 11
    assert mcmillan_bound(0, 5).value == 0
    for k in range(1, 6):
        for n in range(2, 6):
            assert mcmillan_bound(k, n).value > k


def test_bound_monotone_in_k():
    for n in range(1, 6):
        values = [mcmillan_bound(k, n).value for k in range(8)]
        assert values == sorted(values)


def test_bound_validation():
    with pytest.raises(InvalidInputError):
        whitehead_bound(-1)
    with pytest.raises(InvalidInputError):
        mcmillan_bound(1, 0)
