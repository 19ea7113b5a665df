"""Order-n tube decompositions of the base arc and their verification.

For a given order ``n`` there is a unique pair ``(m, k)`` with
``2^m + 2k = 4n < 2^(m+1)`` and ``k < 2^(m-1)``.  Removing the first ``m``
middle-thirds levels from ``[0, 1]``, and then the middle thirds of the
first ``k`` and last ``k`` of the remaining stage-``m`` arcs, leaves
exactly ``4n`` closed tube intervals: ``4k`` of length ``3^-(m+1)`` and
``2^m - 2k`` of length ``3^-m``.

A tube plan equips each tube with a target half (``[0, 1/3]`` or
``[2/3, 1]``) and an orientation, and induces a circle shadow map that

* stretches each tube affinely onto its target,
* carries the outer arc and the first removal level into the outer arc,
* carries every other removed component into the first removal level.

``verify_setup`` checks the three setup conditions at a finite depth:

1. the two construction halves map into (truncations of) themselves,
2. the outer arc together with the first removal level maps into the
   outer arc, and
3. every component of the image of removal level ``i >= 2`` lies inside
   a single removal level ``j < i`` (the outer arc counts as level 0).

The stretch of a tube of stage ``s`` shifts removal levels down by
``l = s - 1`` (so ``l`` is ``m - 1`` or ``m``); ``verify_index_shift``
checks this level shift and the alignment of the construction dust tube
by tube.  The checks are depth-truncated; the affine self-similarity of
the construction makes them depth-uniform, which the test suite asserts
empirically.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .circle import (
    HIGH_THIRD,
    LOW_THIRD,
    OUTER_ARC,
    Interval,
    IntervalSet,
    c1_c2,
    cantor_stage,
)
from .errors import (
    DepthError,
    InvalidInputError,
    InvalidTubeError,
    PlanError,
)
from .plmap import MapPiece, PLCircleMap, compose

_SEARCH_BUDGET_ENV = "TORUS_LEDGER_MAX_SEARCH"
_DEFAULT_SEARCH_BUDGET = 4096

ONE_THIRD = Fraction(1, 3)


class Side(Enum):
    """Which half of the base arc a tube is stretched onto."""

    LOW = "low"
    HIGH = "high"

    @property
    def target(self) -> Interval:
        return LOW_THIRD if self is Side.LOW else HIGH_THIRD


@dataclass(frozen=True)
class TubeParams:
    """The unique (m, k) with 2^m + 2k = 4n < 2^(m+1) and k < 2^(m-1)."""

    n: int
    m: int
    k: int


def tube_parameters(n: int) -> TubeParams:
    if not isinstance(n, int) or n < 1:
        raise InvalidInputError(f"order must be a positive integer, got {n!r}")
    m = (4 * n).bit_length() - 1
    k = (4 * n - 2**m) // 2
    assert 2**m + 2 * k == 4 * n < 2 ** (m + 1) and k < 2 ** (m - 1)
    return TubeParams(n, m, k)


@dataclass(frozen=True)
class Tube:
    interval: Interval
    side: Side
    orientation: int


@dataclass(frozen=True)
class TubePlan:
    params: TubeParams
    u_tilde: IntervalSet
    tubes: tuple[Tube, ...]
    shadow: PLCircleMap

    def tube_piece(self, tube: Tube) -> MapPiece:
        for piece in self.shadow.pieces:
            if piece.domain == tube.interval:
                return piece
        raise PlanError(f"shadow has no piece over tube {tube.interval}")

    def to_doc(self) -> dict:
        return {
            "order": self.params.n,
            "m": self.params.m,
            "k": self.params.k,
            "u_tilde": self.u_tilde.to_records(),
            "tubes": [
                {
                    "interval": t.interval.to_record(),
                    "side": t.side.value,
                    "orientation": t.orientation,
                }
                for t in self.tubes
            ],
            "shadow": self.shadow.to_records(),
        }


def _tube_intervals(params: TubeParams) -> tuple[list[Interval], list[Interval]]:
    """The 4n tube intervals plus the 2k arcs removed from level m+1."""
    m, k = params.m, params.k
    stage = cantor_stage(m + 1)
    stage_m = list(cantor_stage(m).remaining.intervals)
    level_m1 = list(stage.removed_by_level[m].intervals)  # one mid per stage-m arc
    tubes: list[Interval] = []
    removed_mids: list[Interval] = []
    total = len(stage_m)
    for i, arc in enumerate(stage_m):
        if i < k or i >= total - k:
            mid = level_m1[i]
            tubes.append(Interval(arc.lo, mid.lo, True, True))
            tubes.append(Interval(mid.hi, arc.hi, True, True))
            removed_mids.append(mid)
        else:
            tubes.append(arc)
    return tubes, removed_mids


def default_assignment(n: int) -> list[tuple[Side, int]]:
    """Side follows the half each tube lives in; orientations alternate."""
    params = tube_parameters(n)
    intervals, _ = _tube_intervals(params)
    out: list[tuple[Side, int]] = []
    for idx, ivl in enumerate(intervals):
        side = Side.LOW if ivl.hi <= ONE_THIRD else Side.HIGH
        out.append((side, 1 if idx % 2 == 0 else -1))
    return out


def _tube_map_piece(ivl: Interval, side: Side, orientation: int) -> MapPiece:
    target = side.target
    ratio = target.length / ivl.length
    if orientation == 1:
        slope = ratio
        offset = target.lo - slope * ivl.lo
    else:
        slope = -ratio
        offset = target.hi + ratio * ivl.lo
    return MapPiece(ivl, slope, offset)


def build_tube_plan(n: int, assignment=None) -> TubePlan:
    """Build the order-n plan; ``assignment`` overrides sides/orientations.

    ``assignment`` is a sequence of 4n entries, each a ``Side`` or a
    ``(Side, +-1)`` pair, listed in increasing tube order.  The sides must
    be balanced (2n per half): each half carries one of the two meridional
    circles every strand crosses, so an unbalanced plan cannot describe an
    order-n link.
    """
    params = tube_parameters(n)
    intervals, removed_mids = _tube_intervals(params)
    if assignment is None:
        entries = default_assignment(n)
    else:
        entries = []
        for item in assignment:
            if isinstance(item, Side):
                entries.append((item, 1))
            else:
                side, orientation = item
                if not isinstance(side, Side) or orientation not in (1, -1):
                    raise PlanError(f"bad assignment entry: {item!r}")
                entries.append((side, orientation))
        if len(entries) != len(intervals):
            raise PlanError(
                f"assignment has {len(entries)} entries, plan needs {len(intervals)}"
            )
    low_count = sum(1 for side, _ in entries if side is Side.LOW)
    if 2 * low_count != len(intervals):
        raise PlanError(
            f"assignment is unbalanced: {low_count} low of {len(intervals)}; "
            "each half must receive 2n tubes"
        )

    tubes = tuple(
        Tube(ivl, side, orientation)
        for ivl, (side, orientation) in zip(intervals, entries)
    )
    pieces = [_tube_map_piece(t.interval, t.side, t.orientation) for t in tubes]

    # Outer arc and first removal level contract into the outer arc.
    pieces.append(MapPiece(OUTER_ARC, Fraction(1, 2), Fraction(1, 2)))
    first_level = Interval(ONE_THIRD, Fraction(2, 3), False, False)
    pieces.append(MapPiece(first_level, Fraction(1, 2), Fraction(4, 3)))

    # Every other removed component lands in its own slot inside the
    # first removal level, so deeper levels always drop to level 1.
    slack: list[Interval] = []
    stage = cantor_stage(params.m)
    for level in range(2, params.m + 1):
        slack.extend(stage.removed_by_level[level - 1].intervals)
    slack.extend(removed_mids)
    width = ONE_THIRD / len(slack)
    for j, comp in enumerate(slack):
        slot_lo = ONE_THIRD + j * width
        slope = width / comp.length
        pieces.append(MapPiece(comp, slope, slot_lo - slope * comp.lo))

    return TubePlan(
        params=params,
        u_tilde=IntervalSet(removed_mids),
        tubes=tubes,
        shadow=PLCircleMap(pieces),
    )


# -- index-shift verification ----------------------------------------------


def _stage_of(tube: Interval) -> int:
    """Stage s with length 3^-s, or raise if the arc is no stage interval."""
    if tube.wraps or not (tube.lo_closed and tube.hi_closed) or tube.is_point:
        raise InvalidTubeError(f"{tube} is not a closed positive arc")
    length = tube.length
    if length.numerator != 1:
        raise InvalidTubeError(f"{tube} has length {length}, not a power of 1/3")
    s = 0
    den = length.denominator
    while den % 3 == 0:
        den //= 3
        s += 1
    if den != 1:
        raise InvalidTubeError(f"{tube} has length {length}, not a power of 1/3")
    remaining = cantor_stage(s).remaining
    if not IntervalSet((tube,)).issubset(remaining):
        raise InvalidTubeError(f"{tube} is not a stage-{s} remaining interval")
    return s


def _power_of_three(ratio: Fraction) -> int | None:
    if ratio.denominator != 1:
        return None
    value = ratio.numerator
    power = 0
    while value % 3 == 0:
        value //= 3
        power += 1
    return power if value == 1 else None


def _check_shift(piece: MapPiece, stage: int, depth: int) -> tuple[int, bool]:
    """Level-shift and dust alignment of one affine stretch, at a depth.

    The stretch must carry removal level ``i`` inside the tube exactly onto
    level ``i - l`` inside its image, for all ``stage < i <= depth``, and the
    depth-``depth`` dust onto the depth-``(depth - l)`` dust of the image,
    where ``3^l`` is the expansion ratio.
    """
    ell = _power_of_three(abs(piece.slope))
    if ell is None or ell > stage:
        raise InvalidInputError(
            f"stretch ratio {abs(piece.slope)} is not a level shift for a "
            f"stage-{stage} interval"
        )
    image = piece.image
    mini = PLCircleMap((piece,))
    full = cantor_stage(depth)
    for i in range(stage + 1, depth + 1):
        got = mini.image(full.removed_by_level[i - 1])
        want = full.removed_by_level[i - ell - 1]
        if got != want.clip(image):
            return ell, False
    got = mini.image(full.remaining)
    want = cantor_stage(depth - ell).remaining.clip(image)
    if got != want:
        return ell, False
    return ell, True


def verify_index_shift(tube: Interval, target, depth: int, orientation: int = 1):
    """Check one tube stretch; returns ``(l, passed)``.

    ``target`` is a ``Side`` or an explicit closed arc.  The affine map
    carries ``tube`` onto ``target`` with the given orientation; a target
    of the same length as the tube gives the identity-style shift l = 0.
    """
    if isinstance(target, Side):
        target = target.target
    if not isinstance(target, Interval):
        raise InvalidInputError(f"target must be a Side or Interval, got {target!r}")
    if orientation not in (1, -1):
        raise InvalidInputError(f"orientation must be +1 or -1, got {orientation!r}")
    stage = _stage_of(tube)
    if not isinstance(depth, int) or depth < stage + 1:
        raise InvalidInputError(f"depth must exceed the tube stage {stage}")
    ratio = target.length / tube.length
    if _power_of_three(ratio) is None:
        raise InvalidInputError(
            f"target length {target.length} is not a power-of-3 multiple of "
            f"the tube length {tube.length}"
        )
    if orientation == 1:
        slope = ratio
        offset = target.lo - slope * tube.lo
    else:
        slope = -ratio
        offset = target.hi + ratio * tube.lo
    return _check_shift(MapPiece(tube, slope, offset), stage, depth)


# -- setup verification ------------------------------------------------------


@dataclass(frozen=True)
class SetupReport:
    """Outcome of the depth-truncated setup checks for one plan."""

    n: int
    depth: int
    cond_halves: bool
    cond_outer: bool
    cond_drop: tuple[tuple[int, bool], ...]
    shift_checks: tuple[tuple[Interval, int, bool], ...]

    @property
    def passed(self) -> bool:
        return (
            self.cond_halves
            and self.cond_outer
            and all(ok for _, ok in self.cond_drop)
            and all(ok for _, _, ok in self.shift_checks)
        )

    def to_doc(self) -> dict:
        return {
            "order": self.n,
            "depth": self.depth,
            "halves_into_halves": self.cond_halves,
            "outer_into_outer": self.cond_outer,
            "drop_by_level": [[i, ok] for i, ok in self.cond_drop],
            "shift_checks": [
                {"tube": ivl.to_record(), "shift": ell, "passed": ok}
                for ivl, ell, ok in self.shift_checks
            ],
            "passed": self.passed,
        }


def verify_setup(plan: TubePlan, depth: int) -> SetupReport:
    """Run the three setup conditions and the per-tube shift checks."""
    m = plan.params.m
    if not isinstance(depth, int) or depth < m + 2:
        raise DepthError(f"setup verification needs depth >= {m + 2}, got {depth!r}")
    shadow = plan.shadow
    stage = cantor_stage(depth)
    outer = IntervalSet((OUTER_ARC,))
    levels: dict[int, IntervalSet] = {0: outer}
    for i in range(1, depth + 1):
        levels[i] = stage.removed_by_level[i - 1]

    low_fine, high_fine = c1_c2(depth)
    low_coarse, high_coarse = c1_c2(depth - m)
    cond_halves = shadow.image(low_fine).issubset(low_coarse) and shadow.image(
        high_fine
    ).issubset(high_coarse)

    cond_outer = shadow.image(outer.union(levels[1])).issubset(outer)

    drop: list[tuple[int, bool]] = []
    for i in range(2, depth + 1):
        image = shadow.image(levels[i])
        ok = all(
            any(comp.issubset(levels[j]) for j in range(i))
            for comp in image.components()
        )
        drop.append((i, ok))

    shifts: list[tuple[Interval, int, bool]] = []
    for tube in plan.tubes:
        piece = plan.tube_piece(tube)
        tube_stage = _stage_of(tube.interval)
        if piece.image != tube.side.target:
            ell = _power_of_three(abs(piece.slope))
            shifts.append((tube.interval, ell if ell is not None else -1, False))
            continue
        ell, ok = _check_shift(piece, tube_stage, depth)
        shifts.append((tube.interval, ell, ok))

    return SetupReport(
        n=plan.params.n,
        depth=depth,
        cond_halves=cond_halves,
        cond_outer=cond_outer,
        cond_drop=tuple(drop),
        shift_checks=tuple(shifts),
    )


def _search_budget(max_search: int | None) -> int:
    if max_search is not None:
        return max_search
    raw = os.environ.get(_SEARCH_BUDGET_ENV)
    if raw is None:
        return _DEFAULT_SEARCH_BUDGET
    try:
        return max(1, int(raw))
    except ValueError:
        raise InvalidInputError(f"{_SEARCH_BUDGET_ENV} must be an integer, got {raw!r}")


def _tube_candidates(ivl: Interval, depth: int, coarse_depth: int) -> list[tuple[Side, int]]:
    """Sides/orientations under which one tube passes its local checks."""
    stage = _stage_of(ivl)
    window = IntervalSet((ivl,))
    low_fine, high_fine = c1_c2(depth)
    low_coarse, high_coarse = c1_c2(coarse_depth)
    out: list[tuple[Side, int]] = []
    for side in (Side.LOW, Side.HIGH):
        for orientation in (1, -1):
            piece = _tube_map_piece(ivl, side, orientation)
            mini = PLCircleMap((piece,))
            _, ok = _check_shift(piece, stage, depth)
            if not ok:
                continue
            if not mini.image(low_fine.clip(ivl)).issubset(low_coarse):
                continue
            if not mini.image(high_fine.clip(ivl)).issubset(high_coarse):
                continue
            out.append((side, orientation))
    return out


def find_verified_plan(
    n: int, depth: int | None = None, max_search: int | None = None
) -> tuple[TubePlan, SetupReport]:
    """Default assignment first; bounded per-tube repair search on failure.

    The side conditions decompose tube by tube, so the search filters each
    tube's candidate sides locally and only then re-verifies whole plans,
    never silently returning an unverified plan.  ``TORUS_LEDGER_MAX_SEARCH``
    caps the number of whole-plan verifications.
    """
    params = tube_parameters(n)
    if depth is None:
        depth = params.m + 3
    plan = build_tube_plan(n)
    report = verify_setup(plan, depth)
    if report.passed:
        return plan, report

    budget = _search_budget(max_search)
    intervals, _ = _tube_intervals(params)
    per_tube = [_tube_candidates(ivl, depth, depth - params.m) for ivl in intervals]
    if any(not options for options in per_tube):
        raise PropertyViolation(f"a tube of the order-{n} plan admits no passing stretch")

    def assignments():
        def rec(idx, chosen):
            if idx == len(per_tube):
                yield list(chosen)
                return
            for option in per_tube[idx]:
                chosen.append(option)
                yield from rec(idx + 1, chosen)
                chosen.pop()

        yield from rec(0, [])

    tried = 0
    for candidate in assignments():
        low = sum(1 for side, _ in candidate if side is Side.LOW)
        if 2 * low != len(candidate):
            continue
        tried += 1
        if tried > budget:
            raise PlanError(
                f"no verified assignment for order {n} within the search budget {budget}"
            )
        plan = build_tube_plan(n, candidate)
        report = verify_setup(plan, depth)
        if report.passed:
            return plan, report
    raise PlanError(f"no assignment of the order-{n} plan passes verification")


# -- inductive chains --------------------------------------------------------


@dataclass(frozen=True)
class StepReport:
    level: int
    order: int
    setup_passed: bool
    v0_strictly_nested: bool
    halves_nested: bool
    drop_nested: bool

    @property
    def passed(self) -> bool:
        return (
            self.setup_passed
            and self.v0_strictly_nested
            and self.halves_nested
            and self.drop_nested
        )

    def to_doc(self) -> dict:
        return {
            "level": self.level,
            "order": self.order,
            "setup_passed": self.setup_passed,
            "v0_strictly_nested": self.v0_strictly_nested,
            "halves_nested": self.halves_nested,
            "drop_nested": self.drop_nested,
        }


@dataclass(frozen=True)
class InductionReport:
    depth: int
    steps: tuple[StepReport, ...]
    v0_chain: tuple[IntervalSet, ...]

    @property
    def passed(self) -> bool:
        return all(step.passed for step in self.steps)

    def to_doc(self) -> dict:
        return {
            "depth": self.depth,
            "steps": [s.to_doc() for s in self.steps],
            "v0_chain": [s.to_records() for s in self.v0_chain],
            "passed": self.passed,
        }


def build_induction(orders, depth: int) -> tuple[list[PLCircleMap], InductionReport]:
    """Chain the shadows of the given orders and verify the nesting laws.

    Step ``k`` composes the order-``n_k`` shadow onto the chain and checks,
    against the previous chain map, that

    * the pullback of the outer arc grew strictly,
    * the pullbacks of the half truncations nested (the earlier stage is
      taken ``m_k`` levels deeper, since the stretch coarsens truncations
      by at most ``m_k`` levels), and
    * the pullback of each removal level ``j`` landed inside the pullbacks
      of levels below ``j``.

    Returns the chain maps plus a replayable report.
    """
    orders = list(orders)
    for n in orders:
        if not isinstance(n, int) or n < 1:
            raise InvalidInputError(f"orders must be positive integers, got {n!r}")
    if not isinstance(depth, int) or depth < 2:
        raise InvalidInputError(f"induction depth must be an integer >= 2, got {depth!r}")

    outer = IntervalSet((OUTER_ARC,))
    if not orders:
        return [], InductionReport(depth=depth, steps=(), v0_chain=(outer,))

    levels = cantor_stage(depth).removed_by_level

    def pull(chain: PLCircleMap | None, s: IntervalSet) -> IntervalSet:
        return s if chain is None else chain.preimage(s)

    maps: list[PLCircleMap] = []
    steps: list[StepReport] = []
    v0_chain: list[IntervalSet] = [outer]
    previous: PLCircleMap | None = None
    for level_index, n in enumerate(orders, start=1):
        params = tube_parameters(n)
        step_depth = max(depth, params.m + 2)
        plan, setup = find_verified_plan(n, step_depth)
        chain = plan.shadow if previous is None else compose(plan.shadow, previous)

        v0_prev = pull(previous, outer)
        v0_cur = chain.preimage(outer)
        v0_ok = v0_prev.issubset(v0_cur) and v0_prev != v0_cur

        low_fine, high_fine = c1_c2(depth + params.m)
        low_base, high_base = c1_c2(depth)
        halves_ok = pull(previous, low_fine).issubset(chain.preimage(low_base)) and pull(
            previous, high_fine
        ).issubset(chain.preimage(high_base))

        drop_ok = True
        below = v0_cur
        for j in range(1, depth + 1):
            if not pull(previous, levels[j - 1]).issubset(below):
                drop_ok = False
                break
            below = below.union(chain.preimage(levels[j - 1]))

        steps.append(
            StepReport(
                level=level_index,
                order=n,
                setup_passed=setup.passed,
                v0_strictly_nested=v0_ok,
                halves_nested=halves_ok,
                drop_nested=drop_ok,
            )
        )
        maps.append(chain)
        v0_chain.append(v0_cur)
        previous = chain

    return maps, InductionReport(depth=depth, steps=tuple(steps), v0_chain=tuple(v0_chain))
