"""Tour of the exact circle arithmetic: arcs, stages, halves, lifts.

Run with:  python3 demos/demo_circle_basics.py
"""

from fractions import Fraction as F

from genusone import IntervalSet, c1_c2, cantor_stage, closed_arc, lift, open_arc

print("The model circle has circumference 2: the base arc is [0, 1],")
print("everything outside it lives on (1, 2).\n")

stage = cantor_stage(3)
print("Middle-thirds construction, three levels deep:")
print("  remaining:", stage.remaining)
for i, level in enumerate(stage.removed_by_level, start=1):
    print(f"  removed at level {i}:", level)
print("  remaining measure:", stage.remaining.measure, "= (2/3)^3\n")

low, high = c1_c2(2)
print("The two halves of the construction, truncated at depth 2:")
print("  low  half:", low)
print("  high half:", high)
print("  disjoint:", low.isdisjoint(high), "\n")

print("Set algebra is exact and canonical:")
a = IntervalSet([open_arc(0, F(1, 2))])
b = IntervalSet([closed_arc(F(1, 3), F(2, 3))])
print("  a | b =", a.union(b))
print("  a & b =", a.intersection(b))
print("  a - b =", a.difference(b))
print("  ~a    =", a.complement(), "\n")

u1 = IntervalSet([open_arc(F(1, 3), F(2, 3))])
print("Lifting to the 3-fold cover scales by 1/3 and repeats 3 times:")
print("  lift(U1, 3) =", lift(u1, 3))
print("  measure preserved:", lift(u1, 3).measure == u1.measure)
