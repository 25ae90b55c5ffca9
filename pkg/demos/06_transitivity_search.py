"""Breadth-first search for words carrying one interval onto another.

The search walks the deduplicated word ball in shortlex order with
incremental rigorous interval images, so the first hit is the
shortlex-least witness.  Absence within the radius is a definite negative
for the whole ball.
"""

from fractions import Fraction

from lineact import Interval, gallery, transitivity_search

print("-- the free action of x+1 and x^3 reaches far targets fast --")
act = gallery("free_transitive")
U = Interval.open(Fraction(1, 10), Fraction(1, 5))
for target in ((2, 3), (Fraction(21, 2), Fraction(53, 5)),
               (-40, -39), (100, 101)):
    V = Interval.open(*target)
    w = transitivity_search(act, U, V, 12)
    print(f"  {U} -> {V}: witness {w}")

print()
print("-- translation lattice: witnesses are lattice vectors --")
act2 = gallery("ex_1_2", alpha="sqrt2")
w = transitivity_search(
    act2,
    Interval.open(0, Fraction(1, 10)),
    Interval.open(Fraction(2, 5), Fraction(9, 20)),
    2,
)
print("  witness:", w, " (translation by sqrt(2) - 1)")

print()
print("-- integer translations cannot bridge fractional offsets --")
act1 = gallery("ex_1_1")
w = transitivity_search(
    act1,
    Interval.open(0, Fraction(3, 10)),
    Interval.open(Fraction(1, 2), Fraction(4, 5)),
    15,
)
print("  witness within radius 15:", w)
