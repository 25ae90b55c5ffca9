"""Orbit samples and density measurements.

The translation pair (x+1, x+sqrt(2)) generates orbits whose coverage gap in
[0,1] shrinks as the word-ball radius grows; the unit-translation action
stays locked to the integers no matter the radius.
"""

from lineact import Interval, coverage_gap, gallery, orbit

act = gallery("ex_1_2", alpha="sqrt2")
window = Interval.closed(0, 1)

print("-- coverage gap of the sqrt(2) translation lattice in [0,1] --")
for L in (4, 5, 8, 10, 20, 50):
    pts = orbit(act, 0, L)
    gap = coverage_gap(pts, window)
    inside = sum(1 for p in pts if 0 <= float(p.value.mid()) <= 1)
    print(f"radius {L:3d}: {inside:4d} points in window, gap = "
          f"{float(gap.mid()):.6f}")

print()
print("-- orbit points carry shortlex-first witness words --")
for p in orbit(act, 0, 5):
    v = float(p.value.mid())
    if 0 <= v <= 1:
        print(f"  {v:.6f}  <- {p.word}")

print()
print("-- integer translations never densify --")
act1 = gallery("ex_1_1")
for L in (5, 20, 60):
    gap = coverage_gap(orbit(act1, 0, L), Interval.closed(-3, 3))
    print(f"radius {L:3d}: gap = {float(gap.mid()):.3f}")
