"""The finite-depth nested-interval construction.

Each level finds a word moving a point rightward inside the previous
interval, shrinks a neighborhood until it separates from its image, lays a
grid fine enough for the level index, and takes a maximal gap of the grid's
orbit as the next interval.  The element sets double per level and their
images of the deepest interval form pairwise disjoint unions.

Search radius 5 provably gets stuck at depth 2 for this action: the
gentlest mover available in that ball steps points by a quarter-exponent
power, wider than any level-2 gap.  Radius 7 with a grid-only invariant
stand-in builds all three levels; the independent checker then re-verifies
every condition over the full radius-7 ball.
"""

import json

from lineact import (
    ConstructionFailed,
    LadderParams,
    cantor_ladder,
    check_ladder,
    gallery,
)
from lineact.report import ladder_json

act = gallery("ex_1_4", k=2)

print("-- the stated small radius gets stuck honestly --")
try:
    cantor_ladder(act, 3, 5)
except ConstructionFailed as exc:
    print("radius 5:", exc)
    print("partial depth:", len(exc.partial.levels))

print()
print("-- radius 7 reaches depth 3 --")
lad = cantor_ladder(act, 3, 7, params=LadderParams(orbit_depth=0))
for lvl in lad.levels:
    print(f"level {lvl.index}: mover {str(lvl.mover):22s} grid 1/{lvl.grid_size:<5d}"
          f" U = {lvl.u_interval}")
print("element set sizes:", [len(g) for g in lad.element_sets])
print("deepest-level components:", len(lad.lambda_sets[-1]))

print()
print("-- independent post-hoc verification --")
checks = check_ladder(act, lad)
by_condition = {}
for c in checks:
    by_condition.setdefault(c.condition, []).append(c.passed)
for cond, results in by_condition.items():
    print(f"  {cond:26s} {'ok' if all(results) else 'FAILED'}"
          f" ({len(results)} checks)")

print()
print("-- serialized for plotting --")
doc = ladder_json(lad)
print(json.dumps(doc["levels"][0], indent=2, sort_keys=True)[:400], "...")
