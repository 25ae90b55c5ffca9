"""Extending a unit-interval action to a cyclic extension of the line.

Given an action of H supported on (0,1) with endpoints fixed, the extension
sends the coset generator to the unit translation and each H-generator to
the cellwise map acting on [j, j+1] through a conjugated H-word.  With the
trivial conjugation rule this realizes a direct product; with the
sign-flipping rule on H = Z generated by the squaring map it rebuilds the
alternating power ladder exactly.
"""

from fractions import Fraction

from lineact import (
    Action,
    Interval,
    Presentation,
    check_relations,
    conjugate_into_unit,
    direct_product_extension,
    extend_action,
    gallery,
    homomorphism_residual,
    sample_points,
    transitivity_search,
)
from lineact.actions import ExtensionSpec
from lineact.homeo import UnitPowerLadder, evaluate
from lineact.reals import Real

R = Real.rational

print("-- direct product: the translation plane made three-dimensional --")
inner = conjugate_into_unit(gallery("ex_1_2", alpha="sqrt2"))
spec = direct_product_extension(inner, coset_label="t")
G = extend_action(spec)
print("generators:", G.presentation.labels)
rep = check_relations(G, sample_points(Interval.closed(-2, 2), 20))
print("relations pass:", rep.passed)
res = homomorphism_residual(G, 50, sample_points(Interval.closed(-3, 3), 10))
print("homomorphism residual bound:", float(abs(res).bounds()[1]))
w = transitivity_search(G, Interval.open(Fraction(1, 4), Fraction(1, 2)),
                        Interval.open(Fraction(9, 4), Fraction(5, 2)), 12)
print("witness across cells:", w)

print()
print("-- the sign-flipping rule rebuilds the alternating ladder --")
H = Presentation.free_abelian(1, labels=("s",))
inner2 = Action(H, {"s": UnitPowerLadder(1, 1)})  # restriction to [0,1]: x^2
G2p = Presentation.baumslag_solitar(-1, labels=("s", "t"))
spec2 = ExtensionSpec(
    inner2, G2p, coset_label="t",
    conjugation_rule=lambda j, word: word if j % 2 == 0 else word.inverse(),
    horizon=32,
)
G2 = extend_action(spec2)
ladder = UnitPowerLadder(1, 1)
for num in (-11, -3, 5, 13):
    x = R(num, 8)
    a = evaluate(G2.images["s"], x)
    b = evaluate(ladder, x)
    print(f"  at {str(x):6s}: extension {float(a.mid()):+.6f} "
          f"ladder {float(b.mid()):+.6f}")
