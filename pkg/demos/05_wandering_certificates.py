"""Constructing and certifying wandering intervals.

For the Klein bottle action (f = x+1, g = the base-1 alternating power map)
the fixed set of g is the integers; the complement component (0,1) moves off
itself under f, and a subinterval separated from its g-image certifies as
wandering: every nonempty reduced word up to the radius either fixes it
pointwise (exactly the words that are trivial in the group) or maps it
rigorously off itself.
"""

from fractions import Fraction

from lineact import (
    Interval,
    find_wandering_interval,
    gallery,
    wandering_certificate,
)
from lineact.words import bs_pair

act = gallery("klein_bottle")

print("-- construction from fixed-set geometry --")
rep = find_wandering_interval(act, Interval.open(-4, 4))
print("pivot generator:", rep.pivot_label)
print("complement component:", rep.component)
print("candidate interval J:", rep.interval)
for c in rep.claims:
    print(f"  claim {c.name}: {'ok' if c.passed else 'FAILED'}")

print()
print("-- certification over all reduced words of length <= 6 --")
cert = wandering_certificate(act, rep.interval, 6)
print("certified:", cert.certified, " verdicts:", cert.counts())
fixed_words = [str(v.word) for v in cert.verdicts
               if v.verdict == "pointwise-fixed"][:6]
print("sample pointwise-fixed words (trivial in the group):", fixed_words)
print("their affine pairs:",
      [bs_pair(v.word) for v in cert.verdicts
       if v.verdict == "pointwise-fixed"][:3])

print()
print("-- a transitive action refuses to certify --")
e4 = gallery("ex_1_4", k=2)
cert2 = wandering_certificate(
    e4, Interval.open(Fraction(1, 5), Fraction(3, 10)), 6
)
print("certified:", cert2.certified, " witness word:", cert2.witness)
