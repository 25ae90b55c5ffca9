import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lineact.reals import (
    Interval,
    PrecisionExhausted,
    Real,
    current_precision,
    precision,
)


def fr(n, d=1):
    return Real.rational(n, d)


class TestRealArithmetic:
    def test_rational_closure(self):
        a, b = fr(1, 3), fr(2, 5)
        assert (a + b).as_fraction() == Fraction(11, 15)
        assert (a * b).as_fraction() == Fraction(2, 15)
        assert (a - b).as_fraction() == Fraction(-1, 15)
        assert (a / b).as_fraction() == Fraction(5, 6)
        assert (a + b).kind == "exact-rational"

    def test_lowest_terms_positive_denominator(self):
        q = fr(-4, -6).as_fraction()
        assert q.numerator == 2 and q.denominator == 3

    def test_mixing_degrades_to_tracked(self):
        s = Real.sqrt2()
        v = fr(1) + s
        assert v.kind == "tracked-real"
        lo, hi = v.bounds()
        assert float(lo) <= 1 + math.sqrt(2) <= float(hi)

    def test_tracked_error_bound_nonnegative_and_kept(self):
        s = Real.sqrt2()
        assert s.err() >= 0
        v = (s + fr(1)) * (s - fr(1))  # should enclose 1
        lo, hi = v.bounds()
        assert lo <= 1 <= hi
        assert v.err() > 0

    def test_sqrt2_encloses_truth(self):
        mpmath.mp.dps = 120
        truth = mpmath.mpf(2) ** mpmath.mpf("0.5")
        lo, hi = Real.sqrt2().bounds()
        assert float(lo) <= float(truth) <= float(hi)
        assert float(Real.sqrt2().err()) < 1e-70

    def test_pow_int_exact(self):
        assert fr(3, 2).pow_int(4).as_fraction() == Fraction(81, 16)
        assert fr(3, 2).pow_int(-2).as_fraction() == Fraction(4, 9)

    def test_root_exact_on_perfect_powers(self):
        assert fr(9, 4).root(2).as_fraction() == Fraction(3, 2)
        assert fr(27, 8).root(3).as_fraction() == Fraction(3, 2)
        assert fr(-27, 8).root(3).as_fraction() == Fraction(-3, 2)

    def test_root_tracked_otherwise(self):
        v = fr(2).root(2)
        assert v.kind == "tracked-real"
        lo, hi = v.bounds()
        assert float(lo) <= math.sqrt(2) <= float(hi)

    def test_root_huge_index_fast(self):
        # regression: exact-root probing must not attempt astronomical powers
        v = fr(3, 7).pow_fraction(Fraction(1, 2**32))
        lo, hi = v.bounds()
        assert 0 < lo < hi < 1

    def test_two_to(self):
        assert Real.two_to(Fraction(3)).as_fraction() == 8
        assert Real.two_to(Fraction(-3)).as_fraction() == Fraction(1, 8)
        v = Real.two_to(Fraction(-1, 2))
        lo, hi = v.bounds()
        assert float(lo) <= 2 ** -0.5 <= float(hi)

    def test_pow_real_zero_touching_base(self):
        s = Real.hull(fr(0), fr(1, 100))
        v = s.pow_real(Real.two_to(Fraction(-1, 2)))
        lo, hi = v.bounds()
        assert lo == 0 and hi > 0

    def test_division_by_possible_zero(self):
        z = Real.hull(fr(-1, 10**40), fr(1, 10**40))
        with pytest.raises(ZeroDivisionError):
            fr(1) / z

    def test_comparisons(self):
        assert fr(1, 3).cmp(fr(1, 2)) == -1
        assert fr(1, 2).cmp(fr(1, 2)) == 0
        s = Real.sqrt2()
        assert s.cmp(fr(1)) == 1
        assert s.cmp(s) is None  # identical enclosures overlap
        assert fr(1, 3).leq(fr(1, 2)) is True
        assert s.leq(fr(1)) is False

    def test_str_forms(self):
        assert str(fr(3, 4)) == "3/4"
        assert str(fr(5)) == "5"
        assert "±" in str(Real.sqrt2())


class TestPrecisionContext:
    def test_default(self):
        ctx = current_precision()
        assert ctx.bits == 256 and ctx.ceiling == 4096

    def test_scoped_precision_changes_enclosures(self):
        with precision(64):
            wide = Real.sqrt2().err()
        with precision(512):
            narrow = Real.sqrt2().err()
        assert narrow < wide

    def test_doubled_hits_ceiling(self):
        with precision(128, 128) as ctx:
            with pytest.raises(PrecisionExhausted):
                ctx.doubled()


class TestInterval:
    def test_open_closed(self):
        iv = Interval.open(0, 1)
        assert iv.open_lo and iv.open_hi and iv.is_finite
        cl = iv.closure()
        assert not cl.open_lo and not cl.open_hi

    def test_degenerate_rejected(self):
        with pytest.raises(ValueError):
            Interval.open(1, 1)
        with pytest.raises(ValueError):
            Interval.closed(2, 1)
        assert Interval.closed(1, 1).is_finite  # a single closed point is fine

    def test_empty_sentinel(self):
        assert Interval.EMPTY.is_empty
        assert Interval.EMPTY.certainly_disjoint(Interval.open(0, 1))

    def test_disjointness_with_openness(self):
        a = Interval.open(0, 1)
        b = Interval.open(1, 2)
        assert a.certainly_disjoint(b)  # open endpoints touching
        c = Interval.closed(1, 2)
        assert a.certainly_disjoint(c)  # (0,1) vs [1,2] still disjoint
        d = Interval.closed(0, 1)
        assert not d.certainly_disjoint(c)

    def test_intersects(self):
        assert Interval.open(0, 2).certainly_intersects(Interval.open(1, 3))
        assert not Interval.open(0, 1).certainly_intersects(Interval.open(1, 2))
        assert Interval.whole().certainly_intersects(Interval.open(5, 6))

    def test_subset(self):
        assert Interval.open(Fraction(1, 4), Fraction(1, 2)).certainly_subset_of(
            Interval.open(0, 1)
        )
        assert not Interval.open(0, 1).certainly_subset_of(
            Interval.open(Fraction(1, 4), Fraction(1, 2))
        )
        assert Interval.open(0, 1).certainly_subset_of(Interval.closed(0, 1))
        assert not Interval.closed(0, 1).certainly_subset_of(Interval.open(0, 1))

    def test_tracked_endpoint_uncertainty(self):
        s = Real.sqrt2()
        a = Interval.open(s, fr(2))
        b = Interval.open(fr(2), fr(3))
        # (sqrt2, 2) and (2, 3): touching at an exact rational endpoint
        assert a.certainly_disjoint(b)
        c = Interval.open(fr(1), s)
        d = Interval.open(s, fr(2))
        # touching at a tracked endpoint cannot be certified disjoint
        assert not c.certainly_disjoint(d)

    def test_intersection_hull(self):
        h = Interval.open(0, 2).intersection_hull(Interval.closed(1, 3))
        assert float(h.lo.mid()) == 1.0 and float(h.hi.mid()) == 2.0
        e = Interval.open(0, 1).intersection_hull(Interval.open(2, 3))
        assert e.is_empty

    def test_diameter_midpoint(self):
        iv = Interval.open(Fraction(-1, 2), Fraction(3, 2))
        assert iv.diameter().as_fraction() == 2
        assert iv.midpoint().as_fraction() == Fraction(1, 2)


@given(
    st.fractions(min_value=-100, max_value=100),
    st.fractions(min_value=-100, max_value=100),
)
@settings(max_examples=200, deadline=None)
def test_rational_field_ops_match_fractions(qa, qb):
    a, b = Real.from_fraction(qa), Real.from_fraction(qb)
    assert (a + b).as_fraction() == qa + qb
    assert (a * b).as_fraction() == qa * qb
    assert (a - b).as_fraction() == qa - qb
    if qb != 0:
        assert (a / b).as_fraction() == qa / qb


@given(st.fractions(min_value=Fraction(1, 1000), max_value=1000),
       st.fractions(min_value=-3, max_value=3))
@settings(max_examples=100, deadline=None)
def test_tracked_pow_encloses_float_truth(base, expo):
    v = Real.from_fraction(base).pow_real(
        Real.tracked_from_fraction(expo)
    )
    lo, hi = v.bounds()
    truth = float(base) ** float(expo)
    assert float(lo) <= truth * (1 + 1e-12) and truth * (1 - 1e-12) <= float(hi)
