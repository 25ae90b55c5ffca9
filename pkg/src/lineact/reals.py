"""Exact rational and tracked-precision real numbers.

Two kinds of scalar live here.  An exact rational is a ``fractions.Fraction``
in lowest terms.  A tracked real is a rigorous enclosure ``[lo, hi]`` of an
unknown real, stored as a pair of dyadic endpoints (mpmath raw mpf values)
that are always rounded outward.  Every arithmetic operation either stays
exact (when the operation is closed over the rationals and the operands are
rational) or degrades to a tracked enclosure whose error bound is never
dropped.

Precision of tracked arithmetic is controlled by :class:`PrecisionContext`.
The default working precision is 256 bits; callers that need a comparison
decided can retry at doubled precision up to the ceiling (4096 bits) and
raise :class:`PrecisionExhausted` beyond it.
"""

from __future__ import annotations

import threading
from contextlib import contextmanager
from fractions import Fraction
from typing import Optional, Union

import mpmath.libmp as _mp
from mpmath.libmp import (
    from_int,
    from_rational,
    round_ceiling,
    round_floor,
    to_rational,
)

__all__ = [
    "PrecisionExhausted",
    "UndecidableComparison",
    "PrecisionContext",
    "precision",
    "current_precision",
    "Real",
    "Interval",
    "RealLike",
]


class PrecisionExhausted(Exception):
    """A tolerance check could not be decided at the precision ceiling."""


class UndecidableComparison(Exception):
    """Two tracked enclosures overlap; the comparison needs more precision."""


class PrecisionContext:
    def __init__(self, bits: int = 256, ceiling: int = 4096):
        if bits < 8 or ceiling < bits:
            raise ValueError("need 8 <= bits <= ceiling")
        self.bits = bits
        self.ceiling = ceiling

    def doubled(self) -> "PrecisionContext":
        if self.bits >= self.ceiling:
            raise PrecisionExhausted(
                f"precision ceiling {self.ceiling} bits reached"
            )
        return PrecisionContext(min(self.bits * 2, self.ceiling), self.ceiling)


_state = threading.local()


def current_precision() -> PrecisionContext:
    ctx = getattr(_state, "ctx", None)
    if ctx is None:
        ctx = PrecisionContext()
        _state.ctx = ctx
    return ctx


@contextmanager
def precision(bits: int, ceiling: Optional[int] = None):
    """Run a block at a given working precision (in bits of mantissa)."""
    old = getattr(_state, "ctx", None)
    cur_ceiling = ceiling if ceiling is not None else max(
        bits, (old.ceiling if old else 4096)
    )
    _state.ctx = PrecisionContext(bits, cur_ceiling)
    try:
        yield _state.ctx
    finally:
        _state.ctx = old


def _prec() -> int:
    return current_precision().bits


# Exact integer nth roots; returns None when no exact root exists.
def _iroot(n: int, p: int) -> Optional[int]:
    if n < 0:
        if p % 2 == 0:
            return None
        r = _iroot(-n, p)
        return None if r is None else -r
    if n in (0, 1):
        return n
    if n.bit_length() <= p:
        return None  # no integer root >= 2 can exist, and n > 1
    lo, hi = 1, 1 << ((n.bit_length() + p - 1) // p + 1)
    while lo < hi:
        mid = (lo + hi) // 2
        if mid**p < n:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo**p == n else None


def _fraction_root(q: Fraction, p: int) -> Optional[Fraction]:
    num = _iroot(q.numerator, p)
    if num is None:
        return None
    den = _iroot(q.denominator, p)
    if den is None:
        return None
    return Fraction(num, den)


# Size guard for exact powering: bit length of the result numerator is
# roughly |e| * bits(base); beyond the budget we fall back to tracked.
_EXACT_POW_BIT_BUDGET = 1 << 21


def _mpi_from_fraction(q: Fraction, prec: int):
    if q.denominator == 1:
        v = from_int(q.numerator)
        return (v, v)
    lo = from_rational(q.numerator, q.denominator, prec, round_floor)
    hi = from_rational(q.numerator, q.denominator, prec, round_ceiling)
    return (lo, hi)


RealLike = Union["Real", Fraction, int]


class Real:
    """A real number: exact rational or outward-rounded tracked enclosure.

    Immutable.  Construct with :meth:`rational`, :meth:`from_fraction`, or
    arithmetic on existing values.  Never mutate ``_rat``/``_mpi``.
    """

    __slots__ = ("_rat", "_mpi")

    def __init__(self, rat: Optional[Fraction], mpi=None):
        self._rat = rat
        self._mpi = mpi

    # -- constructors -------------------------------------------------

    @staticmethod
    def rational(num, den=1) -> "Real":
        return Real(Fraction(num, den))

    @staticmethod
    def from_fraction(q: Fraction) -> "Real":
        return Real(q)

    @staticmethod
    def tracked(mpi) -> "Real":
        return Real(None, mpi)

    @staticmethod
    def tracked_from_fraction(q: Fraction, prec: Optional[int] = None) -> "Real":
        return Real(None, _mpi_from_fraction(q, prec or _prec()))

    @staticmethod
    def coerce(x: RealLike) -> "Real":
        if isinstance(x, Real):
            return x
        if isinstance(x, (int, Fraction)):
            return Real(Fraction(x))
        raise TypeError(f"cannot interpret {x!r} as a Real")

    @staticmethod
    def hull(a: "Real", b: "Real") -> "Real":
        """Smallest tracked enclosure containing both values."""
        alo, ahi = a.bounds()
        blo, bhi = b.bounds()
        lo, hi = min(alo, blo), max(ahi, bhi)
        if lo == hi:
            return Real(lo)
        p = _prec()
        return Real(None, (
            from_rational(lo.numerator, lo.denominator, p, round_floor),
            from_rational(hi.numerator, hi.denominator, p, round_ceiling),
        ))

    @staticmethod
    def sqrt2(prec: Optional[int] = None) -> "Real":
        p = prec or _prec()
        return Real(None, _mp.mpi_sqrt(_mpi_from_fraction(Fraction(2), p), p))

    @staticmethod
    def sqrt3(prec: Optional[int] = None) -> "Real":
        p = prec or _prec()
        return Real(None, _mp.mpi_sqrt(_mpi_from_fraction(Fraction(3), p), p))

    @staticmethod
    def pi(prec: Optional[int] = None) -> "Real":
        p = prec or _prec()
        return Real(None, (_mp.mpf_pi(p, round_floor), _mp.mpf_pi(p, round_ceiling)))

    @staticmethod
    def e(prec: Optional[int] = None) -> "Real":
        p = prec or _prec()
        return Real(None, (_mp.mpf_e(p, round_floor), _mp.mpf_e(p, round_ceiling)))

    # -- inspection ---------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self._rat is not None

    @property
    def kind(self) -> str:
        return "exact-rational" if self.is_rational else "tracked-real"

    def as_fraction(self) -> Fraction:
        if self._rat is None:
            raise ValueError("tracked real has no exact fraction value")
        return self._rat

    def bounds(self) -> tuple[Fraction, Fraction]:
        """Certified enclosure as exact (dyadic) fractions, lo <= x <= hi."""
        if self._rat is not None:
            return (self._rat, self._rat)
        lo, hi = self._mpi
        return (Fraction(*to_rational(lo)), Fraction(*to_rational(hi)))

    def err(self) -> Fraction:
        lo, hi = self.bounds()
        return (hi - lo) / 2

    def mid(self) -> Fraction:
        lo, hi = self.bounds()
        return (lo + hi) / 2

    def __float__(self) -> float:
        return float(self.mid())

    def _as_mpi(self, prec: int):
        if self._rat is not None:
            return _mpi_from_fraction(self._rat, prec)
        return self._mpi

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other: RealLike) -> "Real":
        other = Real.coerce(other)
        if self._rat is not None and other._rat is not None:
            return Real(self._rat + other._rat)
        p = _prec()
        return Real(None, _mp.mpi_add(self._as_mpi(p), other._as_mpi(p), p))

    __radd__ = __add__

    def __sub__(self, other: RealLike) -> "Real":
        other = Real.coerce(other)
        if self._rat is not None and other._rat is not None:
            return Real(self._rat - other._rat)
        p = _prec()
        return Real(None, _mp.mpi_sub(self._as_mpi(p), other._as_mpi(p), p))

    def __rsub__(self, other: RealLike) -> "Real":
        return Real.coerce(other) - self

    def __mul__(self, other: RealLike) -> "Real":
        other = Real.coerce(other)
        if self._rat is not None and other._rat is not None:
            return Real(self._rat * other._rat)
        p = _prec()
        return Real(None, _mp.mpi_mul(self._as_mpi(p), other._as_mpi(p), p))

    __rmul__ = __mul__

    def __truediv__(self, other: RealLike) -> "Real":
        other = Real.coerce(other)
        if other.contains_zero():
            raise ZeroDivisionError("division by a value that may be zero")
        if self._rat is not None and other._rat is not None:
            return Real(self._rat / other._rat)
        p = _prec()
        return Real(None, _mp.mpi_div(self._as_mpi(p), other._as_mpi(p), p))

    def __rtruediv__(self, other: RealLike) -> "Real":
        return Real.coerce(other) / self

    def __neg__(self) -> "Real":
        if self._rat is not None:
            return Real(-self._rat)
        return Real(None, _mp.mpi_neg(self._mpi, _prec()))

    def __abs__(self) -> "Real":
        if self._rat is not None:
            return Real(abs(self._rat))
        return Real(None, _mp.mpi_abs(self._mpi, _prec()))

    def pow_int(self, e: int) -> "Real":
        if self._rat is not None:
            cost = abs(e) * max(
                self._rat.numerator.bit_length(),
                self._rat.denominator.bit_length(),
            )
            if cost <= _EXACT_POW_BIT_BUDGET:
                return Real(self._rat**e)
        p = _prec()
        return Real(None, _mp.mpi_pow_int(self._as_mpi(p), e, p))

    def root(self, p: int) -> "Real":
        """Exact-aware p-th root for positive values (sign-preserving for odd p)."""
        if p == 1:
            return self
        if self._rat is not None:
            r = _fraction_root(self._rat, p)
            if r is not None:
                return Real(r)
        return self.pow_fraction(Fraction(1, p))

    def pow_fraction(self, e: Fraction) -> "Real":
        """``self ** e`` for positive self (or rational self with integer e)."""
        if e.denominator == 1:
            return self.pow_int(e.numerator)
        if self._rat is not None:
            base_root = _fraction_root(self._rat, e.denominator)
            if base_root is not None:
                return Real(base_root).pow_int(e.numerator)
            if self._rat < 0:
                raise ValueError("fractional power of a negative value")
            if self._rat == 0:
                return Real(Fraction(0))
        return self.pow_real(Real.tracked_from_fraction(e))

    def pow_real(self, e: "Real") -> "Real":
        """``self ** e`` via exp/log for a certainly nonnegative base."""
        if e._rat is not None and e._rat.denominator == 1:
            return self.pow_int(e._rat.numerator)
        if self._rat is not None and self._rat == 0:
            sgn = e.cmp_fraction(Fraction(0))
            if sgn == 1:
                return Real(Fraction(0))
            raise ZeroDivisionError("0 ** e with e <= 0")
        lo, hi = self.bounds()
        if lo < 0:
            raise ValueError("fractional power needs a nonnegative base")
        if lo == 0:
            # enclosure touches zero: x**e is increasing for e > 0, so the
            # image is [0, hi**e]
            if e.cmp_fraction(Fraction(0)) != 1:
                raise ZeroDivisionError("0 ** e with e <= 0")
            if hi == 0:
                return Real(Fraction(0))
            top = Real.from_fraction(hi).pow_real(e)
            return Real.hull(Real.rational(0), top)
        p = _prec()
        logx = _mp.mpi_log(self._as_mpi(p), p)
        return Real(None, _mp.mpi_exp(_mp.mpi_mul(logx, e._as_mpi(p), p), p))

    @staticmethod
    def two_to(t: Fraction) -> "Real":
        """2**t, exact for integer t, tracked enclosure otherwise."""
        if t.denominator == 1:
            n = t.numerator
            if abs(n) <= _EXACT_POW_BIT_BUDGET:
                return Real(Fraction(2) ** n)
        return Real.rational(2).pow_fraction(t)

    def exp(self) -> "Real":
        p = _prec()
        return Real(None, _mp.mpi_exp(self._as_mpi(p), p))

    def log(self) -> "Real":
        lo, _ = self.bounds()
        if lo <= 0:
            raise ValueError("log needs a certainly positive argument")
        p = _prec()
        return Real(None, _mp.mpi_log(self._as_mpi(p), p))

    # -- comparisons --------------------------------------------------

    def contains_zero(self) -> bool:
        lo, hi = self.bounds()
        return lo <= 0 <= hi

    def cmp(self, other: RealLike) -> Optional[int]:
        """-1, 0, +1, or None when the enclosures overlap undecidably."""
        other = Real.coerce(other)
        if self._rat is not None and other._rat is not None:
            a, b = self._rat, other._rat
            return -1 if a < b else (1 if a > b else 0)
        slo, shi = self.bounds()
        olo, ohi = other.bounds()
        if shi < olo:
            return -1
        if slo > ohi:
            return 1
        return None

    def cmp_fraction(self, q: Fraction) -> Optional[int]:
        lo, hi = self.bounds()
        if hi < q:
            return -1
        if lo > q:
            return 1
        if lo == hi == q:
            return 0
        return None

    def definitely_lt(self, other: RealLike) -> bool:
        return self.cmp(other) == -1

    def definitely_gt(self, other: RealLike) -> bool:
        return self.cmp(other) == 1

    def definitely_le(self, other: RealLike) -> bool:
        other = Real.coerce(other)
        if self._rat is not None and other._rat is not None:
            return self._rat <= other._rat
        _, shi = self.bounds()
        olo, _ = other.bounds()
        return shi <= olo

    def approx_eq(self, other: RealLike, tol: RealLike) -> Optional[bool]:
        """Is |self - other| <= tol?  None when undecidable at this precision."""
        d = abs(self - Real.coerce(other))
        return d.leq(tol)

    def leq(self, bound: RealLike) -> Optional[bool]:
        """Is self <= bound?  True/False only when certain."""
        bound = Real.coerce(bound)
        if self._rat is not None and bound._rat is not None:
            return self._rat <= bound._rat
        slo, shi = self.bounds()
        blo, bhi = bound.bounds()
        if shi <= blo:
            return True
        if slo > bhi:
            return False
        return None

    # -- structural equality (used by simplify) -----------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Real):
            if isinstance(other, (int, Fraction)):
                other = Real.coerce(other)
            else:
                return NotImplemented
        if self._rat is not None and other._rat is not None:
            return self._rat == other._rat
        if (self._rat is None) != (other._rat is None):
            return False
        return self._mpi == other._mpi

    def __hash__(self):
        if self._rat is not None:
            return hash(self._rat)
        return hash(self._mpi)

    # -- formatting ----------------------------------------------------

    def __str__(self) -> str:
        if self._rat is not None:
            q = self._rat
            if q.denominator == 1:
                return str(q.numerator)
            return f"{q.numerator}/{q.denominator}"
        p = _prec()
        mid = _mp.mpi_mid(self._mpi, p)
        delta = _mp.mpi_delta(self._mpi, p)
        digits = max(6, int(p / 3.33)) // 1
        return "%s±%s" % (
            _mp.to_str(mid, min(digits, 40)),
            _mp.to_str(delta, 3),
        )

    def __repr__(self) -> str:
        return f"Real({self})"


_NEG_INF = object()
_POS_INF = object()


class Interval:
    """An interval of the extended line with per-endpoint openness.

    Endpoints are :class:`Real` values or the infinities (``lo=None`` means
    -inf, ``hi=None`` means +inf).  The empty interval is the distinct
    sentinel :data:`Interval.EMPTY`.  Rigor convention: predicates with
    "certainly" in the name return True only when the answer is provable from
    the endpoint enclosures; they never guess.
    """

    __slots__ = ("lo", "hi", "open_lo", "open_hi", "_empty")

    EMPTY: "Interval"

    def __init__(self, lo: Optional[Real], hi: Optional[Real],
                 open_lo: bool = True, open_hi: bool = True,
                 _empty: bool = False):
        self._empty = _empty
        if _empty:
            self.lo = self.hi = None
            self.open_lo = self.open_hi = True
            return
        self.lo = lo
        self.hi = hi
        self.open_lo = open_lo if lo is not None else True
        self.open_hi = open_hi if hi is not None else True
        if lo is not None and hi is not None:
            if lo.cmp(hi) == 1 or (lo.cmp(hi) == 0 and (open_lo or open_hi)):
                raise ValueError(
                    f"degenerate interval endpoints: {lo} .. {hi}"
                )

    @staticmethod
    def open(lo: RealLike, hi: RealLike) -> "Interval":
        return Interval(Real.coerce(lo), Real.coerce(hi), True, True)

    @staticmethod
    def closed(lo: RealLike, hi: RealLike) -> "Interval":
        return Interval(Real.coerce(lo), Real.coerce(hi), False, False)

    @staticmethod
    def whole() -> "Interval":
        return Interval(None, None)

    @property
    def is_empty(self) -> bool:
        return self._empty

    @property
    def is_finite(self) -> bool:
        return not self._empty and self.lo is not None and self.hi is not None

    def closure(self) -> "Interval":
        if self._empty:
            return self
        return Interval(self.lo, self.hi, self.lo is None, self.hi is None)

    def diameter(self) -> Optional[Real]:
        if self._empty:
            return Real.rational(0)
        if not self.is_finite:
            return None
        return self.hi - self.lo

    def midpoint(self) -> Real:
        if not self.is_finite:
            raise ValueError("midpoint of an unbounded interval")
        return (self.lo + self.hi) / Real.rational(2)

    # Outer bounds as Fractions, for rigorous geometry. None = infinite.
    def _lo_fr(self) -> Optional[Fraction]:
        return None if self.lo is None else self.lo.bounds()[0]

    def _lo_fr_hi(self) -> Optional[Fraction]:
        return None if self.lo is None else self.lo.bounds()[1]

    def _hi_fr(self) -> Optional[Fraction]:
        return None if self.hi is None else self.hi.bounds()[1]

    def _hi_fr_lo(self) -> Optional[Fraction]:
        return None if self.hi is None else self.hi.bounds()[0]

    def certainly_contains_point(self, x: Real) -> bool:
        if self._empty:
            return False
        xlo, xhi = x.bounds()
        if self.lo is not None:
            llo, lhi = self.lo.bounds()
            if self.open_lo:
                if not (xlo > lhi):
                    return False
            else:
                if not (xlo >= lhi):
                    return False
        if self.hi is not None:
            hlo, hhi = self.hi.bounds()
            if self.open_hi:
                if not (xhi < hlo):
                    return False
            else:
                if not (xhi <= hlo):
                    return False
        return True

    def certainly_disjoint(self, other: "Interval") -> bool:
        if self._empty or other._empty:
            return True
        # self entirely left of other?
        if self.hi is not None and other.lo is not None:
            shi_hi = self.hi.bounds()[1]
            olo_lo = other.lo.bounds()[0]
            if shi_hi < olo_lo:
                return True
            if shi_hi == olo_lo and self.hi.is_rational and other.lo.is_rational \
                    and (self.open_hi or other.open_lo):
                return True
        if other.hi is not None and self.lo is not None:
            ohi_hi = other.hi.bounds()[1]
            slo_lo = self.lo.bounds()[0]
            if ohi_hi < slo_lo:
                return True
            if ohi_hi == slo_lo and other.hi.is_rational and self.lo.is_rational \
                    and (other.open_hi or self.open_lo):
                return True
        return False

    def certainly_intersects(self, other: "Interval") -> bool:
        """Certainly nonempty open-overlap (interiors meet)."""
        if self._empty or other._empty:
            return False

        def lt(a: Optional[Fraction], b: Optional[Fraction]) -> bool:
            # a < b with None meaning the favorable infinity
            if a is None or b is None:
                return True
            return a < b

        # need sup(lo bounds) < inf(hi bounds), certified
        a1 = self._lo_fr_hi()
        a2 = other._lo_fr_hi()
        b1 = self._hi_fr_lo()
        b2 = other._hi_fr_lo()
        lo_cand = [v for v in (a1, a2) if v is not None]
        hi_cand = [v for v in (b1, b2) if v is not None]
        if not lo_cand and not hi_cand:
            return True
        if not lo_cand:
            return True
        if not hi_cand:
            return True
        return max(lo_cand) < min(hi_cand)

    def certainly_subset_of(self, other: "Interval") -> bool:
        if self._empty:
            return True
        if other._empty:
            return False
        if other.lo is not None:
            if self.lo is None:
                return False
            slo = self.lo.bounds()[0]
            olo = other.lo.bounds()[1]
            if slo < olo:
                return False
            if slo == olo:
                exact = self.lo.is_rational and other.lo.is_rational
                if not exact:
                    return False
                if other.open_lo and not self.open_lo:
                    return False
        if other.hi is not None:
            if self.hi is None:
                return False
            shi = self.hi.bounds()[1]
            ohi = other.hi.bounds()[0]
            if shi > ohi:
                return False
            if shi == ohi:
                exact = self.hi.is_rational and other.hi.is_rational
                if not exact:
                    return False
                if other.open_hi and not self.open_hi:
                    return False
        return True

    def intersection_hull(self, other: "Interval") -> "Interval":
        """Outer enclosure of the set intersection (closed hull semantics)."""
        if self._empty or other._empty:
            return Interval.EMPTY
        lo_parts = [iv.lo for iv in (self, other) if iv.lo is not None]
        hi_parts = [iv.hi for iv in (self, other) if iv.hi is not None]
        lo = None
        for cand in lo_parts:
            if lo is None or cand.bounds()[0] > lo.bounds()[0]:
                lo = cand
        hi = None
        for cand in hi_parts:
            if hi is None or cand.bounds()[1] < hi.bounds()[1]:
                hi = cand
        if lo is not None and hi is not None:
            if lo.bounds()[0] > hi.bounds()[1]:
                return Interval.EMPTY
            if lo.bounds()[0] == hi.bounds()[1] and lo.is_rational and hi.is_rational:
                if lo.as_fraction() == hi.as_fraction():
                    return Interval(lo, hi, False, False)
            try:
                return Interval(lo, hi, False, False)
            except ValueError:
                return Interval.EMPTY
        return Interval(lo, hi, False, False)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Interval):
            return NotImplemented
        if self._empty or other._empty:
            return self._empty and other._empty
        return (
            self.open_lo == other.open_lo
            and self.open_hi == other.open_hi
            and ((self.lo is None) == (other.lo is None))
            and ((self.hi is None) == (other.hi is None))
            and (self.lo is None or self.lo == other.lo)
            and (self.hi is None or self.hi == other.hi)
        )

    def __hash__(self):
        if self._empty:
            return hash("empty-interval")
        return hash((self.lo, self.hi, self.open_lo, self.open_hi))

    def __str__(self) -> str:
        if self._empty:
            return "(empty)"
        lb = "(" if self.open_lo else "["
        rb = ")" if self.open_hi else "]"
        lo = "-inf" if self.lo is None else str(self.lo)
        hi = "+inf" if self.hi is None else str(self.hi)
        return f"{lb}{lo}, {hi}{rb}"

    __repr__ = __str__


Interval.EMPTY = Interval(None, None, _empty=True)
