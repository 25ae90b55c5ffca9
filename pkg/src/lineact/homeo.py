"""Expression trees for orientation-preserving homeomorphisms of the line.

An expression denotes a strictly increasing bijection of the reals, built
from a handful of primitive nodes plus composition and inversion.  Points
evaluate through :func:`evaluate`; open intervals map through
:func:`eval_interval` using monotonicity (endpoint images).  Inverses are
structural: every node type knows its own inverse expression, so no numeric
root-finding is ever needed.

Exactness policy: an evaluation path stays in exact rationals whenever each
node is rational-closed at the input (affine maps, integer powers, perfect
roots); anything else returns a tracked enclosure with a rigorous outward
error bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Protocol, Sequence, Union

from .reals import (
    Interval,
    PrecisionExhausted,
    Real,
    RealLike,
    UndecidableComparison,
    current_precision,
    precision,
)

__all__ = [
    "HomeoExpr",
    "Identity",
    "Affine",
    "OddPower",
    "UnitPowerLadder",
    "BoundedConjugate",
    "ExtensionCell",
    "Compose",
    "Inverse",
    "CellSpec",
    "HorizonExceeded",
    "WindowDegenerate",
    "evaluate",
    "eval_interval",
    "inverse",
    "compose",
    "compose_all",
    "power",
    "simplify",
    "structurally_equal",
    "FixReport",
    "fixed_points",
    "is_identity_on",
    "to_text",
]


class HorizonExceeded(Exception):
    """Evaluation requested in a cell beyond the configured horizon."""


class WindowDegenerate(Exception):
    """A search window is empty or a single point."""


# Cells with |2^t| needing more than this many bits to scale are rejected.
_LADDER_EXPONENT_LIMIT = Fraction(1 << 24)


class CellSpec(Protocol):
    """What an extension-cell node needs from the actions layer."""

    horizon: int

    def cell_expr(self, j: int, word) -> "HomeoExpr": ...

    def invert_word(self, word): ...

    def mul_words(self, u, v): ...

    def word_is_identity(self, word) -> bool: ...

    def word_str(self, word) -> str: ...


@dataclass(frozen=True)
class Identity:
    pass


@dataclass(frozen=True)
class Affine:
    """x -> a*x + b with a > 0."""

    a: Real
    b: Real

    def __post_init__(self):
        object.__setattr__(self, "a", Real.coerce(self.a))
        object.__setattr__(self, "b", Real.coerce(self.b))
        if self.a.cmp_fraction(Fraction(0)) != 1:
            raise ValueError("affine coefficient a must be certainly positive")


@dataclass(frozen=True)
class OddPower:
    """x -> x**p (forward) or the sign-preserving real p-th root."""

    p: int
    root: bool = False

    def __post_init__(self):
        if self.p < 3 or self.p % 2 == 0:
            raise ValueError("exponent must be an odd integer >= 3")


@dataclass(frozen=True)
class UnitPowerLadder:
    """Cellwise power map: on [n, n+1), x -> (x-n)**(2**(s*(-1)^n*k^-n)) + n.

    k = 1 alternates squaring and square root across cells, which keeps
    rational inputs exact on even cells.
    """

    k: int
    s: int = 1

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("ladder base k must be a positive integer")
        if self.s not in (1, -1):
            raise ValueError("ladder direction s must be +1 or -1")

    def cell_exponent(self, n: int) -> Fraction:
        sign = -1 if n % 2 else 1
        t = Fraction(self.s * sign) * (Fraction(self.k) ** (-n))
        if abs(t) > _LADDER_EXPONENT_LIMIT:
            raise PrecisionExhausted(
                f"ladder cell {n} exponent 2**{t} out of representable range"
            )
        return t


@dataclass(frozen=True)
class BoundedConjugate:
    """psi o inner o psi^-1 on (-1,1), identity outside, psi(x)=x/(1+|x|)."""

    inner: "HomeoExpr"


class ExtensionCell:
    """Cellwise map from an extension spec: on [j, j+1], conjugated inner word."""

    __slots__ = ("spec", "word")

    def __init__(self, spec: CellSpec, word):
        self.spec = spec
        self.word = word

    def __eq__(self, other):
        return (
            isinstance(other, ExtensionCell)
            and self.spec is other.spec
            and self.word == other.word
        )

    def __hash__(self):
        return hash((id(self.spec), self.word))

    def __repr__(self):
        return f"ExtensionCell({self.spec!r}, {self.word!r})"


@dataclass(frozen=True)
class Compose:
    """left o right: right acts first."""

    left: "HomeoExpr"
    right: "HomeoExpr"


@dataclass(frozen=True)
class Inverse:
    child: "HomeoExpr"


HomeoExpr = Union[
    Identity, Affine, OddPower, UnitPowerLadder, BoundedConjugate,
    ExtensionCell, Compose, Inverse,
]


# ---------------------------------------------------------------------------
# evaluation


def _floor_fraction(q: Fraction) -> int:
    return q.numerator // q.denominator


def _piecewise_eval(x: Real, branch_of: Callable[[Fraction], int],
                    eval_branch: Callable[[int, Real], Real]) -> Real:
    """Evaluate an increasing, continuous, piecewise-defined map.

    When the enclosure of x straddles branch boundaries, each endpoint is
    routed through its own branch and the results hulled; continuity makes
    the hull a valid enclosure.
    """
    xlo, xhi = x.bounds()
    blo, bhi = branch_of(xlo), branch_of(xhi)
    if blo == bhi:
        return eval_branch(blo, x)
    if bhi - blo > 64:
        raise PrecisionExhausted("enclosure spans too many cells")
    lo_v = eval_branch(blo, Real.from_fraction(xlo))
    hi_v = eval_branch(bhi, Real.from_fraction(xhi))
    return Real.hull(lo_v, hi_v)


def _psi(x: Real) -> Real:
    return x / (Real.rational(1) + abs(x))


def _psi_inv(y: Real) -> Real:
    return y / (Real.rational(1) - abs(y))


def _eval_ladder(node: UnitPowerLadder, x: Real) -> Real:
    def branch(q: Fraction) -> int:
        return _floor_fraction(q)

    def in_cell(n: int, v: Real) -> Real:
        u = v - Real.rational(n)
        if u.is_rational and u.as_fraction() == 0:
            return Real.rational(n)
        e = Real.two_to(node.cell_exponent(n))
        if not u.is_rational and u.bounds()[0] <= 0 \
                and e.cmp_fraction(Fraction(1)) == -1:
            # a tracked enclosure touching the cell edge cannot support a
            # contracting-root exponent: the image enclosure would span the
            # whole cell no matter the precision
            raise PrecisionExhausted(
                f"enclosure touches cell {n} edge under a fractional exponent"
            )
        if e.is_rational:
            return u.pow_fraction(e.as_fraction()) + Real.rational(n)
        return u.pow_real(e) + Real.rational(n)

    return _piecewise_eval(x, branch, in_cell)


def _eval_bounded_conjugate(node: BoundedConjugate, x: Real) -> Real:
    def branch(q: Fraction) -> int:
        if q <= -1:
            return -1
        if q >= 1:
            return 1
        return 0

    def in_branch(b: int, v: Real) -> Real:
        if b != 0:
            return v
        return _psi(evaluate(node.inner, _psi_inv(v)))

    return _piecewise_eval(x, branch, in_branch)


def _eval_extension_cell(node: ExtensionCell, x: Real) -> Real:
    spec = node.spec

    def branch(q: Fraction) -> int:
        j = _floor_fraction(q)
        if abs(j) > spec.horizon:
            raise HorizonExceeded(
                f"cell {j} beyond the configured horizon {spec.horizon}"
            )
        return j

    def in_cell(j: int, v: Real) -> Real:
        inner = spec.cell_expr(j, node.word)
        return evaluate(inner, v - Real.rational(j)) + Real.rational(j)

    return _piecewise_eval(x, branch, in_cell)


def _eval_odd_power(node: OddPower, x: Real) -> Real:
    if not node.root:
        return x.pow_int(node.p)

    def branch(q: Fraction) -> int:
        return 0 if q >= 0 else -1

    def in_branch(b: int, v: Real) -> Real:
        if b == -1:
            return -((-v).root(node.p))
        return v.root(node.p)

    return _piecewise_eval(x, branch, in_branch)


def evaluate(h: HomeoExpr, x: RealLike) -> Real:
    """Apply the denoted homeomorphism to a finite point."""
    x = Real.coerce(x)
    if isinstance(h, Identity):
        return x
    if isinstance(h, Affine):
        return h.a * x + h.b
    if isinstance(h, OddPower):
        return _eval_odd_power(h, x)
    if isinstance(h, UnitPowerLadder):
        return _eval_ladder(h, x)
    if isinstance(h, BoundedConjugate):
        return _eval_bounded_conjugate(h, x)
    if isinstance(h, ExtensionCell):
        return _eval_extension_cell(h, x)
    if isinstance(h, Compose):
        return evaluate(h.left, evaluate(h.right, x))
    if isinstance(h, Inverse):
        return evaluate(inverse(h.child), x)
    raise TypeError(f"not a homeomorphism expression: {h!r}")


def eval_interval(h: HomeoExpr, iv: Interval) -> Interval:
    """Exact image of an interval; infinite endpoints stay infinite."""
    if iv.is_empty:
        return Interval.EMPTY
    lo = None if iv.lo is None else evaluate(h, iv.lo)
    hi = None if iv.hi is None else evaluate(h, iv.hi)
    return Interval(lo, hi, iv.open_lo, iv.open_hi)


# ---------------------------------------------------------------------------
# structure


def inverse(h: HomeoExpr) -> HomeoExpr:
    if isinstance(h, Identity):
        return h
    if isinstance(h, Affine):
        one = Real.rational(1)
        return Affine(one / h.a, -h.b / h.a)
    if isinstance(h, OddPower):
        return OddPower(h.p, not h.root)
    if isinstance(h, UnitPowerLadder):
        return UnitPowerLadder(h.k, -h.s)
    if isinstance(h, BoundedConjugate):
        return BoundedConjugate(inverse(h.inner))
    if isinstance(h, ExtensionCell):
        return ExtensionCell(h.spec, h.spec.invert_word(h.word))
    if isinstance(h, Compose):
        return Compose(inverse(h.right), inverse(h.left))
    if isinstance(h, Inverse):
        return h.child
    raise TypeError(f"not a homeomorphism expression: {h!r}")


def compose(h1: HomeoExpr, h2: HomeoExpr) -> HomeoExpr:
    """h1 o h2 (h2 acts first)."""
    if isinstance(h1, Identity):
        return h2
    if isinstance(h2, Identity):
        return h1
    return Compose(h1, h2)


def compose_all(hs: Sequence[HomeoExpr]) -> HomeoExpr:
    """Compose outermost-first: compose_all([f, g]) = f o g."""
    out: HomeoExpr = Identity()
    for h in reversed(hs):
        out = compose(h, out)
    return out


def power(h: HomeoExpr, n: int) -> HomeoExpr:
    if n == 0:
        return Identity()
    base = h if n > 0 else inverse(h)
    out = base
    for _ in range(abs(n) - 1):
        out = compose(out, base)
    return out


def structurally_equal(h1: HomeoExpr, h2: HomeoExpr) -> bool:
    return h1 == h2


def _flatten(h: HomeoExpr) -> list[HomeoExpr]:
    if isinstance(h, Compose):
        return _flatten(h.left) + _flatten(h.right)
    if isinstance(h, Inverse):
        return _flatten(inverse(h.child))
    return [h]


def _simplify_leaf(h: HomeoExpr) -> HomeoExpr:
    if isinstance(h, BoundedConjugate):
        inner = simplify(h.inner)
        if isinstance(inner, Identity):
            return Identity()
        return BoundedConjugate(inner)
    if isinstance(h, ExtensionCell) and h.spec.word_is_identity(h.word):
        return Identity()
    if isinstance(h, Affine) and h.a == Real.rational(1) and h.b == Real.rational(0):
        return Identity()
    return h


def simplify(h: HomeoExpr) -> HomeoExpr:
    """Extensionally equal expression with the obvious algebra applied.

    Affine chains merge, double inverses vanish, and structurally detectable
    h o h^-1 pairs cancel.  Evaluation agrees with the input everywhere.
    """
    items = [_simplify_leaf(x) for x in _flatten(h)]
    items = [x for x in items if not isinstance(x, Identity)]

    changed = True
    while changed:
        changed = False
        out: list[HomeoExpr] = []
        i = 0
        while i < len(items):
            cur = items[i]
            nxt = items[i + 1] if i + 1 < len(items) else None
            if nxt is not None and isinstance(cur, Affine) and isinstance(nxt, Affine):
                merged = Affine(cur.a * nxt.a, cur.a * nxt.b + cur.b)
                out.append(_simplify_leaf(merged))
                i += 2
                changed = True
                continue
            if nxt is not None and isinstance(cur, ExtensionCell) \
                    and isinstance(nxt, ExtensionCell) and cur.spec is nxt.spec:
                word = cur.spec.mul_words(cur.word, nxt.word)
                merged_cell = ExtensionCell(cur.spec, word)
                out.append(_simplify_leaf(merged_cell))
                i += 2
                changed = True
                continue
            if nxt is not None and nxt == inverse(cur):
                i += 2
                changed = True
                continue
            out.append(cur)
            i += 1
        items = [x for x in out if not isinstance(x, Identity)]

    if not items:
        return Identity()
    result = items[-1]
    for item in reversed(items[:-1]):
        result = Compose(item, result)
    return result


# ---------------------------------------------------------------------------
# fixed points


@dataclass
class FixReport:
    """Fixed-point structure of a map on a finite window.

    ``fixed_points`` are isolated solutions of h(x) = x up to the tolerance;
    ``fixed_intervals`` are runs of grid points where the map is within
    tolerance of the identity; ``complement_intervals`` are the maximal open
    gaps of the window minus the detected fixed set, ordered left to right.
    """

    window: Interval
    fixed_points: list[Real]
    fixed_intervals: list[Interval]
    complement_intervals: list[Interval]
    tolerance: Real


def _sign_of(d: Real, tol: Real) -> int:
    """-1, 0 (within tol), +1; raises UndecidableComparison when unclear."""
    within = abs(d).leq(tol)
    if within is True:
        return 0
    if within is None:
        raise UndecidableComparison("residual straddles the tolerance")
    c = d.cmp_fraction(Fraction(0))
    if c is None:
        raise UndecidableComparison("sign of residual unclear")
    return c


def _retry_precision(fn):
    """Run fn(), doubling working precision on undecidable comparisons."""
    ctx = current_precision()
    bits = ctx.bits
    while True:
        try:
            with precision(bits, ctx.ceiling):
                return fn()
        except UndecidableComparison:
            if bits >= ctx.ceiling:
                raise PrecisionExhausted(
                    f"undecidable at the {ctx.ceiling}-bit ceiling"
                )
            bits = min(bits * 2, ctx.ceiling)


def fixed_points(h: HomeoExpr, window: Interval, grid_n: int = 256,
                 tol: RealLike = Fraction(1, 10**12)) -> FixReport:
    """Locate Fix(h) inside a finite window by grid scan plus bisection."""
    if not window.is_finite:
        raise WindowDegenerate("window must be finite")
    diam = window.diameter()
    if diam.cmp_fraction(Fraction(0)) != 1:
        raise WindowDegenerate("window is empty or a single point")
    if grid_n < 2:
        raise ValueError("grid_n must be at least 2")
    tol = Real.coerce(tol)

    return _retry_precision(lambda: _fixed_points_pass(h, window, grid_n, tol))


def _fixed_points_pass(h, window, grid_n, tol) -> FixReport:
    lo, hi = window.lo, window.hi
    span = hi - lo
    xs = [lo + span * Real.rational(j, grid_n - 1) for j in range(grid_n)]
    signs = [_sign_of(evaluate(h, x) - x, tol) for x in xs]

    fixed_pts: list[Real] = []
    fixed_ivs: list[Interval] = []

    j = 0
    while j < grid_n:
        if signs[j] == 0:
            j0 = j
            while j + 1 < grid_n and signs[j + 1] == 0:
                j += 1
            if j > j0:
                fixed_ivs.append(Interval(xs[j0], xs[j], False, False))
            else:
                fixed_pts.append(xs[j0])
        j += 1

    for j in range(grid_n - 1):
        if signs[j] * signs[j + 1] == -1:
            fixed_pts.append(_bisect_fixed(h, xs[j], xs[j + 1], signs[j], tol))

    objects: list[tuple[Real, Real]] = [(p, p) for p in fixed_pts]
    objects += [(iv.lo, iv.hi) for iv in fixed_ivs]
    objects.sort(key=lambda ab: ab[0].mid())

    complement: list[Interval] = []
    cursor = lo
    cursor_open = window.open_lo
    for a, b in objects:
        if a.cmp(cursor) == 1:
            complement.append(Interval(cursor, a, cursor_open, True))
        if cursor.cmp(b) != 1:
            cursor = b
            cursor_open = True
    if cursor.cmp(hi) == -1:
        complement.append(Interval(cursor, hi, cursor_open, window.open_hi))

    return FixReport(
        window=window,
        fixed_points=fixed_pts,
        fixed_intervals=fixed_ivs,
        complement_intervals=complement,
        tolerance=tol,
    )


def _bisect_fixed(h, a: Real, b: Real, sign_a: int, tol: Real) -> Real:
    for _ in range(20000):
        width_small = (b - a).leq(tol)
        if width_small:
            break
        m = (a + b) / Real.rational(2)
        sm = _sign_of(evaluate(h, m) - m, tol)
        if sm == 0:
            return m
        if sm == sign_a:
            a = m
        else:
            b = m
    return (a + b) / Real.rational(2)


def is_identity_on(h: HomeoExpr, iv: Interval, grid_n: int = 64,
                   tol: RealLike = Fraction(1, 10**12)) -> bool:
    """Does h restrict to the identity on iv, up to tol on a sample grid?"""
    if iv.is_empty or not iv.is_finite:
        raise ValueError("need a nonempty finite interval")
    if isinstance(simplify(h), Identity):
        return True
    tol = Real.coerce(tol)
    lo, hi = iv.lo, iv.hi
    span = hi - lo

    def run() -> bool:
        for j in range(grid_n):
            x = lo + span * Real.rational(j + 1, grid_n + 1)
            ok = abs(evaluate(h, x) - x).leq(tol)
            if ok is None:
                raise UndecidableComparison("identity check unclear")
            if not ok:
                return False
        return True

    return _retry_precision(run)


# ---------------------------------------------------------------------------
# canonical text form


def _real_text(r: Real) -> str:
    return str(r)


def to_text(h: HomeoExpr) -> str:
    """Canonical prefix notation, e.g. compose(affine(1,1), oddpower(3,fwd))."""
    if isinstance(h, Identity):
        return "identity"
    if isinstance(h, Affine):
        return f"affine({_real_text(h.a)},{_real_text(h.b)})"
    if isinstance(h, OddPower):
        return f"oddpower({h.p},{'root' if h.root else 'fwd'})"
    if isinstance(h, UnitPowerLadder):
        return f"unitpowerladder({h.k},{'+1' if h.s > 0 else '-1'})"
    if isinstance(h, BoundedConjugate):
        return f"boundedconjugate({to_text(h.inner)})"
    if isinstance(h, ExtensionCell):
        return f"extensioncell({h.spec.word_str(h.word)})"
    if isinstance(h, Compose):
        return f"compose({to_text(h.left)},{to_text(h.right)})"
    if isinstance(h, Inverse):
        return f"inverse({to_text(h.child)})"
    raise TypeError(f"not a homeomorphism expression: {h!r}")
