"""Orbit exploration, transitivity search, wandering certificates, and the
nested-interval constructions.

Universal quantifiers over an infinite group are truncated to word balls of
a declared radius L; every verdict produced here records the radius it was
computed at.  Disjointness and containment tests use rigorous interval
images (monotone endpoint evaluation with outward error bounds); a test that
cannot be decided at the precision ceiling is reported as a violation rather
than silently passed.

Certificate sweeps quantify over freely reduced *words* rather than
deduplicated group elements: the same element may be tested several times
under different spellings, which costs a little time and buys independence
from normal-form code.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .actions import Action, realize
from .homeo import (
    HomeoExpr,
    Identity,
    eval_interval,
    evaluate,
    fixed_points,
    inverse,
    is_identity_on,
    simplify,
)
from .reals import (
    Interval,
    PrecisionExhausted,
    Real,
    RealLike,
    current_precision,
    precision,
)
from .words import GroupElement, multiply

__all__ = [
    "NotApplicable",
    "NoMovingPair",
    "ConstructionFailed",
    "OrbitPoint",
    "orbit",
    "coverage_gap",
    "transitivity_search",
    "WordVerdict",
    "WanderingCertificate",
    "wandering_certificate",
    "FindReport",
    "find_wandering_interval",
    "LadderParams",
    "LadderLevel",
    "CantorLadder",
    "cantor_ladder",
    "LadderCheck",
    "check_ladder",
    "Thresholds",
    "OrbitClosureClass",
    "classify_orbit_closure",
]


class NotApplicable(Exception):
    """The operation's supported group family does not cover this action."""


class NoMovingPair(Exception):
    """No word in the search ball moves any sample point within the seed."""


class ConstructionFailed(Exception):
    """A construction invariant failed; carries a diagnosis and any partial result."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


# ---------------------------------------------------------------------------
# incremental ball sweeps

Letter = tuple[int, int]


def _letter_images(act: Action) -> dict[Letter, HomeoExpr]:
    out: dict[Letter, HomeoExpr] = {}
    for i in range(act.presentation.rank):
        img = act.image_by_index(i)
        out[(i, 1)] = img
        out[(i, -1)] = inverse(img)
    return out


def _ball_values(act: Action, x: Real, radius: int):
    """Yield (element, value) over the deduplicated ball, shortlex order.

    Values are computed incrementally: extending a word on the left costs a
    single generator application.
    """
    from .words import normal_form_key, reduce_letters

    p = act.presentation
    imgs = _letter_images(act)
    ident = p.identity()
    yield ident, x
    seen = {normal_form_key(p, ident)}
    frontier: list[tuple[GroupElement, Real]] = [(ident, x)]
    letters = [(i, s) for i in range(p.rank) for s in (1, -1)]
    for _ in range(radius):
        nxt: list[tuple[GroupElement, Real]] = []
        for lg, le in letters:
            img = imgs[(lg, le)]
            for w, v in frontier:
                if w.word and w.word[0][0] == lg and (w.word[0][1] > 0) != (le > 0):
                    continue
                w2 = reduce_letters(p, ((lg, le),) + w.word)
                key = normal_form_key(p, w2)
                if key in seen:
                    continue
                seen.add(key)
                v2 = evaluate(img, v)
                nxt.append((w2, v2))
                yield w2, v2
        frontier = nxt


def _ball_images(act: Action, iv: Interval, radius: int,
                 dedup: bool = True, include_identity: bool = False):
    """Yield (element-or-word, image interval) in shortlex order.

    ``dedup=True`` walks distinct group elements; ``dedup=False`` walks all
    freely reduced words.  Words whose image cannot be evaluated (cell
    exponent out of range) yield ``None`` as image.
    """
    from .words import normal_form_key, reduce_letters

    p = act.presentation
    imgs = _letter_images(act)
    ident = p.identity()
    if include_identity:
        yield ident, iv
    seen = {normal_form_key(p, ident)} if dedup else None
    frontier: list[tuple[GroupElement, Optional[Interval]]] = [(ident, iv)]
    letters = [(i, s) for i in range(p.rank) for s in (1, -1)]
    for _ in range(radius):
        nxt: list[tuple[GroupElement, Optional[Interval]]] = []
        for lg, le in letters:
            img = imgs[(lg, le)]
            for w, J in frontier:
                if w.word and w.word[0][0] == lg and (w.word[0][1] > 0) != (le > 0):
                    continue
                w2 = reduce_letters(p, ((lg, le),) + w.word)
                if dedup:
                    key = normal_form_key(p, w2)
                    if key in seen:
                        continue
                    seen.add(key)
                if J is None:
                    J2 = None
                else:
                    try:
                        J2 = eval_interval(img, J)
                    except PrecisionExhausted:
                        J2 = None
                nxt.append((w2, J2))
                yield w2, J2
        frontier = nxt


# ---------------------------------------------------------------------------
# orbits and density


@dataclass
class OrbitPoint:
    value: Real
    word: GroupElement


def orbit(act: Action, x: RealLike, radius: int) -> list[OrbitPoint]:
    """Sorted orbit sample {w(x) : w in the radius-L ball}, deduplicated.

    Two values merge when their enclosures overlap (equality within combined
    error bounds); the witness kept for a merged point is the shortlex-first
    word that produced it.
    """
    x = Real.coerce(x)
    pts = [OrbitPoint(v, w) for w, v in _ball_values(act, x, radius)]
    order = sorted(range(len(pts)), key=lambda i: pts[i].value.mid())
    merged: list[OrbitPoint] = []
    for idx in order:
        pt = pts[idx]
        if merged:
            prev = merged[-1]
            plo, phi = prev.value.bounds()
            lo, hi = pt.value.bounds()
            if lo <= phi and plo <= hi:
                continue
        merged.append(pt)
    return merged


def coverage_gap(points: Sequence, window: Interval) -> Real:
    """Largest gap left by the points inside a finite window.

    Points may be Reals or OrbitPoints, assumed sorted.  The window's
    endpoints count as gap borders; with no points inside, the gap is the
    window diameter.
    """
    if not window.is_finite:
        raise ValueError("need a finite window")
    lo, hi = window.lo, window.hi
    lo_f, hi_f = lo.mid(), hi.mid()
    values: list[Real] = []
    for p in points:
        v = p.value if isinstance(p, OrbitPoint) else Real.coerce(p)
        m = v.mid()
        if lo_f <= m <= hi_f:
            values.append(v)
    best = Real.rational(0)
    prev = lo
    for v in values + [hi]:
        gap = v - prev
        if gap.mid() > best.mid():
            best = gap
        prev = v
    return best


# ---------------------------------------------------------------------------
# transitivity search


def transitivity_search(act: Action, U: Interval, V: Interval,
                        radius: int) -> Optional[GroupElement]:
    """Shortlex-first word whose image of U certainly meets V, else None.

    The search walks the deduplicated ball breadth-first with incremental
    interval images, so the returned witness is the shortlex-first element of
    the radius-L ball with w(U) intersecting V.
    """
    for iv in (U, V):
        if iv.is_empty or not iv.is_finite:
            raise ValueError("U and V must be nonempty finite intervals")
    for w, img in _ball_images(act, U, radius, dedup=True, include_identity=True):
        if img is not None and img.certainly_intersects(V):
            return w
    return None


# ---------------------------------------------------------------------------
# wandering certificates


@dataclass
class WordVerdict:
    word: GroupElement
    verdict: str          # 'disjoint' | 'pointwise-fixed' | 'violation'
    reason: str = ""


@dataclass
class WanderingCertificate:
    """Per-word verdicts attesting that an interval wanders at radius L."""

    interval: Interval
    radius: int
    grid_n: int
    tolerance: Real
    verdicts: list[WordVerdict]
    certified: bool
    witness: Optional[GroupElement] = None

    def counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for v in self.verdicts:
            out[v.verdict] = out.get(v.verdict, 0) + 1
        return out


def _disjoint_with_retry(act: Action, w: GroupElement, J: Interval) -> Optional[bool]:
    """True/False when certain, retrying at higher precision; None at ceiling."""
    ctx = current_precision()
    bits = ctx.bits
    while True:
        with precision(bits, ctx.ceiling):
            try:
                img = eval_interval(realize(act, w), J)
            except PrecisionExhausted:
                return None
            if img.certainly_disjoint(J):
                return True
            if img.certainly_intersects(J):
                return False
        if bits >= ctx.ceiling:
            return None
        bits = min(bits * 2, ctx.ceiling)


def wandering_certificate(act: Action, J: Interval, radius: int,
                          grid_n: int = 64,
                          tol: RealLike = Fraction(1, 10**12)) -> WanderingCertificate:
    """Sweep every nonempty freely reduced word of length <= radius over J.

    Verdicts: Disjoint when w(J) provably misses J; PointwiseFixed when w
    restricts to the identity on J within tol; otherwise Violation (including
    the case where the test cannot be decided at the precision ceiling, which
    is reported rather than assumed away).
    """
    if J.is_empty or not J.is_finite:
        raise ValueError("J must be a nonempty finite open interval")
    tol = Real.coerce(tol)
    verdicts: list[WordVerdict] = []
    witness = None
    for w, img in _ball_images(act, J, radius, dedup=False, include_identity=False):
        if img is not None and img.certainly_disjoint(J):
            verdicts.append(WordVerdict(w, "disjoint"))
            continue
        hw = realize(act, w)
        try:
            if is_identity_on(hw, J, grid_n, tol):
                verdicts.append(WordVerdict(w, "pointwise-fixed"))
                continue
        except PrecisionExhausted:
            verdicts.append(WordVerdict(w, "violation", "identity test undecidable"))
            witness = witness or w
            continue
        disj = _disjoint_with_retry(act, w, J)
        if disj is True:
            verdicts.append(WordVerdict(w, "disjoint"))
        elif disj is False:
            verdicts.append(WordVerdict(w, "violation", "image overlaps"))
            witness = witness or w
        else:
            verdicts.append(WordVerdict(w, "violation", "undecidable at ceiling"))
            witness = witness or w
    certified = all(v.verdict != "violation" for v in verdicts)
    return WanderingCertificate(
        interval=J, radius=radius, grid_n=grid_n, tolerance=tol,
        verdicts=verdicts, certified=certified, witness=witness,
    )


# ---------------------------------------------------------------------------
# wandering interval construction


@dataclass
class ClaimCheck:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class FindReport:
    interval: Interval
    pivot_label: Optional[str]
    component: Optional[Interval]
    claims: list[ClaimCheck]
    trivial_action: bool = False


def _wandering_chain(act: Action) -> list[str]:
    """Generator labels innermost-first for the supported wandering families."""
    p = act.presentation
    if p.kind == "bs" and p.n == -1:
        return [p.labels[0], p.labels[1]]
    if p.kind == "ladder" and all(s == -1 for s in p.name):
        return list(reversed(p.labels))
    raise NotApplicable(
        "wandering construction supports B(1,-1) and all-(-1) ladder actions"
    )


def find_wandering_interval(act: Action, window: Interval,
                            grid_n: int = 512,
                            tol: RealLike = Fraction(1, 10**10),
                            claim_samples: int = 24) -> FindReport:
    """Construct a candidate wandering interval from the fixed-set geometry.

    Finds the innermost generator with fixed points missing somewhere in the
    window, takes the maximal complement component nearest the window center,
    verifies the invariance and disjointness claims along the generator
    chain, then shrinks a subinterval off itself under the pivot generator.
    """
    chain = _wandering_chain(act)
    tol = Real.coerce(tol)
    if not window.is_finite:
        raise ValueError("window must be finite")

    claims: list[ClaimCheck] = []
    pivot_idx = None
    pivot_report = None
    for idx, lab in enumerate(chain):
        h = simplify(act.image(lab))
        if isinstance(h, Identity):
            continue
        rep = fixed_points(h, window, grid_n, tol)
        if rep.complement_intervals:
            pivot_idx, pivot_report = idx, rep
            break
    if pivot_idx is None:
        claims.append(ClaimCheck("trivial-restriction", True,
                                 "all generators act as the identity here"))
        return FindReport(window, None, None, claims, trivial_action=True)

    pivot_label = chain[pivot_idx]
    center = window.midpoint()
    comp = min(
        pivot_report.complement_intervals,
        key=lambda c: (abs(c.midpoint() - center).mid(), -c.midpoint().mid()),
    )
    pivot_img = act.image(pivot_label)

    # deeper generators (inside the pivot) act trivially by choice of pivot
    outer = chain[pivot_idx + 1:]
    if outer:
        nxt = act.image(outer[0])
        moved = eval_interval(nxt, comp)
        ok = moved.certainly_disjoint(comp)
        claims.append(ClaimCheck(
            "outer-moves-component-off-itself", ok,
            f"{outer[0]}({comp}) = {moved}",
        ))
        if not ok:
            raise ConstructionFailed(
                f"component {comp} not displaced by {outer[0]}",
                partial=FindReport(comp, pivot_label, comp, claims),
            )
        # the outer generator must permute the pivot's fixed set
        fixed_objs = [(pt, pt) for pt in pivot_report.fixed_points]
        fixed_objs += [(iv.lo, iv.hi) for iv in pivot_report.fixed_intervals]
        anchors = [a for a, _ in fixed_objs] + [b for _, b in fixed_objs]
        checked = passed = 0
        for s in anchors[:claim_samples]:
            y = evaluate(nxt, s)
            if not window.certainly_contains_point(y):
                continue
            checked += 1
            near = any(
                abs(y - a).leq(tol * Real.rational(4)) for a, _ in fixed_objs
            ) or any(
                (a - tol).definitely_le(y) and y.definitely_le(b + tol)
                for a, b in fixed_objs
            )
            if near:
                passed += 1
        ok_fix = checked == 0 or passed == checked
        claims.append(ClaimCheck(
            "outer-permutes-fixed-set", ok_fix,
            f"{passed}/{checked} sampled fixed points map onto the fixed set",
        ))
        if not ok_fix:
            raise ConstructionFailed(
                "fixed set not invariant under the outer generator",
                partial=FindReport(comp, pivot_label, comp, claims),
            )
        for lab in outer[1:]:
            h = act.image(lab)
            moved = eval_interval(h, comp)
            ok2 = moved.certainly_disjoint(comp) or _setwise_fixed(h, comp, tol)
            claims.append(ClaimCheck(
                f"outermost-{lab}-compatible", ok2, f"{lab}({comp}) = {moved}",
            ))
            if not ok2:
                raise ConstructionFailed(
                    f"{lab} neither displaces nor preserves the component",
                    partial=FindReport(comp, pivot_label, comp, claims),
                )

    # shrink a subinterval of the component off itself under the pivot map
    c = comp.midpoint()
    lo_room = c - comp.lo
    hi_room = comp.hi - c
    delta = (lo_room if lo_room.mid() < hi_room.mid() else hi_room) / Real.rational(2)
    J = None
    for _ in range(80):
        cand = Interval.open(c - delta, c + delta)
        img = eval_interval(pivot_img, cand)
        if img.certainly_disjoint(cand) and cand.certainly_subset_of(comp):
            J = cand
            break
        delta = delta / Real.rational(2)
    if J is None:
        raise ConstructionFailed(
            "no subinterval separates from its pivot image",
            partial=FindReport(comp, pivot_label, comp, claims),
        )
    claims.append(ClaimCheck(
        "pivot-displaces-subinterval", True,
        f"{pivot_label}({J}) disjoint from {J}",
    ))
    return FindReport(J, pivot_label, comp, claims)


def _setwise_fixed(h: HomeoExpr, iv: Interval, tol: Real) -> bool:
    lo_ok = abs(evaluate(h, iv.lo) - iv.lo).leq(tol)
    hi_ok = abs(evaluate(h, iv.hi) - iv.hi).leq(tol)
    return bool(lo_ok) and bool(hi_ok)


# ---------------------------------------------------------------------------
# the nested-interval ladder


@dataclass
class LadderParams:
    """Tunables for the finite-depth nested-interval construction.

    ``orbit_depth`` is the word radius used to sample the invariant-set
    stand-in (the orbit of the level grid); None means "same as the check
    radius L".  Lower values keep the sample sparse enough for the next
    level's mover to fit inside a gap; see the ladder demos for working
    combinations.
    """

    orbit_depth: Optional[int] = None
    candidates: int = 40
    max_halvings: int = 60
    eq_tol_scale: Fraction = Fraction(1)


@dataclass
class LadderLevel:
    index: int
    mover: GroupElement
    base_point: Real
    v_interval: Interval
    grid_size: int
    u_interval: Interval


@dataclass
class CantorLadder:
    depth: int
    radius: int
    seed: Interval
    params: LadderParams
    levels: list[LadderLevel]
    element_sets: list[list[GroupElement]]     # G_1 ... G_depth
    lambda_sets: list[list[Interval]]          # closed components per level

    def level_tolerance(self, i: int) -> Real:
        u = self.levels[i - 1].u_interval
        return u.diameter() * Real.coerce(Fraction(self.params.eq_tol_scale))


def _grid_fractions(n: int) -> list[Fraction]:
    return [Fraction(j, n) for j in range(n + 1)]


def _movers(act: Action, U: Interval, radius: int, candidates: int,
            max_halvings: int):
    """Deterministic mover scan: (word, x, delta) with the largest safe V radius."""
    p = act.presentation
    lo, hi = U.lo, U.hi
    span = hi - lo
    xs = [lo + span * Real.rational(j, candidates + 1)
          for j in range(1, candidates + 1)]
    best = None
    for w, img in _ball_images(act, U, radius, dedup=True, include_identity=False):
        if img is None or img.certainly_disjoint(U):
            continue
        hw = realize(act, w)
        for x in xs:
            try:
                y = evaluate(hw, x)
            except PrecisionExhausted:
                continue
            if not (x.definitely_lt(y) and y.definitely_lt(hi)
                    and lo.definitely_lt(x)):
                continue
            delta = _max_separation(hw, x, y, U, max_halvings)
            if delta is None:
                continue
            if best is None or delta.mid() > best[2].mid():
                best = (w, x, delta)
    return best


def _max_separation(hw: HomeoExpr, x: Real, y: Real, U: Interval,
                    max_halvings: int) -> Optional[Real]:
    """Largest halving-found radius d with [x-d,x+d] and its image separated in U."""
    lo, hi = U.lo, U.hi
    room = x - lo
    if (hi - y).mid() < room.mid():
        room = hi - y
    if (y - x).mid() / 2 < room.mid():
        room = (y - x) / Real.rational(2)
    d = room * Real.rational(9, 10)
    for _ in range(max_halvings):
        if d.cmp_fraction(Fraction(0)) != 1:
            return None
        a, b = x - d, x + d
        try:
            fa, fb = evaluate(hw, a), evaluate(hw, b)
        except PrecisionExhausted:
            d = d / Real.rational(2)
            continue
        if lo.definitely_lt(a) and fb.definitely_lt(hi) and (x + d).definitely_lt(fa):
            return d
        d = d / Real.rational(2)
    return None


def cantor_ladder(act: Action, depth: int, radius: int,
                  seed: Optional[Interval] = None,
                  params: Optional[LadderParams] = None) -> CantorLadder:
    """Run the nested-interval construction to a finite depth.

    Each level finds a word moving a point rightward within the previous
    interval, shrinks a neighborhood until it separates from its image,
    lays a unit grid fine enough for the level index, and takes a maximal
    gap of the grid's depth-limited orbit as the next interval.  Raises
    NoMovingPair when the seed admits no move at all, ConstructionFailed
    (with the partial ladder attached) when a deeper level gets stuck.
    """
    if seed is None:
        seed = Interval.open(0, 1)
    params = params or LadderParams()
    orbit_depth = params.orbit_depth if params.orbit_depth is not None else radius

    levels: list[LadderLevel] = []
    U_prev = seed
    for i in range(1, depth + 1):
        found = _movers(act, U_prev, radius, params.candidates, params.max_halvings)
        if found is None:
            if i == 1:
                raise NoMovingPair(
                    f"no word of length <= {radius} moves a point within {U_prev}"
                )
            raise ConstructionFailed(
                f"level {i}: no moving pair inside {U_prev} at radius {radius}",
                partial=_assemble_ladder(act, depth, radius, seed, params, levels),
            )
        w, x, delta = found
        V = Interval.open(x - delta, x + delta)
        diam_lo = V.diameter().bounds()[0]
        ii = max(i + 1, int(2 / diam_lo) + 1)
        S = _grid_orbit_in(act, _grid_fractions(ii), V, orbit_depth)
        if len(S) < 2:
            raise ConstructionFailed(
                f"level {i}: grid orbit left fewer than two points in {V}",
                partial=_assemble_ladder(act, depth, radius, seed, params, levels),
            )
        gap_best = None
        for a, b in zip(S, S[1:]):
            width = (b - a).mid()
            if gap_best is None or width > gap_best[2]:
                gap_best = (a, b, width)
        a, b, _ = gap_best
        if not (a.definitely_lt(b)):
            raise ConstructionFailed(
                f"level {i}: largest orbit gap degenerate",
                partial=_assemble_ladder(act, depth, radius, seed, params, levels),
            )
        U_i = Interval.open(a, b)
        levels.append(LadderLevel(i, w, x, V, ii, U_i))
        U_prev = U_i

    return _assemble_ladder(act, depth, radius, seed, params, levels)


def _grid_orbit_in(act: Action, grid: list[Fraction], V: Interval,
                   orbit_depth: int) -> list[Real]:
    """Sorted orbit points of the grid landing inside closure(V).

    Uses preimages: for each ball word w, only grid points inside w^-1(V)
    are pushed forward, so the cost is two endpoint evaluations per word
    plus one per actual hit.
    """
    Vc = V.closure()
    vlo, vhi = Vc.lo.bounds()[0], Vc.hi.bounds()[1]
    hits: list[Real] = []
    seenkeys = set()

    def consider(v: Real):
        # midpoint filter against the outer closure bounds; a point admitted
        # within endpoint error of the boundary only shrinks the gaps found
        if vlo <= v.mid() <= vhi:
            key = v.bounds()
            if key not in seenkeys:
                seenkeys.add(key)
                hits.append(v)

    for g in grid:
        consider(Real.from_fraction(g))

    if orbit_depth > 0:
        for w, _ in _ball_images(act, V, orbit_depth, dedup=True,
                                 include_identity=False):
            hw = realize(act, w)
            try:
                pre = eval_interval(inverse(hw), Vc)
            except PrecisionExhausted:
                continue
            plo = pre._lo_fr()
            phi = pre._hi_fr()
            for g in grid:
                if plo is not None and g < plo:
                    continue
                if phi is not None and g > phi:
                    continue
                try:
                    v = evaluate(hw, Real.from_fraction(g))
                except PrecisionExhausted:
                    continue
                consider(v)

    hits.sort(key=lambda v: v.mid())
    dedup: list[Real] = []
    for v in hits:
        if dedup:
            plo, phi = dedup[-1].bounds()
            lo, hi = v.bounds()
            if lo <= phi and plo <= hi:
                continue
        dedup.append(v)
    return dedup


def _assemble_ladder(act, depth, radius, seed, params, levels) -> CantorLadder:
    from .words import normal_form_key

    element_sets: list[list[GroupElement]] = []
    lambda_sets: list[list[Interval]] = []
    p = act.presentation
    current: list[GroupElement] = [p.identity()]
    for lvl in levels:
        current = current + [multiply(g, lvl.mover) for g in current]
        element_sets.append(list(current))
        closed = lvl.u_interval.closure()
        lam = [eval_interval(realize(act, g), closed) for g in current]
        lambda_sets.append(lam)
    return CantorLadder(
        depth=depth, radius=radius, seed=seed, params=params,
        levels=levels, element_sets=element_sets, lambda_sets=lambda_sets,
    )


@dataclass
class LadderCheck:
    condition: str
    level: int
    passed: bool
    detail: str = ""


def check_ladder(act: Action, ladder: CantorLadder) -> list[LadderCheck]:
    """Independent post-hoc verification of the four ladder conditions.

    (1) nesting and (4) separation are endpoint-exact interval comparisons;
    (2) displacement-or-equality and (3) small image diameter are verified
    for every element of the radius-L ball.  Equality in (2) is relative to
    the level tolerance (the construction's resolution, diam U_i).
    """
    from .words import ball as word_ball
    from .words import normal_form_key

    checks: list[LadderCheck] = []
    unit = Interval.closed(0, 1)
    U_prev = ladder.seed
    ball_elems = [w for w in word_ball(act.presentation, ladder.radius)
                  if not w.is_identity_word]

    for lvl in ladder.levels:
        i = lvl.index
        U = lvl.u_interval
        checks.append(LadderCheck(
            "nesting", i, U.certainly_subset_of(U_prev),
            f"U_{i} = {U} inside U_{i-1} = {U_prev}",
        ))
        closed = U.closure()
        gU = eval_interval(realize(act, lvl.mover), closed)
        sep = gU.certainly_disjoint(closed)
        inside = closed.certainly_subset_of(U_prev) and gU.certainly_subset_of(U_prev)
        checks.append(LadderCheck(
            "separation", i, sep and inside,
            f"mover {lvl.mover} sends {closed} to {gU}",
        ))
        tol = ladder.level_tolerance(i)
        bad = None
        small_bad = None
        bound = Real.rational(1, i)
        for w in ball_elems:
            hw = realize(act, w)
            try:
                img = eval_interval(hw, U)
            except PrecisionExhausted:
                bad = bad or (w, "image not evaluable")
                continue
            if not img.certainly_disjoint(U):
                lo_close = abs(evaluate(hw, U.lo) - U.lo).leq(tol)
                hi_close = abs(evaluate(hw, U.hi) - U.hi).leq(tol)
                if not (lo_close and hi_close):
                    bad = bad or (w, f"image {img} partially overlaps")
            clipped = img.intersection_hull(unit)
            d = clipped.diameter()
            if d is not None and not d.definitely_lt(bound):
                small_bad = small_bad or (w, f"diam {d} in [0,1] not < 1/{i}")
        checks.append(LadderCheck(
            "displacement-or-equality", i, bad is None,
            "" if bad is None else f"{bad[0]}: {bad[1]}",
        ))
        checks.append(LadderCheck(
            "image-diameter", i, small_bad is None,
            "" if small_bad is None else f"{small_bad[0]}: {small_bad[1]}",
        ))
        U_prev = U

    for i, elems in enumerate(ladder.element_sets, start=1):
        keys = {normal_form_key(act.presentation, g) for g in elems}
        checks.append(LadderCheck(
            "element-count", i, len(keys) == 2 ** i,
            f"|G_{i}| = {len(keys)}",
        ))

    for i in range(1, len(ladder.lambda_sets)):
        lam, prev = ladder.lambda_sets[i], ladder.lambda_sets[i - 1]
        nested = all(any(c.certainly_subset_of(pc) for pc in prev) for c in lam)
        checks.append(LadderCheck(
            "lambda-nesting", i + 1, nested,
            f"level {i + 1} components inside level {i}",
        ))
    last = ladder.lambda_sets[-1] if ladder.lambda_sets else []
    disjoint = all(
        last[a].certainly_disjoint(last[b])
        for a in range(len(last)) for b in range(a + 1, len(last))
    )
    checks.append(LadderCheck(
        "lambda-disjoint", ladder.depth, disjoint,
        f"{len(last)} components pairwise disjoint",
    ))
    return checks


# ---------------------------------------------------------------------------
# orbit-closure classification


@dataclass
class Thresholds:
    dense_fraction: Fraction = Fraction(1, 20)
    discrete_spacing: Fraction = Fraction(1, 5)
    growth_ratio: Fraction = Fraction(5, 2)


@dataclass
class OrbitClosureClass:
    kind: str    # 'fixed-point' | 'discrete-sequence' | 'cantor-like' | 'dense'
    evidence: dict


def classify_orbit_closure(act: Action, x: RealLike, radius: int,
                           window: Interval,
                           thresholds: Optional[Thresholds] = None) -> OrbitClosureClass:
    """Heuristic orbit-closure shape from a finite sample.

    The verdict is a deterministic function of the orbit sample and the
    declared thresholds.  'cantor-like' is best-effort: no finite sample can
    witness a Cantor structure, so it is the residual class.
    """
    th = thresholds or Thresholds()
    x = Real.coerce(x)
    diam = window.diameter()
    pts_half = orbit(act, x, max(radius // 2, 1))
    pts = orbit(act, x, radius)
    lo_f, hi_f = window.lo.mid(), window.hi.mid()
    inside = [p for p in pts if lo_f <= p.value.mid() <= hi_f]
    inside_half = [p for p in pts_half if lo_f <= p.value.mid() <= hi_f]

    evidence: dict = {
        "radius": radius,
        "count": len(inside),
        "count_half_radius": len(inside_half),
    }
    if len(inside) <= 1:
        return OrbitClosureClass("fixed-point", evidence)

    gap = coverage_gap(inside, window)
    evidence["coverage_gap"] = float(gap.mid())
    evidence["window_diameter"] = float(diam.mid())
    if gap.mid() < Fraction(th.dense_fraction) * diam.mid():
        return OrbitClosureClass("dense", evidence)

    gaps = sorted(
        (b.value.mid() - a.value.mid()) for a, b in zip(inside, inside[1:])
    )
    min_gap = gaps[0]
    median_gap = gaps[len(gaps) // 2]
    growth = Fraction(len(inside), max(len(inside_half), 1))
    evidence["min_gap"] = float(min_gap)
    evidence["median_gap"] = float(median_gap)
    evidence["growth_ratio"] = float(growth)
    if min_gap > Fraction(th.discrete_spacing) * median_gap \
            and growth <= th.growth_ratio:
        return OrbitClosureClass("discrete-sequence", evidence)
    return OrbitClosureClass("cantor-like", evidence)
