"""Bindings of presentations to line homeomorphisms.

An :class:`Action` maps each generator label of a presentation to a
homeomorphism expression.  Words act through :func:`realize` with the left
action convention: the leftmost letter of a word acts last (outermost).
Relation residuals are checked numerically by :func:`check_relations`, with a
structural shortcut that recognizes extensionally equal sides after
simplification and reports an exactly zero residual.

The :func:`gallery` registry holds the stock catalog of actions used across
the test and demo suites, addressable by catalog id (``ex_1_1`` ...
``free_transitive``) or by a descriptive alias.

:func:`extend_action` implements the induction step that upgrades an action
of a normal subgroup H supported on (0,1) to an action of an extension G
with infinite cyclic quotient: the coset generator translates by one and an
H-generator acts on each cell [j, j+1] through a conjugated H-word.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .homeo import (
    Affine,
    BoundedConjugate,
    ExtensionCell,
    HomeoExpr,
    HorizonExceeded,
    OddPower,
    UnitPowerLadder,
    compose_all,
    evaluate,
    inverse,
    power,
    simplify,
    structurally_equal,
)
from .reals import Interval, Real, RealLike
from .words import (
    GroupElement,
    Presentation,
    UnknownGenerator,
    multiply,
    normal_form_key,
)

__all__ = [
    "UnknownGalleryName",
    "BadParameter",
    "Action",
    "realize",
    "RelationCheck",
    "RelationReport",
    "check_relations",
    "sample_points",
    "gallery",
    "gallery_entries",
    "ExtensionSpec",
    "extend_action",
    "direct_product_extension",
    "conjugate_into_unit",
    "homomorphism_residual",
    "random_element",
]


class UnknownGalleryName(Exception):
    pass


class BadParameter(Exception):
    pass


@dataclass
class Action:
    """Generator images for a presentation, with optional verification stamp."""

    presentation: Presentation
    images: dict[str, HomeoExpr]
    verification: Optional["RelationReport"] = None

    def __post_init__(self):
        for lab in self.presentation.labels:
            if lab not in self.images:
                raise UnknownGenerator(f"no image bound for generator {lab!r}")

    def image(self, label: str) -> HomeoExpr:
        try:
            return self.images[label]
        except KeyError:
            raise UnknownGenerator(f"no generator named {label!r}") from None

    def image_by_index(self, i: int) -> HomeoExpr:
        return self.image(self.presentation.labels[i])


def realize(act: Action, w: GroupElement) -> HomeoExpr:
    """The homeomorphism of a word: leftmost letter outermost."""
    if w.presentation != act.presentation:
        raise UnknownGenerator("word is over a different presentation")
    factors = [power(act.image_by_index(g), e) for g, e in w.word]
    return compose_all(factors)


# ---------------------------------------------------------------------------
# relation checking


@dataclass
class RelationCheck:
    lhs: GroupElement
    rhs: GroupElement
    residual: Real
    passed: bool
    structural: bool = False
    worst_point: Optional[Real] = None


@dataclass
class RelationReport:
    checks: list[RelationCheck]
    tolerance: Real
    sample_size: int

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def worst_residual(self) -> Real:
        worst = Real.rational(0)
        for c in self.checks:
            if c.residual.bounds()[1] > worst.bounds()[1]:
                worst = c.residual
        return worst


def sample_points(window: Interval, count: int) -> list[Real]:
    """Deterministic rational sample grid strictly inside a finite window."""
    if not window.is_finite:
        raise ValueError("need a finite window")
    lo, hi = window.lo, window.hi
    span = hi - lo
    return [lo + span * Real.rational(2 * j + 1, 2 * count) for j in range(count)]


def check_relations(act: Action, points: Sequence[Real],
                    tol: RealLike = Fraction(1, 10**20)) -> RelationReport:
    """Residuals |lhs(x) - rhs(x)| over the sample for each defining relation.

    Failure is a report outcome, never an exception.  Extensionally equal
    sides detected by simplification short-circuit to an exact zero residual.
    """
    tol = Real.coerce(tol)
    checks = []
    for lhs, rhs in act.presentation.relations():
        hl = simplify(realize(act, lhs))
        hr = simplify(realize(act, rhs))
        if structurally_equal(hl, hr):
            checks.append(RelationCheck(lhs, rhs, Real.rational(0), True, True))
            continue
        worst = Real.rational(0)
        worst_x = None
        for x in points:
            r = abs(evaluate(hl, x) - evaluate(hr, x))
            if r.bounds()[1] > worst.bounds()[1]:
                worst, worst_x = r, x
        ok = worst.leq(tol)
        checks.append(RelationCheck(lhs, rhs, worst, bool(ok), False, worst_x))
    return RelationReport(checks, tol, len(points))


# ---------------------------------------------------------------------------
# the stock gallery


def _alpha_param(alpha) -> Real:
    if isinstance(alpha, Real):
        return alpha
    if isinstance(alpha, (int, Fraction)):
        return Real.coerce(alpha)
    if isinstance(alpha, str):
        named = {
            "sqrt2": Real.sqrt2,
            "sqrt3": Real.sqrt3,
            "pi": Real.pi,
            "e": Real.e,
        }
        if alpha in named:
            return named[alpha]()
        try:
            if "/" in alpha:
                return Real.from_fraction(Fraction(alpha))
            return Real.from_fraction(Fraction(alpha).limit_denominator(10**30)
                                      if "." not in alpha else _decimal_fraction(alpha))
        except ValueError:
            raise BadParameter(f"cannot parse alpha {alpha!r}") from None
    raise BadParameter(f"cannot parse alpha {alpha!r}")


def _decimal_fraction(text: str) -> Fraction:
    sign = -1 if text.startswith("-") else 1
    body = text.lstrip("+-")
    whole, _, frac = body.partition(".")
    den = 10 ** len(frac)
    num = int(whole or "0") * den + int(frac or "0")
    return Fraction(sign * num, den)


def _one() -> Real:
    return Real.rational(1)


def _gallery_integer_translation() -> Action:
    p = Presentation.free_abelian(1, labels=("a",))
    return Action(p, {"a": Affine(_one(), _one())})


def _gallery_two_translations(alpha="sqrt2") -> Action:
    p = Presentation.free_abelian(2, labels=("a", "b"))
    return Action(p, {
        "a": Affine(_one(), _one()),
        "b": Affine(_one(), _alpha_param(alpha)),
    })


def _gallery_affine_dilation(n=2) -> Action:
    n = int(n)
    if n < 2:
        raise BadParameter("the dilation catalog entry needs n >= 2")
    p = Presentation.baumslag_solitar(n, labels=("a", "b"))
    return Action(p, {
        "a": Affine(_one(), _one()),
        "b": Affine(Real.rational(n), Real.rational(0)),
    })


def _gallery_power_ladder(k=2) -> Action:
    k = int(k)
    if k < 2:
        raise BadParameter("the alternating ladder catalog entry needs k >= 2")
    p = Presentation.baumslag_solitar(-k, labels=("g", "f"))
    return Action(p, {
        "g": UnitPowerLadder(k, 1),
        "f": Affine(_one(), _one()),
    })


def _gallery_klein_bottle() -> Action:
    p = Presentation.baumslag_solitar(-1, labels=("g", "f"))
    return Action(p, {
        "g": UnitPowerLadder(1, 1),
        "f": Affine(_one(), _one()),
    })


def _gallery_free_transitive() -> Action:
    p = Presentation.free(2, labels=("f", "g"))
    return Action(p, {
        "f": Affine(_one(), _one()),
        "g": OddPower(3),
    })


_GALLERY = {
    "ex_1_1": (_gallery_integer_translation,
               "unit translation generating an integer-translation action"),
    "ex_1_2": (_gallery_two_translations,
               "two translations, by 1 and by alpha (minimal for irrational alpha)"),
    "ex_1_3": (_gallery_affine_dilation,
               "translation plus dilation by n, realizing B(1,n), n >= 2"),
    "ex_1_4": (_gallery_power_ladder,
               "translation plus alternating cellwise power map, realizing B(1,-k)"),
    "klein_bottle": (_gallery_klein_bottle,
                     "k = 1 ladder: Klein bottle group action with fgf^-1 = g^-1"),
    "free_transitive": (_gallery_free_transitive,
                        "x+1 and x^3 generating a free rank-2 transitive action"),
}

_ALIASES = {
    "integer_translation": "ex_1_1",
    "two_translations": "ex_1_2",
    "affine_dilation": "ex_1_3",
    "alternating_power_ladder": "ex_1_4",
}


def gallery(name: str, **params) -> Action:
    """Build a catalog action by id or alias."""
    key = _ALIASES.get(name, name)
    if key not in _GALLERY:
        raise UnknownGalleryName(f"no catalog action named {name!r}")
    builder, _ = _GALLERY[key]
    try:
        return builder(**params)
    except TypeError as exc:
        raise BadParameter(str(exc)) from None


def gallery_entries() -> list[tuple[str, str]]:
    return [(k, desc) for k, (_, desc) in _GALLERY.items()]


# ---------------------------------------------------------------------------
# the extension operator


@dataclass
class ExtensionSpec:
    """Data for extending an H-action on (0,1) to a cyclic extension G.

    ``conjugation_rule(j, w)`` must return the H-word representing the coset
    generator conjugate a^-j w a^j; it has to be the identity at j = 0 and a
    homomorphism in w for each fixed j.  ``group`` is the presentation of G,
    whose labels are the coset label plus the inner action's labels.
    """

    inner_action: Action
    group: Presentation
    coset_label: str = "a"
    conjugation_rule: Callable[[int, GroupElement], GroupElement] = None
    horizon: int = 64
    _cell_cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.conjugation_rule is None:
            self.conjugation_rule = lambda j, w: w
        if self.coset_label not in self.group.labels:
            raise BadParameter("group presentation lacks the coset label")
        for lab in self.inner_action.presentation.labels:
            if lab not in self.group.labels:
                raise BadParameter(f"group presentation lacks inner label {lab!r}")

    # protocol for homeo.ExtensionCell ---------------------------------

    def cell_expr(self, j: int, word: GroupElement) -> HomeoExpr:
        if abs(j) > self.horizon:
            raise HorizonExceeded(
                f"cell {j} beyond the configured horizon {self.horizon}"
            )
        key = (j, word.word)
        expr = self._cell_cache.get(key)
        if expr is None:
            expr = simplify(realize(self.inner_action, self.conjugation_rule(j, word)))
            self._cell_cache[key] = expr
        return expr

    def invert_word(self, word: GroupElement) -> GroupElement:
        return word.inverse()

    def mul_words(self, u: GroupElement, v: GroupElement) -> GroupElement:
        return multiply(u, v)

    def word_is_identity(self, word: GroupElement) -> bool:
        p = word.presentation
        return normal_form_key(p, word) == normal_form_key(p, p.identity())

    def word_str(self, word: GroupElement) -> str:
        return str(word)


def extend_action(spec: ExtensionSpec) -> Action:
    """The G-action: coset generator translates by 1, H-generators act cellwise."""
    images: dict[str, HomeoExpr] = {spec.coset_label: Affine(_one(), _one())}
    inner_p = spec.inner_action.presentation
    for i, lab in enumerate(inner_p.labels):
        images[lab] = ExtensionCell(spec, inner_p.generator(i))
    return Action(spec.group, images)


def conjugate_into_unit(act: Action) -> Action:
    """Conjugate a line action into one supported on (0,1), endpoints fixed.

    Uses the rational conjugacy x -> x/(1+|x|) onto (-1,1) followed by the
    affine squeeze onto (0,1), so rational maps stay rational.
    """
    squeeze = Affine(Real.rational(1, 2), Real.rational(1, 2))
    images = {
        lab: compose_all([squeeze, BoundedConjugate(img), inverse(squeeze)])
        for lab, img in act.images.items()
    }
    return Action(act.presentation, images)


def direct_product_extension(inner: Action, coset_label: str = "t",
                             horizon: int = 64) -> ExtensionSpec:
    """Z x H with the trivial conjugation rule (coset generator central)."""
    H = inner.presentation
    if H.kind != "free_abelian":
        raise BadParameter(
            "direct product spec shorthand needs a free abelian inner group"
        )
    if coset_label in H.labels:
        raise BadParameter("coset label collides with an inner label")
    G = Presentation.free_abelian(1 + H.rank, labels=(coset_label,) + H.labels)
    return ExtensionSpec(inner, G, coset_label, lambda j, w: w, horizon)


# ---------------------------------------------------------------------------
# randomized sweeps


def random_element(p: Presentation, rng: random.Random, max_len: int) -> GroupElement:
    letters = []
    for _ in range(rng.randint(0, max_len)):
        letters.append((rng.randrange(p.rank), rng.choice((1, -1))))
    from .words import reduce_letters

    return reduce_letters(p, letters)


def homomorphism_residual(act: Action, n_pairs: int, points: Sequence[Real],
                          max_len: int = 6, seed: int = 0) -> Real:
    """Worst |(uv)(x) - u(v(x))| over random word pairs and sample points."""
    rng = random.Random(seed)
    worst = Real.rational(0)
    for _ in range(n_pairs):
        u = random_element(act.presentation, rng, max_len)
        v = random_element(act.presentation, rng, max_len)
        hu, hv = realize(act, u), realize(act, v)
        huv = realize(act, multiply(u, v))
        for x in points:
            r = abs(evaluate(huv, x) - evaluate(hu, evaluate(hv, x)))
            if r.bounds()[1] > worst.bounds()[1]:
                worst = r
    return worst
