"""Exact slope arithmetic on quiver supports and staircase stability sweeps.

Every slope is an exact rational; comparisons never touch floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Literal, Union

from .quiver import (
    DEFAULT_STAIRCASE_BOUND,
    EnumerationBoundError,
    QSupport,
    QVertex,
    Rectangle,
    Staircase,
    arrows_from,
    completely_regular_degree,
    enumerate_staircases,
    is_regular_staircase,
    rectangle_of,
    step_anatomy,
    sub_staircases,
)

Supportish = Union[QSupport, Rectangle, Staircase]

DEFAULT_IDEAL_LIMIT = 2_000_000


@dataclass(frozen=True)
class SlopeValue:
    """First Chern class and rank of a bundle.

    Equality compares (c1, rank) exactly; the ordering operators compare
    slopes, so ``SlopeValue(2, 2) < SlopeValue(1, 1)`` and its reverse are
    both false. Use ``same_slope`` for slope equality.
    """

    c1: int
    rank: int

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError(f"rank must be positive, got {self.rank}")

    @property
    def value(self) -> Fraction:
        return Fraction(self.c1, self.rank)

    def _cmp(self, other: SlopeValue) -> int:
        lhs, rhs = self.c1 * other.rank, other.c1 * self.rank
        return (lhs > rhs) - (lhs < rhs)

    def __lt__(self, other: SlopeValue) -> bool:
        return self._cmp(other) < 0

    def __le__(self, other: SlopeValue) -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other: SlopeValue) -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other: SlopeValue) -> bool:
        return self._cmp(other) >= 0

    def same_slope(self, other: SlopeValue) -> bool:
        return self._cmp(other) == 0

    def __add__(self, other: SlopeValue) -> SlopeValue:
        return SlopeValue(self.c1 + other.c1, self.rank + other.rank)

    def __sub__(self, other: SlopeValue) -> SlopeValue:
        return SlopeValue(self.c1 - other.c1, self.rank - other.rank)

    def __str__(self) -> str:
        return f"mu = {self.value} (c1 = {self.c1}, rank = {self.rank})"


def _as_support(s: Supportish) -> QSupport:
    return s if isinstance(s, QSupport) else s.support()


def slope_of_support(s: Supportish) -> SlopeValue:
    sup = _as_support(s)
    if not sup:
        raise ValueError("slope of the empty support is undefined")
    return SlopeValue(sup.c1, sup.rank)


def rectangle_slope_closed_form(r: Rectangle) -> SlopeValue:
    """Closed-form c1 and rank of a rectangle from its top-left vertex."""
    h, k, l, t = r.h, r.k, r.anchor.l, r.anchor.t
    area = (h + 1) * (k + 1)
    twice_c1 = area * (
        h * h - k * k + 2 * h * l + h * t + 2 * h - k * l + k * t - 2 * k
        + l * l + 2 * l * t + l + 2 * t
    )
    twice_rank = area * (2 * l + h + k + 2)
    return SlopeValue(twice_c1 // 2, twice_rank // 2)


def translate(r: Rectangle, direction: Literal["up", "right"]) -> Rectangle:
    """``r`` moved one chart step up or right; raises if it leaves the quiver."""
    dx, dy = (0, 1) if direction == "up" else (1, 0)
    try:
        return Rectangle(r.anchor.moved(dx, dy), r.h, r.k)
    except ValueError as exc:
        raise ValueError(f"translated segment leaves the quiver: {exc}") from None


def check_segment_inequality(seg: Rectangle, direction: Literal["up", "right"] | None = None) -> bool:
    """Whether moving a segment off its arrows strictly raises the slope.

    Horizontal segments move up and vertical ones move right; a single
    vertex moves up unless ``direction`` says otherwise.
    """
    if seg.h and seg.k:
        raise ValueError(f"not a segment: base {seg.h}, height {seg.k}")
    if direction is None:
        direction = "up" if seg.k == 0 else "right"
    return slope_of_support(seg) < slope_of_support(translate(seg, direction))


def _chart_box(r: Rectangle) -> tuple[int, int, int, int, int]:
    ll = r.lower_left
    return ll.offset, ll.x, ll.y, ll.x + r.h, ll.y + r.k


def check_rectangle_inequalities(
    case: Literal["i", "ii", "iii", "iv"], first: Rectangle, second: Rectangle
) -> bool:
    """Verify one of the four rectangle slope comparisons.

    - "i": ``first`` and ``second`` share their columns and ``first`` lies
      entirely above ``second``; checks mu(second) < mu(first).
    - "ii": they share their rows and ``first`` lies entirely right of
      ``second``; checks mu(second) < mu(first).
    - "iii": ``second`` is a strictly lower subrectangle of ``first`` with
      the same bottom side; checks mu(second) < mu(first).
    - "iv": ``second`` is a strictly narrower subrectangle of ``first`` with
      the same left side; checks mu(second) < mu(first).
    """
    c1, x0, y0, x1, y1 = _chart_box(first)
    c2, u0, v0, u1, v1 = _chart_box(second)
    if c1 != c2:
        raise ValueError("rectangles lie in different components")
    if case == "i":
        ok = (x0, x1) == (u0, u1) and y0 > v1
    elif case == "ii":
        ok = (y0, y1) == (v0, v1) and x0 > u1
    elif case == "iii":
        ok = (x0, x1, y0) == (u0, u1, v0) and v1 < y1
    elif case == "iv":
        ok = (y0, y1, x0) == (v0, v1, u0) and u1 < x1
    else:
        raise ValueError(f"unknown case {case!r}")
    if not ok:
        raise ValueError(f"rectangles do not form a case {case} configuration")
    return slope_of_support(second) < slope_of_support(first)


@dataclass(frozen=True)
class StabilityVerdict:
    """Outcome of a slope sweep over proper subrepresentation supports.

    ``witness`` is the proper subsupport of largest slope (fewest vertices,
    then smallest profile, on ties) when the comparison fails, else None.
    """

    holds: bool
    slope: SlopeValue
    checked: int
    witness: QSupport | None = None
    witness_slope: SlopeValue | None = None

    def __bool__(self) -> bool:
        return self.holds


def _sweep(
    whole: SlopeValue,
    candidates: Iterable[tuple[QSupport, tuple]],
    strict: bool,
) -> StabilityVerdict:
    best: tuple[SlopeValue, QSupport, tuple] | None = None
    n = 0
    for sup, tiebreak in candidates:
        n += 1
        mu = slope_of_support(sup)
        if best is None or mu > best[0] or (
            mu.same_slope(best[0]) and (len(sup), tiebreak) < (len(best[1]), best[2])
        ):
            best = (mu, sup, tiebreak)
    if best is None:
        return StabilityVerdict(True, whole, 0)
    mu = best[0]
    fails = mu >= whole if strict else mu > whole
    if fails:
        return StabilityVerdict(False, whole, n, best[1], mu)
    return StabilityVerdict(True, whole, n)


def _proper_staircases(s: Staircase, bound: int) -> Iterator[tuple[QSupport, tuple]]:
    for sub in sub_staircases(s, bound):
        if sub.heights != s.heights:
            yield sub.support(), sub.heights


def is_semistable_rect(e: Rectangle, bound: int = DEFAULT_STAIRCASE_BOUND) -> StabilityVerdict:
    full = Staircase.full(e)
    return _sweep(slope_of_support(e), _proper_staircases(full, bound), strict=False)


def is_multistable_rect(e: Rectangle, bound: int = DEFAULT_STAIRCASE_BOUND) -> StabilityVerdict:
    full = Staircase.full(e)
    return _sweep(slope_of_support(e), _proper_staircases(full, bound), strict=True)


def is_multistable_staircase(s: Staircase, bound: int = DEFAULT_STAIRCASE_BOUND) -> StabilityVerdict:
    return _sweep(slope_of_support(s), _proper_staircases(s, bound), strict=True)


def arrow_closed_subsets(
    support: QSupport, limit: int = DEFAULT_IDEAL_LIMIT
) -> Iterator[QSupport]:
    """Nonempty subsets of a multiplicity-1 support closed under its arrows.

    These are the supports of subrepresentations when every arrow inside
    the support acts by a nonzero map.
    """
    if not support.is_multiplicity_free():
        raise ValueError("arrow-closed subsets need a multiplicity-1 support")
    # arrows lower x + y by one, so targets come before sources in this order
    order = sorted(support, key=lambda v: (v.x + v.y, v.x))
    targets = {
        v: [a.target for a in arrows_from(v) if a.target in support] for v in order
    }
    count = 0

    def rec(i: int, chosen: frozenset[QVertex]) -> Iterator[frozenset[QVertex]]:
        if i == len(order):
            yield chosen
            return
        v = order[i]
        yield from rec(i + 1, chosen)
        if all(w in chosen for w in targets[v]):
            yield from rec(i + 1, chosen | {v})

    for subset in rec(0, frozenset()):
        if subset:
            count += 1
            if count > limit:
                raise EnumerationBoundError(f"more than {limit} arrow-closed subsets")
            yield QSupport.of(subset)


def is_multistable_support(
    support: QSupport, limit: int = DEFAULT_IDEAL_LIMIT
) -> StabilityVerdict:
    """Strict slope sweep over proper arrow-closed subsets of ``support``."""
    whole = slope_of_support(support)
    everything = support.vertices

    def candidates():
        for sub in arrow_closed_subsets(support, limit):
            if sub.vertices != everything:
                yield sub, tuple(sub)

    return _sweep(whole, candidates(), strict=True)


def check_step_slopes(s: Staircase) -> bool:
    """Horizontal step slopes rise with the step index, vertical ones fall."""
    an = step_anatomy(s)
    mh = [slope_of_support(an.H[i]) for i in range(1, an.steps + 1)]
    me = [slope_of_support(an.E[i]) for i in range(1, an.steps + 1)]
    return all(b > a for a, b in zip(mh, mh[1:])) and all(a > b for a, b in zip(me, me[1:]))


def check_sticking_out(s: Staircase) -> bool:
    """Each sticking-out part beats the rest of the staircase, and so does the whole."""
    if len(s) == 1:
        return True
    an = step_anatomy(s)
    whole = s.support()
    mu_s = slope_of_support(whole)
    for i in range(1, an.steps + 1):
        o = an.O[i]
        rest = whole.minus(o)
        if not rest:
            continue
        mu_rest = slope_of_support(rest)
        if not (slope_of_support(o) > mu_rest and mu_s > mu_rest):
            return False
    return True


@dataclass(frozen=True)
class RegularVerdict:
    regular: bool
    multistable: bool
    completely_regular_degree: int | None
    twisted_schur: bool

    @property
    def stable(self) -> bool:
        return (
            self.multistable
            and not (self.completely_regular_degree or 0) >= 1
            and not self.twisted_schur
        )


def regular_staircase_verdict(s: Staircase, bound: int = DEFAULT_STAIRCASE_BOUND) -> RegularVerdict:
    """Multistability by sweep and the stability call for a staircase support.

    A multistable support fails to be stable when it splits off a nontrivial
    irreducible factor: a completely regular shape of degree q >= 1 is
    S^l Q(t) ⊗ S^q V, and a rectangle with top-left vertex S^0 Q(t) and more
    than one vertex is O(t) ⊗ S^{p,q} V.
    """
    rect = rectangle_of(s.support())
    schur_rect = rect is not None and rect.anchor.l == 0 and len(rect) > 1
    return RegularVerdict(
        regular=is_regular_staircase(s),
        multistable=bool(is_multistable_staircase(s, bound)),
        completely_regular_degree=completely_regular_degree(s),
        twisted_schur=schur_rect,
    )


def all_staircase_slopes(r: Rectangle, bound: int = DEFAULT_STAIRCASE_BOUND) -> Iterator[tuple[Staircase, SlopeValue]]:
    for s in enumerate_staircases(r, bound):
        yield s, slope_of_support(s)
