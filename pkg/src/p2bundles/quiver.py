"""The Bondal-Kapranov quiver of P^2 and supports of homogeneous bundles.

Vertices are the irreducible bundles S^l Q(t). Each connected component
is drawn on the integer plane with

    x = floor((2l + t) / 3),   y = floor((t - l) / 3)

so that an arrow of kind A, (l, t) -> (l-1, t-1), moves one step left and
an arrow of kind B, (l, t) -> (l+1, t-2), moves one step down. On a
component l = x - y and t = x + 2y + c with c = (2l + t) mod 3.
Supports of subbundles are closed under arrows, i.e. closed downwards
and leftwards in this chart.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import product
from math import comb
from typing import Iterable, Iterator, Literal, Mapping

from .schur import Partition3, TwistedSchur, clebsch_gordan, hom_dim

DEFAULT_STAIRCASE_BOUND = 24


class EnumerationBoundError(ValueError):
    """Raised when a sweep would exceed its configured size bound."""


@dataclass(frozen=True, order=True)
class QVertex:
    """The irreducible homogeneous bundle S^l Q(t)."""

    l: int
    t: int

    def __post_init__(self):
        if self.l < 0:
            raise ValueError(f"S^{self.l}Q is not a quiver vertex")

    @classmethod
    def from_chart(cls, x: int, y: int, offset: int) -> QVertex:
        return cls(x - y, x + 2 * y + offset)

    @property
    def x(self) -> int:
        return (2 * self.l + self.t) // 3

    @property
    def y(self) -> int:
        return (self.t - self.l) // 3

    @property
    def offset(self) -> int:
        return (2 * self.l + self.t) % 3

    @property
    def component(self) -> int:
        return (self.l + 2 * self.t) % 3

    @property
    def rank(self) -> int:
        return self.l + 1

    @property
    def c1(self) -> int:
        return (self.l + 1) * self.l // 2 + (self.l + 1) * self.t

    def moved(self, dx: int, dy: int) -> QVertex:
        """The vertex dx steps right and dy steps up in the chart."""
        return QVertex(self.l + dx - dy, self.t + dx + 2 * dy)

    def label(self) -> str:
        return f"S^{self.l}Q({self.t})"

    def __str__(self) -> str:
        return self.label()


@dataclass(frozen=True)
class QArrow:
    source: QVertex
    kind: Literal["A", "B"]

    @property
    def target(self) -> QVertex:
        if self.kind == "A":
            return QVertex(self.source.l - 1, self.source.t - 1)
        return QVertex(self.source.l + 1, self.source.t - 2)


def arrows_from(v: QVertex) -> list[QArrow]:
    out = []
    if v.l >= 1:
        out.append(QArrow(v, "A"))
    out.append(QArrow(v, "B"))
    return out


@dataclass(frozen=True)
class QSupport:
    """A finite multiplicity map on quiver vertices."""

    mult: Mapping[QVertex, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for v, m in self.mult.items():
            if m < 0:
                raise ValueError(f"negative multiplicity at {v}")
            if m:
                clean[v] = m
        object.__setattr__(self, "mult", dict(sorted(clean.items())))

    @classmethod
    def of(cls, vertices: Iterable[QVertex]) -> QSupport:
        return cls(Counter(vertices))

    def __len__(self) -> int:
        return len(self.mult)

    def __iter__(self) -> Iterator[QVertex]:
        return iter(self.mult)

    def __contains__(self, v: object) -> bool:
        return v in self.mult

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Rectangle) or isinstance(other, Staircase):
            other = other.support()
        if not isinstance(other, QSupport):
            return NotImplemented
        return self.mult == other.mult

    def __hash__(self) -> int:
        return hash(tuple(self.mult.items()))

    def __add__(self, other: QSupport) -> QSupport:
        return QSupport(Counter(self.mult) + Counter(other.mult))

    def minus(self, other: QSupport) -> QSupport:
        """Multiset difference; raises if ``other`` is not contained in ``self``."""
        out = Counter(self.mult)
        for v, m in other.mult.items():
            if out[v] < m:
                raise ValueError(f"{v} has multiplicity {out[v]} < {m}")
            out[v] -= m
        return QSupport(out)

    @property
    def vertices(self) -> frozenset[QVertex]:
        return frozenset(self.mult)

    def is_multiplicity_free(self) -> bool:
        return all(m == 1 for m in self.mult.values())

    @property
    def rank(self) -> int:
        return sum(m * v.rank for v, m in self.mult.items())

    @property
    def c1(self) -> int:
        return sum(m * v.c1 for v, m in self.mult.items())

    def inner_arrows(self) -> list[QArrow]:
        """Arrows of the quiver with both ends in the support."""
        return [a for v in self.mult for a in arrows_from(v) if a.target in self.mult]

    def __repr__(self) -> str:
        body = ", ".join(v.label() + (f"x{m}" if m > 1 else "") for v, m in self.mult.items())
        return "QSupport{" + body + "}"


def _require_mult_free(*supports: QSupport) -> None:
    for s in supports:
        if not s.is_multiplicity_free():
            raise ValueError(f"set operations need multiplicity-1 supports: {s!r}")


def support_diff(a: QSupport, b: QSupport) -> QSupport:
    _require_mult_free(a, b)
    return QSupport.of(v for v in a if v not in b)


def support_intersect(a: QSupport, b: QSupport) -> QSupport:
    _require_mult_free(a, b)
    return QSupport.of(v for v in a if v in b)


def support_union(a: QSupport, b: QSupport) -> QSupport:
    _require_mult_free(a, b)
    return QSupport.of(set(a) | set(b))


@dataclass(frozen=True)
class Rectangle:
    """Multiplicity-1 rectangle of base h and height k in one component.

    ``anchor`` is the highest vertex of the left side. Local coordinates
    (i, j) run over columns 0..h from the left and rows 0..k from the bottom.
    """

    anchor: QVertex
    h: int
    k: int

    def __post_init__(self):
        if self.h < 0 or self.k < 0:
            raise ValueError("rectangle sides must be nonnegative")

    @classmethod
    def from_lower_left(cls, corner: QVertex, h: int, k: int) -> Rectangle:
        return cls(corner.moved(0, k), h, k)

    def at(self, i: int, j: int) -> QVertex:
        return self.anchor.moved(i, j - self.k)

    @property
    def lower_left(self) -> QVertex:
        return self.at(0, 0)

    @property
    def upper_right(self) -> QVertex:
        return self.at(self.h, self.k)

    def cells(self) -> Iterator[tuple[int, int]]:
        return product(range(self.h + 1), range(self.k + 1))

    def support(self) -> QSupport:
        return QSupport.of(self.at(i, j) for i, j in self.cells())

    def sub(self, i0: int, j0: int, h: int, k: int) -> Rectangle:
        """The subrectangle with lower-left local cell (i0, j0)."""
        if i0 < 0 or j0 < 0 or i0 + h > self.h or j0 + k > self.k:
            raise ValueError("subrectangle does not fit")
        return Rectangle.from_lower_left(self.at(i0, j0), h, k)

    def __len__(self) -> int:
        return (self.h + 1) * (self.k + 1)


def rectangle_of(support: QSupport) -> Rectangle | None:
    """The rectangle whose vertex set is ``support``, if there is one."""
    if not support or not support.is_multiplicity_free():
        return None
    vs = list(support)
    comps = {v.offset for v in vs}
    if len(comps) != 1:
        return None
    xs = [v.x for v in vs]
    ys = [v.y for v in vs]
    x0, y0 = min(xs), min(ys)
    corner = QVertex.from_chart(x0, y0, comps.pop())
    h, k = max(xs) - x0, max(ys) - y0
    if corner.l - k < 0:
        return None
    r = Rectangle.from_lower_left(corner, h, k)
    return r if r.support() == support else None


def support_of_schur(p: int, q: int, twist: int = 0) -> Rectangle:
    """The rectangle supporting S^{p,q}V(twist)."""
    if not p >= q >= 0:
        raise ValueError(f"need p >= q >= 0, got ({p}, {q})")
    # m1 = h, m2 = 0 gives the top-left vertex S^0 Q(2q - p)
    return Rectangle(QVertex(0, 2 * q - p + twist), p - q, q)


def schur_support(ts: TwistedSchur) -> Rectangle:
    a, b, _ = ts.partition.reduced().parts
    return support_of_schur(a, b, ts.twist)


def schur_support_terms(p: int, q: int, twist: int = 0) -> list[QVertex]:
    """Summands S^{p-q-m1+m2}Q(q-m1-2m2+twist) of S^{p,q}V(twist) as R-module."""
    return [
        QVertex(p - q - m1 + m2, q - m1 - 2 * m2 + twist)
        for m1 in range(p - q + 1)
        for m2 in range(q + 1)
    ]


def free_support(terms: Iterable[tuple[TwistedSchur, int]]) -> QSupport:
    """Support with multiplicities of a direct sum of twisted Schur bundles."""
    out: Counter = Counter()
    for ts, m in terms:
        for v in schur_support(ts).support():
            out[v] += m
    return QSupport(out)


def _check_maps(source: TwistedSchur, targets: Iterable[TwistedSchur]) -> list[TwistedSchur]:
    targets = list(targets)
    for tg in targets:
        if hom_dim(source, tg) == 0:
            raise ValueError(f"no nonzero invariant map {source} -> {tg}")
    return targets


def kernel_support(source: TwistedSchur, targets: Iterable[TwistedSchur]) -> QSupport:
    """Support of the kernel of a map with all components nonzero."""
    targets = _check_maps(source, targets)
    covered = set()
    for tg in targets:
        covered |= set(schur_support(tg).support())
    return QSupport.of(v for v in schur_support(source).support() if v not in covered)


def image_support(source: TwistedSchur, target: TwistedSchur) -> QSupport:
    _check_maps(source, [target])
    return support_intersect(schur_support(source).support(), schur_support(target).support())


def cokernel_support(source: TwistedSchur, target: TwistedSchur) -> QSupport:
    _check_maps(source, [target])
    return support_diff(schur_support(target).support(), schur_support(source).support())


def support_tensor_schur(l: int, t: int, p: int, q: int) -> QSupport:
    """Support of S^l Q(t) ⊗ S^{p,q}V, with multiplicities."""
    out: Counter = Counter()
    for v in schur_support_terms(p, q):
        for term in clebsch_gordan(l, t, v.l, v.t):
            out[QVertex(term.l, term.t)] += term.mult
    return QSupport(out)


def support_tensor_SlQ(l: int, t: int, q: int, kind: Literal["sym", "dual"] = "sym") -> QSupport:
    """Support of S^l Q(t) ⊗ S^q V (kind "sym") or ⊗ S^{q,q} V (kind "dual")."""
    if kind == "sym":
        return support_tensor_schur(l, t, q, 0)
    if kind == "dual":
        return support_tensor_schur(l, t, q, q)
    raise ValueError(f"unknown kind {kind!r}")


@dataclass(frozen=True)
class Staircase:
    """A down-closed multiplicity-1 region of a rectangle.

    ``heights[i]`` is the number of vertices of column i, counted from the
    bottom; heights are weakly decreasing from left to right.
    """

    rectangle: Rectangle
    heights: tuple[int, ...]

    def __post_init__(self):
        r = self.rectangle
        hs = tuple(self.heights)
        object.__setattr__(self, "heights", hs)
        if len(hs) != r.h + 1:
            raise ValueError(f"need {r.h + 1} column heights, got {len(hs)}")
        if any(not 0 <= c <= r.k + 1 for c in hs):
            raise ValueError(f"column heights {hs} out of range 0..{r.k + 1}")
        if any(a < b for a, b in zip(hs, hs[1:])):
            raise ValueError(f"column heights {hs} are not weakly decreasing")
        if not hs[0]:
            raise ValueError("empty staircase")

    @classmethod
    def full(cls, r: Rectangle) -> Staircase:
        return cls(r, (r.k + 1,) * (r.h + 1))

    def cells(self) -> list[tuple[int, int]]:
        return [(i, j) for i, c in enumerate(self.heights) for j in range(c)]

    def vertices(self) -> list[QVertex]:
        return [self.rectangle.at(i, j) for i, j in self.cells()]

    def support(self) -> QSupport:
        return QSupport.of(self.vertices())

    def is_full(self) -> bool:
        return self.heights == (self.rectangle.k + 1,) * (self.rectangle.h + 1)

    def __len__(self) -> int:
        return sum(self.heights)

    def corners(self) -> list[tuple[int, int]]:
        """Local cells of the step vertices, rightmost first."""
        hs = self.heights + (0,)
        out = [(i, hs[i] - 1) for i in range(len(self.heights)) if hs[i] > hs[i + 1]]
        return out[::-1]


def staircase_of(support: QSupport) -> Staircase | None:
    """Read ``support`` as a staircase in its bounding rectangle, if it is one."""
    if not support or not support.is_multiplicity_free():
        return None
    vs = list(support)
    comps = {v.offset for v in vs}
    if len(comps) != 1:
        return None
    off = comps.pop()
    x0 = min(v.x for v in vs)
    y0 = min(v.y for v in vs)
    w = max(v.x for v in vs) - x0
    ht = max(v.y for v in vs) - y0
    corner = QVertex.from_chart(x0, y0, off) if x0 - y0 >= 0 else None
    if corner is None or corner.l - ht < 0:
        return None
    rect = Rectangle.from_lower_left(corner, w, ht)
    cols = [0] * (w + 1)
    for v in vs:
        cols[v.x - x0] += 1
    try:
        s = Staircase(rect, tuple(cols))
    except ValueError:
        return None
    return s if s.support() == support else None


def enumerate_staircases(r: Rectangle, bound: int = DEFAULT_STAIRCASE_BOUND) -> Iterator[Staircase]:
    """All nonempty staircases in ``r``, the full rectangle included.

    Profiles come in lexicographically increasing order of column heights.
    """
    if r.h + r.k > bound:
        raise EnumerationBoundError(f"h + k = {r.h + r.k} exceeds bound {bound}")
    yield from _dominated(r, (r.k + 1,) * (r.h + 1))


def staircase_count(r: Rectangle) -> int:
    return comb(r.h + r.k + 2, r.h + 1) - 1


def sub_staircases(s: Staircase, bound: int = DEFAULT_STAIRCASE_BOUND) -> Iterator[Staircase]:
    """All nonempty staircases contained in ``s``, ``s`` included."""
    if s.rectangle.h + s.rectangle.k > bound:
        raise EnumerationBoundError(f"h + k exceeds bound {bound}")
    yield from _dominated(s.rectangle, s.heights)


def _dominated(r: Rectangle, caps: tuple[int, ...]) -> Iterator[Staircase]:
    n = len(caps)

    def rec(i: int, prev: int, acc: tuple[int, ...]):
        if i == n:
            if acc[0]:
                yield Staircase(r, acc)
            return
        for c in range(min(prev, caps[i]) + 1):
            yield from rec(i + 1, c, acc + (c,))

    # columns are filled left to right with weakly decreasing heights
    def start():
        for c0 in range(caps[0] + 1):
            yield from rec(1, c0, (c0,))

    yield from start()


@dataclass(frozen=True)
class StepAnatomy:
    """Steps of a staircase, indexed from 1 (rightmost step first).

    ``A[i]`` is defined for i = 1..k-1 and ``B[i]`` for i = 2..k; the
    lists are padded with ``None`` at unused positions, including index 0.
    """

    corners: list[QVertex]
    R: list[QSupport]
    H: list[QSupport]
    E: list[QSupport]
    O: list[QSupport]
    A: list[QSupport | None]
    B: list[QSupport | None]

    @property
    def steps(self) -> int:
        return len(self.corners)


def step_anatomy(s: Staircase) -> StepAnatomy:
    r = s.rectangle
    cs = s.corners()
    k = len(cs)

    def box(i_max: int, j_max: int) -> set[tuple[int, int]]:
        return {(i, j) for i in range(i_max + 1) for j in range(j_max + 1)}

    # R_0 = R_{k+1} = empty
    R = [set()] + [box(i, j) for i, j in cs] + [set()]
    H = [None] + [R[i] - R[i - 1] for i in range(1, k + 1)]
    E = [None] + [R[i] - R[i + 1] for i in range(1, k + 1)]
    O = [None] + [H[i] & E[i] for i in range(1, k + 1)]
    # S_i spans the right side of step i and the top side of step i + 1
    S = [None] + [box(cs[i - 1][0], cs[i][1]) for i in range(1, k)]
    A = [None] + [S[i] - R[i] - R[i + 1] for i in range(1, k)] + [None]
    B = [None, None] + [S[i - 1] - R[i] - R[i - 1] for i in range(2, k + 1)]

    def sup(cells):
        return None if cells is None else QSupport.of(r.at(i, j) for i, j in cells)

    return StepAnatomy(
        corners=[r.at(i, j) for i, j in cs],
        R=[sup(x) for x in R[: k + 1]],
        H=[sup(x) for x in H],
        E=[sup(x) for x in E],
        O=[sup(x) for x in O],
        A=[sup(x) for x in A],
        B=[sup(x) for x in B],
    )


def is_regular_staircase(s: Staircase) -> bool:
    """Whether all step vertices lie on one line of slope -1."""
    return len({i + j for i, j in s.corners()}) == 1


def completely_regular_degree(s: Staircase) -> int | None:
    """The q for which ``s`` is the support of some S^l Q(t) ⊗ S^q V, else None.

    Such supports are the cells (a, b) with a, b >= 0, a + b <= q and
    b <= l measured from the lowest-left vertex S^l Q(t - q).
    """
    q = sum(1 for c in s.heights if c) - 1
    origin = s.rectangle.at(0, 0)
    expected = {(a, b) for a in range(q + 1) for b in range(q - a + 1) if b <= origin.l}
    return q if set(s.cells()) == expected else None


def is_completely_regular(s: Staircase) -> bool:
    return completely_regular_degree(s) is not None


def is_down_closed(support: QSupport, region: QSupport) -> bool:
    """Whether ``support`` contains the targets inside ``region`` of its arrows."""
    return all(
        a.target in support
        for v in support
        for a in arrows_from(v)
        if a.target in region
    )
