"""Two-term free resolutions 0 -> A -> B -> E -> 0 by twisted Schur bundles.

Summands are grouped for injectivity questions by writing each one as
S^{p,q}V(c + p) in reduced form: a group is a pair (q, c) and p indexes
the summands inside it. Invariant maps only raise p within a group, so
the scalar data of a map restricted to one group is a block lower
triangular matrix.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Any, Iterable, Mapping, Sequence

from .quiver import QSupport, Rectangle, cokernel_support, free_support, rectangle_of
from .schur import Partition3, TwistedSchur, hom_dim, pieri
from .slopecalc import SlopeValue, StabilityVerdict, is_multistable_rect, slope_of_support


class SpecError(ValueError):
    """Malformed resolution data."""


@dataclass(frozen=True)
class FreeTerm:
    """A direct sum of twisted Schur bundles with multiplicities, in canonical order."""

    summands: tuple[tuple[TwistedSchur, int], ...] = ()

    def __post_init__(self):
        seen = set()
        for ts, m in self.summands:
            if m < 1:
                raise SpecError(f"summand {ts} has nonpositive multiplicity {m}")
            if ts.key() in seen:
                raise SpecError(f"summand {ts} appears twice")
            seen.add(ts.key())
        ordered = tuple(sorted(self.summands, key=lambda e: order_key(e[0])))
        object.__setattr__(self, "summands", ordered)

    @classmethod
    def of(cls, *pairs: tuple[TwistedSchur, int] | TwistedSchur) -> FreeTerm:
        return cls(tuple(p if isinstance(p, tuple) else (p, 1) for p in pairs))

    def __len__(self) -> int:
        return len(self.summands)

    def __iter__(self):
        return iter(self.summands)

    def __getitem__(self, i: int) -> tuple[TwistedSchur, int]:
        return self.summands[i]

    @property
    def rank(self) -> int:
        return sum(ts.rank * m for ts, m in self.summands)

    @property
    def c1(self) -> int:
        return sum(ts.c1 * m for ts, m in self.summands)

    def support(self) -> QSupport:
        return free_support(self.summands)

    def is_irreducible(self) -> bool:
        return len(self.summands) == 1 and self.summands[0][1] == 1


def order_key(ts: TwistedSchur) -> tuple[int, tuple[int, int, int]]:
    return ts.twist, ts.partition.reduced().parts


def group_of(ts: TwistedSchur) -> tuple[int, int, int]:
    """(q, c, p) with ts = S^{p,q}V(c + p) in reduced form."""
    p, q, _ = ts.partition.reduced().parts
    return q, ts.twist - p, p


@dataclass(frozen=True)
class ResolutionSpec:
    A: FreeTerm
    B: FreeTerm

    @classmethod
    def of(cls, a: Iterable, b: Iterable) -> ResolutionSpec:
        return cls(FreeTerm.of(*a), FreeTerm.of(*b))


Matrix = tuple[tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class BlockMatrix:
    """Scalar blocks of an invariant map A -> B.

    ``blocks[(i, j)]`` maps the multiplicity space of A's summand i to that
    of B's summand j, so it has shape mult(B[j]) x mult(A[i]). Missing
    blocks are zero.
    """

    blocks: Mapping[tuple[int, int], Matrix] = field(default_factory=dict)

    def block(self, i: int, j: int, rows: int, cols: int) -> Matrix:
        b = self.blocks.get((i, j))
        if b is None:
            return tuple((Fraction(0),) * cols for _ in range(rows))
        return b


def _is_zero(m: Matrix) -> bool:
    return all(x == 0 for row in m for x in row)


def check_blocks(spec: ResolutionSpec, m: BlockMatrix) -> None:
    """Raise SpecError if block indices, shapes or supports are wrong."""
    for (i, j), b in m.blocks.items():
        if not (0 <= i < len(spec.A) and 0 <= j < len(spec.B)):
            raise SpecError(f"block ({i}, {j}) is out of range")
        src, ms = spec.A[i]
        tgt, mt = spec.B[j]
        if len(b) != mt or any(len(row) != ms for row in b):
            raise SpecError(f"block {src} -> {tgt} must be {mt} x {ms}")
        if not _is_zero(b) and hom_dim(src, tgt) == 0:
            raise SpecError(f"no invariant map {src} -> {tgt}, but its block is nonzero")


def _group_counts(term: FreeTerm) -> dict[tuple[int, int], dict[int, int]]:
    out: dict[tuple[int, int], dict[int, int]] = defaultdict(dict)
    for ts, mult in term:
        q, c, p = group_of(ts)
        out[q, c][p] = mult
    return out


@dataclass(frozen=True)
class DominanceFailure:
    """A group (q, c) and threshold p where A outweighs B."""

    q: int
    c: int
    p: int
    lhs: int
    rhs: int
    strict: bool = True

    def __str__(self) -> str:
        rel = ">" if self.strict else ">="
        return (
            f"group q={self.q}, c={self.c}: A has {self.lhs} summands with p >= {self.p}"
            f" but B has only {self.rhs} with p {rel} {self.p}"
        )


def dominance_failure(spec: ResolutionSpec, strict: bool) -> DominanceFailure | None:
    """The first violated counting inequality, or None if all hold."""
    a_groups = _group_counts(spec.A)
    b_groups = _group_counts(spec.B)
    for (q, c), a in sorted(a_groups.items()):
        b = b_groups.get((q, c), {})
        # the left side only changes at p values of A
        for pt in sorted(a):
            lhs = sum(m for p, m in a.items() if p >= pt)
            rhs = sum(m for r, m in b.items() if (r > pt if strict else r >= pt))
            if lhs > rhs:
                return DominanceFailure(q, c, pt, lhs, rhs, strict)
    return None


def _dominance(spec: ResolutionSpec, strict: bool) -> bool:
    return dominance_failure(spec, strict) is None


def shape_admits_injection(spec: ResolutionSpec) -> bool:
    return _dominance(spec, strict=False)


def shape_admits_minimal_resolution(spec: ResolutionSpec) -> bool:
    return _dominance(spec, strict=True)


def exact_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    from sympy import Matrix as SymMatrix, Rational

    if not rows or not rows[0]:
        return 0
    mat = SymMatrix([[Rational(x.numerator, x.denominator) for x in row] for row in rows])
    return mat.rank()


def group_matrix(spec: ResolutionSpec, m: BlockMatrix, group: tuple[int, int]) -> list[list[Fraction]]:
    """The stacked scalar matrix of ``m`` restricted to one (q, c) group."""
    a_idx = [i for i, (ts, _) in enumerate(spec.A) if group_of(ts)[:2] == group]
    b_idx = [j for j, (ts, _) in enumerate(spec.B) if group_of(ts)[:2] == group]
    rows: list[list[Fraction]] = []
    for j in b_idx:
        mt = spec.B[j][1]
        parts = [m.block(i, j, mt, spec.A[i][1]) for i in a_idx]
        for r in range(mt):
            rows.append([x for blk in parts for x in blk[r]])
    if not rows:
        cols = sum(spec.A[i][1] for i in a_idx)
        return [[Fraction(0)] * cols] if cols else []
    return rows


def map_defect(spec: ResolutionSpec, m: BlockMatrix) -> str | None:
    """Why ``m`` is not a minimal resolution map, or None if it is one."""
    check_blocks(spec, m)
    b_pos = {ts.key(): j for j, (ts, _) in enumerate(spec.B)}
    for i, (ts, ms) in enumerate(spec.A):
        j = b_pos.get(ts.key())
        if j is not None and not _is_zero(m.block(i, j, spec.B[j][1], ms)):
            return f"block {ts} -> {spec.B[j][0]} is nonzero (identity piece)"
    for g in sorted(_group_counts(spec.A)):
        rows = group_matrix(spec, m, g)
        cols = len(rows[0])
        rank = exact_rank(rows)
        if rank < cols:
            return f"group q={g[0]}, c={g[1]}: scalar matrix has rank {rank} < {cols} columns"
    return None


def is_valid_minimal_resolution_map(spec: ResolutionSpec, m: BlockMatrix) -> bool:
    """Whether ``m`` gives an injective map with no identity pieces."""
    return map_defect(spec, m) is None


def constructive_witness(spec: ResolutionSpec, minimal: bool = True) -> BlockMatrix:
    """The identity-over-zero map pairing basis vectors by descending p.

    Within each group the j-th basis vector of A (ordered by p descending)
    goes to the j-th of B; the dominance condition guarantees the target
    has larger p (or at least equal p when ``minimal`` is False).
    """
    ok = shape_admits_minimal_resolution(spec) if minimal else shape_admits_injection(spec)
    if not ok:
        raise SpecError("shape admits no such map")
    entries: dict[tuple[int, int], list[list[Fraction]]] = {}

    def basis(term: FreeTerm, g):
        vecs = []
        for idx, (ts, mult) in enumerate(term):
            if group_of(ts)[:2] == g:
                vecs += [(group_of(ts)[2], idx, k) for k in range(mult)]
        return sorted(vecs, key=lambda v: (-v[0], v[1], v[2]))

    for g in _group_counts(spec.A):
        for (pa, i, ka), (pb, j, kb) in zip(basis(spec.A, g), basis(spec.B, g)):
            if pb < pa or (minimal and pb == pa):
                raise AssertionError("dominance check and pairing disagree")
            if (i, j) not in entries:
                entries[i, j] = [[Fraction(0)] * spec.A[i][1] for _ in range(spec.B[j][1])]
            entries[i, j][kb][ka] = Fraction(1)
    return BlockMatrix({k: tuple(tuple(r) for r in v) for k, v in entries.items()})


@dataclass(frozen=True)
class CokernelInvariants:
    rank: int
    c1: int

    @property
    def slope(self) -> SlopeValue:
        return SlopeValue(self.c1, self.rank)


def cokernel_invariants(spec: ResolutionSpec) -> CokernelInvariants:
    if not shape_admits_minimal_resolution(spec):
        raise SpecError("shape is not the start of a minimal resolution")
    rank = spec.B.rank - spec.A.rank
    if rank < 1:
        raise SpecError("the cokernel has rank zero")
    return CokernelInvariants(rank, spec.B.c1 - spec.A.c1)


def cokernel_support_of(spec: ResolutionSpec) -> QSupport:
    """supp(B) - supp(A) as multisets; raises if A's support does not fit in B's."""
    return spec.B.support().minus(spec.A.support())


def tensor_factor_excluded(spec: ResolutionSpec) -> bool:
    """Whether the resolution cannot be a resolution tensored with a representation.

    A tensor product of two SL(3)-modules of dimension at least 2 is never
    irreducible, so an irreducible term rules out a nontrivial factor.
    """
    return spec.A.is_irreducible() or spec.B.is_irreducible()


# JSON interchange -----------------------------------------------------------


def _parse_fraction(x: Any, where: str) -> Fraction:
    try:
        if isinstance(x, bool):
            raise TypeError
        if isinstance(x, (int, str)):
            return Fraction(x)
    except (ValueError, ZeroDivisionError, TypeError):
        pass
    raise SpecError(f"{where}: entry {x!r} is not an integer or 'num/den' string")


def _parse_summand(d: Any, where: str) -> tuple[TwistedSchur, int]:
    if not isinstance(d, dict):
        raise SpecError(f"{where}: expected an object, got {d!r}")
    try:
        parts = d["partition"]
        if not isinstance(parts, list) or not all(type(x) is int for x in parts):
            raise SpecError(f"{where}: partition must be a list of integers")
        lam = Partition3(*parts)
        twist = d.get("twist", 0)
        mult = d.get("mult", 1)
        if type(twist) is not int or type(mult) is not int:
            raise SpecError(f"{where}: twist and mult must be integers")
        if mult < 1:
            raise SpecError(f"{where}: mult must be positive")
    except KeyError as exc:
        raise SpecError(f"{where}: missing field {exc}") from None
    except SpecError:
        raise
    except ValueError as exc:
        raise SpecError(f"{where}: {exc}") from None
    return TwistedSchur(lam, twist), mult


def _parse_term(items: Any, name: str) -> FreeTerm:
    if not isinstance(items, list):
        raise SpecError(f"{name} must be a list of summands")
    pairs = [_parse_summand(d, f"{name}[{k}]") for k, d in enumerate(items)]
    try:
        return FreeTerm(tuple(pairs))
    except SpecError as exc:
        raise SpecError(f"{name}: {exc}") from None


def spec_from_json(doc: Mapping[str, Any]) -> tuple[ResolutionSpec, BlockMatrix | None]:
    """Parse the interchange format; block indices use canonical summand order."""
    if not isinstance(doc, dict):
        raise SpecError("top level must be an object")
    spec = ResolutionSpec(_parse_term(doc.get("A", []), "A"), _parse_term(doc.get("B", []), "B"))
    if "M" not in doc:
        return spec, None
    raw = doc["M"]
    if not isinstance(raw, list):
        raise SpecError("M must be a list of blocks")
    blocks = {}
    for k, b in enumerate(raw):
        where = f"M[{k}]"
        if not isinstance(b, dict) or not {"from", "to", "entries"} <= b.keys():
            raise SpecError(f"{where}: need 'from', 'to' and 'entries'")
        i, j = b["from"], b["to"]
        if type(i) is not int or type(j) is not int:
            raise SpecError(f"{where}: indices must be integers")
        if not isinstance(b["entries"], list) or not all(isinstance(r, list) for r in b["entries"]):
            raise SpecError(f"{where}: entries must be a list of rows")
        if (i, j) in blocks:
            raise SpecError(f"{where}: block ({i}, {j}) given twice")
        blocks[i, j] = tuple(
            tuple(_parse_fraction(x, where) for x in row) for row in b["entries"]
        )
    m = BlockMatrix(blocks)
    check_blocks(spec, m)
    return spec, m


def load_spec(path: str) -> tuple[ResolutionSpec, BlockMatrix | None]:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path}: invalid JSON ({exc})") from None
    return spec_from_json(doc)


def _summand_json(ts: TwistedSchur, mult: int) -> dict:
    return {"partition": list(ts.partition.parts), "twist": ts.twist, "mult": mult}


def spec_to_json(spec: ResolutionSpec, m: BlockMatrix | None = None) -> dict:
    doc: dict[str, Any] = {
        "A": [_summand_json(*e) for e in spec.A],
        "B": [_summand_json(*e) for e in spec.B],
    }
    if m is not None:
        doc["M"] = [
            {"from": i, "to": j, "entries": [[str(x) for x in row] for row in b]}
            for (i, j), b in sorted(m.blocks.items())
        ]
    return doc


# Elementary bundles ---------------------------------------------------------

Component = tuple[int, int, int]


@dataclass(frozen=True)
class ElementarySpec:
    """0 -> S^{p,q}V -> ⊕_α S^{p+s1, q+s2, s3}V(s1+s2+s3) -> E -> 0."""

    p: int
    q: int
    components: tuple[Component, ...]

    def __post_init__(self):
        if not self.p >= self.q >= 0:
            raise ValueError(f"need p >= q >= 0, got ({self.p}, {self.q})")
        comps = tuple(tuple(int(x) for x in c) for c in self.components)
        if not comps:
            raise ValueError("at least one component is required")
        for c in comps:
            if len(c) != 3 or min(c) < 0:
                raise ValueError(f"component {c} must be three nonnegative integers")
            if sum(c) == 0:
                raise ValueError("component (0,0,0) would be an identity piece")
        if len(set(comps)) != len(comps):
            raise ValueError("duplicate components")
        object.__setattr__(self, "components", tuple(sorted(comps, key=lambda c: (sum(c), c))))

    def twist(self, c: Component) -> int:
        return sum(c)

    def twists(self) -> set[int]:
        return {sum(c) for c in self.components}

    def target(self, c: Component) -> TwistedSchur | None:
        """The summand of component ``c``, or None if it is not a partition."""
        s1, s2, s3 = c
        try:
            return TwistedSchur.of(self.p + s1, self.q + s2, s3, twist=sum(c))
        except ValueError:
            return None

    @property
    def source(self) -> TwistedSchur:
        return TwistedSchur.of(self.p, self.q)

    def map_nonzero(self, c: Component) -> bool:
        tg = self.target(c)
        return tg is not None and hom_dim(self.source, tg) == 1

    def is_injective_shape(self) -> bool:
        """Whether some component (s, 0, 0) makes the map injective."""
        return any(c[1] == c[2] == 0 for c in self.components)

    def resolution(self) -> ResolutionSpec:
        bad = [c for c in self.components if not self.map_nonzero(c)]
        if bad:
            raise SpecError(f"components {bad} give zero maps")
        return ResolutionSpec(FreeTerm.of(self.source), FreeTerm.of(*(self.target(c) for c in self.components)))


def pieri_components(p: int, q: int, s: int) -> list[Component]:
    """The triples (s1, s2, s3) with S^{p+s1,q+s2,s3}V in S^{p,q}V ⊗ S^sV."""
    return [(nu[0] - p, nu[1] - q, nu[2]) for nu in pieri(Partition3(p, q, 0), s)]


def _require_resolution(spec: ElementarySpec) -> None:
    if not spec.is_injective_shape():
        raise ValueError(
            "no component (s,0,0): the map is not injective, so this is not a resolution"
        )


def classify_pinco(spec: ElementarySpec) -> bool:
    """Simplicity of a regular elementary bundle with target W ⊗ O(s)."""
    twists = spec.twists()
    if len(twists) != 1:
        raise ValueError(f"components have different twists {sorted(twists)}")
    (s,) = twists
    full = set(pieri_components(spec.p, spec.q, s))
    stray = [c for c in spec.components if c not in full]
    if stray:
        raise ValueError(f"components {stray} are not in the Pieri decomposition")
    _require_resolution(spec)
    return spec.p == 0 or set(spec.components) != full


@dataclass(frozen=True)
class OneRegularVerdict:
    simple: bool
    stable: bool
    form: int | None


UNIT_COMPONENTS = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def classify_1regular(spec: ElementarySpec) -> OneRegularVerdict:
    """Simplicity and stability when every component has twist 1."""
    for c in spec.components:
        if sum(c) != 1:
            raise ValueError(f"component {c} does not have twist 1")
        if not spec.map_nonzero(c):
            raise ValueError(f"component {c} gives a zero map for (p, q) = ({spec.p}, {spec.q})")
    _require_resolution(spec)
    p, q = spec.p, spec.q
    comps = set(spec.components)
    form = None
    if comps == {(1, 0, 0)}:
        form = 1
    elif comps == {(1, 0, 0), (0, 1, 0)} and q != 0:
        form = 2
    elif comps == {(1, 0, 0), (0, 0, 1)} and q != 0 and p != q:
        form = 3
    simple = form is not None
    stable = simple and (form != 3 or 2 * q >= p > q)
    return OneRegularVerdict(simple, stable, form)


def third_form_boundaries(p: int, q: int) -> tuple[int, int]:
    """The two polynomials whose negativity decides third-form multistability."""
    f_t = -5 * p + 2 * q - 2 - 4 * p * p + 3 * p * q + p * p * q - p ** 3
    f_p = 3 * p * p + p ** 3 - 8 * p * q - 2 * p * p * q - 4 - 8 * q
    return f_t, f_p


@dataclass(frozen=True)
class FibomsemReport:
    conditions: dict[str, bool]

    @property
    def simple(self) -> bool:
        return all(self.conditions.values())

    @property
    def failed(self) -> list[str]:
        return [k for k, v in self.conditions.items() if not v]

    def __bool__(self) -> bool:
        return self.simple


def condition_b_inequalities(spec: ElementarySpec, c: Component) -> bool:
    return spec.p >= spec.q + c[1] and spec.q >= c[2]


def classify_fibomsem(spec: ElementarySpec) -> FibomsemReport:
    """The five simplicity conditions for an elementary bundle."""
    _require_resolution(spec)
    p, q = spec.p, spec.q
    comps = spec.components
    tw = {c: sum(c) for c in comps}

    a = not any(
        all(x <= y for x, y in zip(al, be)) for al, be in _ordered_pairs(comps)
    )
    b = all(spec.map_nonzero(c) for c in comps)

    c_ok = True
    for al, be in _ordered_pairs(comps):
        if tw[al] > tw[be]:
            gap = tw[al] - tw[be]
            if be[1] > 0 and not be[2] + gap < q + 1:
                c_ok = False
            if be[0] > 0 and not q + be[1] + gap < p + 1:
                c_ok = False

    d = True
    for al in comps:
        for be in comps:
            if tw[al] != tw[be]:
                continue
            spread = max(abs(x - y) for x, y in zip(al, be))
            for ga in comps:
                if tw[ga] > tw[al] and tw[ga] - tw[al] < spread:
                    d = False

    e = True
    if p > 0 and len(set(tw.values())) == 1:
        (s,) = set(tw.values())
        e = set(comps) != set(pieri_components(p, q, s))

    return FibomsemReport({"a": a, "b": b, "c": c_ok, "d": d, "e": e})


def _ordered_pairs(items: Sequence) -> Iterable[tuple]:
    for x, y in combinations(items, 2):
        yield x, y
        yield y, x


def elementary_support(spec: ElementarySpec) -> QSupport:
    return cokernel_support_of(spec.resolution())


@dataclass(frozen=True)
class StableTheoremCheck:
    rectangle: Rectangle
    multistable: StabilityVerdict
    tensor_factor_excluded: bool

    def __bool__(self) -> bool:
        return bool(self.multistable) and self.tensor_factor_excluded


def verify_stable_theorem(p: int, q: int, s: int) -> StableTheoremCheck:
    """Check that the cokernel of S^{p,q}V(-s) -> S^{p+s,q}V is stable."""
    if not p >= q >= 0 or s < 1:
        raise ValueError("need p >= q >= 0 and s > 0")
    src = TwistedSchur.of(p, q, twist=-s)
    tgt = TwistedSchur.of(p + s, q)
    rect = rectangle_of(cokernel_support(src, tgt))
    if rect is None:
        raise AssertionError("cokernel support is not a rectangle")
    spec = ResolutionSpec.of([src], [tgt])
    return StableTheoremCheck(rect, is_multistable_rect(rect), tensor_factor_excluded(spec))


def spec_slope(spec: ResolutionSpec) -> SlopeValue:
    """Slope of the cokernel via the support difference."""
    return slope_of_support(cokernel_support_of(spec))
