"""Exhaustive property sweeps over bounded ranges.

Each sweep returns a ``SweepResult`` with one row per case so the CLI can
write it out as CSV. A sweep never stops at the first failure; failures
are collected with enough detail to reproduce them.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any, Callable

from .quiver import (
    QSupport,
    QVertex,
    Rectangle,
    Staircase,
    cokernel_support,
    completely_regular_degree,
    enumerate_staircases,
    free_support,
    is_regular_staircase,
    kernel_support,
    rectangle_of,
    schur_support_terms,
    staircase_of,
    support_of_schur,
    support_tensor_SlQ,
    support_tensor_schur,
)
from .resolution import (
    UNIT_COMPONENTS,
    ElementarySpec,
    FreeTerm,
    ResolutionSpec,
    classify_1regular,
    classify_fibomsem,
    classify_pinco,
    cokernel_invariants,
    cokernel_support_of,
    constructive_witness,
    is_valid_minimal_resolution_map,
    pieri_components,
    shape_admits_injection,
    shape_admits_minimal_resolution,
    third_form_boundaries,
    verify_stable_theorem,
)
from .schur import Partition3, TwistedSchur, dim3, hom_dim, pieri, ssyt_count
from .slopecalc import (
    check_rectangle_inequalities,
    check_segment_inequality,
    check_step_slopes,
    check_sticking_out,
    is_multistable_staircase,
    is_multistable_support,
    rectangle_slope_closed_form,
    regular_staircase_verdict,
    slope_of_support,
)


@dataclass
class SweepResult:
    name: str
    rows: list[dict[str, Any]] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)
    example: QSupport | None = None
    example_title: str = ""

    @property
    def cases(self) -> int:
        return len(self.rows)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, ok: bool, detail: str, **cols: Any) -> None:
        self.rows.append({**cols, "ok": ok})
        if not ok:
            self.failures.append(detail)

    def summary(self) -> str:
        if self.ok:
            return f"OK ({self.cases} cases)"
        return f"FAIL ({len(self.failures)} of {self.cases} cases)"


def sweep_dimensions(max_part: int = 8) -> SweepResult:
    res = SweepResult("dimensions")
    for a in range(max_part + 1):
        for b in range(a + 1):
            for c in range(b + 1):
                lam = Partition3(a, b, c)
                d, n = dim3(lam), ssyt_count(lam, 3)
                res.record(d == n, f"{lam}: dim3 {d} != tableaux {n}", partition=str(lam), dim=d, ssyt=n)
    return res


def sweep_pieri(max_part: int = 6, max_s: int = 6) -> SweepResult:
    res = SweepResult("pieri")
    for a in range(max_part + 1):
        for b in range(a + 1):
            for c in range(b + 1):
                lam = Partition3(a, b, c)
                for s in range(max_s + 1):
                    nus = pieri(lam, s)
                    total = sum(dim3(nu) for nu in nus)
                    want = dim3(lam) * dim3(Partition3(s))
                    ok = total == want and len(set(nus)) == len(nus)
                    res.record(ok, f"{lam} x S^{s}: {total} != {want}", partition=str(lam), s=s, terms=len(nus))
    return res


def sweep_rectangles(max_p: int = 8) -> SweepResult:
    res = SweepResult("rectangles")
    for p in range(max_p + 1):
        for q in range(p + 1):
            r = support_of_schur(p, q)
            sup = r.support()
            terms = schur_support_terms(p, q)
            ok = (
                len(sup) == (p - q + 1) * (q + 1)
                and sup.is_multiplicity_free()
                and sup == QSupport.of(terms)
                and sup.rank == dim3(Partition3(p, q))
            )
            res.record(ok, f"S^{{{p},{q}}}V: bad rectangle", p=p, q=q, vertices=len(sup), rank=sup.rank)
    res.example, res.example_title = support_of_schur(min(max_p, 3), 1).support(), "support of S^{3,1}V"
    return res


def sweep_closed_form(n: int = 6) -> SweepResult:
    res = SweepResult("murettangolo")
    for h in range(n + 1):
        for k in range(n + 1):
            for l in range(n + 1):
                for t in range(-n, n + 1):
                    r = Rectangle(QVertex(l, t), h, k)
                    a, b = rectangle_slope_closed_form(r), slope_of_support(r)
                    res.record(a == b, f"h={h} k={k} S^{l}Q({t}): {a} vs {b}", h=h, k=k, l=l, t=t, c1=b.c1, rank=b.rank)
    res.example, res.example_title = Rectangle(QVertex(1, 0), 2, 1).support(), "rectangle h=2 k=1"
    return res


def sweep_segments(n: int = 6) -> SweepResult:
    res = SweepResult("segmenti")
    for length in range(n + 1):
        for l in range(n + 1):
            for t in (-1, 0, 1):
                for h, k, direction in ((length, 0, "up"), (0, length, "right")):
                    seg = Rectangle(QVertex(l, t), h, k)
                    if direction == "up" and l == 0:
                        continue  # the translate would leave the quiver
                    ok = check_segment_inequality(seg, direction)
                    res.record(ok, f"segment h={h} k={k} at S^{l}Q({t})", h=h, k=k, l=l, t=t, direction=direction)
    return res


def _rect_at(x: int, y: int, h: int, k: int, offset: int = 0) -> Rectangle:
    return Rectangle.from_lower_left(QVertex.from_chart(x, y, offset), h, k)


def sweep_rectangle_cases(n: int = 6, extra_l: int = 2) -> SweepResult:
    """All four rectangle comparisons with sides at most ``n``.

    Configurations are placed so that the highest top-left vertex has
    l in 0..extra_l.
    """
    res = SweepResult("rettangoli")

    def run(case, big, small, **cols):
        ok = check_rectangle_inequalities(case, big, small)
        res.record(ok, f"case {case}: {big} vs {small}", case=case, **cols)

    # lower-left (x, y) with x - (y + height) = lt, the top-left l
    for h in range(n + 1):
        for lt in range(extra_l + 1):
            for k1 in range(n + 1):
                for k2 in range(n + 1):
                    for gap in (0, 1):
                        top = k1 + gap + 1 + k2
                        low = _rect_at(lt + top, 0, h, k1)
                        high = _rect_at(lt + top, k1 + gap + 1, h, k2)
                        run("i", high, low, h=h, k=k2, k_other=k1, l=lt, gap=gap)
                        wide = _rect_at(lt + h, 0, k1, h)
                        right = _rect_at(lt + h + k1 + gap + 1, 0, k2, h)
                        run("ii", right, wide, h=k2, k=h, k_other=k1, l=lt, gap=gap)
                for k in range(1, n + 1):
                    big = _rect_at(lt + k, 0, h, k)
                    for k2 in range(k):
                        run("iii", big, big.sub(0, 0, h, k2), h=h, k=k, k_other=k2, l=lt, gap=0)
                    wide = _rect_at(lt + h, 0, k, h)
                    for h2 in range(k):
                        run("iv", wide, wide.sub(0, 0, h2, h), h=k, k=h, k_other=h2, l=lt, gap=0)
    return res


def sweep_four_terms(max_sum: int = 8) -> SweepResult:
    res = SweepResult("four-terms")
    for p in range(max_sum + 1):
        for q in range(p):
            # the map S^{p,q}V -> S^{p,q+s}V(s) is nonzero only for s <= p - q
            for s in range(1, min(p - q, max_sum - p) + 1):
                src = TwistedSchur.of(p, q)
                tgt = TwistedSchur.of(p, q + s, twist=s)
                ker = kernel_support(src, [tgt])
                cok = cokernel_support(src, tgt)
                want_ker = support_of_schur(q + s - 1, q, -p + q - 1 + s).support()
                want_cok = support_of_schur(p - q - 1, s - 1, q + 1 + s).support()
                inj = kernel_support(src, [TwistedSchur.of(p + s, q, twist=s)])
                ranks = src.rank - ker.rank == tgt.rank - cok.rank
                ok = ker == want_ker and cok == want_cok and not inj and ranks
                res.record(ok, f"(p,q,s)=({p},{q},{s})", p=p, q=q, s=s, kernel=len(ker), cokernel=len(cok))
    return res


def sweep_stable(max_p: int = 4, max_s: int = 3) -> SweepResult:
    res = SweepResult("stable")
    for p in range(max_p + 1):
        for q in range(p + 1):
            for s in range(1, max_s + 1):
                chk = verify_stable_theorem(p, q, s)
                v = chk.multistable
                res.record(bool(chk), f"(p,q,s)=({p},{q},{s}) witness {v.witness}", p=p, q=q, s=s, staircases=v.checked, slope=str(v.slope.value))
                if res.example is None and s > 1 and q > 0:
                    res.example, res.example_title = chk.rectangle.support(), f"cokernel rectangle (p,q,s)=({p},{q},{s})"
    return res


def regular_staircases(n: int, max_steps: int = 4, max_l: int | None = None):
    """Regular staircases filling an h x k box, h, k <= n, top-left l <= max_l."""
    max_l = n if max_l is None else max_l
    for h in range(n + 1):
        for k in range(n + 1):
            for l in range(max_l + 1):
                r = Rectangle(QVertex(l, 0), h, k)
                for s in enumerate_staircases(r):
                    # keep each shape once, in its own bounding box
                    if s.heights[0] != k + 1 or s.heights[-1] == 0:
                        continue
                    if len(s.corners()) <= max_steps and is_regular_staircase(s):
                        yield s


def sweep_regstair_facts(n: int = 6, max_steps: int = 4, max_l: int | None = None) -> SweepResult:
    res = SweepResult("regstair-facts")
    for s in regular_staircases(n, max_steps, max_l):
        f1, f2 = check_step_slopes(s), check_sticking_out(s)
        r = s.rectangle
        detail = f"heights {s.heights} below S^{r.anchor.l}Q({r.anchor.t}): fact1={f1} fact2={f2}"
        res.record(f1 and f2, detail, heights=" ".join(map(str, s.heights)), l=r.anchor.l, fact1=f1, fact2=f2)
        if not (f1 and f2) and res.example is None:
            res.example, res.example_title = s.support(), f"regular staircase failing a step inequality"
    return res


def sweep_sltensor(n: int = 5, t: int = 0) -> SweepResult:
    """Tensor supports S^lQ(t) ⊗ S^qV and ⊗ S^{q,q}V, and the stability call on them."""
    res = SweepResult("sltensor")
    for l in range(n + 1):
        for q in range(n + 1):
            sup = support_tensor_SlQ(l, t, q, "sym")
            st = staircase_of(sup)
            ok = sup.is_multiplicity_free() and st is not None
            deg = completely_regular_degree(st) if st else None
            lowest = min(sup, key=lambda v: (v.x, v.y))
            ok = ok and deg == q and lowest == QVertex(l, t - q) and is_regular_staircase(st)
            verdict = regular_staircase_verdict(st) if st else None
            ok = ok and verdict.multistable and verdict.stable == (q == 0)
            res.record(ok, f"S^{l}Q({t}) x S^{q}V", l=l, q=q, kind="sym", staircase=st is not None, multistable=bool(verdict and verdict.multistable), stable=bool(verdict and verdict.stable))

            dual = support_tensor_SlQ(l, t, q, "dual")
            dst = staircase_of(dual)
            ok = dual.is_multiplicity_free() and (dst is not None) == (l == 0 or q == 0)
            res.record(ok, f"S^{l}Q({t}) x S^{{{q},{q}}}V", l=l, q=q, kind="dual", staircase=dst is not None, multistable="", stable="")
            # a nontrivial S^{p,q}V factor with p != q, q != 0 forces a repeated vertex
            for p in range(q + 1, n + 1):
                if q and l:
                    mixed = support_tensor_schur(l, t, p, q)
                    ok = not mixed.is_multiplicity_free()
                    res.record(ok, f"S^{l}Q({t}) x S^{{{p},{q}}}V has no repeated vertex", l=l, q=q, kind=f"({p},{q})", staircase="", multistable="", stable="")
    res.example, res.example_title = support_tensor_SlQ(2, 0, 3), "support of S^2Q ⊗ S^3V"
    return res


def sweep_regular_not_completely(n: int = 5) -> SweepResult:
    """Stability of regular, not completely regular staircases in the tensor family.

    Among the supports of S^lQ(t) ⊗ S^qV and S^lQ(t) ⊗ S^{q,q}V, the only
    ones of this type are the vertical segments S^{q,q}V(t), q >= 1. Each
    row records whether the support sweep finds it multistable and whether
    it can be stable.
    """
    res = SweepResult("regular-not-completely-regular")
    for l in range(n + 1):
        for q in range(n + 1):
            for kind in ("sym", "dual"):
                st = staircase_of(support_tensor_SlQ(l, 0, q, kind))
                if st is None or not is_regular_staircase(st) or completely_regular_degree(st) is not None:
                    continue
                v = regular_staircase_verdict(st)
                res.record(v.stable, f"S^{l}Q x {kind} degree {q}: multistable={v.multistable}, stable={v.stable}", l=l, q=q, kind=kind, multistable=v.multistable, stable=v.stable)
    return res


def third_form_support(p: int, q: int) -> QSupport:
    spec = ElementarySpec(p, q, ((1, 0, 0), (0, 0, 1)))
    return cokernel_support_of(spec.resolution())


def sweep_third_form(max_p: int = 8) -> SweepResult:
    res = SweepResult("third-form")
    for p in range(1, max_p + 1):
        # S^{p,q,1}V needs q >= 1
        for q in range(1, p + 1):
            sup = third_form_support(p, q)
            v = is_multistable_support(sup)
            f_t, f_p = third_form_boundaries(p, q)
            boundary = f_t < 0 and f_p < 0
            factored = f_p == (p + 2) ** 2 * (p - 1 - 2 * q)
            ok = bool(v) == boundary == (p <= 2 * q) and factored and f_t < 0
            res.record(ok, f"(p,q)=({p},{q}): sweep {bool(v)} vs boundary {boundary}", p=p, q=q, sweep=bool(v), f_t=f_t, f_p=f_p, subsupports=v.checked)
            if p == 4 and q == 1:
                res.example, res.example_title = sup, "third-form support (p,q)=(4,1)"
    return res


def _subsets(items):
    for mask in range(1, 1 << len(items)):
        yield tuple(x for i, x in enumerate(items) if mask >> i & 1)


def _verdict(fn: Callable, spec: ElementarySpec):
    try:
        return fn(spec)
    except ValueError:
        return None


def sweep_cross_classify(max_p: int = 4, max_s: int = 3, max_p_one: int = 6) -> SweepResult:
    res = SweepResult("cross-classify")
    for p in range(max_p + 1):
        for q in range(p + 1):
            for s in range(1, max_s + 1):
                for w in _subsets(pieri_components(p, q, s)):
                    spec = ElementarySpec(p, q, w)
                    a = _verdict(classify_pinco, spec)
                    b = _verdict(classify_fibomsem, spec)
                    b = None if b is None else b.simple
                    res.record(a == b, f"uniform p={p} q={q} W={w}: pinco {a} fibomsem {b}", test="uniform", p=p, q=q, W=str(w), left=a, right=b)
    for p in range(max_p_one + 1):
        for q in range(p + 1):
            allowed = [c for c in UNIT_COMPONENTS if ElementarySpec(p, q, (c,)).map_nonzero(c)]
            for w in _subsets(allowed):
                spec = ElementarySpec(p, q, w)
                one = _verdict(classify_1regular, spec)
                a = None if one is None else one.simple
                b = _verdict(classify_fibomsem, spec)
                b = None if b is None else b.simple
                res.record(a == b, f"s=1 p={p} q={q} W={w}: 1regular {a} fibomsem {b}", test="twist-one", p=p, q=q, W=str(w), left=a, right=b)
    # condition b as inequalities agrees with the Pieri check
    for p in range(max_p + 1):
        for q in range(p + 1):
            for s in range(1, max_s + 1):
                for s1 in range(s + 1):
                    for s2 in range(s - s1 + 1):
                        c = (s1, s2, s - s1 - s2)
                        spec = ElementarySpec(p, q, (c,))
                        lhs = spec.map_nonzero(c)
                        rhs = p >= q + c[1] and q >= c[2]
                        res.record(lhs == rhs, f"condition b forms differ at p={p} q={q} c={c}", test="condition-b", p=p, q=q, W=str(c), left=lhs, right=rhs)
    return res


def random_admissible_shape(rng: random.Random, max_part: int = 4, max_terms: int = 3) -> ResolutionSpec:
    """A random shape admitting a minimal resolution.

    A is drawn freely; B receives, for each A summand, a Pieri-compatible
    target in the same group with larger p, plus random extra summands.
    """
    while True:
        a_terms: dict = {}
        b_terms: dict = {}
        for _ in range(rng.randint(1, max_terms)):
            p = rng.randint(0, max_part)
            q = rng.randint(0, p)
            c = rng.randint(-2, 2)
            m = rng.randint(1, 2)
            ts = TwistedSchur.of(p, q, twist=c + p)
            a_terms[ts] = a_terms.get(ts, 0) + m
        for ts, m in a_terms.items():
            p, q, _ = ts.partition.parts
            d = rng.randint(1, 2)
            tgt = TwistedSchur.of(p + d, q, twist=ts.twist + d)
            b_terms[tgt] = b_terms.get(tgt, 0) + m + rng.randint(0, 1)
        for _ in range(rng.randint(0, 2)):
            p = rng.randint(0, max_part + 2)
            q = rng.randint(0, p)
            ts = TwistedSchur.of(p, q, twist=rng.randint(-2, max_part + 2))
            b_terms[ts] = b_terms.get(ts, 0) + rng.randint(1, 2)
        spec = ResolutionSpec(FreeTerm(tuple(a_terms.items())), FreeTerm(tuple(b_terms.items())))
        if shape_admits_minimal_resolution(spec):
            return spec


def sweep_witness(count: int = 500, seed: int = 20240) -> SweepResult:
    res = SweepResult("witness")
    rng = random.Random(seed)
    for n in range(count):
        spec = random_admissible_shape(rng)
        m = constructive_witness(spec)
        valid = is_valid_minimal_resolution_map(spec, m)
        inv = cokernel_invariants(spec)
        try:
            sup = cokernel_support_of(spec)
        except ValueError:
            res.record(False, f"shape #{n}: supp(A) does not fit in supp(B)", case=n, summands_a=len(spec.A), summands_b=len(spec.B), rank=inv.rank, c1=inv.c1)
            continue
        additive = (
            inv.rank == sup.rank
            and inv.c1 == sup.c1
            and inv.slope.same_slope(slope_of_support(sup))
            and shape_admits_injection(spec)
        )
        res.record(valid and additive, f"shape #{n}: valid={valid} additive={additive}", case=n, summands_a=len(spec.A), summands_b=len(spec.B), rank=inv.rank, c1=inv.c1)
    return res


SWEEPS: dict[str, Callable[[int], SweepResult]] = {
    "murettangolo": lambda n: sweep_closed_form(n),
    "segmenti": lambda n: sweep_segments(n),
    "rettangoli": lambda n: sweep_rectangle_cases(n),
    "four-terms": lambda n: sweep_four_terms(n),
    "stable": lambda n: sweep_stable(max(1, min(n, 5)), max(1, min(n, 4) - 1)),
    "regstair-facts": lambda n: sweep_regstair_facts(n),
    "sltensor": lambda n: sweep_sltensor(n),
    "cross-classify": lambda n: sweep_cross_classify(max(1, min(n, 4)), 3, n),
    "third-form": lambda n: sweep_third_form(n),
    "witness": lambda n: sweep_witness(100 * n),
}
