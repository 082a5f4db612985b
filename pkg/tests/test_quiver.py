from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from p2bundles.quiver import (
    EnumerationBoundError,
    QArrow,
    QSupport,
    QVertex,
    Rectangle,
    Staircase,
    arrows_from,
    cokernel_support,
    completely_regular_degree,
    enumerate_staircases,
    free_support,
    image_support,
    is_regular_staircase,
    kernel_support,
    rectangle_of,
    schur_support_terms,
    staircase_count,
    staircase_of,
    step_anatomy,
    sub_staircases,
    support_diff,
    support_intersect,
    support_of_schur,
    support_tensor_SlQ,
    support_tensor_schur,
)
from p2bundles.schur import Partition3, TwistedSchur, dim3

vertices = st.builds(QVertex, st.integers(0, 30), st.integers(-30, 30))


def S(l, t):
    return QVertex(l, t)


def down_closed_subsets(rect: Rectangle) -> set[frozenset]:
    """Brute force: nonempty subsets closed under the targets of arrows inside ``rect``."""
    verts = list(rect.support())
    inside = set(verts)
    out = set()
    for n in range(1, len(verts) + 1):
        for combo in combinations(verts, n):
            chosen = set(combo)
            if all(a.target in chosen for v in chosen for a in arrows_from(v) if a.target in inside):
                out.add(frozenset(chosen))
    return out


class TestVertices:
    def test_arrow_examples(self):
        assert [a.target for a in arrows_from(S(2, 0))] == [S(1, -1), S(3, -2)]
        assert [(a.kind, a.target) for a in arrows_from(S(0, 0))] == [("B", S(1, -2))]
        assert [a.target for a in arrows_from(S(1, 5))] == [S(0, 4), S(2, 3)]

    def test_negative_power_rejected(self):
        with pytest.raises(ValueError):
            QVertex(-1, 0)
        with pytest.raises(ValueError):
            QArrow(S(0, 0), "A").target

    @given(vertices)
    def test_chart_roundtrip(self, v):
        assert QVertex.from_chart(v.x, v.y, v.offset) == v
        assert v.c1 == (v.l + 1) * v.l // 2 + (v.l + 1) * v.t

    @given(vertices)
    def test_arrows_move_left_and_down(self, v):
        for a in arrows_from(v):
            w = a.target
            assert w.component == v.component
            assert w.offset == v.offset
            assert (w.x - v.x, w.y - v.y) == ((-1, 0) if a.kind == "A" else (0, -1))

    @given(vertices, st.integers(0, 5), st.integers(0, 5))
    def test_moves(self, v, dx, dy):
        if v.l + dx - dy >= 0:
            w = v.moved(dx, dy)
            assert (w.x - v.x, w.y - v.y) == (dx, dy)


class TestSupports:
    def test_schur_examples(self):
        assert support_of_schur(1, 0).support() == QSupport.of([S(1, 0), S(0, -1)])
        assert support_of_schur(0, 0, 7).support() == QSupport.of([S(0, 7)])
        adj = support_of_schur(2, 1).support()
        assert adj == QSupport.of([S(1, 1), S(0, 0), S(2, -1), S(1, -2)])
        assert adj.rank == 8 and adj.c1 == 0

    def test_rectangles_match_decomposition(self):
        for p in range(9):
            for q in range(p + 1):
                r = support_of_schur(p, q, 3)
                sup = r.support()
                assert sup == QSupport.of(schur_support_terms(p, q, 3))
                assert len(sup) == (p - q + 1) * (q + 1)
                assert sup.rank == dim3(Partition3(p, q))
                assert r.anchor == S(0, 2 * q - p + 3)
                assert rectangle_of(sup) == r

    def test_rejects_bad_partition(self):
        with pytest.raises(ValueError):
            support_of_schur(1, 2)

    def test_set_operations(self):
        a = support_of_schur(1, 0).support()
        assert not support_diff(a, a)
        both = support_intersect(a, support_of_schur(2, 0, 1).support())
        assert both == a
        doubled = a + a
        with pytest.raises(ValueError):
            support_diff(doubled, a)
        with pytest.raises(ValueError):
            a.minus(doubled)

    def test_multiset_arithmetic(self):
        a = QSupport.of([S(0, 0), S(0, 0), S(1, 0)])
        assert a.mult[S(0, 0)] == 2 and not a.is_multiplicity_free()
        assert a.minus(QSupport.of([S(0, 0)])) == QSupport.of([S(0, 0), S(1, 0)])
        with pytest.raises(ValueError):
            QSupport({S(0, 0): -1})

    def test_four_terms_instance(self):
        p, q, s = 3, 1, 1
        src = TwistedSchur.of(p, q)
        tgt = TwistedSchur.of(p, q + s, twist=s)
        assert kernel_support(src, [tgt]) == support_of_schur(q + s - 1, q, -p + q - 1 + s).support()
        assert cokernel_support(src, tgt) == support_of_schur(1, 0, 3).support()
        ker, cok = kernel_support(src, [tgt]), cokernel_support(src, tgt)
        assert src.rank - ker.rank == tgt.rank - cok.rank == image_support(src, tgt).rank

    def test_injective_maps_have_empty_kernel(self):
        for p in range(5):
            for q in range(p + 1):
                for s in range(1, 4):
                    src = TwistedSchur.of(p, q)
                    assert not kernel_support(src, [TwistedSchur.of(p + s, q, twist=s)])

    def test_zero_map_rejected(self):
        with pytest.raises(ValueError):
            kernel_support(TwistedSchur.of(2), [TwistedSchur.of(1, twist=1)])

    def test_free_support_counts_multiplicity(self):
        sup = free_support([(TwistedSchur.of(1), 2), (TwistedSchur.of(0, twist=-1), 1)])
        assert sup.mult[S(0, -1)] == 3 and sup.mult[S(1, 0)] == 2


class TestTensorShapes:
    def test_line_bundle_case(self):
        for q in range(5):
            assert support_tensor_SlQ(0, 2, q) == support_of_schur(q, 0, 2).support()

    def test_examples(self):
        tri = support_tensor_SlQ(3, 0, 1)
        assert tri.is_multiplicity_free() and len(tri) == 3
        assert min(tri, key=lambda v: (v.x, v.y)) == S(3, -1)
        trap = support_tensor_SlQ(1, 0, 2)
        assert min(trap, key=lambda v: (v.x, v.y)) == S(1, -2)
        st_ = staircase_of(trap)
        assert st_.heights == (2, 2, 1)

    def test_shapes_are_completely_regular(self):
        for l in range(6):
            for q in range(6):
                s = staircase_of(support_tensor_SlQ(l, 1, q))
                assert s is not None and completely_regular_degree(s) == q
                assert s.heights == tuple(min(l + 1, q + 1 - i) for i in range(q + 1))

    def test_dual_shapes(self):
        assert rectangle_of(support_tensor_SlQ(0, 0, 3, "dual")) == support_of_schur(3, 3)
        sup = support_tensor_SlQ(2, 0, 2, "dual")
        assert sup.is_multiplicity_free() and staircase_of(sup) is None
        with pytest.raises(ValueError):
            support_tensor_SlQ(1, 0, 1, "other")

    def test_mixed_factor_repeats_a_vertex(self):
        sup = support_tensor_schur(1, 0, 2, 1)
        assert sup.mult[S(1, 0)] == 2
        # without the l >= 1 restriction the claim fails: S^0Q ⊗ S^{2,1}V is a rectangle
        assert support_tensor_schur(0, 0, 2, 1).is_multiplicity_free()


class TestStaircases:
    def test_examples(self):
        assert len(list(enumerate_staircases(Rectangle(S(0, 0), 1, 0)))) == 2
        assert len(list(enumerate_staircases(Rectangle(S(1, 0), 1, 1)))) == 5
        r = Rectangle(S(2, 3), 3, 2)
        assert Staircase.full(r) in list(enumerate_staircases(r))

    @pytest.mark.parametrize("h, k", [(0, 0), (1, 0), (0, 2), (1, 1), (2, 1), (2, 2), (3, 1)])
    def test_against_brute_force(self, h, k):
        r = Rectangle(S(k, 0), h, k)
        got = {frozenset(s.vertices()) for s in enumerate_staircases(r)}
        assert got == down_closed_subsets(r)
        assert len(got) == staircase_count(r)

    def test_count_formula_larger(self):
        for h in range(6):
            for k in range(6):
                r = Rectangle(S(k, 0), h, k)
                assert sum(1 for _ in enumerate_staircases(r)) == staircase_count(r)

    def test_bound(self):
        r = Rectangle(S(0, 0), 13, 12)
        with pytest.raises(EnumerationBoundError):
            next(enumerate_staircases(r))
        assert next(enumerate_staircases(Rectangle(S(0, 0), 3, 2), bound=5))

    @pytest.mark.parametrize("heights", [(1, 2), (3, 0), (0, 0), (1,)])
    def test_invalid_profiles(self, heights):
        with pytest.raises(ValueError):
            Staircase(Rectangle(S(2, 0), 1, 1), heights)

    def test_roundtrip_through_support(self):
        r = Rectangle(S(3, 0), 3, 2)
        for s in enumerate_staircases(r):
            back = staircase_of(s.support())
            assert back is not None and set(back.vertices()) == set(s.vertices())

    def test_sub_staircases_are_contained(self):
        s = Staircase(Rectangle(S(2, 0), 2, 2), (3, 2, 1))
        subs = list(sub_staircases(s))
        assert all(set(x.vertices()) <= set(s.vertices()) for x in subs)
        assert len(subs) == 13

    def test_not_a_staircase(self):
        r = Rectangle(S(2, 0), 1, 1)
        assert staircase_of(QSupport.of([r.at(1, 0), r.at(0, 1)])) is None
        assert staircase_of(QSupport.of([S(0, 0), S(0, 1)])) is None


class TestStepAnatomy:
    def test_rectangle_is_one_step(self):
        r = Rectangle(S(2, 0), 2, 1)
        an = step_anatomy(Staircase.full(r))
        assert an.steps == 1
        assert an.H[1] == an.E[1] == an.O[1] == r.support()

    def test_l_shape(self):
        r = Rectangle(S(1, 0), 1, 1)
        s = Staircase(r, (2, 1))
        an = step_anatomy(s)
        assert an.corners == [r.at(1, 0), r.at(0, 1)]
        assert an.O[1] == QSupport.of([r.at(1, 0)])
        assert an.O[2] == QSupport.of([r.at(0, 1)])
        assert an.A[1] == an.B[2] == QSupport.of([r.at(1, 1)])
        assert an.H[1] == QSupport.of([r.at(0, 0), r.at(1, 0)])
        assert an.E[2] == QSupport.of([r.at(0, 0), r.at(0, 1)])
        assert is_regular_staircase(s)

    def test_notch_between_steps(self):
        r = Rectangle(S(3, 0), 3, 3)
        s = Staircase(r, (4, 4, 2, 2))
        an = step_anatomy(s)
        assert an.corners == [r.at(3, 1), r.at(1, 3)]
        assert an.A[1] == QSupport.of([r.at(i, j) for i in (2, 3) for j in (2, 3)])
        assert an.B[2] == an.A[1]

    def test_partition_identities(self):
        for h in range(5):
            for k in range(5):
                for s in enumerate_staircases(Rectangle(S(k, 0), h, k)):
                    an = step_anatomy(s)
                    whole = set(s.vertices())
                    hs = [set(an.H[i]) for i in range(1, an.steps + 1)]
                    es = [set(an.E[i]) for i in range(1, an.steps + 1)]
                    assert set().union(*hs) == whole == set().union(*es)
                    assert sum(map(len, hs)) == len(whole) == sum(map(len, es))
                    for i in range(1, an.steps + 1):
                        assert set(an.O[i]) == set(an.H[i]) & set(an.E[i])
                    for i in range(1, an.steps):
                        assert not set(an.A[i]) & whole
                        assert an.B[i + 1] == an.A[i]
