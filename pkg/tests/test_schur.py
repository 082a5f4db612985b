from itertools import product

import pytest
from hypothesis import given, strategies as st

from p2bundles.schur import (
    Partition3,
    QTensorTerm,
    TwistedSchur,
    clebsch_gordan,
    dim3,
    dual,
    hom_dim,
    pieri,
    ssyt_count,
)


@st.composite
def partitions(draw, max_part=8):
    a = draw(st.integers(0, max_part))
    b = draw(st.integers(0, a))
    c = draw(st.integers(0, b))
    return Partition3(a, b, c)


def horizontal_strips(lam: Partition3, s: int) -> set[Partition3]:
    """Shapes nu ⊇ lam with |nu/lam| = s and at most one added box per column."""
    out = set()
    a, b, c = lam.parts
    for extra in product(range(s + 1), repeat=3):
        if sum(extra) != s:
            continue
        nu = (a + extra[0], b + extra[1], c + extra[2])
        if not nu[0] >= nu[1] >= nu[2]:
            continue
        boxes = {(r, col) for r, n in enumerate(nu) for col in range(n)}
        old = {(r, col) for r, n in enumerate(lam.parts) for col in range(n)}
        cols = [col for _, col in boxes - old]
        if len(cols) == len(set(cols)):
            out.add(Partition3(*nu))
    return out


class TestPartition:
    def test_padding_and_reduction(self):
        assert Partition3(2, 1) == Partition3(2, 1, 0)
        assert Partition3(3, 2, 1).reduced() == Partition3(2, 1, 0)
        assert Partition3((4, 4, 4)).same_module(Partition3())

    @pytest.mark.parametrize("bad", [(1, 2, 0), (0, 0, -1), (1, 1, 1, 1)])
    def test_rejects_non_partitions(self, bad):
        with pytest.raises(ValueError):
            Partition3(*bad)

    def test_twisted_equality_uses_reduced_form(self):
        assert TwistedSchur.of(3, 2, 1, twist=4) == TwistedSchur.of(2, 1, twist=4)
        assert TwistedSchur.of(2, 1, twist=4) != TwistedSchur.of(2, 1, twist=3)
        assert str(TwistedSchur.of(2, 1, 1, twist=-1)) == "S^{2,1,1}V(-1)"

    def test_tensor_term_validation(self):
        with pytest.raises(ValueError):
            QTensorTerm(-1, 0)
        with pytest.raises(ValueError):
            QTensorTerm(1, 0, 0)
        assert QTensorTerm(2, 5, 3).rank == 9


class TestDimension:
    @pytest.mark.parametrize("lam, d", [((1, 0, 0), 3), ((1, 1, 0), 3), ((2, 1, 0), 8), ((1, 1, 1), 1)])
    def test_examples(self, lam, d):
        assert dim3(Partition3(*lam)) == d

    @pytest.mark.parametrize("lam, n, count", [((1, 0, 0), 3, 3), ((1, 1, 1), 3, 1), ((2, 1, 0), 3, 8), ((2, 1, 0), 2, 2)])
    def test_tableau_examples(self, lam, n, count):
        assert ssyt_count(Partition3(*lam), n) == count

    def test_formula_matches_tableaux(self):
        for a in range(9):
            for b in range(a + 1):
                for c in range(b + 1):
                    lam = Partition3(a, b, c)
                    assert dim3(lam) == ssyt_count(lam, 3), lam

    def test_ssyt_rejects_empty_alphabet(self):
        with pytest.raises(ValueError):
            ssyt_count(Partition3(1), 0)


class TestPieri:
    def test_examples(self):
        assert set(pieri(Partition3(1), 1)) == {Partition3(2), Partition3(1, 1)}
        assert pieri(Partition3(3, 1, 1), 0) == (Partition3(3, 1, 1),)
        got = pieri(Partition3(2, 1), 2)
        assert got == (Partition3(4, 1), Partition3(3, 2), Partition3(3, 1, 1), Partition3(2, 2, 1))
        assert sum(dim3(nu) for nu in got) == 8 * 6

    def test_matches_strip_oracle(self):
        for a in range(6):
            for b in range(a + 1):
                for c in range(b + 1):
                    for s in range(5):
                        lam = Partition3(a, b, c)
                        assert set(pieri(lam, s)) == horizontal_strips(lam, s)

    @given(partitions(6), st.integers(0, 6))
    def test_dimension_identity(self, lam, s):
        nus = pieri(lam, s)
        assert len(set(nus)) == len(nus)
        assert list(nus) == sorted(nus, reverse=True)
        assert sum(dim3(nu) for nu in nus) == dim3(lam) * dim3(Partition3(s))

    def test_negative_s(self):
        with pytest.raises(ValueError):
            pieri(Partition3(1), -1)


class TestDual:
    def test_examples(self):
        assert dual(Partition3(1)) == Partition3(1, 1)
        assert dual(Partition3(1, 1)) == Partition3(1)
        assert dual(Partition3(2, 1)) == Partition3(2, 1)

    @given(partitions())
    def test_involution_and_dimension(self, lam):
        assert dual(dual(lam)) == lam.reduced()
        assert dim3(dual(lam)) == dim3(lam)


class TestHom:
    def test_examples(self):
        assert hom_dim(TwistedSchur.of(1), TwistedSchur.of(2, twist=1)) == 1
        assert hom_dim(TwistedSchur.of(1), TwistedSchur.of(1)) == 1
        assert hom_dim(TwistedSchur.of(2), TwistedSchur.of(1, twist=1)) == 0
        assert hom_dim(TwistedSchur.of(2, twist=1), TwistedSchur.of(1)) == 0

    def test_reduced_target(self):
        # S^{1,1,1}V(1) is O(1); it receives a map from V^* = S^{1,1}V but not from O
        assert hom_dim(TwistedSchur.of(0), TwistedSchur.of(1, 1, 1, twist=1)) == 0
        assert hom_dim(TwistedSchur.of(1, 1), TwistedSchur.of(1, 1, 1, twist=1)) == 1

    @given(partitions(4), partitions(4), st.integers(-3, 3), st.integers(-3, 3), st.integers(-5, 5))
    def test_twist_shift_invariance(self, lam, mu, t, u, d):
        a, b = TwistedSchur(lam, t), TwistedSchur(mu, u)
        assert hom_dim(a, b) == hom_dim(a.shifted(d), b.shifted(d))


class TestClebschGordan:
    def test_examples(self):
        assert clebsch_gordan(1, 0, 1, 0) == [QTensorTerm(2, 0), QTensorTerm(0, 1)]
        assert clebsch_gordan(4, 2, 0, 3) == [QTensorTerm(4, 5)]
        assert clebsch_gordan(2, 0, 1, 0) == [QTensorTerm(3, 0), QTensorTerm(1, 1)]
        assert clebsch_gordan(1, 0, 2, 0) == clebsch_gordan(2, 0, 1, 0)

    def test_rank_and_c1_identities(self):
        for l in range(11):
            for m in range(11):
                terms = clebsch_gordan(l, 1, m, -2)
                assert sum(x.rank for x in terms) == (l + 1) * (m + 1)
                # c1(E ⊗ F) = rank F c1 E + rank E c1 F
                c1 = lambda l_, t_: (l_ + 1) * l_ // 2 + (l_ + 1) * t_
                total = sum(c1(x.l, x.t) for x in terms)
                assert total == (m + 1) * c1(l, 1) + (l + 1) * c1(m, -2)
