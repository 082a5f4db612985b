"""SL(3) partition combinatorics.

Schur modules S^{p,q,r}V for dim V = 3, their dimensions, Pieri
decompositions, duals and the rank-2 Clebsch-Gordan rule for the
tautological quotient Q.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator


@dataclass(frozen=True, order=True)
class Partition3:
    """A weakly decreasing triple of nonnegative integers.

    Stored exactly as given; ``reduced()`` gives the SL(3) canonical form.
    Trailing parts may be omitted: ``Partition3(2, 1) == Partition3(2, 1, 0)``.
    """

    parts: tuple[int, int, int]

    def __init__(self, *parts: int):
        if len(parts) == 1 and isinstance(parts[0], (tuple, list)):
            parts = tuple(parts[0])
        if len(parts) > 3:
            raise ValueError(f"at most three parts allowed, got {parts}")
        padded = tuple(int(x) for x in parts) + (0,) * (3 - len(parts))
        a, b, c = padded
        if not a >= b >= c >= 0:
            raise ValueError(f"not a partition: {padded}")
        object.__setattr__(self, "parts", padded)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, i: int) -> int:
        return self.parts[i]

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"

    @property
    def size(self) -> int:
        return sum(self.parts)

    def reduced(self) -> Partition3:
        a, b, c = self.parts
        return Partition3(a - c, b - c, 0)

    def same_module(self, other: Partition3) -> bool:
        return self.reduced() == other.reduced()


@dataclass(frozen=True)
class TwistedSchur:
    """The bundle S^λ V ⊗ O(twist) on P^2.

    Equality and hashing use (reduced partition, twist) so that
    S^{p,q,r}V(t) and S^{p-r,q-r}V(t) compare equal.
    """

    partition: Partition3
    twist: int = 0

    @classmethod
    def of(cls, p: int, q: int = 0, r: int = 0, twist: int = 0) -> TwistedSchur:
        return cls(Partition3(p, q, r), twist)

    def key(self) -> tuple[tuple[int, int, int], int]:
        return self.partition.reduced().parts, self.twist

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TwistedSchur):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __str__(self) -> str:
        a, b, c = self.partition.parts
        label = f"{a},{b}" if c == 0 else f"{a},{b},{c}"
        return f"S^{{{label}}}V({self.twist})"

    @property
    def rank(self) -> int:
        return dim3(self.partition)

    @property
    def c1(self) -> int:
        # S^λV ⊗ O is trivial, so only the twist contributes
        return self.rank * self.twist

    def shifted(self, d: int) -> TwistedSchur:
        return TwistedSchur(self.partition, self.twist + d)


@dataclass(frozen=True, order=True)
class QTensorTerm:
    """A summand mult · S^l Q(t)."""

    l: int
    t: int
    mult: int = 1

    def __post_init__(self):
        if self.l < 0:
            raise ValueError(f"negative symmetric power {self.l}")
        if self.mult < 1:
            raise ValueError(f"multiplicity must be positive, got {self.mult}")

    @property
    def rank(self) -> int:
        return self.mult * (self.l + 1)


def dim3(lam: Partition3) -> int:
    """Dimension of S^λ C^3."""
    a, b, _ = lam.reduced().parts
    return (a - b + 1) * (b + 1) * (a + 2) // 2


def ssyt_count(lam: Partition3, n: int) -> int:
    """Count semistandard tableaux of shape ``lam`` with entries in 1..n.

    Brute-force enumeration used as an oracle for ``dim3``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    rows = [x for x in lam.parts if x > 0]
    return _count_rows(tuple(rows), n)


def _weak_rows(length: int, lower: tuple[int, ...], n: int) -> Iterator[tuple[int, ...]]:
    # weakly increasing rows whose entries exceed the entry above (lower[i])
    def rec(i: int, prev: int, acc: tuple[int, ...]):
        if i == length:
            yield acc
            return
        for v in range(max(prev, lower[i] + 1), n + 1):
            yield from rec(i + 1, v, acc + (v,))

    yield from rec(0, 1, ())


def _count_rows(rows: tuple[int, ...], n: int) -> int:
    def rec(idx: int, above: tuple[int, ...]) -> int:
        if idx == len(rows):
            return 1
        lower = above[: rows[idx]]
        return sum(rec(idx + 1, row) for row in _weak_rows(rows[idx], lower, n))

    if not rows:
        return 1
    return rec(0, (0,) * rows[0])


@lru_cache(maxsize=None)
def pieri(lam: Partition3, s: int) -> tuple[Partition3, ...]:
    """Partitions obtained from ``lam`` by adding a horizontal strip of ``s`` boxes.

    At most three rows are kept. The result is sorted lexicographically
    descending and is multiplicity-free.
    """
    if s < 0:
        raise ValueError("s must be nonnegative")
    a, b, c = lam.parts
    out = []
    # interlacing: nu1 >= a >= nu2 >= b >= nu3 >= c
    for nu2 in range(b, a + 1):
        for nu3 in range(c, b + 1):
            nu1 = a + b + c + s - nu2 - nu3
            if nu1 >= a:
                out.append(Partition3(nu1, nu2, nu3))
    return tuple(sorted(out, reverse=True))


def dual(lam: Partition3) -> Partition3:
    """The partition of the dual module (S^λ V)^∨."""
    a, b, c = lam.parts
    return Partition3(a - c, a - b, 0)


def hom_dim(source: TwistedSchur, target: TwistedSchur) -> int:
    """Dimension (0 or 1) of SL(3)-invariant bundle maps source -> target."""
    s = target.twist - source.twist
    if s < 0:
        return 0
    goal = target.partition.reduced()
    return int(any(nu.reduced() == goal for nu in pieri(source.partition, s)))


def clebsch_gordan(l: int, t: int, m: int, r: int) -> list[QTensorTerm]:
    """Decompose S^l Q(t) ⊗ S^m Q(r) into irreducible S^j Q(u)."""
    if l < m:
        l, t, m, r = m, r, l, t
    return [QTensorTerm(l + m - 2 * j, t + r + j) for j in range(m + 1)]
