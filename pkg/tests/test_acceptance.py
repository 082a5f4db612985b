"""Acceptance criteria: exhaustive exact sweeps, each under a wall-clock limit.

Run under pytest for one PASS/FAIL line per criterion in the terminal
summary, or directly with ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import sys
import time
from dataclasses import dataclass
from typing import Callable

import pytest

from p2bundles.verify import (
    SweepResult,
    sweep_closed_form,
    sweep_cross_classify,
    sweep_dimensions,
    sweep_four_terms,
    sweep_pieri,
    sweep_rectangle_cases,
    sweep_rectangles,
    sweep_regstair_facts,
    sweep_regular_not_completely,
    sweep_segments,
    sweep_sltensor,
    sweep_stable,
    sweep_third_form,
    sweep_witness,
)


@dataclass(frozen=True)
class Criterion:
    number: int
    title: str
    limit: float
    sweeps: tuple[Callable[[], SweepResult], ...]
    known_red: str | None = None


CRITERIA = [
    Criterion(1, "dimension formula matches tableau count, parts <= 8", 1, (lambda: sweep_dimensions(8),)),
    Criterion(2, "Pieri is multiplicity-free and dimension-additive, parts, s <= 6", 1, (lambda: sweep_pieri(6, 6),)),
    Criterion(3, "Schur rectangles: vertex count and rank sum, p <= 8", 1, (lambda: sweep_rectangles(8),)),
    Criterion(4, "rectangle closed form equals the vertex sum, h, k, l, |t| <= 6", 5, (lambda: sweep_closed_form(6),)),
    Criterion(5, "segment and four rectangle inequalities, sides <= 6", 10,
              (lambda: sweep_segments(6), lambda: sweep_rectangle_cases(6))),
    Criterion(6, "kernel and cokernel supports of S^{p,q}V -> S^{p,q+s}V(s), p + s <= 8", 5, (lambda: sweep_four_terms(8),)),
    Criterion(7, "cokernel rectangles of S^{p,q}V(-s) -> S^{p+s,q}V are multistable, p <= 4, s <= 3", 30,
              (lambda: sweep_stable(4, 3),)),
    Criterion(8, "step slopes and sticking-out parts of regular staircases, h, k <= 6, <= 4 steps", 30,
              (lambda: sweep_regstair_facts(6, 4),),
              known_red="hook-shaped regular staircases near l = 0 have a bottom row of larger slope"),
    Criterion(9, "tensor-family staircases: completely regular ones multistable not stable, others stable, l, q <= 5", 10,
              (lambda: sweep_sltensor(5), lambda: sweep_regular_not_completely(5)),
              known_red="the only regular non-completely-regular shapes are S^{q,q}V(t) = O(t) ⊗ S^{q,q}V, never stable"),
    Criterion(10, "third-form multistability iff p <= 2q, matching the boundary sign, q <= p <= 8", 30,
              (lambda: sweep_third_form(8),)),
    Criterion(11, "general classifier agrees with the uniform-twist and twist-one classifiers", 60,
              (lambda: sweep_cross_classify(4, 3, 6),)),
    Criterion(12, "constructive witness valid and rank/c1 additive on 500 random shapes", 10,
              (lambda: sweep_witness(500),)),
]

# number -> (passed, one-line message); read by the terminal summary hook
RESULTS: dict[int, tuple[bool, str]] = {}


def evaluate(c: Criterion) -> tuple[bool, str]:
    start = time.perf_counter()
    results = [run() for run in c.sweeps]
    elapsed = time.perf_counter() - start
    cases = sum(r.cases for r in results)
    bad = sum(len(r.failures) for r in results)
    in_time = elapsed < c.limit
    ok = bad == 0 and in_time
    detail = f"{cases} cases, {bad} failing, {elapsed:.2f}s of {c.limit:g}s"
    if bad:
        detail += f"; first: {next(f for r in results for f in r.failures)}"
    if not in_time:
        detail += "; over time limit"
    line = f"criterion {c.number:>2} {'PASS' if ok else 'FAIL'}: {c.title} ({detail})"
    RESULTS[c.number] = (ok, line)
    return ok, line


def _param(c: Criterion):
    marks = [pytest.mark.xfail(strict=True, reason=c.known_red)] if c.known_red else []
    return pytest.param(c, id=f"criterion-{c.number:02d}", marks=marks)


@pytest.mark.acceptance
@pytest.mark.parametrize("criterion", [_param(c) for c in CRITERIA])
def test_criterion(criterion: Criterion):
    ok, line = evaluate(criterion)
    assert ok, line


def main() -> int:
    failed = 0
    for c in CRITERIA:
        ok, line = evaluate(c)
        print(line + (f" [known: {c.known_red}]" if c.known_red and not ok else ""))
        failed += not ok
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
