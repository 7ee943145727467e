"""Reduced-count property suite behind ``momentgate selftest``."""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from momentgate.core import MomentSet, classify, surface_residual
from momentgate.oracle import (
    brute_force_nearest,
    construct_witness,
    moments_of,
    quadratic_form,
    random_distribution,
    rng_for,
)
from momentgate.repair import nearest_com_on_ellipsoid


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _case(seed: int):
    rng = rng_for(seed)
    n = int(rng.integers(1, 7))
    k = int(rng.integers(1, 13))
    return random_distribution(seed, n, k)


def forward_theorem(count: int) -> CheckResult:
    worst = math.inf
    for seed in range(count):
        r = classify(moments_of(_case(seed)))
        if not r.feasible or r.margin < -1e-9:
            return CheckResult("forward theorem", False, f"seed {seed}: {r.status.value} margin {r.margin}")
        worst = min(worst, r.margin)
    return CheckResult("forward theorem", True, f"{count} distributions, min margin {worst:.3g}")


def _infeasible_variant(m: MomentSet, rng) -> MomentSet:
    # push the mean outward until the margin is well below zero
    r = classify(m)
    ratio = 1.0 - r.margin
    if ratio <= 0 or r.null_violations:
        return m
    target = rng.uniform(1.05, 3.0)
    return MomentSet(m.mean * math.sqrt(target / ratio), m.second)


def schur_equivalence(count: int) -> CheckResult:
    rng = rng_for(10**6)
    for seed in range(count):
        d = random_distribution(seed, int(rng.integers(1, 7)), int(rng.integers(8, 13)))
        m = moments_of(d)
        if seed % 2:
            m = _infeasible_variant(m, rng)
        r = classify(m)
        a = np.block([[np.ones((1, 1)), m.mean[None, :]], [m.mean[:, None], m.second]])
        lam = np.linalg.eigvalsh(a)
        psd = lam[0] >= -1e-9 * max(1.0, lam[-1])
        if psd != r.feasible:
            return CheckResult("schur equivalence", False, f"seed {seed}: {r.status.value}, min eig {lam[0]:.3g}")
    return CheckResult("schur equivalence", True, f"{count} moment sets")


def determinant_identity(count: int) -> CheckResult:
    worst = 0.0
    for seed in range(count):
        d = random_distribution(seed, 1 + seed % 6, 12)
        m = moments_of(d)
        r = classify(m)
        if abs(r.margin) < 1e-3:
            continue
        expected = np.linalg.det(m.second) * r.margin
        got = surface_residual(m, m.mean)
        worst = max(worst, abs(got - expected) / abs(expected))
    ok = worst <= 1e-8
    return CheckResult("determinant identity", ok, f"max relative error {worst:.3g}")


def witness_round_trip(count: int) -> CheckResult:
    worst = 0.0
    for seed in range(count):
        m = moments_of(_case(seed))
        back = moments_of(construct_witness(m))
        err = max(float(np.max(np.abs(back.mean - m.mean))), float(np.max(np.abs(back.second - m.second))))
        worst = max(worst, err)
    return CheckResult("witness round trip", worst <= 1e-10, f"max entry error {worst:.3g}")


def quadratic_form_nonnegative(count: int) -> CheckResult:
    rng = rng_for(2**32)
    worst = math.inf
    for seed in range(count):
        d = _case(seed)
        alpha = rng.normal(size=d.n + 1)
        worst = min(worst, quadratic_form(d, alpha))
    return CheckResult("quadratic form non-negative", worst >= 0.0, f"min value {worst:.3g}")


def projection_oracle(count: int) -> CheckResult:
    rng = rng_for(7)
    worst = 0.0
    for _ in range(count):
        dim = int(rng.integers(2, 4))
        s = rng.uniform(0.2, 3.0, size=dim)
        x = rng.normal(size=dim)
        x *= rng.uniform(1.2, 4.0) / math.sqrt(np.sum((x / s) ** 2))
        worst = max(worst, float(np.linalg.norm(nearest_com_on_ellipsoid(s, x) - brute_force_nearest(s, x, 10**5))))
    return CheckResult("projection oracle", worst <= 1e-6, f"max distance {worst:.3g}")


CHECKS: list[tuple[Callable[[int], CheckResult], int]] = [
    (forward_theorem, 500),
    (schur_equivalence, 200),
    (determinant_identity, 200),
    (witness_round_trip, 200),
    (quadratic_form_nonnegative, 2000),
    (projection_oracle, 5),
]


def run_selftest(scale: float = 1.0) -> list[CheckResult]:
    return [check(max(1, int(count * scale))) for check, count in CHECKS]
