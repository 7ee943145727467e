"""Desk-scale ground truth for the feasibility checks.

Finite weighted point sets stand in for the distribution: their moments are
exact sums, the non-negative quadratic form can be evaluated directly, and a
symmetric sigma-point set reproduces any feasible moment pair exactly.

Random cases come from numpy's PCG64 bit generator (PCG-XSL-RR 128/64,
O'Neill 2014) seeded with the caller's integer, which numpy documents as
stable across platforms and releases.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from momentgate import kernels
from momentgate.core import DEFAULT_TOLERANCES, MomentSet, ToleranceConfig, classify
from momentgate.errors import InvalidInput

POSITION_RANGE = 10.0


@dataclass(frozen=True, eq=False)
class DiscreteDistribution:
    weights: np.ndarray
    positions: np.ndarray

    def __post_init__(self):
        w = np.array(self.weights, dtype=np.float64).reshape(-1)
        x = np.array(self.positions, dtype=np.float64)
        if x.ndim == 1:
            x = x.reshape(-1, 1)
        if x.shape[0] != w.shape[0] or w.shape[0] == 0:
            raise InvalidInput(f"{w.shape[0]} weights for {x.shape[0]} positions")
        if np.any(w < 0):
            raise InvalidInput("weights must be non-negative")
        if abs(math.fsum(w) - 1.0) > 1e-12:
            raise InvalidInput(f"weights sum to {math.fsum(w)!r}, expected 1")
        w.setflags(write=False)
        x.setflags(write=False)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "positions", x)

    @property
    def n(self) -> int:
        return self.positions.shape[1]

    @property
    def atoms(self) -> list[tuple[float, np.ndarray]]:
        return list(zip(self.weights.tolist(), self.positions))


def rng_for(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def random_distribution(seed: int, n: int, k: int) -> DiscreteDistribution:
    """``k`` atoms uniform in ``[-10, 10]**n`` with normalized uniform weights."""
    if n < 1 or k < 1:
        raise InvalidInput("need n >= 1 and k >= 1")
    rng = rng_for(seed)
    positions = rng.uniform(-POSITION_RANGE, POSITION_RANGE, size=(k, n))
    raw = rng.uniform(0.0, 1.0, size=k)
    weights = raw / raw.sum()
    # fold the rounding residue into the heaviest atom so the sum is 1 to ~1 ulp
    weights[np.argmax(weights)] += 1.0 - math.fsum(weights)
    return DiscreteDistribution(weights, positions)


def moments_of(d: DiscreteDistribution) -> MomentSet:
    w = d.weights
    x = d.positions
    mean = np.array([math.fsum(w * x[:, i]) for i in range(d.n)])
    second = np.empty((d.n, d.n))
    for i in range(d.n):
        for j in range(i, d.n):
            second[i, j] = second[j, i] = math.fsum(w * x[:, i] * x[:, j])
    return MomentSet(mean, second)


def quadratic_form(d: DiscreteDistribution, alpha) -> float:
    """Average of ``(alpha_0 + alpha_1 x_1 + ... + alpha_n x_n)**2`` over the atoms."""
    alpha = np.asarray(alpha, dtype=np.float64).reshape(-1)
    if alpha.shape[0] != d.n + 1:
        raise InvalidInput(f"alpha has length {alpha.shape[0]}, expected {d.n + 1}")
    lin = alpha[0] + d.positions @ alpha[1:]
    return math.fsum(d.weights * lin * lin)


def construct_witness(m: MomentSet, tol: ToleranceConfig = DEFAULT_TOLERANCES) -> DiscreteDistribution:
    """2n equally weighted atoms at ``mean +- sqrt(n * lambda_i) e_i`` of the covariance."""
    report = classify(m, tol)
    if not report.feasible:
        raise InvalidInput(f"moments are not realizable ({report.status.value})")
    n = m.n
    cov = m.second - np.outer(m.mean, m.mean)
    lam, vecs = np.linalg.eigh(0.5 * (cov + cov.T))
    lam = np.clip(lam, 0.0, None)
    offsets = vecs * np.sqrt(n * lam)
    positions = np.concatenate([m.mean + offsets.T, m.mean - offsets.T])
    weights = np.full(2 * n, 1.0 / (2 * n))
    return DiscreteDistribution(weights, positions)


def _golden_refine(fun, center: float, half_width: float) -> float:
    res = optimize.minimize_scalar(
        fun,
        bracket=(center - half_width, center, center + half_width),
        method="golden",
        tol=1e-14,
    )
    return float(res.x)


def brute_force_nearest(semiaxes, com, resolution: int = 10**6) -> np.ndarray:
    """Closest boundary point by dense parametric scan plus local refinement.

    2D: ``resolution`` angles, then golden-section search. 3D: a square grid
    of about ``resolution`` samples, then Nelder-Mead on the two angles.
    The scan alone is accurate to O((perimeter / resolution)**2) in distance.
    """
    s = np.asarray(list(semiaxes), dtype=np.float64).reshape(-1)
    p = np.asarray(com, dtype=np.float64).reshape(-1)
    if s.shape != p.shape or s.shape[0] not in (2, 3):
        raise InvalidInput("brute_force_nearest supports 2D or 3D points matching the semiaxes")
    if resolution < 10**4:
        raise InvalidInput("resolution must be at least 1e4")

    if s.shape[0] == 2:
        a, b = s

        def dist2(t):
            return (a * math.cos(t) - p[0]) ** 2 + (b * math.sin(t) - p[1]) ** 2

        t0 = kernels.ellipse_scan(float(a), float(b), float(p[0]), float(p[1]), int(resolution))
        t = _golden_refine(dist2, t0, 2.0 * math.pi / resolution)
        return np.array([a * math.cos(t), b * math.sin(t)])

    a, b, c = s

    def point(tf):
        t, f = tf
        return np.array([a * math.sin(f) * math.cos(t), b * math.sin(f) * math.sin(t), c * math.cos(f)])

    def dist2_3d(tf):
        d = point(tf) - p
        return float(d @ d)

    side = max(int(math.isqrt(int(resolution))), 100)
    t0, f0 = kernels.ellipsoid_scan(
        float(a), float(b), float(c), float(p[0]), float(p[1]), float(p[2]), side, side
    )
    h = 2.0 * math.pi / side
    simplex = np.array([[t0, f0], [t0 + h, f0], [t0, f0 + h]])
    res = optimize.minimize(
        dist2_3d,
        simplex[0],
        method="Nelder-Mead",
        options={"xatol": 1e-13, "fatol": 1e-18, "maxiter": 20000, "initial_simplex": simplex},
    )
    best = res.x if res.fun <= dist2_3d((t0, f0)) else (t0, f0)
    return point(best)
