"""Minimal modifications that bring an infeasible center of mass back inside.

Only the mass or the center are ever changed; the inertia tensor is taken as
given. The mass repair follows directly from the fact that the squared
semiaxes scale as ``1 / M``. The two geometric repairs (radial scaling to the
boundary, Euclidean projection onto the ellipsoid) are extrapolations offered
for convenience.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from momentgate import kernels
from momentgate.core import DEFAULT_TOLERANCES, FeasibilityReport, Status, ToleranceConfig, eigen_threshold
from momentgate.errors import InfeasibleInertia, InvalidInput, NoRepair, NumericalFailure
from momentgate.rigid_body import Frame, RigidBodyParams, Triangle, _triangle_tol, triangle_check

SECULAR_TOL = 1e-12
SECULAR_MAX_ITER = 100


@dataclass(frozen=True)
class RepairSuggestion:
    """Repairs for an infeasible body; None where a repair does not apply."""

    max_mass: float | None = None
    boundary_com: tuple[float, ...] | None = None
    nearest_com: tuple[float, ...] | None = None
    original_margin: float | None = None


def _is_zero(x: float, scale: float) -> bool:
    return abs(x) <= 1e-12 * max(1.0, scale)


def max_feasible_mass(A: float, B: float, C: float, com) -> float:
    """Largest mass for which ``com`` (in the principal frame) is admissible.

    Returns ``math.inf`` for a centered body. At exactly this mass the center
    sits on the boundary.
    """
    com = np.asarray(com, dtype=np.float64).reshape(3)
    if triangle_check(A, B, C) is Triangle.INVALID:
        raise InfeasibleInertia(f"principal moments {(A, B, C)} violate the triangle inequalities")
    tau = _triangle_tol(A, B, C)
    d = (B + C - A, C + A - B, A + B - C)
    scale = float(np.max(np.abs(com)))
    acc = 0.0
    for i, (ci, di) in enumerate(zip(com, d)):
        if _is_zero(ci, scale):
            continue
        if di <= tau:
            raise NoRepair(f"center component {ci:g} along degenerate principal axis {i}")
        acc += ci * ci / di
    if acc == 0.0:
        return math.inf
    return 1.0 / (2.0 * acc)


def _split(semiaxes, com):
    s = np.asarray(list(semiaxes), dtype=np.float64).reshape(-1)
    x = np.asarray(com, dtype=np.float64).reshape(-1)
    if s.shape != x.shape:
        raise InvalidInput(f"semiaxes and point differ in length ({s.shape[0]} vs {x.shape[0]})")
    if np.any(s < 0):
        raise InvalidInput("semiaxes must be non-negative")
    return s, x, s > 0


def _ellipsoid_level(s, x, live) -> float:
    return float(np.sum((x[live] / s[live]) ** 2))


def scale_com_to_boundary(semiaxes, com) -> np.ndarray:
    """Scale ``com`` along its own direction onto the ellipsoid surface."""
    s, x, live = _split(semiaxes, com)
    scale = float(np.max(np.abs(x))) if x.size else 0.0
    if scale == 0.0:
        raise InvalidInput("center is at the origin; there is no direction to scale along")
    if any(not _is_zero(v, scale) for v in x[~live]):
        raise InvalidInput("center has components along zero-length semiaxes; project them out first")
    level = _ellipsoid_level(s, x, live)
    out = np.where(live, x, 0.0)
    return out / math.sqrt(level)


def nearest_com_on_ellipsoid(semiaxes, com) -> np.ndarray:
    """Euclidean projection of an exterior point onto the ellipsoid.

    Components along zero-length semiaxes are dropped first; if what remains
    already lies inside the flattened ellipsoid it is returned as is. Otherwise
    the multiplier ``lam > 0`` solves the secular equation
    ``sum(s**2 x**2 / (s**2 + lam)**2) = 1`` and the answer is
    ``s**2 x / (s**2 + lam)``.
    """
    s, x, live = _split(semiaxes, com)
    if not np.any(live):
        return np.zeros_like(x)
    xs = np.where(live, x, 0.0)
    level = _ellipsoid_level(s, xs, live)
    if level <= 1.0:
        if np.all(live) and level < 1.0:
            raise InvalidInput("point is strictly inside the ellipsoid; nothing to project")
        return xs
    s2 = s[live] ** 2
    p = xs[live]
    hi = float(np.max(s[live])) * float(np.linalg.norm(p))
    lam, f, _, ok = kernels.secular_root(s2, p, 0.0, hi, SECULAR_TOL, SECULAR_MAX_ITER)
    if not ok:
        raise NumericalFailure(
            f"secular iteration stalled at lambda={lam!r} (f={f:.3g}) in bracket [0, {hi!r}]"
        )
    out = np.zeros_like(x)
    out[live] = s2 * p / (s2 + lam)
    return out


def suggest_repairs(
    p: RigidBodyParams, report: FeasibilityReport, tol: ToleranceConfig = DEFAULT_TOLERANCES
) -> RepairSuggestion:
    """Collect every applicable repair for the body behind ``report``.

    Works in the principal frame of the second moments, so arbitrary
    (non-diagonal) tensors are handled. The mass repair uses the fact that
    every axis ratio scales linearly with the mass.
    """
    if report.status is not Status.INFEASIBLE_CENTER or p.frame is not Frame.ABOUT_REFERENCE_POINT:
        return RepairSuggestion(original_margin=report.margin)
    frame = report.frame
    tau = eigen_threshold(frame.eigenvalues, tol)
    live = frame.eigenvalues > tau
    semi = np.where(live, np.sqrt(np.clip(frame.eigenvalues, 0.0, None)), 0.0)
    xi = np.asarray(frame.mean_principal, dtype=np.float64)

    max_mass = None
    if not report.null_violations:
        total = math.fsum(report.axis_ratios)
        if total > 0:
            max_mass = p.mass / total

    projected = np.where(live, xi, 0.0)
    boundary = nearest = None
    if np.any(projected != 0.0):
        if _ellipsoid_level(semi, projected, live) > 1.0:
            b = scale_com_to_boundary(semi, projected)
            q = nearest_com_on_ellipsoid(semi, projected)
        else:
            b = q = projected
        boundary = tuple(float(v) for v in frame.rotation @ b)
        nearest = tuple(float(v) for v in frame.rotation @ q)
    elif np.any(live):
        boundary = nearest = (0.0, 0.0, 0.0)
    return RepairSuggestion(max_mass, boundary, nearest, report.margin)
