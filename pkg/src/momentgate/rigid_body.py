"""Rigid-body inertial parameters as moment data.

For a body of mass ``M`` with inertia tensor ``J`` about a reference point,
the per-unit-mass second-moment matrix about that point is
``((tr J / 2) I - J) / M``. In the principal frame its diagonal is
``(B + C - A, C + A - B, A + B - C) / 2M``, so the triangle inequalities are
exactly positive semidefiniteness, and the center of mass must lie in the
ellipsoid with those squared semiaxes.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from momentgate.core import (
    DEFAULT_TOLERANCES,
    FeasibilityReport,
    MomentSet,
    ToleranceConfig,
    classify,
    eigen_threshold,
    symmetric_eigen,
)
from momentgate.errors import InfeasibleInertia, InvalidInput


class Frame(str, enum.Enum):
    """Point the inertia tensor is taken about."""

    ABOUT_REFERENCE_POINT = "reference_point"
    ABOUT_CENTER_OF_MASS = "center_of_mass"


class Triangle(str, enum.Enum):
    VALID = "valid"
    DEGENERATE = "degenerate"
    INVALID = "invalid"


@dataclass(frozen=True, eq=False)
class RigidBodyParams:
    mass: float
    inertia: np.ndarray
    com: np.ndarray
    frame: Frame = Frame.ABOUT_REFERENCE_POINT

    def __post_init__(self):
        mass = float(self.mass)
        if not (math.isfinite(mass) and mass > 0):
            raise InvalidInput(f"mass must be positive, got {self.mass!r}")
        inertia = np.array(self.inertia, dtype=np.float64)
        com = np.array(self.com, dtype=np.float64).reshape(-1)
        if inertia.shape != (3, 3):
            raise InvalidInput(f"inertia must be 3x3, got shape {inertia.shape}")
        if com.shape != (3,):
            raise InvalidInput(f"com must be a 3-vector, got shape {com.shape}")
        if not (np.all(np.isfinite(inertia)) and np.all(np.isfinite(com))):
            raise InvalidInput("inertia and com must be finite")
        asym = float(np.max(np.abs(inertia - inertia.T)))
        if asym > 1e-12 * max(1.0, float(np.max(np.abs(inertia)))):
            raise InvalidInput(f"inertia tensor is not symmetric (max asymmetry {asym:.3g})")
        inertia = 0.5 * (inertia + inertia.T)
        inertia.setflags(write=False)
        com.setflags(write=False)
        object.__setattr__(self, "mass", mass)
        object.__setattr__(self, "inertia", inertia)
        object.__setattr__(self, "com", com)
        object.__setattr__(self, "frame", Frame(self.frame))


@dataclass(frozen=True)
class SemiAxes:
    """Semiaxes (m) of the admissible center-of-mass ellipsoid."""

    a: float
    b: float
    c: float

    def __post_init__(self):
        for name in ("a", "b", "c"):
            value = getattr(self, name)
            if not (value >= 0 and math.isfinite(value)):
                raise InvalidInput(f"semiaxis {name} must be a non-negative real, got {value!r}")

    @classmethod
    def from_radicands(cls, a2: float, b2: float, c2: float) -> SemiAxes:
        for r in (a2, b2, c2):
            if r < 0:
                raise InvalidInput(f"negative radicand {r!r}")
        return cls(math.sqrt(a2), math.sqrt(b2), math.sqrt(c2))

    def __iter__(self):
        return iter((self.a, self.b, self.c))


def _triangle_tol(A: float, B: float, C: float) -> float:
    return 1e-12 * max(A, B, C, 1.0)


def triangle_check(A: float, B: float, C: float) -> Triangle:
    """Classify principal moments by the triangle inequalities."""
    if not all(math.isfinite(v) for v in (A, B, C)):
        raise InvalidInput("principal moments must be finite")
    tau = _triangle_tol(A, B, C)
    if min(A, B, C) < -tau:
        raise InvalidInput(f"negative principal moment in {(A, B, C)}")
    d = (B + C - A, C + A - B, A + B - C)
    if all(x > tau for x in d):
        return Triangle.VALID
    if all(x >= -tau for x in d):
        return Triangle.DEGENERATE
    return Triangle.INVALID


def semiaxes(A: float, B: float, C: float, M: float) -> SemiAxes:
    if not M > 0:
        raise InvalidInput(f"mass must be positive, got {M!r}")
    if triangle_check(A, B, C) is Triangle.INVALID:
        raise InfeasibleInertia(f"principal moments {(A, B, C)} violate the triangle inequalities")
    d = (B + C - A, C + A - B, A + B - C)
    return SemiAxes.from_radicands(*(max(x, 0.0) / (2.0 * M) for x in d))


def principal_moments(inertia) -> tuple[float, float, float]:
    """Eigenvalues of an inertia tensor, ascending."""
    w, _, _ = symmetric_eigen(np.asarray(inertia, dtype=np.float64))
    return tuple(float(x) for x in w[::-1])


def second_moments_per_mass(inertia) -> np.ndarray:
    """``(tr J / 2) I - J``: mass-weighted second moments about the reference point."""
    J = np.asarray(inertia, dtype=np.float64)
    return 0.5 * np.trace(J) * np.eye(3) - J


def _moment_set(p: RigidBodyParams) -> MomentSet:
    mean = p.com if p.frame is Frame.ABOUT_REFERENCE_POINT else np.zeros(3)
    return MomentSet(mean, second_moments_per_mass(p.inertia) / p.mass)


def inertia_to_moment_set(p: RigidBodyParams, tol: ToleranceConfig = DEFAULT_TOLERANCES) -> MomentSet:
    if p.frame is not Frame.ABOUT_REFERENCE_POINT:
        raise InvalidInput("inertia_to_moment_set needs the tensor about the reference point")
    m = _moment_set(p)
    w, _, _ = symmetric_eigen(m.second, tol.max_sweeps)
    if w[-1] < -eigen_threshold(w, tol):
        raise InfeasibleInertia(
            f"inertia tensor violates the triangle inequalities (second-moment eigenvalue {w[-1]:.6g})"
        )
    return m


def com_feasibility(p: RigidBodyParams, tol: ToleranceConfig = DEFAULT_TOLERANCES) -> FeasibilityReport:
    """Check the center of mass against the admissible ellipsoid.

    About the center of mass the center is the origin, so only tensor
    validity is informative: the report is StrictInterior for a valid or
    degenerate tensor and InvalidSecondMoments otherwise.
    """
    return classify(_moment_set(p), tol)


def parallel_axis(inertia_about_com, M: float, r) -> np.ndarray:
    """Inertia about the point at ``-r`` from the center of mass (so the COM sits at ``r``)."""
    if not M > 0:
        raise InvalidInput(f"mass must be positive, got {M!r}")
    J = np.asarray(inertia_about_com, dtype=np.float64)
    r = np.asarray(r, dtype=np.float64).reshape(3)
    return J + M * (float(r @ r) * np.eye(3) - np.outer(r, r))


def parallel_axis_to_com(inertia_about_ref, M: float, r) -> np.ndarray:
    """Inverse of :func:`parallel_axis`: recover the tensor about the center of mass."""
    if not M > 0:
        raise InvalidInput(f"mass must be positive, got {M!r}")
    J = np.asarray(inertia_about_ref, dtype=np.float64)
    r = np.asarray(r, dtype=np.float64).reshape(3)
    return J - M * (float(r @ r) * np.eye(3) - np.outer(r, r))
