"""Admissible centers for given second moments.

A normalized non-negative distribution with second-moment matrix ``S`` (about
the origin) has its center inside or on the ellipsoid whose principal axes are
the eigenvectors of ``S`` and whose semiaxes are the square roots of the
eigenvalues. Equivalently, the bordered matrix ``[[1, m^T], [m, S]]`` is
positive semidefinite. When ``S`` is singular, the center has no component
along the null directions and the ellipsoid lives in the remaining subspace.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from momentgate import kernels
from momentgate.errors import InvalidInput, NumericalFailure

MAX_DIMENSION = 64
SYMMETRY_TOL = 1e-12


@dataclass(frozen=True)
class ToleranceConfig:
    """Thresholds shared by every check.

    ``eig_rel_tol`` scales the zero threshold for second-moment eigenvalues
    (``eig_rel_tol * max(|lambda|_max, 1)``); ``boundary_tol`` is the absolute
    band around margin 0 reported as Boundary.
    """

    eig_rel_tol: float = 1e-10
    boundary_tol: float = 1e-9
    max_dimension: int = MAX_DIMENSION
    max_sweeps: int = 64

    def __post_init__(self):
        for name in ("eig_rel_tol", "boundary_tol"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise InvalidInput(f"{name} must be positive, got {value!r}")
        if self.max_dimension < 1:
            raise InvalidInput("max_dimension must be at least 1")


DEFAULT_TOLERANCES = ToleranceConfig()


class Status(str, enum.Enum):
    STRICT_INTERIOR = "strict_interior"
    BOUNDARY = "boundary"
    INFEASIBLE_CENTER = "infeasible_center"
    INVALID_SECOND_MOMENTS = "invalid_second_moments"

    @property
    def feasible(self) -> bool:
        return self in (Status.STRICT_INTERIOR, Status.BOUNDARY)


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class MomentSet:
    """First moments ``mean`` and second moments ``second`` about the origin.

    ``second`` is symmetrized on construction; asymmetry beyond
    ``1e-12 * max(1, max|S|)`` is rejected.
    """

    mean: np.ndarray
    second: np.ndarray
    max_dimension: int = field(default=MAX_DIMENSION, repr=False)

    def __post_init__(self):
        mean = np.array(self.mean, dtype=np.float64, ndmin=1)
        second = np.array(self.second, dtype=np.float64, ndmin=2)
        if mean.ndim != 1:
            raise InvalidInput(f"mean must be a vector, got shape {mean.shape}")
        n = mean.shape[0]
        if n < 1:
            raise InvalidInput("dimension must be at least 1")
        if n > self.max_dimension:
            raise InvalidInput(f"dimension {n} exceeds the supported maximum {self.max_dimension}")
        if second.shape != (n, n):
            raise InvalidInput(f"second must be {n}x{n} to match mean, got shape {second.shape}")
        if not (np.all(np.isfinite(mean)) and np.all(np.isfinite(second))):
            raise InvalidInput("moments must be finite")
        asym = float(np.max(np.abs(second - second.T)))
        if asym > SYMMETRY_TOL * max(1.0, float(np.max(np.abs(second)))):
            raise InvalidInput(f"second-moment matrix is not symmetric (max asymmetry {asym:.3g})")
        second = 0.5 * (second + second.T)
        object.__setattr__(self, "mean", _frozen(mean))
        object.__setattr__(self, "second", _frozen(second))

    @property
    def n(self) -> int:
        return self.mean.shape[0]


@dataclass(frozen=True, eq=False)
class AugmentedMatrix:
    """The bordered ``(n+1) x (n+1)`` matrix ``[[1, mean^T], [mean, second]]``."""

    a: np.ndarray

    @property
    def n(self) -> int:
        return self.a.shape[0] - 1


@dataclass(frozen=True, eq=False)
class PrincipalFrame:
    eigenvalues: np.ndarray
    rotation: np.ndarray
    mean_principal: np.ndarray
    sweeps: int = 0


@dataclass(frozen=True)
class FeasibilityReport:
    """Outcome of :func:`classify`.

    ``margin`` is ``1 - sum(ratio)`` over the nonsingular principal
    directions, None for invalid second moments. ``null_violations`` lists
    ``(direction index, |mean component|)`` for singular directions the
    center leaves.
    """

    status: Status
    margin: float | None
    axis_ratios: tuple[float, ...]
    null_violations: tuple[tuple[int, float], ...]
    semiaxes: tuple[float, ...]
    frame: PrincipalFrame | None = field(default=None, repr=False, compare=False)

    @property
    def feasible(self) -> bool:
        return self.status.feasible


def _bordered(mean: np.ndarray, second: np.ndarray) -> np.ndarray:
    n = mean.shape[0]
    a = np.empty((n + 1, n + 1), dtype=np.float64)
    a[0, 0] = 1.0
    a[0, 1:] = mean
    a[1:, 0] = mean
    a[1:, 1:] = second
    return a


def augmented_matrix(m: MomentSet) -> AugmentedMatrix:
    if not isinstance(m, MomentSet):
        raise InvalidInput("augmented_matrix expects a MomentSet")
    return AugmentedMatrix(_frozen(_bordered(m.mean, m.second)))


def symmetric_eigen(matrix, max_sweeps: int = 64) -> tuple[np.ndarray, np.ndarray, int]:
    """Eigen-decomposition with a reproducible layout.

    Eigenvalues come back descending. Each eigenvector column is flipped so
    its first largest-magnitude component is non-negative, except the last
    column, whose sign is chosen to make the determinant +1.
    """
    w, v, sweeps, converged = kernels.jacobi_eigh(matrix, max_sweeps)
    if not converged:
        raise NumericalFailure(f"Jacobi iteration did not converge within {max_sweeps} sweeps")
    order = np.argsort(-w, kind="stable")
    w = w[order]
    v = v[:, order]
    n = w.shape[0]
    for j in range(n - 1):
        col = v[:, j]
        mags = np.abs(col)
        lead = int(np.argmax(mags >= mags.max() * (1.0 - 1e-10)))
        if col[lead] < 0:
            v[:, j] = -col
    if n and np.linalg.det(v) < 0:
        v[:, n - 1] = -v[:, n - 1]
    return w, v, sweeps


def principal_frame(m: MomentSet, max_sweeps: int = 64) -> PrincipalFrame:
    w, v, sweeps = symmetric_eigen(m.second, max_sweeps)
    xi = v.T @ m.mean
    return PrincipalFrame(_frozen(w), _frozen(v), _frozen(xi), sweeps)


def eigen_threshold(eigenvalues, tol: ToleranceConfig = DEFAULT_TOLERANCES) -> float:
    """Magnitude below which a second-moment eigenvalue counts as zero."""
    largest = float(np.max(np.abs(eigenvalues))) if len(eigenvalues) else 0.0
    return tol.eig_rel_tol * max(largest, 1.0)


def classify(m: MomentSet, tol: ToleranceConfig = DEFAULT_TOLERANCES) -> FeasibilityReport:
    frame = principal_frame(m, tol.max_sweeps)
    lam = frame.eigenvalues
    tau = eigen_threshold(lam, tol)
    if lam[-1] < -tau:
        semi = tuple(math.sqrt(max(x, 0.0)) for x in lam)
        return FeasibilityReport(Status.INVALID_SECOND_MOMENTS, None, (), (), semi, frame)

    # eigenvalue <= tau => singular; a feasible center then has xi**2 <= lambda <= tau
    null_limit = math.sqrt(tau)
    ratios = []
    violations = []
    semi = []
    for i, (li, xi) in enumerate(zip(lam, frame.mean_principal)):
        if li > tau:
            ratios.append(float(xi * xi / li))
            semi.append(math.sqrt(li))
        else:
            semi.append(0.0)
            if abs(xi) > null_limit:
                violations.append((i, float(abs(xi))))
    margin = 1.0 - math.fsum(ratios)

    if violations or margin < -tol.boundary_tol:
        status = Status.INFEASIBLE_CENTER
    elif margin > tol.boundary_tol:
        status = Status.STRICT_INTERIOR
    else:
        status = Status.BOUNDARY
    return FeasibilityReport(status, margin, tuple(ratios), tuple(violations), tuple(semi), frame)


def _cofactor_det(a: list[list[float]]) -> float:
    n = len(a)
    if n == 1:
        return a[0][0]
    if n == 2:
        return a[0][0] * a[1][1] - a[0][1] * a[1][0]
    total = 0.0
    for j in range(n):
        if a[0][j] == 0.0:
            continue
        minor = [row[:j] + row[j + 1 :] for row in a[1:]]
        sign = -1.0 if j % 2 else 1.0
        total += sign * a[0][j] * _cofactor_det(minor)
    return total


def surface_residual(m: MomentSet, x) -> float:
    """Determinant of the bordered matrix with ``x`` in place of the mean.

    Zero exactly on the admissible ellipsoid; for nonsingular ``S`` it equals
    ``det(S) * (1 - x^T S^-1 x)``.
    """
    x = np.asarray(x, dtype=np.float64).reshape(-1)
    if x.shape[0] != m.n:
        raise InvalidInput(f"point has length {x.shape[0]}, expected {m.n}")
    a = _bordered(x, m.second)
    if m.n <= 3:
        return float(_cofactor_det(a.tolist()))
    return float(kernels.lu_det(a))


def cuboid_check(m: MomentSet, tol: ToleranceConfig = DEFAULT_TOLERANCES) -> tuple[bool, ...]:
    """Per principal axis, whether the center lies within the tangent box.

    This is the single-variable bound ``mean_i**2 <= second_ii`` taken in the
    principal frame, strictly weaker than the ellipsoid condition.
    """
    frame = principal_frame(m, tol.max_sweeps)
    tau = eigen_threshold(frame.eigenvalues, tol)
    out = []
    for li, xi in zip(frame.eigenvalues, frame.mean_principal):
        li = max(float(li), 0.0) if li > -tau else float(li)
        out.append(bool(xi * xi <= li * (1.0 + tol.boundary_tol) + tau))
    return tuple(out)


def half_integer_gamma(two_z: int) -> float:
    """Gamma(two_z / 2) by the recursion Gamma(z + 1) = z Gamma(z)."""
    if int(two_z) != two_z or two_z < 1:
        raise InvalidInput(f"two_z must be a positive integer, got {two_z!r}")
    two_z = int(two_z)
    if two_z % 2 == 0:
        g, z = 1.0, 1.0
    else:
        g, z = math.sqrt(math.pi), 0.5
    while 2 * z < two_z:
        g *= z
        z += 1.0
    return g


def volume_ratio(n: int) -> float:
    """Volume of the admissible ellipsoid over that of its tangent box in n dimensions."""
    if int(n) != n or n < 1:
        raise InvalidInput(f"dimension must be a positive integer, got {n!r}")
    n = int(n)
    return (math.sqrt(math.pi) / 2.0) ** n / half_integer_gamma(n + 2)
