import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conftest import random_rotation
from momentgate.core import MomentSet, Status, classify, cuboid_check, surface_residual
from momentgate.ingest import JobKind, ValidationJob
from momentgate.oracle import moments_of, quadratic_form, random_distribution
from momentgate.report import emit_report, evaluate_job, parse_report_json
from momentgate.rigid_body import RigidBodyParams, parallel_axis, parallel_axis_to_com

seeds = st.integers(min_value=0, max_value=2**63 - 1)
dims = st.integers(min_value=1, max_value=6)
atoms = st.integers(min_value=1, max_value=12)


def moment_case(seed, n, k, stretch):
    """Moments of a random distribution with the mean pushed by ``stretch``."""
    m = moments_of(random_distribution(seed, n, k))
    return MomentSet(m.mean * stretch, m.second)


@settings(max_examples=300, deadline=None)
@given(seed=seeds, n=dims, k=atoms)
def test_distributions_are_feasible(seed, n, k):
    r = classify(moments_of(random_distribution(seed, n, k)))
    assert r.status in (Status.STRICT_INTERIOR, Status.BOUNDARY)
    assert r.margin >= -1e-9


@settings(max_examples=200, deadline=None)
@given(seed=seeds, n=dims, k=st.integers(8, 12), stretch=st.floats(0.0, 3.0), rot_seed=seeds)
def test_rotation_invariance(seed, n, k, stretch, rot_seed):
    m = moment_case(seed, n, k, stretch)
    R = random_rotation(np.random.default_rng(rot_seed), n)
    a = classify(m)
    b = classify(MomentSet(R @ m.mean, R @ m.second @ R.T))
    assume(abs(a.margin) > 1e-6)
    assert a.status is b.status
    assert b.margin == pytest.approx(a.margin, abs=1e-9)


@settings(max_examples=200, deadline=None)
@given(seed=seeds, n=dims, k=st.integers(8, 12), stretch=st.floats(0.0, 3.0), c=st.floats(1e-2, 1e2))
def test_scale_covariance(seed, n, k, stretch, c):
    m = moment_case(seed, n, k, stretch)
    a = classify(m)
    b = classify(MomentSet(c * m.mean, c * c * m.second))
    assume(abs(a.margin) > 1e-6)
    assert a.status is b.status
    assert b.margin == pytest.approx(a.margin, abs=1e-9)


@settings(max_examples=200, deadline=None)
@given(seed=seeds, n=dims, k=atoms, stretch=st.floats(0.0, 1.5))
def test_cuboid_dominance(seed, n, k, stretch):
    m = moment_case(seed, n, k, stretch)
    if classify(m).feasible:
        assert all(cuboid_check(m))


@settings(max_examples=200, deadline=None)
@given(seed=seeds, n=dims, k=st.integers(8, 12), stretch=st.floats(0.0, 3.0))
def test_determinant_identity(seed, n, k, stretch):
    m = moment_case(seed, n, k, stretch)
    r = classify(m)
    assume(abs(r.margin) > 1e-3)
    expected = np.linalg.det(m.second) * r.margin
    assert surface_residual(m, m.mean) == pytest.approx(expected, rel=1e-8)


@settings(max_examples=300, deadline=None)
@given(seed=seeds, n=dims, k=atoms, alpha=st.lists(st.floats(-1e3, 1e3), min_size=7, max_size=7))
def test_quadratic_form_non_negative(seed, n, k, alpha):
    d = random_distribution(seed, n, k)
    assert quadratic_form(d, alpha[: n + 1]) >= 0.0


finite = st.floats(-5.0, 5.0)


@settings(max_examples=200, deadline=None)
@given(
    diag=st.lists(st.floats(0.1, 10.0), min_size=3, max_size=3),
    mass=st.floats(0.1, 100.0),
    r=st.lists(finite, min_size=3, max_size=3),
    rot_seed=seeds,
)
def test_parallel_axis_round_trip(diag, mass, r, rot_seed):
    a, b, c = sorted(diag)
    assume(a + b > c)
    R = random_rotation(np.random.default_rng(rot_seed), 3)
    J = R @ np.diag([a, b, c]) @ R.T
    back = parallel_axis_to_com(parallel_axis(J, mass, r), mass, r)
    scale = max(1.0, mass * float(np.dot(r, r)))
    np.testing.assert_allclose(back, J, atol=1e-10 * scale)


@settings(max_examples=100, deadline=None)
@given(
    diag=st.lists(st.floats(0.0, 10.0), min_size=3, max_size=3),
    mass=st.floats(0.01, 1000.0),
    com=st.lists(finite, min_size=3, max_size=3),
    repair=st.booleans(),
)
def test_report_json_round_trip(diag, mass, com, repair):
    body = RigidBodyParams(mass, np.diag(diag), com)
    report = evaluate_job(ValidationJob(JobKind.RIGID_BODY, body, "h"), repair=repair)
    assert parse_report_json(emit_report(report, "json")) == report


@settings(max_examples=100, deadline=None)
@given(seed=seeds, n=dims, k=atoms, stretch=st.floats(0.0, 3.0))
def test_moment_report_round_trip(seed, n, k, stretch):
    m = moment_case(seed, n, k, stretch)
    report = evaluate_job(ValidationJob(JobKind.GENERIC_MOMENTS, m, "m"))
    assert parse_report_json(emit_report(report, "json")) == report
