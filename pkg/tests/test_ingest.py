import json

import numpy as np
import pytest

from momentgate.core import Status
from momentgate.errors import InputError
from momentgate.ingest import JobKind, UrdfMode, ValidationJob, parse_job_json, parse_urdf
from momentgate.report import (
    ReportDocument,
    emit_report,
    evaluate_job,
    parse_report_json,
)
from momentgate.rigid_body import Frame, RigidBodyParams, Triangle, com_feasibility

EXAMPLE_JOB = (
    '{"kind":"rigid_body","mass":300,"inertia":{"ixx":10,"iyy":20,"izz":30,"ixy":0,"ixz":0,"iyz":0},'
    '"com":[2,5,0],"frame":"reference_point"}'
)


def urdf(*links):
    return ("<robot name='r'>" + "".join(links) + "</robot>").encode()


def link(name, mass="1", inertia=(1, 0, 0, 1, 0, 1), xyz=None, rpy=None):
    ixx, ixy, ixz, iyy, iyz, izz = inertia
    origin = ""
    if xyz is not None or rpy is not None:
        attrs = []
        if xyz is not None:
            attrs.append(f"xyz='{xyz}'")
        if rpy is not None:
            attrs.append(f"rpy='{rpy}'")
        origin = f"<origin {' '.join(attrs)}/>"
    mass_el = f"<mass value='{mass}'/>" if mass is not None else ""
    return (
        f"<link name='{name}'><inertial>{origin}{mass_el}"
        f"<inertia ixx='{ixx}' ixy='{ixy}' ixz='{ixz}' iyy='{iyy}' iyz='{iyz}' izz='{izz}'/>"
        f"</inertial></link>"
    )


class TestParseJobJson:
    def test_counterexample(self):
        (job,) = parse_job_json(EXAMPLE_JOB.encode())
        assert job.kind is JobKind.RIGID_BODY
        body = job.payload
        assert body.mass == 300.0
        np.testing.assert_array_equal(body.inertia, np.diag([10.0, 20.0, 30.0]))
        np.testing.assert_array_equal(body.com, [2, 5, 0])
        assert body.frame is Frame.ABOUT_REFERENCE_POINT
        assert job.label == "job0"
        assert job.tolerances is None

    def test_trivial_moments(self):
        (job,) = parse_job_json('{"kind":"moments","n":1,"mean":[0],"second":[[1]]}')
        assert job.kind is JobKind.GENERIC_MOMENTS
        assert job.payload.n == 1 and job.n == 1

    def test_array_and_tolerances(self):
        doc = [
            {"kind": "moments", "label": "a", "mean": [0, 0], "second": [[1, 0], [0, 1]],
             "tolerances": {"eig_rel_tol": 1e-8, "boundary_tol": 1e-6}},
            {"kind": "rigid_body", "label": "b", "mass": 1, "com": [0, 0, 0],
             "inertia": [[2, 0, 0], [0, 2, 0], [0, 0, 2]], "frame": "center_of_mass"},
        ]
        jobs = parse_job_json(json.dumps(doc))
        assert [j.label for j in jobs] == ["a", "b"]
        assert jobs[0].tolerances.eig_rel_tol == 1e-8
        assert jobs[1].payload.frame is Frame.ABOUT_CENTER_OF_MASS

    def test_symmetrizes_within_tolerance(self):
        (job,) = parse_job_json('{"kind":"moments","mean":[0,0],"second":[[1,0.5],[0.5000000001,1]]}')
        assert job.payload.second[0, 1] == job.payload.second[1, 0]

    @pytest.mark.parametrize(
        "text, path",
        [
            ('{"kind":"moments","n":2,"mean":[0],"second":[[1]]}', "$.mean"),
            ('{"kind":"moments","mean":[0],"second":[[1]],"extra":1}', "$.extra"),
            ('{"kind":"moments","mean":[0,0],"second":[[1,0.5],[0.4,1]]}', "$.second"),
            ('{"kind":"moments","mean":[0],"second":[[true]]}', "$.second[0][0]"),
            ('{"kind":"moments","mean":[0]}', "$.second"),
            ('{"kind":"rigid_body","mass":1,"inertia":{"ixx":1,"iyy":1,"izz":1,"ixy":0,"ixz":0},"com":[0,0,0]}',
             "$.inertia.iyz"),
            ('{"kind":"rigid_body","mass":1,"inertia":{"ixx":1,"iyy":1,"izz":1,"ixy":0,"ixz":0,"iyz":0,"ixxx":1},'
             '"com":[0,0,0]}', "$.inertia.ixxx"),
            ('{"kind":"rigid_body","mass":-1,"inertia":[[1,0,0],[0,1,0],[0,0,1]],"com":[0,0,0]}', "$.mass"),
            ('{"kind":"rigid_body","mass":1,"inertia":[[1,0,0],[0,1,0],[0,0,1]],"com":[0,0]}', "$.com"),
            ('{"kind":"rigid_body","mass":1,"inertia":[[1,0,0],[0,1,0],[0,0,1]],"com":[0,0,0],"frame":"x"}',
             "$.frame"),
            ('[{"kind":"moments","mean":[0],"second":[[1]]},{"kind":"nope"}]', "$[1].kind"),
            ('{"kind":"moments","mean":[0],"second":[[1]],"tolerances":{"eig_rel_tol":0}}', "$.tolerances"),
            ("[]", "$"),
            ("3", "$"),
        ],
    )
    def test_errors_name_the_path(self, text, path):
        with pytest.raises(InputError) as info:
            parse_job_json(text)
        assert info.value.path == path

    def test_malformed_json_reports_line(self):
        with pytest.raises(InputError) as info:
            parse_job_json(b'{\n"kind": "moments",\n"mean": [0,\n}')
        assert info.value.line == 4

    def test_empty_file(self):
        with pytest.raises(InputError):
            parse_job_json(b"")

    def test_not_utf8(self):
        with pytest.raises(InputError, match="UTF-8"):
            parse_job_json(b"\xff\xfe")

    def test_job_payload_must_match_kind(self):
        body = RigidBodyParams(1.0, np.eye(3), np.zeros(3))
        with pytest.raises(ValueError):
            ValidationJob(JobKind.GENERIC_MOMENTS, body, "x")


class TestParseUrdf:
    def test_trivial_link_both_modes(self):
        data = urdf(link("base", inertia=(2, 0, 0, 2, 0, 2), xyz="0 0 0"))
        for mode in UrdfMode:
            ((name, body),) = parse_urdf(data, mode)
            assert name == "base"
            assert com_feasibility(body).feasible

    def test_modes_set_frame(self):
        data = urdf(link("l", xyz="1 2 3"))
        ((_, a),) = parse_urdf(data, "com_semantics")
        ((_, b),) = parse_urdf(data, "origin_hypothesis")
        assert a.frame is Frame.ABOUT_CENTER_OF_MASS
        assert b.frame is Frame.ABOUT_REFERENCE_POINT
        np.testing.assert_array_equal(a.com, [1, 2, 3])
        np.testing.assert_array_equal(b.com, [1, 2, 3])

    def test_offset_link_matches_library(self):
        data = urdf(link("p", mass="300", inertia=(10, 0, 0, 20, 0, 30), xyz="2 5 0"))
        ((_, body),) = parse_urdf(data, UrdfMode.ORIGIN_HYPOTHESIS)
        got = com_feasibility(body)
        ref = com_feasibility(RigidBodyParams(300.0, np.diag([10.0, 20.0, 30.0]), [2, 5, 0]))
        assert got.status is ref.status is Status.INFEASIBLE_CENTER
        assert got.margin == ref.margin

    def test_invalid_triangle_both_modes(self):
        data = urdf(link("bad", inertia=(1, 0, 0, 1, 0, 3)))
        for mode in UrdfMode:
            ((_, body),) = parse_urdf(data, mode)
            report = evaluate_job(ValidationJob(JobKind.RIGID_BODY, body, "bad"))
            assert report.triangle is Triangle.INVALID
            assert report.status is Status.INVALID_SECOND_MOMENTS

    def test_rpy_rotates_tensor(self):
        data = urdf(link("r", inertia=(1, 0, 0, 2, 0, 3), rpy="0 0 1.5707963267948966"))
        ((_, body),) = parse_urdf(data)
        np.testing.assert_allclose(body.inertia, np.diag([2.0, 1.0, 3.0]), atol=1e-15)

    def test_bad_links_do_not_stop_others(self):
        data = urdf(
            link("ok"),
            link("no_mass", mass=None),
            "<link name='no_inertia'><inertial><mass value='1'/></inertial></link>",
            link("neg", mass="-2"),
            link("garbage", mass="abc"),
            "<link name='bare'/>",
            link("ok2", xyz="1 2"),
        )
        results = parse_urdf(data)
        assert [n for n, _ in results] == ["ok", "no_mass", "no_inertia", "neg", "garbage", "ok2"]
        assert isinstance(results[0][1], RigidBodyParams)
        assert all(isinstance(r, InputError) for _, r in results[1:])
        assert "mass" in results[1][1].path
        assert results[5][1].path.endswith("origin@xyz")

    def test_malformed_xml(self):
        with pytest.raises(InputError) as info:
            parse_urdf(b"<robot>\n<link>\n</robot>")
        assert info.value.line is not None

    def test_wrong_root(self):
        with pytest.raises(InputError):
            parse_urdf(b"<sdf/>")


def _example_report(repair=True):
    (job,) = parse_job_json(EXAMPLE_JOB)
    return evaluate_job(job, repair=repair)


class TestReports:
    def test_counterexample_text(self):
        text = emit_report(_example_report(), "text").decode()
        assert "INFEASIBLE" in text
        assert "a=0.2582" in text
        assert "b=0.1826" in text
        assert "max feasible mass 0.3704" in text
        assert "geometric extrapolation" in text

    def test_counterexample_fields(self):
        r = _example_report()
        assert r.status is Status.INFEASIBLE_CENTER
        assert r.triangle is Triangle.DEGENERATE
        assert r.repairs.max_mass == pytest.approx(0.37037037, abs=1e-8)
        assert r.volume_ratio == pytest.approx(0.5236, abs=5e-5)

    def test_json_round_trip(self):
        for r in (_example_report(), _example_report(repair=False)):
            assert parse_report_json(emit_report(r, "json")) == r
        (job,) = parse_job_json('{"kind":"moments","n":1,"mean":[0],"second":[[1]]}')
        feasible = evaluate_job(job)
        assert feasible.status is Status.STRICT_INTERIOR
        assert parse_report_json(emit_report(feasible, "json")) == feasible

    def test_boundary_status_string(self):
        (job,) = parse_job_json('{"kind":"moments","mean":[1,0],"second":[[1,0],[0,0]]}')
        r = evaluate_job(job)
        assert json.loads(emit_report(r, "json"))["status"] == "boundary"
        assert "boundary" in emit_report(r, "text").decode()

    def test_json_schema_keys(self):
        doc = json.loads(emit_report(_example_report(), "json"))
        assert list(doc) == [
            "label", "kind", "n", "status", "margin", "semiaxes", "axis_ratios",
            "null_violations", "volume_ratio", "triangle", "repairs",
        ]
        assert set(doc["repairs"]) == {"max_mass", "boundary_com", "nearest_com", "original_margin"}

    def test_null_violation_serialization(self):
        (job,) = parse_job_json('{"kind":"moments","mean":[0,0,0.1],"second":[[1,0,0],[0,1,0],[0,0,0]]}')
        r = evaluate_job(job)
        doc = json.loads(emit_report(r, "json"))
        assert doc["null_violations"] == [{"direction": 2, "magnitude": pytest.approx(0.1)}]
        assert parse_report_json(emit_report(r, "json")) == r

    def test_list_round_trip(self):
        reports = [_example_report(), _example_report(repair=False)]
        text = json.dumps([r.to_dict() for r in reports])
        assert parse_report_json(text) == reports

    def test_rejects_bad_report(self):
        with pytest.raises(InputError):
            ReportDocument.from_dict({"label": "x"})

    def test_unknown_format(self):
        with pytest.raises(ValueError):
            emit_report(_example_report(), "xml")
