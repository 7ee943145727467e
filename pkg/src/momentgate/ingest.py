"""Reading validation jobs from JSON and inertial blocks from URDF.

Job files hold one job object or an array of them::

    {"kind": "moments", "label": "...", "n": 2,
     "mean": [0, 0], "second": [[1, 0], [0, 1]],
     "tolerances": {"eig_rel_tol": 1e-10, "boundary_tol": 1e-9}}

    {"kind": "rigid_body", "label": "...", "mass": 300,
     "inertia": {"ixx": 10, "iyy": 20, "izz": 30, "ixy": 0, "ixz": 0, "iyz": 0},
     "com": [2, 5, 0], "frame": "reference_point"}

Only ``label``, ``n``, ``frame`` and ``tolerances`` are optional. Unknown
keys are errors: a misspelled field in a hand-written physics asset must not
be silently ignored.
"""

from __future__ import annotations

import enum
import json
import math
import xml.etree.ElementTree as ET
from dataclasses import dataclass

import numpy as np
from scipy.spatial.transform import Rotation

from momentgate.core import MomentSet, ToleranceConfig
from momentgate.errors import InputError, InvalidInput
from momentgate.rigid_body import Frame, RigidBodyParams

JSON_SYMMETRY_TOL = 1e-9
INERTIA_KEYS = ("ixx", "ixy", "ixz", "iyy", "iyz", "izz")


class JobKind(str, enum.Enum):
    GENERIC_MOMENTS = "moments"
    RIGID_BODY = "rigid_body"


class UrdfMode(str, enum.Enum):
    # tensor about the COM, as URDF defines it: validity check only
    COM_SEMANTICS = "com_semantics"
    # lint: pretend the tensor is about the link origin and check the COM against it
    ORIGIN_HYPOTHESIS = "origin_hypothesis"


@dataclass(frozen=True, eq=False)
class ValidationJob:
    kind: JobKind
    payload: MomentSet | RigidBodyParams
    label: str
    tolerances: ToleranceConfig | None = None

    def __post_init__(self):
        expected = MomentSet if self.kind is JobKind.GENERIC_MOMENTS else RigidBodyParams
        if not isinstance(self.payload, expected):
            raise InvalidInput(f"{self.kind.value} job needs a {expected.__name__} payload")

    @property
    def n(self) -> int:
        return self.payload.n if self.kind is JobKind.GENERIC_MOMENTS else 3


def _number(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InputError(f"expected a number, got {type(value).__name__}", path)
    value = float(value)
    if not math.isfinite(value):
        raise InputError("number must be finite", path)
    return value


def _vector(value, path: str, length: int | None = None) -> list[float]:
    if not isinstance(value, list):
        raise InputError(f"expected an array, got {type(value).__name__}", path)
    if length is not None and len(value) != length:
        raise InputError(f"expected {length} entries, got {len(value)}", path)
    return [_number(v, f"{path}[{i}]") for i, v in enumerate(value)]


def _check_keys(obj: dict, allowed: set[str], required: set[str], path: str) -> None:
    for key in obj:
        if key not in allowed:
            raise InputError(f"unknown field {key!r}", f"{path}.{key}")
    for key in sorted(required):
        if key not in obj:
            raise InputError(f"missing required field {key!r}", f"{path}.{key}")


def _tolerances(obj, path: str) -> ToleranceConfig | None:
    if obj is None:
        return None
    if not isinstance(obj, dict):
        raise InputError("tolerances must be an object", path)
    _check_keys(obj, {"eig_rel_tol", "boundary_tol"}, set(), path)
    kwargs = {k: _number(v, f"{path}.{k}") for k, v in obj.items()}
    try:
        return ToleranceConfig(**kwargs)
    except InvalidInput as exc:
        raise InputError(str(exc), path) from None


def _symmetric(rows: list[list[float]], path: str) -> np.ndarray:
    a = np.array(rows, dtype=np.float64)
    asym = float(np.max(np.abs(a - a.T))) if a.size else 0.0
    if asym > JSON_SYMMETRY_TOL:
        raise InputError(f"matrix is not symmetric (max asymmetry {asym:.3g})", path)
    return 0.5 * (a + a.T)


def _moments_job(obj: dict, path: str, label: str) -> ValidationJob:
    _check_keys(obj, {"kind", "label", "n", "mean", "second", "tolerances"}, {"mean", "second"}, path)
    mean = _vector(obj["mean"], f"{path}.mean")
    n = len(mean)
    if "n" in obj:
        declared = obj["n"]
        if isinstance(declared, bool) or not isinstance(declared, int) or declared < 1:
            raise InputError("n must be a positive integer", f"{path}.n")
        if declared != n:
            raise InputError(f"mean has {n} entries but n is {declared}", f"{path}.mean")
        n = declared
    second = obj["second"]
    if not isinstance(second, list) or len(second) != n:
        raise InputError(f"second must be an array of {n} rows", f"{path}.second")
    rows = [_vector(row, f"{path}.second[{i}]", n) for i, row in enumerate(second)]
    matrix = _symmetric(rows, f"{path}.second")
    try:
        payload = MomentSet(mean, matrix)
    except InvalidInput as exc:
        raise InputError(str(exc), path) from None
    return ValidationJob(JobKind.GENERIC_MOMENTS, payload, label, _tolerances(obj.get("tolerances"), f"{path}.tolerances"))


def _inertia_matrix(values: dict[str, float]) -> np.ndarray:
    return np.array(
        [
            [values["ixx"], values["ixy"], values["ixz"]],
            [values["ixy"], values["iyy"], values["iyz"]],
            [values["ixz"], values["iyz"], values["izz"]],
        ]
    )


def _rigid_job(obj: dict, path: str, label: str) -> ValidationJob:
    _check_keys(
        obj,
        {"kind", "label", "mass", "inertia", "com", "frame", "tolerances"},
        {"mass", "inertia", "com"},
        path,
    )
    mass = _number(obj["mass"], f"{path}.mass")
    if mass <= 0:
        raise InputError("mass must be positive", f"{path}.mass")
    inertia = obj["inertia"]
    ipath = f"{path}.inertia"
    if isinstance(inertia, dict):
        _check_keys(inertia, set(INERTIA_KEYS), set(INERTIA_KEYS), ipath)
        J = _inertia_matrix({k: _number(inertia[k], f"{ipath}.{k}") for k in INERTIA_KEYS})
    elif isinstance(inertia, list) and len(inertia) == 3:
        J = _symmetric([_vector(row, f"{ipath}[{i}]", 3) for i, row in enumerate(inertia)], ipath)
    else:
        raise InputError("inertia must be an object of six components or a 3x3 array", ipath)
    com = _vector(obj["com"], f"{path}.com", 3)
    try:
        frame = Frame(obj.get("frame", Frame.ABOUT_REFERENCE_POINT.value))
    except ValueError:
        raise InputError(
            f"frame must be one of {[f.value for f in Frame]}", f"{path}.frame"
        ) from None
    payload = RigidBodyParams(mass, J, com, frame)
    return ValidationJob(JobKind.RIGID_BODY, payload, label, _tolerances(obj.get("tolerances"), f"{path}.tolerances"))


def parse_job_json(data: bytes | str) -> list[ValidationJob]:
    """Parse a job file; raises :class:`InputError` naming the offending path."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise InputError(f"not valid UTF-8: {exc.reason}") from None
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc.msg}", line=exc.lineno) from None

    if isinstance(doc, dict):
        items = [("$", doc)]
    elif isinstance(doc, list):
        items = [(f"$[{i}]", obj) for i, obj in enumerate(doc)]
    else:
        raise InputError("expected a job object or an array of jobs", "$")
    if not items:
        raise InputError("no jobs in file", "$")

    jobs = []
    for index, (path, obj) in enumerate(items):
        if not isinstance(obj, dict):
            raise InputError("job must be an object", path)
        label = obj.get("label", f"job{index}")
        if not isinstance(label, str):
            raise InputError("label must be a string", f"{path}.label")
        kind = obj.get("kind")
        if kind == JobKind.GENERIC_MOMENTS.value:
            jobs.append(_moments_job(obj, path, label))
        elif kind == JobKind.RIGID_BODY.value:
            jobs.append(_rigid_job(obj, path, label))
        else:
            raise InputError(f"kind must be one of {[k.value for k in JobKind]}, got {kind!r}", f"{path}.kind")
    return jobs


def _floats(text: str | None, count: int, path: str) -> list[float]:
    if text is None:
        return [0.0] * count
    parts = text.split()
    if len(parts) != count:
        raise InputError(f"expected {count} numbers, got {text!r}", path)
    try:
        values = [float(p) for p in parts]
    except ValueError:
        raise InputError(f"not a number in {text!r}", path) from None
    if not all(math.isfinite(v) for v in values):
        raise InputError("numbers must be finite", path)
    return values


def _link_params(link: ET.Element, inertial: ET.Element, path: str, mode: UrdfMode) -> RigidBodyParams:
    mass_el = inertial.find("mass")
    if mass_el is None or mass_el.get("value") is None:
        raise InputError("missing <mass value>", f"{path}/mass")
    (mass,) = _floats(mass_el.get("value"), 1, f"{path}/mass@value")
    if mass <= 0:
        raise InputError("mass must be positive", f"{path}/mass@value")

    inertia_el = inertial.find("inertia")
    if inertia_el is None:
        raise InputError("missing <inertia>", f"{path}/inertia")
    values = {}
    for key in INERTIA_KEYS:
        raw = inertia_el.get(key)
        if raw is None:
            raise InputError(f"missing attribute {key}", f"{path}/inertia@{key}")
        (values[key],) = _floats(raw, 1, f"{path}/inertia@{key}")
    J = _inertia_matrix(values)

    origin = inertial.find("origin")
    xyz = _floats(origin.get("xyz") if origin is not None else None, 3, f"{path}/origin@xyz")
    rpy = _floats(origin.get("rpy") if origin is not None else None, 3, f"{path}/origin@rpy")
    if any(rpy):
        # fixed-axis roll, pitch, yaw: R = Rz(yaw) Ry(pitch) Rx(roll)
        R = Rotation.from_euler("xyz", rpy).as_matrix()
        J = R @ J @ R.T

    frame = Frame.ABOUT_CENTER_OF_MASS if mode is UrdfMode.COM_SEMANTICS else Frame.ABOUT_REFERENCE_POINT
    try:
        return RigidBodyParams(mass, J, xyz, frame)
    except InvalidInput as exc:
        raise InputError(str(exc), path) from None


def parse_urdf(data: bytes | str, mode: UrdfMode | str = UrdfMode.COM_SEMANTICS):
    """Inertial parameters of every link with an ``<inertial>`` block.

    Returns ``(link name, RigidBodyParams or InputError)`` pairs in document
    order; a broken link does not stop the others from being read.
    """
    mode = UrdfMode(mode)
    try:
        root = ET.fromstring(data)
    except ET.ParseError as exc:
        raise InputError(f"malformed XML: {exc}", line=exc.position[0]) from None
    if root.tag != "robot":
        raise InputError(f"root element must be <robot>, got <{root.tag}>", "/")

    out = []
    for index, link in enumerate(root.findall("link")):
        name = link.get("name") or f"link{index}"
        inertial = link.find("inertial")
        if inertial is None:
            continue
        path = f"/robot/link[@name={name!r}]/inertial"
        try:
            out.append((name, _link_params(link, inertial, path, mode)))
        except InputError as exc:
            out.append((name, exc))
    return out
