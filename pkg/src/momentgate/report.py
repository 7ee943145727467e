"""Running jobs and rendering their reports.

JSON reports carry every number at full precision and parse back to an
equal :class:`ReportDocument`::

    {"label": str, "kind": "moments" | "rigid_body", "n": int,
     "status": "strict_interior" | "boundary" | "infeasible_center"
               | "invalid_second_moments",
     "margin": float | null, "semiaxes": [float], "axis_ratios": [float],
     "null_violations": [{"direction": int, "magnitude": float}],
     "volume_ratio": float, "triangle": "valid" | "degenerate" | "invalid" | null,
     "repairs": null | {"max_mass": float | null, "boundary_com": [float] | null,
                        "nearest_com": [float] | null, "original_margin": float | null}}
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from momentgate.core import DEFAULT_TOLERANCES, Status, ToleranceConfig, classify, volume_ratio
from momentgate.errors import InputError
from momentgate.ingest import JobKind, ValidationJob
from momentgate.repair import RepairSuggestion, suggest_repairs
from momentgate.rigid_body import Triangle, com_feasibility, principal_moments, triangle_check

REPORT_KEYS = (
    "label",
    "kind",
    "n",
    "status",
    "margin",
    "semiaxes",
    "axis_ratios",
    "null_violations",
    "volume_ratio",
    "triangle",
    "repairs",
)
REPAIR_KEYS = ("max_mass", "boundary_com", "nearest_com", "original_margin")

_STATUS_TEXT = {
    Status.STRICT_INTERIOR: "FEASIBLE (strict interior)",
    Status.BOUNDARY: "FEASIBLE (boundary)",
    Status.INFEASIBLE_CENTER: "INFEASIBLE (center outside the admissible ellipsoid)",
    Status.INVALID_SECOND_MOMENTS: "INVALID (second moments not positive semidefinite)",
}


@dataclass(frozen=True)
class ReportDocument:
    label: str
    kind: JobKind
    n: int
    status: Status
    margin: float | None
    semiaxes: tuple[float, ...]
    axis_ratios: tuple[float, ...]
    null_violations: tuple[tuple[int, float], ...]
    volume_ratio: float
    triangle: Triangle | None = None
    repairs: RepairSuggestion | None = None

    @property
    def feasible(self) -> bool:
        return self.status.feasible

    def to_dict(self) -> dict:
        repairs = None
        if self.repairs is not None:
            r = self.repairs
            repairs = {
                "max_mass": r.max_mass,
                "boundary_com": list(r.boundary_com) if r.boundary_com is not None else None,
                "nearest_com": list(r.nearest_com) if r.nearest_com is not None else None,
                "original_margin": r.original_margin,
            }
        return {
            "label": self.label,
            "kind": self.kind.value,
            "n": self.n,
            "status": self.status.value,
            "margin": self.margin,
            "semiaxes": list(self.semiaxes),
            "axis_ratios": list(self.axis_ratios),
            "null_violations": [{"direction": i, "magnitude": v} for i, v in self.null_violations],
            "volume_ratio": self.volume_ratio,
            "triangle": self.triangle.value if self.triangle is not None else None,
            "repairs": repairs,
        }

    @classmethod
    def from_dict(cls, doc: dict, path: str = "$") -> ReportDocument:
        if not isinstance(doc, dict) or set(doc) != set(REPORT_KEYS):
            raise InputError(f"report must have exactly the keys {list(REPORT_KEYS)}", path)
        repairs = doc["repairs"]
        if repairs is not None:
            if not isinstance(repairs, dict) or set(repairs) != set(REPAIR_KEYS):
                raise InputError(f"repairs must have exactly the keys {list(REPAIR_KEYS)}", f"{path}.repairs")
            repairs = RepairSuggestion(
                max_mass=repairs["max_mass"],
                boundary_com=_tuple_or_none(repairs["boundary_com"]),
                nearest_com=_tuple_or_none(repairs["nearest_com"]),
                original_margin=repairs["original_margin"],
            )
        try:
            return cls(
                label=doc["label"],
                kind=JobKind(doc["kind"]),
                n=doc["n"],
                status=Status(doc["status"]),
                margin=doc["margin"],
                semiaxes=tuple(doc["semiaxes"]),
                axis_ratios=tuple(doc["axis_ratios"]),
                null_violations=tuple((v["direction"], v["magnitude"]) for v in doc["null_violations"]),
                volume_ratio=doc["volume_ratio"],
                triangle=Triangle(doc["triangle"]) if doc["triangle"] is not None else None,
                repairs=repairs,
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed report: {exc}", path) from None


def _tuple_or_none(value):
    return tuple(value) if value is not None else None


def evaluate_job(
    job: ValidationJob, tol: ToleranceConfig | None = None, repair: bool = False
) -> ReportDocument:
    """Run the feasibility check (and optionally repairs) for one job."""
    tol = tol or job.tolerances or DEFAULT_TOLERANCES
    triangle = None
    repairs = None
    if job.kind is JobKind.GENERIC_MOMENTS:
        result = classify(job.payload, tol)
    else:
        body = job.payload
        A, B, C = principal_moments(body.inertia)
        try:
            triangle = triangle_check(A, B, C)
        except ValueError:
            triangle = Triangle.INVALID
        result = com_feasibility(body, tol)
        if repair:
            repairs = suggest_repairs(body, result, tol)
    return ReportDocument(
        label=job.label,
        kind=job.kind,
        n=job.n,
        status=result.status,
        margin=result.margin,
        semiaxes=result.semiaxes,
        axis_ratios=result.axis_ratios,
        null_violations=result.null_violations,
        volume_ratio=volume_ratio(job.n),
        triangle=triangle,
        repairs=repairs,
    )


def _g(x: float, digits: int = 6) -> str:
    return f"{x:.{digits}g}"


def _vec(values, digits: int = 4) -> str:
    return "(" + ", ".join(_g(v, digits) for v in values) + ")"


def _semiaxes_text(r: ReportDocument) -> str:
    names = ("a", "b", "c") if r.kind is JobKind.RIGID_BODY else [f"s{i + 1}" for i in range(r.n)]
    return "  ".join(f"{name}={_g(v, 4)}" for name, v in zip(names, r.semiaxes))


def render_text(r: ReportDocument) -> str:
    rows = [
        ("job", f"{r.label} ({r.kind.value}, n={r.n})"),
        ("status", _STATUS_TEXT[r.status]),
        ("margin", _g(r.margin) if r.margin is not None else "n/a"),
        ("semiaxes", _semiaxes_text(r)),
        ("axis ratios", ", ".join(_g(v) for v in r.axis_ratios) or "none"),
        (
            "null dirs",
            ", ".join(f"#{i} |mean|={_g(v)}" for i, v in r.null_violations) or "none",
        ),
    ]
    if r.triangle is not None:
        rows.append(("triangle", r.triangle.value))
    rows.append(("volume ratio", _g(r.volume_ratio, 4)))
    if r.repairs is not None:
        rep = r.repairs
        if rep.max_mass is not None:
            rows.append(("repair", f"max feasible mass {_g(rep.max_mass, 4)}"))
        if rep.boundary_com is not None:
            rows.append(("repair", f"boundary com {_vec(rep.boundary_com)} [geometric extrapolation]"))
        if rep.nearest_com is not None:
            rows.append(("repair", f"nearest com {_vec(rep.nearest_com)} [geometric extrapolation]"))
        if rep.max_mass is None and rep.boundary_com is None and rep.nearest_com is None:
            rows.append(("repair", "none needed" if r.feasible else "none applicable"))
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k:<{width}}  {v}" for k, v in rows) + "\n"


def emit_report(r: ReportDocument, format: str = "json") -> bytes:
    if format == "json":
        return json.dumps(r.to_dict(), indent=2).encode("utf-8")
    if format == "text":
        return render_text(r).encode("utf-8")
    raise ValueError(f"unknown format {format!r}")


def parse_report_json(data: bytes | str):
    """Inverse of the JSON emitter: one report or a list of reports."""
    doc = json.loads(data)
    if isinstance(doc, list):
        return [ReportDocument.from_dict(d, f"$[{i}]") for i, d in enumerate(doc)]
    return ReportDocument.from_dict(doc)
