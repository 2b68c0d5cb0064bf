"""JSON mesh files and dimension reports.

Coordinates are always written as strings ("3", "-1/2") so that files are
bit-exact.  A hierarchical file has ``level0`` and ``subdivisions``; a
general file has ``segments`` instead.  A segment is ``[[x0, y0], [x1, y1]]``
with an optional third element giving its level.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .dimension import DimensionReport
from .errors import ParseError, TMeshError, ValidationError
from .hierarchy import CROSS, TENSOR, HierarchicalTMesh, SubdivisionRecord, from_records
from .mesh import MeshStats, Segment, TMesh, build_mesh

FORMAT_VERSION = 1


def fmt_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_rational(value: Any, where: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise ParseError(f"{where}: expected a rational string, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    text = value.strip()
    num, _, den = text.partition("/")
    try:
        n = int(num)
        d = int(den) if den else 1
    except ValueError:
        raise ParseError(f"{where}: {value!r} is not of the form num/den") from None
    if d == 0:
        raise ParseError(f"{where}: zero denominator in {value!r}")
    return Fraction(n, d)


def _point(value: Any, where: str) -> tuple[Fraction, Fraction]:
    if not isinstance(value, list) or len(value) != 2:
        raise ParseError(f"{where}: expected a coordinate pair")
    return parse_rational(value[0], f"{where}[0]"), parse_rational(value[1], f"{where}[1]")


def parse_mesh_file(data: bytes | str) -> HierarchicalTMesh | TMesh:
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"not UTF-8: {exc}") from None
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    if doc.get("version", FORMAT_VERSION) != FORMAT_VERSION:
        raise ParseError(f"version: unsupported {doc.get('version')!r}")
    is_cvr = doc.get("is_cvr", False)
    if not isinstance(is_cvr, bool):
        raise ParseError("is_cvr: expected a boolean")

    if "segments" in doc:
        raw = doc["segments"]
        if not isinstance(raw, list):
            raise ParseError("segments: expected a list")
        segs = []
        for i, s in enumerate(raw):
            where = f"segments[{i}]"
            if not isinstance(s, list) or len(s) not in (2, 3):
                raise ParseError(f"{where}: expected [[x0, y0], [x1, y1]] or with a level")
            level = s[2] if len(s) == 3 else 0
            if not isinstance(level, int) or isinstance(level, bool) or level < 0:
                raise ParseError(f"{where}[2]: level must be a natural number")
            try:
                segs.append(Segment.of(_point(s[0], f"{where}[0]"), _point(s[1], f"{where}[1]"), level))
            except TMeshError as exc:
                if isinstance(exc, ParseError):
                    raise
                raise ValidationError(f"{where}: {exc}") from None
        try:
            return build_mesh(segs, is_cvr=is_cvr)
        except TMeshError as exc:
            raise ValidationError(str(exc)) from None

    level0 = doc.get("level0")
    if not isinstance(level0, dict) or "x" not in level0 or "y" not in level0:
        raise ParseError("level0: expected an object with x and y knot lists")
    knots = {}
    for axis in ("x", "y"):
        if not isinstance(level0[axis], list):
            raise ParseError(f"level0.{axis}: expected a list")
        knots[axis] = [parse_rational(v, f"level0.{axis}[{i}]") for i, v in enumerate(level0[axis])]
    records = []
    for n, rec in enumerate(doc.get("subdivisions", [])):
        where = f"subdivisions[{n}]"
        if not isinstance(rec, dict):
            raise ParseError(f"{where}: expected an object")
        level = rec.get("level")
        if not isinstance(level, int) or isinstance(level, bool):
            raise ParseError(f"{where}.level: expected an integer")
        mode = rec.get("mode", CROSS)
        shape = None
        if mode == TENSOR:
            shape = rec.get("shape")
            if (not isinstance(shape, list) or len(shape) != 2
                    or not all(isinstance(v, int) and v > 0 for v in shape)):
                raise ParseError(f"{where}.shape: tensor mode needs [m, n]")
            shape = tuple(shape)
        elif mode != CROSS:
            raise ParseError(f"{where}.mode: unknown mode {mode!r}")
        cells = rec.get("cells")
        if not isinstance(cells, list):
            raise ParseError(f"{where}.cells: expected a list")
        pts = tuple(_point(c, f"{where}.cells[{i}]") for i, c in enumerate(cells))
        records.append(SubdivisionRecord(level, mode, pts, shape))
    try:
        return from_records(knots["x"], knots["y"], records)
    except TMeshError as exc:
        raise ValidationError(str(exc)) from None


def mesh_to_dict(mesh: HierarchicalTMesh | TMesh) -> dict:
    if isinstance(mesh, HierarchicalTMesh):
        subs = []
        for r in mesh.subdivisions:
            item: dict[str, Any] = {"level": r.level, "mode": r.mode}
            if r.mode == TENSOR:
                item["shape"] = list(r.shape)
            item["cells"] = [[fmt_rational(x), fmt_rational(y)] for x, y in r.cells]
            subs.append(item)
        return {"version": FORMAT_VERSION, "is_cvr": False,
                "level0": {"x": [fmt_rational(v) for v in mesh.x_knots],
                           "y": [fmt_rational(v) for v in mesh.y_knots]},
                "subdivisions": subs}
    segs = []
    for s in mesh.segments():
        item = [[fmt_rational(s.x0), fmt_rational(s.y0)], [fmt_rational(s.x1), fmt_rational(s.y1)]]
        if s.level:
            item.append(s.level)
        segs.append(item)
    return {"version": FORMAT_VERSION, "is_cvr": mesh.is_cvr, "segments": segs}


def serialize_mesh(mesh: HierarchicalTMesh | TMesh) -> str:
    return json.dumps(mesh_to_dict(mesh), indent=1) + "\n"


def report_to_dict(rep: DimensionReport) -> dict:
    s = rep.stats
    return {
        "degree": rep.degree,
        "methods": dict(rep.methods),
        "stats": {"v": s.v, "t": s.t, "b": s.b, "c": s.c, "n_v": s.n_v},
        "gamma": rep.gamma,
        "gamma0": rep.gamma0,
        "agree": rep.agree,
        "warnings": list(rep.warnings),
        "homogeneous": rep.homogeneous,
        "printed_constant_compared": rep.include_printed_constant,
        "stats_extra": {"t_T": s.t_T, "b_v": s.b_v},
    }


def serialize_report(rep: DimensionReport) -> str:
    return json.dumps(report_to_dict(rep), indent=1) + "\n"


def parse_report(data: bytes | str) -> DimensionReport:
    try:
        doc = json.loads(data)
        s, extra = doc["stats"], doc.get("stats_extra", {})
        stats = MeshStats(v=s["v"], t=s["t"], t_T=extra.get("t_T", 0), b=s["b"],
                          b_v=extra.get("b_v", s["b"]), c=s["c"], n_v=s["n_v"])
        rep = DimensionReport(doc["degree"], dict(doc["methods"]), stats, doc["gamma"],
                              doc["gamma0"], list(doc["warnings"]), doc.get("homogeneous", False),
                              doc.get("printed_constant_compared", False))
    except (KeyError, TypeError, json.JSONDecodeError) as exc:
        raise ParseError(f"malformed report: {exc}") from None
    if rep.agree != doc["agree"]:
        raise ParseError("agree flag does not match the method values")
    return rep
