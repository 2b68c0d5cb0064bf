"""Command-line interface.

Exit codes: 0 success, 1 invalid input, 2 methods disagree under
``dim --method all --strict``, 3 instability under ``probe --expect-stable``.
Reports go to stdout as JSON, diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .conformality import dim_cvs, reasonable_order
from .cvr import cvr_graph, subdivide_boundary_cells, verify_cvr_conjecture
from .dimension import METHODS, dimension_report, probe_samples
from .errors import TMeshError
from .hierarchy import HierarchicalTMesh, random_hmesh
from .io import fmt_rational, parse_mesh_file, report_to_dict, serialize_mesh
from .mesh import t_connected_component
from .stabilize import is_stable_form, stabilize
from .svg import render_svg

EXIT_OK, EXIT_INVALID, EXIT_DISAGREE, EXIT_UNSTABLE = 0, 1, 2, 3

_METHOD_CHOICES = {"rank": ("rank",), "tensor": ("tensor_formula",), "recursive": ("recursive",),
                   "closed": ("closed",), "bnet": ("bnet",), "all": METHODS}


class _Usage(Exception):
    pass


def _load(path: str):
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise _Usage(f"cannot read {path}: {exc.strerror}") from None
    return parse_mesh_file(data)


def _hier(path: str) -> HierarchicalTMesh:
    m = _load(path)
    if not isinstance(m, HierarchicalTMesh):
        raise _Usage(f"{path}: this command needs a hierarchical mesh file")
    return m


def _emit(doc: dict, out) -> None:
    out.write(json.dumps(doc, indent=1) + "\n")


def _write(path: str, data: bytes | str) -> None:
    try:
        if isinstance(data, str):
            Path(path).write_text(data, encoding="utf-8")
        else:
            Path(path).write_bytes(data)
    except OSError as exc:
        raise _Usage(f"cannot write {path}: {exc.strerror}") from None


def _cmd_dim(a, out, err) -> int:
    mesh = _load(a.mesh)
    rep = dimension_report(mesh, a.degree, _METHOD_CHOICES[a.method], homogeneous=a.homogeneous,
                           include_printed_constant=a.printed_constant)
    _emit(report_to_dict(rep), out)
    if a.strict and a.method == "all" and not rep.agree:
        err.write("methods disagree: " + ", ".join(f"{k}={v}" for k, v in rep.compared().items()) + "\n")
        return EXIT_DISAGREE
    return EXIT_OK


def _cmd_cvs(a, out, err) -> int:
    m = _load(a.mesh)
    mesh = m.mesh if isinstance(m, HierarchicalTMesh) else m
    comps = t_connected_component(mesh).sub_components()
    if a.component is not None:
        if not 0 <= a.component < len(comps):
            raise _Usage(f"component {a.component} out of range (mesh has {len(comps)})")
        picked = [(a.component, comps[a.component])]
    else:
        picked = list(enumerate(comps))
    rows = []
    for i, c in picked:
        order = reasonable_order(c, a.degree)
        rows.append({"component": i, "t": c.t_count, "v": c.v_count, "cvs": dim_cvs(c, a.degree),
                     "diagonalizable": order is not None})
    _emit({"degree": a.degree, "components": rows, "total": sum(r["cvs"] for r in rows)}, out)
    return EXIT_OK


def _cmd_cvr(a, out, err) -> int:
    m = _load(a.mesh)
    if a.subdivide_boundary:
        if not isinstance(m, HierarchicalTMesh):
            raise _Usage("--subdivide-boundary needs a hierarchical mesh file")
        m = subdivide_boundary_cells(m)
    mesh = m.mesh if isinstance(m, HierarchicalTMesh) else m
    g = cvr_graph(mesh)
    doc: dict = {"cross_vertices": len(g.vertices), "segments": len(g.segments)}
    if a.out:
        cm = g.mesh
        doc["faces"] = len(cm.faces)
        _write(a.out, serialize_mesh(cm))
    if a.check:
        if a.degree is None:
            raise _Usage("--check needs --degree")
        if not isinstance(m, HierarchicalTMesh):
            raise _Usage("--check needs a hierarchical mesh file")
        chk = verify_cvr_conjecture(m, a.degree)
        doc.update({"degree": a.degree, "lhs": chk.lhs, "lhs_oracle": chk.lhs_oracle, "rhs": chk.rhs,
                    "levels": [{"level": k, "mesh_cvs": x, "cvr_cvs": y} for k, x, y in chk.levels],
                    "equal": chk.equal, "levels_match": chk.levels_match})
    _emit(doc, out)
    return EXIT_OK


def _cmd_stabilize(a, out, err) -> int:
    h = _hier(a.mesh)
    s = stabilize(h, a.degree, homogeneous=a.homogeneous)
    _write(a.out, serialize_mesh(s))
    added = [len(s.subdivided(k)) - len(h.subdivided(k)) for k in range(1, s.lev + 1)]
    _emit({"degree": a.degree, "already_stable": s is h, "added_cells": added,
           "stable_form": is_stable_form(s, a.degree)}, out)
    return EXIT_OK


def _cmd_probe(a, out, err) -> int:
    h = _hier(a.mesh)
    rows = probe_samples(h, a.degree, a.samples, a.seed)
    counts: dict[int, int] = {}
    for _, _, v in rows:
        counts[v] = counts.get(v, 0) + 1
    witness = {}
    for xk, yk, v in rows:
        witness.setdefault(v, {"x": [fmt_rational(q) for q in xk], "y": [fmt_rational(q) for q in yk]})
    _emit({"degree": a.degree, "samples": a.samples, "seed": a.seed,
           "dimensions": {str(k): counts[k] for k in sorted(counts)},
           "stable": len(counts) == 1,
           "witnesses": {str(k): witness[k] for k in sorted(witness)}}, out)
    if a.expect_stable and len(counts) > 1:
        err.write(f"instability: {len(counts)} distinct dimensions {sorted(counts)}\n")
        return EXIT_UNSTABLE
    return EXIT_OK


def _cmd_gen(a, out, err) -> int:
    h = random_hmesh(a.seed, a.levels, a.block, a.count, allow_overlap=a.overlap,
                     interior_only=a.interior_only, grid=a.grid, knots=a.knots)
    _write(a.out, serialize_mesh(h))
    _emit({"seed": a.seed, "levels": h.lev, "cells": [len(h.subdivided(k)) for k in range(1, h.lev + 1)]}, out)
    return EXIT_OK


def _cmd_render(a, out, err) -> int:
    m = _load(a.mesh)
    mesh = m.mesh if isinstance(m, HierarchicalTMesh) else m
    _write(a.out, render_svg(mesh, cvr=a.cvr))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tmeshdim", description="Spline dimensions over T-meshes.")
    sub = p.add_subparsers(dest="command", required=True)

    def cmd(name: str, fn, help: str, degree: bool | None = True):
        sp = sub.add_parser(name, help=help)
        if name != "gen":
            sp.add_argument("--mesh", required=True)
        if degree:
            sp.add_argument("--degree", type=int, required=True)
        sp.set_defaults(fn=fn)
        return sp

    sp = cmd("dim", _cmd_dim, "dimension by one or all methods")
    sp.add_argument("--method", choices=sorted(_METHOD_CHOICES), default="all")
    sp.add_argument("--homogeneous", action="store_true")
    sp.add_argument("--strict", action="store_true")
    sp.add_argument("--printed-constant", action="store_true",
                    help="let the uncorrected closed-form constant count toward agreement")

    sp = cmd("cvs", _cmd_cvs, "conformality space of the T-connected components")
    sp.add_argument("--component", type=int)

    sp = cmd("cvr", _cmd_cvr, "CVR graph and the CVR dimension check", degree=False)
    sp.add_argument("--check", action="store_true")
    sp.add_argument("--degree", type=int)
    sp.add_argument("--subdivide-boundary", action="store_true")
    sp.add_argument("--out")

    sp = cmd("stabilize", _cmd_stabilize, "cover subdivisions with (d-1)x(d-1) blocks")
    sp.add_argument("--out", required=True)
    sp.add_argument("--homogeneous", action="store_true")

    sp = cmd("probe", _cmd_probe, "re-sample knots and collect dimensions")
    sp.add_argument("--samples", type=int, required=True)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--expect-stable", action="store_true")

    sp = cmd("gen", _cmd_gen, "random hierarchical mesh", degree=False)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--levels", type=int, required=True)
    sp.add_argument("--block", type=int, required=True)
    sp.add_argument("--count", type=int, required=True)
    sp.add_argument("--overlap", action="store_true")
    sp.add_argument("--interior-only", action="store_true")
    sp.add_argument("--grid", type=int, default=8)
    sp.add_argument("--knots", choices=("uniform", "random"), default="uniform")
    sp.add_argument("--out", required=True)

    sp = cmd("render", _cmd_render, "SVG drawing", degree=False)
    sp.add_argument("--out", required=True)
    sp.add_argument("--cvr", action="store_true")
    return p


def run_cli(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; 2 is reserved for disagreement here
        return EXIT_OK if exc.code == 0 else EXIT_INVALID
    try:
        return a.fn(a, out, err)
    except (TMeshError, _Usage, ValueError) as exc:
        err.write(f"tmeshdim {a.command}: {type(exc).__name__}: {exc}\n"
                  if isinstance(exc, TMeshError) else f"tmeshdim {a.command}: {exc}\n")
        return EXIT_INVALID


def main() -> None:
    sys.exit(run_cli())
