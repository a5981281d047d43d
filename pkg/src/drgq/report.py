"""End-to-end analysis pipeline and JSON report assembly.

Reports use a fixed key order and only contain values reproducible from the
recorded settings, so the same input and flags produce byte-identical output
apart from the timing block.
"""

from __future__ import annotations

import json
import time
from math import ceil
from typing import Optional

import numpy as np

from . import __version__
from .connectivity import (dual_sign_change_index, odd_component_census,
                           sweep_last_two, sweep_tail)
from .families import FamilySpec
from .graphs import Graph, distance_data
from .intersection import NotDRG, check_distance_regular, classify
from .qpoly import qpoly_report, resolve_mode
from .spectral import compute_spectral_data, inner_product_residual
from .tolerances import DEFAULT_TOLERANCES, Tolerances

SECTIONS = ("intersection", "spectral", "qpoly", "connectivity")


def _listify(x):
    if isinstance(x, np.ndarray):
        return x.tolist()
    return x


def run_analysis(g: Graph, source: str, family: Optional[FamilySpec] = None,
                 tol: Tolerances = DEFAULT_TOLERANCES, mode: str = "auto",
                 seed: int = 0, jobs: int = 1,
                 only: Optional[str] = None) -> dict:
    """Full pipeline: distances, regularity, classification, spectra,
    Q-polynomial verdicts, connectivity certificates.

    Stops after the regularity section when the graph is not
    distance-regular; the report then carries the witness.
    """
    if only is not None and only not in SECTIONS:
        raise ValueError(f"unknown section {only!r}; expected one of {', '.join(SECTIONS)}")
    timings: dict[str, float] = {}
    report: dict = {
        "tool": {"name": "drgq", "version": __version__},
        "graph": {
            "source": source,
            "family": str(family) if family is not None else None,
            "n": g.n,
            "edges": g.num_edges,
        },
        "settings": {
            "tolerance_matrix_base": tol.matrix_eps_base,
            "tolerance_balanced": tol.balanced_rel,
            "mode": resolve_mode(g.n, mode),
            "seed": seed,
            "jobs": jobs,
        },
    }

    t0 = time.perf_counter()
    dd = distance_data(g)
    timings["distance"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    checked = check_distance_regular(g, dd)
    timings["drg_check"] = time.perf_counter() - t0

    if isinstance(checked, NotDRG):
        report["intersection"] = {
            "is_drg": False,
            "witness": {
                "h": checked.h, "i": checked.i, "j": checked.j,
                "pair_a": list(checked.pair_a), "count_a": checked.count_a,
                "pair_b": list(checked.pair_b), "count_b": checked.count_b,
            },
        }
        report["timings"] = timings
        return report

    ia = checked
    flags = classify(g, dd)
    report["intersection"] = {
        "is_drg": True,
        "d": ia.d,
        "k": ia.k,
        "b": list(ia.b),
        "c": list(ia.c),
        "a": list(ia.a),
        "sphere_sizes": list(ia.sphere_sizes),
        "classification": {
            "bipartite": flags.bipartite,
            "antipodal": flags.antipodal,
            "primitive": flags.primitive,
        },
    }

    t0 = time.perf_counter()
    sd = compute_spectral_data(dd, ia, tol)
    timings["spectral"] = time.perf_counter() - t0
    report["spectral"] = {
        "theta": _listify(sd.theta),
        "mult": list(sd.mult),
        "dual": _listify(sd.dual),
        "eq2_max_residual": max(
            inner_product_residual(sd.idempotents[j], sd.dual[j], dd)
            for j in range(ia.d + 1)),
    }

    t0 = time.perf_counter()
    qp = qpoly_report(dd, ia, sd, mode=mode, seed=seed, tol=tol, jobs=jobs)
    timings["qpoly"] = time.perf_counter() - t0
    report["qpoly"] = {
        "verdicts": [qp.balanced[e].qpoly for e in range(1, ia.d + 1)],
        "orderings": qp.span_orderings,
        "worst_residual": qp.worst_residual,
        "mode": resolve_mode(g.n, mode),
        "seed": seed,
        "consistent": qp.consistent,
    }

    t0 = time.perf_counter()
    connectivity: dict = {}
    if ia.d >= 3:
        all_ok, per_gamma = sweep_last_two(g, dd, jobs)
        connectivity["thm1"] = {"all_connected": all_ok, "per_gamma": per_gamma}
    else:
        connectivity["thm1"] = {"applicable": False}
    s = dual_sign_change_index(sd.dual[1], tol.dual_zero_snap)
    tail_ok, _ = sweep_tail(g, dd, s, jobs)
    connectivity["ck"] = {
        "s": s,
        "s_lower_bound": ceil(ia.d / 2),
        "tail_all_connected": tail_ok,
    }
    if family is not None and family.kind == "odd" and ia.d >= 3:
        census = odd_component_census(family.params[0], all_vertices=True)
        connectivity["census"] = {
            "d": census.d,
            "count": census.count,
            "component_size": census.expected_size,
            "iso_certified": census.iso_certified,
        }
    timings["connectivity"] = time.perf_counter() - t0
    report["connectivity"] = connectivity

    if only is not None:
        for section in SECTIONS:
            if section != only:
                report.pop(section, None)
    report["timings"] = timings
    return report


def to_json(report: dict) -> str:
    return json.dumps(report, indent=2, allow_nan=False)


def render_pretty(report: dict) -> str:
    """Human-readable rendering of an analysis report."""
    lines = []
    gmeta = report["graph"]
    lines.append(f"graph: {gmeta['source']} (n={gmeta['n']}, edges={gmeta['edges']})")
    inter = report.get("intersection")
    if inter is not None:
        if not inter["is_drg"]:
            w = inter["witness"]
            lines.append("not distance-regular")
            lines.append(f"  witness: pairs {tuple(w['pair_a'])} and {tuple(w['pair_b'])} at distance "
                         f"{w['h']} count {w['count_a']} vs {w['count_b']} for (i,j)=({w['i']},{w['j']})")
            return "\n".join(lines)
        arr = "{" + ",".join(map(str, inter["b"])) + ";" + ",".join(map(str, inter["c"])) + "}"
        cls = inter["classification"]
        kind = "primitive" if cls["primitive"] else \
            " and ".join(nm for nm in ("bipartite", "antipodal") if cls[nm])
        lines.append(f"distance-regular: d={inter['d']}, k={inter['k']}, array {arr}, {kind}")
    spec = report.get("spectral")
    if spec is not None:
        theta = ", ".join(f"{t:g}" for t in spec["theta"])
        mult = ", ".join(str(m) for m in spec["mult"])
        lines.append(f"spectrum: theta = ({theta}) with multiplicities ({mult})")
    qp = report.get("qpoly")
    if qp is not None:
        if qp["orderings"]:
            lines.append(f"Q-polynomial: orderings {qp['orderings']} "
                         f"(worst residual {qp['worst_residual']:.2e}, mode {qp['mode']})")
        else:
            lines.append(f"not Q-polynomial (mode {qp['mode']})")
        lines.append(f"decider consistency: {'ok' if qp['consistent'] else 'DISAGREE'}")
    conn = report.get("connectivity")
    if conn is not None:
        thm1 = conn["thm1"]
        if thm1.get("applicable", True):
            lines.append(f"last-two-spheres connected at every vertex: {thm1['all_connected']}")
        ck = conn["ck"]
        lines.append(f"dual sign change at s={ck['s']} (lower bound {ck['s_lower_bound']}); "
                     f"tail connected at every vertex: {ck['tail_all_connected']}")
        if "census" in conn:
            c = conn["census"]
            lines.append(f"outer-sphere census: {c['count']} components of size {c['component_size']}"
                         f" (isomorphism certified: {c['iso_certified']})")
    return "\n".join(lines)
