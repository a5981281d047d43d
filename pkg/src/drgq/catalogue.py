"""The desk-scale verification catalogue and its check battery.

One bundle per catalogue member carries everything downstream checks need;
the check functions each certify one claim and return a row for the summary
table.  Checks never assume vertex transitivity: anything quantified over
base vertices iterates over all of them.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .connectivity import (dual_sign_change_index, odd_component_census,
                           subconstituent, sweep_last_two, sweep_tail)
from .errors import MathAssertionError
from .families import FamilySpec
from .graphs import DistanceData, Graph, distance_data
from .intersection import (ClassificationFlags, IntersectionData, NotDRG,
                           check_distance_regular, classify)
from .qpoly import QPolyReport, qpoly_report
from .spectral import (SpectralData, compute_spectral_data,
                       inner_product_residual, standard_sequence)
from .tolerances import DEFAULT_TOLERANCES, Tolerances

CATALOGUE = (
    "petersen", "cycle:6", "hamming:3,2", "hamming:3,3", "hamming:4,2",
    "johnson:6,3", "johnson:7,3", "folded_cube:5", "folded_cube:7",
    "odd:3", "odd:4", "odd:5",
)

# residual bars used by the acceptance battery
EQ2_BOUND = 1e-8
IDEMPOTENT_BOUND = 1e-8
DUAL_ORACLE_BOUND = 1e-8


@dataclass
class Bundle:
    spec: FamilySpec
    graph: Graph
    dd: DistanceData
    ia: IntersectionData
    flags: ClassificationFlags
    sd: SpectralData
    tol: Tolerances
    mode: str
    seed: int
    jobs: int
    _qpoly: Optional[QPolyReport] = field(default=None, repr=False)

    @property
    def name(self) -> str:
        return str(self.spec)

    @property
    def qpoly(self) -> QPolyReport:
        if self._qpoly is None:
            self._qpoly = qpoly_report(self.dd, self.ia, self.sd, mode=self.mode,
                                       seed=self.seed, tol=self.tol, jobs=self.jobs)
        return self._qpoly


def build_bundle(spec_text: str, tol: Tolerances = DEFAULT_TOLERANCES,
                 mode: str = "auto", seed: int = 0, jobs: int = 1) -> Bundle:
    spec = FamilySpec.parse(spec_text)
    g = spec.build()
    dd = distance_data(g)
    res = check_distance_regular(g, dd)
    if isinstance(res, NotDRG):
        raise MathAssertionError(f"catalogue member {spec_text} failed regularity: {res}")
    sd = compute_spectral_data(dd, res, tol)
    return Bundle(spec, g, dd, res, classify(g, dd), sd, tol, mode, seed, jobs)


@dataclass
class CheckRow:
    graph: str
    check: str
    passed: bool
    detail: str
    seconds: float

    def format(self) -> str:
        status = "pass" if self.passed else "FAIL"
        return f"{self.graph:<14} {self.check:<18} {status:<5} {self.seconds:7.2f}s  {self.detail}"


def _row(bundle_name: str, check: str, fn: Callable[[], tuple[bool, str]]) -> CheckRow:
    t0 = time.perf_counter()
    try:
        passed, detail = fn()
    except MathAssertionError as exc:
        passed, detail = False, str(exc).splitlines()[0]
    return CheckRow(bundle_name, check, passed, detail, time.perf_counter() - t0)


def check_last_two(b: Bundle) -> Optional[CheckRow]:
    """Last two spheres connected at every vertex, for Q-polynomial d >= 3 members."""
    if b.ia.d < 3:
        return None

    def fn():
        if not b.qpoly.is_qpoly:
            return False, "expected this member to be Q-polynomial"
        ok, flags = sweep_last_two(b.graph, b.dd, b.jobs)
        bad = [i for i, f in enumerate(flags) if not f]
        return ok, f"{len(flags)} vertices" if ok else f"disconnected at {bad[:5]}"
    return _row(b.name, "last_two", fn)


def check_census(b: Bundle) -> Optional[CheckRow]:
    if b.spec.kind != "odd" or b.ia.d < 3:
        return None

    def fn():
        rec = odd_component_census(b.spec.params[0], all_vertices=True)
        return True, (f"{rec.count} components of {rec.expected_size}, "
                      f"iso x{rec.iso_components}, {rec.vertices_checked} vertices")
    return _row(b.name, "census", fn)


def check_inner_two_spheres_split(b: Bundle) -> Optional[CheckRow]:
    """Odd graphs: spheres 1 and 2 together induce a disconnected subgraph."""
    if b.spec.kind != "odd" or b.spec.params[0] not in (3, 4):
        return None

    def fn():
        from .connectivity import union_subconstituent
        from .graphs import connected_components
        for gamma in range(b.graph.n):
            sub, _ = union_subconstituent(b.graph, b.dd, gamma, 1, 2)
            if len(connected_components(sub)) == 1:
                return False, f"spheres 1-2 connected at vertex {gamma}"
        return True, f"disconnected at all {b.graph.n} vertices"
    return _row(b.name, "inner_split", fn)


def check_sphere_valencies(b: Bundle) -> Optional[CheckRow]:
    """Odd graphs: p^h_{1h} vanishes below the diameter, equals ceil((d+1)/2) at it."""
    if b.spec.kind != "odd":
        return None

    def fn():
        d = b.ia.d
        expect = (d + 2) // 2
        for h in range(1, d):
            if b.ia.intersection_number(h, 1, h) != 0:
                return False, f"p^{h}_(1,{h}) nonzero"
        if b.ia.intersection_number(d, 1, d) != expect:
            return False, f"p^{d}_(1,{d}) != {expect}"
        for gamma in range(b.graph.n):
            sub = subconstituent(b.graph, b.dd, gamma, d)
            degs = set(sub.degrees())
            if degs != {expect}:
                return False, f"outer sphere of {gamma} has degrees {sorted(degs)}"
        return True, f"outer sphere {expect}-regular at all vertices"
    return _row(b.name, "sphere_valency", fn)


def check_folded_edgeless(b: Bundle) -> Optional[CheckRow]:
    if b.spec.kind != "folded_cube" or b.ia.d < 3:
        return None

    def fn():
        from .connectivity import union_subconstituent
        from .graphs import connected_components
        for gamma in range(b.graph.n):
            for i in (1, 2):
                if subconstituent(b.graph, b.dd, gamma, i).num_edges != 0:
                    return False, f"sphere {i} of vertex {gamma} has edges"
            sub, _ = union_subconstituent(b.graph, b.dd, gamma, 2, b.ia.d)
            if len(connected_components(sub)) != 1:
                return False, f"spheres 2..{b.ia.d} disconnected at {gamma}"
        return True, "spheres 1,2 edgeless; outer union connected"
    return _row(b.name, "folded_spheres", fn)


def check_eq2(b: Bundle) -> CheckRow:
    def fn():
        worst = max(inner_product_residual(b.sd.idempotents[j], b.sd.dual[j], b.dd)
                    for j in range(b.ia.d + 1))
        return worst < EQ2_BOUND, f"max residual {worst:.2e}"
    return _row(b.name, "inner_product", fn)


def check_consistency(b: Bundle) -> CheckRow:
    def fn():
        qp = b.qpoly
        if not qp.consistent:
            return False, "; ".join(qp.disagreements)
        return True, (f"qpoly candidates {qp.qpoly_candidates} "
                      f"(worst residual {qp.worst_residual:.2e})")
    return _row(b.name, "qpoly_consistency", fn)


def check_idempotent_algebra(b: Bundle) -> CheckRow:
    def fn():
        ems = b.sd.idempotents
        n = b.graph.n
        d = b.ia.d
        worst = 0.0
        total = np.zeros((n, n))
        for i in range(d + 1):
            total += ems[i]
            for j in range(d + 1):
                prod = ems[i] @ ems[j]
                target = ems[i] if i == j else 0.0
                worst = max(worst, float(np.abs(prod - target).max()))
        worst = max(worst, float(np.abs(total - np.eye(n)).max()))
        worst = max(worst, float(np.abs(ems[0] - 1.0 / n).max()))
        traces_ok = all(abs(float(np.trace(ems[j])) - b.sd.mult[j]) <= 1e-6 * n
                        for j in range(d + 1))
        return worst < IDEMPOTENT_BOUND and traces_ok, f"max residual {worst:.2e}"
    return _row(b.name, "idempotents", fn)


def check_tail(b: Bundle) -> CheckRow:
    def fn():
        s = dual_sign_change_index(b.sd.dual[1], b.tol.dual_zero_snap)
        if 2 * s < b.ia.d:
            return False, f"s={s} below half the diameter"
        ok, flags = sweep_tail(b.graph, b.dd, s, b.jobs)
        bad = [i for i, f in enumerate(flags) if not f]
        return ok, f"s={s}, {len(flags)} vertices" if ok else f"s={s}, disconnected at {bad[:5]}"
    return _row(b.name, "tail", fn)


def check_dual_oracle(b: Bundle) -> CheckRow:
    def fn():
        worst = 0.0
        for j in range(b.ia.d + 1):
            oracle = b.sd.mult[j] * standard_sequence(b.ia, float(b.sd.theta[j]))
            scale = max(1.0, float(np.abs(oracle).max()))
            worst = max(worst, float(np.abs(b.sd.dual[j] - oracle).max()) / scale)
        return worst < DUAL_ORACLE_BOUND, f"max relative deviation {worst:.2e}"
    return _row(b.name, "dual_oracle", fn)


PER_GRAPH_CHECKS = (
    check_last_two, check_census, check_inner_two_spheres_split,
    check_sphere_valencies, check_folded_edgeless, check_eq2,
    check_consistency, check_idempotent_algebra, check_tail, check_dual_oracle,
)

CHECK_NAMES = ("last_two", "census", "inner_split", "sphere_valency", "folded_spheres",
               "inner_product", "qpoly_consistency", "idempotents", "tail", "dual_oracle")


def run_catalogue(specs=CATALOGUE, only: Optional[str] = None,
                  tol: Tolerances = DEFAULT_TOLERANCES, mode: str = "auto",
                  seed: int = 0, jobs: int = 1) -> list[CheckRow]:
    if only is not None and only not in CHECK_NAMES:
        raise ValueError(f"unknown check {only!r}; expected one of {', '.join(CHECK_NAMES)}")
    rows = []
    for spec_text in specs:
        bundle = build_bundle(spec_text, tol=tol, mode=mode, seed=seed, jobs=jobs)
        for check in PER_GRAPH_CHECKS:
            row = check(bundle)
            if row is not None and (only is None or row.check == only):
                rows.append(row)
    return rows
