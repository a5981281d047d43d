"""Q-polynomial property deciders.

Three independent routes, kept deliberately separate so they can check one
another:

* the balanced-set sweep verifies, instance by instance, the vector identity
  that ties sums of projected standard-basis vectors over the two mixed
  distance sets to a scaled difference of endpoint projections;
* ordering recovery works in dual-coordinate space, where entrywise products
  of Bose-Mesner idempotents are diagonal, and asks that each entrywise power
  of a candidate's dual vector admits exactly one new idempotent into its span;
* the Krein oracle computes q^h_ij = n tr((E_i o E_j) E_h) / m_h and looks for
  orderings whose q^1 slice is irreducible tridiagonal.

The sweep checks the identity entrywise over all coordinates, which is
strictly stronger than inner-product probes and no more expensive here.
Residuals are normalized by max(lhs, rhs, 1/n) so verdicts do not depend on
the global 1/n scaling of the idempotents.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import MathAssertionError, NumericalError
from .graphs import DistanceData
from .intersection import IntersectionData
from .parallel import pmap
from .spectral import SpectralData
from .tolerances import DEFAULT_TOLERANCES, Tolerances

FULL_MODE_LIMIT = 200       # acceptance default: full sweep up to this many vertices
SAMPLE_INSTANCES = 10_000

Witness = tuple[int, int, int, int, int, float]  # (h, i, j, x, y, residual)


@dataclass
class BalancedSetResult:
    candidate: int
    qpoly: bool
    worst_residual: float
    mode: str
    seed: Optional[int]
    instances: int
    witness: Optional[Witness] = None
    duplicate_dual_index: Optional[int] = None  # h with dual_0 = dual_h, when the guard fired


def resolve_mode(n: int, mode: str) -> str:
    if mode == "auto":
        return "full" if n <= FULL_MODE_LIMIT else "sampled"
    if mode not in ("full", "sampled"):
        raise ValueError(f"mode must be full, sampled, or auto, got {mode!r}")
    return mode


def _coefficients(ia: IntersectionData, dual: np.ndarray) -> np.ndarray:
    """coeff[h, i, j] = p^h_ij (dual_i - dual_j) / (dual_0 - dual_h), h >= 1."""
    d = ia.d
    coeff = np.zeros((d + 1, d + 1, d + 1))
    diff = dual[:, None] - dual[None, :]
    for h in range(1, d + 1):
        coeff[h] = ia.p[h] * diff / (dual[0] - dual[h])
    return coeff


def _sweep_slice(xs, e_mat, dist, amats, coeff, ij_pairs, rel_tol, n):
    """Full entrywise check of every instance with x in ``xs``; all y at once."""
    worst = 0.0
    witness: Optional[Witness] = None
    inv_n = 1.0 / n
    for x in xs:
        dx = dist[x]
        ex = e_mat[:, x]
        for i, j in ij_pairs:
            mask_i = (dx == i).astype(np.float64)
            mask_j = (dx == j).astype(np.float64)
            lhs = (e_mat * mask_i) @ amats[j] - (e_mat * mask_j) @ amats[i]
            cvec = coeff[dx, i, j]
            rhs = (ex[:, None] - e_mat) * cvec
            res = np.abs(lhs - rhs).max(axis=0)
            scale = np.maximum(np.abs(lhs).max(axis=0), np.abs(rhs).max(axis=0))
            np.maximum(scale, inv_n, out=scale)
            rel = res / scale
            rel[x] = 0.0  # the h = 0 slot is not an instance
            w = float(rel.max())
            if w > worst:
                worst = w
            if w > rel_tol:
                for y in np.nonzero(rel > rel_tol)[0]:
                    cand = (int(dx[y]), i, j, x, int(y), float(rel[y]))
                    if witness is None or cand[:5] < witness[:5]:
                        witness = cand
    return worst, witness


def _instance_residual(x, y, i, j, e_mat, dist, coeff, n):
    row_x, row_y = dist[x], dist[y]
    set_ij = np.nonzero((row_x == i) & (row_y == j))[0]
    set_ji = np.nonzero((row_x == j) & (row_y == i))[0]
    lhs = e_mat[:, set_ij].sum(axis=1) - e_mat[:, set_ji].sum(axis=1)
    rhs = coeff[dist[x, y], i, j] * (e_mat[:, x] - e_mat[:, y])
    res = float(np.abs(lhs - rhs).max())
    scale = max(float(np.abs(lhs).max(initial=0.0)), float(np.abs(rhs).max()), 1.0 / n)
    return res / scale


def balanced_set_check(dd: DistanceData, ia: IntersectionData, sd: SpectralData,
                       candidate: int, mode: str = "auto", seed: int = 0,
                       sample_size: int = SAMPLE_INSTANCES,
                       tol: Tolerances = DEFAULT_TOLERANCES,
                       jobs: int = 1) -> BalancedSetResult:
    """Decide the balanced-set condition for one nontrivial idempotent.

    Full mode checks every (h, i<j, x, y) instance; sampled mode checks a
    seeded pseudorandom subset, round-robin over the (i, j) cells so every
    cell gets coverage.  Duplicate dual values against index 0 short-circuit
    to a negative verdict (the condition's own precondition).
    """
    if candidate == 0:
        raise ValueError("the trivial idempotent is not a Q-polynomial candidate")
    if not 1 <= candidate <= sd.d:
        raise IndexError(f"idempotent index {candidate} outside 1..{sd.d}")
    d, n = sd.d, sd.n
    dual = sd.dual[candidate]
    mode = resolve_mode(n, mode)

    snap = tol.dual_zero_snap * max(1.0, abs(dual[0]))
    for h in range(1, d + 1):
        if abs(dual[0] - dual[h]) <= snap:
            return BalancedSetResult(candidate, False, 0.0, mode, None, 0,
                                     duplicate_dual_index=h)

    coeff = _coefficients(ia, dual)
    e_mat = sd.idempotents[candidate]
    amats = [m.astype(np.float64) for m in dd.distance_matrices]
    ij_pairs = [(i, j) for i in range(d + 1) for j in range(i + 1, d + 1)]

    if mode == "full":
        slices = np.array_split(np.arange(n), max(1, jobs))
        parts = pmap(lambda xs: _sweep_slice(xs, e_mat, dd.dist, amats, coeff,
                                             ij_pairs, tol.balanced_rel, n),
                     slices, jobs)
        worst = max(p[0] for p in parts)
        witnesses = [p[1] for p in parts if p[1] is not None]
        witness = min(witnesses, key=lambda w: w[:5]) if witnesses else None
        instances = n * (n - 1) * len(ij_pairs)
        used_seed = None
    else:
        rng = np.random.default_rng(seed)
        worst = 0.0
        witness = None
        for t in range(sample_size):
            i, j = ij_pairs[t % len(ij_pairs)]
            x = int(rng.integers(n))
            y = int(rng.integers(n - 1))
            if y >= x:
                y += 1
            rel = _instance_residual(x, y, i, j, e_mat, dd.dist, coeff, n)
            if rel > worst:
                worst = rel
            if rel > tol.balanced_rel:
                cand = (int(dd.dist[x, y]), i, j, x, y, rel)
                if witness is None or cand[:5] < witness[:5]:
                    witness = cand
        instances = sample_size
        used_seed = seed

    verdict = witness is None
    if verdict:
        # the theory promises mutually distinct dual values on a positive verdict
        for a in range(d + 1):
            for b in range(a + 1, d + 1):
                if abs(dual[a] - dual[b]) <= snap:
                    raise MathAssertionError(
                        f"balanced-set sweep passed for idempotent {candidate} but dual "
                        f"values {a} and {b} coincide ({dual[a]}); this should be impossible")
    return BalancedSetResult(candidate, verdict, worst, mode, used_seed, instances, witness)


# ---------------------------------------------------------------------------
# Ordering recovery in dual-coordinate space.
# ---------------------------------------------------------------------------

_SPAN_MEMBER = 1e-7
_SPAN_NONMEMBER = 1e-4
_SPAN_RANK = 1e-10


def _span_residual(vec: np.ndarray, basis: list[np.ndarray]) -> float:
    r = vec.copy()
    for q in basis:
        r -= (q @ r) * q
    return float(np.linalg.norm(r))


def _ordering_for_candidate(sd: SpectralData, c: int) -> Optional[list[int]]:
    d = sd.d
    t = sd.dual[c] / sd.dual[c][0]
    unit = [sd.dual[j] / np.linalg.norm(sd.dual[j]) for j in range(d + 1)]

    basis: list[np.ndarray] = []
    order: list[int] = []
    remaining = set(range(d + 1))
    for p in range(d + 1):
        v = t ** p
        r = v.copy()
        for q in basis:
            r -= (q @ r) * q
        if np.linalg.norm(r) <= _SPAN_RANK * np.linalg.norm(v):
            return None  # span stalled: no new idempotent can enter at this degree
        basis.append(r / np.linalg.norm(r))

        entering = []
        for j in sorted(remaining):
            resid = _span_residual(unit[j], basis)
            if resid < _SPAN_MEMBER:
                entering.append(j)
            elif resid < _SPAN_NONMEMBER:
                raise NumericalError(
                    f"span membership of idempotent {j} at degree {p} is ambiguous "
                    f"(residual {resid:.3e})")
        if len(entering) != 1:
            return None
        order.append(entering[0])
        remaining.remove(entering[0])
    assert order[0] == 0 and order[1] == c
    return order


def qpoly_orderings(sd: SpectralData) -> list[list[int]]:
    """All orderings realizing the entrywise-polynomial property.

    At most one ordering exists per candidate second idempotent, because the
    span chain determines each later position uniquely.
    """
    out = []
    for c in range(1, sd.d + 1):
        order = _ordering_for_candidate(sd, c)
        if order is not None:
            out.append(order)
    return out


# ---------------------------------------------------------------------------
# Krein-parameter oracle.
# ---------------------------------------------------------------------------

def krein_parameters(sd: SpectralData, tol: Tolerances = DEFAULT_TOLERANCES,
                     k: Optional[float] = None) -> np.ndarray:
    """The tensor q^h_ij = n tr((E_i o E_j) E_h) / m_h, with a nonnegativity check."""
    d, n = sd.d, sd.n
    ems = sd.idempotents
    q = np.empty((d + 1, d + 1, d + 1))
    for i in range(d + 1):
        for j in range(i, d + 1):
            prod = ems[i] * ems[j]
            for h in range(d + 1):
                val = n * float(np.sum(prod * ems[h])) / sd.mult[h]
                q[h, i, j] = q[h, j, i] = val
    eps = tol.matrix_eps(k if k is not None else float(sd.theta[0]))
    low = float(q.min())
    if low < -10 * eps:
        raise NumericalError(f"Krein parameter {low:.3e} is significantly negative")
    return q


def krein_orderings(q: np.ndarray) -> list[list[int]]:
    """Orderings whose first-slice pattern is irreducible tridiagonal.

    Searches, per candidate c, for permutations sigma with sigma(0)=0 and
    sigma(1)=c such that q^c on sigma is zero beyond the first off-diagonal
    and positive on it.  Depth-first with the zero constraints pruning as
    the path grows.
    """
    d = q.shape[0] - 1
    eps = 1e-7 * max(1.0, float(q.max()))
    out = []
    for c in range(1, d + 1):
        found: list[list[int]] = []

        def extend(path: list[int]) -> None:
            if len(path) == d + 1:
                found.append(list(path))
                return
            for y in range(1, d + 1):
                if y in path:
                    continue
                if q[c, path[-1], y] <= eps:
                    continue
                if any(q[c, path[a], y] > eps for a in range(len(path) - 1)):
                    continue
                path.append(y)
                extend(path)
                path.pop()

        if q[c, 0, c] > eps:  # q^c_{0,c} = 1; the guard is just shape sanity
            extend([0, c])
        out.extend(found)
    return out


# ---------------------------------------------------------------------------
# Cross-decider consistency.
# ---------------------------------------------------------------------------

@dataclass
class QPolyReport:
    balanced: dict[int, BalancedSetResult]
    span_orderings: list[list[int]]
    krein_orderings: list[list[int]]
    krein_tensor: np.ndarray
    consistent: bool
    disagreements: list[str]

    @property
    def qpoly_candidates(self) -> list[int]:
        return sorted(o[1] for o in self.span_orderings)

    @property
    def is_qpoly(self) -> bool:
        return bool(self.span_orderings)

    @property
    def worst_residual(self) -> float:
        """Tightness of the positive certifications (0 when none passed)."""
        return max((r.worst_residual for r in self.balanced.values() if r.qpoly), default=0.0)


def qpoly_report(dd: DistanceData, ia: IntersectionData, sd: SpectralData,
                 mode: str = "auto", seed: int = 0,
                 tol: Tolerances = DEFAULT_TOLERANCES, jobs: int = 1) -> QPolyReport:
    """Run all three deciders and compare them idempotent by idempotent."""
    balanced = {e: balanced_set_check(dd, ia, sd, e, mode=mode, seed=seed, tol=tol, jobs=jobs)
                for e in range(1, sd.d + 1)}
    span = qpoly_orderings(sd)
    q = krein_parameters(sd, tol, k=ia.k)
    krein = krein_orderings(q)

    span_set = {o[1] for o in span}
    krein_set = {o[1] for o in krein}
    disagreements = []
    for e in range(1, sd.d + 1):
        verdicts = (balanced[e].qpoly, e in span_set, e in krein_set)
        if len(set(verdicts)) != 1:
            disagreements.append(
                f"idempotent {e}: balanced={verdicts[0]} span={verdicts[1]} "
                f"krein={verdicts[2]} (balanced worst residual "
                f"{balanced[e].worst_residual:.3e}, witness {balanced[e].witness})")
    if sorted(span) != sorted(krein):
        disagreements.append(f"ordering lists differ: span={span} krein={krein}")
    return QPolyReport(balanced, span, krein, q, not disagreements, disagreements)


def qpoly_consistency(dd: DistanceData, ia: IntersectionData, sd: SpectralData,
                      mode: str = "auto", seed: int = 0,
                      tol: Tolerances = DEFAULT_TOLERANCES, jobs: int = 1) -> bool:
    """True when the three deciders agree for every nontrivial idempotent."""
    return qpoly_report(dd, ia, sd, mode=mode, seed=seed, tol=tol, jobs=jobs).consistent
