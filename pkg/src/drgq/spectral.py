"""Eigenvalues, primitive idempotents, and dual eigenvalue sequences.

Eigenvalues come from the (d+1)x(d+1) tridiagonal intersection matrix, not
the full adjacency matrix: after a diagonal similarity it is symmetric with
positive off-diagonals, so its eigenvalues are simple and a Sturm-count
bisection brackets each one individually.  Values within snapping distance
of an integer are rounded and everything downstream re-verifies itself
through projector residuals.

Idempotents are built as the Lagrange projector products
prod_{l != j} (A - theta_l I)/(theta_j - theta_l), applied factor by factor
so intermediates stay O(1).  Dual sequences are read off idempotent entries
per distance class (entry constancy on each class is itself checked); the
three-term recurrence lives in ``standard_sequence`` and serves elsewhere as
an independent oracle for those reads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericalError
from .graphs import DistanceData
from .intersection import IntersectionData
from .tolerances import DEFAULT_TOLERANCES, Tolerances


def _sturm_count(alpha: np.ndarray, beta_sq: np.ndarray, x: float, pivmin: float) -> int:
    """Number of eigenvalues of the symmetric tridiagonal matrix below x.

    Sylvester inertia of the LDL^T pivots of (T - xI).  A vanishing pivot
    (x hits an eigenvalue of a leading minor) is clamped to -pivmin and
    counted as negative, keeping the count monotone in x.
    """
    count = 0
    dprev = 1.0
    for i in range(alpha.size):
        d = alpha[i] - x
        if i:
            d -= beta_sq[i - 1] / dprev
        if abs(d) < pivmin:
            d = -pivmin
        if d < 0:
            count += 1
        dprev = d
    return count


def tridiagonal_eigenvalues(alpha: np.ndarray, beta_sq: np.ndarray,
                            rel_tol: float = 1e-12) -> np.ndarray:
    """All eigenvalues of a symmetric tridiagonal matrix, ascending.

    ``alpha`` holds the diagonal, ``beta_sq`` the squared off-diagonal.
    Bisection on the Sturm count; each interval is shrunk to ``rel_tol``
    relative width.
    """
    alpha = np.asarray(alpha, dtype=np.float64)
    beta_sq = np.asarray(beta_sq, dtype=np.float64)
    m = alpha.size
    radius = np.zeros(m)
    if m > 1:
        beta = np.sqrt(beta_sq)
        radius[:-1] += beta
        radius[1:] += beta
    lo0 = float((alpha - radius).min()) - 1.0
    hi0 = float((alpha + radius).max()) + 1.0
    scale = max(1.0, abs(lo0), abs(hi0))
    pivmin = 1e-300 * max(1.0, float(beta_sq.max(initial=0.0)))

    out = np.empty(m)
    for idx in range(m):
        lo, hi = lo0, hi0
        # invariant: count(lo) <= idx < count(hi)
        while hi - lo > rel_tol * scale:
            mid = 0.5 * (lo + hi)
            if _sturm_count(alpha, beta_sq, mid, pivmin) <= idx:
                lo = mid
            else:
                hi = mid
        out[idx] = 0.5 * (lo + hi)
    return out


def standard_sequence(ia: IntersectionData, theta: float) -> np.ndarray:
    """u_0..u_d from the three-term recurrence; u_0 = 1, u_1 = theta/k."""
    d, k = ia.d, ia.k
    a = ia.a
    u = np.empty(d + 1)
    u[0] = 1.0
    if d >= 1:
        u[1] = theta / k
    for i in range(1, d):
        u[i + 1] = ((theta - a[i]) * u[i] - ia.c[i - 1] * u[i - 1]) / ia.b[i]
    return u


def eigenvalues_from_intersection_array(ia: IntersectionData,
                                        tol: Tolerances = DEFAULT_TOLERANCES
                                        ) -> tuple[np.ndarray, tuple[int, ...]]:
    """d+1 distinct adjacency eigenvalues (descending) and their multiplicities.

    Multiplicities use the standard-sequence formula
    m = n / sum_i k_i u_i(theta)^2 and must round cleanly to positive
    integers summing to n.
    """
    d = ia.d
    alpha = np.array(ia.a, dtype=np.float64)
    beta_sq = np.array([ia.b[i] * ia.c[i] for i in range(d)], dtype=np.float64)
    theta = tridiagonal_eigenvalues(alpha, beta_sq, rel_tol=tol.eig_rel)[::-1].copy()

    snapped = np.round(theta) + 0.0  # also normalizes -0.0
    close = np.abs(theta - snapped) < tol.integer_snap
    theta[close] = snapped[close]

    gaps = -np.diff(theta)
    if d >= 1 and gaps.min() < 1e-9 * max(1.0, ia.k):
        raise NumericalError(f"eigenvalues not distinct: {theta.tolist()}")
    if abs(theta[0] - ia.k) > 1e-9 * max(1.0, ia.k):
        raise NumericalError(f"largest eigenvalue {theta[0]} does not match valency {ia.k}")
    theta[0] = float(ia.k)

    ks = np.array(ia.sphere_sizes, dtype=np.float64)
    mult = []
    for t in theta:
        u = standard_sequence(ia, float(t))
        m = ia.n / float(ks @ (u * u))
        m_int = round(m)
        if abs(m - m_int) > tol.mult_round * ia.n or m_int < 1:
            raise NumericalError(f"multiplicity {m} for eigenvalue {t} does not round cleanly")
        mult.append(m_int)
    if sum(mult) != ia.n:
        raise NumericalError(f"multiplicities {mult} do not sum to {ia.n}")
    if mult[0] != 1:
        raise NumericalError(f"trivial eigenvalue must be simple, got multiplicity {mult[0]}")
    return theta, tuple(mult)


def primitive_idempotents(dd: DistanceData, theta: np.ndarray,
                          eps: float) -> list[np.ndarray]:
    """Spectral projectors E_0..E_d of the adjacency matrix.

    Each projector's idempotency residual is verified against ``eps``.
    """
    adj = dd.distance_matrices[1].astype(np.float64)
    n = adj.shape[0]
    eye = np.eye(n)
    idempotents = []
    for j, tj in enumerate(theta):
        e = None
        for l, tl in enumerate(theta):
            if l == j:
                continue
            factor = (adj - tl * eye) / (tj - tl)
            e = factor if e is None else e @ factor
        assert e is not None
        e = 0.5 * (e + e.T)
        resid = float(np.abs(e @ e - e).max())
        if resid > eps:
            raise NumericalError(f"projector {j} idempotency residual {resid:.3e} exceeds {eps:.3e}")
        idempotents.append(e)
    return idempotents


def dual_sequence_from_idempotent(e: np.ndarray, dd: DistanceData, eps: float) -> np.ndarray:
    """Read n * (constant entry of E on each distance class), verifying constancy."""
    n = e.shape[0]
    out = np.empty(dd.diameter + 1)
    for h, mask in enumerate(dd.distance_matrices):
        vals = e[mask.astype(bool)]
        spread = float(vals.max() - vals.min())
        if spread > eps:
            raise NumericalError(
                f"idempotent entries vary by {spread:.3e} on distance class {h}; "
                "input is not distance-regular or numerics broke down")
        out[h] = n * float(vals.mean())
    return out


def inner_product_residual(e: np.ndarray, dual: np.ndarray, dd: DistanceData) -> float:
    """max over pairs x,y of |<E x, E y> - dual[dist(x,y)] / n|."""
    n = e.shape[0]
    target = np.zeros((n, n))
    for h, mask in enumerate(dd.distance_matrices):
        target += (dual[h] / n) * mask
    return float(np.abs(e @ e - target).max())


def check_inner_product_identity(sd: "SpectralData", dd: DistanceData, j: int) -> float:
    """Residual of the inner-product identity for one stored idempotent."""
    return inner_product_residual(sd.idempotents[j], sd.dual[j], dd)


def dual_eigenvalue_sequence(sd: "SpectralData", dd: DistanceData, j: int,
                             tol: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """Re-read the dual sequence of E_j from its entries, verifying constancy."""
    eps = tol.matrix_eps(float(sd.theta[0]))
    return dual_sequence_from_idempotent(sd.idempotents[j], dd, eps)


@dataclass
class SpectralData:
    """Spectrum, projectors, and dual sequences, eigenvalues strictly decreasing."""

    theta: np.ndarray                # shape (d+1,), theta[0] = k
    mult: tuple[int, ...]            # m_0 = 1, sum = n
    idempotents: list[np.ndarray]
    dual: np.ndarray                 # dual[j, h] = h-th dual eigenvalue for E_j
    n: int
    d: int

    def dual_sequence(self, j: int) -> np.ndarray:
        if not 0 <= j <= self.d:
            raise IndexError(f"idempotent index {j} outside 0..{self.d}")
        return self.dual[j]


def compute_spectral_data(dd: DistanceData, ia: IntersectionData,
                          tol: Tolerances = DEFAULT_TOLERANCES) -> SpectralData:
    """Full spectral pipeline with its internal cross-checks.

    The multiplicities from the standard-sequence formula must agree with
    the rounded projector traces; disagreement is a numerical failure.
    """
    eps = tol.matrix_eps(ia.k)
    theta, mult = eigenvalues_from_intersection_array(ia, tol)
    idempotents = primitive_idempotents(dd, theta, eps)
    dual = np.empty((ia.d + 1, ia.d + 1))
    for j, e in enumerate(idempotents):
        tr = float(np.trace(e))
        if abs(tr - mult[j]) > tol.mult_round * ia.n:
            raise NumericalError(
                f"trace of projector {j} is {tr}, expected multiplicity {mult[j]}")
        dual[j] = dual_sequence_from_idempotent(e, dd, eps)
    return SpectralData(theta, mult, idempotents, dual, ia.n, ia.d)
