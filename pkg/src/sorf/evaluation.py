"""Evaluation of the recurrence functions, moment matrices and error metrics.

The functions r_0, r_1, ... encoded by an unreduced Hessenberg pencil obey

    r_j(t) (t K[j+1,j] - H[j+1,j]) = sum_{i<=j} r_{i-1}(t) (H[i,j] - t K[i,j])

(1-based columns), with r_0 = 1/||w||_2.  Derivatives propagate through the
product rule, so no numerical differentiation enters the tables; finite
differences are used only by the tests.

Moment matrices collect the inner products of the computed functions: the
discrete one evaluates the defining sum of the inner product at its nodes,
the continuous one integrates with Clenshaw-Curtis (weight folded into the
integrand, doubled-order self-check).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import AccuracyError, PoleCollisionError
from .pencil import is_infinite_pole
from .quadrature import clenshaw_curtis
from .sobolev import DiscreteSobolevSpec
from .updating import IEPSolution


@dataclass(frozen=True)
class SorfTable:
    """values[k, d, j] = d-th derivative of function k at points[j]."""

    values: np.ndarray
    points: np.ndarray

    @property
    def nfun(self) -> int:
        return self.values.shape[0]

    @property
    def max_deriv(self) -> int:
        return self.values.shape[1] - 1


def evaluate_sorfs(
    H: np.ndarray,
    K: np.ndarray,
    wnorm: float,
    points,
    max_deriv: int = 0,
    nfun: int | None = None,
) -> SorfTable:
    """Evaluate functions r_0 .. r_{nfun-1} and derivatives at the points.

    Column j of the pencil yields r_j; evaluation close to a pole of the
    recurrence (vanishing denominator t K[j+1,j] - H[j+1,j]) is refused.
    """
    m = H.shape[0]
    if nfun is None:
        nfun = m
    if not 1 <= nfun <= m:
        raise ValueError(f"nfun must lie in 1..{m}")
    pts = np.atleast_1d(np.asarray(points, dtype=complex))
    npts = pts.size
    vals = np.zeros((nfun, max_deriv + 1, npts), dtype=complex)
    vals[0, 0, :] = 1.0 / wnorm
    for j in range(1, nfun):
        hcol = H[:j, j - 1]
        kcol = K[:j, j - 1]
        denom = pts * K[j, j - 1] - H[j, j - 1]
        local = np.abs(pts * K[j, j - 1]) + abs(H[j, j - 1])
        bad = np.abs(denom) <= 1e-13 * local
        if np.any(bad):
            raise PoleCollisionError(
                f"evaluation point {pts[bad][0]} collides with a pole of r_{j}"
            )
        for d in range(max_deriv + 1):
            rhs = hcol @ vals[:j, d, :] - pts * (kcol @ vals[:j, d, :])
            if d > 0:
                rhs -= d * (kcol @ vals[:j, d - 1, :])
                rhs -= d * K[j, j - 1] * vals[j, d - 1, :]
            vals[j, d, :] = rhs / denom
    return SorfTable(vals, pts)


def evaluate_solution(sol: IEPSolution, points, max_deriv: int = 0, nfun: int | None = None) -> SorfTable:
    return evaluate_sorfs(sol.H, sol.K, sol.wnorm, points, max_deriv, nfun)


def _derivative_coefficients(spec: DiscreteSobolevSpec) -> list[tuple[int, int, float]]:
    """(node index, derivative order, |w_j|^2 |prod alpha / i!|^2) triples."""
    out = []
    for j, (s, al, wj) in enumerate(zip(spec.orders, spec.alphas, spec.weights)):
        prod = 1.0 + 0.0j
        fact = 1.0
        for i in range(s + 1):
            if i > 0:
                prod *= al[i - 1]
                fact *= i
            out.append((j, i, abs(wj) ** 2 * abs(prod / fact) ** 2))
    return out


def discrete_moment_matrix(spec: DiscreteSobolevSpec, table: SorfTable) -> np.ndarray:
    """Gram matrix of the tabulated functions under the discrete inner product."""
    if table.points.size != spec.sigma:
        raise ValueError("table points do not match the spec nodes")
    if table.max_deriv < max(spec.orders):
        raise ValueError("table lacks the derivative orders required by the spec")
    n = table.nfun
    M = np.zeros((n, n), dtype=complex)
    for j, i, c in _derivative_coefficients(spec):
        v = table.values[:, i, j]
        M += c * np.outer(v, np.conj(v))
    return M


def continuous_moment_matrix(
    H: np.ndarray,
    K: np.ndarray,
    wnorm: float,
    mu: float,
    lam: float,
    n: int,
    cc_order: int = 400,
) -> np.ndarray:
    """Gram matrix under the continuous Gegenbauer-Sobolev inner product.

    Entries are Clenshaw-Curtis integrals with the weight (1-t^2)^mu folded
    into the integrand; the computation is accepted only when doubling the
    order reproduces it to 1e-12 relative.
    """

    def assemble(order: int) -> np.ndarray:
        rule = clenshaw_curtis(order)
        t = rule.nodes
        table = evaluate_sorfs(H, K, wnorm, t, max_deriv=1, nfun=n)
        wq = rule.weights * (1.0 - t**2) ** mu
        V0 = table.values[:, 0, :]
        V1 = table.values[:, 1, :]
        M = (V0 * wq) @ V0.conj().T
        if lam != 0.0:
            M += lam * (V1 * wq) @ V1.conj().T
        return M

    M1 = assemble(cc_order)
    M2 = assemble(2 * cc_order)
    scale = max(1.0, float(np.max(np.abs(M2))))
    if np.max(np.abs(M1 - M2)) > 1e-12 * scale:
        raise AccuracyError("continuous moment matrix failed the doubled-order self-check")
    return M2


def metric_recurrence(sys, sol: IEPSolution) -> float:
    """||J Q K - Q H||_2 / max(||J Q K||_2, ||Q H||_2)."""
    JQK = sys.J @ sol.Q @ sol.K
    QH = sol.Q @ sol.H
    denom = max(np.linalg.norm(JQK, 2), np.linalg.norm(QH, 2))
    return float(np.linalg.norm(JQK - QH, 2) / denom)


def metric_poles(sol: IEPSolution, poles) -> float:
    """Largest relative deviation of the pencil's subdiagonal ratios from the
    prescribed poles; infinite poles are scored by the reciprocal ratio and a
    zero pole by the absolute difference."""
    H, K = sol.H, sol.K
    worst = 0.0
    for k, psi in enumerate(poles):
        h = H[k + 1, k]
        kk = K[k + 1, k]
        if is_infinite_pole(psi):
            if h == 0.0:
                return np.inf
            err = abs(kk / h)
        elif psi == 0.0:
            if kk == 0.0:
                return np.inf
            err = abs(h / kk)
        else:
            if kk == 0.0:
                return np.inf
            err = abs(h / kk - complex(psi)) / abs(complex(psi))
        worst = max(worst, float(err))
    return worst


def metric_orthonormality(sol: IEPSolution) -> float:
    """||Q^H Q - I||_2."""
    m = sol.m
    return float(np.linalg.norm(sol.Q.conj().T @ sol.Q - np.eye(m), 2))


def metric_sobolev(M: np.ndarray) -> float:
    """||M - I||_2 for a moment matrix M."""
    return float(np.linalg.norm(M - np.eye(M.shape[0]), 2))


def normalize_table(table: SorfTable) -> np.ndarray:
    """Each function scaled by its largest-magnitude tabulated value."""
    flat = table.values.reshape(table.nfun, -1)
    out = np.empty_like(flat)
    for k in range(table.nfun):
        idx = int(np.argmax(np.abs(flat[k])))
        ref = flat[k, idx]
        if ref == 0.0:
            raise ValueError(f"function {k} is identically zero on the table")
        out[k] = flat[k] / ref
    return out


def table_agreement(t1: SorfTable, t2: SorfTable) -> float:
    """Largest relative deviation between two tables after aligning each
    function's free unimodular factor (anchored at t1's largest value)."""
    if t1.values.shape != t2.values.shape:
        raise ValueError("tables have different shapes")
    f1 = t1.values.reshape(t1.nfun, -1)
    f2 = t2.values.reshape(t2.nfun, -1)
    worst = 0.0
    for k in range(t1.nfun):
        idx = int(np.argmax(np.abs(f1[k])))
        if f2[k, idx] == 0.0:
            return np.inf
        u = f1[k, idx] / f2[k, idx]
        u /= abs(u)
        scale = np.max(np.abs(f1[k]))
        worst = max(worst, float(np.max(np.abs(f1[k] - u * f2[k])) / scale))
    return worst
