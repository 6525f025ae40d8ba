"""Quadrature rules on [-1, 1].

Three constructions feed the discretized Sobolev inner product:

* Gauss rules for the Gegenbauer weight (1-t^2)^mu, via the three-term
  recurrence of the Jacobi polynomials with alpha = beta = mu and the
  Golub-Welsch eigenvalue route (Gautschi, "Orthogonal Polynomials:
  Computation and Approximation").
* Gauss rules exact on rational function spaces with prescribed real poles
  outside [-1, 1].  These are built from the modified measure
  d(mu) / prod_k (t - xi_k)^2 by a discrete Stieltjes procedure on a large
  auxiliary Gauss-Gegenbauer rule, followed by Golub-Welsch; the weights are
  de-modified afterwards.
* Clenshaw-Curtis rules with unit weight, used as the reference integrator
  everywhere (callers fold the weight function into the integrand).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .errors import ConfigError, IllPosedMeasureError, PositivityError

#: minimum admissible gap between quadrature nodes
NODE_GAP = 1e-12


@dataclass(frozen=True)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray
    provenance: str = "imported"

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)
        if nodes.ndim != 1 or nodes.shape != weights.shape:
            raise PositivityError("nodes and weights must be matching 1-d arrays")
        if nodes.size == 0:
            raise PositivityError("empty quadrature rule")
        if not np.all(np.isfinite(nodes)) or not np.all(np.isfinite(weights)):
            raise PositivityError("quadrature rule contains non-finite entries")
        if np.any(weights <= 0.0):
            raise PositivityError("quadrature weights must be strictly positive")
        if nodes.size > 1 and np.min(np.diff(np.sort(nodes))) <= NODE_GAP:
            raise PositivityError(f"quadrature nodes closer than {NODE_GAP}")

    @property
    def n(self) -> int:
        return self.nodes.size

    def integrate(self, f):
        return np.sum(self.weights * f(self.nodes))


@dataclass(frozen=True)
class ThreeTermCoefficients:
    """Recurrence shifts alpha_k and norms beta_k of an orthonormal polynomial
    family; beta_0 carries the total mass of the measure."""

    alpha: np.ndarray
    beta: np.ndarray

    def __post_init__(self):
        if np.any(np.asarray(self.beta) <= 0.0):
            raise PositivityError("recurrence norms beta_k must be positive")

    @property
    def n(self) -> int:
        return len(self.alpha)


def _gegenbauer_mass(mu: float) -> float:
    # int_{-1}^{1} (1-t^2)^mu dt = 2^(2mu+1) * B(mu+1, mu+1)
    return 2.0 ** (2 * mu + 1) * math.exp(2 * math.lgamma(mu + 1) - math.lgamma(2 * mu + 2))


def gegenbauer_coefficients(mu: float, n: int) -> ThreeTermCoefficients:
    """Three-term coefficients of the weight (1-t^2)^mu on [-1, 1].

    Jacobi recurrence with alpha = beta = mu; all shifts vanish by symmetry.
    """
    if mu <= -1.0:
        raise ConfigError("Gegenbauer exponent must satisfy mu > -1")
    alpha = np.zeros(n)
    beta = np.empty(n)
    beta[0] = _gegenbauer_mass(mu)
    if n > 1:
        beta[1] = 1.0 / (3.0 + 2.0 * mu)
    for k in range(2, n):
        beta[k] = k * (k + 2.0 * mu) / ((2.0 * k + 2.0 * mu + 1.0) * (2.0 * k + 2.0 * mu - 1.0))
    return ThreeTermCoefficients(alpha, beta)


def golub_welsch(coeffs: ThreeTermCoefficients) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of the Gauss rule from recurrence coefficients."""
    n = coeffs.n
    if n == 1:
        return np.array([coeffs.alpha[0]]), np.array([coeffs.beta[0]])
    nodes, vecs = eigh_tridiagonal(coeffs.alpha, np.sqrt(coeffs.beta[1:]))
    weights = coeffs.beta[0] * vecs[0, :] ** 2
    order = np.argsort(nodes)
    return nodes[order], weights[order]


def gauss_gegenbauer(mu: float, n: int) -> QuadratureRule:
    """n-node Gauss rule for the weight (1-t^2)^mu on [-1, 1]."""
    if n < 1:
        raise ConfigError("a Gauss rule needs at least one node")
    nodes, weights = golub_welsch(gegenbauer_coefficients(mu, n))
    return QuadratureRule(nodes, weights, "gegenbauer")


def clenshaw_curtis(n: int) -> QuadratureRule:
    """n-node Clenshaw-Curtis rule on [-1, 1] with unit weight.

    Exact for polynomials of degree <= n-1.  The cosine-expansion weights
    follow Trefethen's clencurt; nodes are returned in increasing order.
    """
    if n < 2:
        raise ConfigError("Clenshaw-Curtis needs at least two nodes")
    N = n - 1
    theta = np.pi * np.arange(n) / N
    x = np.cos(theta)
    w = np.zeros(n)
    v = np.ones(N - 1)
    interior = theta[1:N]
    if N % 2 == 0:
        w[0] = w[N] = 1.0 / (N * N - 1)
        for k in range(1, N // 2):
            v -= 2.0 * np.cos(2.0 * k * interior) / (4.0 * k * k - 1)
        v -= np.cos(N * interior) / (N * N - 1)
    else:
        w[0] = w[N] = 1.0 / (N * N)
        for k in range(1, (N - 1) // 2 + 1):
            v -= 2.0 * np.cos(2.0 * k * interior) / (4.0 * k * k - 1)
    w[1:N] = 2.0 * v / N
    return QuadratureRule(x[::-1].copy(), w[::-1].copy(), "clenshaw-curtis")


def _pole_factors(points: np.ndarray, poles) -> np.ndarray:
    """prod_k (points - xi_k) over the supplied pole list, elementwise."""
    out = np.ones(len(points), dtype=complex)
    for xi in poles:
        out *= points - complex(xi)
    return out


def _check_poles_outside(points: np.ndarray, poles) -> None:
    lo = min(-1.0, float(np.min(points)))
    hi = max(1.0, float(np.max(points)))
    for xi in poles:
        z = complex(xi)
        if abs(z.imag) <= NODE_GAP and lo - NODE_GAP <= z.real <= hi + NODE_GAP:
            raise IllPosedMeasureError(f"pole {z} lies inside the support [{lo}, {hi}]")


def stieltjes_modified(base: QuadratureRule, finite_poles, n: int) -> ThreeTermCoefficients:
    """Orthonormal-polynomial recurrence of the pole-modified discrete measure.

    The measure is sum_j base.weights[j] / prod_k (z_j - xi_k)^2 placed at the
    base nodes; each pole in `finite_poles` contributes one squared factor.
    Uses the discrete Stieltjes procedure, stable as long as n is well below
    the number of base nodes.
    """
    if n < 1:
        raise ConfigError("at least one coefficient pair must be requested")
    if n > base.n:
        raise ConfigError("cannot extract more coefficients than base nodes")
    _check_poles_outside(base.nodes, finite_poles)
    denom = _pole_factors(base.nodes, finite_poles) ** 2
    if len(finite_poles) and np.max(np.abs(denom.imag)) > 1e-12 * np.max(np.abs(denom)):
        raise PositivityError("pole list does not define a real modified measure")
    mod = base.weights / denom.real
    if np.any(mod <= 0.0):
        raise PositivityError("modified measure has a nonpositive weight")
    x = base.nodes
    alpha = np.zeros(n)
    beta = np.zeros(n)
    beta[0] = np.sum(mod)
    p_prev = np.zeros_like(x)
    p = np.full_like(x, 1.0 / math.sqrt(beta[0]))
    for k in range(n):
        alpha[k] = np.sum(mod * x * p * p)
        if k == n - 1:
            break
        q = (x - alpha[k]) * p - (math.sqrt(beta[k]) if k > 0 else 0.0) * p_prev
        beta_next = np.sum(mod * q * q)
        if beta_next <= 0.0:
            raise PositivityError(f"Stieltjes norm beta_{k + 1} is nonpositive")
        beta[k + 1] = beta_next
        p_prev, p = p, q / math.sqrt(beta_next)
    return ThreeTermCoefficients(alpha, beta)


def _halve_multiplicities(finite_poles) -> list[complex]:
    remaining = [complex(xi) for xi in finite_poles]
    half: list[complex] = []
    while remaining:
        xi = remaining.pop()
        try:
            remaining.remove(xi)
        except ValueError:
            raise PositivityError(
                "rational Gauss poles must come in exact duplicate pairs (even multiplicity)"
            ) from None
        half.append(xi)
    return half


def rational_gauss(mu: float, finite_poles, sigma: int, base_order: int | None = None) -> QuadratureRule:
    """sigma-node Gauss rule exact on g(t)/prod_k(t - xi_k), deg g <= 2*sigma-1,
    against the Gegenbauer weight (1-t^2)^mu.

    `finite_poles` is the full pole list of the target exactness class
    (2*(sigma-1) entries in the standard sizing); multiplicities must be even
    so the modified measure divides by a perfect square and stays positive.
    """
    if sigma < 1:
        raise ConfigError("at least one node must be requested")
    if base_order is None:
        base_order = max(64, 8 * sigma)
    base = gauss_gegenbauer(mu, base_order)
    half = _halve_multiplicities(finite_poles)
    coeffs = stieltjes_modified(base, half, sigma)
    nodes, lam = golub_welsch(coeffs)
    demod = _pole_factors(nodes, finite_poles)
    if np.max(np.abs(demod.imag)) > 1e-10 * np.max(np.abs(demod)):
        raise PositivityError("pole configuration produced complex quadrature weights")
    weights = lam * demod.real
    if np.any(weights <= 0.0):
        raise PositivityError("invalid pole configuration: nonpositive rational Gauss weight")
    return QuadratureRule(nodes, weights, "rational-gauss")
