"""Discretized Sobolev inner products and their matrix encoding.

A discrete Sobolev inner product on sigma nodes z_j with derivative orders
s_j, derivative scalings alpha_r^(j) and weight amplitudes w_j is

    <f, g> = sum_j sum_{i=0}^{s_j} |w_j|^2 |prod_{r<=i} alpha_r^(j) / i!|^2
             f^(i)(z_j) conj(g^(i)(z_j)).

Its matrix encoding is the block upper-bidiagonal matrix J (one Jordan-like
block of size s_j+1 per node, node on the diagonal, scalings on the
superdiagonal) together with the vector w holding w_j at the last index of
each block.  The Gegenbauer-Sobolev family discretizes the continuous inner
product

    (f, g) = int f g (1-t^2)^mu dt + lambda * int f' g' (1-t^2)^mu dt

with a rational Gauss rule whose poles form the ladder -w, w, -2w, 2w, ...
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, SpectrumOverlapError
from .pencil import INFINITY, is_infinite_pole
from .quadrature import QuadratureRule, rational_gauss


@dataclass(frozen=True)
class DiscreteSobolevSpec:
    """Nodes, derivative orders, derivative scalings and weight amplitudes.

    `alphas[j]` lists (alpha_1, ..., alpha_{s_j}) for node j; `weights[j]` is
    the amplitude w_j (the inner product uses |w_j|^2).
    """

    nodes: tuple
    orders: tuple
    alphas: tuple
    weights: tuple

    def __post_init__(self):
        nodes = tuple(complex(z) for z in self.nodes)
        orders = tuple(int(s) for s in self.orders)
        alphas = tuple(tuple(complex(a) for a in al) for al in self.alphas)
        weights = tuple(complex(w) for w in self.weights)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "orders", orders)
        object.__setattr__(self, "alphas", alphas)
        object.__setattr__(self, "weights", weights)
        sigma = len(nodes)
        if not (len(orders) == len(alphas) == len(weights) == sigma) or sigma == 0:
            raise ConfigError("nodes, orders, alphas and weights must have equal nonzero length")
        for j, (s, al) in enumerate(zip(orders, alphas)):
            if s < 0:
                raise ConfigError(f"derivative order s_{j} must be nonnegative")
            if len(al) != s:
                raise ConfigError(f"node {j} needs exactly s_j = {s} derivative scalings")
            if any(a == 0 for a in al):
                raise ConfigError(f"derivative scalings of node {j} must be nonzero")
        if any(w == 0 for w in weights):
            raise ConfigError("weight amplitudes must be nonzero")
        z = np.array(nodes)
        if sigma > 1:
            gap = np.min(np.abs(z[:, None] - z[None, :])[~np.eye(sigma, dtype=bool)])
            if gap <= 1e-12:
                raise ConfigError("nodes must be pairwise distinct")

    @property
    def sigma(self) -> int:
        return len(self.nodes)

    @property
    def m(self) -> int:
        return sum(s + 1 for s in self.orders)


@dataclass(frozen=True)
class JordanSystem:
    """Block upper-bidiagonal matrix J and weight vector w."""

    J: np.ndarray
    w: np.ndarray

    @property
    def m(self) -> int:
        return self.J.shape[0]


@dataclass(frozen=True)
class GegenbauerSobolevConfig:
    mu: float
    lam: float
    omega: float
    M: int
    N: int

    def __post_init__(self):
        if self.mu <= -1.0:
            raise ConfigError("mu must exceed -1")
        if self.lam < 0.0:
            raise ConfigError("lambda must be nonnegative")
        if self.omega <= 1.0:
            raise ConfigError("omega must exceed 1")
        if self.M < 0:
            raise ConfigError("M must be nonnegative")
        if self.N < 1:
            raise ConfigError("N must be at least 1")
        if 2 * self.M < self.N - 1:
            raise ConfigError("M pole pairs support at most N = 2M + 1 functions")


def gegenbauer_pole_ladder(omega: float, count: int) -> list[complex]:
    """First `count` poles of the ladder -w, w, -2w, 2w, ..."""
    ladder = []
    k = 1
    while len(ladder) < count:
        ladder.append(complex(-k * omega))
        ladder.append(complex(k * omega))
        k += 1
    return ladder[:count]


def discretize_gegenbauer(
    config: GegenbauerSobolevConfig,
    base_order: int | None = None,
    rule: QuadratureRule | None = None,
    xi=None,
) -> DiscreteSobolevSpec:
    """Discrete Sobolev spec for the Gegenbauer-Sobolev inner product.

    Generating N functions with derivative order s = 1 needs
    sigma = 2(N-1) + 1 rational Gauss nodes whose exactness class carries
    each prescribed pole with multiplicity four (squared denominators of
    products of two functions, each with doubled poles).  The poles default
    to the ladder -w, w, -2w, 2w, ...; an externally computed rule may be
    supplied instead, with a node count matching the sizing.
    """
    if config.lam == 0.0:
        raise ConfigError("lambda must be positive: zero derivative scaling is not admissible")
    s = 1
    sigma = (s + 1) * (config.N - 1) + 1
    if xi is None:
        xi = gegenbauer_pole_ladder(config.omega, config.N - 1)
    elif len(xi) != config.N - 1:
        raise ConfigError(f"need N - 1 = {config.N - 1} poles, got {len(xi)}")
    if rule is None:
        full_poles = [x for x in xi for _ in range(2 * (s + 1))]
        rule = rational_gauss(config.mu, full_poles, sigma, base_order)
    elif rule.n != sigma:
        raise ConfigError(f"imported rule has {rule.n} nodes, sizing requires {sigma}")
    sqrt_lam = math.sqrt(config.lam)
    return DiscreteSobolevSpec(
        nodes=tuple(rule.nodes),
        orders=(s,) * sigma,
        alphas=((sqrt_lam,),) * sigma,
        weights=tuple(math.sqrt(wj) for wj in rule.weights),
    )


def build_jordan(spec: DiscreteSobolevSpec) -> JordanSystem:
    """Assemble the block upper-bidiagonal matrix J and weight vector w.

    Block j carries z_j on its diagonal and (alpha_{s_j}, ..., alpha_1) down
    its superdiagonal; w holds w_j at the last index of block j.
    """
    m = spec.m
    J = np.zeros((m, m), dtype=complex)
    w = np.zeros(m, dtype=complex)
    row = 0
    for z, s, al, wj in zip(spec.nodes, spec.orders, spec.alphas, spec.weights):
        for i in range(s + 1):
            J[row + i, row + i] = z
        for i in range(s):
            J[row + i, row + i + 1] = al[s - 1 - i]
        w[row + s] = wj
        row += s + 1
    return JordanSystem(J, w)


def default_pole_list(xi, m: int, nodes=None, free=None) -> list[complex]:
    """Pole list psi_1..psi_{m-1}: the prescribed prefix xi, then free poles.

    Free poles default to infinity, which keeps the trailing subdiagonal of K
    zero.  Any pole coinciding with a node is rejected.
    """
    xi = [INFINITY if is_infinite_pole(x) else complex(x) for x in xi]
    if len(xi) > m - 1:
        raise ConfigError(f"{len(xi)} prescribed poles exceed the m - 1 = {m - 1} available positions")
    if free is None:
        free = [INFINITY] * (m - 1 - len(xi))
    else:
        free = [INFINITY if is_infinite_pole(x) else complex(x) for x in free]
        if len(free) != m - 1 - len(xi):
            raise ConfigError(f"need exactly {m - 1 - len(xi)} free poles, got {len(free)}")
    poles = xi + free
    if nodes is not None:
        check_spectrum_disjoint(poles, nodes)
    return poles


def check_spectrum_disjoint(poles, nodes) -> None:
    z = np.array([complex(t) for t in nodes])
    for k, psi in enumerate(poles):
        if is_infinite_pole(psi):
            continue
        d = np.min(np.abs(z - complex(psi)))
        if d <= 1e-12 * max(1.0, abs(complex(psi))):
            raise SpectrumOverlapError(f"pole psi_{k + 1} = {psi} coincides with a node")
