import numpy as np
import pytest

from conftest import random_pole_list, random_spec

from sorf.errors import PoleCollisionError
from sorf.evaluation import (
    SorfTable,
    continuous_moment_matrix,
    discrete_moment_matrix,
    evaluate_solution,
    metric_orthonormality,
    metric_poles,
    metric_recurrence,
    metric_sobolev,
    normalize_table,
    table_agreement,
)
from sorf.pencil import INFINITY
from sorf.quadrature import gauss_gegenbauer
from sorf.sobolev import (
    DiscreteSobolevSpec,
    GegenbauerSobolevConfig,
    build_jordan,
    default_pole_list,
    discretize_gegenbauer,
    gegenbauer_pole_ladder,
)
from sorf.updating import solve_updating


def gegenbauer_solution(N=3, lam=1.0):
    cfg = GegenbauerSobolevConfig(mu=2.0, lam=lam, omega=1.1, M=max(1, N // 2), N=N)
    spec = discretize_gegenbauer(cfg)
    xi = gegenbauer_pole_ladder(1.1, N - 1)
    poles = default_pole_list(xi, spec.m, nodes=spec.nodes)
    return cfg, spec, poles, solve_updating(spec, poles)


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------


def test_first_function_is_constant(rng):
    spec = random_spec(rng, sigma=3, max_order=1)
    poles, _ = random_pole_list(rng, spec.m)
    sol = solve_updating(spec, poles)
    pts = np.linspace(-0.8, 0.8, 5)
    table = evaluate_solution(sol, pts, max_deriv=2)
    assert table.values[0, 0, :] == pytest.approx(np.full(5, 1.0 / sol.wnorm))
    assert np.all(table.values[0, 1:, :] == 0.0)


def test_single_node_spec_table_trivial():
    spec = DiscreteSobolevSpec(nodes=(0.2,), orders=(0,), alphas=((),), weights=(1.5,))
    sol = solve_updating(spec, [])
    table = evaluate_solution(sol, [0.0, 0.5], max_deriv=1)
    assert table.values.shape == (1, 2, 2)
    assert table.values[0, 0, :] == pytest.approx(np.full(2, 1.0 / 1.5))


def test_evaluation_refuses_points_at_poles():
    _, spec, poles, sol = gegenbauer_solution()
    with pytest.raises(PoleCollisionError):
        evaluate_solution(sol, [-1.1], max_deriv=0)


def polynomial_gram_schmidt_oracle(spec, poles):
    """Orthonormalize the nested rational basis t^k / prod(t - psi_j)
    under the discrete Sobolev inner product, by dense Gram-Schmidt on
    values and first derivatives at the nodes (orders s_j <= 1)."""
    assert max(spec.orders) <= 1
    m = spec.m
    nodes = np.array([z.real for z in spec.nodes])
    Poly = np.polynomial.Polynomial

    def basis_tables():
        vals = np.zeros((m, 2, spec.sigma), dtype=complex)
        denom = Poly([1.0])
        for k in range(m):
            if k > 0 and not np.isinf(np.real(poles[k - 1])) and np.isfinite(complex(poles[k - 1])):
                denom = denom * Poly([-complex(poles[k - 1]).real, 1.0])
            num = Poly([0.0] * k + [1.0])
            dnum = num.deriv()
            dden = denom.deriv()
            q = denom(nodes)
            vals[k, 0, :] = num(nodes) / q
            vals[k, 1, :] = (dnum(nodes) * q - num(nodes) * dden(nodes)) / q**2
        return vals

    g = basis_tables()

    def inner(u, v):
        total = 0.0 + 0.0j
        for j, (s, al, wj) in enumerate(zip(spec.orders, spec.alphas, spec.weights)):
            total += abs(wj) ** 2 * u[0, j] * np.conj(v[0, j])
            if s >= 1:
                total += abs(wj) ** 2 * abs(al[0]) ** 2 * u[1, j] * np.conj(v[1, j])
        return total

    basis = []
    for k in range(m):
        v = g[k].copy()
        for b in basis:
            v -= inner(v, b) * b
        for b in basis:
            v -= inner(v, b) * b
        nrm = np.sqrt(inner(v, v).real)
        basis.append(v / nrm)
    return np.array(basis)


def test_small_pencil_matches_gram_schmidt_oracle(rng):
    # m = 4: two s=1 nodes, all-finite poles
    spec = DiscreteSobolevSpec(
        nodes=(-0.35, 0.55), orders=(1, 1), alphas=((0.8,), (1.2,)), weights=(0.9, 1.4)
    )
    poles = [-1.6, 1.9, -2.3]
    sol = solve_updating(spec, poles)
    table = evaluate_solution(sol, np.array(spec.nodes), max_deriv=1)
    oracle_vals = polynomial_gram_schmidt_oracle(spec, poles)
    oracle = SorfTable(oracle_vals, np.array(spec.nodes))
    assert table_agreement(table, oracle) <= 1e-10


def test_small_pencil_matches_oracle_with_infinite_pole():
    spec = DiscreteSobolevSpec(
        nodes=(-0.2, 0.4), orders=(1, 1), alphas=((1.0,), (1.0,)), weights=(1.0, 1.0)
    )
    poles = [-1.4, INFINITY, 2.2]
    sol = solve_updating(spec, poles)
    table = evaluate_solution(sol, np.array(spec.nodes), max_deriv=1)
    oracle_vals = polynomial_gram_schmidt_oracle(spec, poles)
    oracle = SorfTable(oracle_vals, np.array(spec.nodes))
    assert table_agreement(table, oracle) <= 1e-10


def test_derivatives_match_central_finite_differences(rng):
    # criterion: |analytic - FD| <= 1e-7 * scale at 10 random points, m <= 20
    for N in (3, 5):
        _, spec, poles, sol = gegenbauer_solution(N)
        pts = rng.uniform(-0.9, 0.9, size=10)
        h = 1e-5
        table = evaluate_solution(sol, pts, max_deriv=2)
        plus = evaluate_solution(sol, pts + h, max_deriv=1)
        minus = evaluate_solution(sol, pts - h, max_deriv=1)
        for d in (1, 2):
            fd = (plus.values[:, d - 1, :] - minus.values[:, d - 1, :]) / (2 * h)
            ana = table.values[:, d, :]
            scale = np.maximum(1.0, np.maximum(np.abs(ana), np.abs(fd)))
            assert np.max(np.abs(fd - ana) / scale) <= 1e-7


# ---------------------------------------------------------------------------
# moment matrices
# ---------------------------------------------------------------------------


def test_discrete_moment_matrix_is_identity_for_solution(rng):
    _, spec, poles, sol = gegenbauer_solution()
    table = evaluate_solution(sol, np.array(spec.nodes), max_deriv=1)
    Md = discrete_moment_matrix(spec, table)
    assert np.linalg.norm(Md - np.eye(10), 2) <= 1e-11


def test_discrete_moment_matrix_single_function():
    spec = DiscreteSobolevSpec(nodes=(0.1,), orders=(0,), alphas=((),), weights=(2.0,))
    sol = solve_updating(spec, [])
    table = evaluate_solution(sol, np.array(spec.nodes), max_deriv=0)
    Md = discrete_moment_matrix(spec, table)
    assert Md == pytest.approx(np.eye(1), abs=1e-14)


def test_discrete_moment_matrix_identity_all_solvers_up_to_m20(rng):
    # well-conditioned specs up to m = 20; heavy second-order blocks push the
    # evaluation conditioning of the moment matrix beyond this bound
    from sorf.reference import rational_arnoldi, solve_via_sop

    cases = []
    for N in (3, 5):
        _, spec, poles, _ = gegenbauer_solution(N)
        cases.append((spec, poles, poles[: N - 1]))
    for _ in range(3):
        spec = random_spec(rng, sigma=int(rng.integers(2, 7)), max_order=1)
        poles, xi = random_pole_list(rng, spec.m, 2)
        cases.append((spec, poles, xi))
    for spec, poles, xi in cases:
        sys = build_jordan(spec)
        for sol in (
            solve_updating(spec, poles),
            solve_via_sop(spec, xi),
            rational_arnoldi(sys, poles),
        ):
            table = evaluate_solution(sol, np.array(spec.nodes), max_deriv=max(spec.orders))
            Md = discrete_moment_matrix(spec, table)
            assert np.linalg.norm(Md - np.eye(spec.m), 2) <= 1e-10


def test_discrete_moment_matrix_hermitian(rng):
    spec = random_spec(rng, sigma=4, max_order=2)
    poles, _ = random_pole_list(rng, spec.m)
    sol = solve_updating(spec, poles)
    table = evaluate_solution(sol, np.array(spec.nodes), max_deriv=max(spec.orders))
    Md = discrete_moment_matrix(spec, table)
    assert np.linalg.norm(Md - Md.conj().T) <= 1e-13 * np.linalg.norm(Md)


def test_continuous_moment_matrix_legendre_case():
    # lambda = 0, mu = 0, no poles: plain Legendre orthonormality
    rule = gauss_gegenbauer(0.0, 2)
    spec = DiscreteSobolevSpec(
        nodes=tuple(rule.nodes),
        orders=(0, 0),
        alphas=((), ()),
        weights=tuple(np.sqrt(rule.weights)),
    )
    sol = solve_updating(spec, [INFINITY])
    Mc = continuous_moment_matrix(sol.H, sol.K, sol.wnorm, mu=0.0, lam=0.0, n=2)
    assert np.linalg.norm(Mc - np.eye(2), 2) <= 1e-12


def test_continuous_moment_matrix_leading_block_and_tail():
    _, spec, poles, sol = gegenbauer_solution()
    Mc = continuous_moment_matrix(sol.H, sol.K, sol.wnorm, mu=2.0, lam=1.0, n=10)
    D = np.abs(Mc - np.eye(10))
    assert np.max(D[:3, :3]) <= 1e-11
    outside = D.copy()
    outside[:3, :3] = 0.0
    assert np.max(outside) >= 1e-3


# ---------------------------------------------------------------------------
# metrics
# ---------------------------------------------------------------------------


def test_metric_recurrence_zero_for_exact_solution():
    spec = DiscreteSobolevSpec(nodes=(0.5,), orders=(1,), alphas=((1.0,),), weights=(1.0,))
    sol = solve_updating(spec, [INFINITY])
    assert metric_recurrence(build_jordan(spec), sol) <= 1e-14


def test_metric_recurrence_perturbation_scaling(rng):
    _, spec, poles, sol = gegenbauer_solution()
    sys = build_jordan(spec)
    eps = 1e-8
    sol.pencil.H[3, 4] += eps
    got = metric_recurrence(sys, sol)
    scale = np.linalg.norm(sys.J @ sol.Q @ sol.K, 2)
    assert got == pytest.approx(eps / scale, rel=0.5)


def test_metric_poles_exact_and_perturbed(rng):
    _, spec, poles, sol = gegenbauer_solution()
    assert metric_poles(sol, poles) <= 1e-13
    H = sol.H.copy()
    H[1, 0] *= 1 + 1e-6
    from sorf.pencil import HessenbergPencil
    from sorf.updating import IEPSolution

    bad = IEPSolution(HessenbergPencil(H, sol.K.copy()), sol.Q, sol.wnorm)
    assert metric_poles(bad, poles) == pytest.approx(1e-6, rel=1e-3)


def test_metric_orthonormality_scaled_column():
    _, spec, poles, sol = gegenbauer_solution()
    assert metric_orthonormality(sol) <= 1e-14
    Q = sol.Q.copy()
    Q[:, 4] *= 1 + 1e-6
    from sorf.pencil import HessenbergPencil
    from sorf.updating import IEPSolution

    bad = IEPSolution(sol.pencil, Q, sol.wnorm)
    assert metric_orthonormality(bad) == pytest.approx(2e-6, rel=1e-2)


def test_metric_sobolev_values():
    assert metric_sobolev(np.eye(3)) == 0.0
    assert metric_sobolev(np.diag([1.0, 1.0, 2.0])) == pytest.approx(1.0)


def test_table_agreement_detects_mismatch(rng):
    _, spec, poles, sol = gegenbauer_solution()
    pts = np.linspace(-0.5, 0.5, 4)
    t1 = evaluate_solution(sol, pts, max_deriv=1)
    vals = t1.values.copy()
    vals[3] *= np.exp(0.7j)  # unimodular factor: still agrees
    t2 = SorfTable(vals, pts)
    assert table_agreement(t1, t2) <= 1e-12
    vals2 = t1.values.copy()
    vals2[3] *= 1.01  # genuine scale change: disagrees
    t3 = SorfTable(vals2, pts)
    assert table_agreement(t1, t3) >= 1e-3


def test_normalize_table_unit_peak(rng):
    _, spec, poles, sol = gegenbauer_solution()
    table = evaluate_solution(sol, np.linspace(-0.6, 0.6, 5), max_deriv=1)
    norm = normalize_table(table)
    assert np.max(np.abs(norm), axis=1) == pytest.approx(np.ones(table.nfun))
