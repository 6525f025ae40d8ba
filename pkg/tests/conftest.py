import numpy as np
import pytest

from sorf.evaluation import metric_orthonormality, metric_poles, metric_recurrence
from sorf.pencil import is_upper_hessenberg
from sorf.sobolev import DiscreteSobolevSpec, default_pole_list


def random_spec(rng, sigma=None, max_order=2, complex_alphas=False):
    """Random discrete Sobolev spec: distinct real nodes in (-1, 1),
    positive weights, nonzero derivative scalings."""
    if sigma is None:
        sigma = int(rng.integers(1, 8))
    while True:
        nodes = np.sort(rng.uniform(-0.95, 0.95, size=sigma))
        if sigma == 1 or np.min(np.diff(nodes)) > 5e-2:
            break
    orders = rng.integers(0, max_order + 1, size=sigma)
    alphas = []
    for s in orders:
        a = rng.uniform(0.5, 2.0, size=s)
        if complex_alphas:
            a = a * np.exp(1j * rng.uniform(0, 2 * np.pi, size=s))
        alphas.append(tuple(a))
    weights = rng.uniform(0.3, 2.0, size=sigma)
    return DiscreteSobolevSpec(
        nodes=tuple(nodes), orders=tuple(int(s) for s in orders),
        alphas=tuple(alphas), weights=tuple(weights),
    )


def random_pole_list(rng, m, n_finite=None):
    """Prescribed finite prefix outside [-1, 1], free poles at infinity."""
    if n_finite is None:
        n_finite = int(rng.integers(0, min(3, m - 1) + 1))
    xi = []
    for _ in range(n_finite):
        mag = rng.uniform(1.05, 3.0)
        xi.append(complex(mag if rng.random() < 0.5 else -mag))
    return default_pole_list(xi, m), xi


def assert_iep_invariants(system, sol, poles, rtol=1e-12):
    """The three defining conditions of a pencil inverse-problem solution."""
    assert metric_orthonormality(sol) <= rtol
    w = system.w
    assert np.linalg.norm(sol.Q[:, 0] - w / np.linalg.norm(w)) <= rtol
    assert metric_recurrence(system, sol) <= rtol
    assert metric_poles(sol, poles) <= rtol
    assert is_upper_hessenberg(sol.H) and is_upper_hessenberg(sol.K)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One pass/fail line per acceptance criterion."""
    rows = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance" in nodeid and "::test_criterion_" in nodeid:
                name = nodeid.split("::test_criterion_")[1]
                rows.append((name, "PASS" if outcome == "passed" else "FAIL"))
    if rows:
        terminalreporter.section("acceptance criteria")
        for name, verdict in sorted(rows):
            terminalreporter.write_line(f"criterion {name}: {verdict}")
