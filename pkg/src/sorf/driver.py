"""Batch driver: config documents in, report documents and sweep CSV out.

Documents are JSON.  Complex numbers are serialized as [re, im] pairs and
the point at infinity as the literal string "inf".  Reports carry the pencil
entries row-major, the realized pole list, the error metrics and the wall
time in milliseconds.
"""

from __future__ import annotations

import json
import time

import numpy as np

from .errors import ConfigError, RuleValidationError, SorfError
from .evaluation import (
    continuous_moment_matrix,
    discrete_moment_matrix,
    evaluate_solution,
    metric_orthonormality,
    metric_poles,
    metric_recurrence,
    metric_sobolev,
    table_agreement,
)
from .pencil import INFINITY, is_infinite_pole
from .quadrature import QuadratureRule, rational_gauss
from .reference import rational_arnoldi, solve_via_sop
from .sobolev import (
    GegenbauerSobolevConfig,
    build_jordan,
    default_pole_list,
    discretize_gegenbauer,
    gegenbauer_pole_ladder,
)
from .updating import solve_updating

SWEEP_CSV_HEADER = "N,m,method,E_r,E_p,E_Q,E_S_discrete,E_S_cont_leading,ms"

METHODS = ("updating", "sop", "krylov")


def _decode_scalar(value) -> complex:
    if isinstance(value, str):
        if value.strip().lower() in ("inf", "infinity"):
            return INFINITY
        raise ConfigError(f"unrecognized scalar literal {value!r}")
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    raise ConfigError(f"cannot parse scalar {value!r}")


def _encode_scalar(value) -> object:
    if is_infinite_pole(value):
        return "inf"
    z = complex(value)
    return [z.real, z.imag]


def _encode_matrix(M: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(M, dtype=complex)]


def parse_config(doc: dict) -> dict:
    """Validate a config document and fill in defaults."""
    if not isinstance(doc, dict):
        raise ConfigError("config document must be a JSON object")
    known = {
        "mu", "lambda", "omega", "M", "N", "method", "poles", "free_poles",
        "cc_order", "quadrature_file", "N_range",
    }
    unknown = set(doc) - known
    if unknown:
        raise ConfigError(f"unknown config fields: {sorted(unknown)}")
    out = {}
    try:
        out["mu"] = float(doc.get("mu", 2.0))
        out["lambda"] = float(doc.get("lambda", 1.0))
        out["omega"] = float(doc.get("omega", 1.1))
        out["N"] = int(doc.get("N", 3))
        out["cc_order"] = int(doc.get("cc_order", 400))
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"malformed numeric field: {exc}") from exc
    if out["cc_order"] < 2:
        raise ConfigError("cc_order must be at least 2")
    method = doc.get("method", "updating")
    if method not in METHODS + ("all",):
        raise ConfigError(f"method must be one of {METHODS + ('all',)}")
    out["method"] = method
    if "poles" in doc:
        out["poles"] = [_decode_scalar(p) for p in doc["poles"]]
        out["M"] = int(doc.get("M", (len(out["poles"]) + 1) // 2))
    else:
        out["poles"] = None
        out["M"] = int(doc.get("M", max((out["N"] - 1 + 1) // 2, 0)))
    out["free_poles"] = (
        [_decode_scalar(p) for p in doc["free_poles"]] if "free_poles" in doc else None
    )
    out["quadrature_file"] = doc.get("quadrature_file")
    if "N_range" in doc:
        rng = doc["N_range"]
        if not (isinstance(rng, (list, tuple)) and len(rng) == 2):
            raise ConfigError("N_range must be a [lo, hi] pair")
        lo, hi = int(rng[0]), int(rng[1])
        if lo < 1 or hi < lo:
            raise ConfigError("N_range must satisfy 1 <= lo <= hi")
        out["N_range"] = (lo, hi)
    else:
        out["N_range"] = None
    return out


def _problem_from_config(cfg: dict, N: int | None = None):
    """Build (config, spec, system, prescribed poles, full pole list)."""
    N = cfg["N"] if N is None else N
    gcfg = GegenbauerSobolevConfig(
        mu=cfg["mu"], lam=cfg["lambda"], omega=cfg["omega"],
        M=max(cfg["M"], (N - 1 + 1) // 2), N=N,
    )
    rule = None
    if cfg.get("quadrature_file"):
        rule = load_quadrature(cfg["quadrature_file"])
    if cfg["poles"] is not None:
        xi = list(cfg["poles"])[: N - 1]
        if len(xi) != N - 1:
            raise ConfigError(f"need N - 1 = {N - 1} prescribed poles, got {len(xi)}")
    else:
        xi = gegenbauer_pole_ladder(cfg["omega"], N - 1)
    spec = discretize_gegenbauer(gcfg, rule=rule, xi=xi)
    psis = default_pole_list(xi, spec.m, nodes=spec.nodes, free=cfg["free_poles"])
    return gcfg, spec, build_jordan(spec), xi, psis


def _solve_one(method: str, spec, system, xi, psis):
    if method == "updating":
        return solve_updating(spec, psis)
    if method == "sop":
        return solve_via_sop(spec, xi)
    if method == "krylov":
        return rational_arnoldi(system, psis)
    raise ConfigError(f"unknown method {method!r}")


def _metrics_for(gcfg, spec, system, psis, sol, cc_order: int, N: int) -> tuple[dict, dict]:
    table = evaluate_solution(sol, np.array(spec.nodes), max_deriv=max(spec.orders))
    Md = discrete_moment_matrix(spec, table)
    lead = max(N - 1, 1)
    Mc = continuous_moment_matrix(sol.H, sol.K, sol.wnorm, gcfg.mu, gcfg.lam, lead, cc_order)
    metrics = {
        "E_r": metric_recurrence(system, sol),
        "E_p": metric_poles(sol, psis),
        "E_Q": metric_orthonormality(sol),
        "E_S_discrete": metric_sobolev(Md),
        "E_S_continuous_leading": metric_sobolev(Mc),
    }
    diagnostics = {"eval_conditioning": float(np.max(np.abs(table.values)))}
    return metrics, diagnostics


def run_solve(doc: dict) -> dict:
    """Solve one configuration and emit a report document."""
    cfg = parse_config(doc)
    gcfg, spec, system, xi, psis = _problem_from_config(cfg)
    methods = METHODS if cfg["method"] == "all" else (cfg["method"],)
    reports = []
    solutions = {}
    for method in methods:
        t0 = time.perf_counter()
        sol = _solve_one(method, spec, system, xi, psis)
        metrics, diag = _metrics_for(gcfg, spec, system, psis, sol, cfg["cc_order"], cfg["N"])
        ms = 1e3 * (time.perf_counter() - t0)
        solutions[method] = sol
        reports.append(
            {
                "method": method,
                "m": sol.m,
                "H": _encode_matrix(sol.H),
                "K": _encode_matrix(sol.K),
                "poles": [_encode_scalar(p) for p in sol.poles()],
                "metrics": metrics,
                "ms": ms,
                **diag,
            }
        )
    if cfg["method"] != "all":
        return reports[0]
    nodes = np.array(spec.nodes)
    tables = {
        name: evaluate_solution(sol, nodes, max_deriv=max(spec.orders))
        for name, sol in solutions.items()
    }
    pairs = [("updating", "sop"), ("updating", "krylov"), ("sop", "krylov")]
    agreement = max(table_agreement(tables[a], tables[b]) for a, b in pairs)
    return {"reports": reports, "cross_agreement": agreement}


def run_sweep(doc: dict) -> str:
    """Run all methods over a range of N and emit the CSV text."""
    cfg = parse_config(doc)
    if cfg["N_range"] is None:
        raise ConfigError("sweep configs need an N_range field")
    lo, hi = cfg["N_range"]
    methods = METHODS if cfg["method"] == "all" else (cfg["method"],)
    lines = [SWEEP_CSV_HEADER]
    for N in range(lo, hi + 1):
        gcfg, spec, system, xi, psis = _problem_from_config(cfg, N=N)
        for method in methods:
            t0 = time.perf_counter()
            sol = _solve_one(method, spec, system, xi, psis)
            metrics, _ = _metrics_for(gcfg, spec, system, psis, sol, cfg["cc_order"], N)
            ms = 1e3 * (time.perf_counter() - t0)
            lines.append(
                f"{N},{sol.m},{method},{metrics['E_r']:.6e},{metrics['E_p']:.6e},"
                f"{metrics['E_Q']:.6e},{metrics['E_S_discrete']:.6e},"
                f"{metrics['E_S_continuous_leading']:.6e},{ms:.3f}"
            )
    return "\n".join(lines) + "\n"


def dump_quadrature(doc: dict) -> dict:
    """Construct the configured rational Gauss rule and emit a rule document."""
    cfg = parse_config(doc)
    N = cfg["N"]
    if cfg["poles"] is not None:
        xi = list(cfg["poles"])[: N - 1]
    else:
        xi = gegenbauer_pole_ladder(cfg["omega"], N - 1)
    sigma = 2 * (N - 1) + 1
    full = [x for x in xi for _ in range(4)]
    rule = rational_gauss(cfg["mu"], full, sigma)
    return rule_document(rule)


def rule_document(rule: QuadratureRule) -> dict:
    return {
        "nodes": [float(z) for z in rule.nodes],
        "weights": [float(w) for w in rule.weights],
        "provenance": rule.provenance,
    }


def import_quadrature(doc: dict) -> QuadratureRule:
    """Validate a rule document and return the rule (canonical node order)."""
    if not isinstance(doc, dict) or "nodes" not in doc or "weights" not in doc:
        raise RuleValidationError("rule document needs 'nodes' and 'weights'")
    try:
        nodes = np.array([_decode_scalar(z) for z in doc["nodes"]], dtype=complex)
    except ConfigError as exc:
        raise RuleValidationError(str(exc)) from exc
    weights = np.asarray(doc["weights"], dtype=float)
    if np.max(np.abs(nodes.imag), initial=0.0) > 0.0:
        raise RuleValidationError("imported nodes must be real")
    order = np.argsort(nodes.real)
    try:
        return QuadratureRule(nodes.real[order], weights[order], str(doc.get("provenance", "imported")))
    except SorfError as exc:
        raise RuleValidationError(f"imported rule failed validation: {exc}") from exc


def load_quadrature(path: str) -> QuadratureRule:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read quadrature file {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise RuleValidationError(f"quadrature file {path!r} is not valid JSON: {exc}") from exc
    return import_quadrature(doc)
