"""Verification suites. Each suite maps (n, cfg) to (rows, passed)."""
from __future__ import annotations

import math
from typing import Callable

import numpy as np

from . import _numdiff
from .config import SolverConfig
from .errors import ZeroArea
from .extensions import ConstraintSpec, dual_critical_check, dual_index_relation, lagrange_residual
from .functional import (
    chart_gradient_batch,
    chart_value,
    clarke_certificate,
    random_single_collision,
    sampled_gradient_separation,
)
from .projective import ChartPoint, chart_at
from .solver import catalogue, solve_all, star_edgeword, verify_index_table
from .submanifolds import cyclic_hessian, equilat_index, jet_check, stratum_index_checks

SuiteResult = tuple[list[dict], bool]

POWERS = (0.5, 1.0, 2.0, 3.0)


def _positive(n: int) -> list[int]:
    return list(range(1, (n - 1) // 2 + 1))


def suite_count(n: int, cfg: SolverConfig) -> SuiteResult:
    res = solve_all(n, cfg)
    expected = sorted(s.label() for s in catalogue(n))
    rows = [
        {
            "n": n,
            "critical_point": r.label,
            "normalized_area": r.normalized_area,
            "morse_index": r.morse_index,
            "grad_norm": r.grad_norm,
        }
        for r in res
    ]
    rows.append(
        {
            "n": n,
            "classes": len(res),
            "expected": n - 1,
            "converged_seeds": res.converged,
            "no_convergence": res.no_convergence,
            "collisions": res.collisions,
        }
    )
    return rows, sorted(r.label for r in res) == expected


def suite_criticality(n: int, cfg: SolverConfig) -> SuiteResult:
    rows, ok = [], True
    for s in catalogue(n):
        c = chart_at(star_edgeword(s))
        g = float(np.linalg.norm(chart_gradient_batch(c.coords, c.pivot)))
        passed = g < cfg.tolerances.gradient
        ok &= passed
        rows.append({"n": n, "critical_point": s.label(), "grad_norm": g, "passed": passed})
    return rows, ok


def suite_indices(n: int, cfg: SolverConfig) -> SuiteResult:
    table = verify_index_table(n, cfg.tolerances)
    rows = [
        {
            "n": n,
            "critical_point": r.spec.label(),
            "winding": None if r.spec.is_fold else r.spec.w,
            "predicted": r.predicted,
            "printed": r.printed,
            "computed": r.computed if r.computed is not None else "degenerate",
            "degenerate": r.degenerate,
            "min_eigen_ratio": r.min_eigen_ratio,
            "passed": r.ok,
        }
        for r in table.rows
    ]
    return rows, table.ok


def suite_jets(n: int, cfg: SolverConfig) -> SuiteResult:
    rows, ok = [], True
    for w in _positive(n):
        jc = jet_check(n, w)
        lam = np.linalg.eigvalsh(cyclic_hessian(n, w))
        neg_def = bool(np.all(lam < 0))
        passed = jc.worst < cfg.tolerances.jet and neg_def
        ok &= passed
        rows.append(
            {
                "n": n,
                "w": w,
                "max_discrepancy": jc.worst,
                **{f"discrepancy[{k}]": v for k, v in jc.discrepancies.items()},
                "cyclic_negative_definite": neg_def,
                "passed": passed,
            }
        )
    return rows, ok


def suite_equilat(n: int, cfg: SolverConfig) -> SuiteResult:
    rows, ok = [], True
    for w in _positive(n):
        got = equilat_index(n, w, cfg.tolerances)
        passed = got == n - 1 - 2 * w
        ok &= passed
        rows.append({"n": n, "w": w, "predicted": n - 1 - 2 * w, "computed": got, "passed": passed})
    return rows, ok


def suite_strata(n: int, cfg: SolverConfig) -> SuiteResult:
    rows, ok = [], True
    for s in catalogue(n):
        if s.is_fold:
            continue
        r = stratum_index_checks(n, s.w, cfg.tolerances)
        ok &= r.ok
        rows.append(
            {
                "n": n,
                "w": s.w,
                "full_index": r.full_index,
                "cyclic_index": r.cyclic_index,
                "equilat_index": r.equilat_index,
                "tangent_rank": r.rank,
                "extremal_stratum": r.extremal_stratum,
                "failures": r.failures,
                "passed": r.ok,
            }
        )
    return rows, ok


def suite_clarke(n: int, cfg: SolverConfig, samples: int = 100) -> SuiteResult:
    rng = np.random.default_rng([cfg.rng_seed, n, 3])
    margins, gaps, seps = [], [], []
    for _ in range(samples):
        e = random_single_collision(n, rng)
        cert = clarke_certificate(e, cfg.tolerances.collision)
        margins.append(cert.margin)
        gaps.append(cert.gap)
        seps.append(sampled_gradient_separation(e))
    failures = int(sum(m <= 0 or g <= 0 or s <= 0 for m, g, s in zip(margins, gaps, seps)))
    row = {
        "n": n,
        "samples": samples,
        "min_margin": min(margins),
        "min_gap": min(gaps),
        "min_sampled_separation": min(seps),
        "failures": failures,
        "passed": failures == 0,
    }
    return [row], failures == 0


def suite_gradient(n: int, cfg: SolverConfig, samples: int = 100) -> SuiteResult:
    """Analytic chart gradient vs central differences of the value."""
    rng = np.random.default_rng([cfg.rng_seed, n, 4])
    worst = 0.0
    for _ in range(samples):
        c = ChartPoint(n, int(rng.integers(n - 1)), rng.uniform(-1, 1, 2 * (n - 2)))
        g = chart_gradient_batch(c.coords, c.pivot)
        fd = _numdiff.gradient(lambda x: chart_value(ChartPoint(n, c.pivot, x)), c.coords, 1e-6)
        worst = max(worst, float(np.linalg.norm(g - fd) / np.linalg.norm(g)))
    return [{"n": n, "samples": samples, "max_relative_error": worst, "passed": worst < 1e-6}], worst < 1e-6


def suite_extensions(n: int, cfg: SolverConfig) -> SuiteResult:
    rows, ok = [], True
    tol = cfg.tolerances.lagrange
    for s in catalogue(n):
        poly = s.build()
        row: dict = {"n": n, "critical_point": s.label()}
        for p in POWERS:
            r = lagrange_residual(poly, "area", ConstraintSpec.through(poly, "power_sum", p))
            row[f"residual[p={p:g}]"] = r
            ok &= r < tol
        if s.is_fold:
            try:
                dual_critical_check(poly)
                row["dual"] = "missing ZeroArea"
                ok = False
            except ZeroArea:
                row["dual"] = "ZeroArea"
        else:
            primal, dual = dual_critical_check(poly)
            row["residual_primal"], row["residual_dual"] = primal, dual
            ok &= primal < tol and dual < tol
            d = dual_index_relation(n, s.w, cfg.tolerances)
            row["index_primal"], row["index_dual"] = d.index_primal, d.index_dual
        rows.append(row)
    return rows, bool(ok)


SUITES: dict[str, Callable[[int, SolverConfig], SuiteResult]] = {
    "indices": suite_indices,
    "jets": suite_jets,
    "equilat": suite_equilat,
    "clarke": suite_clarke,
    "extensions": suite_extensions,
    "count": suite_count,
    "criticality": suite_criticality,
    "strata": suite_strata,
    "gradient": suite_gradient,
}

def run_suites(ns, names, cfg: SolverConfig) -> tuple[dict[str, list[dict]], dict[str, bool]]:
    tables: dict[str, list[dict]] = {}
    status: dict[str, bool] = {}
    for name in names:
        fn = SUITES[name]
        tables[name] = []
        status[name] = True
        for n in ns:
            rows, ok = fn(n, cfg)
            tables[name].extend(rows)
            status[name] &= bool(ok)
    return tables, status


def isoperimetric_bound(n: int) -> float:
    return 1.0 / (4 * n * math.tan(math.pi / n))

