import numpy as np
import pytest

from polymorse import Polygon, SolverConfig, oriented_area
from polymorse.errors import ZeroArea
from polymorse.extensions import (
    ConstraintSpec,
    constraint_value,
    dual_critical_check,
    dual_hessian,
    dual_index_relation,
    isometry_basis,
    lagrange_residual,
    probe_power_sum,
)
from polymorse.solver import catalogue, predicted_index


@pytest.mark.parametrize("n", range(4, 10))
@pytest.mark.parametrize("p", [0.5, 1.0, 2.0, 3.0])
def test_stars_are_power_sum_critical(n, p):
    for s in catalogue(n):
        poly = s.build()
        assert lagrange_residual(poly, "area", ConstraintSpec.through(poly, "power_sum", p)) < 1e-9


def test_random_polygons_are_not_critical(rng):
    for _ in range(20):
        poly = Polygon(rng.normal(size=(6, 2)))
        assert lagrange_residual(poly, "area", ConstraintSpec.through(poly, "perimeter")) > 1e-3


@pytest.mark.parametrize("n", range(4, 10))
def test_dual_problem(n):
    for s in catalogue(n):
        if s.is_fold:
            with pytest.raises(ZeroArea):
                dual_critical_check(s.build())
            continue
        primal, dual = dual_critical_check(s.build())
        assert primal < 1e-9 and dual < 1e-9


@pytest.mark.parametrize("n", range(4, 9))
def test_dual_index(n):
    for s in catalogue(n):
        if s.is_fold:
            continue
        d = dual_index_relation(n, s.w)
        assert d.index_primal == predicted_index(s)
        assert d.chart_dim == 2 * n - 4
        # perimeter at fixed area is -(area at fixed perimeter) up to a positive factor when A > 0
        expected = 2 * n - 4 - d.index_primal if s.w > 0 else d.index_primal
        assert d.index_dual == expected


def test_dual_hessian_symmetric():
    H = dual_hessian(6, 1)
    assert np.allclose(H, H.T)


def test_isometry_basis_orthonormal(rng):
    Q = isometry_basis(Polygon(rng.normal(size=(5, 2))))
    assert Q.shape == (10, 3)
    assert np.allclose(Q.T @ Q, np.eye(3))


def test_constraint_validation():
    with pytest.raises(ValueError):
        ConstraintSpec("area", 0.0)
    with pytest.raises(ValueError):
        ConstraintSpec("perimeter", -1.0)
    with pytest.raises(ValueError):
        ConstraintSpec("power_sum", 1.0, p=0)
    assert ConstraintSpec("area", -0.2).level == -0.2


def test_off_level_and_zero_edge():
    sq = Polygon([[0, 0], [1, 0], [1, 1], [0, 1]])
    with pytest.raises(ValueError):
        lagrange_residual(sq, "area", ConstraintSpec("perimeter", 5.0))
    degenerate = Polygon([[0, 0], [1, 0], [1, 0], [0, 1]])
    with pytest.raises(ValueError):
        lagrange_residual(degenerate, "area", ConstraintSpec.through(degenerate, "perimeter"))


def test_constraint_values():
    sq = Polygon([[0, 0], [2, 0], [2, 2], [0, 2]])
    assert constraint_value(sq, "perimeter") == 8
    assert constraint_value(sq, "power_sum", 2) == 16
    assert constraint_value(sq, "area") == oriented_area(sq) == 4


def test_power_probe_finds_stars_for_p2():
    res = probe_power_sum(5, 2.0, SolverConfig(seeds_per_n=60))
    labels = {r.label for r in res}
    assert {s.label() for s in catalogue(5)} <= labels
