
import numpy as np
import pytest

from polymorse import StarSpec, oriented_area, perimeter, regular_star
from polymorse._numdiff import hessian_from_values
from polymorse.polygon import congruent_mod_rotation_translation
from polymorse.solver import predicted_index
from polymorse.submanifolds import (
    CyclicChartPoint,
    EquilateralChartPoint,
    cyclic_embed,
    cyclic_hessian,
    cyclic_index,
    equilat_embed,
    equilat_index,
    jet2_closed_forms,
    jet_check,
    solved_pair,
    star_phases,
    stratum_index_checks,
    tangent_rank,
)


def _positive(n):
    return range(1, (n - 1) // 2 + 1)


@pytest.mark.parametrize("n", range(5, 10))
def test_jet_constants_against_direct_geometry(n):
    for w in _positive(n):
        poly = cyclic_embed(CyclicChartPoint(n, star_phases(n, w)))
        forms = jet2_closed_forms(n, w)
        assert forms["P"].constant == pytest.approx(perimeter(poly), rel=1e-13)
        assert forms["2A"].constant == pytest.approx(2 * oriented_area(poly), rel=1e-13)
        assert forms["2A/P2"].constant == pytest.approx(2 * oriented_area(poly) / perimeter(poly) ** 2, rel=1e-12)
        assert jet_check(n, w).worst < 1e-5


def test_jets_reject_negative_winding():
    with pytest.raises(ValueError):
        jet2_closed_forms(7, -2)


@pytest.mark.parametrize("n", range(5, 10))
def test_cyclic_hessian_against_value_differences(n):
    for w in _positive(n):
        def f(x):
            p = cyclic_embed(CyclicChartPoint(n, x))
            return oriented_area(p) / perimeter(p) ** 2

        H_val = hessian_from_values(f, star_phases(n, w), 1e-4)
        H = cyclic_hessian(n, w)
        assert np.max(np.abs(H - H_val)) < 1e-5 * np.max(np.abs(H))
        assert np.all(np.linalg.eigvalsh(H) < 0)
        assert cyclic_index(n, w) == n - 1


def test_cyclic_index_negative_branch():
    assert cyclic_index(7, -2) == 0


@pytest.mark.parametrize("n", range(4, 13))
def test_equilat_index(n):
    for w in _positive(n):
        assert equilat_index(n, w) == n - 1 - 2 * w


def test_equilat_chart_origin_is_star():
    for n, w in [(5, 2), (8, 2), (12, 3), (9, 4)]:
        p = equilat_embed(EquilateralChartPoint(n, w, np.zeros(n - 3)))
        assert congruent_mod_rotation_translation(p, regular_star((n, w)))


def test_equilat_chart_stays_equilateral(rng):
    for n, w in [(6, 1), (7, 3), (8, 2)]:
        p = equilat_embed(EquilateralChartPoint(n, w, 0.05 * rng.normal(size=n - 3)))
        assert np.ptp(p.edge_lengths()) < 1e-14
        assert perimeter(p) == pytest.approx(1.0, abs=1e-14)


def test_solved_pair_fallback_when_neighbours_parallel():
    assert solved_pair(7, 2) == (1, 6)
    a, b = solved_pair(8, 2)
    assert (a, b) != (1, 7)


@pytest.mark.parametrize("n", range(4, 11))
def test_index_sandwich_and_rank(n):
    for w in [*_positive(n), *(-w for w in _positive(n))]:
        rep = stratum_index_checks(n, w)
        assert rep.ok, rep.failures
        assert rep.full_index == predicted_index(StarSpec(n, "star", w))
        assert rep.rank == 2 * n - 4


def test_tangent_rank_singular_values():
    rank, sv = tangent_rank(7, 2)
    assert rank == 10 and sv.size == 6 + 4
    assert sv[-1] / sv[0] > 1e-3
