import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from polymorse import Polygon, StarSpec, complete_fold, cyclic_shift, oriented_area, perimeter, regular_star
from polymorse.errors import CenterOnBoundary
from polymorse.polygon import congruent_mod_rotation_translation, star_area, winding_number

coords = st.floats(-10, 10, allow_nan=False, allow_infinity=False)


def test_unit_square_area_sign():
    sq = Polygon([[0, 0], [1, 0], [1, 1], [0, 1]])
    assert oriented_area(sq) == 1.0
    assert oriented_area(Polygon(sq.vertices[::-1])) == -1.0
    assert perimeter(sq) == 4.0


def test_triangle_shoelace_by_hand():
    # base 4 along x, apex height 3 -> area 6, counterclockwise
    tri = Polygon([[0, 0], [4, 0], [1, 3]])
    assert oriented_area(tri) == pytest.approx(6.0, abs=1e-15)


def test_fold_has_zero_area_and_unit_perimeter():
    for n in (4, 6, 8, 10):
        f = complete_fold(n)
        assert oriented_area(f) == 0.0
        assert perimeter(f) == pytest.approx(1.0, abs=1e-15)
        assert np.allclose(f.z[::2], f.z[0]) and np.allclose(f.z[1::2], f.z[1])


@pytest.mark.parametrize("n", range(3, 13))
def test_stars_are_equilateral_with_unit_perimeter(n):
    for w in range(-((n - 1) // 2), (n - 1) // 2 + 1):
        if w == 0:
            continue
        p = regular_star(StarSpec(n, "star", w))
        assert perimeter(p) == pytest.approx(1.0, abs=1e-14)
        assert np.ptp(p.edge_lengths()) < 1e-15
        assert oriented_area(p) == pytest.approx(star_area(n, w), abs=1e-15)


@pytest.mark.parametrize("n", range(3, 13))
def test_convex_star_area_is_regular_ngon(n):
    # regular n-gon with side 1/n: area = n s^2 / (4 tan(pi/n))
    expected = n * (1 / n) ** 2 / (4 * math.tan(math.pi / n))
    assert oriented_area(regular_star((n, 1))) == pytest.approx(expected, rel=1e-13)


def test_equilateral_triangle_area():
    assert oriented_area(regular_star((3, 1))) == pytest.approx(math.sqrt(3) / 36, rel=1e-14)


@pytest.mark.parametrize("n,w", [(5, 1), (5, 2), (5, -2), (7, 3), (7, -2), (8, 3), (9, 4), (12, -5)])
def test_star_winding(n, w):
    assert winding_number(regular_star((n, w))) == w


def test_winding_center_on_boundary():
    sq = Polygon([[0, 0], [1, 0], [1, 1], [0, 1]])
    with pytest.raises(CenterOnBoundary):
        winding_number(sq, center=(0.5, 0.0))
    with pytest.raises(CenterOnBoundary):
        winding_number(complete_fold(6))
    assert winding_number(sq, center=(3, 3)) == 0


def test_star_spec_validation():
    with pytest.raises(ValueError):
        StarSpec(6, "star", 3)
    with pytest.raises(ValueError):
        StarSpec(5, "fold")
    with pytest.raises(ValueError):
        StarSpec(5, "star", 0)
    assert StarSpec(7, "star", 2).mirror() == StarSpec(7, "star", -2)
    assert StarSpec.fold(6).label() == "F(6)"
    assert StarSpec(5, "star", -2).label() == "S(5,-2)"


@given(st.lists(st.tuples(coords, coords), min_size=3, max_size=12))
def test_shift_n_times_is_identity(pts):
    p = Polygon(pts)
    assert np.array_equal(cyclic_shift(p, p.n).vertices, p.vertices)
    assert oriented_area(cyclic_shift(p)) == pytest.approx(oriented_area(p), abs=1e-9)


@given(st.lists(st.tuples(coords, coords), min_size=3, max_size=12))
def test_mirror_negates_area(pts):
    p = Polygon(pts)
    assert oriented_area(p.reflected()) == pytest.approx(-oriented_area(p), abs=1e-9)


@given(
    st.lists(st.tuples(coords, coords), min_size=3, max_size=12),
    st.floats(0, 2 * math.pi),
    st.tuples(coords, coords),
    st.floats(0.1, 10),
)
def test_similarity_scaling(pts, angle, shift, scale):
    p = Polygon(pts)
    q = p.transformed(angle, shift, scale)
    assert oriented_area(q) == pytest.approx(scale**2 * oriented_area(p), rel=1e-9, abs=1e-9)
    assert perimeter(q) == pytest.approx(scale * perimeter(p), rel=1e-9, abs=1e-9)


def test_congruence(rng):
    p = Polygon(rng.normal(size=(7, 2)))
    assert congruent_mod_rotation_translation(p, p.transformed(1.3, (2.0, -5.0)))
    assert not congruent_mod_rotation_translation(p, p.reflected())
    assert not congruent_mod_rotation_translation(p, cyclic_shift(p))


def test_polygon_is_read_only():
    p = Polygon([[0, 0], [1, 0], [0, 1]])
    with pytest.raises(ValueError):
        p.vertices[0, 0] = 5.0
    with pytest.raises(ValueError):
        Polygon([[0, 0], [1, 0]])
