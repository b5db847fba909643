import math
from types import SimpleNamespace

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from polymorse import ChartPoint, EdgeWord, Polygon, StarSpec, chart_at, oriented_area, perimeter
from polymorse.errors import MultipleCollisions, NonSmoothPoint, NullConfiguration
from polymorse.functional import (
    chart_value,
    clarke_certificate,
    grad_u,
    gradient,
    hessian,
    morse_index,
    normalized_area,
    normalized_u,
    random_single_collision,
    sampled_gradient_separation,
    signature,
)
from polymorse.projective import polygon_to_edgeword
from polymorse.solver import star_edgeword


def _word(rng, n):
    return EdgeWord(rng.normal(size=n - 1) + 1j * rng.normal(size=n - 1))


@given(st.integers(4, 12), st.integers(0, 2**32 - 1), st.floats(0.01, 100), st.floats(0, 2 * math.pi))
def test_scale_invariance(n, seed, r, phi):
    e = _word(np.random.default_rng(seed), n)
    a = normalized_area(e).normalized
    b = normalized_area(e.scaled(r * np.exp(1j * phi))).normalized
    assert b == pytest.approx(a, abs=1e-12)


def test_shoelace_equivalence(rng):
    for _ in range(200):
        p = Polygon(rng.normal(size=(int(rng.integers(3, 12)), 2)))
        v = normalized_area(polygon_to_edgeword(p))
        assert v.area_raw == pytest.approx(oriented_area(p), abs=1e-12)
        assert v.perimeter_raw == pytest.approx(perimeter(p), abs=1e-12)


@pytest.mark.parametrize("n", range(4, 11))
def test_regular_polygon_bound(n, rng):
    bound = 1 / (4 * n * math.tan(math.pi / n))
    assert normalized_area(star_edgeword(StarSpec(n, "star", 1))).normalized == pytest.approx(bound, rel=1e-13)
    vals = normalized_u(rng.normal(size=(2000, n - 1)) + 1j * rng.normal(size=(2000, n - 1)))
    assert np.max(np.abs(vals)) <= bound


def test_triangle_value():
    e = EdgeWord([1, np.exp(2j * np.pi / 3)])
    assert normalized_area(e).normalized == pytest.approx(math.sqrt(3) / 36, rel=1e-14)


def test_null_configuration():
    # EdgeWord itself refuses the zero word, so hand over a bare container
    with pytest.raises(NullConfiguration):
        normalized_area(SimpleNamespace(u=np.zeros(3, complex)))


@pytest.mark.parametrize("n", range(4, 11))
def test_gradient_matches_finite_differences(n, rng):
    for _ in range(20):
        c = chart_at(_word(rng, n))
        g = gradient(c)
        h = 1e-6
        fd = np.array(
            [
                (chart_value(c.moved(h * d)) - chart_value(c.moved(-h * d))) / (2 * h)
                for d in np.eye(c.dim)
            ]
        )
        assert np.linalg.norm(g - fd) <= 1e-6 * np.linalg.norm(g)


def test_power_gradient_matches_finite_differences(rng):
    for p in (0.5, 2.0, 3.0):
        u = rng.normal(size=5) + 1j * rng.normal(size=5)
        g = grad_u(u, p)
        h = 1e-6
        for k in range(5):
            for unit in (1, 1j):
                du = np.zeros(5, complex)
                du[k] = h * unit
                fd = (normalized_u(u + du, p) - normalized_u(u - du, p)) / (2 * h)
                comp = g[k].real if unit == 1 else g[k].imag
                assert comp == pytest.approx(fd, rel=1e-5, abs=1e-9)


@pytest.mark.parametrize("n", [5, 8])
def test_hessian_symmetry_and_chart_independence(n):
    e = star_edgeword(StarSpec(n, "star", 2))
    sigs = set()
    for pivot in range(n - 1):
        Hs, H = hessian(chart_at(e, pivot), raw=True)
        assert np.max(np.abs(H - H.T)) <= 1e-5 * np.max(np.abs(H))
        sigs.add(signature(np.linalg.eigvalsh(Hs)))
    assert len(sigs) == 1


def test_morse_index_zero_rule():
    assert morse_index([-2, -1, 3]) == 2
    assert morse_index([-2, 1e-9, 3]) is None
    assert signature([-1, 0, 1]) == (1, 1, 1)


def test_nonsmooth_gradient_raises():
    c = ChartPoint(5, 0, [0, 0, 1, 0, -2, 0])  # u_2 = 0
    with pytest.raises(NonSmoothPoint):
        gradient(c)
    with pytest.raises(NonSmoothPoint):
        hessian(c)


@pytest.mark.parametrize("n", range(4, 9))
def test_clarke_disc_matches_sampled_gradients(n, rng):
    for _ in range(10):
        e = random_single_collision(n, rng)
        cert = clarke_certificate(e)
        assert cert.margin > 0 and cert.gap > 0 and cert.regular
        # reopen the collapsed edge along each direction: partial gradients trace the disc boundary
        edges = np.roll(e.all_edges(), -cert.collapsed_edge)
        u = edges[:-1].copy()
        eps = 1e-9 * np.linalg.norm(u)
        for theta in np.linspace(0, 2 * np.pi, 16, endpoint=False):
            u[0] = eps * np.exp(1j * theta)
            g0 = grad_u(u)[0]
            assert abs(abs(g0 - cert.center) - cert.radius) <= 1e-6 * (abs(cert.center) + cert.radius)
        assert sampled_gradient_separation(e) > 0


def test_clarke_errors():
    with pytest.raises(MultipleCollisions):
        clarke_certificate(EdgeWord([0, 1, 0, 1j]))
    # a vanishing tail would also collapse the closing edge
    with pytest.raises(MultipleCollisions):
        clarke_certificate(EdgeWord([0, 1, -1 + 1j, -1j]))
    with pytest.raises(ValueError):
        clarke_certificate(EdgeWord([1, 1j, 1]))
