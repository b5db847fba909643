"""The normalized area A/P^2 on homogeneous edge coordinates and its derivatives.

The low-level functions (``area_u``, ``grad_u`` ...) accept complex arrays of
shape (..., n-1) so that whole batches of points can be evaluated at once;
the finite-difference Hessian relies on that.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._numdiff import default_step, jacobian_batch
from .errors import MultipleCollisions, NonSmoothPoint, NullConfiguration, ZeroTail
from .projective import (
    ChartPoint,
    EdgeWord,
    collision_mask,
    complex_to_chart_grad,
    coords_to_u,
    edgeword_perimeter,
    embed,
    is_nonsmooth,
)


@dataclass(frozen=True)
class FunctionalValue:
    area_raw: float
    perimeter_raw: float
    normalized: float


@dataclass(frozen=True)
class ClarkeCertificate:
    """Non-criticality data at a single-collision point.

    ``margin`` = P0^2 |tail|^2 is the excess of the squared norm of the
    smooth part of the subgradient over the squared radius of the disc part;
    it is positive exactly when 0 is not in the Clarke subdifferential of
    A/P^2 along the collapsed edge. ``gap`` is the Euclidean distance from 0
    to that subdifferential (a disc), computed in this library's area
    convention.
    """

    P0: float
    A0: float
    tail: complex
    margin: float
    center: complex
    radius: float
    collapsed_edge: int

    @property
    def gap(self) -> float:
        return abs(self.center) - self.radius

    @property
    def regular(self) -> bool:
        return self.margin > 0 and self.gap > 0


def area_u(u: np.ndarray) -> np.ndarray:
    """A(u) = 1/2 sum_{i<j} Im(conj(u_i) u_j): shoelace area of the edge word."""
    u = np.asarray(u, dtype=complex)
    prefix = np.cumsum(u, axis=-1) - u  # sum_{i<j} u_i
    return 0.5 * np.sum((prefix.conj() * u).imag, axis=-1)


def area_grad_u(u: np.ndarray) -> np.ndarray:
    """Complex gradient dA/dRe(u_k) + i dA/dIm(u_k) = (i/2)(sum_{i<k} u_i - sum_{j>k} u_j)."""
    u = np.asarray(u, dtype=complex)
    before = np.cumsum(u, axis=-1) - u
    after = u.sum(axis=-1, keepdims=True) - before - u
    return 0.5j * (before - after)


def perimeter_grad_u(u: np.ndarray) -> np.ndarray:
    u = np.asarray(u, dtype=complex)
    total = u.sum(axis=-1, keepdims=True)
    return u / np.abs(u) + total / np.abs(total)


def power_sum_u(u: np.ndarray, p: float) -> np.ndarray:
    """Sum of p-th powers of all n side lengths (closing edge included)."""
    u = np.asarray(u, dtype=complex)
    return (np.abs(u) ** p).sum(axis=-1) + np.abs(u.sum(axis=-1)) ** p


def power_sum_grad_u(u: np.ndarray, p: float) -> np.ndarray:
    u = np.asarray(u, dtype=complex)
    total = u.sum(axis=-1, keepdims=True)
    return p * (np.abs(u) ** (p - 2) * u + np.abs(total) ** (p - 2) * total)


def normalized_u(u: np.ndarray, power: float = 1.0) -> np.ndarray:
    """A / P^2, or for ``power`` = p the scale-invariant A / (sum a_i^p)^(2/p)."""
    if power == 1.0:
        return area_u(u) / edgeword_perimeter(u) ** 2
    return area_u(u) / power_sum_u(u, power) ** (2 / power)


def grad_u(u: np.ndarray, power: float = 1.0) -> np.ndarray:
    """Complex gradient of A/P^2 by the quotient rule (A' P - 2 A P') / P^3."""
    u = np.asarray(u, dtype=complex)
    A = area_u(u)[..., None]
    if power == 1.0:
        P = edgeword_perimeter(u)[..., None]
        return (area_grad_u(u) * P - 2 * A * perimeter_grad_u(u)) / P**3
    Q = power_sum_u(u, power)[..., None]
    k = 2 / power
    return area_grad_u(u) / Q**k - k * A * Q ** (-k - 1) * power_sum_grad_u(u, power)


def area_homogeneous(e: EdgeWord) -> float:
    return float(area_u(e.u))


def perimeter_homogeneous(e: EdgeWord) -> float:
    return float(edgeword_perimeter(e.u))


def normalized_area(e: EdgeWord) -> FunctionalValue:
    A, P = area_homogeneous(e), perimeter_homogeneous(e)
    if P == 0:
        raise NullConfiguration("zero perimeter")
    return FunctionalValue(A, P, A / P**2)


def chart_value(c: ChartPoint, power: float = 1.0) -> float:
    return float(normalized_u(coords_to_u(c.coords, c.pivot), power))


def chart_gradient_batch(coords: np.ndarray, pivot: int, power: float = 1.0) -> np.ndarray:
    """Analytic chart gradient for an array of chart coordinates (..., 2(n-2))."""
    return complex_to_chart_grad(grad_u(coords_to_u(coords, pivot), power), pivot)


def gradient(c: ChartPoint, collision_tol: float = 1e-10, power: float = 1.0) -> np.ndarray:
    e = embed(c)
    if is_nonsmooth(e, collision_tol):
        raise NonSmoothPoint("gradient requested on the collision stratum")
    return chart_gradient_batch(c.coords, c.pivot, power)


def hessian(c: ChartPoint, collision_tol: float = 1e-10, raw: bool = False, power: float = 1.0):
    """Central differences of the analytic gradient, symmetrized.

    With ``raw=True`` returns ``(H_sym, H_unsymmetrized)``.
    """
    if is_nonsmooth(embed(c), collision_tol):
        raise NonSmoothPoint("hessian requested on the collision stratum")
    x = c.coords
    H = jacobian_batch(lambda X: chart_gradient_batch(X, c.pivot, power), x, default_step(x))
    Hs = 0.5 * (H + H.T)
    return (Hs, H) if raw else Hs


def signature(eigenvalues, rel_zero: float = 1e-6) -> tuple[int, int, int]:
    """(negative, zero, positive) counts; zero means |lam| < rel_zero * max|lam|."""
    lam = np.asarray(eigenvalues, dtype=float)
    cut = rel_zero * float(np.max(np.abs(lam))) if lam.size else 0.0
    zero = np.abs(lam) <= cut
    return int(np.sum((lam < 0) & ~zero)), int(np.sum(zero)), int(np.sum((lam > 0) & ~zero))


def morse_index(eigenvalues, rel_zero: float = 1e-6) -> int | None:
    """Number of negative eigenvalues, or None when some eigenvalue counts as zero."""
    neg, zero, _ = signature(eigenvalues, rel_zero)
    return None if zero else neg


def clarke_certificate(e: EdgeWord, collision_tol: float = 1e-10) -> ClarkeCertificate:
    """Certificate that a single-collision configuration is not Clarke-critical.

    The collapsed edge (possibly the closing one) is moved to slot 1 by a
    cyclic relabeling, which preserves A and P. With u_1 = 0 and
    tail = u_2 + ... + u_{n-1}, the partial Clarke subdifferential of A/P^2
    in (Re u_1, Im u_1) is the disc

        (P0 * dA/du_1 - 2 A0 * tail/|tail|) / P0^3  +  (2 |A0| / P0^3) * D.
    """
    mask = collision_mask(e, collision_tol)
    hits = np.flatnonzero(mask)
    if hits.size == 0:
        raise ValueError("configuration has no collapsed edge")
    if hits.size > 1:
        raise MultipleCollisions(f"edges {hits.tolist()} all vanish")
    k = int(hits[0])
    edges = np.roll(e.all_edges(), -k)
    edges[0] = 0.0
    u = edges[:-1]
    tail = complex(u[1:].sum())
    if abs(tail) <= collision_tol * np.linalg.norm(u):
        raise ZeroTail("tail sum vanishes")
    A0 = float(area_u(u))
    P0 = float(edgeword_perimeter(u))
    dA = complex(area_grad_u(u)[0])
    center = (P0 * dA - 2 * A0 * tail / abs(tail)) / P0**3
    radius = 2 * abs(A0) / P0**3
    return ClarkeCertificate(
        P0=P0,
        A0=A0,
        tail=tail,
        margin=P0**2 * abs(tail) ** 2,
        center=complex(center),
        radius=radius,
        collapsed_edge=k,
    )


def random_single_collision(n: int, rng: np.random.Generator) -> EdgeWord:
    """Random configuration with exactly one collapsed edge (possibly the closing one)."""
    u = rng.normal(size=n - 1) + 1j * rng.normal(size=n - 1)
    k = int(rng.integers(n))
    if k < n - 1:
        u[k] = 0.0
    else:
        u[-1] = -u[:-1].sum()
    return EdgeWord(u)


def sampled_gradient_separation(e: EdgeWord, radius: float = 1e-7, samples: int = 64) -> float:
    """Empirical Clarke check along the collapsed edge, independent of the certificate.

    Re-opens the collapsed edge as ``radius * exp(i theta)`` in all directions
    and collects the smooth partial gradients there; their convex hull
    approximates the partial Clarke subdifferential. Returns the minimum of
    <g(theta), d> over the samples, with d the normalized mean gradient; a
    positive value separates 0 from the hull.
    """
    hits = np.flatnonzero(collision_mask(e))
    if hits.size != 1:
        raise MultipleCollisions("need exactly one collapsed edge")
    edges = np.roll(e.all_edges(), -int(hits[0]))
    base = edges[:-1].copy()
    base[0] = 0.0
    scale = float(np.linalg.norm(base))
    theta = np.linspace(0, 2 * np.pi, samples, endpoint=False)
    pts = np.repeat(base[None, :], samples, axis=0)
    pts[:, 0] = radius * scale * np.exp(1j * theta)
    g = grad_u(pts)[:, 0]
    d = g.mean()
    return float(np.min((g * d.conjugate()).real) / abs(d))
