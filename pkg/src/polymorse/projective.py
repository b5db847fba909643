"""C_n as CP^{n-2}: homogeneous edge coordinates, affine charts, distances.

A polygon p_1..p_n modulo translation is encoded by its first n-1 edge
vectors u_k = p_{k+1} - p_k as complex numbers; the closing edge is
-(u_1 + ... + u_{n-1}). Rotation and rescaling act as multiplication by a
nonzero complex scalar, so the class of the polygon is a point of CP^{n-2}.

Chart indices are 0-based throughout (pivot in 0..n-2).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NullPolygon
from .polygon import Polygon


@dataclass(frozen=True, eq=False)
class EdgeWord:
    u: np.ndarray  # complex, length n-1

    def __post_init__(self) -> None:
        u = np.array(self.u, dtype=complex).ravel()
        if u.size < 2:
            raise ValueError("an edge word needs at least 2 entries (n >= 3)")
        if not np.any(u != 0):
            raise NullPolygon("edge word is identically zero")
        u.setflags(write=False)
        object.__setattr__(self, "u", u)

    @property
    def n(self) -> int:
        return self.u.size + 1

    def all_edges(self) -> np.ndarray:
        """The n edges including the implied closing edge."""
        return np.append(self.u, -self.u.sum())

    def scaled(self, lam: complex) -> EdgeWord:
        return EdgeWord(lam * self.u)

    def shifted(self, times: int = 1) -> EdgeWord:
        """Edge word of the cyclically relabeled polygon."""
        return EdgeWord(np.roll(self.all_edges(), -times)[:-1])


@dataclass(frozen=True, eq=False)
class ChartPoint:
    """Point of the affine chart {u_pivot = 1}, coordinates interleaved (re, im)."""

    n: int
    pivot: int
    coords: np.ndarray  # 2(n-2) reals

    def __post_init__(self) -> None:
        c = np.array(self.coords, dtype=float).ravel()
        if c.size != 2 * (self.n - 2):
            raise ValueError(f"chart for n={self.n} needs {2 * (self.n - 2)} coords, got {c.size}")
        if not 0 <= self.pivot < self.n - 1:
            raise ValueError(f"pivot {self.pivot} out of range for n={self.n}")
        c.setflags(write=False)
        object.__setattr__(self, "coords", c)

    @property
    def dim(self) -> int:
        return self.coords.size

    def moved(self, delta) -> ChartPoint:
        return ChartPoint(self.n, self.pivot, self.coords + np.asarray(delta, dtype=float))


def polygon_to_edgeword(p: Polygon) -> EdgeWord:
    u = np.diff(p.z)
    if not np.any(u != 0):
        raise NullPolygon("all vertices coincide")
    return EdgeWord(u)


def edgeword_perimeter(u: np.ndarray) -> np.ndarray:
    """P(u) = sum |u_k| + |sum u_k|, vectorized over leading axes."""
    u = np.asarray(u)
    return np.abs(u).sum(axis=-1) + np.abs(u.sum(axis=-1))


def edgeword_to_polygon(e: EdgeWord) -> Polygon:
    """Perimeter-1 representative with first vertex at the origin."""
    q = np.concatenate([[0.0], np.cumsum(e.u)])
    return Polygon.from_complex(q / edgeword_perimeter(e.u))


def normalize(e: EdgeWord) -> EdgeWord:
    """Unit-norm representative whose largest-modulus entry is real positive."""
    u = e.u / np.linalg.norm(e.u)
    k = int(np.argmax(np.abs(u)))
    u = u * (abs(u[k]) / u[k])
    u[k] = u[k].real  # exactly real, not just to round-off
    return EdgeWord(u)


def fubini_study_distance(e1: EdgeWord, e2: EdgeWord) -> float:
    """Angle between the complex lines spanned by e1 and e2, in [0, pi/2]."""
    a = e1.u / np.linalg.norm(e1.u)
    b = e2.u / np.linalg.norm(e2.u)
    if a.size != b.size:
        raise ValueError("edge words of different length")
    ip = np.vdot(a, b)
    # atan2 form keeps precision near zero where arccos does not
    return float(math.atan2(np.linalg.norm(b - ip * a), abs(ip)))


def pivot_of(u: np.ndarray) -> int:
    return int(np.argmax(np.abs(u)))  # argmax picks the lowest index on ties


def chart_at(e: EdgeWord, pivot: int | None = None) -> ChartPoint:
    u = e.u
    k = pivot_of(u) if pivot is None else pivot
    rest = np.delete(u, k) / u[k]
    coords = np.empty(2 * rest.size)
    coords[0::2] = rest.real
    coords[1::2] = rest.imag
    return ChartPoint(e.n, k, coords)


def coords_to_u(coords: np.ndarray, pivot: int) -> np.ndarray:
    """Vectorized embed: (..., 2(n-2)) reals -> (..., n-1) complex."""
    coords = np.asarray(coords, dtype=float)
    rest = coords[..., 0::2] + 1j * coords[..., 1::2]
    one = np.ones(rest.shape[:-1] + (1,), dtype=complex)
    return np.concatenate([rest[..., :pivot], one, rest[..., pivot:]], axis=-1)


def embed(c: ChartPoint) -> EdgeWord:
    return EdgeWord(coords_to_u(c.coords, c.pivot))


def complex_to_chart_grad(g: np.ndarray, pivot: int) -> np.ndarray:
    """Drop the pivot slot of a complex gradient and interleave (re, im)."""
    rest = np.delete(g, pivot, axis=-1)
    out = np.empty(rest.shape[:-1] + (2 * rest.shape[-1],))
    out[..., 0::2] = rest.real
    out[..., 1::2] = rest.imag
    return out


def needs_rechart(e: EdgeWord, pivot: int, share: float = 0.5) -> bool:
    """True when the pivot entry's share of the l1 norm drops below share/(n-1)."""
    a = np.abs(e.u)
    return bool(a[pivot] < share * a.sum() / a.size)


def collision_mask(e: EdgeWord, tol: float = 1e-10) -> np.ndarray:
    """Boolean mask over all n edges (closing edge last) that are numerically zero."""
    edges = e.all_edges()
    return np.abs(edges) < tol * np.linalg.norm(e.u)


def is_nonsmooth(e: EdgeWord, tol: float = 1e-10) -> bool:
    return bool(np.any(collision_mask(e, tol)))
