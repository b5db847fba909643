"""Planar polygon geometry: area, perimeter, winding numbers, stars and folds."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import CenterOnBoundary


@dataclass(frozen=True, eq=False)
class Polygon:
    """Labeled n-tuple of planar points; coincident vertices are allowed."""

    vertices: np.ndarray  # shape (n, 2)

    def __post_init__(self) -> None:
        v = np.array(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2:
            raise ValueError(f"vertices must have shape (n, 2), got {v.shape}")
        if v.shape[0] < 3:
            raise ValueError("a polygon needs at least 3 vertices")
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)

    @classmethod
    def from_complex(cls, z) -> Polygon:
        z = np.asarray(z, dtype=complex)
        return cls(np.column_stack([z.real, z.imag]))

    @property
    def n(self) -> int:
        return self.vertices.shape[0]

    @property
    def z(self) -> np.ndarray:
        """Vertices as complex numbers."""
        return self.vertices[:, 0] + 1j * self.vertices[:, 1]

    def edges(self) -> np.ndarray:
        """All n edge vectors p_{k+1} - p_k (closing edge last), complex."""
        z = self.z
        return np.roll(z, -1) - z

    def edge_lengths(self) -> np.ndarray:
        return np.abs(self.edges())

    def centroid(self) -> np.ndarray:
        return self.vertices.mean(axis=0)

    def transformed(self, angle: float = 0.0, shift=(0.0, 0.0), scale: float = 1.0) -> Polygon:
        rot = scale * np.exp(1j * angle)
        return Polygon.from_complex(rot * self.z + complex(shift[0], shift[1]))

    def reflected(self) -> Polygon:
        """Mirror image across the x-axis."""
        return Polygon(self.vertices * np.array([1.0, -1.0]))


@dataclass(frozen=True)
class StarSpec:
    """Symbolic regular star S(n, w) or the complete fold of an even n-gon."""

    n: int
    kind: Literal["star", "fold"] = "star"
    w: int = 0

    def __post_init__(self) -> None:
        if self.n < 3:
            raise ValueError("n must be at least 3")
        if self.kind == "star":
            if not 1 <= abs(self.w) <= (self.n - 1) // 2:
                raise ValueError(
                    f"winding number {self.w} outside 1..{(self.n - 1) // 2} for n={self.n}"
                )
        elif self.kind == "fold":
            if self.n % 2:
                raise ValueError("complete folds exist for even n only")
            object.__setattr__(self, "w", 0)
        else:
            raise ValueError(f"unknown kind {self.kind!r}")

    @classmethod
    def fold(cls, n: int) -> StarSpec:
        return cls(n, "fold")

    @property
    def is_fold(self) -> bool:
        return self.kind == "fold"

    def mirror(self) -> StarSpec:
        return self if self.is_fold else StarSpec(self.n, "star", -self.w)

    def label(self) -> str:
        return f"F({self.n})" if self.is_fold else f"S({self.n},{self.w})"

    def build(self) -> Polygon:
        return complete_fold(self.n) if self.is_fold else regular_star(self)


def oriented_area(p: Polygon) -> float:
    """Signed shoelace area; positive for counterclockwise traversal."""
    x, y = p.vertices[:, 0], p.vertices[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def perimeter(p: Polygon) -> float:
    return float(np.sum(p.edge_lengths()))


def regular_star(s: StarSpec | tuple[int, int]) -> Polygon:
    """Regular star of perimeter 1 with vertex k at angle 2*pi*w*k/n."""
    if not isinstance(s, StarSpec):
        s = StarSpec(*s) if len(s) == 3 else StarSpec(s[0], "star", s[1])
    if s.kind != "star":
        raise ValueError("regular_star needs kind='star'; use complete_fold for folds")
    n, w = s.n, s.w
    r = 1.0 / (2 * n * math.sin(math.pi * abs(w) / n))
    k = np.arange(n)
    return Polygon.from_complex(r * np.exp(2j * np.pi * w * k / n))


def complete_fold(n: int) -> Polygon:
    """Fold of perimeter 1: even vertices at the origin, odd ones at (1/n, 0)."""
    if n % 2 or n < 4:
        raise ValueError(f"complete fold needs even n >= 4, got {n}")
    x = np.where(np.arange(n) % 2 == 1, 1.0 / n, 0.0)
    return Polygon(np.column_stack([x, np.zeros(n)]))


def star_area(n: int, w: int) -> float:
    """Closed-form oriented area of S(n, w) at perimeter 1."""
    return math.sin(2 * math.pi * w / n) / (8 * n * math.sin(math.pi * w / n) ** 2)


def cyclic_shift(p: Polygon, times: int = 1) -> Polygon:
    """The relabeling sigma: (p1, ..., pn) -> (p2, ..., pn, p1)."""
    return Polygon(np.roll(p.vertices, -times, axis=0))


def winding_number(p: Polygon, center=None, tol: float = 1e-9, snap: float = 1e-6) -> int:
    """Winding number of the closed polygonal path around ``center``.

    ``center`` defaults to the vertex centroid. Raises CenterOnBoundary if
    any edge passes within ``tol * perimeter`` of the center, or if the
    accumulated angle is not within ``snap`` of an integer number of turns.
    """
    c = p.centroid() if center is None else np.asarray(center, dtype=float)
    z = p.z - complex(c[0], c[1])
    nxt = np.roll(z, -1)
    scale = max(perimeter(p), np.max(np.abs(z)), 1e-300)

    d = nxt - z
    dd = np.abs(d) ** 2
    t = np.clip(np.where(dd > 0, -(z.conjugate() * d).real / np.where(dd > 0, dd, 1), 0.0), 0, 1)
    dist = np.abs(z + t * d)
    if np.min(dist) <= tol * scale:
        raise CenterOnBoundary(f"path passes within {np.min(dist):.3e} of the center")

    total = float(np.sum(np.angle(nxt / z))) / (2 * math.pi)
    k = round(total)
    if abs(total - k) > snap:
        raise CenterOnBoundary(f"accumulated {total:.9f} turns, not an integer")
    return int(k)


def canonical_form(p: Polygon) -> np.ndarray:
    """Complex vertices with centroid at 0 and first nonzero edge along +x."""
    z = p.z - p.z.mean()
    e = p.edges()
    scale = max(perimeter(p), 1e-300)
    nz = np.flatnonzero(np.abs(e) > 1e-12 * scale)
    if nz.size:
        first = e[nz[0]]
        z = z * (abs(first) / first)
    return z


def congruent_mod_rotation_translation(p: Polygon, q: Polygon, tol: float = 1e-9) -> bool:
    """True if a rotation plus translation maps p's labeled vertices onto q's.

    ``tol`` is relative to the larger of the two perimeters.
    """
    if p.n != q.n:
        raise ValueError("polygons have different vertex counts")
    scale = max(perimeter(p), perimeter(q), 1e-300)
    return bool(np.max(np.abs(canonical_form(p) - canonical_form(q))) <= tol * scale)
