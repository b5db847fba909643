"""Central finite differences. Also serve as independent oracles in the tests."""
from __future__ import annotations

from typing import Callable

import numpy as np

EPS = np.finfo(float).eps


def jacobian_batch(fun: Callable[[np.ndarray], np.ndarray], x: np.ndarray, h: float) -> np.ndarray:
    """J[i, j] = d fun_i / d x_j; ``fun`` must accept a (m, d) batch of points."""
    x = np.asarray(x, dtype=float)
    d = x.size
    steps = h * np.eye(d)
    out = np.asarray(fun(np.concatenate([x + steps, x - steps])))
    return ((out[:d] - out[d:]) / (2 * h)).T


def jacobian(fun: Callable[[np.ndarray], np.ndarray], x: np.ndarray, h: float = 1e-6) -> np.ndarray:
    """Same as jacobian_batch for a function of a single point."""
    return jacobian_batch(lambda X: np.array([np.ravel(fun(row)) for row in X]), x, h)


def gradient(f: Callable[[np.ndarray], float], x: np.ndarray, h: float = 1e-6) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    g = np.empty(x.size)
    for j in range(x.size):
        e = np.zeros(x.size)
        e[j] = h
        g[j] = (f(x + e) - f(x - e)) / (2 * h)
    return g


def hessian_from_values(f: Callable[[np.ndarray], float], x: np.ndarray, h: float = 1e-4) -> np.ndarray:
    """Second-order central differences of a scalar function."""
    x = np.asarray(x, dtype=float)
    d = x.size
    f0 = f(x)
    H = np.empty((d, d))
    E = h * np.eye(d)
    for i in range(d):
        H[i, i] = (f(x + E[i]) - 2 * f0 + f(x - E[i])) / h**2
        for j in range(i):
            H[i, j] = H[j, i] = (
                f(x + E[i] + E[j]) - f(x + E[i] - E[j]) - f(x - E[i] + E[j]) + f(x - E[i] - E[j])
            ) / (4 * h**2)
    return H


def default_step(x: np.ndarray) -> float:
    """cbrt(eps) * max(1, |x|): the usual step for differencing an exact gradient."""
    return EPS ** (1 / 3) * max(1.0, float(np.linalg.norm(x)))
