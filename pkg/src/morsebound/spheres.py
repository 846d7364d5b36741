"""Quadrature samples for the level sets of ``rho = -|z|^2`` in flat ``C^n``.

The sublevel set ``{rho <= c}`` is the outside of the ball of squared
radius ``-c``.  Its boundary is a round sphere whose Levi form, for the
unit-norm defining function, is ``-1/r`` times the identity in every
complex tangent direction.  The curvature ``theta`` is a constant
Hermitian matrix in the standard (orthonormal) frame.
"""

from __future__ import annotations

import math

import numpy as np

from .integrals import BoundarySample, BulkBatch
from .pencil import as_hermitian

__all__ = ["sphere_area", "sphere_boundary_samples", "shell_monte_carlo"]


def sphere_area(n: int, r: float) -> float:
    """Euclidean area of the sphere of radius ``r`` in ``C^n = R^{2n}``."""
    return 2.0 * math.pi ** n * r ** (2 * n - 1) / math.factorial(n - 1)


def _tangent_frame(p: np.ndarray) -> np.ndarray:
    """Orthonormal basis (columns) of the complex orthogonal complement of ``p``."""
    n = p.size
    nu = p / np.linalg.norm(p)
    basis = np.column_stack([nu, np.eye(n, dtype=complex)])
    q, _ = np.linalg.qr(basis)
    return q[:, 1:n]


def sphere_boundary_samples(theta, c: float, n_points: int, rng=None):
    """Boundary samples on the level ``rho = c`` (``c < 0``).

    Points are drawn uniformly on the sphere (``rng`` given) or, when
    ``rng`` is None, a single representative point carries the whole
    boundary measure; for constant ``theta`` proportional to the identity
    that is exact.
    """
    theta = as_hermitian(theta)
    n = theta.dim
    if c >= 0:
        raise ValueError("levels of -|z|^2 are negative")
    r = math.sqrt(-c)
    if rng is None:
        points = np.zeros((1, n), dtype=complex)
        points[0, 0] = r
    else:
        g = rng.standard_normal((n_points, n)) + 1j * rng.standard_normal((n_points, n))
        points = r * g / np.linalg.norm(g, axis=1, keepdims=True)
    # boundary measure = half the Euclidean area element
    weight = 0.5 * sphere_area(n, r) / len(points)
    levi = -np.eye(n - 1) / r
    out = []
    th = theta.array()
    for p in points:
        u = _tangent_frame(p)
        out.append(BoundarySample(weight, u.conj().T @ th @ u, levi))
    return out


def shell_monte_carlo(theta, c: float, cprime: float, n_points: int, rng) -> BulkBatch:
    """Uniform Monte Carlo rule for ``{c < rho <= c'}`` with constant curvature."""
    theta = as_hermitian(theta)
    n = theta.dim
    r_out = math.sqrt(-c)
    x = rng.uniform(-r_out, r_out, size=(n_points, 2 * n))
    rsq = np.sum(x * x, axis=1)
    inside = (rsq < -c) & (rsq >= -cprime)
    box = (2.0 * r_out) ** (2 * n)
    count = int(np.count_nonzero(inside))
    weights = np.full(count, box / n_points)
    thetas = np.broadcast_to(theta.entries, (count, n, n))
    return BulkBatch(weights, thetas, n)
