"""Adaptive bisection quadrature with a fixed Gauss-Legendre rule per panel.

The integrand may be vector valued: ``f(x)`` receives a 1-d array of nodes
and returns an array whose last axis runs over the nodes.  All components
share one panel tree; a panel is split while any component misses its
tolerance, which lets a family of integrals (e.g. one per parameter value)
be computed in a single pass.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import QuadratureNonConvergence

__all__ = ["integrate", "integrate_semi_infinite", "fold_half_line", "GAUSS_ORDER", "MAX_DEPTH"]

GAUSS_ORDER = 10
MAX_DEPTH = 40
_ROUNDOFF = 50.0 * np.finfo(float).eps

_NODES, _WEIGHTS = np.polynomial.legendre.leggauss(GAUSS_ORDER)


def _panel_sums(f, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    """Gauss sums over every panel ``[lo_i, hi_i]``; shape (..., n_panels)."""
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    x = (mid[:, None] + half[:, None] * _NODES[None, :]).ravel()
    y = np.asarray(f(x), dtype=float)
    y = y.reshape(y.shape[:-1] + (lo.size, GAUSS_ORDER))
    return (y @ _WEIGHTS) * half


def integrate(f, a: float, b: float, rel_tol: float = 1e-10, abs_tol: float = 0.0,
              max_depth: int = MAX_DEPTH):
    """Integrate ``f`` over the finite interval ``[a, b]``.

    Parameters
    ----------
    f : callable
        Vectorised integrand, ``f(x) -> array (..., len(x))``.
    a, b : float
        Finite integration limits.
    rel_tol, abs_tol : float
        Let ``tol = max(abs_tol, rel_tol * |I|)`` per component, ``I`` the
        running estimate.  A panel of width ``w`` is accepted once
        ``|fine - coarse| <= tol * w / (b - a)`` for every component, and the
        whole computation stops as soon as the error estimates of accepted
        and active panels together fit within ``tol``.
    max_depth : int
        Maximum number of bisections of any panel.

    Returns
    -------
    float or ndarray
        The integral, shaped like ``f(x)`` without its node axis.

    Raises
    ------
    QuadratureNonConvergence
        If a panel still fails the test at ``max_depth``.
    """
    a, b = float(a), float(b)
    if not (math.isfinite(a) and math.isfinite(b)):
        raise ValueError("integrate needs finite limits; use integrate_semi_infinite")
    if a == b:
        probe = np.asarray(f(np.array([a])), dtype=float)
        return np.zeros(probe.shape[:-1])[()] if probe.ndim > 1 else 0.0
    sign = 1.0
    if b < a:
        a, b, sign = b, a, -1.0
    width = b - a

    lo = np.array([a])
    hi = np.array([b])
    coarse = _panel_sums(f, lo, hi)
    done = np.zeros(coarse.shape[:-1])
    done_err = np.zeros(coarse.shape[:-1])
    for depth in range(max_depth + 1):
        mid = 0.5 * (lo + hi)
        left = _panel_sums(f, lo, mid)
        right = _panel_sums(f, mid, hi)
        fine = left + right
        estimate = done + fine.sum(axis=-1)
        budget = np.maximum(abs_tol, rel_tol * np.abs(estimate))
        err = np.abs(fine - coarse)
        # differences at the level of rounding carry no information
        err = np.where(err <= _ROUNDOFF * (np.abs(left) + np.abs(right)), 0.0, err)
        if np.all(done_err + err.sum(axis=-1) <= budget):
            return sign * estimate
        ok = np.all(err <= budget[..., None] * ((hi - lo) / width),
                    axis=tuple(range(err.ndim - 1)))
        done = done + fine[..., ok].sum(axis=-1)
        done_err = done_err + err[..., ok].sum(axis=-1)
        if depth == max_depth:
            break
        bad = ~ok
        lo = np.concatenate([lo[bad], mid[bad]])
        hi = np.concatenate([mid[bad], hi[bad]])
        coarse = np.concatenate([left[..., bad], right[..., bad]], axis=-1)
    raise QuadratureNonConvergence(
        f"adaptive quadrature on [{a}, {b}] not converged after {max_depth} bisections")


def fold_half_line(x):
    """Nodes and Jacobians folding ``(-inf, 0]`` onto ``x`` in ``(0, 1]``.

    ``int_{-inf}^0 h(s) ds = int_0^1 [h(-x) + h(-1/x) / x^2] dx``.  Both
    pieces are singular only at ``x = 0``, where floating point is dense.
    """
    x = np.asarray(x, dtype=float)
    return -x, np.ones_like(x), -1.0 / x, 1.0 / (x * x)


def integrate_semi_infinite(f, rel_tol: float = 1e-10, abs_tol: float = 0.0,
                            max_depth: int = MAX_DEPTH):
    """Integrate ``f`` over ``(-inf, 0]``."""

    def g(x):
        s1, j1, s2, j2 = fold_half_line(x)
        return (np.asarray(f(s1), dtype=float) * j1 + np.asarray(f(s2), dtype=float) * j2)

    return integrate(g, 0.0, 1.0, rel_tol=rel_tol, abs_tol=abs_tol, max_depth=max_depth)
