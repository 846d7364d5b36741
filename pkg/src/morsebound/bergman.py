"""Closed-form model Bergman densities.

Two local models: flat ``C^m`` with a constant-curvature line bundle, and
the boundary model domain ``{v + psi_0(z) < 0}`` whose normal metric has
profile ``a(rho)``.  The boundary density at height ``v`` is a weighted
integral over the index region ``T(q)`` of the pencil
``phi0 + t * rho0_levi`` with weight ``exp(v t) / b(t)``, where
``b(t) = int_{-inf}^0 exp(s t) / a(s) ds``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateCurvature, DivergentBoundaryTerm
from .integrals import Units, boundary_term_point
from .pencil import HermitianMatrix, as_hermitian, inertia, t_region
from .quadrature import fold_half_line, integrate

__all__ = [
    "ProfileKind",
    "ProfileFunction",
    "ModelBoundaryData",
    "profile_b",
    "profile_b_values",
    "model_density",
    "fiber_integral_residual",
    "flat_density",
]


class ProfileKind(str, enum.Enum):
    INVERSE_SQUARE_DEFAULT = "inverse_square_default"
    USER_TABULATED = "user_tabulated"


@dataclass(frozen=True, eq=False)
class ProfileFunction:
    """Normal-metric profile ``a(rho)`` on ``(-inf, 0]``.

    The default is ``a(rho) = (1 - rho)**2``.  A tabulated profile is given
    by increasing ``nodes`` ending at 0 and positive ``values``; it is
    linearly interpolated between nodes and held constant below the first.
    """

    kind: ProfileKind = ProfileKind.INVERSE_SQUARE_DEFAULT
    nodes: np.ndarray | None = None
    values: np.ndarray | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", ProfileKind(self.kind))
        if self.kind is ProfileKind.USER_TABULATED:
            x = np.asarray(self.nodes, dtype=float)
            y = np.asarray(self.values, dtype=float)
            if x.ndim != 1 or x.shape != y.shape or x.size < 2:
                raise ValueError("tabulated profile needs matching 1-d nodes and values (>= 2)")
            if np.any(np.diff(x) <= 0) or x[-1] != 0.0:
                raise ValueError("profile nodes must increase strictly and end at 0")
            if np.any(y <= 0):
                raise ValueError("profile values must be positive")
            object.__setattr__(self, "nodes", x)
            object.__setattr__(self, "values", y)

    @classmethod
    def tabulated(cls, nodes, values) -> "ProfileFunction":
        return cls(ProfileKind.USER_TABULATED, nodes, values)

    @classmethod
    def constant(cls, depth: float, value: float = 1.0) -> "ProfileFunction":
        return cls.tabulated([-float(depth), 0.0], [value, value])

    def __call__(self, s):
        s = np.asarray(s, dtype=float)
        if self.kind is ProfileKind.INVERSE_SQUARE_DEFAULT:
            return (1.0 - s) ** 2
        return np.interp(s, self.nodes, self.values)

    def inverse(self, s):
        return 1.0 / self(s)


def profile_b_values(t, profile: ProfileFunction | None = None, rel_tol: float = 1e-12):
    """Vectorised ``b(t)`` for an array of ``t >= 0``."""
    profile = profile or ProfileFunction()
    t = np.asarray(t, dtype=float)
    flat = t.reshape(-1)
    if np.any(flat < 0):
        raise ValueError("b(t) is defined for t >= 0")
    if flat.size == 0:
        return np.zeros(t.shape)
    if profile.kind is ProfileKind.INVERSE_SQUARE_DEFAULT:
        # fold the half line onto (0, 1]: 1/a(-x) = 1/(1+x)^2, 1/a(-1/x)/x^2 = 1/(1+x)^2
        def f(x):
            tx = flat[:, None] * x[None, :]
            t_over_x = flat[:, None] / x[None, :]
            return (np.exp(-tx) + np.exp(-t_over_x)) / ((1.0 + x) ** 2)[None, :]

        out = integrate(f, 0.0, 1.0, rel_tol=rel_tol)
    else:
        nodes, inv_vals = profile.nodes, 1.0 / profile.values

        def f(s):
            return np.exp(flat[:, None] * s[None, :]) / profile(s)[None, :]

        # one panel per table segment so the kinks sit on panel edges
        parts = [integrate(f, lo, hi, rel_tol=rel_tol) for lo, hi in zip(nodes[:-1], nodes[1:])]
        s0 = nodes[0]
        with np.errstate(divide="ignore", invalid="ignore"):
            tail = np.where(flat > 0, inv_vals[0] * np.exp(s0 * flat) / flat, np.inf)
        out = np.sum(parts, axis=0) + tail
    return np.asarray(out).reshape(t.shape)


def profile_b(t: float, profile: ProfileFunction | None = None, rel_tol: float = 1e-12) -> float:
    """``b(t) = int_{-inf}^0 exp(s t) / a(s) ds``."""
    return float(profile_b_values(np.array([float(t)]), profile, rel_tol)[0])


class _BCache:
    """Memo of ``b`` at quadrature nodes; local to one top-level call."""

    def __init__(self, profile, rel_tol):
        self.profile = profile
        self.rel_tol = rel_tol
        self.table = {}

    def __call__(self, t: np.ndarray) -> np.ndarray:
        missing = [x for x in np.unique(t).tolist() if x not in self.table]
        if missing:
            vals = profile_b_values(np.array(missing), self.profile, self.rel_tol)
            self.table.update(zip(missing, vals.tolist()))
        return np.array([self.table[x] for x in t.tolist()])


@dataclass(frozen=True, eq=False)
class ModelBoundaryData:
    phi0: HermitianMatrix
    rho0_levi: HermitianMatrix
    q: int
    profile: ProfileFunction = ProfileFunction()

    def __post_init__(self):
        object.__setattr__(self, "phi0", as_hermitian(self.phi0))
        object.__setattr__(self, "rho0_levi", as_hermitian(self.rho0_levi))
        region = t_region(self.phi0, self.rho0_levi, self.q)
        if region.unbounded:
            raise DivergentBoundaryTerm(f"model index region T({self.q}) is unbounded",
                                        grade=self.q)
        object.__setattr__(self, "region", region)

    @property
    def n(self) -> int:
        return self.phi0.dim + 1


def _unit_constant(n: int, units) -> float:
    if Units(units) is Units.CHERN:
        return 1.0
    return 1.0 / (4.0 * math.pi) / math.pi ** (n - 1)


def _densities(data: ModelBoundaryData, v, bvals, rel_tol, abs_tol):
    """Chern-unit density at every height in ``v`` (one shared panel tree)."""
    v = np.asarray(v, dtype=float)
    a, b = data.phi0.array(), data.rho0_levi.array()
    sign = (-1) ** data.q

    def f(t):
        det = np.real(np.linalg.det(a[None] + t[:, None, None] * b[None]))
        return sign * det[None, :] * np.exp(v[:, None] * t[None, :]) / bvals(t)[None, :]

    total = np.zeros(v.shape)
    for lo, hi in data.region.intervals:
        total = total + integrate(f, lo, hi, rel_tol=rel_tol, abs_tol=abs_tol)
    return total


def model_density(data: ModelBoundaryData, v: float, rel_tol: float = 1e-8,
                  units=Units.CHERN, abs_tol: float = 0.0) -> float:
    """Model boundary Bergman density at ``(0, u + i v)``, any ``u``.

    In chern units this is ``int_T(q) (-1)^q det(phi0 + t L) exp(v t) / b(t) dt``;
    raw units multiply by ``1 / (4 pi) / pi^(n-1)``.
    """
    if v > 0:
        raise ValueError("the model domain is v <= 0")
    bvals = _BCache(data.profile, rel_tol * 1e-2)
    dens = _densities(data, np.array([float(v)]), bvals, rel_tol, abs_tol)[0]
    return _unit_constant(data.n, units) * float(dens)


def fiber_integral_residual(data: ModelBoundaryData, rel_tol: float = 1e-6) -> float:
    """Integral of the model density against ``dv / a(v)`` minus the exact boundary term.

    The two agree identically, so the result is pure quadrature error.
    """
    exact = boundary_term_point(data.phi0, data.rho0_levi, data.q)
    if data.region.empty:
        return 0.0 - exact
    scale = abs(exact)
    bvals = _BCache(data.profile, rel_tol * 1e-4)
    inner_rel = rel_tol * 1e-2
    inner_abs = rel_tol * 1e-3 * scale

    def g(x):
        v1, j1, v2, j2 = fold_half_line(x)
        v = np.concatenate([v1, v2])
        weight = data.profile.inverse(v) * np.concatenate([j1, j2])
        dens = _densities(data, v, bvals, inner_rel, inner_abs / np.maximum(weight, 1e-300))
        both = dens * weight
        return both[: x.size] + both[x.size:]

    total = integrate(g, 0.0, 1.0, rel_tol=rel_tol * 1e-1, abs_tol=rel_tol * 1e-2 * scale)
    return float(total) - exact


def flat_density(theta, q: int, units=Units.RAW) -> float:
    """Bergman density of flat ``C^m`` with constant curvature ``theta``.

    ``|det theta| / pi^m`` when ``theta`` has exactly ``q`` negative
    eigenvalues and 0 otherwise; chern units drop the ``pi^m``.
    """
    theta = as_hermitian(theta)
    inr = inertia(theta)
    if inr.zeros:
        raise DegenerateCurvature("curvature has a zero eigenvalue")
    if inr.negatives != q:
        return 0.0
    value = abs(theta.det())
    if Units(units) is Units.RAW:
        value /= math.pi ** theta.dim
    return value
