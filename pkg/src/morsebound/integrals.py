"""Weak and strong Morse bounds assembled from sampled curvature data.

A :class:`Scene` is a quadrature rule for a manifold with boundary: bulk
samples carry the curvature matrix and a volume weight, boundary samples
carry the tangential curvature, the Levi form (for a unit-norm defining
function) and the weight of the boundary measure.  Boundary weights are
the area element of ``omega_T^{n-1}/(n-1)! ^ i d rho`` restricted to the
hypersurface, which is half of the Euclidean hypersurface area element.
"""

from __future__ import annotations

import enum
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import Polynomial

from .errors import (ConvexityViolation, DimensionMismatch, DivergentBoundaryTerm,
                     NegativeWeight, NotConformal, NotSemipositive)
from .pencil import HermitianMatrix, as_hermitian, inertia, t_region, zero_tol_factor
from .quadrature import integrate

__all__ = [
    "Units",
    "BulkSample",
    "BoundarySample",
    "BulkBatch",
    "Scene",
    "GradeTerms",
    "det_polynomial",
    "boundary_term_point",
    "boundary_term_quadrature",
    "bulk_term",
    "grade_terms",
    "weak_bound",
    "strong_bounds",
    "strong_range",
    "HolefillReport",
    "holefill_check",
    "level_invariance_residual",
]


class Units(str, enum.Enum):
    CHERN = "chern"
    RAW = "raw"


@dataclass(frozen=True)
class BulkSample:
    weight: float
    theta: HermitianMatrix

    def __post_init__(self):
        object.__setattr__(self, "weight", float(self.weight))
        object.__setattr__(self, "theta", as_hermitian(self.theta))
        if not self.weight >= 0.0:
            raise NegativeWeight(None, self.weight)


@dataclass(frozen=True)
class BoundarySample:
    weight: float
    theta_tan: HermitianMatrix
    levi: HermitianMatrix

    def __post_init__(self):
        object.__setattr__(self, "weight", float(self.weight))
        object.__setattr__(self, "theta_tan", as_hermitian(self.theta_tan))
        object.__setattr__(self, "levi", as_hermitian(self.levi))
        if not self.weight >= 0.0:
            raise NegativeWeight(None, self.weight)
        if self.theta_tan.dim != self.levi.dim:
            raise DimensionMismatch("theta_tan and levi must have the same size")


class BulkBatch:
    """Bulk samples stored as stacked arrays.

    ``weights`` has shape ``(N,)`` and ``thetas`` shape ``(N, n, n)``.  Built
    either from arrays (fast path for large quadrature rules) or from a
    sequence of :class:`BulkSample`.  Indexing and iteration yield
    :class:`BulkSample` objects.
    """

    def __init__(self, weights, thetas, n=None):
        w = np.array(weights, dtype=float).reshape(-1)
        th = np.array(thetas, dtype=complex)
        if th.size == 0:
            th = th.reshape(0, n or 0, n or 0)
        if th.ndim != 3 or th.shape[1] != th.shape[2] or th.shape[0] != w.size:
            raise DimensionMismatch(f"bulk arrays have incompatible shapes {w.shape}, {th.shape}")
        bad = np.flatnonzero(~(w >= 0.0))
        if bad.size:
            raise NegativeWeight(int(bad[0]), float(w[bad[0]]))
        if th.shape[0]:
            scale = np.maximum(1.0, np.max(np.abs(th), axis=(1, 2)))
            gap = np.max(np.abs(th - np.conj(np.swapaxes(th, 1, 2))), axis=(1, 2))
            bad = np.flatnonzero(gap > 1e-12 * scale)
            if bad.size:
                HermitianMatrix(th[bad[0]])  # raises NonHermitian with the entry
            th = 0.5 * (th + np.conj(np.swapaxes(th, 1, 2)))
        if not np.any(th.imag):
            th = th.real
        w.setflags(write=False)
        th.setflags(write=False)
        self.weights = w
        self.thetas = th

    @classmethod
    def from_samples(cls, samples, n):
        samples = list(samples)
        if not samples:
            return cls(np.zeros(0), np.zeros((0, n, n)), n)
        return cls([s.weight for s in samples], [s.theta.entries for s in samples])

    @property
    def dim(self) -> int:
        return self.thetas.shape[1]

    def __len__(self):
        return self.weights.size

    def __getitem__(self, i):
        return BulkSample(self.weights[i], HermitianMatrix(self.thetas[i]))

    def __iter__(self):
        for i in range(len(self)):
            yield self[i]

    def classify(self):
        """Per-sample index, zero-eigenvalue flag and determinant (vectorised)."""
        if not len(self):
            empty = np.zeros(0)
            return empty.astype(int), empty.astype(bool), empty
        ev = np.linalg.eigvalsh(self.thetas)
        tol = zero_tol_factor() * (1.0 + np.max(np.sum(np.abs(self.thetas), axis=2), axis=1))
        neg = np.sum(ev < -tol[:, None], axis=1)
        zero = np.any(np.abs(ev) <= tol[:, None], axis=1)
        return neg, zero, np.prod(ev, axis=1)


@dataclass(frozen=True)
class Scene:
    n: int
    bulk: BulkBatch = None
    boundary: tuple = field(default_factory=tuple)
    units: Units = Units.CHERN

    def __post_init__(self):
        if self.n < 1:
            raise DimensionMismatch(f"complex dimension must be positive, got {self.n}")
        bulk = self.bulk
        if bulk is None:
            bulk = BulkBatch.from_samples((), self.n)
        elif not isinstance(bulk, BulkBatch):
            bulk = list(bulk)
            for i, s in enumerate(bulk):
                if s.theta.dim != self.n:
                    raise DimensionMismatch(f"bulk sample {i}: theta has size {s.theta.dim}, "
                                            f"expected {self.n}")
            bulk = BulkBatch.from_samples(bulk, self.n)
        if len(bulk) and bulk.dim != self.n:
            raise DimensionMismatch(f"bulk thetas have size {bulk.dim}, expected {self.n}")
        object.__setattr__(self, "bulk", bulk)
        object.__setattr__(self, "boundary", tuple(self.boundary))
        object.__setattr__(self, "units", Units(self.units))
        for i, s in enumerate(self.boundary):
            if s.levi.dim != self.n - 1:
                raise DimensionMismatch(f"boundary sample {i}: matrices have size "
                                        f"{s.levi.dim}, expected {self.n - 1}")


def _threads() -> int:
    try:
        n = int(os.environ.get("MORSE_THREADS", "1"))
    except ValueError:
        n = 1
    if n == 0:
        return os.cpu_count() or 1
    return max(1, n)


def _map(fn, items):
    """Ordered map; parallel when MORSE_THREADS allows. Reduction stays in caller order."""
    items = list(items)
    workers = _threads()
    if workers == 1 or len(items) < 64:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# single boundary point

def det_polynomial(a, b, interval=(-1.0, 1.0)) -> Polynomial:
    """Coefficients of ``p(t) = det(A + t B)`` by interpolation.

    ``det`` is sampled at ``m + 1`` Chebyshev points of ``interval`` and the
    interpolating polynomial of degree ``m`` is returned.  Placing the
    nodes over the range where ``p`` will be used keeps the fit well
    conditioned.
    """
    a, b = as_hermitian(a), as_hermitian(b)
    if a.dim != b.dim:
        raise DimensionMismatch("pencil matrices differ in size")
    m = a.dim
    lo, hi = map(float, interval)
    k = np.arange(m + 1)
    x = np.cos(np.pi * (k + 0.5) / (m + 1))
    t = 0.5 * (lo + hi) + 0.5 * (hi - lo) * x
    vals = np.real(np.linalg.det(a.array()[None] + t[:, None, None] * b.array()[None]))
    # interpolate in the scaled variable, then map back to t
    cheb = np.polynomial.Chebyshev.fit(t, vals, m, domain=[lo, hi])
    return cheb.convert(kind=Polynomial, domain=[-1, 1], window=[-1, 1])


def _bounded_region(a, b, q, sample=None):
    region = t_region(a, b, q)
    if region.unbounded:
        raise DivergentBoundaryTerm(
            f"index region T({q}) is unbounded" + ("" if sample is None else f" at boundary sample {sample}"),
            sample=sample, grade=q)
    return region


def boundary_term_point(a, b, q: int, *, _sample=None) -> float:
    """``(-1)^q`` times the integral of ``det(A + t B)`` over the region ``T(q)``.

    Exact up to rounding: the determinant polynomial is integrated through
    its antiderivative on each interval.

    Raises
    ------
    DivergentBoundaryTerm
        If ``T(q)`` is unbounded.
    """
    a, b = as_hermitian(a), as_hermitian(b)
    region = _bounded_region(a, b, q, _sample)
    if region.empty:
        return 0.0
    top = region.intervals[-1][1]
    anti = det_polynomial(a, b, interval=(0.0, top)).integ()
    total = math.fsum(anti(hi) - anti(lo) for lo, hi in region.intervals)
    return (-1) ** q * total


def boundary_term_quadrature(a, b, q: int, rel_tol: float = 1e-10) -> float:
    """Same quantity as :func:`boundary_term_point` by adaptive quadrature of ``|det|``."""
    a, b = as_hermitian(a), as_hermitian(b)
    region = _bounded_region(a, b, q)
    aa, bb = a.array(), b.array()

    def absdet(t):
        return np.abs(np.real(np.linalg.det(aa[None] + t[:, None, None] * bb[None])))

    parts = [integrate(absdet, lo, hi, rel_tol=rel_tol * 1e-2) for lo, hi in region.intervals]
    return math.fsum(parts)


# ---------------------------------------------------------------------------
# whole scene

@dataclass(frozen=True)
class GradeTerms:
    grade: int
    bulk: float
    boundary: float
    degenerate_bulk: tuple = ()

    @property
    def total(self) -> float:
        return self.bulk + self.boundary


def _bulk_parts(scene: Scene, q: int):
    neg, zero, det = scene.bulk.classify()
    keep = (~zero) & (neg == q)
    parts = scene.bulk.weights[keep] * det[keep]
    return parts, tuple(int(i) for i in np.flatnonzero(zero))


def bulk_term(scene: Scene, q: int) -> float:
    """``(-1)^q`` times the weighted sum of ``det(theta)`` over bulk samples of index ``q``.

    Samples with a zero eigenvalue belong to no grade and are skipped; see
    :func:`grade_terms` for the list of skipped indices.
    """
    parts, _ = _bulk_parts(scene, q)
    return (-1) ** q * math.fsum(parts)


def _boundary_sum(samples, q: int) -> float:
    def one(item):
        i, s = item
        if s.weight == 0.0:
            # still checked: a zero weight does not make a divergent fiber finite
            _bounded_region(s.theta_tan, s.levi, q, i)
            return 0.0
        return s.weight * boundary_term_point(s.theta_tan, s.levi, q, _sample=i)

    return math.fsum(_map(one, enumerate(samples)))


def grade_terms(scene: Scene, q: int) -> GradeTerms:
    parts, skipped = _bulk_parts(scene, q)
    bulk = (-1) ** q * math.fsum(parts)
    return GradeTerms(q, bulk, _boundary_sum(scene.boundary, q), skipped)


def weak_bound(scene: Scene, q: int) -> float:
    """Leading coefficient of the weak Morse upper bound on ``h^q``.

    Bulk term plus the weighted boundary terms.  Raises
    :class:`DivergentBoundaryTerm` naming the first boundary sample whose
    index region is unbounded.
    """
    return grade_terms(scene, q).total


def strong_range(n: int, q: int, mode: str) -> tuple[int, list[int]]:
    """Anchor grade and grades entering the alternating sum for ``mode``."""
    if mode == "convex":
        return q, list(range(q, n + 1))
    if mode == "concave":
        top = n - 1 - q
        return top, list(range(0, top + 1))
    raise ValueError(f"mode must be 'convex' or 'concave', got {mode!r}")


def strong_bounds(scene: Scene, q: int, mode: str) -> float:
    """Right-hand side of the strong Morse inequality.

    ``convex`` returns ``I(>= q)``: sum over ``i >= q`` of
    ``(-1)^(q - i)`` times the grade-``i`` weak term.  ``concave`` returns
    ``I(<= p)`` with ``p = n - 1 - q``, alternating about ``p``.  Both
    equal ``(-1)^anchor`` times the plain curvature integral over the union
    of the index regions.
    """
    anchor, grades = strong_range(scene.n, q, mode)
    for i, s in enumerate(scene.boundary):
        inr = inertia(s.levi)
        have = inr.positives if mode == "convex" else inr.negatives
        if have < scene.n - q:
            kind = "positive" if mode == "convex" else "negative"
            raise ConvexityViolation(
                f"boundary sample {i}: Levi form has {have} {kind} eigenvalues, "
                f"need at least {scene.n - q}", sample=i)
    total = [(-1) ** (anchor - i) * weak_bound(scene, i) for i in grades]
    return math.fsum(total)


# ---------------------------------------------------------------------------
# identities

@dataclass(frozen=True)
class HolefillReport:
    vol_bundle: float
    vol_X: float
    vol_boundary_over_n: float
    residual: float


def holefill_check(scene: Scene, conformal_tol: float = 1e-9) -> HolefillReport:
    """Volume identity for conformal boundary data (``levi == -theta_tan``)."""
    for i, s in enumerate(scene.boundary):
        if np.max(np.abs(s.levi.entries + s.theta_tan.entries)) > conformal_tol:
            raise NotConformal(f"boundary sample {i}: levi != -theta_tan", sample=i)
    neg, _, _ = scene.bulk.classify()
    if np.any(neg):
        i = int(np.flatnonzero(neg)[0])
        raise NotSemipositive(f"bulk sample {i} has {neg[i]} negative eigenvalues", sample=i)
    vol_bundle = weak_bound(scene, 0)
    vol_x = bulk_term(scene, 0)
    vol_b = math.fsum(s.weight * s.theta_tan.det() for s in scene.boundary) / scene.n
    return HolefillReport(vol_bundle, vol_x, vol_b, vol_bundle - vol_x - vol_b)


def level_invariance_residual(shell_bulk, boundary_c, boundary_cprime, i: int, n: int) -> float:
    """Boundary term at level ``c`` minus shell bulk term minus boundary term at ``c'``.

    Vanishes for exact data when ``c < c'`` are regular values bounding the
    shell; the returned value is the quadrature error of the supplied samples.
    """
    shell = Scene(n, shell_bulk, ())
    return (_boundary_sum(tuple(boundary_c), i) - bulk_term(shell, i)
            - _boundary_sum(tuple(boundary_cprime), i))
