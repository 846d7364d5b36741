"""Exact cohomology dimensions for line bundles on tori and disc bundles over tori.

For a line bundle with constant curvature eigenvalues ``lam`` on a flat
torus, ``h^q = prod |lam_i|`` when exactly ``q`` eigenvalues are negative.
For the unit disc bundle of ``L_mu^*`` over ``T^{n-1}`` with the pulled
back bundle, sections expand in powers ``w^j`` of the fiber coordinate and

    h^q = sum over j >= 0 with index(lam + j mu) = q of prod |lam_i + j mu_i|.

Scaling ``lam -> k lam`` turns the sum into a Riemann sum for the boundary
term, which is what :func:`convergence_table` tabulates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegenerateEigenvalue, DivergentBoundaryTerm, UnboundedJSet
from .integrals import BoundarySample, Scene, Units, boundary_term_point
from .pencil import HermitianMatrix

__all__ = [
    "TorusBundleSpec",
    "JSet",
    "ConvergenceRow",
    "torus_dim",
    "j_set",
    "disc_bundle_dim",
    "convergence_table",
    "scene_from_spec",
]


def _negatives(values) -> int:
    return sum(1 for x in values if x < 0)


@dataclass(frozen=True)
class TorusBundleSpec:
    lam: tuple
    mu: tuple

    def __post_init__(self):
        lam = tuple(int(x) for x in self.lam)
        mu = tuple(int(x) for x in self.mu)
        if len(lam) != len(mu) or not lam:
            raise ValueError("lam and mu must be non-empty and of equal length")
        if 0 in lam or 0 in mu:
            raise DegenerateEigenvalue("curvature eigenvalues must be non-zero integers")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "mu", mu)

    @property
    def n(self) -> int:
        return len(self.lam) + 1

    def scaled(self, k: int) -> "TorusBundleSpec":
        return TorusBundleSpec(tuple(k * x for x in self.lam), self.mu)


@dataclass(frozen=True)
class JSet:
    members: tuple
    degenerate_skipped: tuple = ()


@dataclass(frozen=True)
class ConvergenceRow:
    k: int
    dim: int
    normalized: float
    limit: float
    abs_error: float


def torus_dim(lam, q: int) -> int:
    lam = [int(x) for x in lam]
    if 0 in lam:
        raise DegenerateEigenvalue("zero curvature eigenvalue")
    if _negatives(lam) != q:
        return 0
    return math.prod(abs(x) for x in lam)


def j_set(spec: TorusBundleSpec, q: int) -> JSet:
    """All ``j >= 0`` where ``diag(lam + j mu)`` has exactly ``q`` negative entries.

    Past ``j = max |lam_i / mu_i|`` every entry has the sign of ``mu_i``, so
    the set is finite unless ``mu`` itself has index ``q``.
    """
    if _negatives(spec.mu) == q:
        raise UnboundedJSet(f"J({q}) is infinite: the Levi data has exactly {q} negative entries")
    cutoff = max(-(-abs(l) // abs(m)) for l, m in zip(spec.lam, spec.mu)) + 1
    members, skipped = [], []
    for j in range(cutoff + 1):
        entries = [l + j * m for l, m in zip(spec.lam, spec.mu)]
        if 0 in entries:
            skipped.append(j)
        elif _negatives(entries) == q:
            members.append(j)
    return JSet(tuple(members), tuple(skipped))


def disc_bundle_dim(spec: TorusBundleSpec, q: int, k: int = 1) -> int:
    """``h^q`` of the ``k``-th power of the pulled back bundle on the disc bundle."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    scaled = spec.scaled(k)
    js = j_set(scaled, q)
    return sum(math.prod(abs(l + j * m) for l, m in zip(scaled.lam, scaled.mu))
               for j in js.members)


def scene_from_spec(spec: TorusBundleSpec) -> Scene:
    # the bundle is flat along the fiber, so the bulk contributes nothing
    sample = BoundarySample(1.0, HermitianMatrix.diag(spec.lam), HermitianMatrix.diag(spec.mu))
    return Scene(spec.n, None, (sample,), Units.CHERN)


def convergence_table(spec: TorusBundleSpec, q: int, k_list) -> list[ConvergenceRow]:
    """Normalised dimensions ``k^-n h^q`` against the boundary-term limit."""
    try:
        limit = boundary_term_point(HermitianMatrix.diag(spec.lam),
                                    HermitianMatrix.diag(spec.mu), q)
    except DivergentBoundaryTerm:
        try:
            j_set(spec, q)
        except UnboundedJSet:
            raise
        raise AssertionError("divergent boundary term with a finite J set")
    rows = []
    for k in k_list:
        k = int(k)
        dim = disc_bundle_dim(spec, q, k)
        normalized = dim / k ** spec.n
        rows.append(ConvergenceRow(k, dim, normalized, limit, abs(normalized - limit)))
    return rows
