"""Built-in self-check suites run by ``morsebound check``.

Each suite returns a list of :class:`CheckResult`; all randomness is seeded
so the reports are reproducible byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bergman import ModelBoundaryData, fiber_integral_residual
from .integrals import BoundarySample, BulkBatch, Scene, boundary_term_point, holefill_check
from .pencil import condition_Z, inertia, t_region
from .torus import TorusBundleSpec, convergence_table, disc_bundle_dim

__all__ = ["CheckResult", "SUITES", "run_suite", "random_hermitian", "random_definite"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    value: float
    tolerance: float
    passed: bool


def random_hermitian(rng, m: int, complex_entries: bool = True) -> np.ndarray:
    a = rng.standard_normal((m, m))
    if complex_entries:
        a = a + 1j * rng.standard_normal((m, m))
    return 0.5 * (a + a.conj().T)


def random_definite(rng, m: int) -> np.ndarray:
    g = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
    return g @ g.conj().T + 0.1 * np.eye(m)


def _holefill(seed=11):
    rng = np.random.default_rng(seed)
    out = []
    for case in range(10):
        n = int(rng.integers(2, 5))
        boundary = []
        for _ in range(3):
            a = random_definite(rng, n - 1)
            boundary.append(BoundarySample(float(rng.uniform(0.1, 2.0)), a, -a))
        thetas = np.stack([random_definite(rng, n) for _ in range(4)])
        scene = Scene(n, BulkBatch(rng.uniform(0.1, 1.0, 4), thetas), tuple(boundary))
        rep = holefill_check(scene)
        rel = abs(rep.residual) / max(abs(rep.vol_bundle), 1e-300)
        out.append(CheckResult(f"holefill[{case}].relative_residual", rel, 1e-10, rel <= 1e-10))
    return out


def _fubini(seed=12):
    rng = np.random.default_rng(seed)
    cases = [(np.diag([3.0]), np.diag([-2.0]), 0)]
    while len(cases) < 4:
        m = int(rng.integers(1, 3))
        a, b = random_hermitian(rng, m), random_hermitian(rng, m)
        q = int(rng.integers(0, m + 1))
        if inertia(b).negatives == q or t_region(a, b, q).empty:
            continue
        cases.append((a, b, q))
    out = []
    for i, (a, b, q) in enumerate(cases):
        data = ModelBoundaryData(a, b, q)
        term = boundary_term_point(a, b, q)
        rel = abs(fiber_integral_residual(data, 1e-6)) / term
        out.append(CheckResult(f"fubini[{i}].relative_residual", rel, 1e-6, rel <= 1e-6))
    return out


def _zq(seed=13):
    rng = np.random.default_rng(seed)
    mismatches = 0
    for _ in range(200):
        m = int(rng.integers(1, 5))
        levi = random_hermitian(rng, m)
        a = random_hermitian(rng, m)
        neg = inertia(levi).negatives
        for q in range(m + 2):
            z = condition_Z(levi, m + 1, q)
            unbounded = t_region(a, levi, q).unbounded
            if z == (neg == q) or unbounded != (neg == q):
                mismatches += 1
    return [CheckResult("zq.mismatches", float(mismatches), 0.0, mismatches == 0)]


def _convergence():
    spec = TorusBundleSpec((3,), (-2,))
    out = []
    for k, want in ((1, 4), (2, 12), (10, 240), (100, 22650)):
        got = disc_bundle_dim(spec, 0, k)
        out.append(CheckResult(f"convergence.dim[k={k}]", float(got - want), 0.0, got == want))
    rows = convergence_table(spec, 0, range(10, 201))
    worst = max(row.abs_error * row.k for row in rows)
    out.append(CheckResult("convergence.max_k_times_error", worst, 2.0, worst <= 2.0))
    return out


SUITES = {
    "holefill": _holefill,
    "fubini": _fubini,
    "zq": _zq,
    "convergence": _convergence,
}


def run_suite(name: str) -> list[CheckResult]:
    try:
        suite = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}") from None
    return suite()

