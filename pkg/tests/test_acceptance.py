"""Acceptance criteria, one test each.

Every criterion records a ``PASS``/``FAIL`` line that is printed in the
terminal summary (and immediately with ``-s``).  Running this file as a
script prints the same lines without pytest.
"""

import json
import math
import os
import subprocess
import sys
import tempfile
import time

import numpy as np
from scipy.special import exp1

from morsebound import (BoundarySample, BulkBatch, HermitianMatrix, ModelBoundaryData, Scene,
                        TorusBundleSpec, boundary_term_point, boundary_term_quadrature,
                        condition_Z, convergence_table, disc_bundle_dim, fiber_integral_residual,
                        flat_density, holefill_check, inertia, level_invariance_residual,
                        pencil_breakpoints, profile_b, profile_b_values, t_region, weak_bound)
from morsebound.spheres import shell_monte_carlo, sphere_boundary_samples

RESULTS = []


def _rand_herm(rng, m):
    a = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
    return 0.5 * (a + a.conj().T)


def _rand_posdef(rng, m):
    g = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
    return g @ g.conj().T + 0.1 * np.eye(m)


def _record(number, title, passed, detail):
    line = f"{'PASS' if passed else 'FAIL'} criterion {number:2d} {title}: {detail}"
    RESULTS.append(line)
    print(line)
    assert passed, line


def criterion_1():
    start = time.perf_counter()
    spec = TorusBundleSpec((3,), (-2,))
    dims = [disc_bundle_dim(spec, 0, k) for k in (1, 2, 10, 100)]
    rows = convergence_table(spec, 0, range(10, 201))
    elapsed = time.perf_counter() - start
    worst = max(r.abs_error * r.k for r in rows)
    ok = dims == [4, 12, 240, 22650] and worst <= 2.0 and elapsed < 1.0
    return ok, f"dims={dims} max k*err={worst:.4f} (<= 2) time={elapsed:.3f}s (< 1s)"


def criterion_2():
    rng = np.random.default_rng(2)
    worst_fill = worst_point = 0.0
    for _ in range(100):
        n = int(rng.integers(2, 5))
        boundary = []
        for _ in range(int(rng.integers(1, 5))):
            a = _rand_posdef(rng, n - 1)
            boundary.append(BoundarySample(float(rng.uniform(0.1, 2.0)), a, -a))
        k = int(rng.integers(0, 5))
        thetas = np.stack([_rand_posdef(rng, n) for _ in range(k)]) if k else np.zeros((0, n, n))
        scene = Scene(n, BulkBatch(rng.uniform(0.1, 1.0, k), thetas, n), tuple(boundary))
        rep = holefill_check(scene)
        worst_fill = max(worst_fill, abs(rep.residual) / abs(rep.vol_bundle))
        a = boundary[0].theta_tan
        want = a.det() / n
        worst_point = max(worst_point, abs(boundary_term_point(a, -a, 0) - want) / want)
    ok = worst_fill <= 1e-10 and worst_point <= 1e-12
    return ok, f"holefill rel residual {worst_fill:.2e} (<= 1e-10), det/n rel {worst_point:.2e} (<= 1e-12)"


def criterion_3():
    rng = np.random.default_rng(3)
    mismatches = sign_bad = 0
    worst_sign = 0.0
    for _ in range(1000):
        m = int(rng.integers(1, 6))
        a, b = _rand_herm(rng, m), _rand_herm(rng, m)
        cuts = pencil_breakpoints(a, b)
        top = 1.5 * (cuts[-1] if cuts else 1.0) + 1.0
        ts = np.linspace(0.0, top, 10_001)[1:]
        mats = a[None] + ts[:, None, None] * b[None]
        idx = np.sum(np.linalg.eigvalsh(mats) < 0, axis=1)
        dets = np.real(np.linalg.det(mats))
        near = np.zeros(ts.shape, dtype=bool)
        for c in cuts:
            near |= np.abs(ts - c) <= 1e-6
        for q in range(m + 1):
            inside = t_region(a, b, q).contains(ts)
            mismatches += int(np.count_nonzero((inside != (idx == q)) & ~near))
            scaled = (-1) ** q * dets[inside]
            if scaled.size:
                worst_sign = min(worst_sign, float(scaled.min()))
                sign_bad += int(np.count_nonzero(scaled < -1e-12))
    ok = mismatches == 0 and sign_bad == 0
    return ok, f"scan mismatches={mismatches}, sign violations={sign_bad} (min signed det {worst_sign:.1e})"


def criterion_4():
    rng = np.random.default_rng(4)
    bad = 0
    for _ in range(1000):
        m = int(rng.integers(1, 6))
        levi, a = _rand_herm(rng, m), _rand_herm(rng, m)
        neg = inertia(levi).negatives
        for q in range(m + 2):
            z = condition_Z(levi, m + 1, q)
            unbounded = t_region(a, levi, q).unbounded
            if (not z) != (neg == q) or unbounded != (neg == q):
                bad += 1
    return bad == 0, f"disagreements={bad} over 1000 Levi matrices, all grades"


def criterion_5():
    b0 = profile_b(0.0)
    grid = np.linspace(0.5, 100.0, 200)
    b = profile_b_values(grid)
    decreasing = bool(np.all(np.diff(b) < 0))
    bounded = bool(np.all((b > 0) & (b <= np.minimum(1.0, 1.0 / grid))))
    b1_err = abs(profile_b(1.0) - (1.0 - math.e * exp1(1.0)))
    rng = np.random.default_rng(5)
    worst = 0.0
    count = 0
    while count < 50:
        m = int(rng.integers(1, 4))
        a, levi = _rand_herm(rng, m), _rand_herm(rng, m)
        q = int(rng.integers(0, m + 1))
        region = t_region(a, levi, q)
        if region.unbounded or region.empty:
            continue
        term = boundary_term_point(a, levi, q)
        res = fiber_integral_residual(ModelBoundaryData(a, levi, q), 1e-6)
        worst = max(worst, abs(res) / term)
        count += 1
    ok = abs(b0 - 1.0) <= 1e-8 and decreasing and bounded and worst <= 1e-6 and b1_err <= 1e-6
    return ok, (f"b(0)-1={b0 - 1.0:.1e}, decreasing={decreasing}, bounded={bounded}, "
                f"fiber worst rel {worst:.2e} (<= 1e-6), b(1) err {b1_err:.1e}")


def criterion_6():
    rng = np.random.default_rng(6)
    worst = 0.0
    count = 0
    while count < 1000:
        m = int(rng.integers(1, 6))
        a, b = _rand_herm(rng, m), _rand_herm(rng, m)
        q = int(rng.integers(0, m + 1))
        region = t_region(a, b, q)
        if region.unbounded or region.empty:
            continue
        exact = boundary_term_point(a, b, q)
        quad = boundary_term_quadrature(a, b, q)
        worst = max(worst, abs(quad - exact) / abs(exact))
        count += 1
    return worst <= 1e-8, f"worst relative disagreement {worst:.2e} (<= 1e-8) on 1000 instances"


def criterion_7():
    first = abs(flat_density(np.diag([1.0, -1.0]), 1) - 1.0 / math.pi ** 2)
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(100):
        m = int(rng.integers(1, 6))
        h = _rand_herm(rng, m)
        want = abs(np.linalg.det(h).real) / math.pi ** m
        got = math.fsum(flat_density(h, q) for q in range(m + 1))
        worst = max(worst, abs(got - want) / want)
    ok = first <= 1e-12 and worst <= 1e-12
    return ok, f"|flat(diag(1,-1),1) - 1/pi^2|={first:.1e}, grade-sum worst rel {worst:.1e}"


def criterion_8():
    limit = boundary_term_point(HermitianMatrix.diag([2, 3]), HermitianMatrix.diag([-1, -1]), 1)
    rows = convergence_table(TorusBundleSpec((2, 3), (-1, -1)), 1, range(10, 101))
    c = max(r.abs_error * r.k for r in rows)
    parallel = [disc_bundle_dim(TorusBundleSpec((2, 2), (-1, -1)), 1, k) / k ** 3
                for k in (10, 50, 100)]
    ok = limit > 0 and abs(limit - 1 / 6) <= 1e-14 and c <= 1.0 and max(parallel) == 0.0
    return ok, f"limit={limit:.15f} (1/6), max k*err={c:.4f} (C=1), parallel normalized={parallel}"


def criterion_9():
    start = time.perf_counter()
    theta = np.eye(2)
    rng = np.random.default_rng(9)
    shell = shell_monte_carlo(theta, -1.0, -0.5, 1_000_000, rng)
    level_c = sphere_boundary_samples(theta, -1.0, 200, rng)
    level_cp = sphere_boundary_samples(theta, -0.5, 200, rng)
    res = level_invariance_residual(shell, level_c, level_cp, 0, 2)
    term = weak_bound(Scene(2, None, tuple(level_c)), 0)
    elapsed = time.perf_counter() - start
    ok = abs(res) <= 0.02 * term and elapsed < 10.0
    return ok, f"|residual|/term={abs(res) / term:.4f} (<= 0.02), time={elapsed:.2f}s (< 10s)"


def _cli_invocations(workdir):
    scene = os.path.join(workdir, "scene.json")
    with open(scene, "w") as fh:
        json.dump({"n": 2, "bulk_samples": [{"weight": 0.5, "theta": [[1, 0], [0, 2]]}],
                   "boundary_samples": [{"weight": 1.0, "theta_tan": [[3]], "levi": [[-2]]}]}, fh)
    return [
        ["bound", "--input", scene],
        ["bound", "--input", scene, "--q", "0"],
        ["strong", "--input", scene, "--q", "1", "--mode", "concave"],
        ["tregion", "--A", "[[2,0],[0,1]]", "--B", "[[-1,0],[0,-1]]", "--q", "1"],
        ["torus", "--lambda", "3", "--mu", "-2", "--q", "0", "--k", "1,2,10,100"],
        ["model", "--phi0", "[[3]]", "--levi", "[[-2]]", "--q", "0", "--v", "0,-1"],
        ["check", "--suite", "holefill"],
        ["check", "--suite", "fubini"],
        ["check", "--suite", "zq"],
        ["check", "--suite", "convergence"],
        ["bound", "--input", scene, "--q", "1"],
    ]


def criterion_10():
    differing = []
    with tempfile.TemporaryDirectory() as tmp:
        for argv in _cli_invocations(tmp):
            runs = [subprocess.run([sys.executable, "-m", "morsebound", *argv],
                                   capture_output=True) for _ in range(2)]
            if (runs[0].stdout, runs[0].stderr, runs[0].returncode) != \
               (runs[1].stdout, runs[1].stderr, runs[1].returncode):
                differing.append(argv[0])
        total = len(_cli_invocations(tmp))
    return not differing, f"{total - len(differing)}/{total} invocations byte-identical"


CRITERIA = [
    (1, "torus saturation", criterion_1),
    (2, "hole-filling identity", criterion_2),
    (3, "T(q) brute-force scan", criterion_3),
    (4, "Z(q) boundedness", criterion_4),
    (5, "model kernel identities", criterion_5),
    (6, "quadrature cross-path", criterion_6),
    (7, "flat model density", criterion_7),
    (8, "non-conformal growth", criterion_8),
    (9, "level-surface invariance", criterion_9),
    (10, "CLI determinism", criterion_10),
]


def _run(number):
    _, title, fn = CRITERIA[number - 1]
    passed, detail = fn()
    _record(number, title, passed, detail)


def test_criterion_01_torus_saturation():
    _run(1)


def test_criterion_02_holefill():
    _run(2)


def test_criterion_03_t_region_scan():
    _run(3)


def test_criterion_04_condition_z():
    _run(4)


def test_criterion_05_model_kernel():
    _run(5)


def test_criterion_06_quadrature_cross_path():
    _run(6)


def test_criterion_07_flat_density():
    _run(7)


def test_criterion_08_nonconformal_growth():
    _run(8)


def test_criterion_09_level_invariance():
    _run(9)


def test_criterion_10_cli_determinism():
    _run(10)


if __name__ == "__main__":
    failed = 0
    for number, _, _ in CRITERIA:
        try:
            _run(number)
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
