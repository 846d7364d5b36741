"""Volume identity for conformal boundary data on random scenes."""

# %%
import numpy as np

from morsebound import BoundarySample, BulkBatch, Scene, holefill_check

rng = np.random.default_rng(0)


def posdef(m):
    g = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
    return g @ g.conj().T + 0.1 * np.eye(m)


# %%
n = 3
boundary = []
for _ in range(5):
    a = posdef(n - 1)
    boundary.append(BoundarySample(float(rng.uniform(0.5, 1.5)), a, -a))
bulk = BulkBatch(rng.uniform(0.1, 1.0, 10), np.stack([posdef(n) for _ in range(10)]))
rep = holefill_check(Scene(n, bulk, tuple(boundary)))
print(f"vol(L)        = {rep.vol_bundle:.12f}")
print(f"vol(X)        = {rep.vol_X:.12f}")
print(f"vol(dX) / n   = {rep.vol_boundary_over_n:.12f}")
print(f"residual      = {rep.residual:.2e}")
