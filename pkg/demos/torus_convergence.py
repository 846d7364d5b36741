"""Disc bundles over tori: exact dimensions against the boundary term.

Line bundles on a disc bundle over a torus have cohomology that can be
counted exactly, so they show the Morse bound being attained.
"""

# %%
from morsebound import HermitianMatrix, TorusBundleSpec, boundary_term_point, convergence_table

spec = TorusBundleSpec(lam=(3,), mu=(-2,))
limit = boundary_term_point(HermitianMatrix.diag(spec.lam), HermitianMatrix.diag(spec.mu), 0)
print(f"boundary term for lam=3, mu=-2, q=0: {limit}")

# %%
# k^-2 h^0 approaches the boundary term at rate about 1/k
for row in convergence_table(spec, 0, [1, 2, 10, 100, 1000]):
    print(f"k={row.k:5d}  h^0={row.dim:9d}  k^-2 h^0={row.normalized:.6f}  k*err={row.k * row.abs_error:.3f}")

# %%
# two fiber directions, grade 1: the limit is a plain polynomial integral, 1/6
spec = TorusBundleSpec(lam=(2, 3), mu=(-1, -1))
for row in convergence_table(spec, 1, [10, 100, 1000]):
    print(f"k={row.k:5d}  k^-3 h^1={row.normalized:.8f}  limit={row.limit:.8f}")
