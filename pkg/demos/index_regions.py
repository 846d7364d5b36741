"""Index regions of a Hermitian pencil ``A + t B`` and the boundary term."""

# %%
import numpy as np

from morsebound import (DivergentBoundaryTerm, boundary_term_point, boundary_term_quadrature,
                        det_polynomial, inertia, pencil_breakpoints, t_region)

a = np.diag([2.0, 1.0])
b = -np.eye(2)
print("breakpoints:", pencil_breakpoints(a, b))
for q in range(3):
    print(f"T({q}) =", t_region(a, b, q))

# %%
# det(A + tB) is a polynomial in t; the boundary term integrates it exactly
print("det polynomial coefficients:", det_polynomial(a, b).coef)
print("exact:", boundary_term_point(a, b, 1), " quadrature:", boundary_term_quadrature(a, b, 1))

# %%
# the ray (last breakpoint, inf) has the index of B, so that grade diverges
print("inertia of B:", inertia(b))
try:
    boundary_term_point(a, b, 2)
except DivergentBoundaryTerm as exc:
    print("grade 2:", exc)
