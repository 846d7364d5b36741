"""Moving the boundary to another level of the defining function.

For ``rho = -|z|^2`` in C^2 with flat curvature the boundary term at a
level equals the shell bulk term plus the boundary term at a higher level.
"""

# %%
import numpy as np

from morsebound import Scene, level_invariance_residual, weak_bound
from morsebound.spheres import shell_monte_carlo, sphere_boundary_samples

theta = np.eye(2)
rng = np.random.default_rng(1)
level_c = sphere_boundary_samples(theta, -1.0, 200, rng)
level_cp = sphere_boundary_samples(theta, -0.5, 200, rng)
shell = shell_monte_carlo(theta, -1.0, -0.5, 1_000_000, rng)

# %%
print("boundary term at c  =", weak_bound(Scene(2, None, tuple(level_c)), 0))
print("boundary term at c' =", weak_bound(Scene(2, None, tuple(level_cp)), 0))
print("shell bulk term     =", weak_bound(Scene(2, shell, ()), 0))
print("residual            =", level_invariance_residual(shell, level_c, level_cp, 0, 2))
