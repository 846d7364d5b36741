"""Bergman density of the boundary model domain along the normal direction."""

# %%
import numpy as np

from morsebound import (HermitianMatrix, ModelBoundaryData, ProfileFunction, Units,
                        fiber_integral_residual, flat_density, model_density, profile_b_values)

ts = np.array([0.0, 0.5, 1.0, 10.0, 100.0])
print("b(t) for the default profile:", profile_b_values(ts))

# %%
data = ModelBoundaryData(HermitianMatrix.diag([3.0]), HermitianMatrix.diag([-2.0]), q=0)
for v in (0.0, -0.5, -1.0, -5.0, -50.0):
    print(f"v={v:6.1f}  density={model_density(data, v):.10f}  raw={model_density(data, v, units=Units.RAW):.10f}")

# %%
# integrating the density along the normal gives back the boundary term (2.25)
print("fiber residual, default profile:", fiber_integral_residual(data))
flat = ModelBoundaryData(data.phi0, data.rho0_levi, 0, ProfileFunction.constant(1e4))
print("fiber residual, constant profile:", fiber_integral_residual(flat))

# %%
print("flat density diag(1,-1), q=1:", flat_density(np.diag([1.0, -1.0]), 1))
