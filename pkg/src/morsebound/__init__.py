"""Holomorphic Morse inequality bounds on complex manifolds with boundary.

Bulk and boundary curvature integrals, index regions of Hermitian pencils,
model Bergman densities, and exact disc-bundle-over-torus dimensions.
"""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .pencil import (HermitianMatrix, Inertia, TRegion, condition_Z, inertia,
                     pencil_breakpoints, t_region, tolerances)
from .integrals import (BoundarySample, BulkBatch, BulkSample, GradeTerms, HolefillReport,
                        Scene, Units, boundary_term_point, boundary_term_quadrature,
                        bulk_term, det_polynomial, grade_terms, holefill_check,
                        level_invariance_residual, strong_bounds, weak_bound)
from .bergman import (ModelBoundaryData, ProfileFunction, ProfileKind, fiber_integral_residual,
                      flat_density, model_density, profile_b, profile_b_values)
from .torus import (ConvergenceRow, JSet, TorusBundleSpec, convergence_table, disc_bundle_dim,
                    j_set, scene_from_spec, torus_dim)
from .scene_io import dumps_scene, loads_scene, parse_scene, write_scene
