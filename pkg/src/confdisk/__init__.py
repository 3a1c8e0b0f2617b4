"""Conformal maps of pointed disks, harmonic measure, and holomorphic motions."""
from .confmap import RiemannMap, boundary_correspondence, conformal_radius, radial_limits
from .domains import BUILDERS, SceneError
from .geom import INF, BoundaryCurve, PointedDisk
from .maps import ConformalMap, DomainError, NumericError
from .measure import (DiscreteMeasure, decompose, harmonic_measure, measure_distance,
                      poisson_extend, pushforward, static_fitness_check)
from .motion import MotionFamily, builtin_motion, fitness_report
from .potential import check_energy_radius, energy, equilibrium_measure
from .wos import walk_on_spheres
from .zhukovskii import zhukovskii, zhukovskii_preimage

__version__ = "0.1.0"
