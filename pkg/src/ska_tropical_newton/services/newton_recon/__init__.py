"""
Newton polytope reconstruction from a weighted tropical hypersurface.

Max convention throughout: the vertex selected by ``w`` maximizes ``w·x``.
"""

from ska_tropical_newton.services.newton_recon.completion import (
    auto_seed,
    complete_polytope,
    explore,
    multidegree,
    parity_inequalities,
    tangent_cone,
)
from ska_tropical_newton.services.newton_recon.facet_certificate import (
    certify_facet,
    certify_facet_direction,
    find_chamber_vector,
)
from ska_tropical_newton.services.newton_recon.ray_shooting import (
    ShotResult,
    ray_shoot,
    ray_shoot_batch,
    shoot_generic,
    shoot_records,
)
from ska_tropical_newton.services.newton_recon.walking import walk

__all__ = [
    "ShotResult",
    "auto_seed",
    "certify_facet",
    "certify_facet_direction",
    "complete_polytope",
    "explore",
    "find_chamber_vector",
    "multidegree",
    "parity_inequalities",
    "ray_shoot",
    "ray_shoot_batch",
    "shoot_generic",
    "shoot_records",
    "tangent_cone",
    "walk",
]
