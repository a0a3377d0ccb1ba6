"""Metric geometry of square complexes: comparison triangles, meshes, galleries."""

from .collapsed import CollapsedGeodesicReport, check_collapsed_geodesic, through_square
from .comparison import (
    REL_TOL,
    AngleEstimate,
    ComparisonReport,
    StraightenReport,
    alexandrov_angle_limit,
    alexandrov_straighten,
    comparison_angle,
    comparison_triangle,
)
from .gallery import Gallery, Unfolding, make_gallery, unfold_gallery
from .mesh import STENCIL_FACTOR, Mesh, build_mesh, mesh_distance
from .points import SurfacePoint
from .sampler import SampleReport, TriangleWitness, sample_cat0

__all__ = [
    "AngleEstimate",
    "CollapsedGeodesicReport",
    "ComparisonReport",
    "Gallery",
    "Mesh",
    "REL_TOL",
    "STENCIL_FACTOR",
    "SampleReport",
    "StraightenReport",
    "SurfacePoint",
    "TriangleWitness",
    "Unfolding",
    "alexandrov_angle_limit",
    "alexandrov_straighten",
    "build_mesh",
    "check_collapsed_geodesic",
    "comparison_angle",
    "comparison_triangle",
    "make_gallery",
    "mesh_distance",
    "sample_cat0",
    "through_square",
    "unfold_gallery",
]
