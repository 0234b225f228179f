"""Involutes, fences and steepest descent curves around convex polygons."""
from .arcs import Arc, ArcChain, Segment, concat
from .connect import (RegionTag, can_connect, classify_region, connect_with_suffix,
                      minimal_connectors, random_sdc_from, tilde_involute)
from .convex_core import (AngleInterval, ConvexBody, Frame, arc_param_left, arc_param_right,
                          boundary_arc_length, cap_body, convex_hull, normal_cone, reverse_gauss,
                          support_derivatives, support_integral, support_value, tangent_points)
from .curve import (HRegion, OrientedPolyline, curve_length, h_region, is_distancing_from,
                    is_sdc_from, is_self_distancing, region_contains)
from .errors import (DegenerateError, DomainError, GeometryError, InvalidInput, JoinError,
                     NumericalError)
from .extend import (SelfDistancingSet, SinglePoint, decide_extendible, essential_pair,
                     necessary_fence_condition, sufficient_normal_cone, validate_sds)
from .fence import GFence, JFence, contains, fence_inclusion_check, g_fence, j_fence
from .involute import (Involute, build_involute, first_crossing, involute_arc_length,
                       involute_point, involute_tangent, involute_through, parallel_shift_check,
                       theta_star)

__version__ = "0.1.0"
