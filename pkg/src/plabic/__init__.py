"""Matching polytopes of plane-bipartite graphs in a disk.

Exact enumeration of almost perfect matchings, perfect orientations and
flows; symbolic Plücker coordinates; the face lattice, facets and Ehrhart
data of the matching polytope; and the positroid with its matroid polytope.
"""

from .ehrhart import EhrhartData, count_lattice_points, ehrhart, ehrhart_polynomial, hstar_vector, volume_and_degree
from .errors import InvariantError
from .graph import DiskGraph, FaceSet, GraphError, GraphType, faces, graph_type, make_graph, parse_graph
from .laurent import LaurentPoly
from .matchings import (
    Flow,
    Matching,
    Orientation,
    enumerate_flows,
    enumerate_matchings,
    enumerate_orientations,
    matching_adjacent,
    matching_to_orientation,
    orientation_to_matching,
    reverse_flow,
)
from .measurement import PluckerVector, evaluate_plucker, newton_polytope, orientation_invariance_check, plucker_polynomials
from .polytope import (
    ElementarySubgraph,
    FaceLattice,
    MatchingPolytope,
    build_polytope,
    dimension_crosscheck,
    face_lattice,
    facets,
    geometric_edge_equivalence,
    is_edge_face,
    membership,
)
from .positroid import MatroidPolytopeData, Positroid, fiber_newton_polytope, matroid_polytope, positroid_bases, project_psi

__version__ = "0.1.0"
