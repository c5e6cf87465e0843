"""chroma: colorings of Delaunay-edges and t-tuples of point sets, with brute-force verifiers."""

__version__ = "0.1.0"

from .colorings import EdgeColoring, TupleColoring
from .edge_coloring import (Poset, build_conflict_graph_J, color_bottomless_edges, color_disk_edges,
                            color_halfplane_edges, color_rectangle_edges, hasse_edge_coloring)
from .errors import (BudgetExceededError, ChromaError, DimensionError, DomainMismatchError,
                     DuplicatePointError, GeneralPositionError, InconsistencyError, ShearError)
from .families import (Hypergraph, canonical_hyperedges, delaunay_edges, h_region_reduction,
                       is_shrinkable)
from .geometry import (Box, PointSet, bounding_box, check_general_position, convex_hull,
                       directed_type, shear_general_position)
from .kinds import AXIS_RECT, BOTTOMLESS, BOX, DISK, HALFPLANE, FamilyKind, HalfspaceSpec, hregion
from .tuple_coloring import (color_pairs_boxes, color_pairs_rectangles_optimal, color_tuples_h_regions,
                             lift_proper_two_coloring, lift_tuples,
                             polychromatic_tuples_from_vertex_coloring, ramsey_number,
                             verify_no_local_mapping)
from .verify import (VerificationReport, exhaustive_impossibility, find_bottomless_counterexample,
                     planarity_check, relation_hypergraph, verify_edge_coloring, verify_tuple_coloring)
