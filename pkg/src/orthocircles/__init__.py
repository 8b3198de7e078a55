"""Arrangements of orthogonal circles: constructions, intersection graphs,
cell censuses, and structural audits."""

from .geom import (
    Circle,
    DegenerateImageError,
    Line,
    PairRelation,
    Point,
    PointLocation,
    RelationKind,
    TangencyError,
    Tolerance,
    intersect_points,
    intersection_angle,
    invert,
    invert_point,
    make_line,
    orthogonal,
    point_in_circle,
    relation,
    segment_circle_intersections,
)
from .arrangement import (
    Arrangement,
    DepthLabeling,
    Mode,
    ValidationReport,
    Violation,
    centers_outside_other_circles,
    depth_labeling,
    is_nonnested,
    make_arrangement,
    validate,
)
from .graph import (
    BoundReport,
    CrossingReport,
    ForbiddenWitness,
    IntersectionGraph,
    NotPlaneError,
    SmallGraph,
    build_graph,
    check_bounds,
    crossing_pairs,
    degree_sequence,
    edge_count,
    find_forbidden,
    max_edges_c3c4_free,
    outer_face,
)
from .cells import ArcSubdivision, FaceCensus, NonGenericError, build_subdivision, face_census
from .generators import (
    AugmentationError,
    DomainError,
    GenerationError,
    PerturbationError,
    WheelGeometry,
    augment_triangles,
    growth_ratio,
    make_nested_wheels,
    make_nonnested_wheels,
    make_random_nonnested,
    make_wheel,
    perturb_acute,
    wheel_geometry,
)
from .analysis import (
    AuditReport,
    AuditStatus,
    Classification,
    MissingRedError,
    audit,
    select_red,
)

__version__ = "0.1.0"
