"""Conflict collections of planar graphs: exact geometry, enumeration, bounds."""

from .geom import (
    LabelledPointSet,
    Point,
    SignPattern,
    are_combinatorially_equivalent,
    are_isomorphic,
    is_general_position,
    orientation,
    segments_properly_intersect,
    sign_pattern,
)
from .triangulations import (
    FacedTriangulation,
    StackedTriangulation,
    count_stacked,
    enumerate_stacked,
    k4,
    octahedron,
    sample_stacked,
    stack_child,
)
from .embedding import (
    EmbeddingVerdict,
    embeds_on,
    exact_embedding_counts,
    has_label_preserving_embedding,
    is_straight_line_embedding,
    octahedron_consistency_check,
    reconstruct_stacked,
    simultaneously_embeddable_on,
    verify_conflict_collection,
)
from .bounds import (
    CertifiedLog,
    SigmaBoundReport,
    alon_order_type_bound_log2,
    asymptotic_trend,
    certified_sigma,
    log2_certified,
    order_type_count_bound,
    sigma_upper_bound,
    verify_sigma_range,
    warren_component_bound,
)
from .construction import (
    Composition8,
    build_member,
    collection_size,
    composition_at,
    conflict_collection_member,
    count_compositions,
)
from .otdb import (
    OrderTypeRecord,
    OtdbConfig,
    generate_representatives,
    read_order_type_file,
    representatives,
)

__version__ = "0.1.0"
