"""Toolkit for partitioning power sets into Berge-pattern-free classes."""

__version__ = "0.1.0"

from .setcore import (
    Family,
    FamilyClass,
    GroundSet,
    Part,
    Partition,
    canonicalize,
    complement,
    enumerate_family,
    family_class,
    mask_of,
    elements_of,
    partition_from_json,
    partition_from_parts,
    partition_from_text,
    partition_to_json,
    partition_to_text,
    validate_partition,
)
from .berge import (
    BergeEmbedding,
    FreenessReport,
    PatternGraph,
    QuadClass,
    QuadKind,
    Witness,
    classify_quadruple,
    find_berge_embedding,
    has_berge_cycle4,
    has_berge_path,
    has_berge_star,
    has_berge_triangle,
    intersection_graph_components,
    part_is_g_free,
    partition_is_g_free,
)
from .bounds import BoundsReport, c4_bounds, known_bounds, star_lower_bound, triangle_value
from .constructors import (
    ConstructionStats,
    claw_partition_6,
    claw_partition_9,
    exceptional_partition_5,
    modular_packing_partition,
    quad_partition,
)
from .lemma_checkers import (
    CheckReport,
    Exhaustive,
    Sample,
    check_c4_claim,
    check_even_c4_lemma,
    check_odd_c4_lemma,
    check_triangle_lemma,
)
from .search import CensusResult, SearchConfig, SearchResult, census_optimal, exact_f
