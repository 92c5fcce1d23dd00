"""Construction kit for Neumann subgroups of the extended modular group.

Subgroups containing exactly one element mapping infinity to each point of
the rational projective line arise from marked involutions of an integer
window, built here from six block types and verified with exact integer
arithmetic throughout: generator relations, the Stern-Brocot descent that
finds the element for any vertex, free-product structure reports, and the
distant graph picture where the subgroup acts as a Cayley representation.

The ``neumann`` command line tool exposes the same checks over simple spec
files; see the README for the file formats.
"""

from .gl2 import (
    IDENTITY,
    NU,
    OMEGA,
    TAU,
    IntMat2,
    NotUnimodular,
    ProjMat2,
    PVertex,
    act,
    base_generator,
    compose,
    first_column,
    invert,
    mat,
    signed,
    tau_power,
    vertices_up_to,
)
from .involution import (
    CASE_IDS,
    BadCase,
    BlockSpecError,
    BuildingBlock,
    InvolutionWindow,
    NotAdjacent,
    OutOfWindow,
    ValidationReport,
    assemble,
    check_sigma_decomposition,
    join,
    make_block,
    parse_block_spec,
    sigma,
    sigma_star,
    validate,
    window_lines,
)
from .verify import (
    CosetDecomposition,
    CosetKind,
    EdgeState,
    FailureReason,
    NeumannFailure,
    NeumannReport,
    NotInCoset,
    bfs_enumerate,
    check_neumann,
    coset_decompose,
    element_for_vertex,
    max_supported_height,
)
from .structure import (
    BLOCK_CONTRIBUTIONS,
    DesignatedGenerator,
    GenClass,
    SIntersectionReport,
    StructureReport,
    SynthesisResult,
    TooFewBlocks,
    UnknownBlock,
    Unrealizable,
    check_generator_products,
    check_independence,
    check_relations,
    check_tietze,
    classify_element,
    independent_generators,
    s_intersection_report,
    structure_report,
    synthesize_blocks,
)
from .graph import (
    DistantGraph,
    EdgeCliques,
    HarmonicQuad,
    NoChainWithinBound,
    NoSuchMap,
    NotAnEdge,
    are_distant,
    build,
    cayley_vs_distant,
    check_automorphism,
    clique_transitivity_map,
    harmonic_chain,
    is_harmonic,
    maximal_cliques_of_edge,
    to_adjacency,
    to_dot,
)

__version__ = "0.1.0"
