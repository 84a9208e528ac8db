"""Binomial edge ideal workbench.

Computes binomial edge ideals of simple graphs, their lex initial ideals via
admissible paths, multigraded Betti numbers and Castelnuovo-Mumford
regularity of the resulting squarefree monomial ideals, and batch-verifies
the regularity bounds, the vanishing statement behind the upper bound, the
proof machinery, and the extremal-graph conjecture on exhaustive
small-graph corpora.
"""

from .adpaths import (
    AdmissiblePath,
    Binomial,
    admissible_path_monomials,
    admissible_paths,
    binomial_edge_generators,
    colon_membership_violations,
    initial_ideal,
    path_monomial,
    wedge,
)
from .betti import (
    BettiTable,
    SimplicialComplex,
    hochster_betti,
    initial_ideal_regularity,
    multiplicity_vanishing_violations,
    reduced_homology_dims,
    stanley_reisner,
)
from .errors import FormatError, GuardError
from .graphs import (
    Graph,
    InducedPathWitness,
    canonical_form,
    complete_graph,
    cycle_graph,
    encode_graph6,
    enumerate_graphs,
    induced_subgraph,
    is_path_graph,
    longest_induced_path,
    masked_graph,
    parse_graph6,
    path_graph,
    read_graph6_file,
)
from .monomials import (
    Monomial,
    MonomialIdeal,
    PoincareBound,
    is_lyubeznik_subset,
    lyubeznik_subsets,
    mapping_cone_bound,
    minimalize,
)
from .oracle import (
    KoszulResult,
    Polynomial,
    buchberger,
    groebner_basis,
    koszul_betti,
    lead_ideal,
    normal_form,
    restriction_betti_match,
    taylor_betti,
    verify_buchberger_criterion,
)
from .pipelines import (
    LARGE_PRIME,
    GraphRecord,
    RecordCache,
    ScanSummary,
    emit_report,
    run_bounds,
    run_conjecture_scan,
    run_crosschecks,
)

__version__ = "0.1.0"
