"""Equitable colourings of outerplanar and planar graphs under independent-set hypotheses."""
from .constructions import ConstructionCertificate, degenerate_gadget, extender_chain, planar_gadget, stalactite_chain
from .errors import (
    BudgetExceeded,
    EquicolorError,
    HypothesisViolated,
    Infeasible,
    InternalAssertionFailed,
    NotAForest,
    NotOuterplanar,
    ParseError,
    Unsolved,
    WitnessInvalid,
)
from .forest_coloring import equitable_color_forest
from .graph_core import Coloring, Graph, coloring_problems, is_equitable_coloring
from .graph_io import format_coloring, format_graph, parse_coloring, parse_graph
from .oracle import alpha_v_exact, enumerate_maximal_outerplanar, exhaustive_equitable
from .outerplanar_coloring import check_hypothesis, equitable_color_outerplanar, reduce_5_to_4
from .partitioner import partition_lemma, saturate_with_degree_control
from .planar_coloring import equitable_color_planar, equitable_color_planar_lowdeg, find_witness_sets

__all__ = [
    "BudgetExceeded",
    "Coloring",
    "ConstructionCertificate",
    "EquicolorError",
    "Graph",
    "HypothesisViolated",
    "Infeasible",
    "InternalAssertionFailed",
    "NotAForest",
    "NotOuterplanar",
    "ParseError",
    "Unsolved",
    "WitnessInvalid",
    "alpha_v_exact",
    "check_hypothesis",
    "coloring_problems",
    "degenerate_gadget",
    "enumerate_maximal_outerplanar",
    "equitable_color_forest",
    "equitable_color_outerplanar",
    "equitable_color_planar",
    "equitable_color_planar_lowdeg",
    "exhaustive_equitable",
    "extender_chain",
    "find_witness_sets",
    "format_coloring",
    "format_graph",
    "is_equitable_coloring",
    "parse_coloring",
    "parse_graph",
    "partition_lemma",
    "planar_gadget",
    "reduce_5_to_4",
    "saturate_with_degree_control",
    "stalactite_chain",
]
