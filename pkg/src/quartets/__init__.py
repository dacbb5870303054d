"""Quartet sets, the trees that display them, and when they pin one down.

The model layer stores trees as canonical split sets over bit masks, the
enumeration layer streams every tree on a leaf set without duplicates,
and the decision layer answers definitiveness questions two independent
ways (an exhaustive oracle and a certified fast path). On top of those
sit the size 2n-8 construction with its witness chain, text formats, a
randomized explorer, and a CLI.
"""

__version__ = "0.1.0"

from .construct import (
    ConstructionReport,
    WitnessChain,
    caterpillar,
    caterpillar_from_order,
    minimal_definitive_sequence,
    minimal_definitive_set,
    target_tree,
    verify_construction,
    witness_chain,
)
from .decide import (
    DEFINES,
    INCOMPATIBLE,
    NOT_DEFINITIVE,
    DefinitivenessVerdict,
    MinimalityReport,
    RemovalWitness,
    common_leaf_certificate,
    defines,
    displayers,
    inference_closure,
    minimality_report,
    semantic_infers,
    undistinguished_edges,
)
from .enumeration import TreeStream, count_trees, enumerate_trees
from .errors import (
    AmbientMismatchError,
    DuplicateLeafError,
    IncompatibleSplitsError,
    InteriorLabelError,
    LabelCollisionError,
    NoSuchSplitError,
    NonBijectiveError,
    ParseError,
    QuartetError,
    TooFewLeavesError,
    TooManyLeavesError,
    TrivialSplitError,
    UnknownLeafError,
    WitnessCheckError,
)
from .model import (
    LeafSet,
    PhyloTree,
    Quartet,
    QuartetSet,
    Split,
    cherry_replace,
    compatible,
    contract,
    displays,
    distinguished_edge,
    integer_leaves,
    make_quartet,
    normalized_quartet,
    relabel,
    remove_leaf,
    reverse,
    tree_from_splits,
)
from .newick import parse_newick, serialize_newick
from .quartetfile import parse_quartet_file, parse_quartet_text, serialize_quartet_set
from .search import SearchFinding, all_quartets, run_search

__all__ = [
    "__version__",
    "AmbientMismatchError",
    "ConstructionReport",
    "DEFINES",
    "DefinitivenessVerdict",
    "DuplicateLeafError",
    "INCOMPATIBLE",
    "IncompatibleSplitsError",
    "InteriorLabelError",
    "LabelCollisionError",
    "LeafSet",
    "MinimalityReport",
    "NOT_DEFINITIVE",
    "NoSuchSplitError",
    "NonBijectiveError",
    "ParseError",
    "PhyloTree",
    "Quartet",
    "QuartetError",
    "QuartetSet",
    "RemovalWitness",
    "SearchFinding",
    "Split",
    "TooFewLeavesError",
    "TooManyLeavesError",
    "TreeStream",
    "TrivialSplitError",
    "UnknownLeafError",
    "WitnessChain",
    "WitnessCheckError",
    "all_quartets",
    "caterpillar",
    "caterpillar_from_order",
    "cherry_replace",
    "common_leaf_certificate",
    "compatible",
    "contract",
    "count_trees",
    "defines",
    "displayers",
    "displays",
    "distinguished_edge",
    "enumerate_trees",
    "inference_closure",
    "integer_leaves",
    "make_quartet",
    "minimal_definitive_sequence",
    "minimal_definitive_set",
    "minimality_report",
    "normalized_quartet",
    "parse_newick",
    "parse_quartet_file",
    "parse_quartet_text",
    "relabel",
    "remove_leaf",
    "reverse",
    "run_search",
    "semantic_infers",
    "serialize_newick",
    "serialize_quartet_set",
    "target_tree",
    "tree_from_splits",
    "undistinguished_edges",
    "verify_construction",
    "witness_chain",
]
