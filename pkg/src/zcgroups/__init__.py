"""Self-similar groups generated by kneading automata over the integers.

The package builds the automaton attached to two integer words, exposes
the induced action on the tree of finite integer words, and provides
exact group-element algebra (word problem included), windowed Schreier
graphs, and machine-checkable structure verifiers, plus a CLI
(``python -m zcgroups`` or the ``zcg`` script).
"""

from ._kernels import backend_name as kernel_backend
from .automaton import (
    EndSpec,
    KneadingData,
    KneadingError,
    State,
    ZAutomaton,
    automaton_from_json,
    automaton_to_json,
    build_kneading,
    dump_automaton,
    format_tree_word,
    load_automaton,
    parse_tree_word,
)
from .schreier import (
    LeavingEdgeSet,
    SchreierBall,
    SpineData,
    VertexCapExceeded,
    ball,
    ball_to_dot,
    ball_to_json_obj,
    is_tree,
    leaving_edges,
    neighbors,
    project_leaving,
    spine,
    state_moves_end,
    verify_inductive_structure,
)
from .verify import (
    VerificationReport,
    find_stabilizer_pair,
    run_all,
    verify_abelianization,
    verify_commutator_section,
    verify_kneading_shape,
    verify_level_transitive_window,
    verify_residual_witness,
    verify_self_replicating,
    verify_wreath_surjection,
    wreath_ball_sizes,
)
from .words import (
    GroupWord,
    TrivialityCertificate,
    WordParseError,
    WreathElement,
    commutator,
    conjugate,
)

__version__ = "0.1.0"

__all__ = [
    "EndSpec",
    "GroupWord",
    "KneadingData",
    "KneadingError",
    "LeavingEdgeSet",
    "SchreierBall",
    "SpineData",
    "State",
    "TrivialityCertificate",
    "VerificationReport",
    "VertexCapExceeded",
    "WordParseError",
    "WreathElement",
    "ZAutomaton",
    "automaton_from_json",
    "automaton_to_json",
    "ball",
    "ball_to_dot",
    "ball_to_json_obj",
    "build_kneading",
    "commutator",
    "conjugate",
    "dump_automaton",
    "find_stabilizer_pair",
    "format_tree_word",
    "is_tree",
    "kernel_backend",
    "leaving_edges",
    "load_automaton",
    "neighbors",
    "parse_tree_word",
    "project_leaving",
    "run_all",
    "spine",
    "state_moves_end",
    "verify_abelianization",
    "verify_commutator_section",
    "verify_inductive_structure",
    "verify_kneading_shape",
    "verify_level_transitive_window",
    "verify_residual_witness",
    "verify_self_replicating",
    "verify_wreath_surjection",
    "wreath_ball_sizes",
    "__version__",
]
