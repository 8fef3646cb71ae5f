"""Groups of rooted-tree automorphisms given by wreath recursion."""
from .classify import (activity_count, classify_element, is_bounded_finite_state, is_directed,
                       is_finitary, is_odometer)
from .core import (IDENTITY, Perm, Presentation, State, Word, act, commutator, first_level,
                   level_perm, root_perm, section)
from .errors import BudgetExceeded, ParseError, PreconditionError, PresentationError, TreeAutoError
from .solver import Decision, are_equal, is_trivial, member_search, order_up_to, section_closure
from .structure import (check_certificate, cycle_graph, find_clean_transporter, group_report,
                        is_abelian_wreath_type, is_balanced, is_generalized_basilica,
                        is_kneading, is_level_transitive, is_tree_like, kneading_orbit_counts,
                        orbits_on_level, section_group_generators, self_replicating)
from .textformat import dump, format_presentation, load, parse, parse_word
from .transform import (directed_core, is_reduced_form, reduced_form, restrict_level,
                        self_similar_closure)

__version__ = "0.1.0"

__all__ = [
    "activity_count",
    "classify_element",
    "is_bounded_finite_state",
    "is_directed",
    "is_finitary",
    "is_odometer",
    "IDENTITY",
    "Perm",
    "Presentation",
    "State",
    "Word",
    "act",
    "commutator",
    "first_level",
    "level_perm",
    "root_perm",
    "section",
    "BudgetExceeded",
    "ParseError",
    "PreconditionError",
    "PresentationError",
    "TreeAutoError",
    "Decision",
    "are_equal",
    "is_trivial",
    "member_search",
    "order_up_to",
    "section_closure",
    "check_certificate",
    "cycle_graph",
    "find_clean_transporter",
    "group_report",
    "is_abelian_wreath_type",
    "is_balanced",
    "is_generalized_basilica",
    "is_kneading",
    "is_level_transitive",
    "is_tree_like",
    "kneading_orbit_counts",
    "orbits_on_level",
    "section_group_generators",
    "self_replicating",
    "dump",
    "format_presentation",
    "load",
    "parse",
    "parse_word",
    "directed_core",
    "is_reduced_form",
    "reduced_form",
    "restrict_level",
    "self_similar_closure",
]
