"""Graph reconstruction from homomorphism and subgraph counts.

Star-count instances are solved exactly by a dynamic program over degree
sequences; general instances are handled at small scale by an exhaustive
oracle, which also checks the bundled reduction compilers.
"""

__version__ = "0.1.0"

from .counting import (HOM, SUB, Budget, PatternConstraint, check_constraints, count,
                       count_homomorphisms, count_subgraph_copies)
from .degseq import havel_hakimi_realize, is_graphic, reduction_step
from .errors import (BudgetExceeded, HomRecError, Inconsistent, InternalInconsistency,
                     NotGraphic, ParseError, PreconditionViolated)
from .graph import Graph, degree_sequence, parse_graph, serialize_graph
from .oracle import brute_search, brute_solve, enumerate_graphs, solution_size_bound
from .solver import (StarInstance, solve_star_hom, solve_star_partial, solve_star_sub,
                     solve_stars)
from .stars import StarCountVector, hom_to_sub, sub_to_hom

__all__ = [
    "HOM", "SUB", "Budget", "PatternConstraint", "check_constraints", "count",
    "count_homomorphisms", "count_subgraph_copies", "havel_hakimi_realize", "is_graphic",
    "reduction_step", "BudgetExceeded", "HomRecError", "Inconsistent", "InternalInconsistency",
    "NotGraphic", "ParseError", "PreconditionViolated", "Graph", "degree_sequence",
    "parse_graph", "serialize_graph", "brute_search", "brute_solve", "enumerate_graphs",
    "solution_size_bound", "StarInstance", "solve_star_hom", "solve_star_partial",
    "solve_star_sub", "solve_stars", "StarCountVector", "hom_to_sub", "sub_to_hom",
]
