"""Exact homomorphism and subgraph counting for small patterns.

Counting is over labelled maps exactly as defined: a homomorphism must map
edges to edges, keep colours (when the pattern is coloured) and send every
labelled pattern vertex to the target vertex carrying the same label.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import List, Optional, Sequence

from .errors import BudgetExceeded
from .graph import Graph

DEFAULT_BUDGET = 10**8
BUDGET_ENV = "HOMREC_BUDGET"

HOM = "hom"
SUB = "sub"
MODES = (HOM, SUB)


def default_budget_limit() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from None
    if value <= 0:
        raise ValueError(f"{BUDGET_ENV} must be positive")
    return value


class Budget:
    """Counter of elementary enumeration steps; raises once ``limit`` is passed.

    One budget may be threaded through many calls so that a whole search is
    capped, not just each count.
    """

    def __init__(self, limit: Optional[int] = None):
        self.limit = default_budget_limit() if limit is None else limit
        self.used = 0

    def spend(self, steps: int = 1):
        self.used += steps
        if self.used > self.limit:
            raise BudgetExceeded(f"step budget of {self.limit} exceeded")

    def require(self, steps: int, what: str = "enumeration"):
        """Fail fast if a known-size enumeration cannot fit."""
        if self.used + steps > self.limit:
            raise BudgetExceeded(f"{what} needs {steps} steps; budget is {self.limit}")


@dataclass(frozen=True)
class PatternConstraint:
    pattern: Graph
    required_count: int
    mode: str = HOM

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if not isinstance(self.required_count, int) or self.required_count < 0:
            raise ValueError("required_count must be a non-negative integer")
        if self.mode == SUB and (self.pattern.is_coloured or self.pattern.is_labelled):
            raise ValueError("subgraph mode only supports plain patterns")


class HomPlan:
    """Pre-compiled search order for counting maps of one pattern into targets
    that share a vertex count, colouring and label placement.

    The brute-force oracle re-counts the same pattern against many edge sets
    over a fixed frame, so the domain filtering and vertex ordering are done
    once here and :meth:`count` only walks adjacency.
    """

    def __init__(self, pattern: Graph, n: int, colours=None, labels=None,
                 injective: bool = False):
        self.pattern = pattern
        self.injective = injective
        self.trivially_zero = False
        k = pattern.vertex_count
        labels = labels or {}
        domains: List[Optional[frozenset]] = [None] * k  # None means all of range(n)
        if pattern.colours is not None:
            if colours is None:
                self.trivially_zero = k > 0
            else:
                by_colour = {}
                for v, c in enumerate(colours):
                    by_colour.setdefault(c, set()).add(v)
                for p in range(k):
                    domains[p] = frozenset(by_colour.get(pattern.colours[p], ()))
        for name, p in pattern.labels:
            if name not in labels:
                self.trivially_zero = True
                continue
            fixed = frozenset({labels[name]})
            domains[p] = fixed if domains[p] is None else domains[p] & fixed
        if k > 0 and n == 0:
            self.trivially_zero = True
        if any(d is not None and not d for d in domains):
            self.trivially_zero = True
        self.n = n
        self.domains = domains
        adj = pattern.adjacency
        if injective:
            groups = [list(range(k))]
        else:
            groups = _components(adj, k)
        self.orders = []
        for comp in groups:
            self.orders.append(_search_order(comp, adj, domains, n))

    def count(self, target_adj: Sequence, budget: Optional[Budget] = None) -> int:
        if self.trivially_zero:
            return 0
        total = 1
        for order in self.orders:
            c = self._count_order(order, target_adj, budget)
            if c == 0:
                return 0
            total *= c
        return total

    def _count_order(self, order, adj, budget):
        if not order:
            return 1
        n = self.n
        domains = self.domains
        injective = self.injective
        k = len(order)
        image = {}
        last = k - 1
        full = range(n)

        def rec(pos):
            p, back = order[pos]
            dom = domains[p]
            if back:
                cand = adj[image[back[0]]]
                for q in back[1:]:
                    cand = cand & adj[image[q]]
                if dom is not None:
                    cand = cand & dom
            else:
                cand = full if dom is None else dom
            if injective:
                used = image.values()
                cand = [v for v in cand if v not in used]
            if budget is not None:
                budget.spend(len(cand) + 1)
            if pos == last:
                return len(cand)
            total = 0
            for v in cand:
                image[p] = v
                total += rec(pos + 1)
            image.pop(p, None)
            return total

        return rec(0)


def _components(adj, k):
    seen = [False] * k
    comps = []
    for s in range(k):
        if seen[s]:
            continue
        seen[s] = True
        stack, comp = [s], []
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in adj[u]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def _search_order(vertices, adj, domains, n):
    """Order pattern vertices so each one (after the first of its component)
    has as many already-placed neighbours as possible."""

    def dsize(p):
        return n if domains[p] is None else len(domains[p])

    remaining = set(vertices)
    placed = []
    placed_set = set()
    while remaining:
        best = min(
            remaining,
            key=lambda p: (-len(adj[p] & placed_set), dsize(p), p),
        )
        remaining.remove(best)
        back = tuple(sorted(adj[best] & placed_set))
        placed.append((best, back))
        placed_set.add(best)
    return placed


def count_homomorphisms(pattern: Graph, target: Graph, budget: Optional[Budget] = None) -> int:
    """Number of colour- and label-respecting homomorphisms pattern -> target.

    An uncoloured pattern ignores target colours; a coloured pattern has no
    homomorphism into an uncoloured target (unless it is empty).
    """
    if budget is None:
        budget = Budget()
    plan = HomPlan(pattern, target.vertex_count, target.colours, target.label_map)
    return plan.count(target.adjacency, budget)


def count_injective_homomorphisms(pattern: Graph, target: Graph,
                                  budget: Optional[Budget] = None) -> int:
    if budget is None:
        budget = Budget()
    plan = HomPlan(pattern, target.vertex_count, target.colours, target.label_map,
                   injective=True)
    return plan.count(target.adjacency, budget)


def automorphism_count(pattern: Graph, budget: Optional[Budget] = None) -> int:
    # an injective edge-preserving self-map of a finite graph is an automorphism
    return count_injective_homomorphisms(pattern, pattern, budget)


def count_subgraph_copies(pattern: Graph, target: Graph, budget: Optional[Budget] = None) -> int:
    """Number of subgraphs of ``target`` isomorphic to ``pattern`` (plain graphs)."""
    if pattern.is_coloured or pattern.is_labelled:
        raise ValueError("subgraph counting is only defined here for plain patterns")
    if budget is None:
        budget = Budget()
    plain_target = Graph(target.vertex_count, target.edges)
    emb = count_injective_homomorphisms(pattern, plain_target, budget)
    if emb == 0:
        return 0
    aut = automorphism_count(pattern, budget)
    q, r = divmod(emb, aut)
    assert r == 0, "embedding count must be a multiple of the automorphism count"
    return q


def count(constraint_or_pattern, target: Graph, mode: str = HOM,
          budget: Optional[Budget] = None) -> int:
    if isinstance(constraint_or_pattern, PatternConstraint):
        mode = constraint_or_pattern.mode
        pattern = constraint_or_pattern.pattern
    else:
        pattern = constraint_or_pattern
    if mode == HOM:
        return count_homomorphisms(pattern, target, budget)
    if mode == SUB:
        return count_subgraph_copies(pattern, target, budget)
    raise ValueError(f"unknown mode {mode!r}")


@dataclass(frozen=True)
class ConstraintCheck:
    constraint: PatternConstraint
    actual: int

    @property
    def ok(self) -> bool:
        return self.actual == self.constraint.required_count


@dataclass(frozen=True)
class ConstraintReport:
    rows: tuple

    @property
    def satisfied(self) -> bool:
        return all(r.ok for r in self.rows)

    def __bool__(self):
        return self.satisfied


def check_constraints(g: Graph, constraints: Sequence[PatternConstraint],
                      budget: Optional[Budget] = None) -> ConstraintReport:
    """Count every constraint's pattern in ``g`` and compare with its requirement."""
    if budget is None:
        budget = Budget()
    rows = tuple(ConstraintCheck(c, count(c, g, budget=budget)) for c in constraints)
    return ConstraintReport(rows)
