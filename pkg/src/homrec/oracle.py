"""Exhaustive ground truth for small reconstruction instances.

The reference order on labelled graphs with ``n`` vertices is the edge
indicator vector over the lexicographically sorted vertex pairs, first pair
most significant, absent before present. Coloured targets use a block
colouring: colours in sorted order, each occupying a contiguous range of
vertices.

:func:`brute_search` walks that order with branch and bound. Hom and sub
counts can only grow when edges are added, so the count with the undecided
pairs absent is a lower bound and the count with them present an upper
bound; a branch is cut when either bound excludes the required value. Pairs
whose colours never meet on a pattern edge cannot change any count, and are
kept absent, which is where the first witness in the full order has them
anyway.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .counting import HOM, SUB, Budget, HomPlan, PatternConstraint, automorphism_count, check_constraints
from .errors import HomRecError, ParseError
from .graph import Graph, parse_graph, serialize_graph


def solution_size_bound(constraints: Sequence[PatternConstraint]) -> int:
    """Vertex count that suffices for some witness if any witness exists.

    Every vertex outside the images of the counted maps (or copies) can be
    deleted without changing a count, so the sum of count times pattern
    order bounds a smallest witness.
    """
    return sum(c.required_count * c.pattern.vertex_count for c in constraints)


def _pairs(n):
    return [(u, v) for u in range(n) for v in range(u + 1, n)]


def _block_colours(sizes: Dict[str, int]) -> Tuple[str, ...]:
    out = []
    for colour in sorted(sizes):
        out.extend([colour] * sizes[colour])
    return tuple(out)


def enumerate_graphs(n: int, colour_class_sizes: Optional[Dict[str, int]] = None,
                     budget: Optional[Budget] = None) -> Iterator[Graph]:
    """Every labelled simple graph on ``n`` vertices, in the reference order."""
    if budget is None:
        budget = Budget()
    colours = None
    if colour_class_sizes is not None:
        if sum(colour_class_sizes.values()) != n:
            raise ValueError("colour class sizes must sum to n")
        colours = _block_colours(colour_class_sizes)
    pairs = _pairs(n)
    total = 1 << len(pairs)
    budget.require(total, f"enumerating graphs on {n} vertices")
    width = len(pairs)
    for mask in range(total):
        budget.spend()
        edges = frozenset(p for k, p in enumerate(pairs) if mask >> (width - 1 - k) & 1)
        yield Graph(n, edges, colours)


@dataclass
class BruteStats:
    nodes: int = 0
    counts: int = 0
    frames: int = 0


@dataclass
class BruteResult:
    witness: Optional[Graph]
    bound: int
    searched_up_to: int
    stats: BruteStats = field(default_factory=BruteStats)

    @property
    def feasible(self) -> bool:
        return self.witness is not None

    def certificate(self) -> str:
        if self.witness is not None:
            return "witness found"
        return f"exhausted n <= {self.searched_up_to} (size bound {self.bound})"


class _Instance:
    """Constraint set preprocessed for frame enumeration."""

    def __init__(self, constraints):
        self.constraints = list(constraints)
        palette = set()
        for c in self.constraints:
            if c.pattern.colours is not None:
                palette.update(c.pattern.colours)
        self.palette = tuple(sorted(palette))
        self.coloured = bool(self.palette)
        names = set()
        for c in self.constraints:
            names.update(name for name, _ in c.pattern.labels)
        self.label_names = tuple(sorted(names))
        self.vertex_pin = None
        self.class_pins = {}
        self.conflict = False
        for c in self.constraints:
            p = c.pattern
            if p.vertex_count != 1 or p.labels:
                continue
            if p.colours is None:
                self._pin("n", c.required_count)
            elif c.mode == HOM:
                self._pin(p.colours[0], c.required_count)
        # pattern edges, as colour pairs, decide which target pairs matter
        self.any_plain_edge = any(c.pattern.colours is None and c.pattern.edges
                                  for c in self.constraints)
        self.edge_colour_pairs = []
        for c in self.constraints:
            p = c.pattern
            if p.colours is None:
                self.edge_colour_pairs.append(None if p.edges else frozenset())
            else:
                self.edge_colour_pairs.append(frozenset(
                    frozenset((p.colours[u], p.colours[v])) for u, v in p.edges))

    def _pin(self, key, value):
        if key == "n":
            if self.vertex_pin is not None and self.vertex_pin != value:
                self.conflict = True
            self.vertex_pin = value
        else:
            if self.class_pins.get(key, value) != value:
                self.conflict = True
            self.class_pins[key] = value

    def size_vectors(self, n) -> Iterator[Optional[Dict[str, int]]]:
        if self.vertex_pin is not None and self.vertex_pin != n:
            return
        if not self.coloured:
            yield None
            return
        free = [c for c in self.palette if c not in self.class_pins]
        rest = n - sum(self.class_pins.values())
        if rest < 0 or (not free and rest != 0):
            return
        for split in _compositions(rest, len(free)):
            sizes = dict(self.class_pins)
            sizes.update(zip(free, split))
            yield sizes

    def label_placements(self, n) -> Iterator[Dict[str, int]]:
        options = [None] + list(range(n))
        for choice in itertools.product(options, repeat=len(self.label_names)):
            yield {name: v for name, v in zip(self.label_names, choice) if v is not None}


def _compositions(total, parts):
    """Tuples of ``parts`` non-negative ints summing to ``total``, lex order."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for tail in _compositions(total - first, parts - 1):
            yield (first,) + tail


class _Frame:
    """Fixed vertex count, colouring and labels; only the edge set varies."""

    def __init__(self, inst: _Instance, n, colours, labels, budget, stats):
        self.inst = inst
        self.n = n
        self.colours = colours
        self.labels = labels
        self.budget = budget
        self.stats = stats
        all_pairs = _pairs(n)
        rel = []
        for ci, cp in enumerate(inst.edge_colour_pairs):
            if cp is None:
                rel.append(set(range(len(all_pairs))))
            else:
                rel.append({k for k, (u, v) in enumerate(all_pairs)
                            if colours is not None and frozenset((colours[u], colours[v])) in cp})
        live = sorted(set().union(*rel)) if rel else []
        self.pairs = [all_pairs[k] for k in live]
        index = {k: i for i, k in enumerate(live)}
        self.rel_masks = [sum(1 << index[k] for k in r) for r in rel]
        self.plans = []
        for c in inst.constraints:
            if c.mode == HOM:
                self.plans.append((HomPlan(c.pattern, n, colours, labels), 1))
            else:
                aut = automorphism_count(c.pattern, Budget(float("inf")))
                self.plans.append((HomPlan(c.pattern, n, None, None, injective=True), aut))
        self.memo = {}

    def graph(self, mask) -> Graph:
        edges = frozenset(p for i, p in enumerate(self.pairs) if mask >> i & 1)
        return Graph(self.n, edges, self.colours, tuple(sorted(self.labels.items())))

    def count(self, ci, mask):
        key = (ci, mask & self.rel_masks[ci])
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        self.stats.counts += 1
        adj = [set() for _ in range(self.n)]
        for i, (u, v) in enumerate(self.pairs):
            if key[1] >> i & 1:
                adj[u].add(v)
                adj[v].add(u)
        plan, aut = self.plans[ci]
        value = plan.count(adj, self.budget) // aut
        self.memo[key] = value
        return value

    def search(self, first_only) -> Iterator[Graph]:
        """Satisfying edge sets of this frame in the reference order."""
        cons = self.inst.constraints
        req = [c.required_count for c in cons]
        k = len(self.pairs)
        full = (1 << k) - 1
        rel = self.rel_masks
        lows = [self.count(i, 0) for i in range(len(cons))]
        highs = [self.count(i, full) for i in range(len(cons))]
        if any(lo > r or hi < r for lo, hi, r in zip(lows, highs, req)):
            return
        if first_only and lows == req:
            yield self.graph(0)
            return
        # stack of (position, present mask, lows, highs); absent branch explored first
        stack = [(0, 0, lows, highs)]
        while stack:
            pos, mask, lows, highs = stack.pop()
            self.stats.nodes += 1
            self.budget.spend()
            if pos == k:
                yield self.graph(mask)
                if first_only:
                    return
                continue
            bit = 1 << pos
            undecided_after = full & ~((bit << 1) - 1)
            branches = []
            for present in (False, True):
                new_mask = mask | bit if present else mask
                nl, nh = list(lows), list(highs)
                ok = True
                for i in range(len(cons)):
                    if not rel[i] & bit:
                        continue
                    if present:
                        nl[i] = self.count(i, new_mask)
                    else:
                        nh[i] = self.count(i, new_mask | undecided_after)
                    if nl[i] > req[i] or nh[i] < req[i]:
                        ok = False
                        break
                if not ok:
                    continue
                if first_only and not present and nl == req:
                    # everything still undecided can stay absent
                    yield self.graph(new_mask)
                    return
                branches.append((pos + 1, new_mask, nl, nh))
            stack.extend(reversed(branches))


def _search(constraints, n_values, budget, stats, first_only) -> Iterator[Graph]:
    inst = _Instance(constraints)
    if inst.conflict:
        return
    for n in n_values:
        for sizes in inst.size_vectors(n):
            colours = None if sizes is None else _block_colours(sizes)
            for labels in inst.label_placements(n):
                stats.frames += 1
                frame = _Frame(inst, n, colours, labels, budget, stats)
                for g in frame.search(first_only):
                    yield g
                    if first_only:
                        return


def brute_search(constraints: Sequence[PatternConstraint], n_max: Optional[int] = None,
                 budget: Optional[Budget] = None) -> BruteResult:
    """First satisfying graph over n = 0..limit, or an exhaustion certificate.

    ``limit`` is the size bound unless ``n_max`` is given.
    """
    if budget is None:
        budget = Budget()
    constraints = list(constraints)
    bound = solution_size_bound(constraints)
    limit = bound if n_max is None else n_max
    stats = BruteStats()
    witness = next(_search(constraints, range(limit + 1), budget, stats, True), None)
    if witness is not None:
        report = check_constraints(witness, constraints, Budget(float("inf")))
        if not report.satisfied:
            raise HomRecError("brute-force witness failed re-verification")
    return BruteResult(witness, bound, limit, stats)


def brute_solve(constraints: Sequence[PatternConstraint], n_max: Optional[int] = None,
                budget: Optional[Budget] = None) -> Optional[Graph]:
    """The first witness, or ``None`` when the search space is exhausted."""
    return brute_search(constraints, n_max, budget).witness


def satisfying_graphs(constraints: Sequence[PatternConstraint], n: int,
                      budget: Optional[Budget] = None) -> Iterator[Graph]:
    """All labelled graphs on exactly ``n`` vertices satisfying the constraints
    (block colourings only, every label placement)."""
    if budget is None:
        budget = Budget()
    yield from _search(list(constraints), [n], budget, BruteStats(), False)


def canonical_form(g: Graph):
    """Minimum (colours, labels, adjacency bits) over all vertex permutations.

    Two graphs are isomorphic exactly when their canonical forms agree.
    Factorial time; meant for n <= 8.
    """
    n = g.vertex_count
    best = None
    pairs = _pairs(n)
    label_items = g.labels
    for perm in itertools.permutations(range(n)):
        # perm[old] = new
        colours = None
        if g.colours is not None:
            inv = [0] * n
            for old, new in enumerate(perm):
                inv[new] = old
            colours = tuple(g.colours[inv[v]] for v in range(n))
        edges = {(min(perm[u], perm[v]), max(perm[u], perm[v])) for u, v in g.edges}
        bits = tuple(1 if p in edges else 0 for p in pairs)
        key = (colours, tuple(sorted((name, perm[v]) for name, v in label_items)), bits)
        if best is None or key < best:
            best = key
    if best is None:
        best = (None if g.colours is None else (), (), ())
    return best


def isomorphism_classes(graphs) -> Dict[tuple, Graph]:
    """Canonical form -> first representative seen."""
    out = {}
    for g in graphs:
        out.setdefault(canonical_form(g), g)
    return out


MANIFEST = "manifest"


def read_manifest(directory: str) -> List[PatternConstraint]:
    """Read ``<dir>/manifest``: lines ``<graph-file> <mode> <count>``."""
    path = os.path.join(directory, MANIFEST)
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ParseError("expected '<graph-file> <mode> <count>'", lineno)
        name, mode, count = parts
        if mode not in (HOM, SUB):
            raise ParseError(f"mode must be hom or sub, got {mode!r}", lineno)
        if not count.isdigit():
            raise ParseError(f"count must be a non-negative integer, got {count!r}", lineno)
        gpath = os.path.join(directory, name)
        try:
            with open(gpath, encoding="utf-8") as fh:
                pattern = parse_graph(fh.read())
        except OSError as exc:
            raise ParseError(f"cannot read pattern {name!r}: {exc.strerror}", lineno) from None
        except ParseError as exc:
            raise ParseError(f"in {name}: {exc}", lineno) from None
        try:
            out.append(PatternConstraint(pattern, int(count), mode))
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
    return out


def write_manifest(directory: str, constraints: Sequence[PatternConstraint]) -> List[str]:
    """Write one pattern file per constraint plus the manifest; returns file names."""
    os.makedirs(directory, exist_ok=True)
    names = []
    lines = []
    for i, c in enumerate(constraints):
        name = f"p{i:03d}.graph"
        with open(os.path.join(directory, name), "w", encoding="utf-8") as fh:
            fh.write(serialize_graph(c.pattern))
        names.append(name)
        lines.append(f"{name} {c.mode} {c.required_count}")
    with open(os.path.join(directory, MANIFEST), "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + ("\n" if lines else ""))
    return names
