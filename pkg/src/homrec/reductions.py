"""Compilers from circuits and colouring problems to count constraints.

Circuits become coloured hom constraints around a four-vertex value gadget
``bot - alpha - alpha - top``: every circuit node gets its own colour class
of size one, wired to the alpha next to ``bot`` (false) or the one next to
``top`` (true), and each gate forbids the wirings that contradict it.

Also here: the labelled-constraint encoding of 2-round 3-colouring, the
recolouring that squeezes any palette into four colours, and a harness that
checks a compiled instance against the brute-force oracle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from .counting import HOM, Budget, PatternConstraint
from .errors import ParseError
from .graph import Graph, complete_graph, coloured_edge, coloured_path, single_vertex
from .oracle import BruteResult, brute_search

ALPHA = "alpha"
BOT = "bot"
TOP = "top"
RESERVED = (ALPHA, BOT, TOP)

SPINE_START = "S"
SPINE_END = "T"
SPINE = "X"
MERGED = "A"

ConstraintList = List[PatternConstraint]

INPUT, AND, OR, NOT = "input", "and", "or", "not"
ARITY = {INPUT: 0, AND: 2, OR: 2, NOT: 1}


@dataclass(frozen=True)
class Node:
    name: str
    kind: str
    args: Tuple[str, ...] = ()


@dataclass(frozen=True)
class Circuit:
    nodes: Tuple[Node, ...]
    output: str

    def __post_init__(self):
        seen = set()
        for node in self.nodes:
            if node.kind not in ARITY:
                raise ValueError(f"unknown gate kind {node.kind!r}")
            if len(node.args) != ARITY[node.kind]:
                raise ValueError(f"{node.kind} gate {node.name!r} needs {ARITY[node.kind]} inputs")
            if node.name in seen:
                raise ValueError(f"node {node.name!r} defined twice")
            for a in node.args:
                if a not in seen:
                    raise ValueError(f"{node.name!r} refers to undefined node {a!r}")
            seen.add(node.name)
        if self.output not in seen:
            raise ValueError(f"output {self.output!r} is not a node")

    @property
    def inputs(self) -> Tuple[str, ...]:
        return tuple(n.name for n in self.nodes if n.kind == INPUT)

    @property
    def gates(self) -> Tuple[Node, ...]:
        return tuple(n for n in self.nodes if n.kind != INPUT)


def node_colour(name: str) -> str:
    return "C_" + name


def parse_circuit(text) -> Circuit:
    """``input x`` / ``and g a b`` / ``or g a b`` / ``not g a`` / ``output g``."""
    if isinstance(text, (bytes, bytearray)):
        text = text.decode("utf-8")
    nodes = []
    names = set()
    output = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        kind, *rest = line.split()
        if kind == "output":
            if len(rest) != 1:
                raise ParseError("expected 'output <name>'", lineno)
            if output is not None:
                raise ParseError("more than one output", lineno)
            if rest[0] not in names:
                raise ParseError(f"output {rest[0]!r} is not a defined node", lineno)
            output = rest[0]
            continue
        if kind not in ARITY:
            raise ParseError(f"unknown gate {kind!r}", lineno)
        if len(rest) != 1 + ARITY[kind]:
            raise ParseError(f"{kind} takes a name and {ARITY[kind]} input(s)", lineno)
        name, args = rest[0], tuple(rest[1:])
        if name in names:
            raise ParseError(f"node {name!r} defined twice", lineno)
        for a in args:
            if a not in names:
                raise ParseError(f"undefined node {a!r}", lineno)
        names.add(name)
        nodes.append(Node(name, kind, args))
    if output is None:
        raise ParseError("missing 'output' line")
    return Circuit(tuple(nodes), output)


def format_circuit(c: Circuit) -> str:
    lines = [" ".join((n.kind, n.name) + n.args) for n in c.nodes]
    lines.append(f"output {c.output}")
    return "\n".join(lines) + "\n"


def evaluate(c: Circuit, bits: Sequence[int]) -> Dict[str, int]:
    """Value of every node under the input assignment ``bits``."""
    if len(bits) != len(c.inputs):
        raise ValueError(f"circuit has {len(c.inputs)} inputs, got {len(bits)} bits")
    value = {}
    feed = iter(bits)
    for node in c.nodes:
        a = [value[x] for x in node.args]
        if node.kind == INPUT:
            value[node.name] = int(bool(next(feed)))
        elif node.kind == AND:
            value[node.name] = a[0] & a[1]
        elif node.kind == OR:
            value[node.name] = a[0] | a[1]
        else:
            value[node.name] = 1 - a[0]
    return value


def satisfying_input(c: Circuit) -> Optional[Tuple[int, ...]]:
    for bits in itertools.product((0, 1), repeat=len(c.inputs)):
        if evaluate(c, bits)[c.output]:
            return bits
    return None


def nm_constraint(colour_a: str, colour_b: str, n: int, m: int) -> ConstraintList:
    """Force n vertices of colour A, each with exactly m neighbours of colour B."""
    if n < 1 or m < 1:
        raise ValueError("n and m must be positive")
    return [
        PatternConstraint(single_vertex(colour_a), n),
        PatternConstraint(coloured_edge(colour_a, colour_b), n * m),
        PatternConstraint(coloured_path([colour_b, colour_a, colour_b]), n * m * m),
    ]


# value gadget vertices
GADGET_BOT, GADGET_FALSE, GADGET_TRUE, GADGET_TOP = 0, 1, 2, 3


def value_gadget() -> Graph:
    return coloured_path([BOT, ALPHA, ALPHA, TOP])


def value_gadget_constraints() -> ConstraintList:
    return [
        PatternConstraint(single_vertex(ALPHA), 2),
        PatternConstraint(single_vertex(BOT), 1),
        PatternConstraint(single_vertex(TOP), 1),
        PatternConstraint(value_gadget(), 1),
        PatternConstraint(coloured_edge(ALPHA, BOT), 1),
        PatternConstraint(coloured_edge(ALPHA, TOP), 1),
    ]


def output_pattern(output: str) -> Graph:
    """Output node, its alpha, and top: present exactly when the output is true."""
    return coloured_path([node_colour(output), ALPHA, TOP])


def wired_gadget(wires: Sequence[Tuple[str, int]]) -> Graph:
    """Value gadget plus one vertex per ``(colour, bit)``, joined to the alpha
    that encodes ``bit``."""
    g = value_gadget()
    edges = set(g.edges)
    colours = list(g.colours)
    for k, (colour, bit) in enumerate(wires):
        v = 4 + k
        colours.append(colour)
        edges.add((GADGET_TRUE if bit else GADGET_FALSE, v))
    return Graph(4 + len(wires), frozenset(edges), tuple(colours))


def _forbidden_rows(kind):
    """Input/output bit rows that contradict the gate."""
    if kind == NOT:
        return [(a, b) for a in (0, 1) for b in (0, 1) if b != 1 - a]
    op = (lambda a, b: a & b) if kind == AND else (lambda a, b: a | b)
    return [(a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1) if c != op(a, b)]


def gate_patterns(node: Node) -> List[Graph]:
    cols = [node_colour(a) for a in node.args] + [node_colour(node.name)]
    return [wired_gadget(list(zip(cols, row))) for row in _forbidden_rows(node.kind)]


def gate_constraints(node: Node) -> ConstraintList:
    return [PatternConstraint(p, 0) for p in gate_patterns(node)]


def circuit_to_constraints(c: Circuit) -> ConstraintList:
    """Constraints satisfiable exactly when some input makes ``c`` output 1."""
    out = value_gadget_constraints()
    out.append(PatternConstraint(output_pattern(c.output), 1))
    for node in c.nodes:
        out.extend(nm_constraint(node_colour(node.name), ALPHA, 1, 1))
    for node in c.gates:
        out.extend(gate_constraints(node))
    return out


def circuit_witness_graph(c: Circuit, bits: Sequence[int]) -> Graph:
    value = evaluate(c, bits)
    return wired_gadget([(node_colour(n.name), value[n.name]) for n in c.nodes])


def enumerate_circuits(max_inputs: int = 2, max_gates: int = 3):
    """Every circuit with 1..max_inputs inputs and up to max_gates gates whose
    output is the last node. Gate arguments are drawn from earlier nodes, with
    the two arguments of a binary gate unordered (repeats allowed)."""
    for k in range(1, max_inputs + 1):
        inputs = tuple(Node(f"x{i}", INPUT) for i in range(k))
        for g in range(max_gates + 1):
            yield from _extend(inputs, g)


def _extend(nodes, remaining):
    if remaining == 0:
        yield Circuit(nodes, nodes[-1].name)
        return
    names = [n.name for n in nodes]
    gate = f"g{len(nodes) - sum(n.kind == INPUT for n in nodes)}"
    for a in names:
        yield from _extend(nodes + (Node(gate, NOT, (a,)),), remaining - 1)
    for kind in (AND, OR):
        for a, b in itertools.combinations_with_replacement(names, 2):
            yield from _extend(nodes + (Node(gate, kind, (a, b)),), remaining - 1)


# 2-round 3-colouring

def leaf_vertices(f: Graph) -> List[int]:
    return [v for v in range(f.vertex_count) if f.degree(v) == 1]


def leaf_label(i: int) -> str:
    return f"l{i + 1}"


def coloring_to_constraints(f: Graph) -> ConstraintList:
    """Satisfiable exactly when some 3-colouring of the degree-1 vertices of
    ``f`` does not extend to a proper 3-colouring of ``f``."""
    if f.is_coloured or f.is_labelled:
        raise ValueError("coloring_to_constraints expects a plain graph")
    leaves = leaf_vertices(f)
    labelled = f.with_labels({leaf_label(i): v for i, v in enumerate(leaves)})
    out = [
        PatternConstraint(labelled, 0),
        PatternConstraint(single_vertex(), 3),
        PatternConstraint(complete_graph(2), 6),
    ]
    out.extend(PatternConstraint(single_vertex(label=leaf_label(i)), 1)
               for i in range(len(leaves)))
    return out


def _extends(f: Graph, fixed: Dict[int, int]) -> bool:
    colour = dict(fixed)
    for u, v in f.edges:
        if u in colour and v in colour and colour[u] == colour[v]:
            return False
    order = [v for v in range(f.vertex_count) if v not in colour]
    adj = f.adjacency

    def rec(i):
        if i == len(order):
            return True
        v = order[i]
        for c in range(3):
            if all(colour.get(w) != c for w in adj[v]):
                colour[v] = c
                if rec(i + 1):
                    return True
                del colour[v]
        return False

    return rec(0)


def two_round_three_colouring(f: Graph) -> bool:
    """Direct decider: try every precolouring of the degree-1 vertices."""
    leaves = leaf_vertices(f)
    for pre in itertools.product(range(3), repeat=len(leaves)):
        if not _extends(f, dict(zip(leaves, pre))):
            return True
    return False


# palette reduction to four colours

def _palette_of(cl: Sequence[PatternConstraint]) -> Tuple[str, ...]:
    cols = set()
    for c in cl:
        if c.pattern.colours is None:
            raise ValueError("every pattern must be coloured")
        cols.update(c.pattern.colours)
    return tuple(sorted(cols))


def four_colour_lift(g: Graph, palette: Sequence[str]) -> Graph:
    """Recolour ``g`` to a single colour joined to a spine of ``len(palette)``
    X vertices: a vertex of the i-th palette colour is joined to the i-th."""
    if g.colours is None:
        raise ValueError("four_colour_lift needs a coloured graph")
    index = {c: i for i, c in enumerate(palette)}
    m = len(palette)
    n = g.vertex_count
    start, end = n, n + m + 1
    spine = [n + 1 + i for i in range(m)]
    edges = set(g.edges)
    for v, c in enumerate(g.colours):
        if c not in index:
            raise ValueError(f"colour {c!r} is not in the palette")
        edges.add((v, spine[index[c]]))
    chain = [start] + spine + [end]
    edges.update(zip(chain, chain[1:]))
    colours = (MERGED,) * n + (SPINE_START,) + (SPINE,) * m + (SPINE_END,)
    return Graph(n + m + 2, frozenset(edges), colours, g.labels)


def spine_gadget(k: int) -> Graph:
    """S, then k X vertices, then T, as a path."""
    return coloured_path([SPINE_START] + [SPINE] * k + [SPINE_END])


def crossed_spine(m: int, i: int, j: int) -> Graph:
    """Spine gadget plus an A vertex joined to the i-th and j-th X (1-based)."""
    g = spine_gadget(m)
    a = m + 2
    return Graph(m + 3, g.edges | {(i, a), (j, a)}, g.colours + (MERGED,))


def spine_constraints(m: int) -> ConstraintList:
    out = [
        PatternConstraint(single_vertex(SPINE), m),
        PatternConstraint(single_vertex(SPINE_START), 1),
        PatternConstraint(single_vertex(SPINE_END), 1),
        PatternConstraint(coloured_edge(SPINE, SPINE_START), 1),
        PatternConstraint(coloured_edge(SPINE, SPINE), 2 * m - 2),
        PatternConstraint(coloured_edge(SPINE, SPINE_END), 1),
        PatternConstraint(spine_gadget(m), 1),
    ]
    out.extend(PatternConstraint(spine_gadget(k), 0) for k in range(1, m))
    return out


def colors_to_four(cl: Sequence[PatternConstraint],
                   palette: Optional[Sequence[str]] = None) -> ConstraintList:
    """Re-express constraints over any palette with the colours S, X, T, A."""
    cl = list(cl)
    if palette is None:
        palette = _palette_of(cl)
    palette = tuple(palette)
    m = len(palette)
    if m == 0:
        raise ValueError("palette is empty")
    out = [PatternConstraint(four_colour_lift(c.pattern, palette), c.required_count, c.mode)
           for c in cl]
    out.extend(spine_constraints(m))
    out.extend(PatternConstraint(crossed_spine(m, i, j), 0)
               for i in range(1, m + 1) for j in range(i + 1, m + 1))
    assert len(out) == len(cl) + 7 + m - 1 + comb(m, 2)
    return out


@dataclass
class ReductionReport:
    expected: bool
    actual: bool
    result: BruteResult = field(repr=False)

    @property
    def matches(self) -> bool:
        return self.expected == self.actual

    @property
    def witness(self) -> Optional[Graph]:
        return self.result.witness


def verify_reduction(cl: Sequence[PatternConstraint], expected_satisfiable: bool,
                     n_max: Optional[int] = None, budget: Optional[Budget] = None) -> ReductionReport:
    """Brute-force ``cl`` and compare the verdict with the expectation."""
    result = brute_search(cl, n_max, budget)
    return ReductionReport(bool(expected_satisfiable), result.feasible, result)
