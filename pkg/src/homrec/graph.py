"""Graph representation and the line-oriented graph text format.

Format (UTF-8, ``#`` starts a comment)::

    n 3          # vertex count, first non-comment line
    e 0 1        # undirected edge
    c 0 red      # colour of a vertex (all or none)
    l root 0     # label placed on a vertex
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Optional, Sequence, Tuple

from .errors import ParseError

Edge = Tuple[int, int]


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph with optional colours and labels.

    ``edges`` holds normalized pairs ``(u, v)`` with ``u < v``. ``colours`` is
    either ``None`` or one colour name per vertex. ``labels`` is a sorted tuple
    of ``(label, vertex)`` pairs; distinct labels may share a vertex.
    """

    vertex_count: int
    edges: frozenset = frozenset()
    colours: Optional[Tuple[str, ...]] = None
    labels: Tuple[Tuple[str, int], ...] = ()

    def __post_init__(self):
        n = self.vertex_count
        if not isinstance(n, int) or n < 0:
            raise ValueError(f"vertex_count must be a non-negative int, got {n!r}")
        for e in self.edges:
            u, v = e
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < v < n):
                raise ValueError(f"edge {e} is not normalized or out of range for n={n}")
        if self.colours is not None and len(self.colours) != n:
            raise ValueError("colouring must assign exactly one colour to every vertex")
        names = [name for name, _ in self.labels]
        if len(set(names)) != len(names):
            raise ValueError("duplicate label")
        for name, v in self.labels:
            if not 0 <= v < n:
                raise ValueError(f"label {name!r} placed on missing vertex {v}")

    @classmethod
    def build(
        cls,
        vertex_count: int,
        edges: Iterable[Sequence[int]] = (),
        colours: Optional[Sequence[str]] = None,
        labels: Optional[Mapping[str, int]] = None,
    ) -> "Graph":
        """Normalize loose inputs (unordered pairs, dict labels) into a Graph."""
        norm = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            pair = (u, v) if u < v else (v, u)
            if pair in norm:
                raise ValueError(f"duplicate edge {pair}")
            norm.add(pair)
        return cls(
            vertex_count,
            frozenset(norm),
            None if colours is None else tuple(colours),
            tuple(sorted((labels or {}).items())),
        )

    @property
    def is_coloured(self) -> bool:
        return self.colours is not None

    @property
    def is_labelled(self) -> bool:
        return bool(self.labels)

    @cached_property
    def label_map(self) -> dict:
        return dict(self.labels)

    @cached_property
    def adjacency(self) -> Tuple[frozenset, ...]:
        adj = [set() for _ in range(self.vertex_count)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(frozenset(a) for a in adj)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def sorted_edges(self):
        return sorted(self.edges)

    def with_colours(self, colours: Sequence[str]) -> "Graph":
        return Graph(self.vertex_count, self.edges, tuple(colours), self.labels)

    def with_labels(self, labels: Mapping[str, int]) -> "Graph":
        return Graph(self.vertex_count, self.edges, self.colours, tuple(sorted(labels.items())))

    def __str__(self):
        return serialize_graph(self).rstrip("\n").replace("\n", "; ")


def parse_graph(text) -> Graph:
    """Parse the graph text format. Accepts ``str`` or ``bytes``."""
    if isinstance(text, (bytes, bytearray)):
        text = text.decode("utf-8")
    n = None
    edges = set()
    colours = {}
    labels = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        tag = parts[0]
        if n is None:
            if tag != "n" or len(parts) != 2:
                raise ParseError("first directive must be 'n <count>'", lineno)
            n = _parse_int(parts[1], lineno)
            continue
        if tag == "n":
            raise ParseError("repeated 'n' directive", lineno)
        if tag == "e":
            if len(parts) != 3:
                raise ParseError("expected 'e <u> <v>'", lineno)
            u, v = _vertex(parts[1], n, lineno), _vertex(parts[2], n, lineno)
            if u == v:
                raise ParseError(f"self-loop at vertex {u}", lineno)
            pair = (min(u, v), max(u, v))
            if pair in edges:
                raise ParseError(f"duplicate edge {pair[0]} {pair[1]}", lineno)
            edges.add(pair)
        elif tag == "c":
            if len(parts) != 3:
                raise ParseError("expected 'c <v> <colour>'", lineno)
            v = _vertex(parts[1], n, lineno)
            if v in colours:
                raise ParseError(f"vertex {v} coloured twice", lineno)
            colours[v] = parts[2]
        elif tag == "l":
            if len(parts) != 3:
                raise ParseError("expected 'l <label> <v>'", lineno)
            if parts[1] in labels:
                raise ParseError(f"label {parts[1]!r} placed twice", lineno)
            labels[parts[1]] = _vertex(parts[2], n, lineno)
        else:
            raise ParseError(f"unknown directive {tag!r}", lineno)
    if n is None:
        raise ParseError("missing 'n <count>' directive")
    colour_tuple = None
    if colours:
        missing = [v for v in range(n) if v not in colours]
        if missing:
            raise ParseError(f"colouring is partial; vertex {missing[0]} has no colour")
        colour_tuple = tuple(colours[v] for v in range(n))
    return Graph(n, frozenset(edges), colour_tuple, tuple(sorted(labels.items())))


def _parse_int(tok, lineno):
    try:
        value = int(tok, 10)
    except ValueError:
        raise ParseError(f"not a decimal integer: {tok!r}", lineno) from None
    if value < 0:
        raise ParseError(f"negative value {value}", lineno)
    return value


def _vertex(tok, n, lineno):
    v = _parse_int(tok, lineno)
    if v >= n:
        raise ParseError(f"vertex {v} out of range for n={n}", lineno)
    return v


def serialize_graph(g: Graph) -> str:
    """Canonical text form: edges sorted, then colours, then labels by name."""
    lines = [f"n {g.vertex_count}"]
    lines.extend(f"e {u} {v}" for u, v in sorted(g.edges))
    if g.colours is not None:
        lines.extend(f"c {v} {c}" for v, c in enumerate(g.colours))
    lines.extend(f"l {name} {v}" for name, v in g.labels)
    return "\n".join(lines) + "\n"


def degree_sequence(g: Graph) -> Tuple[int, ...]:
    return tuple(sorted((len(a) for a in g.adjacency), reverse=True))


# Small named graphs used throughout.

def empty_graph(n: int = 0) -> Graph:
    return Graph(n)


def star(j: int) -> Graph:
    """The star S_j: centre 0 joined to leaves 1..j."""
    return Graph(j + 1, frozenset((0, i) for i in range(1, j + 1)))


def complete_graph(n: int) -> Graph:
    return Graph(n, frozenset((u, v) for u in range(n) for v in range(u + 1, n)))


def path_graph(n: int) -> Graph:
    return Graph(n, frozenset((i, i + 1) for i in range(n - 1)))


def single_vertex(colour: Optional[str] = None, label: Optional[str] = None) -> Graph:
    return Graph(1, frozenset(), None if colour is None else (colour,),
                 () if label is None else ((label, 0),))


def coloured_edge(a: str, b: str) -> Graph:
    return Graph(2, frozenset({(0, 1)}), (a, b))


def coloured_path(colours: Sequence[str]) -> Graph:
    """Path through vertices 0..k-1 coloured in order."""
    k = len(colours)
    return Graph(k, frozenset((i, i + 1) for i in range(k - 1)), tuple(colours))
