"""Degree sequences: graphicality, Havel-Hakimi realization, and the
shrinking step the star solver's recursion is built on."""

from __future__ import annotations

from typing import Iterable, Sequence, Tuple

from .errors import NotGraphic, ParseError, PreconditionViolated
from .graph import Graph

DegreeSequence = Tuple[int, ...]


def as_degree_sequence(entries: Iterable[int]) -> DegreeSequence:
    seq = tuple(entries)
    for d in seq:
        if not isinstance(d, int) or d < 0:
            raise ValueError(f"degree entries must be non-negative integers, got {d!r}")
    return tuple(sorted(seq, reverse=True))


def parse_sequence(text: str) -> DegreeSequence:
    """Parse ``"3,3,2,2,0"``. An empty string is the empty sequence."""
    text = text.strip()
    if not text:
        return ()
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok.isdigit():
            raise ParseError(f"bad sequence entry {tok!r}")
        out.append(int(tok))
    return as_degree_sequence(out)


def format_sequence(d: Sequence[int]) -> str:
    return ",".join(str(x) for x in d)


def is_graphic(d: Sequence[int]) -> bool:
    """Erdős–Gallai test, evaluated for every k in [1, n]."""
    d = as_degree_sequence(d)
    n = len(d)
    if sum(d) % 2:
        return False
    prefix = 0
    for k in range(1, n + 1):
        prefix += d[k - 1]
        rhs = k * (k - 1) + sum(min(x, k) for x in d[k:])
        if prefix > rhs:
            return False
    return True


def havel_hakimi_realize(d: Sequence[int]) -> Graph:
    """Realize ``d`` as a graph; vertex i receives the i-th largest degree.

    The vertex with the highest remaining degree (lowest index on ties) is
    joined to the next-highest ones (again lowest index first).
    """
    d = as_degree_sequence(d)
    if not is_graphic(d):
        raise NotGraphic(f"{format_sequence(d)} is not graphic")
    n = len(d)
    remaining = list(d)
    edges = set()
    active = set(range(n))
    while active:
        u = min(active, key=lambda v: (-remaining[v], v))
        active.discard(u)
        need = remaining[u]
        remaining[u] = 0
        if need == 0:
            continue
        partners = sorted(active, key=lambda v: (-remaining[v], v))[:need]
        if len(partners) < need or remaining[partners[-1]] == 0:
            raise NotGraphic(f"{format_sequence(d)} is not graphic")
        for v in partners:
            remaining[v] -= 1
            edges.add((min(u, v), max(u, v)))
    return Graph(n, frozenset(edges))


def reduction_step(d: Sequence[int]) -> DegreeSequence:
    """Drop d_1, decrement the rest, append ``n - 1 - d_1`` ones (kept sorted).

    Graphicality is preserved in both directions.
    """
    d = as_degree_sequence(d)
    n = len(d)
    if n < 2:
        raise PreconditionViolated("sequence needs at least two entries")
    if d[-1] == 0:
        raise PreconditionViolated("all entries must be positive")
    if d[0] > n - 1:
        raise PreconditionViolated(f"d_1 = {d[0]} exceeds n - 1 = {n - 1}")
    rest = [x - 1 for x in d[1:]]
    # rest is non-increasing; the ones go right before the first zero
    cut = len(rest)
    while cut > 0 and rest[cut - 1] == 0:
        cut -= 1
    ones = [1] * (n - 1 - d[0])
    return tuple(rest[:cut] + ones + rest[cut:])
