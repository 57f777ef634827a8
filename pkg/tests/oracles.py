"""Slow, obviously-correct reference implementations used only by tests.

Nothing here shares code with the package beyond the Graph container.
"""

import itertools
from fractions import Fraction
from math import comb, factorial

from homrec.graph import Graph


def naive_hom_count(pattern: Graph, target: Graph) -> int:
    """Try every map V(pattern) -> V(target)."""
    k, n = pattern.vertex_count, target.vertex_count
    tedges = {frozenset(e) for e in target.edges}
    tlabels = dict(target.labels)
    total = 0
    for image in itertools.product(range(n), repeat=k):
        if any(frozenset((image[u], image[v])) not in tedges for u, v in pattern.edges):
            continue
        if pattern.colours is not None:
            if target.colours is None:
                continue
            if any(pattern.colours[p] != target.colours[image[p]] for p in range(k)):
                continue
        if any(tlabels.get(name) != image[p] for name, p in pattern.labels):
            continue
        total += 1
    return total


def naive_sub_count(pattern: Graph, target: Graph) -> int:
    """Count (vertex set, edge subset) pairs isomorphic to ``pattern``."""
    k = pattern.vertex_count
    pk = len(pattern.edges)
    pedges = {frozenset(e) for e in pattern.edges}
    total = 0
    for verts in itertools.combinations(range(target.vertex_count), k):
        inside = [e for e in target.edges if e[0] in verts and e[1] in verts]
        for chosen in itertools.combinations(inside, pk):
            chosen = {frozenset(e) for e in chosen}
            for perm in itertools.permutations(verts):
                if {frozenset((perm[u], perm[v])) for u, v in pedges} == chosen:
                    total += 1
                    break
    return total


def degrees(g: Graph):
    deg = [0] * g.vertex_count
    for u, v in g.edges:
        deg[u] += 1
        deg[v] += 1
    return deg


def star_sub_vector(g: Graph, ell: int):
    """sub(S_0..S_ell) from the centre-and-leaf-set description of a star."""
    deg = degrees(g)
    out = [g.vertex_count, len(g.edges)]  # S_1 copies are edges, not centred pairs
    for j in range(2, ell + 1):
        out.append(sum(comb(d, j) for d in deg))
    return tuple(out[: ell + 1])


def star_hom_vector(g: Graph, ell: int):
    deg = degrees(g)
    return tuple(sum(d ** j for d in deg) for j in range(ell + 1))


def stirling1_signed(j, i):
    """s(j, i) from the falling factorial expansion x(x-1)...(x-j+1)."""
    poly = [1]
    for r in range(j):
        nxt = [0] * (len(poly) + 1)
        for deg, c in enumerate(poly):
            nxt[deg + 1] += c
            nxt[deg] -= r * c
        poly = nxt
    return poly[i] if i < len(poly) else 0


def binomial_sums_from_hom(h):
    """p_j = sum_v C(deg v, j) as exact fractions, via falling factorials."""
    out = []
    for j in range(len(h)):
        val = sum(stirling1_signed(j, i) * h[i] for i in range(j + 1))
        out.append(Fraction(val, factorial(j)))
    return out


def all_graphs(n):
    pairs = list(itertools.combinations(range(n), 2))
    for r in range(len(pairs) + 1):
        for es in itertools.combinations(pairs, r):
            yield Graph(n, frozenset(es))


def graphic_by_search(seq) -> bool:
    """Does some graph on len(seq) vertices have exactly these degrees?"""
    n = len(seq)
    target = sorted(seq, reverse=True)
    for g in all_graphs(n):
        if sorted(degrees(g), reverse=True) == target:
            return True
    return False
