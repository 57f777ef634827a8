"""Graph reconstruction from star counts.

The decision procedure is a memoized dynamic program over states
``(s_0..s_ell, m, x)``. A state stands for the question: is there a
non-increasing list of ``s_0`` degrees, each at most ``m``, which together
with ``x`` extra degree-1 entries forms a graphic sequence, such that the
``s_0`` real entries have degree sum ``s_1`` and binomial sums ``s_j``
(``sum C(d_i, j)``) for ``j >= 2``?

A step guesses the largest real degree ``d`` and the number ``n_1`` of
non-zero real entries, removes the top vertex, decrements the other
non-zero entries and moves the surplus into the pool of slack ones::

    s'_0 = n_1 - 1
    s'_j = s_j - C(d, j) - s'_{j-1}
    m'   = d - 1
    x'   = x + n_1 - 1 - d          (requires d <= n_1 - 1 + x)

Every real entry surviving to depth ``i`` has been decremented ``i - 1``
times, which is how the original degrees are recovered when backtracking.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Iterator, NamedTuple, Optional, Sequence, Tuple, Union

from .counting import HOM, SUB, Budget, PatternConstraint, check_constraints
from .degseq import DegreeSequence, havel_hakimi_realize, is_graphic
from .errors import Inconsistent, InternalInconsistency, ParseError
from .graph import Graph, star
from .stars import StarCountVector, hom_to_sub, star_counts_of_degseq, sub_star_count_at_degree


class DpKey(NamedTuple):
    s: Tuple[int, ...]
    m: int
    x: int


BASE = ()  # memo marker: feasible base case, no witness


class DpTable:
    """Memo for one solve call: key -> False | BASE | (d, n_1) witness."""

    def __init__(self, top: Optional[DpKey] = None, check_invariants: bool = False):
        self.memo = {}
        self.top = top
        self.check_invariants = check_invariants
        self.hits = 0
        self.misses = 0
        self.expansions = 0

    def __len__(self):
        return len(self.memo)

    def __contains__(self, key):
        return key in self.memo

    def lookup(self, key: DpKey):
        """(feasible, witness) for a stored key."""
        entry = self.memo[key]
        if entry is False:
            return False, None
        return True, (entry or None)

    @property
    def hit_rate(self) -> float:
        total = self.hits + self.misses
        return self.hits / total if total else 0.0

    def admits(self, key: DpKey) -> bool:
        top = self.top
        if top is None:
            return True
        if key.m >= max(top.s[0], 1) or key.x > top.s[1]:
            return False
        return all(0 <= a <= b for a, b in zip(key.s, top.s))


def _base_case(key: DpKey):
    """True/False for the two base cases, None when the state must expand."""
    s, m, x = key
    if s[1] == 0:
        return all(v == 0 for v in s[2:])
    if s[0] == 1:
        return s[1] == 1 and all(v == 0 for v in s[2:]) and m >= 1 and x >= 1
    return None


def _hopeless(key: DpKey) -> bool:
    """Necessary conditions on s_0 entries bounded by m; cheap early reject."""
    s, m, _ = key
    s0 = s[0]
    if s0 <= 0:
        return True
    for j in range(1, len(s)):
        if s[j] > s0 * comb(m, j):
            return True
        if j >= 2 and j * s[j] > (m - j + 1) * s[j - 1]:
            return True
    return False


def _child(key: DpKey, d: int, n1: int) -> Optional[DpKey]:
    s = key.s
    new = [n1 - 1]
    for j in range(1, len(s)):
        v = s[j] - sub_star_count_at_degree(j, d) - new[j - 1]
        if v < 0:
            return None
        new.append(v)
    return DpKey(tuple(new), d - 1, key.x + n1 - 1 - d)


def _expand(key: DpKey) -> Iterator[Tuple[int, int, DpKey]]:
    """Children in witness order: largest d first, then largest n_1."""
    s, m, x = key
    s0, s1 = s[0], s[1]
    for d in range(m, 0, -1):
        lo = max(1, d + 1 - x)
        hi = min(s0, s1 - d + 1)
        for n1 in range(hi, lo - 1, -1):
            child = _child(key, d, n1)
            if child is not None:
                yield d, n1, child


def _check_step(parent: DpKey, child: DpKey):
    if (parent.s[1] + parent.x) % 2 != (child.s[1] + child.x) % 2:
        raise InternalInconsistency(f"parity changed between {parent} and {child}")
    if not (child.s[0] < parent.s[0] or child.m < parent.m):
        raise InternalInconsistency(f"no shrinkage from {parent} to {child}")


def dp_feasible(key: DpKey, table: DpTable) -> bool:
    """Evaluate the recursion at ``key``, filling ``table``.

    Iterative depth-first search so that deep instances do not hit the
    interpreter's recursion limit. The first successful child of each state
    is stored as its witness.
    """
    key = DpKey(tuple(key.s), key.m, key.x)
    if len(key.s) < 2:
        raise ValueError("the DP needs ell >= 1")
    memo = table.memo
    if key in memo:
        table.hits += 1
        return memo[key] is not False
    table.misses += 1
    if any(v < 0 for v in key.s) or key.m < 0 or key.x < 0:
        return False
    if (key.s[1] + key.x) % 2:
        # every step preserves this parity, and the base cases assume it
        memo[key] = False
        return False

    def enter(k):
        base = _base_case(k)
        if base is None and _hopeless(k):
            base = False
        if base is not None:
            memo[k] = BASE if base else False
            return base
        table.expansions += 1
        stack.append([k, _expand(k), None])
        return None

    stack = []
    result = enter(key)
    if result is not None:
        return result
    found = None  # outcome of the most recently finished child
    while stack:
        frame = stack[-1]
        k, children, pending = frame
        if found is not None:
            if found:
                memo[k] = pending
                stack.pop()
                continue
            found = None
        descended = False
        for d, n1, child in children:
            if table.check_invariants:
                _check_step(k, child)
            if not table.admits(child):
                continue
            if child in memo:
                table.hits += 1
                if memo[child] is not False:
                    found = True
                    frame[2] = (d, n1)
                    break
                continue
            table.misses += 1
            r = enter(child)
            if r is None:
                frame[2] = (d, n1)
                descended = True
                break
            if r:
                found = True
                frame[2] = (d, n1)
                break
        if descended:
            continue
        if found:
            memo[k] = frame[2]
            stack.pop()
        else:
            memo[k] = False
            stack.pop()
            found = False
    return memo[key] is not False


def dp_counts(d: Sequence[int], ell: int) -> Tuple[int, ...]:
    """A degree list in DP convention: (length, degree sum, C-sums for j>=2)."""
    v = star_counts_of_degseq(d, ell, SUB).slots
    return (v[0], sum(d)) + tuple(v[2:])


def backtrack_degree_sequence(table: DpTable, root: DpKey, n_total: int) -> DegreeSequence:
    """Recover the degree sequence behind a feasible ``root`` (with x = 0)."""
    root = DpKey(tuple(root.s), root.m, root.x)
    out = []
    key = root
    depth = 1
    while True:
        if key not in table.memo:
            raise InternalInconsistency(f"state {key} missing from the table")
        entry = table.memo[key]
        if entry is False:
            raise InternalInconsistency(f"backtracking reached infeasible state {key}")
        s = key.s
        if entry == BASE:
            if s[1] == 0:
                out.extend([depth - 1] * s[0])
            elif s[0] == 1 and s[1] == 1:
                out.append(depth)
            else:
                raise InternalInconsistency(f"unexpected base state {key}")
            break
        d, n1 = entry
        out.append(d + depth - 1)
        out.extend([depth - 1] * (s[0] - n1))
        key = _child(key, d, n1)
        depth += 1
    seq = tuple(sorted(out, reverse=True))
    ell = len(root.s) - 1
    if len(seq) != n_total:
        raise InternalInconsistency(f"recovered {len(seq)} degrees, expected {n_total}")
    if not is_graphic(seq):
        raise InternalInconsistency(f"recovered sequence {seq} is not graphic")
    if dp_counts(seq, ell) != tuple(root.s):
        raise InternalInconsistency(f"recovered sequence {seq} misses the targets {root.s}")
    return seq


@dataclass(frozen=True)
class StarInstance:
    counts: StarCountVector
    conflicting: bool = False

    @property
    def mode(self):
        return self.counts.mode

    @classmethod
    def from_pairs(cls, mode: str, pairs: Iterable[Tuple[int, int]]) -> "StarInstance":
        """Build from ``(j, count)`` pairs. Conflicting duplicates mark the
        instance infeasible instead of raising."""
        given = {}
        conflicting = False
        for j, c in pairs:
            if j < 0 or c < 0:
                raise ValueError("star sizes and counts must be non-negative")
            if j in given and given[j] != c:
                conflicting = True
            given.setdefault(j, c)
        if not given:
            raise ValueError("no star constraints given")
        ell = max(given)
        slots = tuple(given.get(j) for j in range(ell + 1))
        return cls(StarCountVector(mode, slots), conflicting)

    def constraints(self):
        return [PatternConstraint(star(j), c, self.mode)
                for j, c in enumerate(self.counts.slots) if c is not None]


def parse_star_constraints(text) -> StarInstance:
    """``mode hom|sub`` then ``star <j> <count>`` lines; ``#`` comments."""
    if isinstance(text, (bytes, bytearray)):
        text = text.decode("utf-8")
    mode = None
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "mode":
            if len(parts) != 2 or parts[1] not in (HOM, SUB):
                raise ParseError("expected 'mode hom' or 'mode sub'", lineno)
            if mode is not None and mode != parts[1]:
                raise ParseError("conflicting mode lines", lineno)
            mode = parts[1]
        elif parts[0] == "star":
            if len(parts) != 3 or not parts[1].isdigit() or not parts[2].isdigit():
                raise ParseError("expected 'star <j> <count>'", lineno)
            pairs.append((int(parts[1]), int(parts[2])))
        else:
            raise ParseError(f"unknown directive {parts[0]!r}", lineno)
    if mode is None:
        raise ParseError("missing 'mode' header")
    if not pairs:
        raise ParseError("no 'star' lines")
    return StarInstance.from_pairs(mode, pairs)


def format_star_constraints(instance: StarInstance) -> str:
    lines = [f"mode {instance.mode}"]
    lines += [f"star {j} {c}" for j, c in enumerate(instance.counts.slots) if c is not None]
    return "\n".join(lines) + "\n"


@dataclass
class SolveStats:
    """Aggregated DP statistics over one or more solver calls."""

    dp_calls: int = 0
    states: int = 0
    hits: int = 0
    misses: int = 0
    expansions: int = 0
    completions_tried: int = 0
    degree_sequence: Optional[DegreeSequence] = None

    def absorb(self, table: DpTable):
        self.dp_calls += 1
        self.states += len(table)
        self.hits += table.hits
        self.misses += table.misses
        self.expansions += table.expansions

    @property
    def hit_rate(self) -> float:
        total = self.hits + self.misses
        return self.hits / total if total else 0.0


InstanceLike = Union[StarInstance, StarCountVector]


def _as_instance(instance: InstanceLike) -> StarInstance:
    if isinstance(instance, StarCountVector):
        return StarInstance(instance)
    return instance


def _verified(g: Graph, vector: StarCountVector) -> Graph:
    cons = StarInstance(vector).constraints()
    report = check_constraints(g, cons, Budget(float("inf")))
    if not report.satisfied:
        raise InternalInconsistency(f"solver produced a graph violating {vector}")
    return g


def solve_star_sub(instance: InstanceLike, stats: Optional[SolveStats] = None,
                   check_invariants: bool = False) -> Optional[Graph]:
    """Reconstruct a graph from fully specified star subgraph counts.

    Returns ``None`` when no graph has these counts.
    """
    instance = _as_instance(instance)
    v = instance.counts
    if v.mode != SUB or not v.fully_specified:
        raise ValueError("solve_star_sub needs a fully specified sub-mode vector")
    if instance.conflicting:
        return None
    t = v.slots
    n = t[0]
    if n == 0:
        if any(t):
            return None
        if stats is not None:
            stats.degree_sequence = ()
        return _verified(Graph(0), v)
    if v.ell == 0:
        if stats is not None:
            stats.degree_sequence = (0,) * n
        return _verified(Graph(n), v)
    root = DpKey((n, 2 * t[1]) + tuple(t[2:]), n - 1, 0)
    table = DpTable(root, check_invariants=check_invariants)
    feasible = dp_feasible(root, table)
    if stats is not None:
        stats.absorb(table)
    if not feasible:
        return None
    seq = backtrack_degree_sequence(table, root, n)
    if stats is not None:
        stats.degree_sequence = seq
    return _verified(havel_hakimi_realize(seq), v)


def solve_star_hom(instance: InstanceLike, stats: Optional[SolveStats] = None,
                   check_invariants: bool = False) -> Optional[Graph]:
    """Reconstruct from fully specified star homomorphism counts."""
    instance = _as_instance(instance)
    v = instance.counts
    if v.mode != HOM or not v.fully_specified:
        raise ValueError("solve_star_hom needs a fully specified hom-mode vector")
    if instance.conflicting:
        return None
    try:
        sub = hom_to_sub(v)
    except Inconsistent:
        return None
    g = solve_star_sub(StarInstance(sub), stats, check_invariants)
    if g is None:
        return None
    return _verified(g, v)


def _hom_ranges(slots, ell):
    """Per-slot candidate ranges for hom completions, given earlier choices."""
    specified = [c for c in slots if c is not None]
    cap = max(specified)

    def upper_from_later(j):
        for k in range(j + 1, ell + 1):
            if slots[k] is not None:
                return min(cap, slots[k])
        return cap

    def rng(j, chosen):
        if slots[j] is not None:
            return (slots[j],)
        if j == 0:
            hi = slots[1] if ell >= 1 and slots[1] is not None else upper_from_later(0)
            return range(0, hi + 1)
        n = chosen[0]
        lo = chosen[j - 1] if j >= 2 else 0
        hi = upper_from_later(j)
        hi = min(hi, n * (n - 1) ** j) if n > 0 else 0
        if j >= 2:
            hi = min(hi, (n - 1) * chosen[j - 1]) if n > 0 else 0
        if j == 1:
            return range(lo + lo % 2, hi + 1, 2)
        return range(lo, hi + 1)

    return rng


def _sub_ranges(slots, ell):
    """Per-slot candidate ranges for sub completions."""
    bound = sum(c * (j + 1) for j, c in enumerate(slots) if c is not None)

    def rng(j, chosen):
        if slots[j] is not None:
            return (slots[j],)
        if j == 0:
            return range(0, bound + 1)
        n = chosen[0]
        if j == 1:
            return range(0, comb(n, 2) + 1)
        hi = n * comb(max(n - 1, 0), j)
        prev = 2 * chosen[1] if j == 2 else chosen[j - 1]
        if n >= j:
            hi = min(hi, (n - j) * prev // j)
        else:
            hi = 0
        return range(0, hi + 1)

    return rng


def _completions(slots, rng) -> Iterator[Tuple[int, ...]]:
    ell = len(slots) - 1

    def rec(j, chosen):
        if j > ell:
            yield tuple(chosen)
            return
        for c in rng(j, chosen):
            chosen.append(c)
            yield from rec(j + 1, chosen)
            chosen.pop()

    yield from rec(0, [])


def solve_star_partial(instance: InstanceLike, stats: Optional[SolveStats] = None) -> Optional[Graph]:
    """Reconstruct when only some star counts are given.

    Missing counts are guessed in lexicographic order (smallest first) and
    each completion is handed to the full-count solver; the first graph found
    is returned.
    """
    instance = _as_instance(instance)
    v = instance.counts
    if v.slots[-1] is None:
        raise ValueError("the largest star must have a specified count")
    if instance.conflicting:
        return None
    if v.fully_specified:
        solve = solve_star_hom if v.mode == HOM else solve_star_sub
        return solve(instance, stats)
    ell = v.ell
    if v.mode == HOM:
        rng, solve = _hom_ranges(v.slots, ell), solve_star_hom
    else:
        rng, solve = _sub_ranges(v.slots, ell), solve_star_sub
    for slots in _completions(v.slots, rng):
        if v.mode == HOM and ell >= 1 and any(slots[j] > slots[j + 1] for j in range(1, ell)):
            continue
        if stats is not None:
            stats.completions_tried += 1
        g = solve(StarCountVector(v.mode, slots), stats)
        if g is not None:
            return _verified(g, v)
    return None


def solve_stars(instance: InstanceLike, stats: Optional[SolveStats] = None) -> Optional[Graph]:
    """Dispatch to the right solver for the instance's mode and specification."""
    instance = _as_instance(instance)
    if instance.counts.fully_specified:
        if instance.mode == HOM:
            return solve_star_hom(instance, stats)
        return solve_star_sub(instance, stats)
    return solve_star_partial(instance, stats)
