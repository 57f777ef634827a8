"""Star counts as functions of degrees.

For a vertex of degree d, the number of S_j subgraphs centred at it is
``s_j(d) = C(d, j)`` and the number of S_j homomorphisms centred at it is
``h_j(d) = d**j``. Both are computed here by their defining recursions
(Pascal's rule and the binomial expansion of ``((d-1)+1)**j``) so that the
closed forms can be checked against them.

Whole-graph star counts depend only on the degree sequence. Homomorphism and
subgraph vectors are related through the binomial degree sums
``p_j = sum_v C(deg v, j)``::

    h_j = sum_i S2(j, i) * i! * p_i

which is triangular in ``i`` with leading coefficient ``j!`` and therefore
exactly invertible over the integers when a solution exists.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from math import factorial
from typing import Optional, Sequence, Tuple

from .counting import HOM, MODES, SUB
from .errors import Inconsistent

_lock = threading.RLock()
_sub_rows = [[1]]   # _sub_rows[d][j] = s_j(d)
_hom_rows = [[1]]   # _hom_rows[d][j] = h_j(d)
_stirling = {(0, 0): 1}


def _grow(rows, d, j, step):
    """Extend ``rows`` so that rows[d][j] exists, filling bottom-up."""
    with _lock:
        width = max(j + 1, len(rows[-1]))
        if len(rows[0]) < width:
            for dd, row in enumerate(rows):
                if dd == 0:
                    row.extend([0] * (width - len(row)))
                else:
                    prev = rows[dd - 1]
                    for jj in range(len(row), width):
                        row.append(step(prev, jj))
        while len(rows) <= d:
            prev = rows[-1]
            rows.append([step(prev, jj) if jj else 1 for jj in range(width)])


def _pascal(prev, j):
    return prev[j] + prev[j - 1]


def _binomial_sum(prev, j):
    row = _sub_rows_for(j)
    return sum(row[i] * prev[i] for i in range(j + 1))


def _sub_rows_for(j):
    # C(j, i) for i <= j, taken from the Pascal table itself
    _grow(_sub_rows, j, j, _pascal)
    return _sub_rows[j]


def sub_star_count_at_degree(j: int, d: int) -> int:
    """s_j(d): S_j copies centred at a degree-d vertex."""
    if j < 0 or d < 0:
        raise ValueError("j and d must be non-negative")
    if j == 0:
        return 1
    rows = _sub_rows
    if d >= len(rows) or j >= len(rows[0]):
        _grow(rows, d, j, _pascal)
    return rows[d][j]


def hom_star_count_at_degree(j: int, d: int) -> int:
    """h_j(d): S_j homomorphisms whose centre goes to a degree-d vertex."""
    if j < 0 or d < 0:
        raise ValueError("j and d must be non-negative")
    if j == 0:
        return 1
    _sub_rows_for(j)
    rows = _hom_rows
    if d >= len(rows) or j >= len(rows[0]):
        _grow(rows, d, j, _binomial_sum)
    return rows[d][j]


def stirling2(j: int, i: int) -> int:
    """Stirling numbers of the second kind, S2(j, i)."""
    if j < 0 or i < 0:
        raise ValueError("negative argument")
    if i > j:
        return 0
    key = (j, i)
    hit = _stirling.get(key)
    if hit is not None:
        return hit
    for jj in range(1, j + 1):
        for ii in range(0, jj + 1):
            if (jj, ii) not in _stirling:
                val = 0 if ii == 0 else ii * _stirling.get((jj - 1, ii), 0) + _stirling.get((jj - 1, ii - 1), 0)
                _stirling[(jj, ii)] = val
    return _stirling[key]


@dataclass(frozen=True)
class StarCountVector:
    """Counts for S_0..S_ell; ``None`` marks an unspecified slot.

    In sub mode slot 1 is the edge count; in hom mode it is twice that.
    """

    mode: str
    slots: Tuple[Optional[int], ...]

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be hom or sub, got {self.mode!r}")
        if not self.slots:
            raise ValueError("a star count vector needs at least slot 0")
        for s in self.slots:
            if s is not None and (not isinstance(s, int) or s < 0):
                raise ValueError(f"slot values must be non-negative integers, got {s!r}")

    @property
    def ell(self) -> int:
        return len(self.slots) - 1

    @property
    def fully_specified(self) -> bool:
        return all(s is not None for s in self.slots)

    def __getitem__(self, j):
        return self.slots[j]


def star_counts_of_degseq(d: Sequence[int], ell: int, mode: str = SUB) -> StarCountVector:
    d = tuple(d)
    slots = [len(d)]
    for j in range(1, ell + 1):
        if mode == HOM:
            slots.append(sum(hom_star_count_at_degree(j, x) for x in d))
        elif j == 1:
            slots.append(sum(d) // 2)
        else:
            slots.append(sum(sub_star_count_at_degree(j, x) for x in d))
    return StarCountVector(mode, tuple(slots))


def hom_to_sub(v: StarCountVector) -> StarCountVector:
    """Invert the Stirling transform. Raises :class:`Inconsistent` if the
    hom counts cannot come from any multiset of degrees."""
    if v.mode != HOM:
        raise ValueError("hom_to_sub expects a hom-mode vector")
    if not v.fully_specified:
        raise ValueError("hom_to_sub needs every slot specified")
    h = v.slots
    p = [h[0]]
    for j in range(1, len(h)):
        rest = h[j] - sum(stirling2(j, i) * factorial(i) * p[i] for i in range(1, j))
        q, r = divmod(rest, factorial(j))
        if r or q < 0:
            raise Inconsistent(f"hom counts give a non-integral or negative degree sum at j={j}")
        p.append(q)
    if len(p) > 1:
        if p[1] % 2:
            raise Inconsistent("hom(S_1) must be even")
        p[1] //= 2
    return StarCountVector(SUB, tuple(p))


def sub_to_hom(v: StarCountVector) -> StarCountVector:
    if v.mode != SUB:
        raise ValueError("sub_to_hom expects a sub-mode vector")
    if not v.fully_specified:
        raise ValueError("sub_to_hom needs every slot specified")
    p = list(v.slots)
    if len(p) > 1:
        p[1] *= 2
    h = [p[0]]
    for j in range(1, len(p)):
        h.append(sum(stirling2(j, i) * factorial(i) * p[i] for i in range(1, j + 1)))
    return StarCountVector(HOM, tuple(h))
