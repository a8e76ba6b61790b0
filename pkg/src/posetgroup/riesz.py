"""Constructive refinement in the positive cone, and interpolation.

Every cone equality x1 + x2 = y1 + y2 admits a 2x2 matrix of cone
elements whose rows sum to the x's and columns to the y's. The
construction recurses on the poset: restrict to the union of the four
supports, solve antichains coordinatewise over the nonnegative integers,
otherwise strip a pivot (a minimal non-maximal element), refine the rest,
and re-insert pivot coefficients chosen by a case analysis on which of
the four partial entries vanish strictly above the pivot.

Interpolation (x_a <= y_b for all four pairs implies some z between)
is obtained by refining the equality of the four differences.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .abelian import GroupElement
from .cone import in_cone, leq
from .errors import (HostMismatchError, InternalInvariantViolation,
                     NotInConeError, NotInterpolableError, SumMismatchError)
from .poset import Poset, _bits


# -- integer refinement primitives ------------------------------------------

def refine_nat(x1: int, x2: int, y1: int, y2: int) -> tuple[tuple[int, int], tuple[int, int]]:
    """Refinement of x1 + x2 = y1 + y2 in the nonnegative integers.

    z11 = min(x1, y1); the remaining entries are forced by the sums and
    stay nonnegative.
    """
    for v in (x1, x2, y1, y2):
        if v < 0:
            raise ValueError("refine_nat takes nonnegative integers")
    if x1 + x2 != y1 + y2:
        raise SumMismatchError(f"{x1}+{x2} != {y1}+{y2}")
    z11 = min(x1, y1)
    z21 = y1 - z11
    return (z11, x1 - z11), (z21, x2 - z21)


class IntRefineMode(enum.Enum):
    """Which pair of entries the integer refinement keeps nonnegative."""

    DIAG_NONNEG = "diag"
    OFFDIAG_NONNEG = "offdiag"


def refine_int(x1: int, x2: int, y1: int, y2: int,
               mode: IntRefineMode) -> tuple[tuple[int, int], tuple[int, int]]:
    """Refinement of x1 + x2 = y1 + y2 in the integers.

    All solutions are z11 = t, z12 = x1 - t, z21 = y1 - t, z22 = x2 - y1 + t;
    DIAG_NONNEG picks t = max(0, y1 - x2) so z11 >= 0 and z22 >= 0,
    OFFDIAG_NONNEG picks t = min(x1, y1) so z12 >= 0 and z21 >= 0.
    """
    if x1 + x2 != y1 + y2:
        raise SumMismatchError(f"{x1}+{x2} != {y1}+{y2}")
    if mode is IntRefineMode.DIAG_NONNEG:
        t = max(0, y1 - x2)
    else:
        t = min(x1, y1)
    return (t, x1 - t), (y1 - t, x2 - y1 + t)


# -- problem and certificate types -------------------------------------------

@dataclass(frozen=True)
class RefinementProblem:
    """A cone equality x1 + x2 = y1 + y2, validated on construction."""

    x1: GroupElement
    x2: GroupElement
    y1: GroupElement
    y2: GroupElement

    def __post_init__(self):
        self.x1._check_host(self.x2)
        self.x1._check_host(self.y1)
        self.x1._check_host(self.y2)
        for v in (self.x1, self.x2, self.y1, self.y2):
            if not in_cone(v):
                raise NotInConeError(f"{v} is not in the positive cone")
        if self.x1 + self.x2 != self.y1 + self.y2:
            raise SumMismatchError("x1 + x2 != y1 + y2")

    @property
    def poset(self) -> Poset:
        return self.x1.poset


@dataclass(frozen=True)
class RefinementMatrix:
    """2x2 matrix certifying a refinement; rows sum to x's, columns to y's."""

    z11: GroupElement
    z12: GroupElement
    z21: GroupElement
    z22: GroupElement

    def entries(self) -> tuple[GroupElement, GroupElement, GroupElement, GroupElement]:
        return (self.z11, self.z12, self.z21, self.z22)


@dataclass(frozen=True)
class PivotPattern:
    """Cells (row, col) of a 2x2 partial refinement that vanish above a pivot.

    Cell (a, b) is present iff the (a, b) entry has zero coefficient at
    every element strictly above the pivot.
    """

    cells: frozenset


def check_refinement(prob: RefinementProblem, matrix: RefinementMatrix) -> bool:
    """Independent validator: row/column sums plus cone membership.

    Shares no code with the construction in :func:`refine`.
    """
    entries = matrix.entries()
    prob.x1._check_host(entries[0])
    for e in entries:
        entries[0]._check_host(e)
    z11, z12, z21, z22 = entries
    if z11 + z12 != prob.x1 or z21 + z22 != prob.x2:
        return False
    if z11 + z21 != prob.y1 or z12 + z22 != prob.y2:
        return False
    return all(in_cone(e) for e in entries)


# -- the recursive construction ----------------------------------------------

_CELLS = ((1, 1), (1, 2), (2, 1), (2, 2))
_T_EMPTY = frozenset()
_T_SINGLE = frozenset({(1, 1)})
_T_DIAG = frozenset({(1, 1), (2, 2)})
_T_ROW = frozenset({(1, 1), (1, 2)})
_T_THREE = frozenset({(1, 1), (1, 2), (2, 2)})
_TARGETS = (_T_EMPTY, _T_SINGLE, _T_DIAG, _T_ROW, _T_THREE)


def _apply_flags(cells, transpose: bool, row_swap: bool, col_swap: bool):
    out = set()
    for a, b in cells:
        if transpose:
            a, b = b, a
        if row_swap:
            a = 3 - a
        if col_swap:
            b = 3 - b
        out.add((a, b))
    return frozenset(out)


def _normalize(cells):
    """Flags (transpose, row_swap, col_swap) mapping cells onto a target.

    Transposition is tried last, so it is used only for the same-column
    two-cell patterns, which row and column swaps cannot reach.
    """
    for tr in (False, True):
        for rs in (False, True):
            for cs in (False, True):
                img = _apply_flags(cells, tr, rs, cs)
                for target in _TARGETS:
                    if img == target:
                        return tr, rs, cs, target
    raise InternalInvariantViolation(f"unnormalizable pattern {sorted(cells)}")


def _vanishing_cells(above_mask: int, quads) -> frozenset:
    cells = set()
    for cell, d in zip(_CELLS, quads):
        mask = 0
        for i in d:
            mask |= 1 << i
        if not mask & above_mask:
            cells.add(cell)
    return frozenset(cells)


def _refine_rec(p: Poset, x1: dict, x2: dict, y1: dict, y2: dict):
    """Refine four index->coefficient dicts over the host poset.

    Inputs are trusted to be cone members with equal pair sums; the
    working poset restriction is carried as the union-of-supports bitmask
    rather than materialized poset objects.
    """
    active = 0
    for d in (x1, x2, y1, y2):
        for i in d:
            active |= 1 << i
    if not active:
        return {}, {}, {}, {}
    if p._is_antichain_mask(active):
        z = ({}, {}, {}, {})
        for i in _bits(active):
            row = refine_nat(x1.get(i, 0), x2.get(i, 0), y1.get(i, 0), y2.get(i, 0))
            for d, v in zip(z, (row[0][0], row[0][1], row[1][0], row[1][1])):
                if v:
                    d[i] = v
        return z
    m = p._minimal_non_maximal_index(active)
    u = _refine_rec(p,
                    {i: c for i, c in x1.items() if i != m},
                    {i: c for i, c in x2.items() if i != m},
                    {i: c for i, c in y1.items() if i != m},
                    {i: c for i, c in y2.items() if i != m})
    cells = _vanishing_cells(p._strict_up[m] & active, u)
    if len(cells) == 4:
        # would force the pivot to be maximal in the active set
        raise InternalInvariantViolation(
            "all four partial entries vanish above the pivot")
    tr, rs, cs, target = _normalize(cells)
    a1, a2 = x1.get(m, 0), x2.get(m, 0)
    b1, b2 = y1.get(m, 0), y2.get(m, 0)
    if tr:
        a1, a2, b1, b2 = b1, b2, a1, a2
    if rs:
        a1, a2 = a2, a1
    if cs:
        b1, b2 = b2, b1
    if target is _T_ROW or target is _T_THREE:
        a = ((a1, 0), (a2 - b2, b2))
    else:
        a = refine_int(a1, a2, b1, b2, IntRefineMode.DIAG_NONNEG)
    if cs:
        a = ((a[0][1], a[0][0]), (a[1][1], a[1][0]))
    if rs:
        a = (a[1], a[0])
    if tr:
        a = ((a[0][0], a[1][0]), (a[0][1], a[1][1]))
    out = []
    for d, pivot_coeff in zip(u, (a[0][0], a[0][1], a[1][0], a[1][1])):
        if pivot_coeff:
            d = dict(d)
            d[m] = pivot_coeff
        out.append(d)
    return tuple(out)


def refine(prob: RefinementProblem) -> RefinementMatrix:
    """Deterministic refinement matrix with all entries in the cone."""
    p = prob.poset
    z = _refine_rec(p, prob.x1.to_dict(), prob.x2.to_dict(),
                    prob.y1.to_dict(), prob.y2.to_dict())
    return RefinementMatrix(*(GroupElement(p, d) for d in z))


def pivot_pattern(u: Sequence[Sequence[GroupElement]], m: str) -> PivotPattern:
    """Which entries of a 2x2 matrix vanish strictly above element m."""
    host = u[0][0].poset
    quads = []
    for row in (0, 1):
        for col in (0, 1):
            u[0][0]._check_host(u[row][col])
            quads.append(u[row][col].to_dict())
    above = host._strict_up[host.index(m)]
    return PivotPattern(cells=_vanishing_cells(above, quads))


def interpolate(x1: GroupElement, x2: GroupElement,
                y1: GroupElement, y2: GroupElement) -> GroupElement:
    """Some z with x_a <= z <= y_b for all four pairs.

    Refines (y1 - x1) + (y2 - x2) = (y1 - x2) + (y2 - x1) and returns
    x1 plus the (1,2) entry; the four matrix entries are exactly the four
    differences witnessing the output's inequalities.
    """
    x1._check_host(x2)
    x1._check_host(y1)
    x1._check_host(y2)
    for xa in (x1, x2):
        for yb in (y1, y2):
            if not leq(xa, yb):
                raise NotInterpolableError(f"{xa} <= {yb} fails")
    prob = RefinementProblem(x1=y1 - x1, x2=y2 - x2, y1=y1 - x2, y2=y2 - x1)
    matrix = refine(prob)
    return x1 + matrix.z12
