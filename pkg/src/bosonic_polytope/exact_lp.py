"""Exact rational linear programming.

A two-phase primal simplex on an integer tableau. Every row is kept as a
list of Python ints sharing a single positive denominator, and pivots use
fraction-free (Edmonds/Bareiss) updates, so all divisions are exact and no
``Fraction`` objects appear in the inner loop. Bland's rule is used for both
the entering and the leaving variable, which rules out cycling.

Problems are stated as::

    maximize    c . x
    subject to  A_ub x <= b_ub
                A_eq x == b_eq
                x >= 0

with rational (``int`` / ``Fraction``) data.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

__all__ = ["LPResult", "solve_lp", "is_feasible"]

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    x: Optional[tuple[Fraction, ...]] = None
    objective: Optional[Fraction] = None

    @property
    def feasible(self) -> bool:
        return self.status != INFEASIBLE


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def _integer_row(values: Sequence) -> tuple[list[int], int]:
    """Scale a rational row to integers; returns (row, scale)."""
    scale = 1
    for v in values:
        if isinstance(v, Fraction):
            scale = _lcm(scale, v.denominator)
        elif not isinstance(v, int):
            raise TypeError(f"exact LP data must be int or Fraction, got {type(v).__name__}")
    return [int(v * scale) for v in values], scale


def _pivot(rows: list[list[int]], p: int, q: int, det: int) -> int:
    piv = rows[p][q]
    prow = rows[p]
    for i, row in enumerate(rows):
        if i == p:
            continue
        f = row[q]
        if f == 0:
            for j in range(len(row)):
                if row[j]:
                    row[j] = row[j] * piv // det
        else:
            for j in range(len(row)):
                row[j] = (row[j] * piv - f * prow[j]) // det
    return piv


def _simplex(rows, obj, basis, det, allowed, nvars):
    """Run Bland-rule simplex in place. ``obj`` holds det * reduced costs."""
    while True:
        q = -1
        for j in range(nvars):
            if allowed[j] and obj[j] < 0:
                q = j
                break
        if q < 0:
            return det, OPTIMAL
        p = -1
        for i, row in enumerate(rows):
            a = row[q]
            if a > 0:
                if p < 0:
                    p = i
                    continue
                # compare row[-1]/a against rows[p][-1]/rows[p][q]
                lhs = row[-1] * rows[p][q]
                rhs = rows[p][-1] * a
                if lhs < rhs or (lhs == rhs and basis[i] < basis[p]):
                    p = i
        if p < 0:
            return det, UNBOUNDED
        rows.append(obj)
        det = _pivot(rows, p, q, det)
        rows.pop()
        basis[p] = q


def solve_lp(
    c: Sequence,
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
) -> LPResult:
    """Solve ``max c.x`` over the polyhedron above, exactly.

    Returns an :class:`LPResult` whose ``x`` and ``objective`` are
    ``Fraction`` values when the status is optimal.
    """
    n = len(c)
    m_ub, m_eq = len(A_ub), len(A_eq)
    if len(b_ub) != m_ub or len(b_eq) != m_eq:
        raise ValueError("constraint matrix and right-hand side lengths differ")
    m = m_ub + m_eq

    # columns: structural [0, n), slacks [n, n + m_ub), artificials after
    n_slack = m_ub
    rows: list[list[int]] = []
    needs_art: list[bool] = []
    for i in range(m):
        if i < m_ub:
            coeffs, rhs = list(A_ub[i]), b_ub[i]
        else:
            coeffs, rhs = list(A_eq[i - m_ub]), b_eq[i - m_ub]
        if len(coeffs) != n:
            raise ValueError("constraint row has wrong length")
        ints, _ = _integer_row(coeffs + [rhs])
        slack = [0] * n_slack
        if i < m_ub:
            slack[i] = 1
        sign = -1 if ints[-1] < 0 else 1
        if sign < 0:
            ints = [-v for v in ints]
            slack = [-v for v in slack]
        rows.append(ints[:-1] + slack + [ints[-1]])
        needs_art.append(i >= m_ub or sign < 0)

    art_rows = [i for i in range(m) if needs_art[i]]
    n_art = len(art_rows)
    nvars = n + n_slack + n_art
    basis = [0] * m
    for k, i in enumerate(art_rows):
        for r, row in enumerate(rows):
            row.insert(len(row) - 1, 1 if r == i else 0)
        basis[i] = n + n_slack + k
    for i in range(m):
        if not needs_art[i]:
            basis[i] = n + i

    det = 1
    allowed = [True] * nvars
    if n_art:
        # phase I: maximize -sum(artificials)
        obj = [0] * (nvars + 1)
        for i in art_rows:
            row = rows[i]
            for j in range(nvars + 1):
                obj[j] -= row[j]
        for k in range(n_art):
            obj[n + n_slack + k] = 0
        det, status = _simplex(rows, obj, basis, det, allowed, nvars)
        if obj[-1] != 0:
            return LPResult(INFEASIBLE)
        # drive zero-level artificials out of the basis where possible
        for i in range(m):
            if basis[i] >= n + n_slack:
                for j in range(n + n_slack):
                    if rows[i][j] != 0:
                        rows.append(obj)
                        det = _pivot(rows, i, j, det) if rows[i][j] > 0 else _neg_pivot(rows, i, j, det)
                        rows.pop()
                        basis[i] = j
                        break
        for k in range(n_art):
            allowed[n + n_slack + k] = False

    cints, cscale = _integer_row(list(c))
    obj = [0] * (nvars + 1)
    for j in range(n):
        obj[j] = -cints[j] * det
    for i in range(m):
        cb = cints[basis[i]] if basis[i] < n else 0
        if cb:
            row = rows[i]
            for j in range(nvars + 1):
                obj[j] += cb * row[j]
    det, status = _simplex(rows, obj, basis, det, allowed, nvars)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED)
    x = [Fraction(0)] * n
    for i in range(m):
        if basis[i] < n:
            x[basis[i]] = Fraction(rows[i][-1], det)
    return LPResult(OPTIMAL, tuple(x), Fraction(obj[-1], det * cscale))


def _neg_pivot(rows, p, q, det):
    # pivot on a negative entry of a zero-rhs row: flip the row sign first
    rows[p][:] = [-v for v in rows[p]]
    return _pivot(rows, p, q, det)


def is_feasible(A_ub=(), b_ub=(), A_eq=(), b_eq=(), nvars: Optional[int] = None) -> bool:
    """Exact feasibility of ``A_ub x <= b_ub, A_eq x == b_eq, x >= 0``."""
    if nvars is None:
        nvars = len(A_ub[0]) if len(A_ub) else len(A_eq[0])
    return solve_lp([0] * nvars, A_ub, b_ub, A_eq, b_eq).feasible
