"""Double description method in exact integer arithmetic.

``extreme_rays`` converts a pointed polyhedral cone ``{x : A x >= 0}`` into
its extreme rays by inserting one constraint at a time. Adjacency of ray
pairs is decided combinatorially from their sets of tight constraints,
stored as int bitmasks.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

__all__ = ["extreme_rays", "facets_of_down_hull", "primitive"]


def primitive(vec: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for v in vec:
        g = gcd(g, v)
    if g <= 1:
        return tuple(vec)
    return tuple(v // g for v in vec)


def _dot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


def _independent_rows(rows: Sequence[Sequence[int]], n: int) -> list[int]:
    """Greedy choice of row indices forming a basis of the row space."""
    chosen: list[int] = []
    reduced: list[tuple[int, list[Fraction]]] = []  # (pivot col, row)
    for idx, row in enumerate(rows):
        v = [Fraction(x) for x in row]
        for col, prow in reduced:
            if v[col]:
                f = v[col] / prow[col]
                v = [a - f * b for a, b in zip(v, prow)]
        piv = next((j for j, x in enumerate(v) if x), None)
        if piv is not None:
            reduced.append((piv, v))
            chosen.append(idx)
            if len(chosen) == n:
                break
    return chosen


def _inverse_columns(A: list[list[int]]) -> list[list[Fraction]]:
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    for col in range(n):
        p = next(i for i in range(col, n) if M[i][col] != 0)
        M[col], M[p] = M[p], M[col]
        pv = M[col][col]
        M[col] = [x / pv for x in M[col]]
        for i in range(n):
            if i != col and M[i][col] != 0:
                f = M[i][col]
                M[i] = [a - f * b for a, b in zip(M[i], M[col])]
    inv = [row[n:] for row in M]
    return [[inv[i][j] for i in range(n)] for j in range(n)]


def extreme_rays(rows: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Extreme rays of the pointed cone ``{x : row . x >= 0 for all rows}``."""
    rows = [tuple(int(v) for v in r) for r in rows]
    n = len(rows[0])
    init = _independent_rows(rows, n)
    if len(init) < n:
        raise ValueError("cone is not pointed: constraint rows do not span the space")
    cols = _inverse_columns([list(rows[i]) for i in init])
    rays: list[tuple[int, ...]] = []
    zsets: list[int] = []
    init_mask = 0
    for i in init:
        init_mask |= 1 << i
    for j, col in enumerate(cols):
        den = 1
        for x in col:
            den = den * x.denominator // gcd(den, x.denominator)
        rays.append(primitive([int(x * den) for x in col]))
        zsets.append(init_mask & ~(1 << init[j]))

    init_set = set(init)
    for i, row in enumerate(rows):
        if i in init_set:
            continue
        vals = [_dot(row, ray) for ray in rays]
        pos = [k for k, v in enumerate(vals) if v > 0]
        neg = [k for k, v in enumerate(vals) if v < 0]
        bit = 1 << i
        new_rays, new_z = [], []
        for k, v in enumerate(vals):
            if v > 0:
                new_rays.append(rays[k])
                new_z.append(zsets[k])
            elif v == 0:
                new_rays.append(rays[k])
                new_z.append(zsets[k] | bit)
        for p in pos:
            zp = zsets[p]
            for q in neg:
                common = zp & zsets[q]
                if common.bit_count() < n - 2:
                    continue
                adjacent = True
                for k, zk in enumerate(zsets):
                    if k != p and k != q and (zk & common) == common:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                vp, vq = vals[p], vals[q]
                ray = [vp * b - vq * a for a, b in zip(rays[p], rays[q])]
                new_rays.append(primitive(ray))
                new_z.append(common | bit)
        rays, zsets = new_rays, new_z
    return rays


def facets_of_down_hull(points: Sequence[Sequence[Fraction]]) -> list[tuple[tuple[int, ...], Fraction]]:
    """Facets of ``conv(points) - R^m_+`` as pairs ``(a, b)`` meaning ``a . s <= b``.

    Every normal ``a`` is a nonnegative primitive integer vector.
    """
    m = len(points[0])
    rows = []
    for pt in points:
        den = 1
        for x in pt:
            x = Fraction(x)
            den = den * x.denominator // gcd(den, x.denominator)
        # den * (b - a . pt) >= 0
        rows.append([-int(Fraction(x) * den) for x in pt] + [den])
    for k in range(m):
        rows.append([int(j == k) for j in range(m)] + [0])
    out = []
    for ray in extreme_rays(rows):
        a, b = ray[:m], ray[m]
        if all(x == 0 for x in a):
            continue
        out.append((a, Fraction(b)))
    return sorted(out)
