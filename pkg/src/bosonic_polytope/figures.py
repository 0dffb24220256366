"""Plot-ready data for d = 3 polytopes in the (lam_1, lam_2) plane.

The third occupation number is dropped (it is fixed by normalization).
All geometry is exact; floats appear only in the emitted rows.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Sequence

from .dd import facets_of_down_hull
from .errors import DimensionError
from .halfspace import _chamber
from .polytope import SpectralPolytope

__all__ = ["convex_hull_2d", "minkowski_loops", "sigma_segments"]

Point = tuple[Fraction, Fraction]


def _cross(o: Point, a: Point, b: Point) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull_2d(points: Sequence[Point]) -> list[Point]:
    """Counter-clockwise hull (monotone chain), collinear points dropped."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _require_d3(p: SpectralPolytope) -> None:
    if p.d != 3:
        raise DimensionError(f"plane figures need d = 3, got d = {p.d}")


def _full_loop(p: SpectralPolytope) -> list[Point]:
    pts = set()
    for v in p.vertices:
        for perm in itertools.permutations(v.coords):
            pts.add((perm[0], perm[1]))
    return convex_hull_2d(list(pts))


def sigma_segments(p: SpectralPolytope) -> list[dict]:
    """Boundary segments of the ordered polytope, of the full polytope, and of the ordered chamber.

    Each row has ``set`` in {"sigma_sorted", "sigma", "delta"}, a ``kind``
    for ordered-polytope edges ("exclusion", "ordering", "positivity"), and
    the two endpoints.
    """
    _require_d3(p)
    N = p.N
    # constraints a . s <= b in partial sums (s1, s2); lam1 = s1, lam2 = s2 - s1
    exclusion = [(tuple(Fraction(x) for x in a), b) for a, b in facets_of_down_hull(p.vertex_partial_sums())]
    chamber = _chamber(N, 3)
    kinds = ["exclusion"] * len(exclusion) + ["ordering", "ordering", "positivity"]
    cons = exclusion + chamber
    verts = []
    for (a1, b1), (a2, b2) in itertools.combinations(cons, 2):
        det = a1[0] * a2[1] - a1[1] * a2[0]
        if det == 0:
            continue
        s1 = (b1 * a2[1] - b2 * a1[1]) / det
        s2 = (a1[0] * b2 - a2[0] * b1) / det
        if all(a[0] * s1 + a[1] * s2 <= b for a, b in cons):
            verts.append((s1, s2 - s1))
    loop = convex_hull_2d(verts)
    rows = []

    def on(cons_ab, pt):
        a, b = cons_ab
        s1, s2 = pt[0], pt[0] + pt[1]
        return a[0] * s1 + a[1] * s2 == b

    for i, (x, y) in enumerate(zip(loop, loop[1:] + loop[:1])):
        kind = "exclusion"
        for c, k in zip(cons, kinds):
            if on(c, x) and on(c, y):
                kind = k
                if k != "exclusion":
                    break
        rows.append({"set": "sigma_sorted", "segment": i, "kind": kind, "start": x, "end": y})
    full = _full_loop(p)
    for i, (x, y) in enumerate(zip(full, full[1:] + full[:1])):
        rows.append({"set": "sigma", "segment": i, "kind": "", "start": x, "end": y})
    delta = [(Fraction(N), Fraction(0)), (Fraction(N, 2), Fraction(N, 2)), (Fraction(N, 3), Fraction(N, 3))]
    for i, (x, y) in enumerate(zip(delta, delta[1:] + delta[:1])):
        rows.append({"set": "delta", "segment": i, "kind": "", "start": x, "end": y})
    return rows


def minkowski_loops(small: SpectralPolytope, large: SpectralPolytope) -> list[dict]:
    """Vertex loops of the small polytope, the scaled simplex, and the large polytope."""
    _require_d3(small)
    _require_d3(large)
    delta = large.N - small.N
    simplex = convex_hull_2d([(Fraction(delta), Fraction(0)), (Fraction(0), Fraction(delta)), (Fraction(0), Fraction(0))])
    rows = []
    for name, loop in ((f"sigma_{small.N}", _full_loop(small)), ("simplex_C", simplex), (f"sigma_{large.N}", _full_loop(large))):
        for i, pt in enumerate(loop):
            rows.append({"set": name, "index": i, "point": pt})
    return rows
