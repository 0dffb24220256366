"""Spectral polytopes of bosonic w-ensembles.

Each lineup ``i_1 -> ... -> i_r`` of the r lowest configurations gives the
occupation vector ``v = sum_j w_j n(i_j)``. The spectral polytope is the
convex hull of all coordinate permutations of these vectors. Membership is
decided through the generalized Rado theorem: with every vertex sorted
decreasingly, ``lam`` is a member iff some convex combination ``u`` of the
sorted vertices majorizes it. Because all sorted vertices share the same
(decreasing) order, partial sums of ``u`` are linear in the mixing weights
and the test is one exact LP.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational, Real
from typing import Iterable, Optional, Sequence

from .errors import DimensionError, DomainError, NormalizationError, PolytopeError
from .exact_lp import solve_lp
from .lineups import Lineup, check_lineup_bounds, enumerate_lineups, lift_lineup

__all__ = [
    "DEFAULT_MAX_DENOMINATOR",
    "BOUNDARY_TOL",
    "MembershipResult",
    "SpectralPolytope",
    "Vertex",
    "WeightVector",
    "as_exact",
    "batch_contains",
    "build_vertices",
    "contains",
    "domain_inclusion",
    "generic_weights",
    "in_minkowski_sum",
    "in_permutation_hull",
    "majorizes",
    "membership",
    "minkowski_lift",
    "parse_number",
    "partial_sums",
]

DEFAULT_MAX_DENOMINATOR = 10**12
SUM_TOL = 1e-9
BOUNDARY_TOL = Fraction(1, 10**10)


def parse_number(value) -> Fraction:
    """Exact value of an int, Fraction, decimal/rational string, or float.

    Strings such as ``"1/3"`` and ``"0.35"`` are read exactly; floats are
    rationalized with :data:`DEFAULT_MAX_DENOMINATOR`.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, Real):
        return Fraction(float(value)).limit_denominator(DEFAULT_MAX_DENOMINATOR)
    raise TypeError(f"cannot read {value!r} as a number")


def as_exact(values: Iterable, max_denominator: int = DEFAULT_MAX_DENOMINATOR) -> tuple[Fraction, ...]:
    out = []
    for v in values:
        if isinstance(v, (str, int, Fraction)) or isinstance(v, Rational):
            out.append(parse_number(v))
        else:
            out.append(Fraction(float(v)).limit_denominator(max_denominator))
    return tuple(out)


def _is_exact(values) -> bool:
    return all(isinstance(v, Rational) for v in values)


@dataclass(frozen=True)
class WeightVector:
    """Decreasing, normalized ensemble weights; trailing zeros are allowed."""

    weights: tuple[Fraction, ...]

    def __post_init__(self):
        w = tuple(parse_number(x) for x in self.weights)
        object.__setattr__(self, "weights", w)
        if not w:
            raise ValueError("empty weight vector")
        if any(x < 0 for x in w):
            raise ValueError(f"weights must be nonnegative: {self}")
        if any(a < b for a, b in zip(w, w[1:])):
            raise ValueError(f"weights must be decreasing: {self}")
        if sum(w) != 1:
            raise NormalizationError(f"weights must sum to 1, got {sum(w)}")

    @classmethod
    def parse(cls, text: str | Sequence, normalize: bool = False) -> "WeightVector":
        """Read ``"0.5,0.3,0.2"`` or ``["1/2", "1/3", "1/6"]``."""
        items = text.split(",") if isinstance(text, str) else list(text)
        w = [parse_number(x) for x in items if not (isinstance(x, str) and not x.strip())]
        total = sum(w)
        if normalize and total != 1 and total > 0:
            w = [x / total for x in w]
        return cls(tuple(w))

    @property
    def r(self) -> int:
        return sum(1 for x in self.weights if x != 0)

    @property
    def nonzero(self) -> tuple[Fraction, ...]:
        return self.weights[: self.r]

    def is_generic(self) -> bool:
        """Strictly decreasing positive leading weights."""
        nz = self.nonzero
        return all(a > b for a, b in zip(nz, nz[1:]))

    def padded(self, length: int) -> tuple[Fraction, ...]:
        if length < self.r:
            raise DimensionError(f"cannot fit {self.r} nonzero weights into {length} slots")
        w = self.nonzero
        return w + (Fraction(0),) * (length - len(w))

    def to_json(self) -> list[str]:
        return [str(x) for x in self.nonzero]

    def __str__(self) -> str:
        return "(" + ", ".join(str(x) for x in self.nonzero) + ")"


def generic_weights(r: int) -> WeightVector:
    """w_j proportional to 2**(r - j)."""
    total = 2**r - 1
    return WeightVector(tuple(Fraction(2 ** (r - j), total) for j in range(1, r + 1)))


def partial_sums(values: Sequence) -> list:
    """Partial sums of the decreasing rearrangement."""
    out, acc = [], 0
    for v in sorted(values, reverse=True):
        acc += v
        out.append(acc)
    return out


def majorizes(a: Sequence, b: Sequence, tol: float = 0.0) -> bool:
    """True iff ``b`` is majorized by ``a`` (``b ≺ a``).

    Exact for int/Fraction input; float input is compared with ``tol``.
    """
    if len(a) != len(b):
        raise DimensionError(f"length mismatch: {len(a)} vs {len(b)}")
    sa, sb = partial_sums(a), partial_sums(b)
    if _is_exact(a) and _is_exact(b) and tol == 0:
        if sa[-1] != sb[-1]:
            raise NormalizationError(f"totals differ: {sa[-1]} vs {sb[-1]}")
        return all(x <= y for x, y in zip(sb, sa))
    scale = max(1.0, abs(float(sa[-1])))
    if abs(float(sa[-1]) - float(sb[-1])) > max(tol, SUM_TOL) * scale:
        raise NormalizationError(f"totals differ: {float(sa[-1])} vs {float(sb[-1])}")
    return all(float(x) <= float(y) + tol for x, y in zip(sb[:-1], sa[:-1]))


@dataclass(frozen=True)
class Vertex:
    coords: tuple[Fraction, ...]
    lineup_id: int

    @property
    def sorted(self) -> tuple[Fraction, ...]:
        return tuple(sorted(self.coords, reverse=True))

    def to_json(self) -> list[str]:
        return [str(x) for x in self.coords]


@dataclass(frozen=True)
class MembershipResult:
    member: bool
    boundary: bool
    slack: Fraction

    def to_json(self) -> dict:
        return {"member": self.member, "boundary": self.boundary}


@dataclass(frozen=True)
class SpectralPolytope:
    """Vertex representation: one vertex per distinct lineup vector."""

    N: int
    d: int
    w: WeightVector
    vertices: tuple[Vertex, ...]
    lineups: tuple[Lineup, ...] = field(repr=False)

    @property
    def r(self) -> int:
        return self.w.r

    def sorted_vertices(self) -> list[tuple[Fraction, ...]]:
        return [v.sorted for v in self.vertices]

    def vertex_partial_sums(self) -> list[list[Fraction]]:
        """Partial sums k = 1..d-1 of every sorted vertex."""
        return [partial_sums(v.coords)[:-1] for v in self.vertices]

    def contains(self, lam) -> bool:
        return contains(self, lam)

    def membership(self, lam) -> MembershipResult:
        return membership(self, lam)


def _occupation(c, d: int) -> list[int]:
    counts = [0] * d
    for i in c.indices:
        counts[i - 1] += 1
    return counts


def vertex_of_lineup(lineup: Lineup, w: WeightVector, d: int) -> tuple[Fraction, ...]:
    coords = [Fraction(0)] * d
    for wj, c in zip(w.nonzero, lineup.sequence):
        for k, n in enumerate(_occupation(c, d)):
            if n:
                coords[k] += wj * n
    return tuple(coords)


def build_vertices(N: int, d: int, w: WeightVector, lineups: Optional[Sequence[Lineup]] = None) -> SpectralPolytope:
    """Exact vertices of the spectral polytope for N bosons in d orbitals."""
    if not isinstance(w, WeightVector):
        w = WeightVector.parse(w)
    r = w.r
    check_lineup_bounds(N, d, r)
    if lineups is None:
        lineups = enumerate_lineups(N, d, r)
    seen = set()
    vertices = []
    for lid, lu in enumerate(lineups):
        coords = vertex_of_lineup(lu, w, d)
        key = tuple(sorted(coords, reverse=True))
        if key in seen:
            continue
        seen.add(key)
        vertices.append(Vertex(coords, lid))
    return SpectralPolytope(N, d, w, tuple(vertices), tuple(lineups))


def _spectrum(p: SpectralPolytope, lam) -> tuple[Fraction, ...]:
    lam = [parse_number(x) if isinstance(x, str) else x for x in lam]
    if len(lam) != p.d:
        raise NormalizationError(f"spectrum has {len(lam)} entries, polytope dimension is {p.d}")
    if _is_exact(lam):
        if sum(lam) != p.N:
            raise NormalizationError(f"spectrum sums to {sum(lam)}, expected {p.N}")
        return tuple(parse_number(x) for x in lam)
    total = sum(float(x) for x in lam)
    if abs(total - p.N) > SUM_TOL:
        raise NormalizationError(f"spectrum sums to {total}, expected {p.N}")
    return as_exact(lam)


def membership(p: SpectralPolytope, lam) -> MembershipResult:
    """Decide ``lam`` in the polytope and report the exact margin.

    ``slack`` is the largest ``t`` such that the partial sums of ``lam``
    plus ``t`` stay below those of some convex combination of sorted
    vertices; members have ``slack >= 0``. Only partial sums k < d enter,
    the total is taken to be N.
    """
    exact = _spectrum(p, lam)
    if p.d == 1:
        return MembershipResult(True, True, Fraction(0))
    s = partial_sums(exact)[:-1]
    sigmas = p.vertex_partial_sums()
    if len(sigmas) == 1:
        slack = min(sg - sk for sg, sk in zip(sigmas[0], s))
    else:
        R = len(sigmas)
        # variables: p_1..p_R, t+, t-
        A_ub, b_ub = [], []
        for k in range(p.d - 1):
            A_ub.append([-sig[k] for sig in sigmas] + [1, -1])
            b_ub.append(-s[k])
        res = solve_lp([0] * R + [1, -1], A_ub, b_ub, [[1] * R + [0, 0]], [1])
        if res.status != "optimal":  # pragma: no cover - bounded by construction
            raise PolytopeError(f"membership LP ended with status {res.status}")
        slack = res.objective
    return MembershipResult(slack >= 0, abs(slack) < BOUNDARY_TOL, slack)


def contains(p: SpectralPolytope, lam) -> bool:
    return membership(p, lam).member


def _contains_worker(args):
    p, lam = args
    return membership(p, lam)


def _worker_count(workers: Optional[int]) -> int:
    if workers is None:
        workers = int(os.environ.get("BOSONIC_POLYTOPE_THREADS", "1") or 1)
    return max(1, workers)


def batch_contains(p: SpectralPolytope, spectra: Sequence, workers: Optional[int] = None) -> list[MembershipResult]:
    """Membership for many spectra; results are in input order."""
    n = _worker_count(workers)
    if n == 1 or len(spectra) < 2:
        return [membership(p, lam) for lam in spectra]
    with ProcessPoolExecutor(max_workers=n) as pool:
        return list(pool.map(_contains_worker, [(p, lam) for lam in spectra], chunksize=64))


def minkowski_lift(p: SpectralPolytope, N_new: int) -> SpectralPolytope:
    """Vertices for ``N_new`` bosons: every vertex shifted by ``(N_new - N) e_1``."""
    delta = N_new - p.N
    if delta <= 0:
        raise DomainError(f"need N' > N, got N={p.N}, N'={N_new}")
    verts = tuple(Vertex((v.coords[0] + delta,) + v.coords[1:], v.lineup_id) for v in p.vertices)
    lineups = tuple(lift_lineup(lu, N_new) for lu in p.lineups)
    return SpectralPolytope(N_new, p.d, p.w, verts, lineups)


def _distinct_permutations(v: Sequence) -> set[tuple]:
    return set(itertools.permutations(v))


def in_permutation_hull(points: Iterable[Sequence], lam: Sequence) -> bool:
    """Brute force: is ``lam`` a convex combination of all permuted points?"""
    cloud = set()
    for v in points:
        cloud |= _distinct_permutations(tuple(v))
    cloud = sorted(cloud)
    d = len(lam)
    A_eq = [[pt[k] for pt in cloud] for k in range(d)] + [[1] * len(cloud)]
    b_eq = list(as_exact(lam)) + [1]
    return solve_lp([0] * len(cloud), (), (), A_eq, b_eq).feasible


def in_minkowski_sum(p: SpectralPolytope, delta: int, mu: Sequence) -> bool:
    """Is ``mu = lam + c`` with ``lam`` in ``p`` and ``c`` in the simplex of size ``delta``?

    Decided by one exact LP over explicit permutations of the vertices and
    the scaled unit vectors, independent of the majorization route.
    """
    cloud = set()
    for v in p.vertices:
        cloud |= _distinct_permutations(v.coords)
    cloud = sorted(cloud)
    d = p.d
    nq = len(cloud)
    A_eq = []
    for k in range(d):
        A_eq.append([pt[k] for pt in cloud] + [delta if i == k else 0 for i in range(d)])
    A_eq.append([1] * nq + [0] * d)
    A_eq.append([0] * nq + [1] * d)
    b_eq = list(as_exact(mu)) + [1, 1]
    return solve_lp([0] * (nq + d), (), (), A_eq, b_eq).feasible


def domain_inclusion(w1: WeightVector, w2: WeightVector, N: int, d: int) -> bool:
    """``w1 ≺ w2``; when it holds, every vertex of Σ(w1) is checked to lie in Σ(w2)."""
    length = max(len(w1.weights), len(w2.weights))
    a, b = list(w1.weights) + [0] * (length - len(w1.weights)), list(w2.weights) + [0] * (length - len(w2.weights))
    if not majorizes(b, a):
        return False
    small, large = build_vertices(N, d, w1), build_vertices(N, d, w2)
    for v in small.vertices:
        if not contains(large, v.coords):
            raise PolytopeError(f"vertex {v.coords} of Σ({w1}) lies outside Σ({w2})")
    return True
