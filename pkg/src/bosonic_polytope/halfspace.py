"""Halfspace (exclusion-constraint) descriptions of spectral polytopes.

Constraints act on the decreasingly ordered spectrum ``lam``. Two routes:

* ``analytic_halfspaces`` gives the closed-form minimal systems for r <= 3.
* ``numeric_facets`` works at fixed weights. In partial-sum coordinates
  ``s_k = lam_1 + ... + lam_k`` (k < d) the ordered part of the polytope is
  ``(conv{sigma_l} - R_+) ∩ chamber``, where ``sigma_l`` are the partial sums
  of the sorted vertices. Facets of the first set come from the double
  description method; each is kept only if it is irredundant next to the
  chamber walls, checked with an exact LP. Ordering walls and ``lam_d >= 0``
  are not reported.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from numbers import Rational
from typing import Optional, Sequence

from .dd import facets_of_down_hull
from .errors import DegeneracyError, DomainError, UnsupportedError
from .exact_lp import solve_lp
from .polytope import SUM_TOL, SpectralPolytope, WeightVector, as_exact

__all__ = [
    "Halfspace",
    "HalfspaceSystem",
    "analytic_halfspaces",
    "check_system",
    "numeric_facets",
    "NUMERIC_R_MAX",
]

NUMERIC_R_MAX = 5


@dataclass(frozen=True)
class Halfspace:
    """``coeffs . lam_sorted <= bound`` (``kind="ineq"``) or ``sum(lam) == bound`` (``kind="eq"``)."""

    coeffs: tuple[Fraction, ...]
    bound: Fraction
    kind: str = "ineq"

    def normal(self) -> tuple[Fraction, ...]:
        """Coefficients with trailing zeros removed."""
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        return tuple(c)

    def to_json(self) -> dict:
        return {"coeffs": [str(c) for c in self.coeffs], "bound": str(self.bound), "type": self.kind}

    def __str__(self) -> str:
        if self.kind == "eq":
            return f"sum(lam) = {self.bound}"
        terms = []
        for i, c in enumerate(self.coeffs, 1):
            if c:
                terms.append(f"{'' if c == 1 else c}lam{i}")
        return " + ".join(terms) + f" <= {self.bound}"


@dataclass(frozen=True)
class HalfspaceSystem:
    N: int
    d: int
    rows: tuple[Halfspace, ...]

    @property
    def inequalities(self) -> tuple[Halfspace, ...]:
        return tuple(h for h in self.rows if h.kind == "ineq")

    @property
    def count(self) -> int:
        """Exclusion inequalities plus the normalization line."""
        return len(self.rows)

    def to_json(self) -> list[dict]:
        return [h.to_json() for h in self.rows]


def _normalization(N: int, d: int) -> Halfspace:
    return Halfspace((Fraction(1),) * d, Fraction(N), "eq")


def analytic_halfspaces(N: int, w: WeightVector, d: Optional[int] = None) -> HalfspaceSystem:
    """Closed-form minimal systems for r = 1, 2, 3 non-vanishing weights."""
    r = w.r
    if r > 3:
        raise UnsupportedError(f"analytic constraints only for r <= 3 (got r={r}); use numeric_facets")
    if N < r - 1:
        raise DomainError(f"need N >= r-1, got N={N}, r={r}")
    d = r if d is None else d
    if d < r:
        raise DomainError(f"need d >= r, got d={d}, r={r}")
    wt = w.padded(3)

    def vec(*head):
        return tuple(Fraction(x) for x in head) + (Fraction(0),) * (d - len(head))

    rows = []
    if r >= 2:
        rows.append(Halfspace(vec(1), N - 1 + wt[0]))
    if r >= 3:
        rows.append(Halfspace(vec(2, 1), 2 * (N - 1) + 2 * wt[0] + wt[1]))
    rows.append(_normalization(N, d))
    return HalfspaceSystem(N, d, tuple(rows))


def _chamber(N: int, d: int) -> list[tuple[tuple[Fraction, ...], Fraction]]:
    """Walls lam_i >= lam_{i+1} and lam_d >= 0 in partial-sum coordinates."""
    m = d - 1
    out = []
    for i in range(1, d):
        # lam_i - lam_{i+1} >= 0  ->  -2 s_i + s_{i-1} + s_{i+1} <= 0  (s_0 = 0, s_d = N)
        a = [Fraction(0)] * m
        b = Fraction(0)
        a[i - 1] -= 2
        if i >= 2:
            a[i - 2] += 1
        if i + 1 <= m:
            a[i] += 1
        else:
            b -= N
        out.append((tuple(a), b))
    a = [Fraction(0)] * m
    a[m - 1] = Fraction(1)
    out.append((tuple(a), Fraction(N)))
    return out


def _same_halfspace(a1, b1, a2, b2) -> bool:
    # positive multiples of each other
    ratio = None
    for x, y in zip(tuple(a1) + (b1,), tuple(a2) + (b2,)):
        if (x == 0) != (y == 0):
            return False
        if x == 0:
            continue
        q = Fraction(x) / Fraction(y)
        if q <= 0 or (ratio is not None and q != ratio):
            return False
        ratio = q
    return True


def _to_lambda(a: Sequence[Fraction], b: Fraction, d: int) -> Halfspace:
    # sum_k a_k s_k = sum_i (a_i + ... + a_{d-1}) lam_i
    m = d - 1
    coeffs = [sum(a[i:m], Fraction(0)) for i in range(m)] + [Fraction(0)]
    num_gcd = 0
    lcm_den = 1
    for c in coeffs:
        num_gcd = gcd(num_gcd, c.numerator)
        lcm_den = lcm_den * c.denominator // gcd(lcm_den, c.denominator)
    scale = Fraction(lcm_den, num_gcd or 1)
    return Halfspace(tuple(c * scale for c in coeffs), b * scale)


def numeric_facets(p: SpectralPolytope, allow_large: bool = False) -> HalfspaceSystem:
    """Minimal halfspace system at the polytope's fixed weights.

    Requires strictly decreasing positive weights. ``r`` above
    :data:`NUMERIC_R_MAX` needs ``allow_large=True``.
    """
    r = p.r
    if not p.w.is_generic():
        raise DegeneracyError(f"numeric facets need strictly decreasing weights, got {p.w}")
    if r > NUMERIC_R_MAX and not allow_large:
        raise UnsupportedError(f"r={r} exceeds the numeric cap {NUMERIC_R_MAX}; pass allow_large=True")
    d, N = p.d, p.N
    m = d - 1
    if m == 0:
        return HalfspaceSystem(N, d, (_normalization(N, d),))
    sigmas = p.vertex_partial_sums()
    candidates = facets_of_down_hull(sigmas)
    chamber = _chamber(N, d)
    kept = []
    for a, b in candidates:
        a = tuple(Fraction(x) for x in a)
        if any(_same_halfspace(a, b, ca, cb) for ca, cb in chamber):
            continue
        kept.append((a, b))
    facets = []
    for i, (a, b) in enumerate(kept):
        others = [kept[j] for j in range(len(kept)) if j != i] + chamber
        A_ub = [list(x) for x, _ in others] + [list(a)]
        b_ub = [y for _, y in others] + [b + 1]
        res = solve_lp(list(a), A_ub, b_ub)
        if res.status == "optimal" and res.objective > b:
            facets.append(_to_lambda(a, b, d))
    facets = _order_by_support(facets)
    return HalfspaceSystem(N, d, tuple(facets) + (_normalization(N, d),))


def _order_by_support(facets: list[Halfspace]) -> list[Halfspace]:
    # shorter normals first, then lexicographic
    return sorted(facets, key=lambda h: (len(h.normal()), tuple(-c for c in h.normal()), h.bound))


def _sorted_exact(lam) -> tuple[Fraction, ...]:
    return tuple(sorted(as_exact(lam), reverse=True))


def check_system(system: HalfspaceSystem, lam, tol: float = 0.0) -> bool:
    """Does the decreasingly sorted ``lam`` satisfy every row?

    Inequalities are evaluated exactly on the rationalized spectrum, with
    ``tol`` as an additive allowance. Coefficient vectors and the spectrum
    are zero-padded to a common length.
    """
    lam = list(lam)
    exact_input = all(isinstance(v, Rational) for v in lam)
    srt = _sorted_exact(lam)
    slack = Fraction(tol).limit_denominator(10**15) if tol else Fraction(0)
    for h in system.rows:
        if h.kind == "eq":
            total = sum(srt, Fraction(0))
            if exact_input and tol == 0:
                if total != h.bound:
                    return False
            elif abs(float(total - h.bound)) > max(SUM_TOL, tol):
                return False
            continue
        n = max(len(h.coeffs), len(srt))
        coeffs = tuple(h.coeffs) + (Fraction(0),) * (n - len(h.coeffs))
        vals = srt + (Fraction(0),) * (n - len(srt))
        if sum((c * v for c, v in zip(coeffs, vals)), Fraction(0)) > h.bound + slack:
            return False
    return True
