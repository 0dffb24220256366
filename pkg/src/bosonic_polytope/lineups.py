"""Lineups: the r energetically lowest configurations of a one-particle Hamiltonian.

A lineup ``i_1 -> i_2 -> ... -> i_r`` is realizable when some strictly
increasing orbital energies ``h`` give

    E(i_1) < E(i_2) < ... < E(i_r) < E(c)   for every other configuration c.

Every prefix of a lineup is then down-closed in the dominance order and each
step is a minimal element of what remains, but the converse fails from
r = 5 on (the order admits 10 such sequences there, only 8 are realized).
The enumeration therefore walks the order-ideal tree and keeps a branch only
if an exact linear feasibility problem in the orbital gaps
``x_k = h_{k+1} - h_k > 0`` has a solution. Energies are homogeneous in the
gaps, so the strict system is feasible iff the one with unit margins is.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .configs import Configuration, lower_covers, upper_covers
from .errors import DomainError
from .exact_lp import solve_lp

__all__ = [
    "Lineup",
    "check_lineup_bounds",
    "count_lineups",
    "enumerate_lineups",
    "lift_lineup",
    "realizing_gaps",
]


@dataclass(frozen=True, order=True)
class Lineup:
    """Ordered sequence of configurations; ``gaps`` is an exact witness.

    ``gaps[k]`` is ``h_{k+2} - h_{k+1}`` for orbital energies that realize the
    lineup. Orbitals beyond ``len(gaps) + 1`` get unit gaps.
    """

    sequence: tuple[Configuration, ...]
    gaps: tuple[Fraction, ...] = field(default=(), compare=False)

    @property
    def r(self) -> int:
        return len(self.sequence)

    @property
    def N(self) -> int:
        return self.sequence[0].N

    @property
    def d(self) -> int:
        return self.sequence[0].d

    def energies(self) -> tuple[Fraction, ...]:
        """Orbital energies h_1 = 0 < h_2 < ... < h_d realizing this lineup."""
        h = [Fraction(0)]
        for k in range(self.d - 1):
            h.append(h[-1] + (self.gaps[k] if k < len(self.gaps) else 1))
        return tuple(h)

    def to_json(self) -> list[list[int]]:
        return [c.to_json() for c in self.sequence]

    def __str__(self) -> str:
        return " -> ".join(str(c) for c in self.sequence)


def check_lineup_bounds(N: int, d: int, r: int) -> None:
    if r < 1:
        raise DomainError(f"lineup length must be positive, got r={r}")
    if N < 1 or d < 1:
        raise DomainError(f"need N >= 1 and d >= 1, got N={N}, d={d}")
    if N < r - 1 or d < r:
        raise DomainError(f"need N >= r-1 and d >= r, got N={N}, d={d}, r={r}")


def _energy_coeffs(c: Configuration, K: int) -> tuple[int, ...]:
    # E(c) - E(ground) = sum_k x_k * #{m : i_m > k}
    return tuple(sum(1 for i in c.indices if i > k) for k in range(1, K + 1))


class _Walker:
    """Depth-first search over realizable prefixes."""

    def __init__(self, N: int, d: int, r: int):
        self.N, self.d, self.r = N, d, r
        self.K = min(d, r + 1) - 1
        self._coeffs: dict[Configuration, tuple[int, ...]] = {}

    def coeffs(self, c: Configuration) -> tuple[int, ...]:
        e = self._coeffs.get(c)
        if e is None:
            e = self._coeffs[c] = _energy_coeffs(c, self.K)
        return e

    def _row(self, lo: Configuration, hi: Configuration):
        # E(hi) - E(lo) >= 1 with x = 1 + y, y >= 0
        diff = [b - a for a, b in zip(self.coeffs(lo), self.coeffs(hi))]
        return [-v for v in diff], sum(diff) - 1

    def realize(self, prefix: Sequence[Configuration], frontier) -> Optional[tuple[Fraction, ...]]:
        rows, rhs = [], []
        for a, b in zip(prefix, prefix[1:]):
            row, b_ = self._row(a, b)
            rows.append(row)
            rhs.append(b_)
        last = prefix[-1]
        for f in sorted(frontier):
            row, b_ = self._row(last, f)
            rows.append(row)
            rhs.append(b_)
        if self.K == 0:
            return () if not rows else None
        if not rows:
            return (Fraction(1),) * self.K
        res = solve_lp([0] * self.K, rows, rhs)
        if not res.feasible:
            return None
        return tuple(1 + y for y in res.x)

    def strictly_lowest(self, gaps, candidates) -> Optional[Configuration]:
        energies = {c: sum(g * e for g, e in zip(gaps, self.coeffs(c))) for c in candidates}
        low = min(energies.values())
        winners = [c for c, e in energies.items() if e == low]
        return winners[0] if len(winners) == 1 else None

    def walk(self) -> Iterator[Lineup]:
        ground = Configuration.ground(self.N, self.d)
        start_frontier = frozenset(self._new_minimal(ground, {ground}))
        yield from self._walk([ground], {ground}, start_frontier, (Fraction(1),) * self.K)

    def _new_minimal(self, c, ideal):
        return [u for u in upper_covers(c) if all(lc in ideal for lc in lower_covers(u))]

    def _walk(self, prefix, ideal, frontier, gaps):
        if len(prefix) == self.r:
            yield Lineup(tuple(prefix), gaps)
            return
        free_child = self.strictly_lowest(gaps, frontier) if gaps is not None else None
        for c in sorted(frontier):
            ideal.add(c)
            child_frontier = (frontier - {c}) | frozenset(self._new_minimal(c, ideal))
            prefix.append(c)
            if c == free_child:
                child_gaps = gaps
            else:
                child_gaps = self.realize(prefix, child_frontier)
            if child_gaps is not None:
                yield from self._walk(prefix, ideal, child_frontier, child_gaps)
            prefix.pop()
            ideal.discard(c)


def enumerate_lineups(N: int, d: int, r: int) -> list[Lineup]:
    """All realizable lineups of length ``r``, in lexicographic order."""
    check_lineup_bounds(N, d, r)
    return list(_Walker(N, d, r).walk())


def count_lineups(N: int, d: int, r: int) -> int:
    check_lineup_bounds(N, d, r)
    return sum(1 for _ in _Walker(N, d, r).walk())


def realizing_gaps(sequence: Sequence[Configuration]) -> Optional[tuple[Fraction, ...]]:
    """Exact positive orbital gaps making ``sequence`` the lowest configurations.

    Returns ``None`` when no strictly increasing energies realize it.
    """
    sequence = list(sequence)
    c0 = sequence[0]
    r = len(sequence)
    walker = _Walker(c0.N, c0.d, r)
    ground = Configuration.ground(c0.N, c0.d)
    if sequence[0] != ground:
        return None
    ideal = {ground}
    frontier = set(walker._new_minimal(ground, ideal))
    for c in sequence[1:]:
        if c not in frontier:
            return None
        ideal.add(c)
        frontier.discard(c)
        frontier.update(walker._new_minimal(c, ideal))
    return walker.realize(sequence, frontier)


def lift_lineup(lineup: Lineup, N_new: int) -> Lineup:
    """Add ``N_new - N`` bosons to orbital 1 of every configuration."""
    extra = N_new - lineup.N
    if extra < 0:
        raise DomainError("cannot remove particles from a lineup")
    seq = tuple(Configuration((1,) * extra + c.indices, c.d) for c in lineup.sequence)
    return Lineup(seq, lineup.gaps)
