"""Bosonic configurations and their dominance order.

A configuration of N bosons in d orbitals is a nondecreasing tuple of
orbital indices ``(i_1, ..., i_N)`` with ``1 <= i_k <= d``. Configuration
``a`` lies below ``b`` when ``a_k <= b_k`` for every position, which is the
same as ``a`` having lower energy than ``b`` for every increasing set of
orbital energies.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from math import comb
from typing import Iterable, Iterator

from .errors import DimensionError, PreconditionError

__all__ = [
    "Configuration",
    "Order",
    "all_configurations",
    "compare",
    "count_configurations",
    "lower_covers",
    "minimal_successors",
    "occupation_vector",
    "upper_covers",
]


@dataclass(frozen=True, order=True)
class Configuration:
    """Sorted tuple of 1-based orbital indices, with the orbital count ``d``."""

    indices: tuple[int, ...]
    d: int

    def __post_init__(self):
        idx = tuple(int(i) for i in self.indices)
        object.__setattr__(self, "indices", idx)
        if not idx:
            raise ValueError("a configuration needs at least one particle")
        if any(a > b for a, b in zip(idx, idx[1:])):
            raise ValueError(f"indices must be nondecreasing: {idx}")
        if idx[0] < 1 or idx[-1] > self.d:
            raise ValueError(f"indices must lie in [1, {self.d}]: {idx}")

    @property
    def N(self) -> int:
        return len(self.indices)

    @classmethod
    def ground(cls, N: int, d: int) -> "Configuration":
        return cls((1,) * N, d)

    def occupations(self) -> tuple[int, ...]:
        return occupation_vector(self)

    def excitation_count(self) -> int:
        """Number of bosons outside orbital 1."""
        return sum(1 for i in self.indices if i > 1)

    def to_json(self) -> list[int]:
        return list(self.indices)

    def __iter__(self) -> Iterator[int]:
        return iter(self.indices)

    def __len__(self) -> int:
        return len(self.indices)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.indices)) + ")"


class Order(enum.Enum):
    LESS_OR_EQUAL = "LessOrEqual"
    GREATER_OR_EQUAL = "GreaterOrEqual"
    EQUAL = "Equal"
    INCOMPARABLE = "Incomparable"


def occupation_vector(c: Configuration) -> tuple[int, ...]:
    counts = [0] * c.d
    for i in c.indices:
        counts[i - 1] += 1
    return tuple(counts)


def _check_same_setting(a: Configuration, b: Configuration) -> None:
    if a.N != b.N or a.d != b.d:
        raise DimensionError(f"configurations from different settings: (N,d)=({a.N},{a.d}) vs ({b.N},{b.d})")


def compare(a: Configuration, b: Configuration) -> Order:
    _check_same_setting(a, b)
    if a.indices == b.indices:
        return Order.EQUAL
    le = all(x <= y for x, y in zip(a.indices, b.indices))
    if le:
        return Order.LESS_OR_EQUAL
    ge = all(x >= y for x, y in zip(a.indices, b.indices))
    if ge:
        return Order.GREATER_OR_EQUAL
    return Order.INCOMPARABLE


def precedes(a: Configuration, b: Configuration) -> bool:
    """``a <= b`` in the dominance order."""
    return compare(a, b) in (Order.LESS_OR_EQUAL, Order.EQUAL)


def count_configurations(N: int, d: int) -> int:
    return comb(N + d - 1, N)


def all_configurations(N: int, d: int) -> Iterator[Configuration]:
    """All of I_{N,d} in lexicographic order of the index tuples."""
    for idx in itertools.combinations_with_replacement(range(1, d + 1), N):
        yield Configuration(idx, d)


def upper_covers(c: Configuration) -> list[Configuration]:
    """Configurations obtained by moving one boson up by one orbital."""
    idx = c.indices
    out = []
    for k in range(len(idx)):
        if idx[k] < c.d and (k == len(idx) - 1 or idx[k] < idx[k + 1]):
            new = idx[:k] + (idx[k] + 1,) + idx[k + 1 :]
            out.append(Configuration(new, c.d))
    return sorted(out)


def lower_covers(c: Configuration) -> list[Configuration]:
    """Configurations obtained by moving one boson down by one orbital."""
    idx = c.indices
    out = []
    for k in range(len(idx)):
        if idx[k] > 1 and (k == 0 or idx[k - 1] < idx[k]):
            new = idx[:k] + (idx[k] - 1,) + idx[k + 1 :]
            out.append(Configuration(new, c.d))
    return sorted(out)


def minimal_successors(
    ideal: Iterable[Configuration], N: int | None = None, d: int | None = None
) -> set[Configuration]:
    """Minimal elements of ``I_{N,d}`` outside a down-closed set.

    ``N`` and ``d`` are only needed when ``ideal`` is empty.
    """
    ideal = set(ideal)
    if not ideal:
        if N is None or d is None:
            raise PreconditionError("N and d are required for an empty ideal")
        return {Configuration.ground(N, d)}
    settings = {(c.N, c.d) for c in ideal}
    if len(settings) > 1 or (N is not None and (N, d) not in settings):
        raise DimensionError(f"mixed settings in ideal: {sorted(settings)}")
    for c in ideal:
        if any(lc not in ideal for lc in lower_covers(c)):
            raise PreconditionError(f"set is not down-closed at {c}")
    out = set()
    for c in ideal:
        for u in upper_covers(c):
            if u not in ideal and all(lc in ideal for lc in lower_covers(u)):
                out.add(u)
    return out
