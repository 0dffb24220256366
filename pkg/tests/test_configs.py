import itertools
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bosonic_polytope import (
    Configuration,
    DimensionError,
    Order,
    PreconditionError,
    all_configurations,
    compare,
    count_configurations,
    lower_covers,
    minimal_successors,
    occupation_vector,
    precedes,
    upper_covers,
)


def C(*idx, d=3):
    return Configuration(idx, d)


class TestConfiguration:
    def test_valid(self):
        c = C(1, 1, 2)
        assert c.N == 3 and c.d == 3
        assert str(c) == "(1,1,2)"
        assert c.to_json() == [1, 1, 2]

    @pytest.mark.parametrize("idx,d", [((2, 1), 3), ((0, 1), 3), ((1, 4), 3), ((), 3)])
    def test_invalid(self, idx, d):
        with pytest.raises(ValueError):
            Configuration(idx, d)

    def test_excitations(self):
        assert C(1, 1, 1).excitation_count() == 0
        assert C(1, 2, 3).excitation_count() == 2


class TestOccupation:
    def test_examples(self):
        assert occupation_vector(C(1, 1, 1)) == (3, 0, 0)
        assert occupation_vector(C(1, 2, 3)) == (1, 1, 1)
        assert occupation_vector(C(1, 1, 2, d=4)) == (2, 1, 0, 0)

    @pytest.mark.parametrize("N,d", [(1, 1), (2, 3), (3, 4), (4, 4), (5, 3)])
    def test_injective_and_sums(self, N, d):
        occs = [occupation_vector(c) for c in all_configurations(N, d)]
        assert len(set(occs)) == len(occs)
        for c, o in zip(all_configurations(N, d), occs):
            assert sum(o) == N
            assert all(o[k] == c.indices.count(k + 1) for k in range(d))


@pytest.mark.parametrize("N,d", [(1, 1), (1, 5), (2, 2), (3, 3), (4, 4), (3, 6)])
def test_cardinality(N, d):
    confs = list(all_configurations(N, d))
    assert len(confs) == comb(N + d - 1, N) == count_configurations(N, d)
    assert confs == sorted(confs)


class TestCompare:
    def test_examples(self):
        assert compare(C(1, 1, 2), C(1, 1, 3)) is Order.LESS_OR_EQUAL
        assert compare(C(1, 1, 3), C(1, 2, 2)) is Order.INCOMPARABLE
        assert compare(C(1, 1, 3), C(1, 1, 2)) is Order.GREATER_OR_EQUAL
        assert compare(C(1, 2, 2), C(1, 2, 2)) is Order.EQUAL
        for c in all_configurations(3, 3):
            assert compare(C(1, 1, 1), c) in (Order.LESS_OR_EQUAL, Order.EQUAL)

    def test_mismatch(self):
        with pytest.raises(DimensionError):
            compare(C(1, 1), C(1, 1, 1))
        with pytest.raises(DimensionError):
            compare(C(1, 1, d=3), C(1, 1, d=4))

    @pytest.mark.parametrize("N,d", [(2, 3), (3, 3), (3, 4), (4, 4)])
    def test_partial_order(self, N, d):
        confs = list(all_configurations(N, d))
        for a in confs:
            assert precedes(a, a)
        for a, b in itertools.product(confs, repeat=2):
            if precedes(a, b) and precedes(b, a):
                assert a == b
        for a, b, c in itertools.product(confs, repeat=3):
            if precedes(a, b) and precedes(b, c):
                assert precedes(a, c)

    @pytest.mark.parametrize("N,d", [(2, 3), (3, 4), (4, 3)])
    def test_energy_characterization(self, N, d):
        """Componentwise order agrees with 'lower energy for every increasing h' (sampled)."""
        rng = np.random.default_rng(7)
        hs = [np.sort(rng.uniform(0, 1, d)) for _ in range(100)]
        # extreme increasing h: step functions expose every incomparability
        hs += [np.array([0.0] * k + [1.0] * (d - k)) + 1e-6 * np.arange(d) for k in range(1, d)]
        confs = list(all_configurations(N, d))
        for a, b in itertools.product(confs, repeat=2):
            below = all(sum(h[i - 1] for i in a.indices) <= sum(h[i - 1] for i in b.indices) + 1e-12 for h in hs)
            assert below == precedes(a, b)


class TestCovers:
    def test_upper_lower_inverse(self):
        for c in all_configurations(3, 4):
            for u in upper_covers(c):
                assert c in lower_covers(u)
                assert precedes(c, u)

    def test_ground_has_no_lower(self):
        assert lower_covers(C(1, 1, 1)) == []


class TestMinimalSuccessors:
    def test_examples(self):
        assert minimal_successors(set(), N=3, d=3) == {C(1, 1, 1)}
        assert minimal_successors({C(1, 1, 1)}) == {C(1, 1, 2)}
        assert minimal_successors({C(1, 1, 1), C(1, 1, 2)}) == {C(1, 1, 3), C(1, 2, 2)}
        assert minimal_successors({C(1, 1, 1, d=4), C(1, 1, 2, d=4)}) == {C(1, 1, 3, d=4), C(1, 2, 2, d=4)}

    def test_not_down_closed(self):
        with pytest.raises(PreconditionError):
            minimal_successors({C(1, 1, 2)})

    def test_empty_needs_setting(self):
        with pytest.raises(PreconditionError):
            minimal_successors(set())

    def test_mixed(self):
        with pytest.raises(DimensionError):
            minimal_successors({C(1, 1, 1), C(1, 1, 1, d=4)})

    def test_full_set(self):
        assert minimal_successors(set(all_configurations(2, 2))) == set()

    @settings(max_examples=60, deadline=None)
    @given(st.integers(1, 4), st.integers(1, 4), st.data())
    def test_successors_of_random_ideal(self, N, d, data):
        confs = list(all_configurations(N, d))
        seeds = data.draw(st.lists(st.sampled_from(confs), max_size=4))
        ideal = {c for c in confs if any(precedes(c, s) for s in seeds)}
        succ = minimal_successors(ideal, N=N, d=d)
        rest = [c for c in confs if c not in ideal]
        expect = {c for c in rest if all(x in ideal for x in confs if precedes(x, c) and x != c)}
        assert succ == expect
        assert bool(succ) == bool(rest)
