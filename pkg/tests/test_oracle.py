import warnings
from fractions import Fraction as F
from math import comb, sqrt

import numpy as np
import pytest

from bosonic_polytope import (
    DegeneracyError,
    DegeneracyWarning,
    SizeError,
    WeightVector,
    analytic_halfspaces,
    build_vertices,
    check_system,
    contains,
    generic_weights,
)
from bosonic_polytope.oracle import (
    FockBasis,
    ManyBodyOperator,
    ManyBodyState,
    OneParticleRDM,
    boundary_scan,
    build_bose_hubbard,
    build_noninteracting,
    build_one_body,
    gok_bound_violation,
    gok_minimizer,
    haar_unitary,
    hubbard_report,
    random_generic_h,
    reduce_1rdm,
    schur_horn_check,
    verify_trials,
    verify_vertex_sequence,
)


def W(*xs):
    return WeightVector(tuple(F(x) for x in xs))


def projector_state(basis, coeffs):
    rho = np.zeros((basis.dim, basis.dim))
    for idx, wt in coeffs:
        rho[idx, idx] += wt
    return ManyBodyState(rho, basis, np.zeros(basis.dim), np.zeros(basis.dim), np.eye(basis.dim))


class TestOperators:
    def test_noninteracting_diagonal(self):
        H = build_noninteracting([0, 1, 2], 2)
        assert np.allclose(H.matrix, np.diag([0, 1, 2, 2, 3, 4]))
        assert [str(c) for c in H.basis.configurations()] == ["(1,1)", "(1,2)", "(1,3)", "(2,2)", "(2,3)", "(3,3)"]
        assert np.all(build_noninteracting([0, 0, 0], 2).matrix == 0)

    def test_ground_configuration(self):
        rng = np.random.default_rng(1)
        for _ in range(10):
            H = build_noninteracting(np.sort(rng.uniform(0, 1, 4)), 3)
            assert int(np.argmin(np.diag(H.matrix))) == 0

    @pytest.mark.parametrize("N,d", [(2, 3), (3, 3), (4, 4)])
    def test_hubbard_limit_and_dimension(self, N, d):
        v = np.linspace(0, 1, d)
        H = build_bose_hubbard(0.0, 0.0, v, N)
        assert H.basis.dim == comb(N + d - 1, N)
        assert np.allclose(H.matrix, build_noninteracting(v, N).matrix)

    @pytest.mark.parametrize("J,U", [(1.0, 0.0), (1.0, 4.0), (0.3, -1.5), (2.0, 10.0)])
    def test_dimer(self, J, U):
        H = build_bose_hubbard(J, U, [0.0, 0.0], 2)
        expected = U / 2 - sqrt(U * U / 4 + 4 * J * J)
        assert abs(np.linalg.eigvalsh(H.matrix)[0] - expected) < 1e-12
        ref = np.array([[U, -sqrt(2) * J, 0], [-sqrt(2) * J, 0, -sqrt(2) * J], [0, -sqrt(2) * J, U]])
        assert np.allclose(np.linalg.eigvalsh(H.matrix), np.linalg.eigvalsh(ref))

    def test_size_limits(self):
        with pytest.raises(SizeError):
            build_bose_hubbard(1, 1, np.zeros(7), 2)
        with pytest.raises(SizeError):
            build_noninteracting(np.arange(10), 5)

    def test_hermitian_check(self):
        basis = FockBasis(1, 2)
        with pytest.raises(ValueError):
            ManyBodyOperator(np.array([[0, 1], [0, 0]], float), basis)

    def test_sum(self):
        a = build_one_body(np.diag([0.0, 1.0]), 2)
        b = build_one_body(np.diag([1.0, 0.0]), 2)
        assert np.allclose((a + b).matrix, 2 * np.eye(3))


class TestGOK:
    def test_ground_state_limit(self):
        H = build_bose_hubbard(1.0, 2.0, [0.0, 0.3, 0.1], 3)
        state, E = gok_minimizer(H, W(1))
        e = np.linalg.eigvalsh(H.matrix)
        assert abs(E - e[0]) < 1e-12
        assert abs(np.trace(state.density) - 1) < 1e-12
        assert np.allclose(state.density @ state.density, state.density)

    def test_noninteracting_example(self):
        state, E = gok_minimizer(build_noninteracting([0, 1, 2], 2), W("0.7", "0.3"))
        assert abs(E - 0.3) < 1e-12
        assert np.allclose(reduce_1rdm(state).spectrum(), [1.7, 0.3, 0.0])

    def test_variational_bound(self):
        rng = np.random.default_rng(11)
        H = build_bose_hubbard(1.0, 3.0, rng.uniform(-1, 1, 3), 3)
        assert gok_bound_violation(H.matrix, W("1/2", "1/3", "1/6"), rng, 200) <= 1e-10

    def test_majorization_monotone(self):
        rng = np.random.default_rng(2)
        chain = [W(1), W("3/4", "1/4"), W("1/2", "1/2"), W("1/2", "1/4", "1/4"), W("1/3", "1/3", "1/3")]
        for _ in range(5):
            H = build_bose_hubbard(rng.uniform(0.2, 2), rng.uniform(0, 5), rng.uniform(-1, 1, 3), 3)
            energies = [gok_minimizer(H, w)[1] for w in chain]
            assert all(a <= b + 1e-12 for a, b in zip(energies, energies[1:]))

    def test_degeneracy_warning_is_deterministic(self):
        H = build_noninteracting([0.0, 1.0, 1.0], 1)
        with pytest.warns(DegeneracyWarning):
            s1, _ = gok_minimizer(H, W("1/2", "1/2"))
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", DegeneracyWarning)
            s2, _ = gok_minimizer(H, W("1/2", "1/2"))
        assert s1.degenerate and np.allclose(s1.density, s2.density)

    def test_haar_unitary(self):
        U = haar_unitary(np.random.default_rng(0), 5)
        assert np.allclose(U @ U.conj().T, np.eye(5))


class TestReduce:
    def test_ground_projector(self):
        basis = FockBasis(3, 4)
        g = reduce_1rdm(projector_state(basis, [(0, 1.0)]))
        assert np.allclose(g.matrix, np.diag([3, 0, 0, 0]))

    def test_two_level_ensemble(self):
        basis = FockBasis(3, 4)
        w1, w2 = 0.65, 0.35
        g = reduce_1rdm(projector_state(basis, [(0, w1), (1, w2)]))
        assert np.allclose(g.spectrum(), [2 + w1, w2, 0, 0])

    def test_trace_and_linearity(self):
        rng = np.random.default_rng(4)
        basis = FockBasis(3, 3)
        dens = []
        for _ in range(2):
            a = rng.standard_normal((basis.dim, basis.dim)) + 1j * rng.standard_normal((basis.dim, basis.dim))
            rho = a @ a.conj().T
            dens.append(rho / np.trace(rho))
        mk = lambda rho: ManyBodyState(rho, basis, np.zeros(1), np.zeros(1), np.zeros((1, 1)))
        g1, g2 = reduce_1rdm(mk(dens[0])), reduce_1rdm(mk(dens[1]))
        g12 = reduce_1rdm(mk(0.3 * dens[0] + 0.7 * dens[1]))
        assert abs(g1.trace - 3) < 1e-10
        assert np.allclose(g12.matrix, 0.3 * g1.matrix + 0.7 * g2.matrix)
        assert np.all(g1.spectrum() > -1e-12)


class TestVertexSequence:
    def test_example_hits_second_vertex(self):
        w = W("1/2", "1/3", "1/6")
        rep = verify_vertex_sequence([0, 1, 2.3, 4.7], w, 3)
        assert rep.hit
        expected = (F(3, 1) * w.weights[0] + 2 * w.weights[1] + w.weights[2], w.weights[1] + 2 * w.weights[2], 0, 0)
        assert rep.vertex == expected

    def test_example_hits_first_vertex(self):
        rep = verify_vertex_sequence([0, 1, 1.4, 4.3], W("1/2", "1/3", "1/6"), 3)
        assert rep.hit and rep.vertex == (F(5, 2), F(1, 3), F(1, 6), 0)

    def test_degenerate_h(self):
        # (1,1,3) and (1,2,2) tie at energy 2, so the third level is ambiguous
        with pytest.raises(DegeneracyError):
            verify_vertex_sequence([0, 1, 2, 4], W("1/2", "1/3", "1/6"), 3)
        with pytest.raises(DegeneracyError):
            verify_vertex_sequence([0, 1, 1, 2], W("1/2", "1/2"), 2)
        with pytest.raises(DegeneracyError):
            verify_vertex_sequence([0, 1, 2, 3], W("1/2", "1/3", "1/6"), 2)

    def test_random_h_is_generic(self):
        rng = np.random.default_rng(9)
        h = random_generic_h(rng, 3, 4)
        assert np.all(np.diff(h) > 0)

    def test_trials_seeded(self):
        a = verify_trials(3, 4, generic_weights(3), 20, seed=42)
        b = verify_trials(3, 4, generic_weights(3), 20, seed=42, workers=2)
        assert a == b
        assert a["hits"] == 20 and a["misses"] == 0


class TestSchurHorn:
    def test_diagonal_gamma(self):
        g = OneParticleRDM(np.diag([1.5, 0.4, 0.1]), 2)
        rep = schur_horn_check(g, analytic_halfspaces(2, W("0.6", "0.4"), d=3))
        assert rep["ok"] and rep["spectrum_passes"] and rep["diag_passes"]
        assert np.allclose(rep["diag"], rep["spectrum"])

    def test_rotated_gamma(self):
        rng = np.random.default_rng(6)
        for _ in range(20):
            U = haar_unitary(rng, 4)
            lam = np.sort(rng.dirichlet(np.ones(4)) * 3)[::-1]
            g = OneParticleRDM(U @ np.diag(lam) @ U.conj().T, 3)
            assert schur_horn_check(g)["diag_majorized"]

    def test_trimer_ground_ensemble(self):
        w = W("0.6", "0.4")
        H = build_bose_hubbard(1.0, 4.0, [0, 0, 0], 3)
        g = reduce_1rdm(gok_minimizer(H, w)[0])
        rep = schur_horn_check(g, analytic_halfspaces(3, w, d=3))
        assert rep["spectrum_passes"] and rep["diag_passes"] and rep["ok"]


class TestHubbardReport:
    def test_example(self):
        rep = hubbard_report(1.0, 4.0, 3, 3, W("0.6", "0.4"))
        assert rep["membership"] and not rep["degenerate"]
        assert abs(sum(rep["spectrum"]) - 3) < 1e-10
        assert rep["slack"] > 0

    def test_interacting_spectra_are_members(self):
        rng = np.random.default_rng(8)
        for w in (W("1/2", "1/3", "1/6"), generic_weights(4)):
            for _ in range(4):
                H = build_bose_hubbard(rng.uniform(0.1, 2), rng.uniform(0, 6), rng.uniform(-1, 1, 4), 3)
                g = reduce_1rdm(gok_minimizer(H, w)[0])
                spec = g.spectrum()
                spec = list(np.clip(spec, 0, None) * 3 / np.clip(spec, 0, None).sum())
                assert contains(build_vertices(3, 4, w), spec)

    def test_noninteracting_on_boundary(self):
        rep = hubbard_report(1.0, 0.0, 2, 3, W("0.7", "0.3"))
        assert rep["boundary"]
        scan = boundary_scan(1.0, [0.0, 1.0, 4.0], 2, 3, W("0.7", "0.3"))
        assert abs(scan[0]["slack"]) < 1e-9
        assert all(s["slack"] >= -1e-10 for s in scan)
