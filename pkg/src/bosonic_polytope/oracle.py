"""Exact-diagonalization checks on small boson systems.

Dense matrices on the N-boson sector are diagonalized and the resulting
w-ensemble states are reduced to one-particle density matrices, whose
spectra are compared with the exact polytope data. Everything here is
double precision; comparisons with rational data go through tolerances.
"""

from __future__ import annotations

import os
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .configs import Configuration
from .errors import DegeneracyError, DegeneracyWarning, DimensionError, SizeError
from .halfspace import HalfspaceSystem, check_system
from .kernels import basis_arrays, one_body_matrix, one_rdm
from .polytope import SpectralPolytope, WeightVector, build_vertices, majorizes, membership

__all__ = [
    "FockBasis",
    "ManyBodyOperator",
    "ManyBodyState",
    "OneParticleRDM",
    "boundary_scan",
    "build_bose_hubbard",
    "build_noninteracting",
    "build_one_body",
    "gok_bound_violation",
    "gok_minimizer",
    "haar_unitary",
    "hubbard_report",
    "random_generic_h",
    "reduce_1rdm",
    "schur_horn_check",
    "verify_trials",
    "verify_vertex_sequence",
]

MAX_SECTOR_DIM = 500
HUBBARD_MAX = 6
HERMITIAN_TOL = 1e-12
DEGENERACY_TOL = 1e-9
VERTEX_TOL = 1e-10
SAMPLING_GAP = 1e-8


class FockBasis:
    """Symmetric N-boson sector over d modes, lexicographic configuration order."""

    def __init__(self, N: int, d: int):
        if N < 1 or d < 1:
            raise DimensionError(f"need N >= 1 and d >= 1, got N={N}, d={d}")
        self.N, self.d = N, d
        self.states, self.occ = basis_arrays(N, d)

    @property
    def dim(self) -> int:
        return len(self.states)

    def configurations(self) -> list[Configuration]:
        return [Configuration(tuple(int(i) + 1 for i in row), self.d) for row in self.states]

    def index(self, c: Configuration) -> int:
        target = np.array([i - 1 for i in c.indices])
        hits = np.nonzero((self.states == target).all(axis=1))[0]
        return int(hits[0])


@dataclass
class ManyBodyOperator:
    matrix: np.ndarray
    basis: FockBasis
    kind: str = "total"

    def __post_init__(self):
        m = self.matrix
        if m.shape != (self.basis.dim, self.basis.dim):
            raise DimensionError(f"matrix shape {m.shape} does not match sector dimension {self.basis.dim}")
        scale = max(1.0, float(np.abs(m).max()) if m.size else 1.0)
        if np.abs(m - m.conj().T).max(initial=0.0) > HERMITIAN_TOL * scale:
            raise ValueError("operator is not Hermitian")

    def __add__(self, other: "ManyBodyOperator") -> "ManyBodyOperator":
        return ManyBodyOperator(self.matrix + other.matrix, self.basis, "total")


@dataclass
class ManyBodyState:
    """w-ensemble density matrix with the eigen-data it was built from."""

    density: np.ndarray
    basis: FockBasis
    weights: np.ndarray
    energies: np.ndarray = field(repr=False)
    vectors: np.ndarray = field(repr=False)
    degenerate: bool = False


@dataclass
class OneParticleRDM:
    matrix: np.ndarray
    N: int

    def spectrum(self) -> np.ndarray:
        """Natural occupation numbers, decreasing."""
        return np.sort(np.linalg.eigvalsh(self.matrix))[::-1]

    def diagonal(self) -> np.ndarray:
        return np.real(np.diag(self.matrix)).copy()

    @property
    def trace(self) -> float:
        return float(np.real(np.trace(self.matrix)))


def _check_size(N: int, d: int) -> None:
    from math import comb

    dim = comb(N + d - 1, N)
    if dim > MAX_SECTOR_DIM:
        raise SizeError(f"sector dimension {dim} exceeds {MAX_SECTOR_DIM}")


def build_one_body(t: np.ndarray, N: int) -> ManyBodyOperator:
    t = np.asarray(t)
    d = t.shape[0]
    _check_size(N, d)
    basis = FockBasis(N, d)
    return ManyBodyOperator(one_body_matrix(basis.occ, t), basis, "one_body")


def build_noninteracting(h: Sequence[float], N: int) -> ManyBodyOperator:
    """Diagonal operator with entries ``sum_k h[i_k]`` over the configuration basis."""
    h = np.asarray(h, dtype=float)
    _check_size(N, len(h))
    basis = FockBasis(N, len(h))
    return ManyBodyOperator(np.diag(basis.occ @ h), basis, "one_body")


def build_bose_hubbard(
    J: float, U: float, v: Sequence[float], N: int, d: Optional[int] = None, periodic: bool = False
) -> ManyBodyOperator:
    """Nearest-neighbour Bose-Hubbard chain.

    ``H = -J sum_<ij> (a_i^+ a_j + h.c.) + U/2 sum_i n_i (n_i - 1) + sum_i v_i n_i``
    with open boundaries unless ``periodic``.
    """
    v = np.asarray(v, dtype=float)
    d = len(v) if d is None else d
    if len(v) != d:
        raise DimensionError(f"{len(v)} site potentials for {d} sites")
    if d > HUBBARD_MAX or N > HUBBARD_MAX:
        raise SizeError(f"Bose-Hubbard envelope is N, d <= {HUBBARD_MAX}; got N={N}, d={d}")
    t = np.diag(v).astype(float)
    bonds = [(i, i + 1) for i in range(d - 1)]
    if periodic and d > 2:
        bonds.append((d - 1, 0))
    for i, j in bonds:
        t[i, j] -= J
        t[j, i] -= J
    op = build_one_body(t, N)
    occ = op.basis.occ
    op.matrix[np.diag_indices(op.basis.dim)] += 0.5 * U * (occ * (occ - 1)).sum(axis=1)
    op.kind = "total"
    return op


def _canonical_block(vectors: np.ndarray) -> np.ndarray:
    # deterministic basis inside a degenerate block: order by |components|, fix phases
    cols = [vectors[:, k] for k in range(vectors.shape[1])]
    cols.sort(key=lambda c: tuple(-np.round(np.abs(c), 12)))
    out = []
    for c in cols:
        k = int(np.argmax(np.abs(c)))
        phase = c[k] / abs(c[k]) if abs(c[k]) > 0 else 1.0
        out.append(c / phase)
    return np.stack(out, axis=1)


def gok_minimizer(H: ManyBodyOperator, w: WeightVector) -> tuple[ManyBodyState, float]:
    """``Gamma_w = sum_j w_j |Psi_j><Psi_j|`` over the lowest eigenstates, and ``E_w``."""
    r = w.r
    dim = H.basis.dim
    if r > dim:
        raise DimensionError(f"{r} weights for a sector of dimension {dim}")
    energies, vectors = np.linalg.eigh(H.matrix)
    weights = np.array([float(x) for x in w.nonzero] + [0.0] * (dim - r))
    scale = max(1.0, float(np.abs(energies).max()))
    last = min(r + 1, dim)
    gaps = np.diff(energies[:last])
    degenerate = bool(np.any(gaps < DEGENERACY_TOL * scale))
    if degenerate:
        warnings.warn(
            f"weighted levels are degenerate (min gap {gaps.min():.3e}); eigenvectors fixed by canonical ordering",
            DegeneracyWarning,
            stacklevel=2,
        )
        start = 0
        while start < dim:
            stop = start + 1
            while stop < dim and energies[stop] - energies[stop - 1] < DEGENERACY_TOL * scale:
                stop += 1
            if stop - start > 1 and start < last:
                vectors[:, start:stop] = _canonical_block(vectors[:, start:stop])
            start = stop
    V = vectors[:, :r]
    density = (V * weights[:r]) @ V.conj().T
    E_w = float(np.dot(weights[:r], energies[:r]))
    state = ManyBodyState(density, H.basis, weights, energies, vectors, degenerate)
    return state, E_w


def reduce_1rdm(state: ManyBodyState) -> OneParticleRDM:
    """``gamma[p, q] = Tr[Gamma a_q^+ a_p]``; trace N."""
    g = one_rdm(state.density, state.basis.occ)
    return OneParticleRDM(g, state.basis.N)


def haar_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    ph = np.diag(r) / np.abs(np.diag(r))
    return q * ph


def gok_bound_violation(H: np.ndarray, w: WeightVector, rng: np.random.Generator, samples: int) -> float:
    """Largest ``E_w - Tr[H U diag(w) U^+]`` over random unitaries (<= 0 when the bound holds)."""
    dim = H.shape[0]
    energies = np.linalg.eigvalsh(H)
    wv = np.array([float(x) for x in w.nonzero] + [0.0] * (dim - w.r))
    E_w = float(wv @ energies)
    worst = -np.inf
    for _ in range(samples):
        U = haar_unitary(rng, dim)
        val = float(np.real(np.einsum("ij,jk,ki->", H, U * wv, U.conj().T)))
        worst = max(worst, E_w - val)
    return worst


def _config_energies(h: np.ndarray, N: int) -> np.ndarray:
    _, occ = basis_arrays(N, len(h))
    return occ @ h


def _is_generic(h: np.ndarray, N: int, gap: float) -> bool:
    if np.any(np.diff(h) <= gap):
        return False
    e = np.sort(_config_energies(h, N))
    return bool(np.all(np.diff(e) > gap))


def random_generic_h(rng: np.random.Generator, N: int, d: int, gap: float = SAMPLING_GAP) -> np.ndarray:
    """Sorted uniform energies on [0, 1], resampled until all configuration energies differ by more than ``gap``."""
    while True:
        h = np.sort(rng.uniform(0.0, 1.0, d))
        if _is_generic(h, N, gap):
            return h


@dataclass
class VertexReport:
    spectrum: np.ndarray
    vertex: Optional[tuple[Fraction, ...]]
    deviation: float
    hit: bool

    def to_json(self) -> dict:
        return {
            "spectrum": [float(x) for x in self.spectrum],
            "vertex": None if self.vertex is None else [str(x) for x in self.vertex],
            "deviation": self.deviation,
            "hit": self.hit,
        }


def verify_vertex_sequence(h: Sequence[float], w: WeightVector, N: int, polytope: Optional[SpectralPolytope] = None) -> VertexReport:
    """Run h -> Gamma -> gamma -> spectrum and match the result to a vertex."""
    h = np.asarray(h, dtype=float)
    d = len(h)
    scale = max(1.0, float(np.abs(h).max()))
    if not _is_generic(h, N, 1e-12 * scale):
        raise DegeneracyError("orbital or configuration energies are degenerate")
    if polytope is None:
        polytope = build_vertices(N, d, w)
    state, _ = gok_minimizer(build_noninteracting(h, N), w)
    spec = reduce_1rdm(state).spectrum()
    best, best_dev = None, np.inf
    for v in polytope.sorted_vertices():
        dev = float(np.abs(spec - np.array([float(x) for x in v])).max())
        if dev < best_dev:
            best, best_dev = v, dev
    return VertexReport(spec, best, best_dev, best_dev <= VERTEX_TOL)


def _trial(args):
    seed, N, d, w, polytope = args
    rng = np.random.default_rng(seed)
    h = random_generic_h(rng, N, d)
    return verify_vertex_sequence(h, w, N, polytope)


def verify_trials(N: int, d: int, w: WeightVector, trials: int, seed: int, workers: Optional[int] = None) -> dict:
    """Seeded batch of :func:`verify_vertex_sequence`; results ordered by trial index."""
    polytope = build_vertices(N, d, w)
    seeds = np.random.SeedSequence(seed).spawn(trials)
    jobs = [(s, N, d, w, polytope) for s in seeds]
    if workers is None:
        workers = int(os.environ.get("BOSONIC_POLYTOPE_THREADS", "1") or 1)
    if workers > 1 and trials > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_trial, jobs))
    else:
        reports = [_trial(j) for j in jobs]
    hits = sum(r.hit for r in reports)
    return {
        "N": N,
        "d": d,
        "weights": w.to_json(),
        "trials": trials,
        "seed": seed,
        "hits": hits,
        "misses": trials - hits,
        "max_deviation": max((r.deviation for r in reports), default=0.0),
    }


def schur_horn_check(gamma: OneParticleRDM, system: Optional[HalfspaceSystem] = None, tol: float = 1e-10) -> dict:
    """Occupations in any basis obey the same exclusion constraints as the spectrum.

    Checks ``diag(gamma) ≺ spec(gamma)`` and, if ``system`` is given, that the
    diagonal passes it whenever the spectrum does.
    """
    spec = gamma.spectrum()
    diag = gamma.diagonal()
    major = majorizes(list(spec), list(diag), tol=tol)
    report = {"diag_majorized": bool(major), "spectrum": spec.tolist(), "diag": diag.tolist()}
    if system is not None:
        spec_ok = check_system(system, spec, tol=tol)
        diag_ok = check_system(system, diag, tol=tol)
        report.update(spectrum_passes=spec_ok, diag_passes=diag_ok, transfer_holds=(not spec_ok) or diag_ok)
    report["ok"] = bool(major and report.get("transfer_holds", True))
    return report


def hubbard_report(J: float, U: float, N: int, sites: int, w: WeightVector, v: Optional[Sequence[float]] = None) -> dict:
    """Ground/excited ensemble of a Bose-Hubbard chain and polytope membership of its 1RDM spectrum."""
    v = np.zeros(sites) if v is None else np.asarray(v, dtype=float)
    H = build_bose_hubbard(J, U, v, N, sites)
    state, E_w = gok_minimizer(H, w)
    gamma = reduce_1rdm(state)
    spec = gamma.spectrum()
    res = membership(build_vertices(N, sites, w), _renormalized(spec, N))
    return {
        "E_w": E_w,
        "spectrum": spec.tolist(),
        "diag": gamma.diagonal().tolist(),
        "membership": bool(res.member or res.boundary),
        "boundary": bool(res.boundary),
        "slack": float(res.slack),
        "degenerate": state.degenerate,
    }


def _renormalized(spec: np.ndarray, N: int) -> list[float]:
    # remove float drift of the trace before the exact membership test
    spec = np.clip(np.asarray(spec, dtype=float), 0.0, None)
    return list(spec * (N / spec.sum()))


def boundary_scan(J: float, Us: Sequence[float], N: int, sites: int, w: WeightVector, v: Optional[Sequence[float]] = None) -> list[dict]:
    """Membership slack of the ensemble 1RDM spectrum as the interaction grows.

    Zero slack means the spectrum sits on the boundary; no threshold is implied.
    """
    return [{"U": float(U), "slack": hubbard_report(J, U, N, sites, w, v)["slack"]} for U in Us]
