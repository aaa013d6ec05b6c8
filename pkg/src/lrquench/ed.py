"""Exact diagonalization on the full Hilbert space (hard cap: 14 sites).

States live in the computational z-basis with site 0 on the most
significant bit, so reshaping an amplitude vector to (2^l, 2^(L-l)) splits
the chain between sites l-1 and l.  Bit value 1 means spin up (+1 under
the Pauli z); the all-down configuration is basis index 0.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.linalg import eigh_tridiagonal
from scipy.sparse.linalg import eigsh

from .errors import NumericFailureError, SizeCapError
from .model import ModelParams, validate

#: Hard cap on chain length; above this the dense vector no longer fits
#: comfortably and the request is refused loudly.
SIZE_CAP = 14

#: Ground states closer than this in energy trigger a degeneracy warning.
DEGENERACY_GAP = 1e-8

#: Dense diagonalization is used below this dimension for eigensolves.
_DENSE_DIM = 2048


def _bits(length: int) -> np.ndarray:
    """(2^L, L) array of z eigenvalues (+-1), site 0 first."""
    n = np.arange(2**length, dtype=np.int64)
    shifts = length - 1 - np.arange(length)
    return (2 * ((n[:, None] >> shifts[None, :]) & 1) - 1).astype(np.int8)


@dataclass
class EDHamiltonian:
    """Sparse Hamiltonian plus the metadata needed by the evolvers."""

    params: ModelParams
    matrix: sp.csr_matrix
    dim: int

    def __post_init__(self):
        self._eig = None

    def norm_bound(self) -> float:
        """Cheap upper bound on the spectral norm (row-sum bound)."""
        p = self.params
        row = sum(abs(d) ** (-p.alpha) for d in range(1, p.length))
        return p.length * abs(math.cos(p.theta)) + 2.0 * math.sin(p.theta) * row

    def eigensystem(self):
        """Full dense eigendecomposition, cached after the first call."""
        if self._eig is None:
            dense = self.matrix.toarray()
            self._eig = np.linalg.eigh(dense)
        return self._eig


@dataclass
class EDState:
    """Normalized state vector with a time stamp."""

    amplitudes: np.ndarray
    time: float = 0.0

    @property
    def length(self) -> int:
        return int(round(math.log2(self.amplitudes.size)))

    def copy(self) -> "EDState":
        return EDState(amplitudes=self.amplitudes.copy(), time=self.time)


def build_hamiltonian(params: ModelParams) -> EDHamiltonian:
    """Assemble the sparse Pauli Hamiltonian on the full Hilbert space."""
    validate(params)
    length = params.length
    if length > SIZE_CAP:
        raise SizeCapError(
            f"length {length} exceeds the exact-diagonalization cap of {SIZE_CAP}"
        )
    dim = 2**length
    z = _bits(length).astype(np.float64)
    diag = math.cos(params.theta) * z.sum(axis=1)
    rows = [np.arange(dim, dtype=np.int64)]
    cols = [np.arange(dim, dtype=np.int64)]
    vals = [diag]
    n = np.arange(dim, dtype=np.int64)
    for i in range(length):
        for j in range(i + 1, length):
            mask = (1 << (length - 1 - i)) | (1 << (length - 1 - j))
            weight = math.sin(params.theta) / (j - i) ** params.alpha
            rows.append(n)
            cols.append(n ^ mask)
            vals.append(np.full(dim, weight))
    matrix = sp.coo_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
        shape=(dim, dim),
    ).tocsr()
    return EDHamiltonian(params=params, matrix=matrix, dim=dim)


def _fix_phase(vec: np.ndarray) -> np.ndarray:
    """Rotate the global phase so the largest amplitude is real positive."""
    idx = int(np.argmax(np.abs(vec)))
    pivot = vec[idx]
    if abs(pivot) > 0:
        vec = vec * (np.conj(pivot) / abs(pivot))
    return vec


def ground_state(ham: EDHamiltonian) -> EDState:
    """Lowest eigenvector, deterministic up to the fixed phase convention.

    Warns when the gap to the first excited state is below 1e-8; the phase
    convention (largest amplitude real positive) then picks a reproducible
    representative.
    """
    if ham.dim <= _DENSE_DIM:
        energies, vectors = ham.eigensystem()
        e0, e1 = energies[0], energies[1]
        vec = vectors[:, 0].astype(np.complex128)
    else:
        v0 = np.full(ham.dim, 1.0 / math.sqrt(ham.dim))
        energies, vectors = eigsh(ham.matrix, k=2, which="SA", v0=v0)
        order = np.argsort(energies)
        e0, e1 = energies[order[0]], energies[order[1]]
        vec = vectors[:, order[0]].astype(np.complex128)
    if e1 - e0 < DEGENERACY_GAP:
        warnings.warn(
            f"ground state degenerate within {DEGENERACY_GAP:.0e} "
            f"(gap = {e1 - e0:.3e}); using the fixed-phase representative",
            RuntimeWarning,
            stacklevel=2,
        )
    vec = vec / np.linalg.norm(vec)
    residual = np.linalg.norm(ham.matrix @ vec - e0 * vec)
    if residual >= 1e-10 * max(1.0, abs(e0)):
        raise NumericFailureError(
            f"ground-state residual {residual:.3e} exceeds tolerance"
        )
    return EDState(amplitudes=_fix_phase(vec), time=0.0)


def apply_sigma_x(state: EDState, site: int) -> EDState:
    """Flip the spin at ``site``: an exact basis permutation."""
    length = state.length
    if not 0 <= site < length:
        raise ValueError(f"site {site} out of range for length {length}")
    mask = 1 << (length - 1 - site)
    idx = np.arange(state.amplitudes.size, dtype=np.int64) ^ mask
    return EDState(amplitudes=state.amplitudes[idx], time=state.time)


def _expm_lanczos(matrix: sp.csr_matrix, vec: np.ndarray, tau: float,
                  tol: float, m_max: int = 60):
    """One Krylov step: approximate exp(-i tau H) vec.

    Returns None when the subspace hits ``m_max`` without meeting the
    a-posteriori error estimate, signalling the caller to shrink tau.
    Lanczos vectors are fully reorthogonalized, so the result keeps unit
    norm to roundoff whenever the input is normalized.
    """
    dim = vec.size
    m_max = min(m_max, dim)
    v_norm = np.linalg.norm(vec)
    basis = np.empty((m_max, dim), dtype=np.complex128)
    basis[0] = vec / v_norm
    alphas: list[float] = []
    betas: list[float] = []
    for j in range(m_max):
        w = matrix @ basis[j]
        alphas.append(float(np.real(np.vdot(basis[j], w))))
        w = w - alphas[-1] * basis[j]
        if j > 0:
            w = w - betas[-1] * basis[j - 1]
        # One full reorthogonalization pass keeps the basis clean.
        w = w - basis[: j + 1].T @ (basis[: j + 1].conj() @ w)
        beta = float(np.linalg.norm(w))
        evals, evecs = eigh_tridiagonal(alphas, betas)
        small = evecs @ (np.exp(-1j * tau * evals) * evecs[0, :])
        if beta < 1e-14 * max(1.0, abs(alphas[-1])):
            # Invariant subspace: the Krylov result is exact.
            return v_norm * (small @ basis[: j + 1])
        err = abs(tau) * beta * abs(small[-1])
        if err < tol and j >= 1:
            return v_norm * (small @ basis[: j + 1])
        if j + 1 < m_max:
            betas.append(beta)
            basis[j + 1] = w / beta
    return None


def evolve(state: EDState, ham: EDHamiltonian, t: float,
           method: str = "krylov", tol: float = 1e-11) -> EDState:
    """Advance the state by t: exp(-i H t) |psi>.

    ``krylov`` steps adaptively with a local error budget below ``tol``
    per substep; ``eig`` goes through the full eigendecomposition (cached
    on the Hamiltonian, sensible only for small chains).
    """
    if t == 0.0:
        return state.copy()
    if method == "eig":
        energies, vectors = ham.eigensystem()
        coeffs = vectors.conj().T @ state.amplitudes
        amps = vectors @ (np.exp(-1j * energies * t) * coeffs)
        return EDState(amplitudes=amps, time=state.time + t)
    if method != "krylov":
        raise ValueError(f"unknown evolution method {method!r}")
    amps = state.amplitudes.copy()
    remaining = float(t)
    tau = min(abs(remaining), 8.0 / max(ham.norm_bound(), 1e-12)) * np.sign(t)
    guard = 0
    while abs(remaining) > 1e-15 * abs(t):
        tau = np.sign(remaining) * min(abs(tau), abs(remaining))
        result = _expm_lanczos(ham.matrix, amps, tau, tol)
        if result is None:
            tau *= 0.5
            guard += 1
            if guard > 60:
                raise NumericFailureError("Krylov step size collapsed")
            continue
        amps = result
        remaining -= tau
    return EDState(amplitudes=amps, time=state.time + t)


def energy_expectation(state: EDState, ham: EDHamiltonian) -> float:
    return float(np.real(np.vdot(state.amplitudes, ham.matrix @ state.amplitudes)))


def sigma_z_profile(state: EDState) -> np.ndarray:
    """Per-site <z_i> of the Pauli z operator."""
    probs = np.abs(state.amplitudes) ** 2
    return probs @ _bits(state.length).astype(np.float64)


def delta_m_profile(state: EDState) -> np.ndarray:
    """Per-site excess magnetization (<z_i> + 1) / 2, matching the
    harmonic engine's convention."""
    return 0.5 * (sigma_z_profile(state) + 1.0)


@dataclass
class EntanglementData:
    """Schmidt spectrum and entropy for one left/right cut."""

    block_size: int
    spectrum: np.ndarray  # descending, sums to one
    entropy: float        # nats
    excess: float | None = None


def entanglement(state: EDState, block_size: int) -> EntanglementData:
    """Schmidt decomposition across the cut after site ``block_size - 1``."""
    length = state.length
    if not 1 <= block_size <= length - 1:
        raise ValueError(f"cut {block_size} out of range for length {length}")
    matrix = state.amplitudes.reshape(2**block_size, 2 ** (length - block_size))
    svals = np.linalg.svd(matrix, compute_uv=False)
    spectrum = svals**2
    positive = spectrum[spectrum > 1e-300]
    entropy = float(-np.sum(positive * np.log(positive)))
    return EntanglementData(block_size=block_size, spectrum=spectrum,
                            entropy=entropy)


@dataclass
class EDTrajectory:
    """Sampled observables of one exact quench run."""

    params: ModelParams
    times: np.ndarray
    delta_m: np.ndarray             # (samples, length)
    entropies: np.ndarray           # (samples, length - 1), cuts 1..L-1
    delta_entropies: np.ndarray     # entropies minus the pre-quench baseline
    spectra: list[list[np.ndarray]]  # per sample, per cut, descending
    baseline_entropies: np.ndarray  # ground-state entropies per cut
    energies: np.ndarray
    norms: np.ndarray


def quench_trajectory(params: ModelParams, t_max: float, sample_dt: float,
                      method: str = "krylov") -> EDTrajectory:
    """Ground state -> spin flip at the quench site -> sampled evolution."""
    validate(params)
    ham = build_hamiltonian(params)
    gs = ground_state(ham)
    cuts = range(1, params.length)
    baseline = np.array([entanglement(gs, l).entropy for l in cuts])
    state = apply_sigma_x(gs, params.quench_site)

    n_samples = int(round(t_max / sample_dt))
    times, profiles, ents, spectra, energies, norms = [], [], [], [], [], []
    for i in range(n_samples + 1):
        t = i * sample_dt
        if i > 0:
            state = evolve(state, ham, sample_dt, method=method)
            state.time = t
        times.append(t)
        profiles.append(delta_m_profile(state))
        per_cut = [entanglement(state, l) for l in cuts]
        ents.append([e.entropy for e in per_cut])
        spectra.append([e.spectrum for e in per_cut])
        energies.append(energy_expectation(state, ham))
        norms.append(float(np.linalg.norm(state.amplitudes)))
    entropies = np.asarray(ents)
    return EDTrajectory(
        params=params,
        times=np.asarray(times),
        delta_m=np.vstack(profiles),
        entropies=entropies,
        delta_entropies=entropies - baseline[None, :],
        spectra=spectra,
        baseline_entropies=baseline,
        energies=np.asarray(energies),
        norms=np.asarray(norms),
    )
