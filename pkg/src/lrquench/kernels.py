"""Lattice sums over the staggered power-law coupling.

Everything here reduces to partial sums of (-1)^d cos(k d) / d^alpha and its
k-derivative.  Scalar entry points take arbitrary k and an explicit cutoff;
grid entry points evaluate all modes k_n = 2 pi n / L at once through an FFT
of the coupling sequence, which is exact because the sequence is folded onto
the grid before transforming.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import InvalidPairError

# Largest k-by-delta workload evaluated in one broadcast before chunking.
_CHUNK_LIMIT = 50_000_000


def _weights(alpha: float, cutoff: int, order: float) -> np.ndarray:
    """Signed weights (-1)^d / d^(alpha - order) for d = 1 .. cutoff."""
    d = np.arange(1, cutoff + 1, dtype=float)
    w = d ** (order - alpha)
    w[::2] *= -1.0  # d = 1, 3, 5, ... carry the minus sign
    return w


def _check_cutoff(cutoff: int) -> int:
    if cutoff < 1 or int(cutoff) != cutoff:
        raise ValueError(f"cutoff must be a positive integer, got {cutoff}")
    return int(cutoff)


def fourier_kernel(k, alpha: float, cutoff: int):
    """Partial sum over d = 1..cutoff of (-1)^d cos(k d) / d^alpha.

    Accepts scalar or array k; returns the same shape.
    """
    cutoff = _check_cutoff(cutoff)
    k_arr = np.atleast_1d(np.asarray(k, dtype=float))
    w = _weights(alpha, cutoff, order=0.0)
    d = np.arange(1, cutoff + 1, dtype=float)
    if k_arr.size * cutoff <= _CHUNK_LIMIT:
        out = np.cos(np.outer(k_arr, d)) @ w
    else:
        out = np.zeros(k_arr.size)
        step = max(1, _CHUNK_LIMIT // cutoff)
        for lo in range(0, k_arr.size, step):
            kk = k_arr[lo : lo + step]
            out[lo : lo + step] = np.cos(np.outer(kk, d)) @ w
    out = out.reshape(np.shape(k))
    return float(out) if np.isscalar(k) or np.ndim(k) == 0 else out


def fourier_kernel_prime(k, alpha: float, cutoff: int):
    """k-derivative of :func:`fourier_kernel` at the same cutoff:
    - sum over d of (-1)^d sin(k d) / d^(alpha - 1)."""
    cutoff = _check_cutoff(cutoff)
    k_arr = np.atleast_1d(np.asarray(k, dtype=float))
    w = _weights(alpha, cutoff, order=1.0)
    d = np.arange(1, cutoff + 1, dtype=float)
    if k_arr.size * cutoff <= _CHUNK_LIMIT:
        out = -(np.sin(np.outer(k_arr, d)) @ w)
    else:
        out = np.zeros(k_arr.size)
        step = max(1, _CHUNK_LIMIT // cutoff)
        for lo in range(0, k_arr.size, step):
            kk = k_arr[lo : lo + step]
            out[lo : lo + step] = -(np.sin(np.outer(kk, d)) @ w)
    out = out.reshape(np.shape(k))
    return float(out) if np.isscalar(k) or np.ndim(k) == 0 else out


def _folded(weights: np.ndarray, length: int) -> np.ndarray:
    """Fold the weight sequence (index = d, starting at 1) onto d mod L."""
    c = np.zeros(length)
    idx = np.arange(1, weights.size + 1) % length
    np.add.at(c, idx, weights)
    return c


def fourier_kernel_grid(length: int, alpha: float, cutoff: int | None = None) -> np.ndarray:
    """:func:`fourier_kernel` on the full momentum grid of ``length`` modes.

    Evaluated as the real part of an FFT of the folded weight sequence,
    exactly equal to the direct sum at every grid mode.  Cutoff defaults to
    length - 1 (the finite-chain convention).
    """
    if cutoff is None:
        cutoff = length - 1
    cutoff = _check_cutoff(cutoff)
    c = _folded(_weights(alpha, cutoff, order=0.0), length)
    return np.fft.fft(c).real.copy()


def fourier_kernel_prime_grid(length: int, alpha: float, cutoff: int | None = None) -> np.ndarray:
    """:func:`fourier_kernel_prime` on the full momentum grid."""
    if cutoff is None:
        cutoff = length - 1
    cutoff = _check_cutoff(cutoff)
    c = _folded(_weights(alpha, cutoff, order=1.0), length)
    # sum_d c_d sin(k_n d) = -Im FFT(c)[n], and the derivative carries
    # an overall minus sign, so the two cancel.
    return np.fft.fft(c).imag.copy()


def cutoff_for_tail(alpha: float, tol: float = 1e-10) -> int:
    """Cutoff beyond which the absolute kernel tail is below ``tol``.

    Uses the absolute-convergence bound sum_{d>N} d^-alpha < N^(1-alpha)/(alpha-1),
    so it requires alpha > 1; below that no finite cutoff reaches the bound.
    """
    if alpha <= 1.0:
        raise ValueError("tail bound requires alpha > 1; no finite cutoff exists")
    n = (tol * (alpha - 1.0)) ** (-1.0 / (alpha - 1.0))
    return max(2, int(math.ceil(n)))


def coupling_matrix(length: int, alpha: float) -> np.ndarray:
    """Staggered open-chain coupling matrix J[i, j] = (-1)^|i-j| / |i-j|^alpha.

    Zero on the diagonal; real symmetric.
    """
    if length < 2:
        raise InvalidPairError("coupling matrix needs at least two sites")
    d = np.abs(np.arange(length)[:, None] - np.arange(length)[None, :]).astype(float)
    np.fill_diagonal(d, 1.0)  # placeholder, wiped below
    j = (-1.0) ** d / d**alpha
    np.fill_diagonal(j, 0.0)
    return j


def wrapped_coupling_matrix(length: int, alpha: float, cutoff: int) -> np.ndarray:
    """Translationally invariant coupling on the periodic momentum grid.

    Circulant matrix whose grid Fourier transform equals
    :func:`fourier_kernel_grid`: entry (i, j) averages the folded weights
    at the residues +-(j - i) mod length, which is the real-space form of
    the translationally invariant quadratic coupling sum_k gamma_tilde_k
    a_k^dag a_k.  Requires cutoff < length so no weight lands on the
    diagonal.
    """
    cutoff = _check_cutoff(cutoff)
    if cutoff >= length:
        raise ValueError("wrapped couplings need cutoff < length")
    w = _weights(alpha, cutoff, order=0.0)
    per_residue = _folded(w, length)
    dist = (np.arange(length)[None, :] - np.arange(length)[:, None]) % length
    k = 0.5 * (per_residue[dist] + per_residue[(-dist) % length])
    np.fill_diagonal(k, 0.0)
    return k
