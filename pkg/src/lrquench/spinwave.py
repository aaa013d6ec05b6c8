"""Harmonic spin-wave layer: classical angle, dispersion, regime analysis.

The chain is rotated site by site into a frame aligned with the classical
ground state (a uniform tilt of angle ``angle`` away from the field axis,
with a staggered twist absorbed into the sign of the couplings).  At
harmonic order the Hamiltonian is quadratic in bosons; each momentum mode
carries a number coefficient B_k, a pair-creation coefficient A_k, and a
Bogoliubov frequency omega_k = sqrt(B_k^2 - 4 A_k^2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import NumericFailureError, SpinWaveInstabilityError, ValidationError
from .kernels import fourier_kernel, fourier_kernel_grid, fourier_kernel_prime_grid
from .model import ModelParams, MomentumGrid, validate

#: Tolerance below which a tiny negative omega^2 is clamped to zero.
OMEGA2_CLAMP = 1e-12


@dataclass(frozen=True)
class SpinWaveSetup:
    """Classical reference frame for the harmonic expansion.

    ``angle`` is the tilt of the classical spin direction away from the
    field axis; ``kernel_zero`` is the k = 0 kernel sum entering the
    classical energy; ``cutoff`` is the largest coupling distance kept.
    """

    params: ModelParams
    angle: float
    kernel_zero: float
    cutoff: int


def classical_energy(angle: float, theta: float, kernel_zero: float,
                     length: int, spin: float) -> float:
    """Energy of the uniformly tilted classical spin configuration."""
    two_s = 2.0 * spin
    return length * (
        two_s**2 * math.sin(theta) * math.sin(angle) ** 2 * kernel_zero
        - two_s * math.cos(theta) * math.cos(angle)
    )


def solve_classical_angle(params: ModelParams, cutoff: int | None = None) -> SpinWaveSetup:
    """Minimize the classical energy over the tilt angle in [0, pi].

    Bracketed scalar minimization to absolute tolerance 1e-10 in the angle.
    The returned angle is verified to be a local minimum.
    """
    validate(params)
    if cutoff is None:
        cutoff = params.length - 1
    k0 = fourier_kernel(0.0, params.alpha, cutoff)

    def energy(angle: float) -> float:
        return classical_energy(angle, params.theta, k0, params.length, params.spin)

    res = minimize_scalar(energy, bounds=(0.0, math.pi), method="bounded",
                          options={"xatol": 1e-10, "maxiter": 500})
    if not res.success or not np.isfinite(res.x):
        raise NumericFailureError("classical-angle minimization did not converge")
    angle = float(res.x)
    # The energy is even around 0 and pi, so the boundary cases snap cleanly.
    if energy(0.0) <= res.fun:
        angle = 0.0
    elif energy(math.pi) <= res.fun:
        angle = math.pi
    eps = 1e-4
    e0 = energy(angle)
    scale = abs(e0) + 1.0
    if energy(angle - eps) < e0 - 1e-9 * scale or energy(angle + eps) < e0 - 1e-9 * scale:
        raise NumericFailureError("classical angle is not a local energy minimum")
    return SpinWaveSetup(params=params, angle=angle, kernel_zero=float(k0),
                         cutoff=int(cutoff))


def _coefficients(setup: SpinWaveSetup) -> tuple[float, float]:
    """(g, eps): pair-coupling prefactor and uniform on-site energy."""
    p = setup.params
    two_s = 2.0 * p.spin
    s, c = math.sin(p.theta), math.cos(p.theta)
    cg, sg = math.cos(setup.angle), math.sin(setup.angle)
    g = two_s * s * cg**2
    eps = 2.0 * c * cg - 4.0 * two_s * s * sg**2 * setup.kernel_zero
    return g, eps


@dataclass(frozen=True)
class DispersionData:
    """Per-mode quantities on the momentum grid plus velocity summaries.

    The closed-form group velocity is
        v(k) = vc_num * K'(k) / sqrt(vc_lin * K(k) + vc_const)
    with K the kernel sum; it agrees with the derivative of omega.
    """

    setup: SpinWaveSetup
    k: np.ndarray
    kernel: np.ndarray
    kernel_prime: np.ndarray
    pair_coeff: np.ndarray
    diag_coeff: np.ndarray
    omega: np.ndarray
    group_velocity: np.ndarray
    v_max: float
    mode_at_vmax: int
    k_at_vmax: float
    vc_num: float
    vc_lin: float
    vc_const: float

    @property
    def cosh_2beta(self) -> np.ndarray:
        """Bogoliubov cosh(2 beta_k) = B_k / omega_k."""
        return self.diag_coeff / self.omega

    @property
    def sinh_2beta(self) -> np.ndarray:
        """Bogoliubov sinh(2 beta_k) = -2 A_k / omega_k."""
        return -2.0 * self.pair_coeff / self.omega


def build_dispersion(setup: SpinWaveSetup) -> DispersionData:
    """Evaluate the harmonic dispersion on the momentum grid.

    Raises SpinWaveInstabilityError when any squared frequency is negative
    beyond roundoff; values in [-1e-12, 0] are clamped to zero.
    """
    p = setup.params
    length = p.length
    grid = MomentumGrid(length)
    k = grid.modes
    kern = fourier_kernel_grid(length, p.alpha, setup.cutoff)
    kern_prime = fourier_kernel_prime_grid(length, p.alpha, setup.cutoff)
    g, eps = _coefficients(setup)
    pair = g * kern
    diag = 2.0 * g * kern + eps
    omega2 = diag**2 - 4.0 * pair**2
    worst = int(np.argmin(omega2))
    if omega2[worst] < -OMEGA2_CLAMP:
        raise SpinWaveInstabilityError(
            f"omega^2 = {omega2[worst]:.3e} < 0 at mode {worst} "
            f"(k = {k[worst]:.6f}); harmonic expansion invalid here"
        )
    omega = np.sqrt(np.clip(omega2, 0.0, None))
    vc_num = 2.0 * g * eps
    vc_lin = 4.0 * g * eps
    vc_const = eps**2
    with np.errstate(divide="ignore", invalid="ignore"):
        vg = np.where(omega > 0.0, vc_num * kern_prime / np.where(omega > 0, omega, 1.0), 0.0)
    speeds = np.abs(vg)
    speeds[0] = -np.inf  # the k = 0 mode never counts as the maximum
    mode = int(np.argmax(speeds))
    return DispersionData(
        setup=setup,
        k=k,
        kernel=kern,
        kernel_prime=kern_prime,
        pair_coeff=pair,
        diag_coeff=diag,
        omega=omega,
        group_velocity=vg,
        v_max=float(abs(vg[mode])),
        mode_at_vmax=mode,
        k_at_vmax=float(k[mode]),
        vc_num=vc_num,
        vc_lin=vc_lin,
        vc_const=vc_const,
    )


def classify_regime(alpha: float) -> str:
    """Regime label as a pure function of alpha (boundaries at 1 and 2)."""
    if alpha >= 2.0:
        return "short-range-like"
    if alpha > 1.0:
        return "weakly-long-range"
    return "non-local"


def is_marginal(alpha: float) -> bool:
    """True on the regime boundaries alpha = 1 or alpha = 2."""
    return abs(alpha - 1.0) < 1e-12 or abs(alpha - 2.0) < 1e-12


def fast_mode_count(theta: float, alpha: float, length: int, t0: float,
                    spin: float = 0.5) -> int:
    """Number of grid modes fast enough to cross the half chain by t0.

    Counts modes with |v(k)| > (L/2) / t0 on the finite-chain dispersion.
    """
    params = ModelParams(theta=theta, alpha=alpha, length=length, spin=spin)
    disp = build_dispersion(solve_classical_angle(params))
    threshold = 0.5 * length / t0
    return int(np.count_nonzero(np.abs(disp.group_velocity) > threshold))


@dataclass(frozen=True)
class RegimeReport:
    """Finite-size scaling summary for one (theta, alpha) choice."""

    theta: float
    alpha: float
    regime: str
    marginal: bool
    lengths: list[int]
    v_max_by_length: list[float]
    k_at_vmax_by_length: list[float]
    boundary_time_by_length: list[float]
    fast_mode_counts: list[int]
    fitted_exponent: float
    mode_count_exponent: float | None
    t0: float


def velocity_scaling(theta: float, alpha: float, lengths, t0: float = 50.0,
                     spin: float = 0.5) -> RegimeReport:
    """Sweep chain lengths and fit the growth exponent of v_max.

    Requires at least four geometrically spaced lengths.  Also reports the
    boundary time t_b = L / (2 v_max) and the fast-mode count at ``t0``.
    """
    lengths = [int(n) for n in lengths]
    if len(lengths) < 4:
        raise ValidationError(["too-few-lengths"])
    ratios = np.diff(np.log(np.asarray(lengths, dtype=float)))
    if np.any(ratios <= 0) or np.ptp(ratios) > 0.05 * np.mean(ratios):
        raise ValidationError(["lengths-not-geometric"])

    v_max, k_at, t_b, counts = [], [], [], []
    for n in lengths:
        params = ModelParams(theta=theta, alpha=alpha, length=n, spin=spin)
        disp = build_dispersion(solve_classical_angle(params))
        v_max.append(disp.v_max)
        k_at.append(disp.k_at_vmax)
        t_b.append(0.5 * n / disp.v_max)
        counts.append(int(np.count_nonzero(
            np.abs(disp.group_velocity) > 0.5 * n / t0)))

    slope = float(np.polyfit(np.log(lengths), np.log(v_max), 1)[0])
    count_slope = None
    if all(c > 0 for c in counts):
        count_slope = float(np.polyfit(np.log(lengths), np.log(counts), 1)[0])
    return RegimeReport(
        theta=theta,
        alpha=alpha,
        regime=classify_regime(alpha),
        marginal=is_marginal(alpha),
        lengths=lengths,
        v_max_by_length=v_max,
        k_at_vmax_by_length=k_at,
        boundary_time_by_length=t_b,
        fast_mode_counts=counts,
        fitted_exponent=slope,
        mode_count_exponent=count_slope,
        t0=t0,
    )
