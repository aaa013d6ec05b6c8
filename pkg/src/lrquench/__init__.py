"""Local-quench dynamics in the long-range transverse-field Ising chain.

Two engines compute the spreading of a single spin flip: a harmonic
(spin-wave) engine that scales to hundreds of sites, and an exact
diagonalization oracle capped at 14 sites.  Supporting modules provide
the power-law kernel sums, a reproducing-condition probe for the
couplings, and a CLI that serializes everything to CSV/JSON.
"""

__version__ = "0.1.0"

from .errors import (DegenerateQuenchError, EntropyDomainError,
                     GaplessModeError, InvalidPairError, LRQuenchError,
                     NumericFailureError, SizeCapError,
                     SpinWaveInstabilityError, ValidationError)
from .model import ModelParams, MomentumGrid, coupling, default_quench_site, validate
from .kernels import (coupling_matrix, cutoff_for_tail, fourier_kernel,
                      fourier_kernel_grid, fourier_kernel_prime,
                      fourier_kernel_prime_grid, wrapped_coupling_matrix)
from .spinwave import (DispersionData, RegimeReport, SpinWaveSetup,
                       build_dispersion, classify_regime, fast_mode_count,
                       is_marginal, solve_classical_angle, velocity_scaling)
from .gaussian import (GaussianState, SWTrajectory, apply_local_quench,
                       entropy_profile, ground_state_correlators,
                       lswt_energy, magnetization_profile, run_quench,
                       single_site_entropy, step)
from .ed import (EDHamiltonian, EDState, EDTrajectory, EntanglementData,
                 apply_sigma_x, build_hamiltonian, delta_m_profile,
                 energy_expectation, entanglement, evolve, ground_state,
                 quench_trajectory)
from .reproducing import (ReproducingReport, index_to_symmetric, lower_bound,
                          p_value, sample_pairs, scan, symmetric_to_index)

__all__ = [name for name in dir() if not name.startswith("_")]
