"""vortexmech: magnetic-vortex / nanomechanical / NV hybrid simulator.

Submodules
----------
params       material and geometry inputs -> derived device parameters
operators    dense operators and Hamiltonians on truncated spaces
lindblad     thermal master-equation integration
thiele       classical ring-down surrogate and FFT spectrum
experiments  parameter sweeps and time-domain experiments
config       device-description config files
output       CSV / SVG / provenance writers
cli          command-line entry point
"""

from .config import RunConfig, parse_config, parse_config_text, serialize_config
from .constants import GAMMA_G, HBAR, K_B, MU0, MU_B, TWO_PI
from .errors import (DimensionMismatchError, GeometryWarning,
                     IntegrationError, ValidationError, VortexmechError)
from .experiments import (EffectiveComparison, EffectiveParams, SweepGrid,
                          effective_rates, rebuild_grid,
                          run_effective_comparison, run_transfer_experiment,
                          sweep_detuning, sweep_radius, sweep_usc)
from .lindblad import (CollapseChannel, DensityState, EvolutionResult,
                       OpenSystemModel, TimeSeries, Tolerances,
                       dephasing_channel, evolve, expectation, lindblad_rhs,
                       steady_state_occupation, thermal_channels,
                       unitary_evolution)
from .operators import (DressedSpinParams, QOperator, SpaceSignature,
                        Subsystem, boson_annihilator, boson_space,
                        build_H_eff, build_H_jc, build_H_tripartite,
                        build_H_vc, compose, dressed_transform,
                        dressed_transform_from_drive, effective_coupling,
                        embed, fock_state, identity, mode_operators,
                        number_operator, nv_drive_parameters, sigma_minus,
                        sigma_z, total_excitation, tripartite_space,
                        two_level_space, vortex_spin_space)
from .params import (CantileverGeometry, DerivedParams, DipoleMagnet,
                     DiscGeometry, Material, Placement, UscMetrics, cofe,
                     coupling_nc, coupling_vc, coupling_vn,
                     cantilever_frequency, derive_parameters, dipole_field_map,
                     dipole_gradient, effective_mass_and_zero_point,
                     exchange_length, gyrotropic_frequency,
                     thermal_occupation, tip_mass_for_frequency, usc_metrics,
                     vortex_core_radius, vortex_linewidth, yig,
                     zero_point_magnetization)
from .thiele import (CoreTrajectory, Peak, RingDownProtocol, SpectrumResult,
                     attach_peaks, default_protocol, detect_peaks,
                     linewidth_fwhm, power_spectrum, simulate_ring_down)

__version__ = "0.1.0"
