"""Weak-probe pair propagation through a coherently driven double-Lambda medium.

The package covers three tiers of the same physics:

* closed-form propagation of two weak probes under constant or slowly
  varying control fields (:mod:`cptvortex.analytic`),
* single-atom density-matrix dynamics (:mod:`cptvortex.bloch`),
* the coupled Maxwell-Bloch space-time integration used to validate the
  closed forms (:mod:`cptvortex.mbe`),

plus transverse structure (optical vortices, :mod:`cptvortex.vortex`) and a
small config/CLI layer for reproducible runs.
"""

from .errors import (CptVortexError, DegenerateProfileError, DivergenceError,
                     ValidationError)
from .core import (BASIS, DensityMatrix, MediumParams, MixingAngle, RabiPair,
                   beta, cpt_state_matrix, dark_state, mixing_angle)
from .profiles import (AdiabaticityReport, ControlProfile,
                       adiabaticity_report, load_tabulated, theta_array,
                       theta_of_z, theta_prime)
from .analytic import (AdiabaticTransform, PropagationMatrix,
                       PropagationResult, adiabatic_transform,
                       bright_projector, conversion_efficiency,
                       max_constant_efficiency, propagate_adiabatic,
                       propagate_constant, propagation_matrix, rotation)
from .bloch import (AtomParams, BlochState, BlochTrajectory, bloch_rhs,
                    e1e1_rhs, evolve, max_step, steady_coherences)
from .mbe import (ComparisonResult, InputPulse, MbeResult, SimGrid,
                  analytic_for, analytic_reference, compare_analytic,
                  energy_conversion, intensity_profile, simulate, warmup)
from .vortex import (DiffractionResult, TransverseField, accumulated_phase,
                     azimuthal_variance, crosscheck_radial, diffraction_check,
                     make_vortex, peak_radius, propagate_transverse,
                     ring_samples, transfer_scalars, winding_number)
from .config import (ExperimentConfig, VortexSpec, build_config, load_config,
                     parse_config_text)
from .presets import get_preset_config, preset_names, run_preset
from .sweep import SweepResult, SweepSpec, run_sweep

__version__ = "0.1.0"

__all__ = [
    "AdiabaticTransform", "AdiabaticityReport", "AtomParams", "BASIS",
    "BlochState", "BlochTrajectory", "ComparisonResult", "ControlProfile",
    "CptVortexError", "DegenerateProfileError", "DensityMatrix",
    "DiffractionResult", "DivergenceError", "ExperimentConfig", "InputPulse",
    "MbeResult", "MediumParams", "MixingAngle", "PropagationMatrix",
    "PropagationResult", "RabiPair", "SimGrid", "SweepResult", "SweepSpec",
    "TransverseField", "ValidationError", "VortexSpec", "accumulated_phase",
    "adiabatic_transform", "adiabaticity_report", "analytic_for",
    "analytic_reference", "azimuthal_variance", "beta", "bloch_rhs",
    "bright_projector", "build_config", "compare_analytic",
    "conversion_efficiency", "cpt_state_matrix", "crosscheck_radial",
    "dark_state", "diffraction_check", "e1e1_rhs", "energy_conversion",
    "evolve",
    "get_preset_config", "intensity_profile", "load_config", "load_tabulated",
    "make_vortex", "max_constant_efficiency", "max_step", "mixing_angle",
    "parse_config_text", "peak_radius", "preset_names",
    "propagate_adiabatic", "propagate_constant", "propagate_transverse",
    "propagation_matrix", "ring_samples", "rotation", "run_preset",
    "run_sweep", "simulate", "steady_coherences", "theta_array",
    "theta_of_z", "theta_prime", "transfer_scalars", "warmup",
    "winding_number",
]
