from .diffusion import (DiffusionEstimate, LayerScanResult, measure_diffusion,
                        measure_layer_width, mean_layer_period,
                        resonance_center_action, scan_initial_phase,
                        separatrix_state)
from .drive import DriveParams, paper_drive
from .hamiltonian import ClassicalState, energy, hamiltonian_and_derivatives, wrap_angle
from .trajectory import (IntegrationError, StepPolicy, Trajectory, integrate,
                         oscillation_frequency, poincare_section,
                         theta1_crossing_times)
from .widths import (ResonanceWidths, chaotic_layer_half_width, check_overlap,
                     resonance_widths, theoretical_diffusion)

__all__ = [
    "ClassicalState", "DiffusionEstimate", "DriveParams", "IntegrationError",
    "LayerScanResult", "ResonanceWidths", "StepPolicy", "Trajectory",
    "chaotic_layer_half_width", "check_overlap", "energy",
    "hamiltonian_and_derivatives", "integrate", "measure_diffusion",
    "measure_layer_width", "mean_layer_period", "oscillation_frequency",
    "paper_drive", "poincare_section", "resonance_center_action",
    "resonance_widths", "scan_initial_phase", "separatrix_state",
    "theoretical_diffusion", "theta1_crossing_times", "wrap_angle",
]
