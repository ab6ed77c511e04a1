from lossyhom.core.beam_splitter import (
    PHYSICAL_TOL,
    UNCONSTRAINED,
    BeamSplitter,
    PhysicalityReport,
    allowed_phase_arc,
    check_physical,
    clamp_to_arc,
    phase_bound,
    random_physical_bs,
    require_physical,
    scattering_matrix,
    wrap_phase,
)
from lossyhom.core.dilation import ENV_A, ENV_B, PORT_A, PORT_B, dilation_residual, singular_values, unitary_dilation

__all__ = [
    "PHYSICAL_TOL",
    "UNCONSTRAINED",
    "BeamSplitter",
    "PhysicalityReport",
    "allowed_phase_arc",
    "check_physical",
    "clamp_to_arc",
    "phase_bound",
    "random_physical_bs",
    "require_physical",
    "scattering_matrix",
    "wrap_phase",
    "ENV_A",
    "ENV_B",
    "PORT_A",
    "PORT_B",
    "dilation_residual",
    "singular_values",
    "unitary_dilation",
]
