from lossyhom.oracle.fock import fock_outcomes
from lossyhom.oracle.outcomes import CHANNELS, OutcomeDistribution, classify_ports
from lossyhom.oracle.quadrature import FrequencyGrid, quad_outcomes
from lossyhom.oracle.sweep import OracleCase, SweepReport, draw_case, sweep_check

__all__ = [
    "CHANNELS",
    "FrequencyGrid",
    "OracleCase",
    "OutcomeDistribution",
    "SweepReport",
    "classify_ports",
    "draw_case",
    "fock_outcomes",
    "quad_outcomes",
    "sweep_check",
]
