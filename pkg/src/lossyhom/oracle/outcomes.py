from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from lossyhom.core.dilation import ENV_A, ENV_B, PORT_A

CHANNELS: tuple[str, ...] = ("p11", "p20", "p02", "p_one_lost", "p_both_lost")
_ENVIRONMENT = {ENV_A, ENV_B}


@dataclass(frozen=True)
class OutcomeDistribution:
    p11: float
    p20: float
    p02: float
    p_one_lost: float
    p_both_lost: float

    @property
    def p_lost(self) -> float:
        return self.p_one_lost + self.p_both_lost

    @property
    def total(self) -> float:
        return self.p11 + self.p20 + self.p02 + self.p_one_lost + self.p_both_lost

    def as_dict(self) -> dict[str, float]:
        return asdict(self)


def classify_ports(first: int, second: int) -> str:
    """Outcome channel for one photon in spatial port ``first`` and one in ``second``."""
    lost = (first in _ENVIRONMENT) + (second in _ENVIRONMENT)
    if lost == 2:
        return "p_both_lost"
    if lost == 1:
        return "p_one_lost"
    if first != second:
        return "p11"
    return "p20" if first == PORT_A else "p02"


def distribution_from_port_table(table: np.ndarray) -> OutcomeDistribution:
    """Collapse an upper-triangular 4x4 table of port-pair probabilities into outcome channels."""
    totals = dict.fromkeys(CHANNELS, 0.0)
    for first in range(4):
        for second in range(first, 4):
            totals[classify_ports(first, second)] += float(table[first, second])
    return OutcomeDistribution(**totals)

