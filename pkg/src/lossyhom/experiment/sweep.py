from __future__ import annotations

from typing import Iterable

import pandas as pd

from lossyhom.analytic.coincidence import g2_zero
from lossyhom.experiment.source import SourceSetting
from lossyhom.material import Branch, SplitterSource, splitter_for


def g2_sweep(
    source: SplitterSource, setting: SourceSetting, thetas: Iterable[float], branch: Branch | str = Branch.HEATING
) -> pd.DataFrame:
    """g2(0) at every film temperature, in the order given."""
    thetas = [float(theta) for theta in thetas]
    if not thetas:
        raise ValueError("g2_sweep needs at least one temperature.")
    state = setting.state()
    values = [g2_zero(splitter_for(source, theta, branch), state) for theta in thetas]
    return pd.DataFrame({"theta_c": thetas, "g2": values})
