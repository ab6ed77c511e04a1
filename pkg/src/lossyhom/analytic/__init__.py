from lossyhom.analytic.coincidence import CONVENTIONS, baseline_p11, g2_zero, p11, p_absorbed, p_bunch
from lossyhom.analytic.scan import HOMScan, HOMScanPoint, hom_scan, visibility
from lossyhom.analytic.state import BiphotonState, thz_to_rad_per_ps

__all__ = [
    "CONVENTIONS",
    "BiphotonState",
    "HOMScan",
    "HOMScanPoint",
    "baseline_p11",
    "g2_zero",
    "hom_scan",
    "p11",
    "p_absorbed",
    "p_bunch",
    "thz_to_rad_per_ps",
    "visibility",
]
