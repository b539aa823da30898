"""Log importance weights against extended precision and across the series cut-off"""
from typing import List

import mpmath

from stochastic_beam.common.estimators import log_importance_weight
from stochastic_beam.common.models.criterion import Criterion
from stochastic_beam.settings import Settings
from stochastic_beam.suites.base_suite import BaseSuite


KAPPAS: List[float] = [-5.0, 0.0, 2.5]


def reference_weight(phi: float, kappa: float, digits: int = 60) -> float:
    """phi - log(1 - exp(-exp(phi - kappa))) in extended precision."""
    with mpmath.workdps(digits):
        phi_mp, kappa_mp = mpmath.mpf(phi), mpmath.mpf(kappa)
        return float(phi_mp - mpmath.log(-mpmath.expm1(-mpmath.exp(phi_mp - kappa_mp))))


class Suite(BaseSuite):
    name = 'stability-weights'

    def run(self) -> List[Criterion]:
        points = self.size(3000)
        error = 0.0
        for kappa in KAPPAS:
            for i in range(points + 1):
                phi = kappa - 40.0 + 30.0 * i / points
                exact = reference_weight(phi, kappa)
                error = max(error, abs(log_importance_weight(phi, kappa) - exact) / max(abs(exact), 1e-300))
        jump = 0.0
        for kappa in KAPPAS:
            cut = kappa + Settings.SERIES_CUTOFF
            jump = max(jump, abs(log_importance_weight(cut, kappa) - log_importance_weight(cut - 1e-12, kappa)))
        return [
            self.criterion('max relative error of log weights, phi - kappa in [-40, -10]', error, '<', 1e-10),
            self.criterion('jump of log weights across the series cut-off', jump, '<', 1e-9),
        ]
