""" Estimate report model """
import math

from typing import Any, List, Optional

from stochastic_beam.common.exceptions.estimator import EstimatorException


class EstimateReport:
    """One estimate of an expectation, as written to the estimate table.

    Attributes:
        method: One of `METHODS`
        k: Number of samples the estimate is based on
        temperature: Softmax temperature of the model
        replicate: Replicate index
        value: The estimate
        weight_sum: W(S) for importance weighted methods, the beam mass for beam search
    """
    METHODS: List[str] = ['MC', 'SBS_raw', 'SBS_normalized', 'BS_bound', 'BS_normalized']
    HEADER: List[str] = ['method', 'temperature', 'k', 'replicate', 'value', 'weight_sum']

    def __init__(self, method: str, k: int, temperature: float, replicate: int,
                 value: float, weight_sum: Optional[float] = None) -> None:
        if method not in self.METHODS:
            raise EstimatorException(f'unknown estimator {method}')
        if not math.isfinite(value):
            raise EstimatorException(f'{method} estimate is not finite: {value}')
        self.method = method
        self.k = k
        self.temperature = temperature
        self.replicate = replicate
        self.value = value
        self.weight_sum = weight_sum

    def sort_key(self) -> tuple:
        return self.METHODS.index(self.method), self.temperature, self.k, self.replicate

    def row(self) -> List[Any]:
        """CSV row in `HEADER` order."""
        return [
            self.method, repr(self.temperature), self.k, self.replicate, repr(self.value),
            '' if self.weight_sum is None else repr(self.weight_sum)
        ]
