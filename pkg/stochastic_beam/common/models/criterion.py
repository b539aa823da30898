""" Acceptance criterion model """
import math

from typing import Any, Callable, Dict

from stochastic_beam.common.exceptions.domain import DomainException


class Criterion:
    """Measured value of an acceptance check against its threshold.

    Attributes:
        suite: Suite that measured it
        name: What was measured
        measured: Measured value
        relation: One of `RELATIONS`, read as `measured relation threshold`
        threshold: Threshold
        passed: Whether the relation holds
    """
    RELATIONS: Dict[str, Callable[[float, float], bool]] = {
        '<': lambda a, b: a < b,
        '<=': lambda a, b: a <= b,
        '>': lambda a, b: a > b,
        '>=': lambda a, b: a >= b,
        '==': lambda a, b: a == b,
    }

    def __init__(self, suite: str, name: str, measured: float, relation: str, threshold: float) -> None:
        if relation not in self.RELATIONS:
            raise DomainException(f'unknown relation {relation}')
        self.suite = suite
        self.name = name
        self.measured = float(measured)
        self.relation = relation
        self.threshold = float(threshold)
        self.passed: bool = not math.isnan(self.measured) and self.RELATIONS[relation](self.measured, self.threshold)

    def json_serialize(self) -> Dict[str, Any]:
        return {
            'suite': self.suite,
            'name': self.name,
            'measured': self.measured,
            'relation': self.relation,
            'threshold': self.threshold,
            'passed': self.passed,
        }

    def __str__(self) -> str:
        return (f'{"PASS" if self.passed else "FAIL"} {self.suite}: {self.name} = {self.measured:.6g} '
                f'{self.relation} {self.threshold:.6g}')
