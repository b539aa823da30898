"""Suite loader"""
from typing import List

from stochastic_beam.common.exceptions.config import ConfigException
from stochastic_beam.common.models.criterion import Criterion
from stochastic_beam.config import RunConfig


class SuiteLoader:
    """In-house loader for acceptance suites.

    A suite `swor-law` lives in `stochastic_beam.suites.swor_law` as class `Suite`.
    """
    SUITES: List[str] = [
        'swor-law', 'sbs-law', 'ranking-law', 'coupling', 'truncated-marginals', 'stability-shift',
        'stability-weights', 'unbiasedness', 'consistency', 'variance-reduction', 'naive-bias',
        'cost', 'beam-exactness', 'diversity-bounds', 'determinism',
    ]

    def __init__(self, config: RunConfig) -> None:
        self.config = config

    def exec(self, name: str) -> List[Criterion]:
        """Runs a suite.

        Returns:
            Criteria measured by the suite
        Raises:
            ConfigException: unknown suite
        """
        if name not in self.SUITES:
            raise ConfigException(f'unknown suite {name}, choose from {", ".join(self.SUITES)}')
        return self.__build_factory(name, self.config).run()

    @staticmethod
    def __build_factory(name: str, config: RunConfig):
        """Helper factory builder. Loads the correct suite.

        Returns:
            an instance of Suite
        """
        module = __import__(f'stochastic_beam.suites.{name.replace("-", "_")}', fromlist=['Suite'])
        return getattr(module, 'Suite')(config)
