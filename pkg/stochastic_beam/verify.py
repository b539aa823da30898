""" Verify module """
from typing import List

from stochastic_beam.common.export import write_json
from stochastic_beam.common.logger import Logger
from stochastic_beam.common.models.criterion import Criterion
from stochastic_beam.config import RunConfig
from stochastic_beam.seqmodels.loader import ModelLoader
from stochastic_beam.suites.loader import SuiteLoader


class Verify:
    """Runs acceptance suites and prints every criterion with its measured value.

    Attributes:
        config: Run configuration
        suites: Suites to run
        criteria: Criteria measured so far
    """

    def __init__(self, config: RunConfig) -> None:
        self.config = config
        self.suites: List[str] = list(config.suites or SuiteLoader.SUITES)
        self.criteria: List[Criterion] = []
        if config.model:
            # fail early on a malformed model
            ModelLoader(config.model).load()

    def run(self) -> bool:
        """Run the suites.

        Returns:
            True when every criterion passed
        """
        loader = SuiteLoader(self.config)
        for suite in self.suites:
            Logger(__name__).info('Running suite %s (%s scale)', suite, self.config.scale)
            for criterion in loader.exec(suite):
                self.criteria.append(criterion)
                print(criterion, flush=True)
                if not criterion.passed:
                    Logger(__name__).error('%s failed', criterion.name)
        failed = [criterion for criterion in self.criteria if not criterion.passed]
        if self.config.report:
            write_json(self.config.report, {
                'scale': self.config.scale,
                'seed': self.config.seed,
                'passed': not failed,
                'criteria': [criterion.json_serialize() for criterion in self.criteria],
            })
        Logger(__name__).info('%d of %d criteria passed', len(self.criteria) - len(failed), len(self.criteria))
        return not failed
