"""Main app module"""
from typing import Optional, Sequence

from stochastic_beam.args_builder import ArgsBuilder
from stochastic_beam.common.exceptions.app import AppException
from stochastic_beam.common.exceptions.budget import BudgetException
from stochastic_beam.common.exceptions.config import ConfigException
from stochastic_beam.common.exceptions.domain import DomainException
from stochastic_beam.common.exceptions.estimator import EstimatorException
from stochastic_beam.common.exceptions.model import ModelException
from stochastic_beam.common.logger import Logger
from stochastic_beam.config import RunConfig
from stochastic_beam.diversity import Diversity
from stochastic_beam.estimate import Estimate
from stochastic_beam.sample import Sample
from stochastic_beam.train import Train
from stochastic_beam.verify import Verify


class App:
    """The class implements core methods.

    Attributes:
        args: Command-line argument builder
    """
    EXIT_OK: int = 0
    EXIT_FAILED: int = 1
    EXIT_INPUT: int = 2

    def __init__(self) -> None:
        try:
            self.args = ArgsBuilder()
        except IOError as ex:
            raise AppException(ex)

    def build_args(self) -> None:
        """Builds command-line arguments."""
        self.args.build()

    def run(self, argv: Optional[Sequence[str]] = None) -> int:
        """Parse parameters and execute commands.

        Returns:
            Exit code: 0 success, 1 failed acceptance criteria, 2 input error
        """
        params = self.args.parse(argv)
        try:
            config = RunConfig.from_args(params)
            Logger(__name__).set_level(config.verbose)
            if config.command == 'sample':
                Sample(config).run()
            elif config.command == 'estimate':
                Estimate(config).run()
            elif config.command == 'diversity':
                Diversity(config).run()
            elif config.command == 'train':
                Train(config).run()
            elif config.command == 'verify':
                if not Verify(config).run():
                    return self.EXIT_FAILED
            else:
                raise ConfigException(f'Command {config.command} not recognized!')
        except BudgetException as ex:
            Logger(__name__).error('Budget exhausted: %s', ex)
            return self.EXIT_INPUT
        except (ConfigException, ModelException, DomainException, EstimatorException, IOError) as ex:
            Logger(__name__).error('%s', ex)
            return self.EXIT_INPUT
        return self.EXIT_OK
