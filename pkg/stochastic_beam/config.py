"""Configuration module"""
import os

from argparse import Namespace
from typing import Any, Dict, List, Optional

from yaml import YAMLError, safe_load

from stochastic_beam.common.exceptions.config import ConfigException
from stochastic_beam.settings import Settings


class RunConfig:
    """Resolved configuration of one command.

    Values come from the built-in defaults, then from the YAML file given with `--config`,
    then from the command line; later sources win.

    Attributes:
        command: Sub-command name
        model: Path to a `.tree` or Markov `.json` model file
        corpus: Path to a training corpus
        method: Sampling method of `sample`
        methods: Methods of `estimate` or `diversity`, None for the command default
        functional: Functional of `estimate`
        reference: Reference text for BLEU
        reference_beam: Width of the beam whose best sequence is the reference
        estimator: Draw `sample` in estimator mode
        output: Output path, None for stdout
        report: Path of the JSON report of `verify`
        suites: Suites of `verify`, None for all
    """

    KAPPA_CONVENTIONS: List[str] = ['extend', 'sacrifice']
    SCALES: List[str] = ['quick', 'full']

    def __init__(self) -> None:
        self.command: Optional[str] = None
        self.model: Optional[str] = None
        self.corpus: Optional[str] = None
        self.method: str = 'sbs'
        self.methods: Optional[List[str]] = None
        self.functional: str = 'entropy'
        self.reference: Optional[str] = None
        self.reference_beam: Optional[int] = None
        self.estimator: bool = False
        self.output: Optional[str] = None
        self.report: Optional[str] = None
        self.suites: Optional[List[str]] = None
        self.verbose: bool = False
        self._order: int = 2
        self._alpha: float = 0.1
        self._max_len: int = Settings.MARKOV['MAX_LEN']
        self._temperatures: List[float] = [1.0]
        self._k_values: List[int] = [2]
        self._replicates: int = 100
        self._seed: int = self.default_seed()
        self._max_draws: int = 10000
        self._kappa_convention: str = 'extend'
        self._threads: int = Settings.THREAD_NUM
        self._scale: str = 'quick'

    @staticmethod
    def default_seed() -> int:
        """Seed from the environment if set, else the built-in default."""
        value = os.environ.get(Settings.SEED_ENV)
        if value is None or not value.strip():
            return Settings.DEFAULT_SEED
        try:
            return RunConfig.check_seed(int(value))
        except ValueError:
            raise ConfigException(f'{Settings.SEED_ENV}={value!r} is not an integer seed')

    @staticmethod
    def check_seed(seed: int) -> int:
        if not 0 <= seed < 2 ** 64:
            raise ConfigException(f'seed must be a non-negative 64-bit integer, got {seed}')
        return seed

    @property
    def order(self) -> int:
        """Return Markov context length."""
        return self._order

    @order.setter
    def order(self, order: int) -> None:
        if int(order) < 1:
            raise ConfigException(f'order must be at least 1, got {order}')
        self._order = int(order)

    @property
    def alpha(self) -> float:
        """Return additive smoothing."""
        return self._alpha

    @alpha.setter
    def alpha(self, alpha: float) -> None:
        if float(alpha) < 0:
            raise ConfigException(f'alpha must be non-negative, got {alpha}')
        self._alpha = float(alpha)

    @property
    def max_len(self) -> int:
        return self._max_len

    @max_len.setter
    def max_len(self, max_len: int) -> None:
        if int(max_len) < 1:
            raise ConfigException(f'max_len must be at least 1, got {max_len}')
        self._max_len = int(max_len)

    @property
    def temperatures(self) -> List[float]:
        """Return temperature sweep."""
        return self._temperatures

    @temperatures.setter
    def temperatures(self, temperatures: Any) -> None:
        values = [float(t) for t in self._as_list(temperatures)]
        if not values or any(not t > 0 for t in values):
            raise ConfigException(f'temperatures must be positive, got {values}')
        self._temperatures = values

    @property
    def k_values(self) -> List[int]:
        """Return sample size sweep."""
        return self._k_values

    @k_values.setter
    def k_values(self, k_values: Any) -> None:
        values = [int(k) for k in self._as_list(k_values)]
        if not values or any(k < 1 for k in values):
            raise ConfigException(f'k must be at least 1, got {values}')
        self._k_values = values

    @property
    def replicates(self) -> int:
        return self._replicates

    @replicates.setter
    def replicates(self, replicates: int) -> None:
        if int(replicates) < 1:
            raise ConfigException(f'replicates must be at least 1, got {replicates}')
        self._replicates = int(replicates)

    @property
    def seed(self) -> int:
        return self._seed

    @seed.setter
    def seed(self, seed: int) -> None:
        self._seed = self.check_seed(int(seed))

    @property
    def max_draws(self) -> int:
        """Return draw budget of rejection sampling."""
        return self._max_draws

    @max_draws.setter
    def max_draws(self, max_draws: int) -> None:
        if int(max_draws) < 1:
            raise ConfigException(f'max_draws must be at least 1, got {max_draws}')
        self._max_draws = int(max_draws)

    @property
    def kappa_convention(self) -> str:
        """Return how `k` maps to the stochastic beam width in estimator mode."""
        return self._kappa_convention

    @kappa_convention.setter
    def kappa_convention(self, convention: str) -> None:
        if convention not in self.KAPPA_CONVENTIONS:
            raise ConfigException(
                f'kappa convention must be one of {", ".join(self.KAPPA_CONVENTIONS)}, got {convention}'
            )
        self._kappa_convention = convention

    @property
    def threads(self) -> int:
        return self._threads

    @threads.setter
    def threads(self, threads: int) -> None:
        if int(threads) < 1:
            raise ConfigException(f'threads must be at least 1, got {threads}')
        self._threads = int(threads)

    @property
    def scale(self) -> str:
        """Return size of the verification runs."""
        return self._scale

    @scale.setter
    def scale(self, scale: str) -> None:
        if scale not in self.SCALES:
            raise ConfigException(f'scale must be one of {", ".join(self.SCALES)}, got {scale}')
        self._scale = scale

    @staticmethod
    def _as_list(value: Any) -> List[Any]:
        if isinstance(value, (list, tuple)):
            return list(value)
        return [value]

    def update(self, values: Dict[str, Any]) -> 'RunConfig':
        """Set every value that is not None.

        Raises:
            ConfigException: unknown key or invalid value
        """
        for key, value in values.items():
            if value is None:
                continue
            if key.startswith('_') or not hasattr(self, key):
                raise ConfigException(f'unknown configuration key {key}')
            try:
                setattr(self, key, value)
            except (TypeError, ValueError) as ex:
                raise ConfigException(f'invalid value {value!r} for {key}: {ex}')
        return self

    def parse(self, path: Optional[str]) -> 'RunConfig':
        """
        Method for parsing the configuration file.

        Args:
            path (string): path to YAML configuration file
        """
        if path:
            try:
                with open(path, 'r', encoding='utf-8') as in_file:
                    try:
                        data = safe_load(in_file)
                    except YAMLError as ex:
                        raise ConfigException(ex)
            except IOError as ex:
                raise ConfigException(ex)
            if data is None:
                return self
            if not isinstance(data, dict):
                raise ConfigException(f'{path} must contain a mapping of configuration keys')
            self.update({str(key).replace('-', '_'): value for key, value in data.items()})
        return self

    @classmethod
    def from_args(cls, params: Namespace) -> 'RunConfig':
        """Defaults, then the `--config` file, then explicit command-line values."""
        values = dict(vars(params))
        config = cls().parse(values.pop('config', None))
        config.command = values.pop('command', None)
        return config.update(values)

    def json_serialize(self) -> Dict[str, Any]:
        """Resolved configuration as written to the metadata sidecar."""
        return {
            'command': self.command,
            'model': self.model,
            'corpus': self.corpus,
            'order': self.order,
            'alpha': self.alpha,
            'max_len': self.max_len,
            'method': self.method,
            'methods': self.methods,
            'functional': self.functional,
            'reference': self.reference,
            'reference_beam': self.reference_beam,
            'estimator': self.estimator,
            'temperatures': self.temperatures,
            'k_values': self.k_values,
            'replicates': self.replicates,
            'seed': self.seed,
            'max_draws': self.max_draws,
            'kappa_convention': self.kappa_convention,
            'suites': self.suites,
            'scale': self.scale,
            'output': self.output,
        }
