""" Estimate module """
from typing import Any, Dict, List, Tuple

from stochastic_beam.common.estimators import (
    BleuFunctional, EntropyFunctional, Functional, estimate_all, summarize
)
from stochastic_beam.common.exceptions.config import ConfigException
from stochastic_beam.common.export import write_meta, write_table
from stochastic_beam.common.logger import Logger
from stochastic_beam.common.models.estimate_report import EstimateReport
from stochastic_beam.common.random_stream import RandomStream
from stochastic_beam.common.replicates import ReplicateRunner
from stochastic_beam.config import RunConfig
from stochastic_beam.search.beam_search import beam_search
from stochastic_beam.seqmodels.abstract_model import SequenceModel, TokenSeq
from stochastic_beam.seqmodels.loader import ModelLoader
from stochastic_beam.seqmodels.temperature import apply_temperature


DETERMINISTIC: List[str] = ['BS_bound', 'BS_normalized']


def resolve_reference(model: SequenceModel, config: RunConfig) -> TokenSeq:
    """Reference sequence from `--reference` text or from the best sequence of a wide beam.

    Raises:
        ConfigException: neither is given
    """
    if config.reference is not None:
        return model.content(model.encode(config.reference))
    if config.reference_beam is not None:
        return model.content(beam_search(model, config.reference_beam)[0].seq)
    raise ConfigException('a reference is required, use --reference or --reference-beam')


class EstimateTask:
    """One replicate of every stochastic estimator."""

    def __init__(self, model: SequenceModel, f: Functional, methods: List[str], k: int,
                 temperature: float, kappa_convention: str) -> None:
        self.model = model
        self.f = f
        self.methods = methods
        self.k = k
        self.temperature = temperature
        self.kappa_convention = kappa_convention

    def __call__(self, replicate: int, stream: RandomStream) -> List[EstimateReport]:
        return estimate_all(self.model, self.f, self.methods, self.k, replicate, stream,
                            self.temperature, self.kappa_convention)


class Estimate:
    """Estimates an expectation under the model with every estimator, over a temperature
    and sample size sweep, and writes the replicate estimates followed by summary rows.

    Attributes:
        config: Run configuration
        methods: Estimators to run
    """
    FUNCTIONALS: List[str] = ['entropy', 'bleu']

    def __init__(self, config: RunConfig) -> None:
        self.config = config
        self.methods: List[str] = []
        self.validate()

    def validate(self) -> None:
        """Method validating the estimate parameters."""
        if not self.config.model:
            raise ConfigException('estimate needs a model file, use --model')
        if self.config.functional not in self.FUNCTIONALS:
            raise ConfigException(
                f'unknown functional {self.config.functional}, choose from {", ".join(self.FUNCTIONALS)}'
            )
        methods = self.config.methods or ['all']
        if 'all' in methods:
            methods = EstimateReport.METHODS
        unknown = set(methods) - set(EstimateReport.METHODS)
        if unknown:
            raise ConfigException(f'unknown estimators: {", ".join(sorted(unknown))}')
        self.methods = [method for method in EstimateReport.METHODS if method in methods]
        if self.config.kappa_convention == 'sacrifice' and min(self.config.k_values) < 2:
            raise ConfigException('the sacrifice convention needs k >= 2')

    def run(self) -> None:
        model = ModelLoader(self.config.model).load()
        reference = resolve_reference(model, self.config) if self.config.functional == 'bleu' else ()
        reports: List[EstimateReport] = []
        for temperature in self.config.temperatures:
            tempered = apply_temperature(model, temperature)
            if self.config.functional == 'entropy':
                f: Functional = EntropyFunctional(tempered)
            else:
                f = BleuFunctional(reference, eos=model.eos)
            for k in self.config.k_values:
                Logger(__name__).info('Estimating at temperature %s with k = %d', temperature, k)
                reports.extend(self.estimate(tempered, f, k, temperature))
        reports.sort(key=EstimateReport.sort_key)
        rows = [report.row() for report in reports] + self.summary(reports)
        write_table(self.config.output, EstimateReport.HEADER, rows)
        write_meta(self.config.output, self.config)

    def estimate(self, model: SequenceModel, f: Functional, k: int, temperature: float) -> List[EstimateReport]:
        """Replicates of the stochastic estimators; beam search runs once and is repeated."""
        reports: List[EstimateReport] = []
        stochastic = [method for method in self.methods if method not in DETERMINISTIC]
        if stochastic:
            task = EstimateTask(model, f, stochastic, k, temperature, self.config.kappa_convention)
            runner = ReplicateRunner(self.config.seed, self.config.threads)
            for replicate_reports in runner.run(task, self.config.replicates, desc=f'T={temperature} k={k}'):
                reports.extend(replicate_reports)
        deterministic = [method for method in self.methods if method in DETERMINISTIC]
        if deterministic:
            once = estimate_all(model, f, deterministic, k, 0, RandomStream(self.config.seed), temperature)
            for replicate in range(self.config.replicates):
                reports.extend(
                    EstimateReport(report.method, report.k, report.temperature, replicate,
                                   report.value, report.weight_sum)
                    for report in once
                )
        return reports

    @staticmethod
    def summary(reports: List[EstimateReport]) -> List[List[Any]]:
        """Mean and percentile rows per (method, temperature, k), in table order."""
        groups: Dict[Tuple[str, float, int], List[float]] = {}
        for report in reports:
            groups.setdefault((report.method, report.temperature, report.k), []).append(report.value)
        rows: List[List[Any]] = []
        for (method, temperature, k), values in groups.items():
            stats = summarize(values)
            rows.append([method, repr(temperature), k, 'mean', repr(stats['mean']), ''])
            rows.append([method, repr(temperature), k, 'p2.5', repr(stats['low']), ''])
            rows.append([method, repr(temperature), k, 'p97.5', repr(stats['high']), ''])
        return rows
