"""Every command writes the same bytes when run twice with the same configuration and seed"""
import os
import tempfile

from typing import Callable, Dict, List

from stochastic_beam.common.models.criterion import Criterion
from stochastic_beam.config import RunConfig
from stochastic_beam.diversity import Diversity
from stochastic_beam.estimate import Estimate
from stochastic_beam.sample import Sample
from stochastic_beam.settings import Settings
from stochastic_beam.suites.base_suite import BaseSuite
from stochastic_beam.train import Train


def read_bytes(path: str) -> bytes:
    with open(path, 'rb') as in_file:
        return in_file.read()


class Suite(BaseSuite):
    name = 'determinism'

    def configs(self) -> Dict[str, Callable[[int, str], RunConfig]]:
        """Command name -> builder of its configuration for a thread count and output path."""
        model = self.config.model or Settings.EXAMPLE_TREE
        seed = self.config.seed
        replicates = self.size(200)

        def sample(threads: int, output: str) -> RunConfig:
            return RunConfig().update({'command': 'sample', 'model': model, 'method': 'sbs', 'k_values': 3,
                                       'seed': seed, 'output': output})

        def estimate(threads: int, output: str) -> RunConfig:
            return RunConfig().update({'command': 'estimate', 'model': model, 'k_values': [2, 4],
                                       'temperatures': [0.5, 1.0], 'replicates': replicates,
                                       'threads': threads, 'seed': seed, 'output': output})

        def diversity(threads: int, output: str) -> RunConfig:
            return RunConfig().update({'command': 'diversity', 'model': model, 'k_values': [2],
                                       'reference_beam': 2, 'replicates': replicates,
                                       'threads': threads, 'seed': seed, 'output': output})

        def train(threads: int, output: str) -> RunConfig:
            return RunConfig().update({'command': 'train', 'corpus': Settings.CORPUS, 'order': 2,
                                       'output': output})

        return {'sample': sample, 'estimate': estimate, 'diversity': diversity, 'train': train}

    def run(self) -> List[Criterion]:
        commands = {'sample': Sample, 'estimate': Estimate, 'diversity': Diversity, 'train': Train}
        differing = 0
        with tempfile.TemporaryDirectory() as workdir:
            for name, build in self.configs().items():
                outputs = []
                for run, threads in enumerate((1, self.config.threads)):
                    path = os.path.join(workdir, f'{name}.{run}.out')
                    commands[name](build(threads, path)).run()
                    meta = f'{path}.meta.json'
                    outputs.append((read_bytes(path), read_bytes(meta) if os.path.exists(meta) else b''))
                if outputs[0][0] != outputs[1][0] or outputs[0][1].replace(b'.0.out', b'.1.out') != outputs[1][1]:
                    differing += 1
        return [self.criterion('commands whose two runs differ', differing, '==', 0)]
