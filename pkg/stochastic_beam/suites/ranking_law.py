"""Full rankings drawn by stochastic beam search against the Plackett-Luce law"""
from typing import List

from stochastic_beam.common.models.criterion import Criterion
from stochastic_beam.common.oracle import chi_square_pvalue, chi_square_stat, enumerate_leaves, swor_table
from stochastic_beam.seqmodels.loader import ModelLoader
from stochastic_beam.settings import Settings
from stochastic_beam.suites.base_suite import BaseSuite
from stochastic_beam.suites.sbs_law import StochasticBeamDraw


class Suite(BaseSuite):
    name = 'ranking-law'

    def run(self) -> List[Criterion]:
        model = ModelLoader(Settings.FOUR_LEAF_TREE).load()
        table = enumerate_leaves(model)
        k = len(table)
        counts = self.count(StochasticBeamDraw(model, table, k), self.size(100000))
        statistic, dof = chi_square_stat(counts, swor_table(table, k))
        return [
            self.criterion(f'chi-square p-value of {dof + 1} orderings', chi_square_pvalue(statistic, dof),
                           '>', 1e-3)
        ]
