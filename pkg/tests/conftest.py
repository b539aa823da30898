import math
import os

import pytest

from stochastic_beam.common.oracle import enumerate_leaves
from stochastic_beam.common.random_stream import RandomStream
from stochastic_beam.seqmodels.markov import train_markov
from stochastic_beam.seqmodels.tree import Edge, ExplicitTreeModel, load_tree_model
from stochastic_beam.settings import Settings


TEST_DATA = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'test_data')


@pytest.fixture
def test_data():
    return TEST_DATA


@pytest.fixture
def example():
    return load_tree_model(Settings.EXAMPLE_TREE)


@pytest.fixture
def example_table(example):
    return enumerate_leaves(example)


@pytest.fixture
def example_probs():
    """Leaf probabilities of the bundled example tree, in lexicographic order."""
    return [0.05, 0.15, 0.15, 0.25, 0.20, 0.10, 0.05, 0.05]


@pytest.fixture
def example_entropy(example_probs):
    return -math.fsum(p * math.log(p) for p in example_probs)


@pytest.fixture
def four_leaf():
    return load_tree_model(Settings.FOUR_LEAF_TREE)


@pytest.fixture
def chain():
    return load_tree_model(os.path.join(TEST_DATA, 'chain.tree'))


@pytest.fixture
def two_leaf():
    def build(p: float) -> ExplicitTreeModel:
        return ExplicitTreeModel([Edge(0, 1, 0, p), Edge(0, 2, 1, 1.0 - p)])
    return build


@pytest.fixture
def markov():
    with open(os.path.join(TEST_DATA, 'tiny_corpus.txt'), 'r', encoding='utf-8') as corpus:
        return train_markov(corpus.read(), order=1, alpha=0.5, max_len=4)


@pytest.fixture
def stream():
    return RandomStream(20190)
