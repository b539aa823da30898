import math
import os

from typing import Any, Dict, List, Tuple


class Settings:

    ROOT_DIR: str = os.path.dirname(os.path.abspath(__file__))
    VERSION: str = "1.0.0"
    THREAD_NUM: int = 2
    LOGGER_NAME: str = "stochastic_beam"
    LOG_FILE: str = "stochastic_beam.log"

    # randomness
    GENERATOR: str = "PCG64"
    SEED_ENV: str = "STOCHASTIC_BEAM_SEED"
    DEFAULT_SEED: int = 1234
    BUFFER_SIZE: int = 4096

    # numerics
    LOG1MEXP_BRANCH: float = -math.log(2.0)
    LOG1PEXP_BRANCH: float = 18.0
    SERIES_CUTOFF: float = -10.0
    NORMALIZATION_TOL: float = 1e-6

    # oracle and reports
    MAX_TOTAL: int = 10 ** 6
    PERCENTILES: Tuple[float, float] = (2.5, 97.5)
    TEMPERATURES: List[float] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8]

    # bundled data
    DATA_DIR: str = os.path.join(ROOT_DIR, "data")
    EXAMPLE_TREE: str = os.path.join(DATA_DIR, "example.tree")
    FOUR_LEAF_TREE: str = os.path.join(DATA_DIR, "four_leaf.tree")
    CORPUS: str = os.path.join(DATA_DIR, "corpus.txt")

    MARKOV: Dict[str, Any] = {
        "FORMAT": "markov-counts",
        "VERSION": 1,
        "EOS": "\n",
        "MAX_LEN": 20,
    }
