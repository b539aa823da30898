"""Model loader"""
import os

from typing import Dict

from stochastic_beam.common.exceptions.model import ModelException
from stochastic_beam.seqmodels.abstract_model import SequenceModel


class ModelLoader:
    """Loads a sequence model file, picking the reader from the file extension.

    Attributes:
        readers: extension -> (module, function) of the reader
    """
    readers: Dict[str, tuple] = {
        '.tree': ('tree', 'load_tree_model'),
        '.json': ('markov', 'load_markov'),
    }

    def __init__(self, path: str) -> None:
        self.path = path

    def load(self) -> SequenceModel:
        """Read the model.

        Raises:
            ModelException
        """
        if not os.path.isfile(self.path):
            raise ModelException(f'model file {self.path} not found')
        extension = os.path.splitext(self.path)[1].lower()
        if extension not in self.readers:
            raise ModelException(
                f'unknown model format {extension!r}, supported: {", ".join(sorted(self.readers))}'
            )
        return self.__build_factory(extension)(self.path)

    def __build_factory(self, extension: str):
        """Import the reader function for an extension."""
        module_name, function = self.readers[extension]
        module = __import__(f'stochastic_beam.seqmodels.{module_name}', fromlist=[function])
        return getattr(module, function)
