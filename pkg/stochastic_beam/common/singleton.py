"""Singleton metaclass"""
from typing import Any, Dict


class Singleton(type):
    """Metaclass keeping a single instance per class."""
    _instances: Dict[type, Any] = {}

    def __call__(cls, *args, **kwargs):
        instance = Singleton._instances.get(cls)
        if instance is None:
            instance = super().__call__(*args, **kwargs)
            Singleton._instances[cls] = instance
        return instance

    def reset(cls) -> None:
        """Forget the instance of the class, the next call builds a new one."""
        Singleton._instances.pop(cls, None)
