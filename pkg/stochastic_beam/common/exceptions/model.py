""" Model Exception """


class ModelException(Exception):
    """Raised when a tree, model or corpus file is malformed."""
    pass
