""" Domain Exception """


class DomainException(Exception):
    """Raised when an argument lies outside the domain of a numerical operation."""
    pass
