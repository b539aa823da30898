""" Application Exception """


class AppException(Exception):
    """Raised when a command fails."""
    pass
