""" Configuration Exception """


class ConfigException(Exception):
    """Raised when configuration parsing or validation fails."""
    pass
