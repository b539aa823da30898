""" Estimator Exception """


class EstimatorException(Exception):
    """Raised when an estimator receives a sample it cannot weight."""
    pass
