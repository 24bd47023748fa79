class MemkernError(Exception):
    """
    Base class for all memkern errors
    """

    pass


class UsageError(MemkernError, ValueError):
    """
    Invalid command line or configuration
    """

    def __init__(self, message: str, flag: str = None):
        self.flag = flag
        if flag:
            message = "{}: {}".format(flag, message)
        super().__init__(message)


class DataError(MemkernError, ValueError):
    """
    Input data violates a physical or structural invariant
    """

    pass


class CurveFormatError(DataError):
    """
    Malformed curve file
    """

    def __init__(self, message: str, path: str = None, line: int = None):
        self.path = path
        self.line = line
        prefix = []
        if path:
            prefix.append(str(path))
        if line is not None:
            prefix.append("line {}".format(line))
        if prefix:
            message = "{}: {}".format(":".join(prefix), message)
        super().__init__(message)


class NumericalError(MemkernError, RuntimeError):
    """
    Base class for numerical failures
    """

    pass


class QuadratureError(NumericalError):
    def __init__(self, message: str, achieved: float = None):
        self.achieved = achieved
        if achieved is not None:
            message = "{} (achieved error estimate {:.3e})".format(message, achieved)
        super().__init__(message)


class IntegrationError(NumericalError):
    def __init__(self, message: str, t: float = None):
        self.t = t
        if t is not None:
            message = "{} (at t={:.6g})".format(message, t)
        super().__init__(message)


class ResolutionError(NumericalError):
    pass


class TruncationError(NumericalError):
    pass


class FitError(NumericalError):
    pass


class SweepError(NumericalError):
    pass
