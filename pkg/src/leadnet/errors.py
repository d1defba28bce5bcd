"""Exception hierarchy.

Three roots map onto the CLI exit codes: ``DataError`` (1), ``FitError`` (2)
and ``ConfigError`` (3).
"""


class LeadnetError(Exception):
    exit_code = 1


class DataError(LeadnetError):
    exit_code = 1


class SchemaError(DataError):
    pass


class InvariantError(DataError):
    pass


class DuplicateIdError(DataError):
    pass


class FormatError(DataError, ValueError):
    pass


class DuplicateKeyError(DataError):
    pass


class RangeError(DataError, ValueError):
    pass


class MissingStatsError(DataError, KeyError):
    pass


class EmptyInningsError(DataError):
    pass


class UnsupportedFormatError(DataError, ValueError):
    pass


class DisconnectedError(DataError):
    pass


class TooSmallError(DataError):
    pass


class CaptainAbsentError(DataError):
    pass


class EmptyListError(DataError, ValueError):
    pass


class ZeroMeanError(DataError, ValueError):
    pass


class EmptyCorpusError(DataError):
    pass


class FitError(LeadnetError):
    exit_code = 2


class DegenerateError(FitError):
    pass


class SeparationError(FitError):
    pass


class NonConvergenceError(FitError):
    pass


class RankError(FitError):
    pass


class ZeroVarianceError(FitError):
    pass


class NestingError(FitError):
    pass


class PerfectCollinearityError(FitError):
    """Raised by ``vif`` when some column is an exact linear combination of others.

    ``values`` holds the full VIF map (``inf`` for the offending columns).
    """

    def __init__(self, columns, values):
        self.columns = list(columns)
        self.values = dict(values)
        super().__init__(f"perfect collinearity in columns: {', '.join(self.columns)}")


class StudyError(FitError):
    pass


class ConfigError(LeadnetError):
    exit_code = 3
