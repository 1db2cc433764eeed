"""Exception hierarchy shared by every rankfuse module."""


class RankFuseError(ValueError):
    """Base class for all rankfuse errors."""

    exit_code = 1


class DuplicateObject(RankFuseError):
    exit_code = 10


class EmptyRanking(RankFuseError):
    exit_code = 11


class UniverseMismatch(RankFuseError):
    exit_code = 12


class ZeroTotalWeight(RankFuseError):
    exit_code = 13


class PositionOutOfRange(RankFuseError):
    exit_code = 14


class EmptyInput(RankFuseError):
    exit_code = 15


class NoConvergence(RankFuseError):
    exit_code = 16


class UnsortedPoints(RankFuseError):
    exit_code = 17


class TooFewPoints(RankFuseError):
    exit_code = 18


class ConfigError(RankFuseError):
    exit_code = 19


class EmptyItem(RankFuseError):
    exit_code = 20


class UnknownItem(RankFuseError):
    exit_code = 21


class MissingWeight(RankFuseError):
    exit_code = 22


class MissingPrediction(RankFuseError):
    exit_code = 23


class ParseError(RankFuseError):
    """Malformed input file; the message carries the offending line number."""

    exit_code = 24

    def __init__(self, message: str, path=None, line: int | None = None):
        where = ""
        if path is not None:
            where = f"{path}"
            if line is not None:
                where += f":{line}"
            where += ": "
        super().__init__(where + message)
        self.path = path
        self.line = line


class LengthMismatch(RankFuseError):
    exit_code = 25
