"""
exceptions and warnings raised by phasenoise

every error carries the process exit code the CLI uses for it:

    2 - the input could not be parsed
    3 - a state or ensemble could not be realized
    4 - a verification found a violated identity or bound
    5 - a numerical search did not converge
"""


class PhaseNoiseError(Exception):
    exit_code = 1


class ParseError(PhaseNoiseError):
    exit_code = 2

    def __init__(self, message, text=None, position=None):
        self.text = text
        self.position = position

        if text is not None and position is not None:
            message = (
                f"{message} at position {position}: "
                f'"{text}"\n{" " * (position + 1)}^'
            )

        super().__init__(message)


class UnknownFamilyError(ParseError):
    pass


class MissingParamError(ParseError):
    pass


class BadValueError(ParseError):
    pass


class RangeError(ParseError):
    pass


class RealizationError(PhaseNoiseError):
    exit_code = 3


class NormError(RealizationError):
    pass


class ZeroVectorError(RealizationError):
    pass


class DimExhaustedError(RealizationError):
    pass


class ParityError(RealizationError):
    pass


class FockIndexError(RealizationError, IndexError):
    pass


class StateFileError(RealizationError):
    pass


class DomainError(RealizationError):
    pass


class EnsembleError(RealizationError):
    pass


class VerificationError(PhaseNoiseError):
    exit_code = 4


class BisectionFailure(PhaseNoiseError):
    exit_code = 5

    def __init__(self, message, achievable=None):
        self.achievable = achievable

        if achievable is not None:
            low, high = achievable
            message = f"{message} (achievable mean photon number: [{low}, {high}])"

        super().__init__(message)


class ConvergenceFailure(PhaseNoiseError):
    exit_code = 5


class PhaseNoiseWarning(UserWarning):
    pass


class TruncationLossWarning(PhaseNoiseWarning):
    pass


class DegenerateExtremalWarning(PhaseNoiseWarning):
    pass


class TruncationSuspectWarning(PhaseNoiseWarning):
    pass
