""" Exception hierarchy shared by all quatlab modules.

Mathematical precondition failures derive from `MathError`, malformed user input from `InputError`.
The command line maps `InputError` (and `MathError` raised on user data) to exit code 2.
"""


class QuatlabError(Exception):
    """ Root of all quatlab errors. """
    def __init__(self, message: str) -> None:
        super(QuatlabError, self).__init__(message)
        self.message = message

    def get_msg(self) -> str:
        return self.message


# ---------------------------- Mathematical Errors ----------------------------

class MathError(QuatlabError):
    """ A mathematical precondition of an operation does not hold. """


class NotPure(MathError):
    pass


class NotUnit(MathError):
    pass


class ZeroDivisor(MathError):
    pass


class NotSquare(MathError):
    pass


class ShapeMismatch(MathError):
    pass


class SingularMatrix(MathError):
    pass


class ExactModeUnsupported(MathError):
    """ Operation needs square roots or transcendental functions and is float-only. """


class FloatOverflow(MathError):
    """ A float-mode operation produced NaN or Inf. """


class NoConvergence(MathError):
    pass


class GuardViolated(MathError):
    """ Parameters fall outside the range where an identity is claimed. """


class DimensionTooLarge(MathError):
    pass


class NotGeneric(MathError):
    pass


class NotInIdeal(MathError):
    """ A trace polynomial assumed to vanish on W2 does not. """


class RankUnstable(MathError):
    """ Modular ranks disagree even after exact escalation. """


class InconsistentResult(QuatlabError):
    """ Two independent computations of the same quantity disagree. """


# ---------------------------- Input Errors ----------------------------

class InputError(QuatlabError):
    """ Malformed user input (files, flags, text syntax). """


class WordSyntaxError(InputError):
    def __init__(self, message: str, text: str, position: int) -> None:
        super(WordSyntaxError, self).__init__("%s at position %d in %r" % (message, position, text))
        self.text = text
        self.position = position
