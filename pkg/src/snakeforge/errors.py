"""Exception hierarchy.

Three families map onto CLI exit codes: input problems (2), domain
failures where the mathematics says no (3), and internal contract
violations (4).
"""


class SnakeForgeError(Exception):
    exit_code = 1


class InputError(SnakeForgeError):
    exit_code = 2


class DomainError(SnakeForgeError):
    exit_code = 3


class ContractViolation(SnakeForgeError, AssertionError):
    """Two independent computations that must agree did not."""

    exit_code = 4


# -- input / usage ---------------------------------------------------------

class ParseError(InputError, ValueError):
    pass


class IndexOutOfRange(InputError, IndexError):
    pass


class EqualPolynomials(InputError, ValueError):
    pass


class NotAlternating(InputError, ValueError):
    pass


class DuplicateValues(InputError, ValueError):
    pass


class MalformedTree(InputError, ValueError):
    pass


class LeafOnly(InputError, ValueError):
    pass


class UnsortedRoots(InputError, ValueError):
    pass


class DuplicateRoot(InputError, ValueError):
    pass


class NonzeroConstantTerm(InputError, ValueError):
    pass


class NotBinary(InputError, ValueError):
    pass


class NotEndRooted(InputError, ValueError):
    pass


class NonBinaryTree(InputError, ValueError):
    pass


# -- domain ----------------------------------------------------------------

class NotSeparable(DomainError):
    pass


class NotASnake(DomainError):
    pass


class WrongOrientation(DomainError):
    pass


class NonPositiveLeading(DomainError):
    pass


class NotMorse(DomainError):
    def __init__(self, reason, message=None):
        self.reason = reason
        super().__init__(message or f"polynomial is not Morse: {reason.value}")


# -- contract --------------------------------------------------------------

class WitnessSearchExhausted(ContractViolation):
    pass
