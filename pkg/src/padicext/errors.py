"""Exception hierarchy shared by the library and the command line front end."""


class PadicExtError(Exception):
    """Base class; ``exit_code`` is what the CLI returns when this escapes."""

    exit_code = 1


class DomainError(PadicExtError, ValueError):
    """An argument lies outside the domain of the operation (zero, non-unit, ...)."""


class NoInverseError(DomainError):
    pass


class NoLiftError(PadicExtError):
    """Newton's criterion v(f(a)) > 2 v(f'(a)) fails at the seed."""


class PreconditionViolation(PadicExtError, ValueError):
    pass


class RejectedInput(PadicExtError):
    """Input polynomial is reducible, or its irreducibility could not be certified."""

    exit_code = 2

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class Unsupported(PadicExtError):
    exit_code = 3


class InternalInconsistency(PadicExtError):
    exit_code = 4


class OracleInconclusive(PadicExtError):
    exit_code = 5
