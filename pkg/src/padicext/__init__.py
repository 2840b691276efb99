"""Classification of extensions of p-adic fields generated by a polynomial."""

from .errors import (
    DomainError,
    InternalInconsistency,
    NoInverseError,
    NoLiftError,
    OracleInconclusive,
    PadicExtError,
    PreconditionViolation,
    RejectedInput,
    Unsupported,
)
from .polyring import Poly
from .tame import classify_tame_prime, same_tame_extension
from .wild3 import classify_cubic_q3

__version__ = "0.1.0"

__all__ = [
    "Poly",
    "classify_cubic_q3",
    "classify_tame_prime",
    "same_tame_extension",
    "PadicExtError",
    "DomainError",
    "NoInverseError",
    "NoLiftError",
    "PreconditionViolation",
    "RejectedInput",
    "Unsupported",
    "InternalInconsistency",
    "OracleInconclusive",
]
