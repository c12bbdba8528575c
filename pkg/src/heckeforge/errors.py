"""Exception hierarchy.

Every error carries an optional ``payload`` dict that the CLI serializes as
the counterexample when a verification fails.
"""


class HeckeForgeError(Exception):
    def __init__(self, message: str = "", payload: dict | None = None):
        super().__init__(message)
        self.payload = payload or {}


class InvariantViolation(HeckeForgeError):
    """A mathematical invariant that should always hold was found broken."""


# rootdata
class NotGCM(HeckeForgeError):
    pass


class NotFiniteType(HeckeForgeError):
    pass


class RankMismatch(HeckeForgeError):
    pass


class UnknownPreset(HeckeForgeError):
    pass


# affine_weyl
class NonFiniteOmega(HeckeForgeError):
    pass


class InfiniteParabolic(HeckeForgeError):
    pass


# exactpoly
class NotDivisible(InvariantViolation):
    pass


# hecke algebras
class ContextMismatch(HeckeForgeError):
    pass


class IntegralityViolation(InvariantViolation):
    pass


class ParityViolation(InvariantViolation):
    pass


class CentralityViolation(InvariantViolation):
    pass


class BasisEscape(InvariantViolation):
    pass


class NotCentralInput(HeckeForgeError):
    pass


class NotInThetaSpan(InvariantViolation):
    pass


# dual_weights
class OracleMismatch(InvariantViolation):
    pass


class NegativeMultiplicity(InvariantViolation):
    pass
