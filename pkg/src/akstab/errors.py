"""Exception taxonomy. Class names double as the machine-readable error codes
emitted by the CLI."""


class AkstabError(Exception):
    """Base class for domain errors."""

    @property
    def code(self) -> str:
        return type(self).__name__


class InvalidInput(AkstabError, ValueError):
    pass


class ExtUndefined(AkstabError):
    """The certified Ext^1 between the operands vanishes."""


class ExtAmbiguous(AkstabError):
    """Ext^1 has dimension >= 2, so there is no canonical extension."""


class UnknownHom(AkstabError):
    """Hom spaces between the operands cannot be certified."""


class PhaseOrderViolation(AkstabError):
    pass


class ZeroCharge(AkstabError):
    pass


class NonStableLeaf(AkstabError):
    pass


class StepBudgetExceeded(AkstabError):
    pass


class InvalidQuadruple(AkstabError, ValueError):
    pass


class MassVanishes(AkstabError):
    pass


class NonGenericPath(AkstabError):
    pass


class NotSimple(AkstabError):
    pass


class CoincidentPoints(AkstabError):
    pass


class IndexOutOfRange(AkstabError, IndexError):
    pass


class NonGenericLoop(AkstabError):
    pass


class PointCollision(AkstabError):
    pass
