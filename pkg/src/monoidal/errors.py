"""Exception hierarchy shared by the kernel and the command line front end."""


class KernelError(Exception):
    """Base class for every error the kernel raises on bad mathematical input."""


class NotAUnit(KernelError, ArithmeticError):
    pass


class StructureMismatch(KernelError, TypeError):
    """Operands live in different rings or over different monoids."""


class NotInKernel(KernelError, ValueError):
    pass


class CommutationViolation(KernelError, ValueError):
    pass


class MissingAssignment(KernelError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class NoncommutativeTarget(KernelError, ValueError):
    pass


class ZeroPolynomial(KernelError, ValueError):
    pass


class UnknownVariable(KernelError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class CharacteristicNotZero(KernelError, ValueError):
    pass


class NonUnitConstantTerm(NotAUnit):
    pass


class OverlappingVariables(KernelError, ValueError):
    pass


class IncoherentTower(KernelError, ValueError):
    pass


class ArgumentNotInIdeal(KernelError, ValueError):
    pass
