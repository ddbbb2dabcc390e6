"""Exception types raised across the package."""


class FdcalcError(Exception):
    """Base class for all library errors."""


class CategoryError(FdcalcError):
    pass


class NonAssociative(CategoryError):
    def __init__(self, f, g, h):
        super().__init__(f"composition not associative at ({h}, {g}, {f})")
        self.f, self.g, self.h = f, g, h


class BadIdentity(CategoryError):
    def __init__(self, obj):
        super().__init__(f"identity law fails at object {obj!r}")
        self.obj = obj


class DanglingEndpoint(CategoryError):
    def __init__(self, morphism, detail=""):
        super().__init__(f"morphism {morphism!r} has a bad endpoint {detail}".rstrip())
        self.morphism = morphism


class UnknownObject(FdcalcError):
    pass


class BaseMismatch(FdcalcError):
    pass


class EndpointMismatch(FdcalcError):
    pass


class FunctorLawError(FdcalcError):
    """An action table is not functorial."""


class NaturalityError(FdcalcError):
    pass


class NotComplemented(FdcalcError):
    def __init__(self, morphism, element):
        super().__init__(f"not complemented: {element!r} leaves the complement along {morphism!r}")
        self.morphism, self.element = morphism, element


class NotSumOfReps(FdcalcError):
    pass


class SizeGuardExceeded(FdcalcError):
    def __init__(self, size, bound):
        super().__init__(f"candidate space {size} exceeds bound {bound}")
        self.size, self.bound = size, bound


class NotTense(FdcalcError):
    def __init__(self, node, witness):
        super().__init__(f"not tense at {type(node).__name__}: {witness!r}")
        self.node, self.witness = node, witness


class NotNew(FdcalcError):
    pass


class NotPPI(FdcalcError):
    pass


class ActionEscapesNewElements(FdcalcError):
    def __init__(self, morphism, element):
        super().__init__(f"{morphism!r} sends new element {element!r} to an old one")
        self.morphism, self.element = morphism, element


class ModeError(FdcalcError):
    pass


class SchemaError(FdcalcError):
    def __init__(self, pointer, message):
        super().__init__(f"{pointer or '/'}: {message}")
        self.pointer = pointer


class UnknownSuite(FdcalcError):
    pass
