"""Exception hierarchy shared by every module of the package."""


class GelfandError(ValueError):
    """Base class for all errors raised by this package."""


class NotAssociative(GelfandError):
    def __init__(self, triple):
        self.triple = tuple(int(v) for v in triple)
        super().__init__("multiplication is not associative on (%d, %d, %d)" % self.triple)


class NoIdentity(GelfandError):
    pass


class NoInverse(GelfandError):
    def __init__(self, element):
        self.element = int(element)
        super().__init__("element %d has no two-sided inverse" % self.element)


class NotClosed(GelfandError):
    def __init__(self, pair, product):
        self.pair = tuple(int(v) for v in pair)
        self.product = int(product)
        super().__init__("subset not closed: %d * %d = %d is outside" % (*self.pair, self.product))


class MissingIdentity(GelfandError):
    pass


class NotBijective(GelfandError):
    pass


class NotHomomorphism(GelfandError):
    def __init__(self, pair):
        self.pair = tuple(int(v) for v in pair)
        super().__init__("map does not respect the product of (%d, %d)" % self.pair)


class DimensionMismatch(GelfandError):
    pass


class NotGelfand(GelfandError):
    pass


class DegenerateDiagonalization(GelfandError):
    pass


class SingularSystem(GelfandError):
    pass


class NotBiInvariant(GelfandError):
    pass


class ZeroWindow(GelfandError):
    pass


class WindowNotUnit(GelfandError):
    pass


class NotAUnit(GelfandError):
    pass


class BadExponent(GelfandError):
    pass


class UnknownPair(GelfandError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown pair"


class ParseError(GelfandError):
    def __init__(self, line, message):
        self.line = line
        super().__init__("line %d: %s" % (line, message))


class SchemaError(GelfandError):
    pass
