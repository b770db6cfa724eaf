"""Exception hierarchy."""


class HochgapError(Exception):
    pass


class UnsupportedRing(HochgapError):
    pass


class UnsupportedBase(HochgapError):
    pass


class NotGraded(HochgapError):
    pass


class NoMaximalIdeal(HochgapError):
    pass


class NotAHomomorphism(HochgapError):
    def __init__(self, relation, image):
        super().__init__(f"relation {relation} maps to {image}, not 0")
        self.relation = relation
        self.image = image


class NotAComplex(HochgapError):
    pass


class NonMinimalGenerators(HochgapError):
    pass


class LiftFailure(HochgapError):
    pass


class StrategyInapplicable(HochgapError):
    pass


class InfiniteDimensional(HochgapError):
    pass


class ParseError(HochgapError):
    def __init__(self, message, line=None, column=None):
        loc = ""
        if line is not None:
            loc = f" (line {line}, column {column or 1})"
        super().__init__(message + loc)
        self.line = line
        self.column = column
