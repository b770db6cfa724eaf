"""Coefficient rings: the rationals, prime fields and the integers."""

from __future__ import annotations

from fractions import Fraction

from hochgap.errors import ParseError, UnsupportedRing


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class CoeffRing:
    """One of Q, F_p or Z.

    Elements are plain Python objects: ``Fraction`` for Q, ``int`` in
    ``[0, p)`` for F_p and ``int`` for Z.
    """

    __slots__ = ("kind", "p")

    def __init__(self, kind: str, p: int = 0):
        if kind not in ("Q", "Fp", "Z"):
            raise UnsupportedRing(f"unknown coefficient ring {kind!r}")
        if kind == "Fp" and not _is_prime(p):
            raise UnsupportedRing(f"F_{p}: modulus must be prime")
        self.kind = kind
        self.p = p if kind == "Fp" else 0

    def __eq__(self, other):
        return isinstance(other, CoeffRing) and (self.kind, self.p) == (other.kind, other.p)

    def __hash__(self):
        return hash((self.kind, self.p))

    def __repr__(self):
        return f"CoeffRing({self.spec()!r})"

    def spec(self) -> str:
        return f"Fp:{self.p}" if self.kind == "Fp" else self.kind

    @classmethod
    def parse(cls, text: str) -> "CoeffRing":
        text = text.strip()
        if text in ("Q", "Z"):
            return cls(text)
        if text.startswith("Fp:"):
            try:
                return cls("Fp", int(text[3:]))
            except ValueError:
                raise ParseError(f"bad prime in ring spec {text!r}")
        raise ParseError(f"unknown ring spec {text!r}")

    @property
    def is_field(self) -> bool:
        return self.kind != "Z"

    @property
    def characteristic(self) -> int:
        return self.p

    def __call__(self, c):
        """Coerce an int/Fraction into canonical form."""
        if self.kind == "Q":
            return Fraction(c)
        if isinstance(c, Fraction):
            if self.kind == "Z":
                if c.denominator != 1:
                    raise ValueError(f"{c} is not an integer")
                return c.numerator
            return c.numerator * pow(c.denominator, -1, self.p) % self.p
        if self.kind == "Fp":
            return int(c) % self.p
        return int(c)

    zero_elt = property(lambda self: self(0))
    one_elt = property(lambda self: self(1))

    def add(self, a, b):
        return (a + b) % self.p if self.p else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.p else a - b

    def mul(self, a, b):
        return (a * b) % self.p if self.p else a * b

    def neg(self, a):
        return (-a) % self.p if self.p else -a

    def inv(self, a):
        if self.kind == "Q":
            return 1 / Fraction(a)
        if self.kind == "Fp":
            return pow(a, -1, self.p)
        if a in (1, -1):
            return a
        raise ZeroDivisionError(f"{a} is not a unit in Z")

    def is_unit(self, a) -> bool:
        if self.kind == "Z":
            return a in (1, -1)
        return a != 0

    def fmt(self, a) -> str:
        return str(a)


QQ = CoeffRing("Q")
ZZ = CoeffRing("Z")


def GF(p: int) -> CoeffRing:
    return CoeffRing("Fp", p)
