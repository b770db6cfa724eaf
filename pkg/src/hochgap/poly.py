"""Sparse multivariate polynomials in graded reverse lexicographic order."""

from __future__ import annotations

import ast
import re
from fractions import Fraction
from typing import Dict, Iterable, Sequence, Tuple

from hochgap.coeffs import CoeffRing
from hochgap.errors import ParseError

Monomial = Tuple[int, ...]

_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


class PolyRing:
    """K[x_1, ..., x_v] with positive integer variable weights."""

    def __init__(self, coeffs: CoeffRing, names: Sequence[str], degrees: Sequence[int] | None = None):
        names = tuple(names)
        if degrees is None:
            degrees = (1,) * len(names)
        degrees = tuple(int(d) for d in degrees)
        if len(degrees) != len(names):
            raise ValueError("one degree per variable required")
        if any(d <= 0 for d in degrees):
            raise ValueError("variable degrees must be positive")
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        for n in names:
            if not _NAME.match(n):
                raise ValueError(f"bad variable name {n!r}")
        self.coeffs = coeffs
        self.names = names
        self.degrees = degrees
        self.nvars = len(names)

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.coeffs == other.coeffs
                and self.names == other.names and self.degrees == other.degrees)

    def __hash__(self):
        return hash((self.coeffs, self.names, self.degrees))

    def __repr__(self):
        return f"PolyRing({self.coeffs.spec()}, {list(self.names)}, {list(self.degrees)})"

    # monomials -------------------------------------------------------------
    def mdeg(self, m: Monomial) -> int:
        return sum(e * w for e, w in zip(m, self.degrees))

    def order_key(self, m: Monomial):
        return (self.mdeg(m), tuple(-e for e in reversed(m)))

    @property
    def one_monomial(self) -> Monomial:
        return (0,) * self.nvars

    def var_monomial(self, i: int) -> Monomial:
        return tuple(1 if j == i else 0 for j in range(self.nvars))

    def monomials_of_degree(self, d: int) -> list:
        """All monomials of weighted degree d, descending in the order."""
        out = []

        def rec(i, left, cur):
            if i == self.nvars:
                if left == 0:
                    out.append(tuple(cur))
                return
            w = self.degrees[i]
            for e in range(left // w + 1):
                cur.append(e)
                rec(i + 1, left - e * w, cur)
                cur.pop()

        if d >= 0:
            rec(0, d, [])
        out.sort(key=self.order_key, reverse=True)
        return out

    # constructors ----------------------------------------------------------
    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.const(1)

    def const(self, c) -> "Poly":
        c = self.coeffs(c)
        return Poly(self, {self.one_monomial: c} if c != 0 else {})

    def var(self, name_or_index) -> "Poly":
        i = name_or_index if isinstance(name_or_index, int) else self.names.index(name_or_index)
        return Poly(self, {self.var_monomial(i): self.coeffs(1)})

    def gens(self) -> list:
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, m: Monomial, c=1) -> "Poly":
        c = self.coeffs(c)
        return Poly(self, {tuple(m): c} if c != 0 else {})

    def parse(self, text: str) -> "Poly":
        return parse_poly(self, text)


class Poly:
    """Immutable polynomial: a dict monomial -> nonzero coefficient."""

    __slots__ = ("ring", "terms", "_lm")

    def __init__(self, ring: PolyRing, terms: Dict[Monomial, object]):
        self.ring = ring
        self.terms = terms
        self._lm = None

    # basic protocol --------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        K = self.ring.coeffs
        t = dict(self.terms)
        for m, c in other.terms.items():
            v = K.add(t.get(m, 0), c) if m in t else c
            if v == 0:
                t.pop(m, None)
            else:
                t[m] = v
        return Poly(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        K = self.ring.coeffs
        return Poly(self.ring, {m: K.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        K = self.ring.coeffs
        t: Dict[Monomial, object] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = K.add(t.get(m, 0), K.mul(c1, c2)) if m in t else K.mul(c1, c2)
                if v == 0:
                    t.pop(m, None)
                else:
                    t[m] = v
        return Poly(self.ring, t)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> "Poly":
        K = self.ring.coeffs
        c = K(c)
        if c == 0:
            return self.ring.zero()
        return Poly(self.ring, {m: K.mul(v, c) for m, v in self.terms.items()})

    def mul_monomial(self, mono: Monomial, c=None) -> "Poly":
        K = self.ring.coeffs
        if c is None:
            return Poly(self.ring, {tuple(a + b for a, b in zip(m, mono)): v
                                    for m, v in self.terms.items()})
        return Poly(self.ring, {tuple(a + b for a, b in zip(m, mono)): K.mul(v, c)
                                for m, v in self.terms.items()})

    # order data ------------------------------------------------------------
    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: self.ring.order_key(mc[0]), reverse=True)

    @property
    def lm(self) -> Monomial:
        if self._lm is None:
            if not self.terms:
                raise ValueError("zero polynomial has no leading monomial")
            self._lm = max(self.terms, key=self.ring.order_key)
        return self._lm

    @property
    def lc(self):
        return self.terms[self.lm]

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(self.ring.mdeg(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        return len({self.ring.mdeg(m) for m in self.terms}) <= 1

    def constant_term(self):
        return self.terms.get(self.ring.one_monomial, self.ring.coeffs(0))

    def is_constant(self) -> bool:
        return all(m == self.ring.one_monomial for m in self.terms)

    def monic(self) -> "Poly":
        return self.scale(self.ring.coeffs.inv(self.lc))

    def homogeneous_part(self, d: int) -> "Poly":
        return Poly(self.ring, {m: c for m, c in self.terms.items() if self.ring.mdeg(m) == d})

    # calculus / substitution -----------------------------------------------
    def derivative(self, i: int) -> "Poly":
        K = self.ring.coeffs
        t = {}
        for m, c in self.terms.items():
            if m[i]:
                mm = list(m)
                mm[i] -= 1
                v = K.mul(c, K(m[i]))
                if v != 0:
                    t[tuple(mm)] = v
        return Poly(self.ring, t)

    def substitute(self, images: Sequence["Poly"], target: PolyRing | None = None) -> "Poly":
        """Evaluate at ``images`` (one polynomial per variable)."""
        if target is None:
            target = images[0].ring if images else self.ring
        K = target.coeffs
        result = target.zero()
        cache = {}
        for m, c in self.terms.items():
            term = target.const(K(c) if K == self.ring.coeffs else K(Fraction(c)))
            for i, e in enumerate(m):
                if e:
                    key = (i, e)
                    if key not in cache:
                        cache[key] = images[i] ** e
                    term = term * cache[key]
            result = result + term
        return result

    def change_ring(self, ring: PolyRing) -> "Poly":
        K = ring.coeffs
        t = {}
        for m, c in self.terms.items():
            v = K(c)
            if v != 0:
                t[m] = v
        return Poly(ring, t)

    # printing ----------------------------------------------------------------
    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"


def _fmt_monomial(ring: PolyRing, m: Monomial) -> str:
    parts = []
    for name, e in zip(ring.names, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(f: Poly) -> str:
    if not f.terms:
        return "0"
    out = []
    for k, (m, c) in enumerate(f.sorted_terms()):
        c = Fraction(c)
        neg = c < 0 and f.ring.coeffs.kind != "Fp"
        a = -c if neg else c
        mono = _fmt_monomial(f.ring, m)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if k == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def parse_poly(ring: PolyRing, text: str) -> Poly:
    """Parse ``x^2 - 3/2*x*y + 1`` style input (parentheses allowed)."""
    src = text.replace("^", "**")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"cannot parse polynomial {text!r}: {exc.msg}", 1, exc.offset)
    names = {n: ring.var(i) for i, n in enumerate(ring.names)}

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return ring.const(node.value)
        if isinstance(node, ast.Name):
            if node.id not in names:
                raise ParseError(f"unknown variable {node.id!r} in {text!r}", 1, node.col_offset + 1)
            return names[node.id]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                exp = node.right
                if not (isinstance(exp, ast.Constant) and isinstance(exp.value, int) and exp.value >= 0):
                    raise ParseError(f"exponents must be non-negative integers in {text!r}",
                                     1, node.col_offset + 1)
                return ev(node.left) ** exp.value
            a, b = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if isinstance(node.op, ast.Div):
                if not b.is_constant() or b.is_zero():
                    raise ParseError(f"division only by nonzero constants in {text!r}",
                                     1, node.col_offset + 1)
                return a * ring.const(ring.coeffs.inv(b.constant_term()) if ring.coeffs.kind != "Z"
                                      else _z_inverse(b.constant_term(), text))
        raise ParseError(f"unsupported syntax in polynomial {text!r}", 1, getattr(node, "col_offset", 0) + 1)

    return ev(tree)


def _z_inverse(c, text):
    if c in (1, -1):
        return c
    raise ParseError(f"non-integer literal in a polynomial over Z: {text!r}")


def poly_from_terms(ring: PolyRing, items: Iterable) -> Poly:
    f = ring.zero()
    for m, c in items:
        f = f + ring.monomial(m, c)
    return f
