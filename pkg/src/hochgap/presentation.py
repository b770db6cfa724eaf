"""Finitely presented commutative algebras S = K[x_1..x_v]/I and their
declarative text format."""

from __future__ import annotations

import itertools
import re
from functools import cached_property
from pathlib import Path
from typing import Dict, List, Optional, Sequence

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from hochgap.coeffs import CoeffRing
from hochgap.errors import NotGraded, ParseError, UnsupportedRing
from hochgap.groebner import divides, groebner_basis, reduce_full
from hochgap.poly import Monomial, Poly, PolyRing, format_poly


class AlgebraPresentation:
    """S = K[vars]/(relations).

    ``meta`` carries optional file extras (name, kernel generators of a
    surjection, description); it takes no part in equality.
    """

    def __init__(self, ring: PolyRing, relations: Sequence[Poly] = (), meta: Optional[dict] = None):
        rels = []
        for r in relations:
            if r.ring != ring:
                raise ValueError("relation lives in a different polynomial ring")
            if not r.is_zero() and r not in rels:
                rels.append(r)
        self.ring = ring
        self.relations = tuple(rels)
        self.meta = dict(meta or {})

    @classmethod
    def make(cls, coeffs, names, relations=(), degrees=None, meta=None):
        if isinstance(coeffs, str):
            coeffs = CoeffRing.parse(coeffs)
        ring = PolyRing(coeffs, names, degrees)
        rels = [ring.parse(r) if isinstance(r, str) else r for r in relations]
        return cls(ring, rels, meta)

    def __eq__(self, other):
        return (isinstance(other, AlgebraPresentation) and self.ring == other.ring
                and self.relations == other.relations)

    def __hash__(self):
        return hash((self.ring, self.relations))

    def __repr__(self):
        rels = ", ".join(str(r) for r in self.relations)
        return f"<{self.coeffs.spec()}[{', '.join(self.ring.names)}]/({rels})>"

    @property
    def coeffs(self) -> CoeffRing:
        return self.ring.coeffs

    @property
    def nvars(self) -> int:
        return self.ring.nvars

    # flags -------------------------------------------------------------------
    @cached_property
    def is_graded(self) -> bool:
        return all(r.is_homogeneous() for r in self.relations)

    @cached_property
    def is_monogenic_over_Z(self) -> bool:
        return (self.coeffs.kind == "Z" and self.nvars == 1 and len(self.relations) == 1
                and self.relations[0].lc == 1 and self.relations[0].degree() > 0)

    # normal forms ------------------------------------------------------------
    @cached_property
    def gb(self) -> List[Poly]:
        if self.coeffs.is_field:
            return groebner_basis(list(self.relations))
        # over Z: each relation must be monic with a pure-power leading
        # monomial in its own variable; such leading terms are coprime, so the
        # relations already form a Groebner basis
        used = set()
        for r in self.relations:
            lm = r.lm
            support = [i for i, e in enumerate(lm) if e]
            if r.lc not in (1, -1) or len(support) != 1 or support[0] in used:
                raise UnsupportedRing(
                    "over Z only monic relations with pure-power leading terms in "
                    f"distinct variables are supported (offending relation: {r})")
            if any(m[j] for m in r.terms for j in range(self.nvars) if j != support[0]):
                raise UnsupportedRing(f"relation {r} over Z is not univariate")
            used.add(support[0])
        return sorted((r if r.lc == 1 else -r for r in self.relations),
                      key=lambda g: self.ring.order_key(g.lm))

    def normal_form(self, p: Poly) -> Poly:
        if p.ring != self.ring:
            raise ValueError("polynomial from another ring")
        if not self.relations:
            return p
        return reduce_full(p, self.gb)

    nf = normal_form

    def element(self, text_or_poly) -> Poly:
        p = self.ring.parse(text_or_poly) if isinstance(text_or_poly, str) else text_or_poly
        return self.normal_form(p)

    def is_standard(self, m: Monomial) -> bool:
        return not any(divides(g.lm, m) for g in self.gb)

    # bases -----------------------------------------------------------------------
    @cached_property
    def is_finite(self) -> bool:
        """True iff S is a finitely generated free K-module."""
        pure = set()
        for g in self.gb:
            support = [i for i, e in enumerate(g.lm) if e]
            if len(support) == 1:
                pure.add(support[0])
        return len(pure) == self.nvars

    @cached_property
    def finite_basis(self) -> List[Monomial]:
        """Standard monomials, ascending in the monomial order."""
        if not self.is_finite:
            from hochgap.errors import InfiniteDimensional
            raise InfiniteDimensional(f"{self!r} is not finite over its coefficients")
        bounds = [0] * self.nvars
        for g in self.gb:
            support = [i for i, e in enumerate(g.lm) if e]
            if len(support) == 1:
                i = support[0]
                b = g.lm[i]
                bounds[i] = b if bounds[i] == 0 else min(bounds[i], b)
        out = [m for m in itertools.product(*(range(b) for b in bounds)) if self.is_standard(m)]
        out.sort(key=self.ring.order_key)
        return out

    def graded_piece_basis(self, degree: int) -> List[Monomial]:
        """Standard monomials of weighted degree d (descending order)."""
        if not self.is_graded:
            raise NotGraded(f"{self!r} is not graded")
        return [m for m in self.ring.monomials_of_degree(degree) if self.is_standard(m)]

    @cached_property
    def mode(self) -> str:
        """How homology over S is computed: 'finite', 'graded' or 'none'."""
        if self.is_finite:
            return "finite"
        if self.coeffs.is_field and self.is_graded:
            return "graded"
        return "none"

    def coords(self, p: Poly, basis_index: Dict[Monomial, int], size: int) -> list:
        """Coefficient vector of nf(p) in a monomial basis."""
        v = [self.coeffs(0)] * size
        for m, c in self.normal_form(p).terms.items():
            v[basis_index[m]] = c
        return v

    # structure ---------------------------------------------------------------------
    def quotient(self, extra: Sequence[Poly], meta=None) -> "AlgebraPresentation":
        return AlgebraPresentation(self.ring, list(self.relations) + [e for e in extra if not self.nf(e).is_zero()], meta)

    def krull_dim(self) -> int:
        if self.is_finite:
            return 0 if self.coeffs.is_field else 1
        if not self.coeffs.is_field:
            raise UnsupportedRing("dimension over Z is only computed for finite Z-algebras")
        return monomial_ideal_dim([g.lm for g in self.gb], self.nvars)

    def with_relations_text(self):
        return [format_poly(r) for r in self.relations]

    # text format -----------------------------------------------------------------------
    def to_text(self) -> str:
        lines = [f'ring = "{self.coeffs.spec()}"',
                 "vars = [" + ", ".join(f'"{n}"' for n in self.ring.names) + "]",
                 "degrees = [" + ", ".join(str(d) for d in self.ring.degrees) + "]",
                 "relations = [" + ", ".join(f'"{format_poly(r)}"' for r in self.relations) + "]"]
        for key in ("kernel",):
            if key in self.meta:
                lines.append(f"{key} = [" + ", ".join(f'"{k}"' for k in self.meta[key]) + "]")
        return "\n".join(lines) + "\n"


def monomial_ideal_dim(gens: Sequence[Monomial], nvars: int) -> int:
    """Krull dimension of K[x]/(gens): the largest coordinate set U such
    that no generator is supported inside U."""
    supports = [frozenset(i for i, e in enumerate(g) if e) for g in gens]
    if any(not s for s in supports):
        return -1  # unit ideal
    for size in range(nvars, -1, -1):
        for U in itertools.combinations(range(nvars), size):
            Us = set(U)
            if not any(s <= Us for s in supports):
                return size
    return 0


_LOC = re.compile(r"line (\d+), column (\d+)")


def parse_presentation(text: str) -> AlgebraPresentation:
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        line, col = getattr(exc, "lineno", None), getattr(exc, "colno", None)
        m = _LOC.search(str(exc))
        if line is None and m:
            line, col = int(m.group(1)), int(m.group(2))
        raise ParseError(f"malformed presentation file: {getattr(exc, 'msg', exc)}", line, col)

    def locate(snippet):
        for i, line in enumerate(text.splitlines(), 1):
            col = line.find(snippet)
            if col >= 0:
                return i, col + 1
        return None, None

    for key in ("ring", "vars"):
        if key not in data:
            raise ParseError(f"missing key {key!r}")
    if not isinstance(data["ring"], str):
        raise ParseError("ring must be a string", *locate("ring"))
    coeffs = CoeffRing.parse(data["ring"])
    names = data["vars"]
    degrees = data.get("degrees")
    try:
        ring = PolyRing(coeffs, names, degrees)
    except ValueError as exc:
        raise ParseError(str(exc), *locate("vars"))
    rels = []
    for r in data.get("relations", []):
        try:
            rels.append(ring.parse(r))
        except ParseError as exc:
            line, col = locate(r)
            raise ParseError(str(exc).split(" (line")[0], line, (col or 1) + (exc.column or 1) - 1)
    meta = {k: v for k, v in data.items() if k not in ("ring", "vars", "degrees", "relations")}
    for k in meta.get("kernel", []):
        try:
            ring.parse(k)
        except ParseError as exc:
            raise ParseError(str(exc).split(" (line")[0], *locate(k))
    return AlgebraPresentation(ring, rels, meta)


def load_presentation(path) -> AlgebraPresentation:
    path = Path(path)
    pres = parse_presentation(path.read_text())
    pres.meta.setdefault("name", path.stem)
    return pres
