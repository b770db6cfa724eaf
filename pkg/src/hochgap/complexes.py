"""Bounded complexes of finite free modules over a presentation."""

from __future__ import annotations

import json
from typing import Dict, List, Optional, Sequence

from hochgap.errors import NoMaximalIdeal, NotAComplex, NotAHomomorphism
from hochgap.modules import (Ambient, ModuleDescriptor, ModulePresentation, Subquotient,
                             apply_matrix, columns, descriptor_from, descriptor_kind,
                             kernel_preimage, scalar_model)
from hochgap.poly import Poly, format_poly
from hochgap.presentation import AlgebraPresentation

PolyMatrix = List[List[Poly]]

DEFAULT_TOP = 8


def poly_matmul(pres: AlgebraPresentation, A: PolyMatrix, B: PolyMatrix, inner: int) -> PolyMatrix:
    ring = pres.ring
    m = len(A)
    n = len(B[0]) if B else 0
    out = []
    for i in range(m):
        row = []
        for j in range(n):
            s = ring.zero()
            for k in range(inner):
                a, b = A[i][k], B[k][j]
                if not a.is_zero() and not b.is_zero():
                    s = s + a * b
            row.append(pres.nf(s))
        out.append(row)
    return out


def zero_matrix(pres, m, n) -> PolyMatrix:
    return [[pres.ring.zero() for _ in range(n)] for _ in range(m)]


class FreeComplex:
    """C_n = S^{rank(n)}, differential d(n): C_n -> C_{n-1} as a
    rank(n-1) x rank(n) matrix of normal forms.

    ``degrees[n]`` lists internal degrees of the basis of C_n (graded
    case).  Cohomological complexes are stored with negated indices.
    """

    def __init__(self, pres: AlgebraPresentation, ranks: Dict[int, int],
                 diffs: Optional[Dict[int, PolyMatrix]] = None,
                 degrees: Optional[Dict[int, List[int]]] = None,
                 cohomological: bool = False, check: bool = True,
                 caveats: Sequence[str] = ()):
        self.pres = pres
        self.ranks = {n: r for n, r in ranks.items() if r > 0}
        self.diffs: Dict[int, PolyMatrix] = {}
        for n, D in (diffs or {}).items():
            if self.rank(n) and self.rank(n - 1):
                if len(D) != self.rank(n - 1) or any(len(row) != self.rank(n) for row in D):
                    raise ValueError(f"differential d_{n} has the wrong shape")
                self.diffs[n] = [[pres.nf(e) for e in row] for row in D]
        self.degrees = {n: list((degrees or {}).get(n, [0] * r)) for n, r in self.ranks.items()}
        self.cohomological = cohomological
        self.caveats = list(caveats)
        if check:
            self.check()

    # access ---------------------------------------------------------------
    def rank(self, n: int) -> int:
        return self.ranks.get(n, 0)

    def degs(self, n: int) -> List[int]:
        return self.degrees.get(n, [])

    def d(self, n: int) -> PolyMatrix:
        D = self.diffs.get(n)
        if D is None:
            return zero_matrix(self.pres, self.rank(n - 1), self.rank(n))
        return D

    @property
    def support(self) -> List[int]:
        return sorted(self.ranks)

    @property
    def lo(self) -> int:
        return min(self.ranks) if self.ranks else 0

    @property
    def hi(self) -> int:
        return max(self.ranks) if self.ranks else 0

    def check(self):
        for n in self.support:
            if self.rank(n - 2) and n in self.diffs and (n - 1) in self.diffs:
                P = poly_matmul(self.pres, self.diffs[n - 1], self.diffs[n], self.rank(n - 1))
                if any(not e.is_zero() for row in P for e in row):
                    raise NotAComplex(f"d_{n - 1} o d_{n} != 0")
        if self.pres.mode == "graded":
            for n, D in self.diffs.items():
                for i, row in enumerate(D):
                    for j, e in enumerate(row):
                        if e.is_zero():
                            continue
                        want = self.degs(n)[j] - self.degs(n - 1)[i]
                        if not e.is_homogeneous() or e.degree() != want:
                            raise NotAComplex(
                                f"entry ({i},{j}) of d_{n} is not homogeneous of degree {want}")

    def __eq__(self, other):
        if not isinstance(other, FreeComplex):
            return NotImplemented
        return (self.pres == other.pres and self.ranks == other.ranks
                and self.cohomological == other.cohomological
                and all(self.d(n) == other.d(n) for n in set(self.ranks) | set(other.ranks))
                and (self.pres.mode != "graded" or self.degrees == other.degrees))

    # homology -------------------------------------------------------------
    def _window(self, n, module: ModulePresentation, top: int):
        degs = self.degs(n)
        if not degs:
            return range(0)
        lo = min(degs) + min(module.gen_degrees)
        return range(lo, top + 1)

    def homology_subquotients(self, n: int, module: Optional[ModulePresentation] = None,
                              top: int = DEFAULT_TOP):
        """H_n(C (x)_S M) as a Subquotient, or a dict degree -> Subquotient."""
        pres = self.pres
        model = scalar_model(pres)
        module = module or ModulePresentation.free(pres)
        amb = Ambient(model, self.degs(n), module)
        amb_out = Ambient(model, self.degs(n - 1), module)
        amb_in = Ambient(model, self.degs(n + 1), module)

        def at(d):
            ns = amb.size(d)
            if ns == 0:
                return Subquotient(model.K, 0, [], [])
            Dout = apply_matrix(self.d(n), amb, amb_out, d) if self.rank(n - 1) else []
            L = kernel_preimage(model.K, Dout, ns, amb_out.relation_gens(d) if self.rank(n - 1) else [])
            N = list(amb.relation_gens(d))
            if self.rank(n + 1):
                Din = apply_matrix(self.d(n + 1), amb_in, amb, d)
                N += columns(Din, amb_in.size(d))
            return Subquotient(model.K, ns, L, N)

        if model.graded:
            return {d: at(d) for d in self._window(n, module, top)}
        return at(None)

    def homology(self, n: int, module: Optional[ModulePresentation] = None,
                 top: int = DEFAULT_TOP) -> ModuleDescriptor:
        kind = descriptor_kind(self.pres)
        sq = self.homology_subquotients(n, module, top)
        return descriptor_from(sq, kind, top if kind == "graded" else None)

    # constructions ----------------------------------------------------------
    def shift(self, j: int) -> "FreeComplex":
        sign = -1 if j % 2 else 1
        return FreeComplex(
            self.pres, {n + j: r for n, r in self.ranks.items()},
            {n + j: [[e * sign for e in row] for row in D] for n, D in self.diffs.items()},
            {n + j: list(v) for n, v in self.degrees.items()}, self.cohomological,
            check=False, caveats=self.caveats)

    def hom_dual(self) -> "FreeComplex":
        """Hom_S(C, S) stored as a chain complex with negated indices."""
        ranks = {-n: r for n, r in self.ranks.items()}
        diffs = {}
        for n, D in self.diffs.items():
            diffs[-n + 1] = [list(col) for col in zip(*D)] if D else []
        degrees = {-n: [-x for x in v] for n, v in self.degrees.items()}
        return FreeComplex(self.pres, ranks, diffs, degrees, not self.cohomological,
                           check=False, caveats=self.caveats)

    def tensor_over_base(self, target: AlgebraPresentation, images: Sequence[Poly]) -> "FreeComplex":
        """Base change along the ring map sending variable i to images[i]."""
        check_ring_map(self.pres, target, images)
        diffs = {n: [[target.nf(e.substitute(images, target.ring)) for e in row] for row in D]
                 for n, D in self.diffs.items()}
        return FreeComplex(target, dict(self.ranks), diffs,
                           {n: list(v) for n, v in self.degrees.items()}, self.cohomological,
                           caveats=self.caveats)

    def truncate(self, top: int) -> "FreeComplex":
        keep = {n: r for n, r in self.ranks.items() if n <= top}
        return FreeComplex(self.pres, keep, {n: D for n, D in self.diffs.items() if n <= top},
                           {n: self.degrees[n] for n in keep}, self.cohomological, check=False,
                           caveats=self.caveats)

    def is_minimal(self, maximal_ideal: Optional[Sequence[Poly]] = None) -> bool:
        """True iff every differential entry lies in the maximal ideal."""
        pres = self.pres
        if maximal_ideal is None:
            if pres.mode == "graded":
                return all(e.constant_term() == 0 for D in self.diffs.values() for row in D for e in row)
            from hochgap.local import default_maximal_ideal
            maximal_ideal = default_maximal_ideal(pres)
            if maximal_ideal is None:
                raise NoMaximalIdeal(f"{pres!r} has no declared maximal ideal")
        residue = pres.quotient(list(maximal_ideal))
        return all(residue.nf(e).is_zero() for D in self.diffs.values() for row in D for e in row)

    # output -------------------------------------------------------------------
    def to_record(self) -> dict:
        terms = []
        for n in self.support:
            terms.append({
                "degree": n,
                "rank": self.rank(n),
                "internal_degrees": self.degs(n) if self.pres.mode == "graded" else None,
                "differential": [[format_poly(e) for e in row] for row in self.d(n)]
                if self.rank(n - 1) else [],
            })
        return {"ring": repr(self.pres), "cohomological": self.cohomological,
                "terms": terms, "caveats": list(self.caveats)}

    def to_json(self) -> str:
        return json.dumps(self.to_record(), sort_keys=True, indent=2)

    def to_text(self) -> str:
        lines = [f"complex over {self.pres!r}" + (" (cohomological, indices negated)" if self.cohomological else "")]
        for n in self.support:
            line = f"degree {n}: rank {self.rank(n)}"
            if self.pres.mode == "graded":
                line += f" internal degrees {self.degs(n)}"
            lines.append(line)
            if self.rank(n - 1):
                for row in self.d(n):
                    lines.append("    [" + ", ".join(format_poly(e) for e in row) + "]")
        for c in self.caveats:
            lines.append(f"caveat: {c}")
        return "\n".join(lines)

    def __repr__(self):
        return f"<FreeComplex ranks={dict(sorted(self.ranks.items()))}>"


def check_ring_map(source: AlgebraPresentation, target: AlgebraPresentation, images: Sequence[Poly]):
    if len(images) != source.nvars:
        raise ValueError("one image per source variable required")
    for r in source.relations:
        img = target.nf(r.substitute(images, target.ring))
        if not img.is_zero():
            raise NotAHomomorphism(r, img)
