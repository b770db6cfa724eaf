"""Restriction of scalars: S-modules seen as K-vector spaces (degreewise
in the graded case) or as free abelian groups (finite Z-algebras).

Everything downstream reduces to subquotients L/N of an ambient space
K^n or Z^n, with L and N given by generators.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from hochgap import linalg
from hochgap.errors import UnsupportedBase
from hochgap.poly import Poly
from hochgap.presentation import AlgebraPresentation


class ScalarModel:
    """K-bases of S: the finite standard-monomial basis, or graded pieces."""

    def __init__(self, pres: AlgebraPresentation):
        if pres.mode == "none":
            raise UnsupportedBase(
                f"{pres!r}: homology needs a finite algebra or a graded algebra over a field")
        self.pres = pres
        self.K = pres.coeffs
        self.graded = pres.mode == "graded"
        self._pieces: Dict[Optional[int], list] = {}
        self._index: Dict[Optional[int], dict] = {}

    def piece(self, d: Optional[int]) -> list:
        if d not in self._pieces:
            if self.graded:
                ms = self.pres.graded_piece_basis(d) if d >= 0 else []
            else:
                ms = self.pres.finite_basis
            self._pieces[d] = ms
            self._index[d] = {m: i for i, m in enumerate(ms)}
        return self._pieces[d]

    def index(self, d: Optional[int]) -> dict:
        self.piece(d)
        return self._index[d]

    def key(self, d):
        return d if self.graded else None


_MODELS: Dict[int, ScalarModel] = {}


def scalar_model(pres: AlgebraPresentation) -> ScalarModel:
    model = _MODELS.get(id(pres))
    if model is None or model.pres is not pres:
        model = ScalarModel(pres)
        _MODELS[id(pres)] = model
    return model


class ModulePresentation:
    """M = coker(A : S^a -> S^b); columns of A are relations.

    ``gen_degrees`` are internal degrees of the b generators (graded case).
    """

    def __init__(self, pres: AlgebraPresentation, matrix: Sequence[Sequence[Poly]] = (),
                 gen_degrees: Optional[Sequence[int]] = None, nrels: Optional[int] = None):
        matrix = [[pres.nf(e) for e in row] for row in matrix]
        b = len(gen_degrees) if gen_degrees is not None else len(matrix)
        if b == 0:
            b = 1 if not matrix else len(matrix)
        if not matrix:
            matrix = [[] for _ in range(b)]
        self.pres = pres
        self.matrix = matrix
        self.ngens = b
        self.nrels = len(matrix[0]) if matrix and matrix[0] else (nrels or 0)
        self.gen_degrees = list(gen_degrees) if gen_degrees is not None else [0] * b
        self.rel_degrees = []
        for k in range(self.nrels):
            degs = {self.gen_degrees[g] + e.degree() for g in range(b)
                    for e in [matrix[g][k]] if not e.is_zero()}
            if pres.mode == "graded":
                homog = all(matrix[g][k].is_homogeneous() for g in range(b))
                if len(degs) > 1 or not homog:
                    raise ValueError("graded module relations must be homogeneous")
            self.rel_degrees.append(min(degs) if degs else 0)

    @classmethod
    def free(cls, pres, rank: int = 1, gen_degrees=None):
        return cls(pres, [[] for _ in range(rank)], gen_degrees or [0] * rank)

    @classmethod
    def cyclic(cls, pres, ideal: Sequence[Poly]):
        """S/J for J generated by ``ideal``."""
        return cls(pres, [[pres.nf(g) for g in ideal]], [0])

    @property
    def is_free(self) -> bool:
        return all(e.is_zero() for row in self.matrix for e in row)

    def __repr__(self):
        if self.is_free and self.ngens == 1:
            return "S"
        return f"coker({self.ngens}x{self.nrels})"


class Ambient:
    """F (x)_S M for a free S-module F with given component degrees."""

    def __init__(self, model: ScalarModel, comp_degrees: Sequence[int], module: ModulePresentation):
        self.model = model
        self.comp_degrees = list(comp_degrees)
        self.module = module
        self._layout: Dict[Optional[int], Tuple[list, dict]] = {}

    @property
    def ncomps(self) -> int:
        return len(self.comp_degrees)

    def layout(self, d: Optional[int]):
        d = self.model.key(d)
        if d not in self._layout:
            blocks = []
            index = {}
            pos = 0
            for i, ci in enumerate(self.comp_degrees):
                for g, dg in enumerate(self.module.gen_degrees):
                    sd = (d - ci - dg) if self.model.graded else None
                    ms = self.model.piece(sd)
                    blocks.append((i, g, sd, ms))
                    for m in ms:
                        index[(i, g, m)] = pos
                        pos += 1
            self._layout[d] = (blocks, index)
        return self._layout[d]

    def size(self, d) -> int:
        return len(self.layout(d)[1])

    def basis_elements(self, d):
        """Yield (position, component, generator, monomial)."""
        blocks, index = self.layout(d)
        for i, g, sd, ms in blocks:
            for m in ms:
                yield index[(i, g, m)], i, g, m

    def vector(self, d, parts: Dict[Tuple[int, int], Poly]) -> list:
        """Coordinates of sum over (component, generator) of polynomials."""
        K = self.model.K
        _, index = self.layout(d)
        v = [K(0)] * len(index)
        pres = self.model.pres
        for (i, g), p in parts.items():
            for m, c in pres.nf(p).terms.items():
                key = (i, g, m)
                if key in index:
                    v[index[key]] = K.add(v[index[key]], c)
                elif self.model.graded:
                    raise ValueError("element leaves the graded piece; inhomogeneous input")
        return v

    def element(self, d, v) -> Dict[Tuple[int, int], Poly]:
        """Inverse of ``vector``: component polynomials (nonzero ones only)."""
        ring = self.model.pres.ring
        out: Dict[Tuple[int, int], Poly] = {}
        for pos, i, g, m in self.basis_elements(d):
            if v[pos]:
                out[(i, g)] = out.get((i, g), ring.zero()) + ring.monomial(m, v[pos])
        return out

    def relation_gens(self, d) -> List[list]:
        """Generators of (F (x) im A) in degree d."""
        mod = self.module
        if mod.nrels == 0:
            return []
        model = self.model
        ring = model.pres.ring
        out = []
        for i, ci in enumerate(self.comp_degrees):
            for k in range(mod.nrels):
                sd = (d - ci - mod.rel_degrees[k]) if model.graded else None
                for m in model.piece(sd):
                    mono = ring.monomial(m)
                    parts = {(i, g): mono * mod.matrix[g][k] for g in range(mod.ngens)
                             if not mod.matrix[g][k].is_zero()}
                    v = self.vector(d, parts)
                    if any(v):
                        out.append(v)
        return out


def apply_matrix(D: Sequence[Sequence[Poly]], src: Ambient, tgt: Ambient, d_src, d_tgt=None) -> List[list]:
    """K-matrix (rows: tgt positions) of the S-matrix D acting on src -> tgt.

    D has tgt.ncomps rows and src.ncomps columns; it acts on the module
    factor by scalars.  Terms outside the target piece are rejected.
    """
    if d_tgt is None:
        d_tgt = d_src
    model = src.model
    K = model.K
    pres = model.pres
    ring = pres.ring
    nt = tgt.size(d_tgt)
    _, tindex = tgt.layout(d_tgt)
    cols = []
    cache = {}
    for pos, j, g, m in src.basis_elements(d_src):
        col = [K(0)] * nt
        for i in range(tgt.ncomps):
            e = D[i][j]
            if e.is_zero():
                continue
            key = (i, j, m)
            prod = cache.get(key)
            if prod is None:
                prod = pres.nf(e.mul_monomial(m))
                cache[key] = prod
            for mm, c in prod.terms.items():
                t = tindex.get((i, g, mm))
                if t is None:
                    if model.graded:
                        raise ValueError("inhomogeneous differential entry")
                    continue
                col[t] = K.add(col[t], c)
        cols.append(col)
    if not cols:
        return [[] for _ in range(nt)]
    return linalg.transpose(cols)


# ---------------------------------------------------------------------------
# subquotients
# ---------------------------------------------------------------------------

class Subquotient:
    """L/N inside K^n (or Z^n), L and N given by generating vectors."""

    def __init__(self, K, n: int, L_gens: List[list], N_gens: List[list]):
        self.K = K
        self.n = n
        self.L_gens = [v for v in L_gens if any(v)]
        self.N_gens = [v for v in N_gens if any(v)]
        self._cache = {}

    @property
    def over_Z(self) -> bool:
        return self.K.kind == "Z"

    @property
    def L_basis(self):
        if "L" not in self._cache:
            if self.over_Z:
                self._cache["L"] = linalg.hermite_basis(self.L_gens, self.n)
            else:
                self._cache["L"] = linalg.rref(self.K, self.L_gens, self.n)[0]
        return self._cache["L"]

    def N_coords(self) -> List[list]:
        B = self.L_basis
        out = []
        for v in self.N_gens:
            c = linalg.lattice_coords(B, v)
            if c is None:
                raise ArithmeticError("boundary is not inside the cycle lattice")
            out.append(c)
        return out

    def invariants(self) -> Tuple[List[int], int]:
        """(torsion invariant factors, free rank) over Z; (None, dim) over a field."""
        if self.over_Z:
            l = len(self.L_basis)
            return linalg.invariant_factors(self.N_coords(), l)
        return [], len(self.L_basis) - linalg.rank(self.K, self.N_gens, self.n)

    def dim(self) -> int:
        if self.over_Z:
            raise ValueError("dimension asked over Z")
        return self.invariants()[1]

    def is_zero(self) -> bool:
        tors, free = self.invariants()
        return not tors and free == 0

    def map_info(self, f: List[list], other: "Subquotient") -> Tuple[bool, bool]:
        """(injective, surjective) for the map L/N -> other induced by f."""
        K = self.K
        images = [linalg.matvec(K, f, v) for v in self.L_basis]
        if not self.over_Z:
            r2 = linalg.rank(K, other.N_gens, other.n)
            im = linalg.rank(K, images + other.N_gens, other.n) - r2
            return im == self.dim(), im == other.dim()
        surj = (linalg.hermite_basis(images + other.N_gens, other.n)
                == linalg.hermite_basis(other.L_basis, other.n))
        # preimage of other.N inside L
        cols = images + other.N_gens
        A = linalg.transpose(cols, other.n) if cols else [[] for _ in range(other.n)]
        ker = linalg.integer_kernel(A, len(cols))
        pre = []
        for y in ker:
            x = [0] * self.n
            for coef, b in zip(y[:len(images)], self.L_basis):
                if coef:
                    x = [a + coef * c for a, c in zip(x, b)]
            pre.append(x)
        inj = (linalg.hermite_basis(pre + self.N_gens, self.n)
               == linalg.hermite_basis(self.N_gens, self.n))
        return inj, surj


def kernel_preimage(K, Dout: List[list], ns: int, rel_out: List[list]) -> List[list]:
    """Generators of {x in K^ns : Dout x in span(rel_out)}."""
    nt = len(Dout)
    if nt == 0:
        return [[K(int(i == j)) for j in range(ns)] for i in range(ns)]
    r = len(rel_out)
    A = [list(Dout[t]) + [K.neg(rel_out[k][t]) for k in range(r)] for t in range(nt)]
    if K.kind == "Z":
        ker = linalg.integer_kernel(A, ns + r)
    else:
        ker = linalg.nullspace(K, A, ns + r)
    return [v[:ns] for v in ker]


def columns(M: List[list], ncols: int) -> List[list]:
    if not M:
        return [[] for _ in range(ncols)]
    return [list(c) for c in zip(*M)]


# ---------------------------------------------------------------------------
# descriptors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ModuleDescriptor:
    """Canonical form of a computed module.

    kind 'Z': torsion invariant factors plus free rank (as an abelian group).
    kind 'field': total dimension.  kind 'graded': nonzero dimensions per
    internal degree, valid for degrees <= top.
    """

    kind: str
    torsion: Tuple[int, ...] = ()
    free_rank: int = 0
    dims: Tuple[Tuple[int, int], ...] = ()
    top: Optional[int] = None
    nu: Optional[int] = field(default=None, compare=False)

    @property
    def is_zero(self) -> bool:
        return not self.torsion and self.free_rank == 0 and not self.dims

    @property
    def total_dim(self) -> int:
        if self.kind == "graded":
            return sum(v for _, v in self.dims)
        if self.kind == "field":
            return self.free_rank
        raise ValueError("no dimension over Z")

    @property
    def invariant_factors(self) -> Tuple[int, ...]:
        """Divisibility chain with 0 standing for free summands."""
        return self.torsion + (0,) * self.free_rank

    def dim_in(self, d: int) -> int:
        return dict(self.dims).get(d, 0)

    def canonical(self) -> str:
        if self.is_zero:
            return "0"
        if self.kind == "Z":
            parts = ["Z"] * self.free_rank + [f"Z/{t}" for t in self.torsion]
            return " + ".join(parts)
        if self.kind == "field":
            return f"k^{self.free_rank}"
        body = ",".join(f"{d}:{v}" for d, v in self.dims)
        return f"k-graded {{{body}}} (deg<={self.top})"

    def __str__(self):
        return self.canonical()

    @classmethod
    def zero_like(cls, kind, top=None):
        return cls(kind, top=top)


def descriptor_from(sqs, kind: str, top=None) -> ModuleDescriptor:
    """Build a descriptor from one subquotient or a dict degree -> subquotient."""
    if kind == "graded":
        dims = []
        for d in sorted(sqs):
            v = sqs[d].dim()
            if v:
                dims.append((d, v))
        return ModuleDescriptor("graded", dims=tuple(dims), top=top)
    tors, free = sqs.invariants()
    if kind == "Z":
        return ModuleDescriptor("Z", torsion=tuple(tors), free_rank=free)
    return ModuleDescriptor("field", free_rank=free)


def descriptor_kind(pres: AlgebraPresentation) -> str:
    if pres.mode == "graded":
        return "graded"
    if pres.coeffs.kind == "Z":
        return "Z"
    return "field"


def parse_module(text: str, pres: AlgebraPresentation) -> ModulePresentation:
    """Module file: ``matrix`` (rows = generators, columns = relations, entries
    as polynomial strings) and optional ``degrees`` of the generators."""
    from hochgap.errors import ParseError
    from hochgap.presentation import tomllib
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ParseError(f"malformed module file: {exc}")
    rows = data.get("matrix")
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise ParseError("module file needs a nonempty 'matrix' (list of rows)")
    if len({len(r) for r in rows}) != 1:
        raise ParseError("matrix rows have different lengths")
    matrix = [[pres.element(str(e)) for e in row] for row in rows]
    return ModulePresentation(pres, matrix, data.get("degrees"), nrels=len(rows[0]))
