"""Koszul complexes, minimal free resolutions, the second Tate stage G^(2)
of an acyclic closure, comparison morphisms, deviations and p-closedness.

All local computations are over a field, at the irrelevant ideal of a
graded algebra or at the maximal ideal of a finite local algebra.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from hochgap import linalg
from hochgap.complexes import DEFAULT_TOP, FreeComplex, poly_matmul
from hochgap.errors import (LiftFailure, NoMaximalIdeal, NonMinimalGenerators, UnsupportedBase)
from hochgap.local import default_maximal_ideal, localize, residue_degree
from hochgap.modules import Ambient, ModulePresentation, apply_matrix, scalar_model
from hochgap.poly import Poly
from hochgap.presentation import AlgebraPresentation

Column = List[Poly]


# ---------------------------------------------------------------------------
# Koszul complexes
# ---------------------------------------------------------------------------

def koszul_complex(pres: AlgebraPresentation, elements: Sequence[Poly]) -> FreeComplex:
    """Exterior-algebra complex on the given elements; basis of degree n is
    the n-subsets of positions, in lexicographic order."""
    elements = [pres.nf(a) for a in elements]
    c = len(elements)
    graded = pres.mode == "graded"
    if graded and any(not a.is_homogeneous() for a in elements):
        raise ValueError("Koszul complex over a graded ring needs homogeneous elements")
    edeg = [max(a.degree(), 0) for a in elements]
    subsets = {n: list(itertools.combinations(range(c), n)) for n in range(c + 1)}
    ranks = {n: len(s) for n, s in subsets.items()}
    degrees = {n: [sum(edeg[i] for i in I) for I in s] for n, s in subsets.items()}
    diffs = {}
    zero = pres.ring.zero()
    for n in range(1, c + 1):
        pos = {I: k for k, I in enumerate(subsets[n - 1])}
        D = [[zero] * ranks[n] for _ in range(ranks[n - 1])]
        for j, I in enumerate(subsets[n]):
            for k, i in enumerate(I):
                rest = I[:k] + I[k + 1:]
                D[pos[rest]][j] = elements[i] if k % 2 == 0 else -elements[i]
        diffs[n] = D
    return FreeComplex(pres, ranks, diffs, degrees)


# ---------------------------------------------------------------------------
# local data and submodule generators
# ---------------------------------------------------------------------------

def _require_local(pres: AlgebraPresentation, ideal=None) -> List[Poly]:
    if not pres.coeffs.is_field:
        raise UnsupportedBase("local constructions need a coefficient field")
    if ideal is not None:
        return list(ideal)
    m = default_maximal_ideal(pres)
    if m is None:
        raise NoMaximalIdeal(f"{pres!r} is neither graded nor finite local")
    return m


def _col_degree(pres, col: Column, comp_degrees) -> Optional[int]:
    for e, cd in zip(col, comp_degrees):
        if not e.is_zero():
            return e.degree() + cd
    return None


class SubmoduleTool:
    """Linear algebra on submodules of a free module R^r with fixed
    component degrees."""

    def __init__(self, pres: AlgebraPresentation, comp_degrees: Sequence[int], max_ideal):
        self.pres = pres
        self.model = scalar_model(pres)
        self.amb = Ambient(self.model, comp_degrees, ModulePresentation.free(pres))
        self.comp_degrees = list(comp_degrees)
        self.max_ideal = max_ideal
        self.K = pres.coeffs

    @property
    def graded(self):
        return self.model.graded

    def vec(self, col: Column, d=None) -> list:
        return self.amb.vector(d, {(i, 0): e for i, e in enumerate(col) if not e.is_zero()})

    def col(self, v, d=None) -> Column:
        parts = self.amb.element(d, v)
        z = self.pres.ring.zero()
        return [parts.get((i, 0), z) for i in range(len(self.comp_degrees))]

    def multiples(self, col: Column, d, positive: bool = False) -> List[list]:
        """K-spanning vectors of (R col) in degree d (or of m*col)."""
        pres = self.pres
        out = []
        if self.graded:
            cd = _col_degree(pres, col, self.comp_degrees)
            if cd is None or d < cd:
                return []
            monos = pres.graded_piece_basis(d - cd)
            if positive and d == cd:
                return []
            for m in monos:
                out.append(self.vec([pres.nf(e.mul_monomial(m)) for e in col], d))
        else:
            mults = [pres.ring.monomial(m) for m in pres.finite_basis]
            if positive:
                mults = [g * b for g in self.max_ideal for b in mults]
            for b in mults:
                out.append(self.vec([pres.nf(b * e) for e in col]))
        return out

    def minimal_generators(self, gens: Sequence[Column], modulo: Sequence[Column] = ()) -> List[Column]:
        """A subset of gens whose classes minimally generate (U + V)/V,
        U = <gens>, V = <modulo>, via Nakayama; ties broken by input order."""
        gens = [[self.pres.nf(e) for e in g] for g in gens]
        gens = [g for g in gens if any(not e.is_zero() for e in g)]
        if not self.graded:
            span = linalg.Span(self.K, self.amb.size(None))
            for v in modulo:
                for w in self.multiples(v, None):
                    span.add(w)
            for g in gens:
                for w in self.multiples(g, None, positive=True):
                    span.add(w)
            chosen = []
            for g in gens:
                if not span.contains(self.vec(g)):
                    chosen.append(g)
                    for w in self.multiples(g, None):
                        span.add(w)
            return chosen
        bydeg: Dict[int, List[Column]] = {}
        for g in gens:
            bydeg.setdefault(_col_degree(self.pres, g, self.comp_degrees), []).append(g)
        chosen = []
        for d in sorted(bydeg):
            span = linalg.Span(self.K, self.amb.size(d))
            for v in modulo:
                for w in self.multiples(v, d):
                    span.add(w)
            for g in gens:
                for w in self.multiples(g, d, positive=True):
                    span.add(w)
            for g in bydeg[d]:
                v = self.vec(g, d)
                if span.add(v):
                    chosen.append(g)
        return chosen

    def kernel_columns(self, D, src_degrees, tgt_degrees, dmax: Optional[int]) -> List[Column]:
        """K-basis vectors (as columns) of ker(D: R^src -> R^tgt), degreewise
        up to dmax in the graded case."""
        model = self.model
        free = ModulePresentation.free(self.pres)
        src = Ambient(model, src_degrees, free)
        tgt = Ambient(model, tgt_degrees, free)
        tool = SubmoduleTool(self.pres, src_degrees, self.max_ideal)
        out = []
        degrees = [None] if not model.graded else range(min(src_degrees), dmax + 1)
        for d in degrees:
            n = src.size(d)
            if n == 0:
                continue
            M = apply_matrix(D, src, tgt, d) if tgt_degrees else []
            basis = linalg.nullspace(self.K, M, n) if M else [
                [self.K(int(i == j)) for j in range(n)] for i in range(n)]
            out += [tool.col(v, d) for v in basis]
        return out


# ---------------------------------------------------------------------------
# surjections
# ---------------------------------------------------------------------------

class Surjection:
    """phi: R -> S = R/(kernel), local at a maximal ideal of R."""

    def __init__(self, source: AlgebraPresentation, kernel: Sequence[Poly],
                 maximal_ideal: Optional[Sequence[Poly]] = None, has_section: bool = False):
        self.source = source
        self.kernel = [source.nf(k) for k in kernel]
        self.maximal_ideal = _require_local(source, maximal_ideal)
        self.target = source.quotient(self.kernel)
        self.has_section = has_section
        if source.mode == "graded":
            for k in self.kernel:
                if not k.is_zero() and (not k.is_homogeneous() or k.degree() <= 0):
                    raise ValueError("graded surjection needs homogeneous kernel of positive degree")
        residue = source.quotient(self.maximal_ideal)
        if any(not residue.nf(k).is_zero() for k in self.kernel):
            raise ValueError("kernel is not inside the maximal ideal")

    @classmethod
    def from_presentation(cls, pres: AlgebraPresentation) -> "Surjection":
        if "kernel" not in pres.meta:
            raise ValueError("presentation file declares no kernel")
        return cls(pres, [pres.element(k) for k in pres.meta["kernel"]])

    @classmethod
    def localized(cls, source: AlgebraPresentation, kernel: Sequence[Poly],
                  point: Sequence[Poly], has_section=False) -> "Surjection":
        """phi localized at the maximal ideal generated by ``point`` of a
        finite algebra (point must contain the kernel)."""
        loc = localize(source, point)
        return cls(loc, [loc.nf(k) for k in kernel], [loc.nf(g) for g in point], has_section)

    def degree_bound(self, extra: int = 0) -> int:
        degs = [k.degree() for k in self.kernel if not k.is_zero()]
        rels = [g.degree() for g in self.source.gb]
        return 2 * max(degs + rels + [1]) + 2 + extra

    def tool(self, comp_degrees) -> SubmoduleTool:
        return SubmoduleTool(self.source, comp_degrees, self.maximal_ideal)

    def minimal_kernel_generators(self) -> List[Poly]:
        cols = self.tool([0]).minimal_generators([[k] for k in self.kernel])
        return [c[0] for c in cols]


# ---------------------------------------------------------------------------
# minimal free resolutions
# ---------------------------------------------------------------------------

class MinimalResolution:
    """Degreewise construction F_0 <- F_1 <- ... by minimal generators of
    successive kernels; extended lazily."""

    def __init__(self, pres: AlgebraPresentation, module: ModulePresentation,
                 maximal_ideal=None, degree_slack: int = 1):
        if not pres.coeffs.is_field:
            raise UnsupportedBase("minimal resolutions are computed over a field only")
        self.pres = pres
        self.max_ideal = _require_local(pres, maximal_ideal)
        self.slack = degree_slack
        self.ranks = {0: module.ngens}
        self.degrees = {0: list(module.gen_degrees)}
        self.diffs: Dict[int, list] = {}
        self.caveats: List[str] = []
        tool = SubmoduleTool(pres, self.degrees[0], self.max_ideal)
        cols = [[module.matrix[g][k] for g in range(module.ngens)] for k in range(module.nrels)]
        gens = tool.minimal_generators(cols)
        for col in gens:
            if any(not e.is_zero() and e.is_constant() for e in col):
                raise NonMinimalGenerators("module generators are not minimal")
        self._install(1, gens)
        self.length = 1

    def _install(self, n, gens):
        pres = self.pres
        self.ranks[n] = len(gens)
        self.degrees[n] = [(_col_degree(pres, g, self.degrees[n - 1]) or 0) for g in gens]
        self.diffs[n] = [[g[i] for g in gens] for i in range(self.ranks[n - 1])]

    def extend(self, top: int):
        pres = self.pres
        while self.length < top:
            n = self.length
            if self.ranks.get(n, 0) == 0:
                self.ranks[n + 1] = 0
                self.degrees[n + 1] = []
                self.length += 1
                continue
            tool = SubmoduleTool(pres, self.degrees[n], self.max_ideal)
            dmax = None
            if tool.graded:
                entry = max([e.degree() for row in self.diffs[n] for e in row if not e.is_zero()] + [1])
                rel = max([g.degree() for g in pres.gb] + [1])
                dmax = max(self.degrees[n]) + max(entry, rel) + self.slack
                note = f"syzygies searched up to internal degree max(gen)+{max(entry, rel) + self.slack}"
                if note not in self.caveats:
                    self.caveats.append(note)
            kernel = tool.kernel_columns(self.diffs[n], self.degrees[n], self.degrees[n - 1], dmax)
            gens = tool.minimal_generators(kernel)
            self._install(n + 1, gens)
            self.length += 1

    def complex(self, top: Optional[int] = None) -> FreeComplex:
        if top is not None:
            self.extend(top)
        top = self.length if top is None else top
        ranks = {n: r for n, r in self.ranks.items() if n <= top}
        return FreeComplex(self.pres, ranks, {n: D for n, D in self.diffs.items() if n <= top},
                           {n: self.degrees[n] for n in ranks}, caveats=self.caveats)


def minimal_free_resolution(pres: AlgebraPresentation, module: ModulePresentation,
                            cutoff: int, maximal_ideal=None) -> FreeComplex:
    res = MinimalResolution(pres, module, maximal_ideal)
    return res.complex(cutoff)


# ---------------------------------------------------------------------------
# Tate stages
# ---------------------------------------------------------------------------

Word = Tuple[Tuple[int, ...], Tuple[int, ...]]


def g2_words(c: int, d: int, n: int) -> List[Word]:
    """Basis words x_I y^(J) of homological degree n: |I| + 2|J| = n."""
    out = []
    for k in range(min(c, n) + 1):
        if (n - k) % 2:
            continue
        half = (n - k) // 2
        for I in itertools.combinations(range(c), k):
            for J in _compositions(half, d):
                out.append((I, J))
    out.sort(key=lambda w: (sum(w[1]), tuple(-x for x in w[1]), w[0]))
    return out


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def g2_rank_formula(c: int, d: int, n: int) -> int:
    """Closed form count of words: sum_k binom(c,k) * binom(m+d-1, d-1)."""
    total = 0
    for k in range(0, min(c, n) + 1):
        if (n - k) % 2:
            continue
        m = (n - k) // 2
        total += comb(c, k) * (comb(m + d - 1, d - 1) if d else int(m == 0))
    return total


def _insert_sign(I: Tuple[int, ...], i: int) -> Tuple[int, Optional[Tuple[int, ...]]]:
    """x_I * x_i = sign * x_{I+i}."""
    if i in I:
        return 0, None
    after = sum(1 for k in I if k > i)
    return (-1) ** after, tuple(sorted(I + (i,)))


@dataclass
class TateStage:
    phi: Surjection
    p: int
    cutoff: int
    a: List[Poly]                       # minimal kernel generators
    b: List[List[Poly]]                 # b[i][j]: cycle z_j = sum_i b_ij x_i
    words: Dict[int, List[Word]]
    complex: FreeComplex
    caveats: List[str] = field(default_factory=list)

    @property
    def c(self) -> int:
        return len(self.a)

    @property
    def d(self) -> int:
        return len(self.b[0]) if self.b else 0

    def word_degree(self, w: Word) -> int:
        I, J = w
        adeg = [a.degree() for a in self.a]
        zdeg = [_col_degree(self.phi.source, [self.b[i][j] for i in range(self.c)], adeg)
                for j in range(self.d)]
        return sum(adeg[i] for i in I) + sum(J[j] * zdeg[j] for j in range(self.d))

    def differential_of(self, w: Word) -> Dict[Word, Poly]:
        return _g2_differential(self.a, self.b, w)


def _g2_differential(a, b, w: Word) -> Dict[Word, Poly]:
    I, J = w
    out: Dict[Word, Poly] = {}

    def put(word, coeff):
        out[word] = out[word] + coeff if word in out else coeff

    for k, i in enumerate(I):
        put((I[:k] + I[k + 1:], J), a[i] if k % 2 == 0 else -a[i])
    sgn = -1 if len(I) % 2 else 1
    for h, jh in enumerate(J):
        if jh == 0:
            continue
        J2 = J[:h] + (jh - 1,) + J[h + 1:]
        for i in range(len(a)):
            if b[i][h].is_zero():
                continue
            s, I2 = _insert_sign(I, i)
            if s:
                put((I2, J2), b[i][h] * (s * sgn))
    return {k: v for k, v in out.items() if not v.is_zero()}


def homology_one_generators(phi: Surjection, a: List[Poly], degree_bound: int) -> List[List[Poly]]:
    """Cycles z_j (as columns of coefficients on x_1..x_c) whose classes
    minimally generate H_1 of the Koszul complex on a."""
    R = phi.source
    c = len(a)
    if c == 0:
        return []
    adeg = [a_i.degree() for a_i in a]
    tool = phi.tool(adeg)
    D1 = [a]
    cycles = tool.kernel_columns(D1, adeg, [0], degree_bound)
    E = koszul_complex(R, a)
    boundaries = [[E.d(2)[i][j] for i in range(c)] for j in range(E.rank(2))]
    return tool.minimal_generators(cycles, modulo=boundaries)


def tate_stage(phi: Surjection, p: int = 2, cutoff: int = 6,
               generators: Optional[Sequence[Poly]] = None,
               degree_bound: Optional[int] = None) -> TateStage:
    """G^(1) (Koszul complex on minimal kernel generators) or G^(2)
    (adjoin divided-power variables killing H_1), basis through homological
    degree ``cutoff``."""
    if p not in (1, 2):
        raise ValueError("only stages p = 1, 2 are built")
    R = phi.source
    if generators is None:
        a = phi.minimal_kernel_generators()
    else:
        a = [R.nf(g) for g in generators]
        tool = phi.tool([0])
        if len(tool.minimal_generators([[g] for g in a])) != len(a):
            raise NonMinimalGenerators("supplied kernel generators are not minimal")
    caveats = []
    if p == 2:
        bound = degree_bound if degree_bound is not None else phi.degree_bound()
        cols = homology_one_generators(phi, a, bound)
        if R.mode == "graded":
            caveats.append(f"H_1 generators searched up to internal degree {bound}")
    else:
        cols = []
    c = len(a)
    d = len(cols)
    b = [[col[i] for col in cols] for i in range(c)]
    words = {n: (g2_words(c, d, n) if p == 2 else [w for w in g2_words(c, 0, n)])
             for n in range(cutoff + 1)}
    words = {n: ws for n, ws in words.items() if ws}
    stage = TateStage(phi, p, cutoff, a, b, words, None, caveats)
    ranks = {n: len(ws) for n, ws in words.items()}
    degrees = {n: [stage.word_degree(w) for w in ws] for n, ws in words.items()}
    diffs = {}
    zero = R.ring.zero()
    for n in range(1, cutoff + 1):
        if n not in words or n - 1 not in words:
            continue
        pos = {w: k for k, w in enumerate(words[n - 1])}
        D = [[zero] * len(words[n]) for _ in words[n - 1]]
        for j, w in enumerate(words[n]):
            for w2, coeff in _g2_differential(a, b, w).items():
                D[pos[w2]][j] = coeff
        diffs[n] = D
    stage.complex = FreeComplex(R, ranks, diffs, degrees, caveats=caveats)
    return stage


class DPAlgebra:
    """The divided-power algebra R<x_1..x_c ; y_1..y_d> with its
    multiplication, used to check G^(2) independently of the matrices."""

    def __init__(self, stage: TateStage):
        self.stage = stage
        self.R = stage.phi.source

    def product(self, u: Dict[Word, Poly], v: Dict[Word, Poly]) -> Dict[Word, Poly]:
        out: Dict[Word, Poly] = {}
        for (I, J), f in u.items():
            for (I2, J2), g in v.items():
                if set(I) & set(I2):
                    continue
                inversions = sum(1 for x in I for y in I2 if x > y)
                coeff = (-1) ** inversions
                for j1, j2 in zip(J, J2):
                    coeff *= comb(j1 + j2, j1)
                key = (tuple(sorted(I + I2)), tuple(x + y for x, y in zip(J, J2)))
                val = self.R.nf(f * g * coeff)
                out[key] = out[key] + val if key in out else val
        return {k: w for k, w in out.items() if not w.is_zero()}

    def differential(self, u: Dict[Word, Poly]) -> Dict[Word, Poly]:
        out: Dict[Word, Poly] = {}
        for w, f in u.items():
            for w2, g in self.stage.differential_of(w).items():
                val = self.R.nf(f * g)
                out[w2] = out[w2] + val if w2 in out else val
        return {k: v for k, v in out.items() if not v.is_zero()}

    def basis(self, w: Word) -> Dict[Word, Poly]:
        return {w: self.R.ring.one()}

    def degree(self, w: Word) -> int:
        return len(w[0]) + 2 * sum(w[1])


# ---------------------------------------------------------------------------
# deviations, comparison morphisms, closedness
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Deviations:
    eps2: int
    eps3: int
    caveats: Tuple[str, ...] = ()


def deviations(phi: Surjection, degree_bound: Optional[int] = None) -> Deviations:
    a = phi.minimal_kernel_generators()
    bound = degree_bound if degree_bound is not None else phi.degree_bound()
    cols = homology_one_generators(phi, a, bound)
    cav = (f"H_1 generators searched up to internal degree {bound}",) if phi.source.mode == "graded" else ()
    return Deviations(len(a), len(cols), cav)


def comparison_morphism(G: FreeComplex, F: FreeComplex, top: Optional[int] = None) -> Dict[int, list]:
    """Chain map gamma: G -> F lifting the identity of R = G_0 = F_0."""
    R = G.pres
    if G.rank(0) != 1 or F.rank(0) != 1:
        raise LiftFailure("both complexes must start with R in degree 0")
    model = scalar_model(R)
    free = ModulePresentation.free(R)
    top = min(G.hi, F.hi) if top is None else top
    one = R.ring.one()
    gamma = {0: [[one]]}
    for n in range(1, top + 1):
        if G.rank(n) == 0:
            gamma[n] = [[] for _ in range(F.rank(n))]
            continue
        prev = gamma[n - 1]
        target = poly_matmul(R, prev, G.d(n), G.rank(n - 1)) if G.rank(n - 1) else None
        ambF = Ambient(model, F.degs(n), free)
        ambF1 = Ambient(model, F.degs(n - 1), free)
        cols = []
        for j in range(G.rank(n)):
            deg = G.degs(n)[j] if model.graded else None
            tcol = [target[i][j] for i in range(F.rank(n - 1))]
            b = ambF1.vector(deg, {(i, 0): e for i, e in enumerate(tcol) if not e.is_zero()})
            if not any(b):
                cols.append([R.ring.zero()] * F.rank(n))
                continue
            if F.rank(n) == 0:
                raise LiftFailure(f"no room to lift in degree {n}")
            M = apply_matrix(F.d(n), ambF, ambF1, deg)
            x = linalg.solve(R.coeffs, M, b, ambF.size(deg))
            if x is None:
                raise LiftFailure(f"target not a boundary in degree {n}")
            parts = ambF.element(deg, x)
            cols.append([parts.get((i, 0), R.ring.zero()) for i in range(F.rank(n))])
        gamma[n] = [[col[i] for col in cols] for i in range(F.rank(n))]
    return gamma


@dataclass
class ClosednessCertificate:
    p: int
    closed: bool
    degrees_checked: List[int]
    rows: List[dict]
    method: str
    caveats: List[str]

    def to_record(self) -> dict:
        return {"p": self.p, "closed": self.closed, "degrees_checked": self.degrees_checked,
                "rows": self.rows, "method": self.method, "caveats": self.caveats}


def residue_rank(R: AlgebraPresentation, max_ideal, M, nrows, ncols) -> int:
    """K-rank of k (x) M for a matrix M over R."""
    if nrows == 0 or ncols == 0:
        return 0
    k = R.quotient(list(max_ideal))
    model = scalar_model(k)
    free = ModulePresentation.free(k)
    src = Ambient(model, [0] * ncols, free)
    tgt = Ambient(model, [0] * nrows, free)
    Mk = [[k.nf(e) for e in row] for row in M]
    return linalg.rank(k.coeffs, apply_matrix(Mk, src, tgt, None), src.size(None))


def is_p_closed(phi: Surjection, p: int, cutoff: int = 2, socle: bool = True) -> ClosednessCertificate:
    """Decide whether k (x) gamma: k (x) G^(p) -> k (x) F is injective.

    For p = 2 the cutoff caps divided-power exponents; homological degrees
    0..2*cutoff+1 (complete in every word with exponents <= cutoff) are
    checked.  For p = 1 with ``socle`` only degree c = eps2 is tested.
    """
    R = phi.source
    if p == 1:
        stage = tate_stage(phi, 1, cutoff=len(phi.minimal_kernel_generators()))
        top = stage.c
    else:
        top = 2 * cutoff + 1
        stage = tate_stage(phi, 2, cutoff=top)
    G = stage.complex
    caveats = list(stage.caveats)
    if not G.is_minimal(phi.maximal_ideal):
        return ClosednessCertificate(p, False, [], [], "G not minimal", caveats)
    res = MinimalResolution(R, ModulePresentation.cyclic(R, phi.kernel), phi.maximal_ideal)
    kappa = residue_degree(R, phi.maximal_ideal)
    method = "socle degree c" if (p == 1 and socle) else "all degrees"
    degrees = [stage.c] if (p == 1 and socle) else list(range(top + 1))
    rows = []
    closed = True
    gamma = {0: [[R.ring.one()]]}
    checked = []
    for n in range(top + 1):
        res.extend(n + 1)
        F = res.complex(n)
        if n > 0:
            gamma.update(comparison_morphism(G.truncate(n), F, n))
        if n not in degrees:
            continue
        rG, rF = G.rank(n), F.rank(n)
        r = residue_rank(R, phi.maximal_ideal, gamma[n], rF, rG) if rG else 0
        ok = r == rG * kappa
        rows.append({"degree": n, "rank_G": rG, "rank_F": rF, "rank_k_gamma": r // max(kappa, 1),
                     "injective": ok})
        checked.append(n)
        if not ok:
            closed = False
            break
    caveats += [c for c in res.caveats if c not in caveats]
    if p == 2:
        caveats.append(f"checked through homological degree {top} (divided powers capped at {cutoff})")
    return ClosednessCertificate(p, closed, checked, rows, method, caveats)


def is_regular_sequence(pres: AlgebraPresentation, elements: Sequence[Poly], top: int = DEFAULT_TOP) -> bool:
    """Each element is a nonzerodivisor modulo the previous ones (degreewise
    up to ``top`` in the graded case); independent of Koszul homology."""
    cur = pres
    for a in elements:
        a = cur.nf(a.change_ring(cur.ring) if a.ring != cur.ring else a)
        if a.is_zero():
            return False
        model = scalar_model(cur)
        free = ModulePresentation.free(cur)
        amb = Ambient(model, [0], free)
        degrees = [None] if not model.graded else range(0, top + 1)
        for d in degrees:
            n = amb.size(d)
            if n == 0:
                continue
            dt = None if d is None else d + a.degree()
            M = apply_matrix([[a]], amb, amb, d, dt)
            if linalg.rank(cur.coeffs, M, n) < n:
                return False
        cur = cur.quotient([a])
    return True
