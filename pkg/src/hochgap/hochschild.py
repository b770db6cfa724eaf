"""Hochschild homology and cohomology of commutative algebras S free over
K, computed as Tor and Ext over the enveloping algebra S (x)_K S.

Four resolutions of S over S^e are available: a period-two complex for
monogenic S, the Koszul complex on the diagonal generators, the second
Tate stage G^(2), and a graded minimal free resolution as a fallback.  A normalized bar complex gives an independent oracle in
the finite-dimensional case.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from hochgap import linalg
from hochgap.complexes import DEFAULT_TOP, FreeComplex
from hochgap.errors import (InfiniteDimensional, StrategyInapplicable, UnsupportedBase,
                            UnsupportedRing)
from hochgap.modules import (Ambient, ModuleDescriptor, ModulePresentation, Subquotient,
                             apply_matrix, scalar_model)
from hochgap.poly import Poly, PolyRing
from hochgap.presentation import AlgebraPresentation
from hochgap.resolutions import Surjection, koszul_complex, minimal_free_resolution, tate_stage

STRATEGIES = ("auto", "periodic", "koszul", "tate", "minimal")


# ---------------------------------------------------------------------------
# enveloping algebra
# ---------------------------------------------------------------------------

def primed(name: str) -> str:
    return name + "_"


@dataclass
class EnvelopingPresentation:
    base: AlgebraPresentation
    pres: AlgebraPresentation          # S (x)_K S on variables x_i, x_i'
    phi_images: List[Poly]             # multiplication map, variable images in S
    diagonal: List[Poly]               # x_i - x_i'

    @property
    def n(self) -> int:
        return self.base.nvars

    def left(self, s: Poly) -> Poly:
        """s (x) 1."""
        imgs = self.pres.ring.gens()[:self.n]
        return self.pres.nf(s.substitute(imgs, self.pres.ring))

    def section(self, s: Poly) -> Poly:
        """1 (x) s."""
        imgs = self.pres.ring.gens()[self.n:]
        return self.pres.nf(s.substitute(imgs, self.pres.ring))

    def multiply(self, u: Poly) -> Poly:
        """phi^S(u)."""
        return self.base.nf(u.substitute(self.phi_images, self.base.ring))

    def surjection(self) -> Surjection:
        return Surjection(self.pres, self.diagonal, has_section=True)


def enveloping(pres: AlgebraPresentation) -> EnvelopingPresentation:
    if pres.coeffs.kind == "Z" and not pres.is_monogenic_over_Z:
        raise UnsupportedRing("enveloping algebras over Z are built for monogenic Z[t]/(f) only")
    names = list(pres.ring.names) + [primed(v) for v in pres.ring.names]
    degrees = list(pres.ring.degrees) * 2
    ring = PolyRing(pres.coeffs, names, degrees)
    n = pres.nvars
    gens = ring.gens()
    rels = [r.substitute(gens[:n], ring) for r in pres.relations]
    rels += [r.substitute(gens[n:], ring) for r in pres.relations]
    env = AlgebraPresentation(ring, rels, {"name": f"{pres.meta.get('name', 'S')}^e"})
    phi = list(pres.ring.gens()) * 2
    diagonal = [gens[i] - gens[n + i] for i in range(n)]
    return EnvelopingPresentation(pres, env, phi, diagonal)


def divided_difference(f: Poly, env: EnvelopingPresentation) -> Poly:
    """f* = (f(t) - f(t')) / (t - t') for univariate f."""
    ring = env.pres.ring
    t, tp = ring.gens()
    out = ring.zero()
    for m, c in f.terms.items():
        k = m[0]
        for i in range(k):
            out = out + (t ** i) * (tp ** (k - 1 - i)) * c
    return out


# ---------------------------------------------------------------------------
# resolutions of S over S^e
# ---------------------------------------------------------------------------

def _periodic(env: EnvelopingPresentation, cutoff: int) -> FreeComplex:
    S = env.base
    if S.nvars != 1 or len(S.relations) != 1:
        raise StrategyInapplicable("periodic strategy needs S = K[t]/(f) with f nonzero")
    f = S.relations[0]
    if f.degree() < 1:
        raise StrategyInapplicable("periodic strategy needs a nonconstant f")
    R = env.pres
    odd = R.nf(env.diagonal[0])
    even = R.nf(divided_difference(f, env))
    w = S.ring.degrees[0]
    e = f.degree() if f.is_homogeneous() else 0
    ranks = {n: 1 for n in range(cutoff + 2)}
    degrees = {n: [(n // 2) * e + (w if n % 2 else 0)] for n in ranks}
    diffs = {n: [[odd if n % 2 else even]] for n in range(1, cutoff + 2)}
    C = FreeComplex(R, ranks, diffs, degrees)
    C.strategy = "periodic"
    C.exterior = {0: {(): 0}, 1: {(0,): 0}}
    return C


def _koszul(env: EnvelopingPresentation, cutoff: int) -> FreeComplex:
    C = koszul_complex(env.pres, env.diagonal)
    h1 = C.homology(1) if C.rank(1) else None
    if h1 is not None and not h1.is_zero:
        raise StrategyInapplicable(
            f"diagonal generators are not a regular sequence (H_1 of their Koszul complex is {h1})")
    if env.pres.mode == "graded":
        C.caveats = C.caveats + [f"regularity of the diagonal checked in internal degrees <= {DEFAULT_TOP}"]
    C.strategy = "koszul"
    C.exterior = {n: {I: k for k, I in enumerate(itertools.combinations(range(env.n), n))}
                  for n in range(env.n + 1)}
    return C


def _tate(env: EnvelopingPresentation, cutoff: int) -> FreeComplex:
    R = env.pres
    if R.mode == "graded":
        pass
    elif R.mode == "finite" and R.coeffs.is_field:
        from hochgap.local import default_maximal_ideal
        if default_maximal_ideal(R) is None:
            raise StrategyInapplicable("tate strategy needs a local enveloping algebra")
    else:
        raise StrategyInapplicable("tate strategy needs a coefficient field")
    stage = tate_stage(env.surjection(), 2, cutoff + 1)
    C = stage.complex
    for i in range(1, cutoff + 1):
        if not C.homology(i).is_zero:
            raise StrategyInapplicable(f"G^(2) is not acyclic (H_{i} != 0)")
    C.strategy = "tate"
    C.exterior = {}
    for n, ws in stage.words.items():
        ext = {w[0]: k for k, w in enumerate(ws) if not any(w[1])}
        if ext:
            C.exterior[n] = ext
    return C


def _minimal(env: EnvelopingPresentation, cutoff: int) -> FreeComplex:
    R = env.pres
    if R.mode != "graded" or not R.coeffs.is_field:
        raise StrategyInapplicable("minimal strategy needs a graded algebra over a field")
    C = minimal_free_resolution(R, ModulePresentation.cyclic(R, env.diagonal), cutoff + 1)
    C.strategy = "minimal"
    C.exterior = {0: {(): 0}}
    # minimal generators are chosen greedily in input order, so when all
    # diagonal generators survive they are the degree one basis
    if C.rank(1) == env.n:
        C.exterior[1] = {(i,): i for i in range(env.n)}
    return C


def diagonal_resolution(env: EnvelopingPresentation, strategy: str = "auto",
                        cutoff: int = DEFAULT_TOP) -> FreeComplex:
    """Free resolution of S over S^e through homological degree cutoff + 1
    (so that homology in degrees <= cutoff is exact).  The returned complex
    carries ``strategy`` and ``exterior`` (positions of the basis elements
    x_I in each degree)."""
    if strategy == "periodic":
        return _periodic(env, cutoff)
    if strategy == "koszul":
        return _koszul(env, cutoff)
    if strategy == "tate":
        return _tate(env, cutoff)
    if strategy == "minimal":
        return _minimal(env, cutoff)
    if strategy != "auto":
        raise ValueError(f"unknown strategy {strategy!r}")
    reasons = []
    for builder in (_periodic, _koszul, _tate, _minimal):
        try:
            return builder(env, cutoff)
        except StrategyInapplicable as exc:
            reasons.append(str(exc))
    raise StrategyInapplicable("; ".join(reasons))


def applicable_strategies(pres: AlgebraPresentation, cutoff: int = 4) -> List[str]:
    env = enveloping(pres)
    out = []
    for name in ("periodic", "koszul", "tate", "minimal"):
        try:
            diagonal_resolution(env, name, cutoff)
            out.append(name)
        except (StrategyInapplicable, UnsupportedBase):
            pass
    return out


# ---------------------------------------------------------------------------
# tables
# ---------------------------------------------------------------------------

@dataclass
class HochschildTable:
    direction: str
    module: str
    cutoff: int
    descriptors: List[ModuleDescriptor]
    strategies: List[str]
    caveats: List[str] = field(default_factory=list)
    complex: Optional[FreeComplex] = field(default=None, repr=False, compare=False)

    def __getitem__(self, n: int) -> ModuleDescriptor:
        return self.descriptors[n]

    def __len__(self):
        return len(self.descriptors)

    def canonical(self) -> List[str]:
        return [d.canonical() for d in self.descriptors]

    def zero_degrees(self) -> List[int]:
        return [n for n, d in enumerate(self.descriptors) if d.is_zero]

    def to_record(self) -> dict:
        return {
            "direction": self.direction,
            "module": self.module,
            "cutoff": self.cutoff,
            "entries": [{"degree": n, "descriptor": d.canonical(), "strategy": s}
                        for n, (d, s) in enumerate(zip(self.descriptors, self.strategies))],
            "caveats": list(self.caveats),
        }

    def to_text(self) -> str:
        name = "HH_n" if self.direction == "homology" else "HH^n"
        lines = [f"{name}(S, {self.module}) for 0 <= n <= {self.cutoff}"]
        for n, (d, s) in enumerate(zip(self.descriptors, self.strategies)):
            lines.append(f"  n={n}: {d.canonical()}   [{s}]")
        lines += [f"caveat: {c}" for c in self.caveats]
        return "\n".join(lines)


def base_changed_resolution(pres: AlgebraPresentation, strategy: str, cutoff: int):
    env = enveloping(pres)
    C = diagonal_resolution(env, strategy, cutoff)
    CS = C.tensor_over_base(pres, env.phi_images)
    return env, C, CS


def _table(pres, module, cutoff, strategy, direction, top) -> HochschildTable:
    env, C, CS = base_changed_resolution(pres, strategy, cutoff)
    module = module or ModulePresentation.free(pres)
    caveats = list(C.caveats)
    if direction == "homology":
        descs = [CS.homology(n, module, top) for n in range(cutoff + 1)]
        work = CS
    else:
        work = CS.hom_dual()
        descs = [work.homology(-n, module, top) for n in range(cutoff + 1)]
    if pres.mode == "graded":
        caveats.append(f"graded descriptors list internal degrees <= {top}")
    if C.hi > cutoff and C.rank(cutoff + 1):
        caveats.append(f"resolution computed through degree {cutoff + 1}; higher degrees not reported")
    return HochschildTable(direction, repr(module), cutoff, descs, [C.strategy] * len(descs),
                           caveats, work)


def hochschild_homology(pres: AlgebraPresentation, module: Optional[ModulePresentation] = None,
                        cutoff: int = DEFAULT_TOP, strategy: str = "auto",
                        top: int = DEFAULT_TOP) -> HochschildTable:
    """HH_n(K, S, M) = Tor_n^{S^e}(S, M) for 0 <= n <= cutoff."""
    return _table(pres, module, cutoff, strategy, "homology", top)


def hochschild_cohomology(pres: AlgebraPresentation, module: Optional[ModulePresentation] = None,
                          cutoff: int = DEFAULT_TOP, strategy: str = "auto",
                          top: int = DEFAULT_TOP) -> HochschildTable:
    """HH^n(K, S, M) = Ext^n_{S^e}(S, M) for 0 <= n <= cutoff."""
    return _table(pres, module, cutoff, strategy, "cohomology", top)


# ---------------------------------------------------------------------------
# bar complex oracle
# ---------------------------------------------------------------------------

class _FiniteModule:
    """M = coker(A) over a finite-dimensional S, as a K-vector space with
    the action of S."""

    def __init__(self, pres: AlgebraPresentation, module: ModulePresentation):
        self.pres = pres
        self.K = pres.coeffs
        model = scalar_model(pres)
        self.amb = Ambient(model, [0] * module.ngens, ModulePresentation.free(pres))
        size = self.amb.size(None)
        span = linalg.Span(self.K, size)
        basis = [pres.ring.monomial(m) for m in pres.finite_basis]
        for k in range(module.nrels):
            for b in basis:
                v = self.amb.vector(None, {(g, 0): b * module.matrix[g][k] for g in range(module.ngens)})
                span.add(v)
        self.span = span
        self.free = [j for j in range(size) if j not in set(span.pivots)]
        self.dim = len(self.free)

    def coords(self, v) -> list:
        r = self.span.reduce(v)
        return [r[j] for j in self.free]

    def action(self, s: Poly) -> list:
        """Matrix (rows = output coords) of multiplication by s."""
        cols = []
        for j in self.free:
            v = [self.K(0)] * self.amb.size(None)
            v[j] = self.K(1)
            parts = self.amb.element(None, v)
            w = self.amb.vector(None, {k: s * p for k, p in parts.items()})
            cols.append(self.coords(w))
        return linalg.transpose(cols, self.dim) if cols else []


def bar_oracle(pres: AlgebraPresentation, module: Optional[ModulePresentation] = None,
               cutoff: int = 4, direction: str = "homology") -> List[int]:
    """dim_K HH_n (or HH^n) for 0 <= n <= cutoff from the normalized bar
    complex of a finite-dimensional S over a field."""
    if not pres.coeffs.is_field:
        raise UnsupportedBase("bar oracle needs a coefficient field")
    if not pres.is_finite:
        raise InfiniteDimensional("bar oracle needs dim_K S finite")
    K = pres.coeffs
    module = module or ModulePresentation.free(pres)
    M = _FiniteModule(pres, module)
    basis = pres.finite_basis
    ring = pres.ring
    one = tuple([0] * pres.nvars)
    if one not in basis:        # S = 0
        return [0] * (cutoff + 1)
    bar = [m for m in basis if m != one]      # basis of S / K
    sb = len(bar)
    bidx = {m: i for i, m in enumerate(bar)}
    # products projected to S-bar
    prod = {}
    for a in range(sb):
        for b in range(sb):
            p = pres.nf(ring.monomial(bar[a]) * ring.monomial(bar[b]))
            prod[a, b] = [(bidx[m], c) for m, c in p.terms.items() if m != one]
    act = [M.action(ring.monomial(m)) for m in bar]
    dm = M.dim

    def words(n):
        return list(itertools.product(range(sb), repeat=n))

    def index(n):
        return {w: k for k, w in enumerate(words(n))}

    def chain_matrix(n):
        """b_n : M (x) Sbar^n -> M (x) Sbar^(n-1), rows = targets."""
        src, tgt = words(n), index(n - 1)
        rows, cols = len(tgt) * dm, len(src) * dm
        D = [[K(0)] * cols for _ in range(rows)]
        for wi, w in enumerate(src):
            for j in range(dm):
                col = wi * dm + j
                A = act[w[0]]
                for jj in range(dm):       # m a_1 (x) a_2..a_n
                    if A[jj][j]:
                        r = tgt[w[1:]] * dm + jj
                        D[r][col] = K.add(D[r][col], A[jj][j])
                for i in range(1, n):
                    sign = -1 if i % 2 else 1
                    for c, coeff in prod[w[i - 1], w[i]]:
                        w2 = w[:i - 1] + (c,) + w[i + 1:]
                        r = tgt[w2] * dm + j
                        D[r][col] = K.add(D[r][col], K(sign * coeff))
                A = act[w[-1]]
                sign = -1 if n % 2 else 1
                for jj in range(dm):       # a_n m (x) a_1..a_{n-1}
                    if A[jj][j]:
                        r = tgt[w[:-1]] * dm + jj
                        D[r][col] = K.add(D[r][col], K(sign * A[jj][j]))
        return D, cols

    def cochain_matrix(n):
        """delta^n : Hom(Sbar^n, M) -> Hom(Sbar^(n+1), M), rows = targets."""
        src, tgt = index(n), words(n + 1)
        rows, cols = len(tgt) * dm, len(src) * dm
        D = [[K(0)] * cols for _ in range(rows)]
        for wi, w in enumerate(tgt):
            for jj in range(dm):
                r = wi * dm + jj
                A = act[w[0]]
                for j in range(dm):        # b_1 f(b_2..)
                    if A[jj][j]:
                        c = src[w[1:]] * dm + j
                        D[r][c] = K.add(D[r][c], A[jj][j])
                for i in range(1, n + 1):
                    sign = -1 if i % 2 else 1
                    for cc, coeff in prod[w[i - 1], w[i]]:
                        w2 = w[:i - 1] + (cc,) + w[i + 1:]
                        c = src[w2] * dm + jj
                        D[r][c] = K.add(D[r][c], K(sign * coeff))
                A = act[w[-1]]
                sign = -1 if (n + 1) % 2 else 1
                for j in range(dm):        # f(b_1..b_n) b_{n+1}
                    if A[jj][j]:
                        c = src[w[:-1]] * dm + j
                        D[r][c] = K.add(D[r][c], K(sign * A[jj][j]))
        return D, cols

    dims = []
    if direction == "homology":
        ranks = {0: 0}
        for n in range(1, cutoff + 2):
            D, cols = chain_matrix(n)
            ranks[n] = linalg.rank(K, D, cols) if D and cols else 0
        for n in range(cutoff + 1):
            dims.append(dm * sb ** n - ranks[n] - ranks[n + 1])
    elif direction == "cohomology":
        ranks = {-1: 0}
        for n in range(0, cutoff + 1):
            D, cols = cochain_matrix(n)
            ranks[n] = linalg.rank(K, D, cols) if D and cols else 0
        for n in range(cutoff + 1):
            dims.append(dm * sb ** n - ranks[n] - ranks[n - 1])
    else:
        raise ValueError("direction is 'homology' or 'cohomology'")
    return dims


# ---------------------------------------------------------------------------
# Kahler differentials and the HKR maps
# ---------------------------------------------------------------------------

def _wedge_sign(J: Tuple[int, ...], i: int):
    """dx_i ^ dx_J = sign * dx_{J+i}."""
    if i in J:
        return 0, None
    before = sum(1 for k in J if k < i)
    return (-1) ** before, tuple(sorted(J + (i,)))


@dataclass
class KahlerModule:
    pres: AlgebraPresentation
    jacobian: List[List[Poly]]                 # rows: relations, columns: variables
    omega: ModulePresentation
    powers: Dict[int, ModulePresentation]
    subsets: Dict[int, List[Tuple[int, ...]]]

    def power(self, n: int) -> ModulePresentation:
        if n in self.powers:
            return self.powers[n]
        return ModulePresentation(self.pres, [], [], nrels=0)

    def descriptor(self, n: int, module: Optional[ModulePresentation] = None,
                   top: int = DEFAULT_TOP) -> ModuleDescriptor:
        """Descriptor of Lambda^n Omega (x)_S M."""
        return _presentation_complex(self.pres, self.power(n)).homology(0, module, top)


def _presentation_complex(pres, P: ModulePresentation) -> FreeComplex:
    """0 <- F_0 <- F_1 with d_1 = the presentation matrix."""
    r0 = len(P.gen_degrees)      # zero-generator modules have no gen_degrees
    r1 = P.nrels if r0 else 0
    ranks = {0: r0, 1: r1}
    degrees = {0: list(P.gen_degrees), 1: list(P.rel_degrees) if r1 else []}
    diffs = {1: P.matrix} if r1 else {}
    return FreeComplex(pres, ranks, diffs, degrees)


def kahler(pres: AlgebraPresentation) -> KahlerModule:
    """Omega_{S|K} = coker of the transposed Jacobian, with exterior powers
    Lambda^n Omega = Lambda^n F / (dr ^ Lambda^{n-1} F)."""
    n = pres.nvars
    rels = list(pres.relations)
    jac = [[pres.nf(r.derivative(i)) for i in range(n)] for r in rels]
    degs = list(pres.ring.degrees)
    powers = {}
    subsets = {}
    for k in range(n + 1):
        subs = list(itertools.combinations(range(n), k))
        subsets[k] = subs
        pos = {I: a for a, I in enumerate(subs)}
        cols = []
        if k >= 1:
            for r_idx in range(len(rels)):
                for J in itertools.combinations(range(n), k - 1):
                    col = [pres.ring.zero()] * len(subs)
                    for i in range(n):
                        e = jac[r_idx][i]
                        if e.is_zero():
                            continue
                        s, I = _wedge_sign(J, i)
                        if s:
                            col[pos[I]] = col[pos[I]] + e * s
                    col = [pres.nf(e) for e in col]
                    if any(not e.is_zero() for e in col):
                        cols.append(col)
        matrix = [[col[a] for col in cols] for a in range(len(subs))]
        gdeg = [sum(degs[i] for i in I) for I in subs]
        powers[k] = ModulePresentation(pres, matrix, gdeg, nrels=len(cols))
    omega = powers[1] if n >= 1 else ModulePresentation(pres, [], [], nrels=0)
    return KahlerModule(pres, jac, omega, powers, subsets)


@dataclass
class LambdaReport:
    direction: str
    degree: int
    source: ModuleDescriptor
    target: ModuleDescriptor
    injective: bool
    surjective: bool

    @property
    def bijective(self) -> bool:
        return self.injective and self.surjective

    @property
    def verdict(self) -> str:
        if self.bijective:
            return "bijective"
        if self.injective:
            return "injective-only"
        if self.surjective:
            return "surjective-only"
        return "neither"

    def to_record(self) -> dict:
        return {"direction": self.direction, "degree": self.degree,
                "source": self.source.canonical(), "target": self.target.canonical(),
                "verdict": self.verdict}


def _pieces(sq):
    return sq if isinstance(sq, dict) else {None: sq}


def hkr_lambda(pres: AlgebraPresentation, module: Optional[ModulePresentation] = None,
               n: int = 1, direction: str = "homology", strategy: str = "auto",
               top: int = DEFAULT_TOP) -> LambdaReport:
    """The map lambda_n : Lambda^n Omega (x) M -> HH_n(S, M) sending
    dx_I (x) m to the class of x_I (x) m, or its cohomological counterpart
    HH^n(S, M) -> Hom_S(Lambda^n Omega, M) restricting cocycles to the x_I.
    Injectivity and surjectivity are decided degreewise on the K-structure."""
    module = module or ModulePresentation.free(pres)
    env, C, CS = base_changed_resolution(pres, strategy, max(n, 1))
    kah = kahler(pres)
    P = kah.power(n)
    subs = kah.subsets.get(n, [])
    pos = C.exterior.get(n, {})
    model = scalar_model(pres)
    ring = pres.ring
    rank_n = CS.rank(n)
    incl = [[ring.zero()] * len(subs) for _ in range(rank_n)]
    for a, I in enumerate(subs):
        if I not in pos:
            raise StrategyInapplicable(f"resolution has no basis element x_{I}")
        incl[pos[I]][a] = ring.one()
    pc = _presentation_complex(pres, P)
    kind = "graded" if model.graded else ("Z" if pres.coeffs.kind == "Z" else "field")
    from hochgap.modules import descriptor_from
    if direction == "homology":
        src_sq = _pieces(pc.homology_subquotients(0, module, top))
        tgt_sq = _pieces(CS.homology_subquotients(n, module, top))
        src_amb = Ambient(model, pc.degs(0), module)
        tgt_amb = Ambient(model, CS.degs(n), module)
        mat = incl
    elif direction == "cohomology":
        dual = CS.hom_dual()
        pdual = pc.hom_dual()
        src_sq = _pieces(dual.homology_subquotients(-n, module, top))
        tgt_sq = _pieces(pdual.homology_subquotients(0, module, top))
        src_amb = Ambient(model, dual.degs(-n), module)
        tgt_amb = Ambient(model, pdual.degs(0), module)
        mat = [list(r) for r in zip(*incl)] if incl and subs else [[] for _ in subs]
    else:
        raise ValueError("direction is 'homology' or 'cohomology'")
    inj = surj = True
    for d in sorted(set(src_sq) | set(tgt_sq), key=lambda x: (x is None, x)):
        s = src_sq.get(d) or Subquotient(model.K, src_amb.size(d), [], [])
        t = tgt_sq.get(d) or Subquotient(model.K, tgt_amb.size(d), [], [])
        if s.n == 0 or t.n == 0:
            i_ok, s_ok = s.is_zero(), t.is_zero()
        else:
            f = apply_matrix(mat, src_amb, tgt_amb, d)
            i_ok, s_ok = s.map_info(f, t)
        inj = inj and i_ok
        surj = surj and s_ok
    top_arg = top if kind == "graded" else None
    src_d = descriptor_from(src_sq if model.graded else src_sq[None], kind, top_arg)
    tgt_d = descriptor_from(tgt_sq if model.graded else tgt_sq[None], kind, top_arg)
    return LambdaReport(direction, n, src_d, tgt_d, inj, surj)
