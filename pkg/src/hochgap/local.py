"""Maximal ideals, localization of finite algebras, and minimal numbers of
generators of computed modules."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import sympy

from hochgap import linalg
from hochgap.errors import UnsupportedBase, UnsupportedRing
from hochgap.modules import Ambient, ModulePresentation, apply_matrix, scalar_model
from hochgap.poly import Poly
from hochgap.presentation import AlgebraPresentation


def is_nilpotent(pres: AlgebraPresentation, f: Poly) -> bool:
    n = len(pres.finite_basis)
    return pres.nf(f ** (n + 1)).is_zero()


def default_maximal_ideal(pres: AlgebraPresentation) -> Optional[List[Poly]]:
    """The irrelevant ideal (graded), a declared ideal, or the variables of
    a finite local algebra whose variables are nilpotent."""
    if "maximal_ideal" in pres.meta:
        return [pres.element(g) for g in pres.meta["maximal_ideal"]]
    if pres.mode == "graded":
        return pres.ring.gens()
    if pres.mode == "finite" and pres.coeffs.is_field:
        if all(is_nilpotent(pres, x) for x in pres.ring.gens()):
            return pres.ring.gens()
    return None


def factor_univariate(f: Poly, modulus: Optional[int] = None) -> List[Tuple[Poly, int]]:
    """Monic irreducible factors with multiplicities of a one-variable f,
    over Q or modulo a prime."""
    ring = f.ring
    if ring.nvars != 1:
        raise UnsupportedRing("factorization only for one-variable relations")
    t = sympy.Symbol("t")
    expr = sum(sympy.Rational(str(c)) * t ** m[0] for m, c in f.terms.items())
    if modulus:
        sp = sympy.Poly(expr, t, modulus=modulus)
    else:
        sp = sympy.Poly(expr, t, domain="QQ")
    _, facs = sp.factor_list()
    out = []
    for g, e in facs:
        coeffs = g.monic().all_coeffs()
        deg = len(coeffs) - 1
        poly = ring.zero()
        for k, c in enumerate(coeffs):
            if modulus:
                cc = int(c) % modulus
            else:
                c = sympy.Rational(c)
                cc = Fraction(int(c.p), int(c.q))
            if cc:
                poly = poly + ring.monomial((deg - k,), cc)
        out.append((poly, e))
    out.sort(key=lambda ge: (ge[0].degree(), str(ge[0])))
    return out


def maximal_ideals(pres: AlgebraPresentation) -> List[List[Poly]]:
    """Maximal ideals of a finite algebra over a field (generators each)."""
    if pres.mode != "finite" or not pres.coeffs.is_field:
        m = default_maximal_ideal(pres)
        if m is None:
            raise UnsupportedBase(f"cannot enumerate maximal ideals of {pres!r}")
        return [m]
    local = default_maximal_ideal(pres)
    if local is not None:
        return [local]
    if pres.nvars == 1 and len(pres.gb) == 1:
        p = pres.coeffs.p or None
        return [[g] for g, _ in factor_univariate(pres.gb[0], p)]
    raise UnsupportedBase(f"maximal ideals of {pres!r} are only found for monogenic or local algebras")


def ideal_subspace(pres: AlgebraPresentation, gens: Sequence[Poly]) -> linalg.Span:
    basis = pres.finite_basis
    index = {m: i for i, m in enumerate(basis)}
    span = linalg.Span(pres.coeffs, len(basis))
    for g in gens:
        for b in basis:
            span.add(pres.coords(g.mul_monomial(b), index, len(basis)))
    return span


def stable_power(pres: AlgebraPresentation, gens: Sequence[Poly]) -> List[Poly]:
    """Polynomials spanning m^N for N large (finite algebra over a field)."""
    basis = pres.finite_basis
    index = {m: i for i, m in enumerate(basis)}
    n = len(basis)
    K = pres.coeffs
    cur = ideal_subspace(pres, gens)
    while True:
        nxt = linalg.Span(K, n)
        for row in list(cur.rows):
            elem = _poly_of(pres, row)
            for g in gens:
                nxt.add(pres.coords(g * elem, index, n))
        if len(nxt) == len(cur):
            return [_poly_of(pres, r) for r in cur.rows]
        cur = nxt


def _poly_of(pres, vec) -> Poly:
    ring = pres.ring
    out = ring.zero()
    for m, c in zip(pres.finite_basis, vec):
        if c:
            out = out + ring.monomial(m, c)
    return out


def localize(pres: AlgebraPresentation, ideal: Sequence[Poly]) -> AlgebraPresentation:
    """S_m = S / m^infinity for a finite algebra over a field."""
    return pres.quotient(stable_power(pres, ideal), meta={"maximal_ideal": [str(g) for g in ideal]})


def residue_degree(pres: AlgebraPresentation, ideal: Sequence[Poly]) -> int:
    if pres.mode == "graded":
        return 1
    return len(pres.quotient(list(ideal)).finite_basis)


# ---------------------------------------------------------------------------
# minimal numbers of generators
# ---------------------------------------------------------------------------

def _diag(pres, g, k):
    z = pres.ring.zero()
    return [[g if i == j else z for j in range(k)] for i in range(k)]


def local_number(C, n: int, module: Optional[ModulePresentation], ideal: Sequence[Poly],
                 top: int = 8) -> int:
    """dim_kappa H/mH for H = H_n(C (x) M) and a maximal ideal m (field case)."""
    pres = C.pres
    model = scalar_model(pres)
    module = module or ModulePresentation.free(pres)
    amb = Ambient(model, C.degs(n), module)
    sqs = C.homology_subquotients(n, module, top)
    K = model.K
    k = amb.ncomps
    if not model.graded:
        extra = []
        for g in ideal:
            M = apply_matrix(_diag(pres, pres.nf(g), k), amb, amb, None)
            extra += [linalg.matvec(K, M, v) for v in sqs.L_basis]
        dim = len(sqs.L_basis) - linalg.rank(K, sqs.N_gens + extra, sqs.n) if sqs.n else 0
        kappa = residue_degree(pres, ideal)
        if dim % kappa:
            raise ArithmeticError("local number is not a multiple of the residue degree")
        return dim // kappa
    total = 0
    for d, sq in sqs.items():
        if sq.n == 0:
            continue
        extra = []
        for g in ideal:
            e = g.degree()
            src = sqs.get(d - e)
            if src is None or not src.L_basis:
                continue
            M = apply_matrix(_diag(pres, g, k), amb, amb, d - e, d)
            extra += [linalg.matvec(K, M, v) for v in src.L_basis]
        total += len(sq.L_basis) - linalg.rank(K, sq.N_gens + extra, sq.n)
    return total


def _primes_of(n: int) -> List[int]:
    return sorted(sympy.factorint(abs(n))) if n not in (0, 1, -1) else []


def z_points(pres: AlgebraPresentation, primes: Sequence[int]) -> List[Tuple[int, Poly]]:
    """Maximal ideals (p, g(t)) of Z[t]/(f) over the given primes."""
    if not pres.is_monogenic_over_Z:
        raise UnsupportedRing("local numbers over Z need a monogenic presentation")
    f = pres.gb[0]
    pts = []
    for p in sorted(set(primes)):
        for g, _ in factor_univariate(f, p):
            pts.append((p, g.change_ring(pres.ring)))
    return pts


def z_local_number(pres, amb: Ambient, sq, p: int, g: Poly) -> int:
    B = sq.L_basis
    if not B:
        return 0
    coords = sq.N_coords()
    M = apply_matrix(_diag(pres, pres.nf(g), amb.ncomps), amb, amb, None)
    for v in B:
        c = linalg.lattice_coords(B, linalg.matvec(pres.coeffs, M, v))
        coords.append(c)
    r = linalg.rank(sympy_free_field(p), [[x % p for x in row] for row in coords], len(B)) if coords else 0
    dim = len(B) - r
    return dim // g.degree()


def sympy_free_field(p):
    from hochgap.coeffs import GF
    return GF(p)


def z_nu_bounds(C, n: int, module: Optional[ModulePresentation] = None,
                extra_primes: Sequence[int] = (2, 3, 5), seed: int = 0) -> Tuple[int, int]:
    """Lower and upper bounds for the minimal number of S-generators of
    H_n(C (x) M) over a monogenic Z-algebra S."""
    pres = C.pres
    model = scalar_model(pres)
    module = module or ModulePresentation.free(pres)
    amb = Ambient(model, C.degs(n), module)
    sq = C.homology_subquotients(n, module)
    tors, free = sq.invariants()
    if not tors and free == 0:
        return 0, 0
    primes = set()
    for t in tors:
        primes.update(_primes_of(t))
    if free:
        primes.update(extra_primes)
    lower = max(z_local_number(pres, amb, sq, p, g) for p, g in z_points(pres, primes))
    upper = _z_generator_search(pres, amb, sq, lower, seed)
    return lower, upper


def _z_generator_search(pres, amb, sq, lower, seed) -> int:
    K = pres.coeffs
    B = sq.L_basis
    target = linalg.hermite_basis(B, sq.n)
    mults = [apply_matrix(_diag(pres, pres.ring.monomial(b), amb.ncomps), amb, amb, None)
             for b in pres.finite_basis]

    def generates(vs):
        gens = list(sq.N_gens)
        for v in vs:
            gens += [linalg.matvec(K, M, v) for M in mults]
        return linalg.hermite_basis(gens, sq.n) == target

    chosen = []
    for v in B:
        if generates(chosen):
            break
        chosen.append(v)
    best = len(chosen)
    rng = random.Random(seed)
    k = max(lower, 1)
    while k < best:
        for _ in range(300):
            vs = [[sum(rng.randint(-2, 2) * b[i] for b in B) for i in range(sq.n)] for _ in range(k)]
            if generates(vs):
                best = k
                break
        else:
            k += 1
            continue
        break
    return best


def nu_bounds(C, n: int, module: Optional[ModulePresentation] = None, top: int = 8,
              ideals: Optional[List[List[Poly]]] = None) -> Tuple[int, int]:
    """(lower, upper) bounds for nu_S(H_n(C (x) M)); equal except over Z
    when the generator search falls short."""
    pres = C.pres
    if pres.coeffs.kind == "Z":
        return z_nu_bounds(C, n, module)
    if ideals is None:
        ideals = maximal_ideals(pres)
    v = max(local_number(C, n, module, m, top) for m in ideals)
    return v, v
