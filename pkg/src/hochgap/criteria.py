"""Gap criteria for smoothness and complete intersection, the binomial
lower bounds for 2-closed maps, and the separability corollary.

Every check is one-directional: vanishing patterns certify, their absence
never yields a negative certificate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

import sympy

from hochgap.complexes import DEFAULT_TOP, FreeComplex
from hochgap.errors import UnsupportedRing
from hochgap.hochschild import (HochschildTable, base_changed_resolution, enveloping,
                                hochschild_cohomology, hochschild_homology)
from hochgap.local import (default_maximal_ideal, local_number, maximal_ideals, z_local_number,
                           z_points, _primes_of)
from hochgap.modules import Ambient, ModuleDescriptor, ModulePresentation, scalar_model
from hochgap.poly import Poly
from hochgap.presentation import AlgebraPresentation
from hochgap.resolutions import (Deviations, Surjection, deviations, is_p_closed,
                                 minimal_free_resolution)

SMOOTH = "smooth-certified"
CI = "ci-certified"
NOT_MET = "criterion-not-met"
INCONCLUSIVE = "inconclusive-cutoff"
CERTIFIED = (SMOOTH, CI)


# ---------------------------------------------------------------------------
# dimension and depth
# ---------------------------------------------------------------------------

def _det(pres, M) -> Poly:
    n = len(M)
    if n == 0:
        return pres.ring.one()
    total = pres.ring.zero()
    for j in range(n):
        if M[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * _det(pres, minor)
        total = total + (term if j % 2 == 0 else -term)
    return pres.nf(total)


def fitting_ideal(pres: AlgebraPresentation, module: ModulePresentation) -> List[Poly]:
    """Fitt_0(M): maximal minors of the presentation matrix."""
    b, a = module.ngens, module.nrels
    if a < b:
        return []
    out = []
    for cols in itertools.combinations(range(a), b):
        sub = [[module.matrix[i][j] for j in cols] for i in range(b)]
        d = _det(pres, sub)
        if not d.is_zero():
            out.append(d)
    return out


def dim_of(pres: AlgebraPresentation) -> int:
    """Krull dimension of S: 0 for finite algebras over a field, 1 for
    finite Z-algebras, leading-monomial combinatorics in the graded case."""
    return pres.krull_dim()


def dim_support(pres: AlgebraPresentation, module: Optional[ModulePresentation] = None) -> int:
    """dim Supp M = dim S / Fitt_0(M); -1 for the zero module."""
    if module is None or module.is_free:
        return dim_of(pres) if (module is None or module.ngens) else -1
    if pres.coeffs.kind == "Z":
        desc = _module_descriptor(pres, module)
        if desc.is_zero:
            return -1
        return 1 if desc.free_rank else 0
    fitt = fitting_ideal(pres, module)
    quo = pres.quotient(fitt)
    if quo.nf(pres.ring.one()).is_zero():
        return -1
    return quo.krull_dim()


def _module_descriptor(pres, module, top=DEFAULT_TOP) -> ModuleDescriptor:
    from hochgap.hochschild import _presentation_complex
    return _presentation_complex(pres, module).homology(0, None, top)


def depth_of(pres: AlgebraPresentation, module: Optional[ModulePresentation] = None,
             top: int = DEFAULT_TOP) -> int:
    """depth_S M: first nonvanishing Ext^n(k, M) in the graded case, 0 for
    finite algebras over a field, torsion test for finite Z-algebras."""
    module = module or ModulePresentation.free(pres)
    if pres.coeffs.kind == "Z":
        if not pres.is_finite:
            raise UnsupportedRing("depth over Z needs a finite Z-algebra")
        desc = _module_descriptor(pres, module)
        return 0 if desc.torsion else 1
    if pres.mode == "finite":
        return 0
    gens = pres.ring.gens()
    d = dim_of(pres)
    F = minimal_free_resolution(pres, ModulePresentation.cyclic(pres, gens), d + 1)
    dual = F.hom_dual()
    for n in range(d + 1):
        if not dual.homology(-n, module, top).is_zero:
            return n
    return d


# ---------------------------------------------------------------------------
# queries and verdicts
# ---------------------------------------------------------------------------

@dataclass
class GapQuery:
    table: HochschildTable
    dim_S: int
    dim_M: int
    depth_M: int
    diagonal: bool = True
    caveats: List[str] = field(default_factory=list)

    def __post_init__(self):
        if self.dim_S < 0 or self.depth_M < 0 or self.dim_M < -1:
            raise ValueError("negative dimension data")

    @property
    def cutoff(self) -> int:
        return len(self.table.descriptors) - 1

    @property
    def zeros(self) -> List[bool]:
        return [d.is_zero for d in self.table.descriptors]


@dataclass
class GapVerdict:
    outcome: str
    criterion: str
    witnesses: Dict[str, int] = field(default_factory=dict)
    interval_length: Optional[int] = None
    threshold: int = 0
    cutoff: int = 0
    caveats: List[str] = field(default_factory=list)
    conclusion: Optional[str] = None
    experimental: Optional[dict] = None

    @property
    def certified(self) -> bool:
        return self.outcome in CERTIFIED

    def to_record(self) -> dict:
        rec = {"outcome": self.outcome, "criterion": self.criterion,
               "witnesses": dict(self.witnesses), "interval_length": self.interval_length,
               "threshold": self.threshold, "cutoff": self.cutoff,
               "caveats": list(self.caveats)}
        if self.conclusion:
            rec["conclusion"] = self.conclusion
        if self.experimental is not None:
            rec["experimental"] = self.experimental
        return rec

    def to_text(self) -> str:
        line = f"{self.criterion}: {self.outcome}"
        if self.witnesses:
            line += " with " + ", ".join(f"{k}={v}" for k, v in sorted(self.witnesses.items()))
        if self.interval_length is not None:
            line += f", interval length {self.interval_length}"
        out = [line]
        if self.conclusion:
            out.append(f"conclusion: {self.conclusion}")
        if self.experimental is not None:
            out.append(f"experimental (no certification): {self.experimental}")
        out += [f"caveat: {c}" for c in self.caveats]
        return "\n".join(out)


def make_query(pres: AlgebraPresentation, direction: str, cutoff: int = DEFAULT_TOP,
               module: Optional[ModulePresentation] = None, strategy: str = "auto",
               top: int = DEFAULT_TOP) -> GapQuery:
    fn = hochschild_homology if direction == "homology" else hochschild_cohomology
    table = fn(pres, module, cutoff, strategy, top)
    caveats = list(table.caveats)
    if pres.mode == "graded":
        caveats.append(f"vanishing read off internal degrees <= {top}")
    return GapQuery(table, dim_of(pres), dim_support(pres, module), depth_of(pres, module, top),
                    True, caveats)


def _first_pair(starts_ok) -> Optional[Tuple[int, int]]:
    """Least even and least odd admissible start, as (t, u) with t < u."""
    starts_ok = list(starts_ok)
    even = next((n for n, ok in starts_ok if ok and n % 2 == 0), None)
    odd = next((n for n, ok in starts_ok if ok and n % 2 == 1), None)
    if even is None or odd is None:
        return None
    return (min(even, odd), max(even, odd))


def check_homological_gaps(q: GapQuery) -> GapVerdict:
    """HH_t = 0 = HH_u for t, u >= 0 of different parity."""
    zeros = q.zeros
    N = q.cutoff
    win = SMOOTH if q.diagonal else CI
    pair = _first_pair((n, zeros[n]) for n in range(N + 1))
    if pair:
        return GapVerdict(win, "iii_* homological", {"t": pair[0], "u": pair[1]}, None, 0, N,
                          list(q.caveats))
    outcome = INCONCLUSIVE if N < 1 else NOT_MET
    return GapVerdict(outcome, "iii_* homological", {}, None, 0, N, list(q.caveats))


def check_cohomological_gaps(q: GapQuery, interval_override: Optional[int] = None) -> GapVerdict:
    """HH^{t+i} = 0 = HH^{u+i} for 0 <= i <= dim M, t and u of different
    parity, both >= depth M - dim S."""
    zeros = q.zeros
    N = q.cutoff
    length = q.dim_M + 1
    threshold = max(q.depth_M - q.dim_S, 0)
    win = SMOOTH if q.diagonal else CI

    def starts(ell):
        return ((s, all(zeros[s:s + ell]) and s + ell - 1 <= N) for s in range(threshold, N + 1))

    experimental = None
    if interval_override is not None:
        pair = _first_pair(starts(interval_override))
        experimental = {"interval_length": interval_override,
                        "witnesses": {"t": pair[0], "u": pair[1]} if pair else {}}
    pair = _first_pair(starts(length))
    if pair:
        return GapVerdict(win, "iii^* cohomological", {"t": pair[0], "u": pair[1]}, length,
                          threshold, N, list(q.caveats), experimental=experimental)
    outcome = INCONCLUSIVE if N < threshold + length else NOT_MET
    return GapVerdict(outcome, "iii^* cohomological", {}, length, threshold, N,
                      list(q.caveats), experimental=experimental)


def check_consecutive_run(q: GapQuery) -> GapVerdict:
    """dim S + 2 consecutive vanishing HH^n with n >= 0."""
    zeros = q.zeros
    N = q.cutoff
    run = q.dim_S + 2
    win = SMOOTH if q.diagonal else CI
    for s in range(0, N - run + 2):
        if all(zeros[s:s + run]):
            return GapVerdict(win, "consecutive", {"start": s, "run": run}, run, 0, N,
                              list(q.caveats))
    outcome = INCONCLUSIVE if N < run - 1 else NOT_MET
    return GapVerdict(outcome, "consecutive", {}, run, 0, N, list(q.caveats))


def combine(verdicts: Sequence[GapVerdict]) -> str:
    if any(v.certified for v in verdicts):
        return next(v.outcome for v in verdicts if v.certified)
    if any(v.outcome == INCONCLUSIVE for v in verdicts):
        return INCONCLUSIVE
    return NOT_MET


def smooth_check(pres: AlgebraPresentation, direction: str = "both", cutoff: int = DEFAULT_TOP,
                 module: Optional[ModulePresentation] = None, strategy: str = "auto",
                 interval_override: Optional[int] = None) -> List[GapVerdict]:
    out = []
    if direction in ("homology", "both"):
        out.append(check_homological_gaps(make_query(pres, "homology", cutoff, module, strategy)))
    if direction in ("cohomology", "both"):
        q = make_query(pres, "cohomology", cutoff, module, strategy)
        out.append(check_cohomological_gaps(q, interval_override))
        out.append(check_consecutive_run(q))
    return out


# ---------------------------------------------------------------------------
# complete intersection and the binomial bounds
# ---------------------------------------------------------------------------

@dataclass
class CIVerdict:
    outcome: str
    eps2: int
    eps3: int
    point: str = ""
    caveats: List[str] = field(default_factory=list)

    def to_record(self) -> dict:
        return {"outcome": self.outcome, "eps2": self.eps2, "eps3": self.eps3,
                "point": self.point, "caveats": list(self.caveats)}


def ci_certificate(phi: Surjection) -> CIVerdict:
    """ci-certified iff eps3 = 0."""
    dv = deviations(phi)
    return CIVerdict(CI if dv.eps3 == 0 else NOT_MET, dv.eps2, dv.eps3, "", list(dv.caveats))


@dataclass
class DiagonalPoint:
    """Local data of the diagonal at a maximal ideal q of S."""
    label: str
    c: int
    d: int
    ideal: List[Poly]
    z_point: Optional[Tuple[int, Poly]] = None
    surjection: Optional[Surjection] = None
    caveats: Tuple[str, ...] = ()


def diagonal_points(pres: AlgebraPresentation) -> List[DiagonalPoint]:
    """Deviations of the diagonal S^e -> S localized at each maximal ideal
    of S (over Z: at the points over the primes dividing disc(f), plus 2,
    3, 5)."""
    env = enveloping(pres)
    if pres.coeffs.kind == "Z":
        f = pres.gb[0]
        fp = f.derivative(0)
        disc = int(sympy.discriminant(_to_sympy(f), sympy.Symbol("t"))) if f.degree() > 1 else 1
        primes = set(_primes_of(disc)) | {2, 3, 5}
        out = []
        for p, g in z_points(pres, primes):
            # (t - t') is locally zero iff f*(t,t) = f'(t) is a unit at q
            unit = _divides_mod(g, fp, p)
            c = 1 if (unit and f.degree() > 1) else 0
            out.append(DiagonalPoint(f"({p}, {g})", c, c, [pres.ring.const(p), g], (p, g)))
        return out
    if pres.mode == "graded":
        phi = env.surjection()
        dv = deviations(phi)
        return [DiagonalPoint("irrelevant ideal", dv.eps2, dv.eps3, pres.ring.gens(), None, phi,
                              dv.caveats)]
    out = []
    for q in maximal_ideals(pres):
        point = [env.left(g) for g in q] + list(env.diagonal)
        phi = Surjection.localized(env.pres, env.diagonal, point, has_section=True)
        dv = deviations(phi)
        out.append(DiagonalPoint("(" + ", ".join(str(g) for g in q) + ")", dv.eps2, dv.eps3,
                                 list(q), None, phi, dv.caveats))
    return out


def diagonal_ci_certificate(pres: AlgebraPresentation) -> CIVerdict:
    """ci_certificate of the diagonal, applied at every point; certified
    iff eps3 vanishes at all of them."""
    pts = diagonal_points(pres)
    bad = [p for p in pts if p.d != 0]
    worst = max(pts, key=lambda p: (p.d, p.c))
    caveats = sorted({c for p in pts for c in p.caveats})
    if bad:
        return CIVerdict(NOT_MET, bad[0].c, bad[0].d, bad[0].label, caveats)
    return CIVerdict(CI, worst.c, 0, "all points", caveats)


def _to_sympy(f: Poly):
    t = sympy.Symbol("t")
    return sum(sympy.Rational(str(c)) * t ** m[0] for m, c in f.terms.items())


def _divides_mod(g: Poly, h: Poly, p: int) -> bool:
    """g | h modulo p (h in Z[t])."""
    t = sympy.Symbol("t")
    G = sympy.Poly(_to_sympy(g), t, modulus=p)
    H = sympy.Poly(_to_sympy(h), t, modulus=p)
    return H.rem(G).is_zero


def local_nu(CS: FreeComplex, n: int, point: DiagonalPoint,
             module: Optional[ModulePresentation] = None, top: int = DEFAULT_TOP) -> int:
    """nu of H_n(CS (x) M) localized at the point."""
    pres = CS.pres
    if point.z_point is not None:
        model = scalar_model(pres)
        module = module or ModulePresentation.free(pres)
        amb = Ambient(model, CS.degs(n), module)
        sq = CS.homology_subquotients(n, module)
        return z_local_number(pres, amb, sq, *point.z_point)
    return local_number(CS, n, module, point.ideal, top)


@dataclass
class BoundsReport:
    holds: bool
    c: int
    d: int
    i: int
    m: int
    rows: List[dict]
    equality_first_family: Optional[bool]
    point: str = ""

    def to_record(self) -> dict:
        return {"holds": self.holds, "c": self.c, "d": self.d, "i": self.i, "m": self.m,
                "rows": self.rows, "equality_first_family": self.equality_first_family,
                "point": self.point}


def check_binomial_bounds(nu: Dict[int, int], c: int, d: int, i: int = 0,
                           m: Optional[int] = None, point: str = "") -> BoundsReport:
    """nu(Tor_{n+i}) >= m binom(c, n) for 0 <= n <= c, and
    nu(Tor_{2n+i+c}) >= m binom(n+d-1, d-1) for n >= 1, on the degrees
    present in ``nu``."""
    if m is None:
        m = nu[i]
    rows = []
    for n in range(0, c + 1):
        if n + i in nu:
            need = m * comb(c, n)
            rows.append({"family": 1, "degree": n + i, "nu": nu[n + i], "bound": need,
                         "ok": nu[n + i] >= need})
    n = 1
    while 2 * n + i + c <= max(nu):
        deg = 2 * n + i + c
        if deg in nu:
            need = m * (comb(n + d - 1, d - 1) if d > 0 else 0)
            rows.append({"family": 2, "degree": deg, "nu": nu[deg], "bound": need,
                         "ok": nu[deg] >= need})
        n += 1
    holds = all(r["ok"] for r in rows)
    eq = None
    if d == 0:
        eq = all(r["nu"] == r["bound"] for r in rows if r["family"] == 1)
    return BoundsReport(holds, c, d, i, m, rows, eq, point)


def diagonal_bounds(pres: AlgebraPresentation, cutoff: int = 6, strategy: str = "auto",
                    top: int = DEFAULT_TOP) -> List[BoundsReport]:
    """Both inequality families for the diagonal of S at every point."""
    _, _, CS = base_changed_resolution(pres, strategy, cutoff)
    reports = []
    for pt in diagonal_points(pres):
        nu = {n: local_nu(CS, n, pt, None, top) for n in range(cutoff + 1)}
        reports.append(check_binomial_bounds(nu, pt.c, pt.d, 0, nu[0], pt.label))
    return reports


# ---------------------------------------------------------------------------
# separability
# ---------------------------------------------------------------------------

@dataclass
class SeparabilityVerdict:
    verdict: GapVerdict
    direct: Optional[bool]

    @property
    def separable(self) -> bool:
        return self.verdict.certified

    @property
    def agrees(self) -> Optional[bool]:
        return None if self.direct is None else (self.direct == self.separable)

    def to_record(self) -> dict:
        rec = self.verdict.to_record()
        rec["direct_check"] = self.direct
        return rec


def direct_separability(pres: AlgebraPresentation) -> Optional[bool]:
    """Squarefree test gcd(f, f') = 1 for monogenic S = K[t]/(f) over a
    field; None otherwise."""
    if not pres.coeffs.is_field or pres.nvars != 1 or len(pres.gb) != 1:
        return None
    f = _to_sympy(pres.gb[0])
    t = sympy.Symbol("t")
    mod = pres.coeffs.p
    P = sympy.Poly(f, t, modulus=mod) if mod else sympy.Poly(f, t, domain="QQ")
    return P.gcd(P.diff(t)).degree() == 0


def corollary_separability(pres: AlgebraPresentation, table: Optional[HochschildTable] = None,
                           strategy: str = "auto") -> SeparabilityVerdict:
    """Two vanishing HH^n of different parity over a finite-dimensional
    algebra make S a product of separable field extensions."""
    if not pres.coeffs.is_field or not pres.is_finite:
        raise UnsupportedRing("the separability check needs a finite-dimensional algebra over a field")
    if table is None:
        table = hochschild_cohomology(pres, None, DEFAULT_TOP, strategy)
    q = GapQuery(table, 0, 0, 0, True, list(table.caveats))
    zeros = q.zeros
    pair = _first_pair((n, zeros[n]) for n in range(q.cutoff + 1))
    if pair:
        v = GapVerdict(SMOOTH, "corollary", {"t": pair[0], "u": pair[1]}, 1, 0, q.cutoff,
                       list(q.caveats), conclusion="product of separable field extensions")
    else:
        v = GapVerdict(NOT_MET, "corollary", {}, 1, 0, q.cutoff, list(q.caveats))
    return SeparabilityVerdict(v, direct_separability(pres))
