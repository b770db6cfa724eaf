"""Buchberger's algorithm (sugar selection) and normal forms."""

from __future__ import annotations

from typing import List, Sequence

from hochgap.poly import Monomial, Poly, PolyRing


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def reduce_full(f: Poly, basis: Sequence[Poly]) -> Poly:
    """Complete reduction of f by polynomials with unit leading coefficients."""
    ring = f.ring
    K = ring.coeffs
    leads = [(g.lm, K.inv(g.lc), g) for g in basis if not g.is_zero()]
    remainder = {}
    terms = dict(f.terms)
    key = ring.order_key
    while terms:
        m = max(terms, key=key)
        c = terms[m]
        for lm, inv_lc, g in leads:
            if divides(lm, m):
                q = mono_div(m, lm)
                factor = K.mul(c, inv_lc)
                for gm, gc in g.terms.items():
                    mm = tuple(a + b for a, b in zip(gm, q))
                    v = K.sub(terms.get(mm, 0), K.mul(factor, gc)) if mm in terms else K.neg(K.mul(factor, gc))
                    if v == 0:
                        terms.pop(mm, None)
                    else:
                        terms[mm] = v
                break
        else:
            remainder[m] = c
            del terms[m]
    return Poly(ring, remainder)


def _spoly(f: Poly, g: Poly) -> Poly:
    K = f.ring.coeffs
    L = mono_lcm(f.lm, g.lm)
    return (f.mul_monomial(mono_div(L, f.lm), K.inv(f.lc))
            - g.mul_monomial(mono_div(L, g.lm), K.inv(g.lc)))


def groebner_basis(polys: Sequence[Poly]) -> List[Poly]:
    """Reduced Groebner basis over a field (monic, sorted ascending)."""
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        return []
    ring: PolyRing = polys[0].ring
    if not ring.coeffs.is_field:
        raise ValueError("groebner_basis needs a coefficient field")
    G: List[Poly] = []
    sugar: List[int] = []
    pairs = []

    def add(h: Poly, s: int):
        h = h.monic()
        k = len(G)
        G.append(h)
        sugar.append(s)
        for i in range(k):
            L = mono_lcm(G[i].lm, h.lm)
            s_ij = max(sugar[i] + ring.mdeg(mono_div(L, G[i].lm)), s + ring.mdeg(mono_div(L, h.lm)))
            pairs.append((s_ij, ring.order_key(L), i, k))

    for p in sorted(polys, key=lambda q: ring.order_key(q.lm)):
        r = reduce_full(p, G)
        if not r.is_zero():
            add(r, r.degree())

    while pairs:
        pairs.sort()
        s, _, i, j = pairs.pop(0)
        a, b = G[i].lm, G[j].lm
        L = mono_lcm(a, b)
        # product criterion
        if all(x == 0 or y == 0 for x, y in zip(a, b)):
            continue
        r = reduce_full(_spoly(G[i], G[j]), G)
        if not r.is_zero():
            add(r, s)

    # minimalize and interreduce
    G = sorted(G, key=lambda g: ring.order_key(g.lm))
    minimal: List[Poly] = []
    for g in G:
        if not any(divides(h.lm, g.lm) for h in minimal):
            minimal.append(g)
    reduced = []
    for k, g in enumerate(minimal):
        others = minimal[:k] + minimal[k + 1:]
        reduced.append(reduce_full(g, others).monic())
    return sorted(reduced, key=lambda g: ring.order_key(g.lm))
