import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hochgap import GF, QQ, ZZ, AlgebraPresentation, PolyRing, parse_presentation
from hochgap.errors import ParseError, UnsupportedRing
from hochgap.groebner import groebner_basis, reduce_full
from hochgap.poly import format_poly

from conftest import CORPUS, make


# -- coefficients ----------------------------------------------------------

def test_rationals_lowest_terms():
    assert QQ(Fraction(6, -4)) == Fraction(-3, 2)
    assert QQ.parse("Q") == QQ
    inv = QQ.inv(3)
    assert isinstance(inv, Fraction) and inv == Fraction(1, 3)


def test_mod_p_residues_in_range():
    F = GF(5)
    assert F(-1) == 4
    assert F.inv(2) == 3
    with pytest.raises(UnsupportedRing):
        GF(6)


# -- polynomials -----------------------------------------------------------

def test_terms_descend_in_the_order():
    R = PolyRing(QQ, ["x", "y"])
    f = R.parse("y^2 + x*y + x^2 + x + 1")
    keys = [R.order_key(m) for m, _ in f.sorted_terms()]
    assert keys == sorted(keys, reverse=True)
    assert all(c != 0 for c in f.terms.values())


def test_format_and_parse_round_trip():
    R = PolyRing(QQ, ["x", "y"])
    for text in ["x^2 - 2", "3/2*x*y", "-y^3 + x - 1/3", "0", "1"]:
        f = R.parse(text)
        assert R.parse(format_poly(f)) == f


def test_parse_error_has_column():
    R = PolyRing(QQ, ["x"])
    with pytest.raises(ParseError) as exc:
        R.parse("x^2 + z")
    assert exc.value.column is not None


coeff = st.integers(-5, 5)
monos = st.tuples(st.integers(0, 3), st.integers(0, 3))
polys = st.dictionaries(monos, coeff, max_size=5)


def _poly(R, d):
    return R.zero() + sum((R.monomial(m, c) for m, c in d.items() if c), R.zero())


@settings(max_examples=60, deadline=None)
@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    R = PolyRing(QQ, ["x", "y"])
    f, g, h = _poly(R, a), _poly(R, b), _poly(R, c)
    assert (f + g) + h == f + (g + h)
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h


# -- normal forms and Groebner bases ---------------------------------------

def test_normal_form_examples():
    assert make(QQ, ["x"], ["x^2"]).element("x^2").is_zero()
    Z = make(ZZ, ["t"], ["t^2 - 2"])
    assert Z.element("t^3") == Z.ring.parse("2*t")
    C = make(QQ, ["x", "y"], ["x^2", "x*y"])
    assert C.element("y*x^2").is_zero()


def test_groebner_examples():
    R = PolyRing(QQ, ["x", "y"])
    assert groebner_basis([R.parse("x")]) == [R.parse("x")]
    assert set(groebner_basis([R.parse("x"), R.parse("y")])) == {R.parse("x"), R.parse("y")}
    G = groebner_basis([R.parse("x^2 - y"), R.parse("y^2")])
    # the reduced basis is {y^2, x^2 - y}; x^4 lies in the ideal
    assert set(map(format_poly, G)) == {"y^2", "x^2 - y"}
    assert reduce_full(R.parse("x^4"), G).is_zero()
    assert R.parse("x^4") == (R.parse("x^2 - y") * R.parse("x^2 + y") + R.parse("y^2"))


def test_graded_piece_basis_examples():
    D = make(QQ, ["x"], ["x^2"])
    assert D.graded_piece_basis(1) == [(1,)]
    assert D.graded_piece_basis(2) == []
    C = make(QQ, ["x", "y"], ["x^2", "x*y"])
    assert C.graded_piece_basis(2) == [(0, 2)]


def test_z_relations_must_be_monic_univariate():
    with pytest.raises(UnsupportedRing):
        make(ZZ, ["t"], ["2*t^2 - 1"]).gb
    with pytest.raises(UnsupportedRing):
        make(ZZ, ["x", "y"], ["x*y - 1"]).gb


def test_invariants_of_presentations():
    assert make(ZZ, ["t"], ["t^2 - 2"]).is_monogenic_over_Z
    assert make(QQ, ["x", "y"], ["x^2", "x*y"]).is_graded
    assert not make(QQ, ["x"], ["x^2 - 2"]).is_graded


rel_polys = st.dictionaries(monos, st.integers(-3, 3), min_size=1, max_size=3)


@settings(max_examples=40, deadline=None)
@given(polys, polys)
def test_normal_form_properties(a, b):
    S = make(QQ, ["x", "y"], ["x^2 - y", "y^2"])
    R = S.ring
    f, g = _poly(R, a), _poly(R, b)
    assert S.nf(S.nf(f)) == S.nf(f)
    assert S.nf(f * g) == S.nf(S.nf(f) * S.nf(g))


@settings(max_examples=25, deadline=None)
@given(polys, polys, st.sampled_from([2, 3, 5, 7]))
def test_normal_form_properties_mod_p(a, b, p):
    S = make(GF(p), ["x", "y"], ["x^3 - x*y", "y^2 + x"])
    R = S.ring
    f, g = _poly(R, a), _poly(R, b)
    assert S.nf(S.nf(f)) == S.nf(f)
    assert S.nf(f * g) == S.nf(S.nf(f) * S.nf(g))


def _hilbert_by_inclusion_exclusion(gens, nvars, d):
    """dim_K (K[x]/(gens))_d for monomial gens, by inclusion-exclusion over
    subsets of generators (lcm of a subset shifts the degree)."""
    from math import comb
    total = 0
    for r in range(len(gens) + 1):
        for sub in itertools.combinations(gens, r):
            lcm = tuple(max(m[i] for m in sub) if sub else 0 for i in range(nvars))
            k = d - sum(lcm)
            if k >= 0:
                total += (-1) ** r * comb(k + nvars - 1, nvars - 1)
    return total


monomial_ideals = st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 2))
                           .filter(lambda m: sum(m) > 0), min_size=1, max_size=4)


@settings(max_examples=40, deadline=None)
@given(monomial_ideals)
def test_graded_pieces_match_inclusion_exclusion(gens):
    R = PolyRing(QQ, ["x", "y", "z"])
    S = AlgebraPresentation(R, [R.monomial(m) for m in gens])
    for d in range(6):
        assert len(S.graded_piece_basis(d)) == _hilbert_by_inclusion_exclusion(gens, 3, d)


# -- text format -------------------------------------------------------------

@pytest.mark.parametrize("name", CORPUS)
def test_corpus_round_trip(corpus, name):
    pres = corpus[name]
    again = parse_presentation(pres.to_text())
    assert again == pres
    assert again.to_text() == pres.to_text()
    assert again.meta.get("kernel") == pres.meta.get("kernel")


def test_parse_errors_carry_line_and_column():
    with pytest.raises(ParseError) as exc:
        parse_presentation('ring = "Q"\nvars = ["x"]\nrelations = ["x^2 + w"]\n')
    assert exc.value.line == 3 and exc.value.column is not None
    with pytest.raises(ParseError) as exc:
        parse_presentation('ring = "Q"\nvars = ["x"\n')
    assert exc.value.line is not None
    with pytest.raises(ParseError):
        parse_presentation('vars = ["x"]\n')
