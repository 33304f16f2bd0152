from fractions import Fraction

import pytest
import sympy
from sympy.polys.subresultants_qq_zz import sylvester
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from snakeforge.errors import EqualPolynomials, ParseError
from snakeforge.exact_arith import (
    INFINITY,
    X,
    Y,
    BiPoly,
    UniPoly,
    antiderivative_y,
    compose_y,
    definite_integral_y,
    derivative_y,
    format_bipoly,
    format_unipoly,
    is_squarefree,
    lowest_coefficient,
    parse_bipoly,
    parse_rational,
    parse_unipoly,
    poly_gcd,
    precedes_right,
    product_of_linear_factors,
    resultant,
    squarefree_decomposition,
    squarefree_part,
    valuation_x,
)

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
unipolys = st.lists(rationals, max_size=6).map(UniPoly)
nonzero_unipolys = unipolys.filter(lambda p: p.degree >= 0)
bipolys = st.lists(unipolys, max_size=4).map(BiPoly)


def test_zero_polynomial_conventions():
    z = UniPoly()
    assert z.degree == -1
    assert valuation_x(z) is INFINITY
    assert INFINITY > 10**9
    assert INFINITY + 3 is INFINITY
    assert format_unipoly(z) == "0"


def test_strips_trailing_zeros():
    assert UniPoly([1, 2, 0, 0]).coeffs == (1, 2)
    assert UniPoly([0, 0]) == UniPoly()


def test_valuation_and_lowest_coefficient():
    p = UniPoly([0, 0, Fraction(-3, 2), 1])
    assert valuation_x(p) == 2
    assert lowest_coefficient(p) == Fraction(-3, 2)


@pytest.mark.parametrize(
    "p, q, expected",
    [
        (UniPoly(), X, True),
        (X, UniPoly(), False),
        (X**2, X, True),  # x^2 < x for small x > 0
        (X + X**3, X + X**2, True),
        (-X, X**5, True),
    ],
)
def test_precedes_right(p, q, expected):
    assert precedes_right(p, q) is expected


def test_precedes_right_rejects_equal():
    with pytest.raises(EqualPolynomials):
        precedes_right(X, X)


@given(nonzero_unipolys, nonzero_unipolys)
def test_precedes_right_matches_small_x(p, q):
    if p == q:
        return
    # evaluate well inside the region where the lowest term of q - p dominates
    d = q - p
    k = valuation_x(d)
    lead = abs(lowest_coefficient(d))
    tail = sum(abs(c) for c in d.coeffs[k + 1:])
    x0 = min(Fraction(1, 2), lead / (2 * tail)) if tail else Fraction(1, 2)
    assert precedes_right(p, q) == (p(x0) < q(x0))


@given(unipolys, unipolys, unipolys)
def test_ring_laws(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a - a == UniPoly()


@given(unipolys, nonzero_unipolys)
def test_divmod_identity(a, b):
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.degree < b.degree


@given(unipolys, unipolys)
def test_product_matches_sympy(a, b):
    expected = sympy.expand(oracles.to_sympy(a) * oracles.to_sympy(b))
    assert sympy.expand(oracles.to_sympy(a * b) - expected) == 0


@given(unipolys)
def test_antiderivative_inverts_derivative(p):
    assert p.antiderivative().derivative() == p
    assert p.antiderivative()(0) == 0


@given(unipolys, unipolys, rationals)
def test_compose_evaluates(p, q, x0):
    assert p.compose(q)(x0) == p(q(x0))


@given(nonzero_unipolys, nonzero_unipolys)
@settings(max_examples=60)
def test_gcd_matches_sympy(a, b):
    g = poly_gcd(a, b)
    expected = sympy.Poly(sympy.gcd(oracles.to_sympy(a), oracles.to_sympy(b)), oracles.x_sym).monic()
    assert g.lc == 1
    assert sympy.expand(oracles.to_sympy(g) - expected.as_expr()) == 0


@given(st.lists(st.integers(-4, 4), min_size=1, max_size=5))
def test_squarefree_decomposition_reassembles(root_list):
    p = UniPoly([1])
    for r in root_list:
        p = p * UniPoly([-r, 1])
    layers = squarefree_decomposition(p)
    rebuilt = UniPoly([1])
    for k, f in enumerate(layers, start=1):
        rebuilt = rebuilt * f**k
        assert is_squarefree(f)
    assert rebuilt == p.monic()
    assert squarefree_part(p).degree == len(set(root_list))
    assert is_squarefree(p) == (len(set(root_list)) == len(root_list))


@given(nonzero_unipolys, nonzero_unipolys)
@settings(max_examples=60)
def test_resultant_matches_sympy(f, g):
    if f.degree < 1 or g.degree < 1:
        return
    # determinant of the Sylvester matrix; sympy.resultant flips the sign when deg f < deg g
    expected = sylvester(oracles.to_sympy(f), oracles.to_sympy(g), oracles.x_sym).det()
    assert resultant(f, g) == Fraction(str(expected))


def test_resultant_known_values():
    # product of g over the roots of monic f
    assert resultant(UniPoly([-1, 0, 1]), UniPoly([-2, 1])) == (1 - 2) * (-1 - 2)
    assert resultant(UniPoly([2, 1]), X**3) == -8


# -- bivariate -------------------------------------------------------------

def test_product_of_linear_factors():
    P = product_of_linear_factors([UniPoly(), X])
    assert P == Y**2 - X * Y
    assert P.is_monic()
    assert P.y_degree == 2


def test_antiderivative_y_has_zero_constant_term():
    P = product_of_linear_factors([UniPoly(), X])
    Q = antiderivative_y(P) * 3
    assert format_bipoly(Q) == "-3/2*x*y^2 + y^3"
    assert Q.coeff(0) == UniPoly()
    assert derivative_y(Q) == P * 3


@given(bipolys, unipolys, rationals)
def test_compose_y_matches_evaluate(P, a, x0):
    assert compose_y(P, a)(x0) == P.evaluate(x0, a(x0))


@given(st.lists(unipolys, min_size=2, max_size=4), rationals)
@settings(max_examples=40)
def test_definite_integral_matches_sympy(roots, x0):
    P = product_of_linear_factors(roots)
    got = definite_integral_y(P, roots[0], roots[-1])
    exprs = [oracles.to_sympy(a) for a in roots]
    poly = sympy.prod([oracles.y_sym - e for e in exprs])
    expected = sympy.integrate(poly, (oracles.y_sym, exprs[0], exprs[-1]))
    assert sympy.expand(oracles.to_sympy(got) - expected) == 0


@given(bipolys, rationals)
def test_specialize_x(P, x0):
    spec = P.specialize_x(x0)
    for y0 in (Fraction(0), Fraction(1), Fraction(-3, 2)):
        assert spec(y0) == P.evaluate(x0, y0)


# -- text syntax -----------------------------------------------------------

@pytest.mark.parametrize(
    "text, expected",
    [
        ("0", UniPoly()),
        ("x^2 + 1/2*x^5", UniPoly([0, 0, 1, 0, 0, Fraction(1, 2)])),
        ("3x - x", UniPoly([0, 2])),
        ("(x+1)^2", UniPoly([1, 2, 1])),
        ("-x**3", UniPoly([0, 0, 0, -1])),
        ("x/4", UniPoly([0, Fraction(1, 4)])),
    ],
)
def test_parse_unipoly_examples(text, expected):
    assert parse_unipoly(text, "x") == expected


def test_parse_unipoly_detects_variable():
    assert parse_unipoly("y^2 - 1") == UniPoly([-1, 0, 1])
    with pytest.raises(ParseError):
        parse_unipoly("x*y")


@pytest.mark.parametrize("bad", ["", "x^", "(x+1", "x / y", "2 $ x", "x^-1", "1/0"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_bipoly(bad)


def test_parse_rational():
    assert parse_rational(" -7/3 ") == Fraction(-7, 3)
    with pytest.raises(ParseError):
        parse_rational("seven")


@given(unipolys)
def test_unipoly_text_round_trip(p):
    assert parse_unipoly(format_unipoly(p), "x") == p


@given(bipolys)
def test_bipoly_text_round_trip(P):
    assert parse_bipoly(format_bipoly(P)) == P
