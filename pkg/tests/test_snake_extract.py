import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from snakeforge.errors import NonPositiveLeading, NotMorse
from snakeforge.exact_arith import UniPoly, is_squarefree, parse_unipoly, resultant
from snakeforge.permutations import Permutation, is_snake
from snakeforge.realization import realize_snake
from snakeforge.snake_extract import (
    MorseStatus,
    arnold_snake_of,
    count_roots,
    critical_value_polynomial,
    interval_eval,
    isolate_critical_points,
    isolate_real_roots,
    morse_check,
    refine_critical_points,
    sturm_sequence,
)

QUINTIC = parse_unipoly("y^5 - 35/2*y^4 + 105*y^3 - 265*y^2 + 280*y")


def _contains(r, value):
    return r.lo < value <= r.hi


def test_quintic_critical_points():
    roots = isolate_critical_points(QUINTIC)
    assert len(roots) == 4
    for r, v in zip(roots, (1, 2, 4, 7)):
        assert _contains(r, v)
        assert r.multiplicity == 1


def test_quintic_snake_both_scalings():
    assert arnold_snake_of(QUINTIC).critical_value_order == Permutation.of(3, 2, 4, 1)
    # the integrand with the extra factor 5 only rescales the values
    assert arnold_snake_of(QUINTIC * 5).critical_value_order == Permutation.of(3, 2, 4, 1)


def test_quintic_critical_values_from_integrand_without_factor():
    t = sympy.Symbol("t")
    P = sympy.integrate((t - 1) * (t - 2) * (t - 4) * (t - 7), (t, 0, oracles.y_sym))
    values = [float(P.subs(oracles.y_sym, v)) for v in (1, 2, 4, 7)]
    assert [round(v, 1) for v in values] == [20.7, 18.4, 28.8, -44.1]
    assert oracles.ranks(values) == (3, 2, 4, 1)


@pytest.mark.parametrize(
    "text, count",
    [("y^2", 1), ("y^3 + 3*y", 0), ("y^4 - 2*y^2", 3), ("y^3", 1)],
)
def test_isolation_counts(text, count):
    assert len(isolate_critical_points(parse_unipoly(text))) == count


def test_multiplicity_reported():
    (r,) = isolate_critical_points(parse_unipoly("y^3"))
    assert r.multiplicity == 2 and _contains(r, 0)


@pytest.mark.parametrize(
    "text, status",
    [
        ("y^5 - 35/2*y^4 + 105*y^3 - 265*y^2 + 280*y", MorseStatus.PASS),
        ("y^4 - 2*y^2", MorseStatus.REPEATED_CRITICAL_VALUE),
        ("y^3", MorseStatus.REPEATED_CRITICAL_POINT),
        ("y^3 + 3*y", MorseStatus.NON_REAL_CRITICAL_POINT),
        ("y^2", MorseStatus.PASS),
    ],
)
def test_morse_check(text, status):
    assert morse_check(parse_unipoly(text)) is status


def test_arnold_snake_errors():
    with pytest.raises(NotMorse) as info:
        arnold_snake_of(parse_unipoly("y^3"))
    assert info.value.reason is MorseStatus.REPEATED_CRITICAL_POINT
    with pytest.raises(NotMorse):
        arnold_snake_of(parse_unipoly("y^4 - 2*y^2"))
    with pytest.raises(NonPositiveLeading):
        arnold_snake_of(-QUINTIC)
    with pytest.raises(ValueError):
        arnold_snake_of(parse_unipoly("y + 1"))


def test_certificate_fields():
    cert = arnold_snake_of(QUINTIC * 3)
    assert cert.degree == 5
    assert cert.leading_coefficient == 3
    assert len(cert.critical_points) == cert.degree - 1


@st.composite
def distinct_rationals(draw, min_size=1, max_size=5):
    return draw(st.lists(st.fractions(-6, 6, max_denominator=5), min_size=min_size, max_size=max_size, unique=True))


@given(distinct_rationals())
def test_sturm_isolation_finds_known_roots(roots):
    p = UniPoly([1])
    for r in roots:
        p = p * UniPoly([-r, 1])
    found = isolate_critical_points(p.antiderivative())
    assert len(found) == len(roots)
    for iso, r in zip(found, sorted(roots)):
        assert _contains(iso, r)
    # intervals are disjoint and sorted
    assert all(a.hi <= b.lo for a, b in zip(found, found[1:]))


def test_sturm_isolation_hundred_seeded_products():
    rng = random.Random(100)
    for _ in range(100):
        roots = sorted({Fraction(rng.randint(-40, 40), rng.randint(1, 8)) for _ in range(rng.randint(1, 6))})
        p = UniPoly([1])
        for r in roots:
            p = p * UniPoly([-r, 1])
        found = isolate_critical_points(p.antiderivative())
        assert [any(_contains(iso, r) for r in roots) for iso in found] == [True] * len(roots)
        assert all(sum(_contains(iso, r) for r in roots) == 1 for iso in found)


@given(st.lists(st.fractions(-5, 5, max_denominator=4), min_size=2, max_size=6))
@settings(max_examples=50)
def test_real_root_count_matches_sympy(coeffs):
    p = UniPoly(coeffs)
    if p.degree < 1:
        return
    expected = len(sympy.Poly(oracles.to_sympy(p), oracles.x_sym).real_roots(multiple=True))
    distinct = len(set(sympy.Poly(oracles.to_sympy(p), oracles.x_sym).real_roots()))
    assert len(isolate_real_roots(p)) == distinct <= expected


@given(st.lists(st.fractions(-5, 5, max_denominator=4), min_size=3, max_size=6))
@settings(max_examples=40)
def test_critical_value_polynomial_matches_resultants(coeffs):
    p = UniPoly(coeffs)
    if p.degree < 2:
        return
    V = critical_value_polynomial(p)
    z = oracles.z_sym
    expected = sympy.Poly(
        sympy.resultant(oracles.to_sympy(p.derivative(), oracles.y_sym), z - oracles.to_sympy(p, oracles.y_sym),
                        oracles.y_sym),
        z,
        domain="QQ",
    )
    ours = sympy.Poly(oracles.to_sympy(V, z), z, domain="QQ")
    # equal up to a nonzero constant factor
    assert (expected.monic() - ours.monic()).is_zero
    # evaluate the in-package Euclid resultant at a few sample z
    d = p.derivative()
    for z0 in (Fraction(0), Fraction(1, 3), Fraction(-2)):
        res = resultant(d, UniPoly([z0]) - p)
        assert (res == 0) == (V(z0) == 0)
    status = morse_check(p)
    if status is MorseStatus.PASS:
        assert is_squarefree(V)
    elif status is MorseStatus.REPEATED_CRITICAL_VALUE:
        assert not is_squarefree(V)


def test_interval_eval_encloses():
    p = parse_unipoly("y^3 - 2*y + 1")
    lo, hi = Fraction(-1), Fraction(2)
    a, b = interval_eval(p, lo, hi)
    for k in range(31):
        y0 = lo + (hi - lo) * k / 30
        assert a <= p(y0) <= b


def test_refinement_width():
    for r in refine_critical_points(QUINTIC, Fraction(1, 1000)):
        assert r.hi - r.lo <= Fraction(1, 1000)


def test_sturm_counts_distinct_roots():
    p = parse_unipoly("(y - 1)*(y - 2)*(y^2 + 1)")
    seq = sturm_sequence(p)
    assert count_roots(seq, Fraction(0), Fraction(3)) == 2
    assert count_roots(seq, Fraction(1), Fraction(2)) == 1  # (1, 2] contains only 2


@given(st.sampled_from([(2, 1), (2, 3, 1), (1, 3, 2), (4, 5, 1, 3, 2), (6, 7, 4, 5, 1, 3, 2)]),
       st.fractions(Fraction(1, 10), 10, max_denominator=10))
@settings(max_examples=20)
def test_rank_invariance_under_positive_scaling(images, c):
    q = realize_snake(Permutation(images)).polynomial_at_witness()
    assert arnold_snake_of(q * c).critical_value_order == arnold_snake_of(q).critical_value_order


@given(st.lists(st.integers(-9, 9), min_size=2, max_size=5, unique=True), st.integers(1, 3))
@settings(max_examples=40)
def test_returned_orders_are_snakes(crit, scale):
    p = UniPoly([1])
    for r in crit:
        p = p * UniPoly([-r, 1])
    q = p.antiderivative() * scale
    try:
        cert = arnold_snake_of(q)
    except NotMorse as exc:
        assert exc.reason is MorseStatus.REPEATED_CRITICAL_VALUE
        return
    assert is_snake(cert.critical_value_order)
    values = [q(r) for r in sorted(crit)]
    assert cert.critical_value_order.images == oracles.ranks(values)
