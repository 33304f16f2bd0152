from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from snakeforge.errors import (
    ContractViolation,
    IndexOutOfRange,
    NotASnake,
    NotSeparable,
    WitnessSearchExhausted,
    WrongOrientation,
)
from snakeforge.exact_arith import X, UniPoly, format_bipoly, parse_bipoly
from snakeforge.permutations import Permutation, is_descending_end, is_snake
from snakeforge.realization import (
    DEFAULT_MAX_HALVINGS,
    critical_values_at,
    difference_decomposition,
    find_witness,
    max_halvings,
    realize_snake,
)
from snakeforge.separating_tree import shape_string
from snakeforge.valuation import area_poly

TARGETS = sorted(
    images
    for n in range(1, 8)
    for images in oracles.generate_separable(n)
    if is_snake(Permutation(images)) and is_descending_end(Permutation(images))
)


def test_two_point_snake():
    r = realize_snake(Permutation.of(2, 1))
    assert r.Q == parse_bipoly("y^3 - 3/2*x*y^2")
    assert format_bipoly(r.Q) == "-3/2*x*y^2 + y^3"
    assert r.witness_x == Fraction(1, 2) and r.halvings == 1
    assert r.critical_points == (0, Fraction(1, 2))
    assert r.critical_values == (0, Fraction(-1, 16))
    assert r.verified_snake == Permutation.of(2, 1)


def test_single_point():
    r = realize_snake(Permutation.of(1))
    assert r.Q == parse_bipoly("y^2")
    assert r.verified_snake == Permutation.of(1)


def test_worked_example():
    sigma = Permutation.of(4, 5, 1, 3, 2)
    r = realize_snake(sigma)
    assert shape_string(r.tree) == "(.+.)-(.+(.-.))"
    assert r.roots == (UniPoly(), X**2, X, X + X**2, X + X**2 + X**3)
    assert r.witness_x == Fraction(1, 4) and r.halvings == 2
    assert r.verified_snake == sigma
    # independent check of the witness with sympy: 1/4 and 1/8 work, 1/2 does not
    for x0, works in [(Fraction(1, 2), False), (Fraction(1, 4), True), (Fraction(1, 8), True)]:
        values = oracles.sympy_critical_values(r.roots, x0)
        assert (oracles.ranks(values) == sigma.images) is works
    assert [Fraction(str(v)) for v in oracles.sympy_critical_values(r.roots, r.witness_x)] == list(r.critical_values)


@pytest.mark.parametrize("images", TARGETS[:40])
def test_critical_values_match_sympy(images):
    r = realize_snake(Permutation(images))
    values = oracles.sympy_critical_values(r.roots, r.witness_x)
    assert oracles.ranks(values) == images
    half = oracles.sympy_critical_values(r.roots, r.witness_x / 2)
    assert oracles.ranks(half) == images


def test_target_population_size():
    assert len(TARGETS) == 1 + 1 + 2 + 4 + 10 + 24 + 66


@given(st.sampled_from(TARGETS))
@settings(max_examples=30)
def test_realization_invariants(images):
    sigma = Permutation(images)
    r = realize_snake(sigma)
    assert r.P.is_monic() and r.Q.is_monic()
    assert r.Q.y_degree == len(sigma) + 1
    assert r.Q.coeff(0) == UniPoly()
    assert r.critical_values == tuple(critical_values_at(r.Q, r.roots, r.witness_x))
    assert len(set(r.critical_points)) == len(sigma)
    assert r.polynomial_at_witness().derivative().degree == len(sigma)


@pytest.mark.parametrize(
    "images, error",
    [
        ((1, 2, 3), NotASnake),
        ((2, 4, 1, 3), NotSeparable),
        ((3, 1, 4, 2), NotSeparable),
        ((1, 2), WrongOrientation),
        ((2, 1, 3), WrongOrientation),
    ],
)
def test_rejections(images, error):
    with pytest.raises(error):
        realize_snake(Permutation(images))


def test_error_precedence():
    # 2 4 1 3 is a non-separable snake ending in a rise: separability is reported first
    with pytest.raises(NotSeparable):
        realize_snake(Permutation.of(2, 4, 1, 3))
    # 1 2 4 3 is separable but not a snake
    with pytest.raises(NotASnake):
        realize_snake(Permutation.of(1, 2, 4, 3))


def test_witness_limit(monkeypatch):
    assert max_halvings() == DEFAULT_MAX_HALVINGS
    monkeypatch.setenv("SNAKEFORGE_MAX_HALVINGS", "1")
    assert max_halvings() == 1
    with pytest.raises(WitnessSearchExhausted):
        realize_snake(Permutation.of(4, 5, 1, 3, 2))
    assert issubclass(WitnessSearchExhausted, ContractViolation)
    monkeypatch.setenv("SNAKEFORGE_MAX_HALVINGS", "zero")
    with pytest.raises(ValueError):
        max_halvings()


def test_find_witness_explicit_limit():
    r = realize_snake(Permutation.of(4, 5, 1, 3, 2))
    assert find_witness(r.Q, r.roots, r.sigma, limit=2) == (Fraction(1, 4), 2)


def test_difference_decomposition():
    # c_j - c_i is the sum of the signed areas between consecutive roots
    assert difference_decomposition(1, 3, 4) == [(1, 1), (2, -1)]
    assert difference_decomposition(4, 5, 4) == [(4, -1)]
    with pytest.raises(IndexOutOfRange):
        difference_decomposition(2, 2, 4)


@given(st.sampled_from(TARGETS[2:]))
@settings(max_examples=20)
def test_differences_are_signed_area_sums(images):
    r = realize_snake(Permutation(images))
    roots = list(r.roots)
    m = len(images) - 1
    for i in range(1, m + 2):
        for j in range(i + 1, m + 2):
            total = UniPoly()
            for k, sign in difference_decomposition(i, j, m):
                total = total + area_poly(roots, k) * sign
            diff = r.critical_value_polys[j - 1] - r.critical_value_polys[i - 1]
            assert diff == total * (m + 2)
