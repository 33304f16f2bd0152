"""From a separable snake to a Morse polynomial whose Arnold snake it is.

Pipeline: separating tree -> roots realizing it as a contact tree ->
``P = prod (y - a_i)`` -> ``Q = (m+2) * integral_0^y P`` -> a dyadic
witness ``x*`` at which the critical values ``Q(x*, a_i(x*))`` rank to the
target snake. Every result is verified twice: symbolically (the order of
the critical-value polynomials near 0+) and at the witness.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .contact_tree import contact_tree_of, realize_tree, tree_isomorphic
from .errors import (
    ContractViolation,
    IndexOutOfRange,
    NotAlternating,
    NotASnake,
    WitnessSearchExhausted,
    WrongOrientation,
)
from .exact_arith import (
    BiPoly,
    UniPoly,
    antiderivative_y,
    compose_y,
    precedes_right,
    product_of_linear_factors,
)
from .permutations import Permutation, is_descending_end, is_snake, snake_of_sequence
from .separating_tree import Sign, SignedTree, build_separating_tree, meet_sign

DEFAULT_MAX_HALVINGS = 256


def max_halvings() -> int:
    value = os.environ.get("SNAKEFORGE_MAX_HALVINGS")
    if value is None:
        return DEFAULT_MAX_HALVINGS
    try:
        n = int(value)
    except ValueError:
        raise ValueError(f"SNAKEFORGE_MAX_HALVINGS must be an integer, got {value!r}") from None
    if n < 1:
        raise ValueError("SNAKEFORGE_MAX_HALVINGS must be positive")
    return n


@dataclass(frozen=True)
class RealizationResult:
    sigma: Permutation
    tree: SignedTree
    roots: tuple[UniPoly, ...]
    P: BiPoly
    Q: BiPoly
    critical_value_polys: tuple[UniPoly, ...]
    witness_x: Fraction
    halvings: int
    critical_points: tuple[Fraction, ...]
    critical_values: tuple[Fraction, ...]
    verified_snake: Permutation

    def polynomial_at_witness(self) -> UniPoly:
        """Q(x*, y) as a polynomial in y."""
        return self.Q.specialize_x(self.witness_x)


def critical_value_polys(Q: BiPoly, roots: Sequence[UniPoly]) -> list[UniPoly]:
    """c_i(x) = Q(x, a_i(x))."""
    return [compose_y(Q, a) for a in roots]


def critical_values_at(Q: BiPoly, roots: Sequence[UniPoly], x0: Fraction) -> list[Fraction]:
    """Critical values at x0, computed by composition and by direct evaluation."""
    x0 = Fraction(x0)
    by_compose = [c(x0) for c in critical_value_polys(Q, roots)]
    direct = [Q.evaluate(x0, a(x0)) for a in roots]
    if by_compose != direct:
        raise ContractViolation(f"critical values disagree at x = {x0}: {by_compose} vs {direct}")
    return direct


def _conditions_hold(roots, cvals_polys, sigma: Permutation, x0: Fraction) -> bool:
    points = [a(x0) for a in roots]
    if len(set(points)) != len(points):
        return False
    values = [c(x0) for c in cvals_polys]
    if len(set(values)) != len(values):
        return False
    try:
        return snake_of_sequence(values) == sigma
    except NotAlternating:
        return False


def find_witness(Q: BiPoly, roots: Sequence[UniPoly], sigma: Permutation,
                 limit: int | None = None) -> tuple[Fraction, int]:
    """Largest x0 = 2^-k passing the Morse and snake checks at x0 and x0/2.

    Returns ``(x0, k)``.
    """
    limit = max_halvings() if limit is None else limit
    cpolys = critical_value_polys(Q, roots)
    ok_prev = None
    for k in range(1, limit + 1):
        x0 = Fraction(1, 2 ** k)
        ok = ok_prev if ok_prev is not None else _conditions_hold(roots, cpolys, sigma, x0)
        ok_next = _conditions_hold(roots, cpolys, sigma, x0 / 2)
        if ok and ok_next:
            return x0, k
        ok_prev = ok_next
    raise WitnessSearchExhausted(f"no witness for {sigma} within {limit} halvings")


def difference_decomposition(i: int, j: int, m: int) -> list[tuple[int, int]]:
    """Signed areas making up c_j - c_i (up to the positive factor m+2)."""
    if not 1 <= i < j <= m + 1:
        raise IndexOutOfRange(f"need 1 <= i < j <= {m + 1}, got ({i}, {j})")
    return [(k, 1 if (m + 1 - k) % 2 == 0 else -1) for k in range(i, j)]


def check_symbolic_order(sigma: Permutation, tree: SignedTree, cpolys: Sequence[UniPoly]) -> None:
    """For every i < j, the sign of c_j - c_i near 0+ matches the separating tree."""
    n = len(cpolys)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            rises = precedes_right(cpolys[i - 1], cpolys[j - 1])
            expected = meet_sign(tree, i, j) is Sign.PLUS
            if rises != expected or rises != (sigma(i) < sigma(j)):
                raise ContractViolation(f"critical values {i}, {j} of {sigma} are ordered wrongly near 0+")


def realize_snake(sigma: Permutation, limit: int | None = None) -> RealizationResult:
    if not is_snake(sigma):
        raise NotASnake(f"{sigma} is not alternating")
    tree = build_separating_tree(sigma)  # raises NotSeparable
    if not is_descending_end(sigma):
        raise WrongOrientation(
            f"{sigma} ends with a rise; a monic polynomial's last critical value is a local minimum"
        )
    m = len(sigma) - 1
    roots = realize_tree(tree)
    if not tree_isomorphic(contact_tree_of(roots), tree):
        raise ContractViolation("realized roots do not reproduce the separating tree")
    P = product_of_linear_factors(roots)
    Q = antiderivative_y(P) * (m + 2)
    cpolys = critical_value_polys(Q, roots)
    check_symbolic_order(sigma, tree, cpolys)
    x0, k = find_witness(Q, roots, sigma, limit)
    values = critical_values_at(Q, roots, x0)
    snake = snake_of_sequence(values)
    if snake != sigma:
        raise ContractViolation(f"witness {x0} yields {snake}, expected {sigma}")
    return RealizationResult(
        sigma=sigma,
        tree=tree,
        roots=tuple(roots),
        P=P,
        Q=Q,
        critical_value_polys=tuple(cpolys),
        witness_x=x0,
        halvings=k,
        critical_points=tuple(a(x0) for a in roots),
        critical_values=tuple(values),
        verified_snake=snake,
    )
