"""Valuations of the areas between consecutive roots, read off the contact tree.

``S_i`` is the absolute value of the integral of ``P(y) = prod (y - a_j)``
between ``a_i`` and ``a_{i+1}``. Its x-valuation is predicted by counting
leaves along the geodesic to ``a_i ^ a_{i+1}`` (``area_valuation``) and can
be checked by brute-force exact integration (``area_valuation_oracle``).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .contact_tree import ContactTree, Vertex, contact_tree_of
from .errors import IndexOutOfRange
from .exact_arith import (
    UniPoly,
    definite_integral_y,
    lowest_coefficient,
    product_of_linear_factors,
    valuation_x,
)


class Side(enum.Enum):
    ABOVE = "above"
    BELOW = "below"


class AreaOrder(enum.Enum):
    GREATER = "greater"  # S_k succeeds S_l to the right: smaller valuation
    LESS = "less"
    INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class AreaProfile:
    index: int
    gap_valuation: int
    valuation: int
    side: Side
    # gap index k of vertex a_k ^ a_{k+1} -> number of leaves leaving the geodesic there
    c_coefficients: dict

    def formula_total(self, gaps: Sequence[int]) -> int:
        return self.gap_valuation + sum(c * gaps[k - 1] for k, c in self.c_coefficients.items())


def area_side(i: int, m: int) -> Side:
    """Whether the integral from a_i to a_{i+1} is positive (above) or negative (below).

    ``m + 1`` is the number of roots; the rightmost area is always below.
    """
    if not 1 <= i <= m:
        raise IndexOutOfRange(f"area index {i} outside 1..{m}")
    return Side.ABOVE if (m + 1 - i) % 2 == 0 else Side.BELOW


def _check_area_index(t: ContactTree, i: int):
    if not 1 <= i < t.leaf_count:
        raise IndexOutOfRange(f"area index {i} outside 1..{t.leaf_count - 1}")


def leaf_exit_vertex(t: ContactTree, geodesic: Sequence[Vertex], j: int) -> Vertex:
    """Most recent ancestor of leaf j that lies on ``geodesic``."""
    last = None
    for u, v in zip(geodesic, t.path(j)):
        if u is not v:
            break
        last = u
    return last


def area_valuation(t: ContactTree, i: int) -> AreaProfile:
    t.require_binary()
    _check_area_index(t, i)
    v_i = t.meet(i, i + 1)
    path = t.path(i)
    geodesic = path[: path.index(v_i) + 1]
    counts: dict[int, int] = {}
    total = v_i.valuation
    for j in range(1, t.leaf_count + 1):
        g = leaf_exit_vertex(t, geodesic, j)
        total += g.valuation
        if g.valuation:
            k = t.gap_index[g]
            counts[k] = counts.get(k, 0) + 1
    m = t.leaf_count - 1
    return AreaProfile(
        index=i,
        gap_valuation=v_i.valuation,
        valuation=total,
        side=area_side(i, m),
        c_coefficients=dict(sorted(counts.items())),
    )


def q_matrix(t: ContactTree) -> list[list[int]]:
    """Row i lists the coefficient of e_j in the valuation of S_i (both 1-indexed, stored 0-based)."""
    m = t.leaf_count - 1
    rows = []
    for i in range(1, m + 1):
        prof = area_valuation(t, i)
        rows.append([prof.c_coefficients.get(j, 0) for j in range(1, m + 1)])
    return rows


def signed_integral(roots: Sequence[UniPoly], i: int) -> UniPoly:
    """Exact integral of prod (y - a_j) from a_i to a_{i+1}."""
    if not 1 <= i < len(roots):
        raise IndexOutOfRange(f"area index {i} outside 1..{len(roots) - 1}")
    P = product_of_linear_factors(roots)
    return definite_integral_y(P, roots[i - 1], roots[i])


def area_poly(roots: Sequence[UniPoly], i: int) -> UniPoly:
    """S_i as a polynomial: the integral, negated when it is negative near 0+."""
    integral = signed_integral(roots, i)
    return -integral if lowest_coefficient(integral) < 0 else integral


def area_valuation_oracle(roots: Sequence[UniPoly], i: int) -> int:
    contact_tree_of(roots)  # validates ordering and vanishing at 0
    return valuation_x(signed_integral(roots, i))


def compare_areas(t: ContactTree, k: int, l: int) -> AreaOrder:
    """Order of S_k and S_l when their vertices are comparable in the tree."""
    t.require_binary()
    _check_area_index(t, k)
    _check_area_index(t, l)
    if k == l:
        raise ValueError("compare_areas needs two different areas")
    vk, vl = t.meet(k, k + 1), t.meet(l, l + 1)
    if t.is_ancestor(vk, vl):
        return AreaOrder.GREATER
    if t.is_ancestor(vl, vk):
        return AreaOrder.LESS
    return AreaOrder.INCOMPARABLE


def dominant_area(t: ContactTree, i: int, j: int) -> int:
    """Index k with a_k ^ a_{k+1} == a_i ^ a_j."""
    t.require_binary()
    if not 1 <= i < j <= t.leaf_count:
        raise IndexOutOfRange(f"need 1 <= i < j <= {t.leaf_count}, got ({i}, {j})")
    return t.gap_index[t.meet(i, j)]


def sum_valuation(t: ContactTree, i: int, j: int, signs: Sequence[int]) -> int:
    """Valuation of +-S_i +- ... +- S_{j-1}; independent of the signs chosen."""
    if len(signs) != j - i or any(s not in (1, -1) for s in signs):
        raise ValueError(f"need {j - i} signs from {{+1, -1}}, got {list(signs)}")
    return area_valuation(t, dominant_area(t, i, j)).valuation


def sum_valuation_oracle(roots: Sequence[UniPoly], i: int, j: int, signs: Sequence[int]) -> int:
    total = UniPoly()
    for s, k in zip(signs, range(i, j)):
        total = total + area_poly(roots, k) * s
    return valuation_x(total)
