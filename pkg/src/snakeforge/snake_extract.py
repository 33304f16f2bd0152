"""Arnold snake of a concrete polynomial over Q.

Critical points are isolated exactly with Sturm sequences; critical values
are ordered by bisecting the isolating intervals until interval enclosures
of the values separate. The Morse property is decided algebraically
beforehand, so the refinement loop always terminates.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import ContractViolation, NonPositiveLeading, NotMorse
from .exact_arith import (
    UniPoly,
    is_squarefree,
    squarefree_decomposition,
    squarefree_part,
)
from .permutations import Permutation, is_snake

MAX_BISECTIONS = 10_000


class MorseStatus(enum.Enum):
    PASS = "pass"
    NON_REAL_CRITICAL_POINT = "NonRealCriticalPoint"
    REPEATED_CRITICAL_POINT = "RepeatedCriticalPoint"
    REPEATED_CRITICAL_VALUE = "RepeatedCriticalValue"


@dataclass(frozen=True)
class IsolatedRoot:
    """A real root of the derivative, the only one in ``(lo, hi]``."""

    lo: Fraction
    hi: Fraction
    multiplicity: int = 1

    @property
    def interval(self) -> tuple[Fraction, Fraction]:
        return (self.lo, self.hi)


@dataclass(frozen=True)
class MorseCertificate:
    degree: int
    leading_coefficient: Fraction
    critical_points: tuple[IsolatedRoot, ...]
    critical_value_order: Permutation


# -- Sturm machinery -------------------------------------------------------

def sturm_sequence(p: UniPoly) -> list[UniPoly]:
    seq = [p, p.derivative()]
    while seq[-1]:
        seq.append(-(seq[-2] % seq[-1]))
    return seq[:-1]


def _sign(v: Fraction) -> int:
    return (v > 0) - (v < 0)


def sign_variations(seq: Sequence[UniPoly], x0: Fraction) -> int:
    signs = [s for s in (_sign(q(x0)) for q in seq) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(seq: Sequence[UniPoly], lo: Fraction, hi: Fraction) -> int:
    """Distinct real roots in (lo, hi] of the squarefree head of ``seq``."""
    return sign_variations(seq, lo) - sign_variations(seq, hi)


def root_bound(p: UniPoly) -> Fraction:
    """Cauchy bound: every real root lies in (-B, B)."""
    lc = abs(p.lc)
    return 1 + max((abs(c) / lc for c in p.coeffs[:-1]), default=Fraction(0))


def isolate_real_roots(f: UniPoly) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals (lo, hi], sorted, one per distinct real root of f."""
    if f.degree <= 0:
        return []
    g = squarefree_part(f)
    seq = sturm_sequence(g)
    bound = root_bound(g)
    out = []
    stack = [(-bound, bound)]
    while stack:
        lo, hi = stack.pop()
        n = count_roots(seq, lo, hi)
        if n == 0:
            continue
        if n == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        stack.append((mid, hi))
        stack.append((lo, mid))
    return sorted(out)


def isolate_critical_points(p: UniPoly) -> list[IsolatedRoot]:
    """Isolating intervals for the real roots of p', with their multiplicities."""
    d = p.derivative()
    if d.degree <= 0:
        return []
    layers = squarefree_decomposition(d)
    layer_seqs = [(k, sturm_sequence(f)) for k, f in enumerate(layers, start=1) if f.degree > 0]
    roots = []
    for lo, hi in isolate_real_roots(d):
        mult = next(k for k, seq in layer_seqs if count_roots(seq, lo, hi) == 1)
        roots.append(IsolatedRoot(lo, hi, mult))
    return roots


# -- Morse test ------------------------------------------------------------

def _charpoly(matrix: list[list[Fraction]]) -> UniPoly:
    """Characteristic polynomial det(zI - M) by Faddeev-LeVerrier."""
    n = len(matrix)
    ident = [[Fraction(int(r == c)) for c in range(n)] for r in range(n)]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    M = [[Fraction(0)] * n for _ in range(n)]
    c = Fraction(1)
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        M = [[sum(matrix[r][t] * M[t][col] for t in range(n)) + c * ident[r][col] for col in range(n)]
             for r in range(n)]
        AM = [[sum(matrix[r][t] * M[t][col] for t in range(n)) for col in range(n)] for r in range(n)]
        c = -sum(AM[r][r] for r in range(n)) / k
        coeffs[n - k] = c
    return UniPoly(coeffs)


def critical_value_polynomial(p: UniPoly) -> UniPoly:
    """Monic polynomial whose roots are the critical values p(r), p'(r) = 0, with multiplicity.

    This is the resultant in y of p'(y) and z - p(y), normalized to be
    monic, computed as the characteristic polynomial of multiplication by
    p in Q[y]/(p').
    """
    d = p.derivative().monic()
    n = d.degree
    if n <= 0:
        return UniPoly([1])
    red = p % d
    columns = []
    for j in range(n):
        col = (red * UniPoly.monomial(1, j)) % d
        columns.append([col.coeff(r) for r in range(n)])
    matrix = [[columns[c][r] for c in range(n)] for r in range(n)]
    return _charpoly(matrix)


def morse_check(p: UniPoly) -> MorseStatus:
    if p.degree < 2:
        raise ValueError("Morse check needs degree >= 2")
    d = p.derivative()
    if not is_squarefree(d):
        return MorseStatus.REPEATED_CRITICAL_POINT
    if count_roots(sturm_sequence(d), -root_bound(d), root_bound(d)) != d.degree:
        return MorseStatus.NON_REAL_CRITICAL_POINT
    if not is_squarefree(critical_value_polynomial(p)):
        return MorseStatus.REPEATED_CRITICAL_VALUE
    return MorseStatus.PASS


# -- ordering critical values ----------------------------------------------

def interval_eval(p: UniPoly, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Enclosure of p over [lo, hi] by interval Horner evaluation."""
    if lo == hi:
        v = p(lo)
        return v, v
    a = b = Fraction(0)
    for c in reversed(p.coeffs):
        prods = (a * lo, a * hi, b * lo, b * hi)
        a, b = min(prods) + c, max(prods) + c
    return a, b


class _Refiner:
    """Shrinks the isolating interval of one simple root of a squarefree f."""

    def __init__(self, f: UniPoly, seq: list[UniPoly], lo: Fraction, hi: Fraction):
        self.f, self.seq = f, seq
        self.lo, self.hi = lo, hi
        self.exact = not f(hi)
        if self.exact:
            self.lo = hi

    def bisect(self):
        if self.exact:
            return
        mid = (self.lo + self.hi) / 2
        if not self.f(mid):
            self.lo = self.hi = mid
            self.exact = True
        elif count_roots(self.seq, self.lo, mid) == 1:
            self.hi = mid
        else:
            self.lo = mid


def order_critical_values(p: UniPoly, roots: Sequence[IsolatedRoot]) -> list[int]:
    """Ranks (1-based) of the critical values p(r_1), ..., p(r_k).

    The values must be pairwise distinct.
    """
    f = squarefree_part(p.derivative())
    seq = sturm_sequence(f)
    refiners = [_Refiner(f, seq, r.lo, r.hi) for r in roots]
    for _ in range(MAX_BISECTIONS):
        boxes = [interval_eval(p, r.lo, r.hi) for r in refiners]
        overlapping = set()
        for i in range(len(boxes)):
            for j in range(i + 1, len(boxes)):
                if not (boxes[i][1] < boxes[j][0] or boxes[j][1] < boxes[i][0]):
                    overlapping.update((i, j))
        if not overlapping:
            order = sorted(range(len(boxes)), key=lambda k: boxes[k][0])
            out = [0] * len(boxes)
            for rank, k in enumerate(order, start=1):
                out[k] = rank
            return out
        for k in overlapping:
            refiners[k].bisect()
    raise ContractViolation(f"critical values of {p} did not separate after {MAX_BISECTIONS} bisections")


def arnold_snake_of(p: UniPoly) -> MorseCertificate:
    if p.degree < 2:
        raise ValueError("need a polynomial of degree at least 2")
    if p.lc <= 0:
        raise NonPositiveLeading(f"leading coefficient {p.lc} is not positive")
    q = p.monic()
    status = morse_check(q)
    if status is not MorseStatus.PASS:
        raise NotMorse(status)
    points = isolate_critical_points(q)
    order = Permutation(tuple(order_critical_values(q, points)))
    if not is_snake(order):
        raise ContractViolation(f"critical values of {p} do not alternate: {order}")
    return MorseCertificate(
        degree=p.degree,
        leading_coefficient=p.lc,
        critical_points=tuple(points),
        critical_value_order=order,
    )


def refine_critical_points(p: UniPoly, width: Fraction) -> list[IsolatedRoot]:
    """Isolating intervals of the real critical points, each no wider than ``width``."""
    f = squarefree_part(p.derivative())
    seq = sturm_sequence(f)
    out = []
    for r in isolate_critical_points(p):
        ref = _Refiner(f, seq, r.lo, r.hi)
        while ref.hi - ref.lo > width:
            ref.bisect()
        out.append(IsolatedRoot(ref.lo, ref.hi, r.multiplicity))
    return out
