"""Permutations, alternating sequences and separability.

Permutations are 1-indexed in every public interface: ``p(i)`` is the
image of ``i`` and ``p.images`` lists ``p(1), ..., p(n)``.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DuplicateValues, NotAlternating, ParseError


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(v) for v in self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"{images} is not a permutation of 1..{len(images)}")
        object.__setattr__(self, "images", images)

    @classmethod
    def of(cls, *images: int) -> Permutation:
        return cls(tuple(images))

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    def __call__(self, i: int) -> int:
        if not 1 <= i <= len(self.images):
            raise IndexError(f"index {i} outside 1..{len(self.images)}")
        return self.images[i - 1]

    def __len__(self):
        return len(self.images)

    def __iter__(self):
        return iter(self.images)

    def __str__(self):
        return format_permutation(self)


def parse_permutation(text: str) -> Permutation:
    """Parse one-line notation: ``"4 5 1 3 2"`` or ``"4,5,1,3,2"``."""
    text = text.strip().strip("()[]")
    parts = [t for t in re.split(r"[\s,]+", text) if t]
    if not parts or not all(t.isdigit() for t in parts):
        raise ParseError(f"not a permutation in one-line notation: {text!r}")
    try:
        return Permutation(tuple(int(t) for t in parts))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def format_permutation(p: Permutation) -> str:
    return " ".join(str(v) for v in p.images)


def is_alternating(values: Sequence) -> bool:
    """Strictly alternating rises and falls, either starting direction."""
    if len(set(values)) != len(values):
        return False
    for k in range(len(values) - 2):
        if (values[k + 1] > values[k]) == (values[k + 2] > values[k + 1]):
            return False
    return True


def is_snake(p: Permutation) -> bool:
    return is_alternating(p.images)


def snake_of_sequence(values: Sequence[int | Fraction]) -> Permutation:
    """The snake of an alternating sequence: each value replaced by its rank."""
    vals = [Fraction(v) for v in values]
    if len(set(vals)) != len(vals):
        raise DuplicateValues(f"values are not pairwise distinct: {values}")
    if not is_alternating(vals):
        raise NotAlternating(f"sequence is not alternating: {[str(v) for v in vals]}")
    return Permutation(tuple(ranks(vals)))


def ranks(values: Sequence) -> list[int]:
    order = sorted(range(len(values)), key=values.__getitem__)
    out = [0] * len(values)
    for r, idx in enumerate(order, start=1):
        out[idx] = r
    return out


def direct_sum(p: Permutation, q: Permutation) -> Permutation:
    m = len(p)
    return Permutation(p.images + tuple(v + m for v in q.images))


def skew_sum(p: Permutation, q: Permutation) -> Permutation:
    n = len(q)
    return Permutation(tuple(v + n for v in p.images) + q.images)


PATTERN_3142 = Permutation((3, 1, 4, 2))
PATTERN_2413 = Permutation((2, 4, 1, 3))


def contains_pattern(p: Permutation, pattern: Permutation) -> bool:
    """Exhaustive search for a subsequence order-isomorphic to ``pattern``."""
    k = len(pattern)
    target = tuple(pattern.images)
    for idx in itertools.combinations(range(len(p)), k):
        sub = [p.images[i] for i in idx]
        if tuple(ranks(sub)) == target:
            return True
    return False


def is_separable(p: Permutation) -> bool:
    return not (contains_pattern(p, PATTERN_3142) or contains_pattern(p, PATTERN_2413))


def all_permutations(n: int) -> Iterable[Permutation]:
    for images in itertools.permutations(range(1, n + 1)):
        yield Permutation(images)


def all_snakes(n: int) -> Iterable[Permutation]:
    for p in all_permutations(n):
        if is_snake(p):
            yield p


def is_descending_end(p: Permutation) -> bool:
    """sigma(m) > sigma(m+1); vacuously true for a single element."""
    return len(p) < 2 or p.images[-2] > p.images[-1]
