"""Binary separating trees of separable permutations.

A separating tree is a complete plane binary tree whose internal nodes
carry a sign: ``+`` when every label on the left is below every label on
the right (direct sum) and ``-`` for the reverse (skew sum). Reading the
leaves left to right spells the permutation.
"""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from functools import cached_property
from typing import Union

from .errors import IndexOutOfRange, LeafOnly, MalformedTree, NotSeparable
from .permutations import Permutation, direct_sum, skew_sum


class Sign(enum.Enum):
    PLUS = "+"
    MINUS = "-"

    @property
    def symbol(self) -> str:
        return "⊕" if self is Sign.PLUS else "⊖"

    def __str__(self):
        return self.symbol


@dataclass(frozen=True)
class Leaf:
    label: int | None = None

    @cached_property
    def size(self) -> int:
        return 1


@dataclass(frozen=True)
class Node:
    sign: Sign
    left: SignedTree
    right: SignedTree

    @cached_property
    def size(self) -> int:
        return self.left.size + self.right.size


SignedTree = Union[Leaf, Node]


def leaves(t: SignedTree) -> list[int | None]:
    if isinstance(t, Leaf):
        return [t.label]
    return leaves(t.left) + leaves(t.right)


def internal_nodes(t: SignedTree) -> list[Node]:
    """Internal nodes in symmetric (in-order) order.

    The k-th node returned is the meet of leaves k and k+1.
    """
    if isinstance(t, Leaf):
        return []
    return internal_nodes(t.left) + [t] + internal_nodes(t.right)


def build_separating_tree(p: Permutation) -> SignedTree:
    """Canonical binary separating tree of a separable permutation.

    Each block is split at its shortest left prefix that forms a valid
    direct- or skew-sum block, which makes the tree right-leaning.
    """
    images = p.images
    if not images:
        raise MalformedTree("empty permutation has no separating tree")

    def build(lo: int, hi: int) -> SignedTree:
        if hi - lo == 1:
            return Leaf(images[lo])
        run_max = run_min = images[lo]
        block_min = min(images[lo:hi])
        block_max = max(images[lo:hi])
        for cut in range(lo + 1, hi):
            # prefix images[lo:cut] forms the low (resp. high) part of the block
            if run_min == block_min and run_max == block_min + (cut - lo) - 1:
                return Node(Sign.PLUS, build(lo, cut), build(cut, hi))
            if run_max == block_max and run_min == block_max - (cut - lo) + 1:
                return Node(Sign.MINUS, build(lo, cut), build(cut, hi))
            run_max = max(run_max, images[cut])
            run_min = min(run_min, images[cut])
        raise NotSeparable(f"{p} is not separable (block {images[lo:hi]} does not split)")

    return build(0, len(images))


def permutation_of_tree(t: SignedTree) -> Permutation:
    """Recombine a decomposition: direct sum at ``+`` nodes, skew sum at ``-``."""
    if isinstance(t, Leaf):
        return Permutation((1,))
    if not isinstance(t, Node) or not isinstance(t.sign, Sign):
        raise MalformedTree(f"not a signed binary tree: {t!r}")
    left, right = permutation_of_tree(t.left), permutation_of_tree(t.right)
    return direct_sum(left, right) if t.sign is Sign.PLUS else skew_sum(left, right)


def check_separating_tree(t: SignedTree) -> None:
    """Raise ``MalformedTree`` unless every structural invariant holds."""

    def walk(node) -> list[int]:
        if isinstance(node, Leaf):
            if node.label is None:
                raise MalformedTree("leaf without label")
            return [node.label]
        if not isinstance(node, Node):
            raise MalformedTree(f"unexpected node {node!r}")
        left, right = walk(node.left), walk(node.right)
        labels = left + right
        if max(labels) - min(labels) + 1 != len(labels) or len(set(labels)) != len(labels):
            raise MalformedTree(f"labels {labels} below a node do not form an interval")
        if node.sign is Sign.PLUS and not max(left) < min(right):
            raise MalformedTree(f"+ node with left {left} not below right {right}")
        if node.sign is Sign.MINUS and not min(left) > max(right):
            raise MalformedTree(f"- node with left {left} not above right {right}")
        return labels

    labels = walk(t)
    if sorted(labels) != list(range(1, len(labels) + 1)):
        raise MalformedTree(f"leaf labels {labels} are not a permutation")


def meet_node(t: SignedTree, i: int, j: int) -> Node:
    """Deepest common ancestor of the i-th and j-th leaves (1-indexed, i < j)."""
    if not 1 <= i < j <= t.size:
        raise IndexOutOfRange(f"need 1 <= i < j <= {t.size}, got ({i}, {j})")
    node = t
    while True:
        k = node.left.size
        if j <= k:
            node = node.left
        elif i > k:
            node = node.right
            i, j = i - k, j - k
        else:
            return node


def meet_sign(t: SignedTree, i: int, j: int) -> Sign:
    return meet_node(t, i, j).sign


def signs_alternate(t: SignedTree) -> bool:
    """Signs of the internal nodes, read in symmetric order, alternate.

    Neighbours in that order are meet(k, k+1) and meet(k+1, k+2), so this
    compares the directions of consecutive steps of the permutation.
    """
    signs = [node.sign for node in internal_nodes(t)]
    return all(a is not b for a, b in zip(signs, signs[1:]))


def rightmost_sign(t: SignedTree) -> Sign:
    """Sign governing the last two leaves."""
    if isinstance(t, Leaf):
        raise LeafOnly("a single leaf has no internal node")
    return meet_sign(t, t.size - 1, t.size)


def shape_string(t: SignedTree) -> str:
    """Compact infix form, e.g. ``(.+.)-(.+(.-.))``."""
    if isinstance(t, Leaf):
        return "."

    def wrap(s: SignedTree) -> str:
        return shape_string(s) if isinstance(s, Leaf) else f"({shape_string(s)})"

    return f"{wrap(t.left)}{t.sign.value}{wrap(t.right)}"


# -- serialization ---------------------------------------------------------

def tree_to_dict(t: SignedTree) -> dict:
    if isinstance(t, Leaf):
        return {"leaf": t.label}
    return {"sign": t.sign.value, "left": tree_to_dict(t.left), "right": tree_to_dict(t.right)}


def tree_from_dict(d: dict) -> SignedTree:
    if not isinstance(d, dict):
        raise MalformedTree(f"expected an object, got {d!r}")
    if "leaf" in d:
        label = d["leaf"]
        if label is not None and not isinstance(label, int):
            raise MalformedTree(f"leaf label must be an integer: {label!r}")
        return Leaf(label)
    try:
        sign = Sign(d["sign"])
        return Node(sign, tree_from_dict(d["left"]), tree_from_dict(d["right"]))
    except (KeyError, ValueError) as exc:
        raise MalformedTree(f"bad tree node {d!r}") from exc


def tree_to_json(t: SignedTree, **kwargs) -> str:
    return json.dumps(tree_to_dict(t), **kwargs)


def tree_from_json(text: str) -> SignedTree:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedTree(f"invalid JSON: {exc}") from exc
    return tree_from_dict(data)


def tree_to_dot(t: SignedTree, name: str = "separating_tree") -> str:
    lines = [f"digraph {name} {{", "  ordering=out;"]
    counter = 0

    def emit(node) -> str:
        nonlocal counter
        ident = f"n{counter}"
        counter += 1
        if isinstance(node, Leaf):
            lines.append(f'  {ident} [label="{node.label}", shape=plaintext];')
            return ident
        lines.append(f'  {ident} [label="{node.sign.symbol}", shape=circle];')
        left = emit(node.left)
        right = emit(node.right)
        lines.append(f"  {ident} -> {left};")
        lines.append(f"  {ident} -> {right};")
        return ident

    emit(t)
    lines.append("}")
    return "\n".join(lines)
