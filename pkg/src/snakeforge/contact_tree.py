"""Contact trees of finite families of polynomials vanishing at 0.

For roots ``a_1 < ... < a_{m+1}`` (ordered by ``precedes_right``) the
contact tree records the pairwise contact orders ``v(a_j - a_i)``. It is
determined by the gap valuations ``e_i = v(a_{i+1} - a_i)``: the meet of
leaves i and j has valuation ``min(e_i, ..., e_{j-1})``.

The tree is always end-rooted: a root vertex of valuation 0 with a single
child. Vertices compare by identity, so they can serve as handles.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence, Union

from .errors import (
    DuplicateRoot,
    IndexOutOfRange,
    MalformedTree,
    NonBinaryTree,
    NonzeroConstantTerm,
    NotBinary,
    NotEndRooted,
    UnsortedRoots,
)
from .exact_arith import UniPoly, format_unipoly, parse_unipoly, precedes_right, valuation_x
from . import separating_tree as st


@dataclass(frozen=True, eq=False)
class CLeaf:
    index: int
    poly: UniPoly | None = None


@dataclass(frozen=True, eq=False)
class Vertex:
    valuation: int
    children: tuple = field(default=())


CNode = Union[CLeaf, Vertex]


class ContactTree:
    """Rooted plane tree with valuations on vertices and ordered leaves."""

    def __init__(self, root: Vertex):
        if not isinstance(root, Vertex) or len(root.children) != 1:
            raise NotEndRooted("the root must have exactly one child")
        self.root = root
        paths: list[tuple[Vertex, ...]] = []

        def walk(node: CNode, path: tuple):
            if isinstance(node, CLeaf):
                paths.append(path)
                return
            if not node.children:
                raise MalformedTree("internal vertex without children")
            for child in node.children:
                if isinstance(child, Vertex) and child.valuation <= node.valuation:
                    raise MalformedTree(
                        f"valuations must increase away from the root ({node.valuation} -> {child.valuation})"
                    )
                walk(child, path + (child,) if isinstance(child, Vertex) else path)

        walk(root, (root,))
        self._paths = paths
        self._leaves = self._collect_leaves(root)

    @staticmethod
    def _collect_leaves(node: CNode) -> list[CLeaf]:
        if isinstance(node, CLeaf):
            return [node]
        out = []
        for child in node.children:
            out.extend(ContactTree._collect_leaves(child))
        return out

    @property
    def leaves(self) -> list[CLeaf]:
        return list(self._leaves)

    @property
    def leaf_count(self) -> int:
        return len(self._leaves)

    @property
    def top(self) -> CNode:
        return self.root.children[0]

    def polys(self) -> list[UniPoly]:
        return [leaf.poly for leaf in self._leaves]

    def path(self, i: int) -> tuple[Vertex, ...]:
        """Vertices from the root down to (excluding) leaf i."""
        self._check_index(i)
        return self._paths[i - 1]

    def internal_vertices(self) -> list[Vertex]:
        out = []

        def walk(node):
            if isinstance(node, Vertex):
                if node is not self.root:
                    out.append(node)
                for child in node.children:
                    walk(child)

        walk(self.root)
        return out

    def is_binary(self) -> bool:
        return all(len(v.children) == 2 for v in self.internal_vertices())

    def gaps(self) -> list[int]:
        """e_1, ..., e_m: valuations of the meets of consecutive leaves."""
        return [self.meet(i, i + 1).valuation for i in range(1, self.leaf_count)]

    def _check_index(self, i: int):
        if not 1 <= i <= self.leaf_count:
            raise IndexOutOfRange(f"leaf index {i} outside 1..{self.leaf_count}")

    def meet(self, i: int, j: int) -> Vertex:
        """Deepest common ancestor of leaves i and j (i != j)."""
        self._check_index(i)
        self._check_index(j)
        if i == j:
            raise IndexOutOfRange("meet needs two distinct leaves")
        common = None
        for u, v in zip(self._paths[i - 1], self._paths[j - 1]):
            if u is not v:
                break
            common = u
        return common

    def range_meet_valuation(self, i: int, j: int) -> int:
        """Valuation of meet(i, j), checked against the minimum of the gaps in between."""
        if not i < j:
            raise IndexOutOfRange(f"need i < j, got ({i}, {j})")
        direct = self.meet(i, j).valuation
        by_gaps = min(self.meet(k, k + 1).valuation for k in range(i, j))
        if direct != by_gaps:
            raise AssertionError(f"range meet mismatch on [{i}, {j}]: {direct} != {by_gaps}")
        return direct

    def is_ancestor(self, u: Vertex, v: Vertex) -> bool:
        """u lies on the geodesic from the root to v (u == v counts)."""
        if u is v:
            return True

        def contains(node) -> bool:
            if node is v:
                return True
            return isinstance(node, Vertex) and any(contains(c) for c in node.children)

        return isinstance(u, Vertex) and contains(u)

    @cached_property
    def gap_index(self) -> dict:
        """Map vertex -> smallest k with meet(k, k+1) == vertex."""
        out = {}
        for k in range(1, self.leaf_count):
            out.setdefault(self.meet(k, k + 1), k)
        return out

    def require_binary(self):
        if not self.is_binary():
            raise NonBinaryTree("this operation needs a complete binary contact tree")


def contact_tree_of(roots: Sequence[UniPoly]) -> ContactTree:
    """Contact tree of roots sorted by ``precedes_right`` and vanishing at 0."""
    roots = list(roots)
    if not roots:
        raise MalformedTree("need at least one polynomial")
    for a in roots:
        if a.coeff(0):
            raise NonzeroConstantTerm(f"{a} does not vanish at 0")
    gaps = []
    for a, b in zip(roots, roots[1:]):
        if a == b:
            raise DuplicateRoot(f"{a} appears twice")
        if not precedes_right(a, b):
            raise UnsortedRoots(f"{a} does not precede {b} to the right")
        gaps.append(valuation_x(b - a))

    def build(lo: int, hi: int) -> CNode:
        # leaves lo..hi (0-based, inclusive); gaps lo..hi-1
        if lo == hi:
            return CLeaf(lo + 1, roots[lo])
        low = min(gaps[lo:hi])
        children, start = [], lo
        for k in range(lo, hi):
            if gaps[k] == low:
                children.append(build(start, k))
                start = k + 1
        children.append(build(start, hi))
        return Vertex(low, tuple(children))

    return ContactTree(Vertex(0, (build(0, len(roots) - 1),)))


# -- shapes ----------------------------------------------------------------

def shape_of(tree) -> tuple | None:
    """Plane shape as nested tuples: a leaf is ``None``, a vertex the tuple of its children.

    Accepts a ``ContactTree`` (shape below the root), a separating tree, or
    an already-nested tuple.
    """
    if isinstance(tree, ContactTree):
        return shape_of(tree.top)
    if tree is None or isinstance(tree, (CLeaf, st.Leaf)):
        return None
    if isinstance(tree, Vertex):
        return tuple(shape_of(c) for c in tree.children)
    if isinstance(tree, st.Node):
        return (shape_of(tree.left), shape_of(tree.right))
    if isinstance(tree, tuple):
        return tuple(shape_of(c) for c in tree)
    raise MalformedTree(f"cannot read a tree shape from {tree!r}")


def tree_isomorphic(a, b) -> bool:
    """Same plane shape below the root; valuations are ignored."""
    if isinstance(a, ContactTree) and isinstance(b, ContactTree):
        if len(a.root.children) != len(b.root.children):
            return False
    return shape_of(a) == shape_of(b)


def realize_tree(shape, valuations: Sequence[int] | None = None) -> list[UniPoly]:
    """Polynomials whose contact tree has the given complete binary plane shape.

    Each vertex contributes the monomial ``x^v`` to the second child's
    branch and nothing to the first child's, so ``a_i`` is the sum of the
    monomials met on the way down to leaf i. By default ``v`` is the depth
    of the vertex (the root's child has depth 1). ``valuations`` overrides
    this with e_1, ..., e_m, the valuation of each internal vertex listed in
    left-to-right (symmetric) order.
    """
    if isinstance(shape, ContactTree) and len(shape.root.children) != 1:
        raise NotEndRooted("the root must have exactly one child")
    s = shape_of(shape)

    def check(node):
        if node is None:
            return
        if len(node) != 2:
            raise NotBinary(f"vertex with {len(node)} children")
        check(node[0])
        check(node[1])

    check(s)
    internal_count = _count_internal(s)
    if valuations is not None and len(valuations) != internal_count:
        raise ValueError(f"expected {internal_count} valuations, got {len(valuations)}")

    polys: list[UniPoly] = []

    def walk(node, depth: int, acc: UniPoly, parent_val: int):
        if node is None:
            polys.append(acc)
            return
        left, right = node
        if valuations is None:
            val = depth
        else:
            # symmetric-order index: leaves already placed + internal vertices on the left
            val = valuations[len(polys) + _count_internal(left)]
            if val <= parent_val:
                raise ValueError("valuations must strictly increase away from the root")
        walk(left, depth + 1, acc, val)
        walk(right, depth + 1, acc + UniPoly.monomial(1, val), val)

    walk(s, 1, UniPoly(), 0)
    return polys


def _count_internal(s) -> int:
    if s is None:
        return 0
    return 1 + sum(_count_internal(c) for c in s)


# -- serialization ---------------------------------------------------------

def contact_to_dict(t: ContactTree) -> dict:
    def conv(node):
        if isinstance(node, CLeaf):
            d = {"leaf": node.index}
            if node.poly is not None:
                d["poly"] = format_unipoly(node.poly)
            return d
        return {"valuation": node.valuation, "children": [conv(c) for c in node.children]}

    return conv(t.root)


def contact_from_dict(d: dict) -> ContactTree:
    def conv(node):
        if not isinstance(node, dict):
            raise MalformedTree(f"expected an object, got {node!r}")
        if "leaf" in node:
            poly = parse_unipoly(node["poly"], "x") if node.get("poly") is not None else None
            return CLeaf(int(node["leaf"]), poly)
        try:
            return Vertex(int(node["valuation"]), tuple(conv(c) for c in node["children"]))
        except KeyError as exc:
            raise MalformedTree(f"bad contact-tree node {node!r}") from exc

    root = conv(d)
    if not isinstance(root, Vertex):
        raise MalformedTree("the root of a contact tree is a vertex")
    return ContactTree(root)


def contact_to_json(t: ContactTree, **kwargs) -> str:
    return json.dumps(contact_to_dict(t), **kwargs)


def contact_from_json(text: str) -> ContactTree:
    try:
        return contact_from_dict(json.loads(text))
    except json.JSONDecodeError as exc:
        raise MalformedTree(f"invalid JSON: {exc}") from exc


def contact_to_dot(t: ContactTree, name: str = "contact_tree") -> str:
    """Left-to-right drawing: root on the left, leaves on the right in order."""
    lines = [f"digraph {name} {{", "  rankdir=LR;", "  ordering=out;"]
    ids: dict[int, str] = {}

    def ident(node) -> str:
        return ids.setdefault(id(node), f"n{len(ids)}")

    def emit(node):
        me = ident(node)
        if isinstance(node, CLeaf):
            label = f"a{node.index}" + (f" = {format_unipoly(node.poly)}" if node.poly is not None else "")
            lines.append(f'  {me} [label="{label}", shape=plaintext];')
            return
        if node is t.root:
            lines.append(f'  {me} [label="root", shape=box];')
        else:
            lines.append(f'  {me} [label="x^{node.valuation}", shape=box, style=rounded];')
        # children listed so that a_1 ends up at the bottom, as in the vertical order of the roots
        for child in reversed(node.children):
            emit(child)
            lines.append(f"  {me} -> {ident(child)};")

    emit(t.root)
    lines.append("}")
    return "\n".join(lines)
