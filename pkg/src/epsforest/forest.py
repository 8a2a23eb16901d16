"""Decorated planar rooted forests.

A forest is an ordered tuple of planar trees. Internal vertices carry labels
from the operator alphabet ``Omega``; leaves may carry labels from either
``X`` or ``Omega``. Vertices are addressed by paths ``(tree, child, child, ...)``.

The total order "higher or more on the left" on the vertices of a forest
coincides with left-to-right postorder read from the maximum down:
the first vertex of the postorder is the maximum, the root of the
right-most tree is the minimum.
"""
from __future__ import annotations

from collections import namedtuple
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

X = "X"
OMEGA = "Omega"

LESS, EQUAL, GREATER = "less", "equal", "greater"


class Decoration(namedtuple("Decoration", "kind label")):
    __slots__ = ()

    def __str__(self):
        return self.label


def xdec(label: str) -> Decoration:
    return Decoration(X, label)


def odec(label: str) -> Decoration:
    return Decoration(OMEGA, label)


@dataclass(frozen=True)
class Alphabet:
    """Declared leaf alphabet ``X`` and operator alphabet ``Omega`` (disjoint)."""

    X: tuple[str, ...] = ("x", "y", "z")
    Omega: tuple[str, ...] = ("a", "b", "w")

    def __post_init__(self):
        object.__setattr__(self, "X", tuple(self.X))
        object.__setattr__(self, "Omega", tuple(self.Omega))
        both = set(self.X) & set(self.Omega)
        if both:
            raise ValueError(f"labels declared in both X and Omega: {sorted(both)}")
        if len(set(self.X)) != len(self.X) or len(set(self.Omega)) != len(self.Omega):
            raise ValueError("duplicate label in alphabet")

    def decoration(self, label: str) -> Decoration:
        if label in self.Omega:
            return odec(label)
        if label in self.X:
            return xdec(label)
        raise KeyError(label)

    def __contains__(self, label):
        return label in self.X or label in self.Omega


class Tree(namedtuple("Tree", "root children")):
    """Planar tree; ``children`` is a left-to-right tuple of trees."""

    __slots__ = ()

    def __new__(cls, root: Decoration, children: Sequence["Tree"] = ()):
        children = tuple(children)
        if children and root.kind != OMEGA:
            raise ValueError(f"internal vertex {root.label!r} must carry an Omega label")
        return super().__new__(cls, root, children)

    def __str__(self):
        if not self.children:
            return self.root.label
        return self.root.label + "(" + " ".join(map(str, self.children)) + ")"

    def __repr__(self):
        return f"Tree<{self}>"

    @property
    def size(self) -> int:
        return 1 + sum(c.size for c in self.children)


class Forest(namedtuple("Forest", "trees")):
    """Ordered concatenation of trees; ``Forest(())`` is the unit forest 1."""

    __slots__ = ()

    def __new__(cls, trees: Iterable[Tree] = ()):
        return super().__new__(cls, tuple(trees))

    def __str__(self):
        if not self.trees:
            return "1"
        return " ".join(map(str, self.trees))

    def __repr__(self):
        return f"Forest<{self}>"

    def sort_key(self):
        return str(self)

    def __mul__(self, other):
        if isinstance(other, Forest):
            return concat(self, other)
        return NotImplemented


ONE = Forest(())


def leaf(deco: Decoration) -> Forest:
    return Forest((Tree(deco),))


def as_forest(t) -> Forest:
    if isinstance(t, Forest):
        return t
    if isinstance(t, Tree):
        return Forest((t,))
    raise TypeError(f"not a tree or forest: {t!r}")


def graft(omega, f: Forest = ONE, alphabet: Alphabet | None = None) -> Tree:
    """B^+_omega: a new root decorated by ``omega`` carrying the trees of ``f``."""
    if isinstance(omega, str):
        if alphabet is not None and omega not in alphabet.Omega:
            raise ValueError(f"{omega!r} is not a declared Omega label")
        omega = odec(omega)
    if omega.kind != OMEGA:
        raise ValueError(f"cannot graft with leaf label {omega.label!r}")
    return Tree(omega, as_forest(f).trees)


def concat(f1: Forest, f2: Forest) -> Forest:
    return Forest(f1.trees + f2.trees)


def breadth(f: Forest) -> int:
    return len(f.trees)


def vertex_count(f: Forest) -> int:
    return sum(t.size for t in f.trees)


def _tree_depth(t: Tree) -> int:
    if t.root.kind == X:
        return 0
    return 1 + depth(Forest(t.children))


def depth(f: Forest) -> int:
    """Least n with f in F_n: X-leaves have depth 0, B^+_w(G) has depth(G) + 1."""
    return max((_tree_depth(t) for t in f.trees), default=0)


# -- vertices and the total order ------------------------------------------

def vertices(f: Forest) -> list[tuple[int, ...]]:
    """All vertex addresses, in preorder."""
    out = []

    def walk(trees, prefix):
        for i, t in enumerate(trees):
            addr = prefix + (i,)
            out.append(addr)
            walk(t.children, addr)

    walk(f.trees, ())
    return out


def vertex_at(f: Forest, addr: Sequence[int]) -> Tree:
    if not addr:
        raise KeyError(addr)
    trees = f.trees
    node = None
    for i in addr:
        if not 0 <= i < len(trees):
            raise KeyError(tuple(addr))
        node = trees[i]
        trees = node.children
    return node


def label_at(f: Forest, addr) -> str:
    return vertex_at(f, addr).root.label


def vertex_order(f: Forest) -> list[tuple[int, ...]]:
    """Vertices in decreasing order: maximum first, root of last tree last."""
    out = []

    def walk(trees, prefix):
        for i, t in enumerate(trees):
            addr = prefix + (i,)
            walk(t.children, addr)
            out.append(addr)

    walk(f.trees, ())
    return out


def compare_hl(f: Forest, u, v) -> str:
    """Compare two vertices for "higher or more on the left".

    Follows the recursive definition directly: ``u < v`` when ``v`` lies on a
    path upward from ``u``, or when they are incomparable that way and ``v``
    sits in an earlier tree (recursing into a shared tree with its root removed).
    """
    u, v = tuple(u), tuple(v)
    vertex_at(f, u)
    vertex_at(f, v)
    return _cmp(f.trees, u, v)


def _cmp(trees, u, v):
    if u == v:
        return EQUAL
    if _reaches(trees, u, v):
        return LESS
    if _reaches(trees, v, u):
        return GREATER
    if u[0] != v[0]:
        return LESS if v[0] < u[0] else GREATER
    return _cmp(trees[u[0]].children, u[1:], v[1:])


def _reaches(trees, u, v):
    """Is there a directed root-to-leaf path from u to v? (walks the edges)"""
    node = vertex_at(Forest(trees), u)
    frontier = [(node, u)]
    while frontier:
        n, a = frontier.pop()
        for j, c in enumerate(n.children):
            b = a + (j,)
            if b == v:
                return True
            frontier.append((c, b))
    return False


def proper_biideals(f: Forest) -> list[frozenset]:
    order = vertex_order(f)
    return [frozenset(order[:k]) for k in range(len(order))]


def is_biideal(f: Forest, subset) -> bool:
    """Upward closure under the total order, checked pairwise (brute force)."""
    subset = set(subset)
    verts = vertices(f)
    for u in subset:
        for v in verts:
            if v not in subset and compare_hl(f, u, v) == LESS:
                return False
    return True


def restrict(f: Forest, keep) -> Forest:
    """Induced subforest on ``keep``.

    A kept vertex hangs under its nearest kept ancestor (or becomes a root);
    planar order is inherited. ``restrict(f, {}) == 1``.
    """
    keep = set(map(tuple, keep))
    unknown = keep - set(vertices(f))
    if unknown:
        raise KeyError(f"unknown vertices {sorted(unknown)}")
    return Forest(_restrict(f.trees, (), keep))


def _restrict(trees, prefix, keep):
    out = []
    for i, t in enumerate(trees):
        addr = prefix + (i,)
        kids = _restrict(t.children, addr, keep)
        if addr in keep:
            out.append(Tree(t.root, kids))
        else:
            out.extend(kids)
    return out


# -- flat postorder machinery used by the production coproduct -------------

def postorder_flat(f: Forest) -> list[tuple[Decoration, int]]:
    """``(decoration, number of children)`` per vertex in postorder."""
    out = []

    def walk(trees):
        for t in trees:
            walk(t.children)
            out.append((t.root, len(t.children)))

    walk(f.trees)
    return out


def postorder_splits(f: Forest) -> list[tuple[Forest, Forest]]:
    """For each postorder position k, the restrictions to positions ``< k`` and ``> k``.

    The prefix restriction is the stack of finished trees just before vertex k.
    The suffix restriction is obtained from the previous one by deleting its
    first postorder vertex, which is the leftmost leaf.
    """
    new = tuple.__new__

    def drop_first(trees):
        t = trees[0]
        if not t.children:
            return trees[1:]
        return (new(Tree, (t.root, drop_first(t.children))),) + trees[1:]

    out = []
    stack: list[Tree] = []
    right = f.trees
    for deco, nc in postorder_flat(f):
        left = new(Forest, (tuple(stack),))
        if nc:
            kids = tuple(stack[-nc:])
            del stack[-nc:]
        else:
            kids = ()
        stack.append(new(Tree, (deco, kids)))
        right = drop_first(right)
        out.append((left, new(Forest, (right,))))
    return out


# -- enumeration -----------------------------------------------------------

def enumerate_forests(n: int, alphabet: Alphabet) -> Iterator[Forest]:
    """Every decorated forest with exactly ``n`` vertices."""
    for trees in _forests(n, alphabet):
        yield Forest(trees)


def forests_up_to(n: int, alphabet: Alphabet) -> Iterator[Forest]:
    for k in range(n + 1):
        yield from enumerate_forests(k, alphabet)


def _forests(n, alphabet):
    if n == 0:
        yield ()
        return
    for k in range(1, n + 1):
        for t in _trees(k, alphabet):
            for rest in _forests(n - k, alphabet):
                yield (t,) + rest


def _trees(n, alphabet):
    if n == 1:
        for lab in alphabet.X:
            yield Tree(xdec(lab))
        for lab in alphabet.Omega:
            yield Tree(odec(lab))
        return
    for kids in _forests(n - 1, alphabet):
        for lab in alphabet.Omega:
            yield Tree(odec(lab), kids)
