"""Weighted infinitesimal bialgebras: the generic interface and the forest coproduct.

An :class:`EpsInstance` bundles a basis-level product and coproduct with a
weight ``lam``; all generic algorithms extend these linearly. The compatibility
law every instance must satisfy is

    Delta(ab) = a . Delta(b) + Delta(a) . b + lam (a (x) b).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Hashable

from . import forest as fo
from .forest import Forest, Tree, ONE
from .freemod import (
    LinComb, ZERO, lsum, lc_tensor, bimodule_act, map_tensor, rat, format_rat,
)


@dataclass(eq=False)
class EpsInstance:
    """One infinitesimal (unitary) bialgebra of weight ``lam``, presented on a basis."""

    name: str
    mul_basis: Callable[[Hashable, Hashable], LinComb]
    delta_basis: Callable[[Hashable], LinComb]
    lam: Fraction = Fraction(0)
    unit: Hashable | None = None
    # D^(n+1) vanishes on b for n = nilpotency_bound(b); None means no antipode
    nilpotency_bound: Callable[[Hashable], int] | None = None
    kind: str = "generic"
    params: dict = field(default_factory=dict)
    # memo for derived basis-level maps (D, S, T); keyed by (map name, basis element)
    memo: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        self.lam = rat(self.lam)

    @property
    def unitary(self) -> bool:
        return self.unit is not None

    def one(self) -> LinComb:
        if self.unit is None:
            raise ValueError(f"instance {self.name} has no unit")
        return LinComb.basis(self.unit)

    def mul(self, a: LinComb, b: LinComb) -> LinComb:
        return lsum(
            (self.mul_basis(p, q), x if y.__class__ is int and y == 1 else x * y)
            for p, x in a.items()
            for q, y in b.items()
        )

    def mul3(self, a, b, c) -> LinComb:
        return self.mul(self.mul(a, b), c)

    def delta(self, a: LinComb) -> LinComb:
        return a.apply(self.delta_basis)

    def mul_tensor(self, t: LinComb) -> LinComb:
        """m applied to a LinComb over pairs."""
        return lsum((self.mul_basis(u, v), c) for (u, v), c in t.items())

    def act(self, left: LinComb, t: LinComb, right: LinComb) -> LinComb:
        return bimodule_act(left, t, right, self.mul_basis)

    def __repr__(self):
        return f"EpsInstance({self.name}, weight={format_rat(self.lam)})"


@dataclass
class Check:
    """Outcome of an identity check: both sides, and truthiness = equality."""

    name: str
    lhs: LinComb
    rhs: LinComb
    context: str = ""

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs

    def __bool__(self):
        return self.ok

    @property
    def difference(self) -> LinComb:
        return self.lhs - self.rhs

    def first_difference(self):
        diff = self.difference
        if not diff:
            return None
        return diff.sorted_items()[0]

    def __str__(self):
        status = "ok" if self.ok else f"FAIL, first differing term {self.first_difference()}"
        ctx = f" [{self.context}]" if self.context else ""
        return f"{self.name}{ctx}: {status}"


# -- the forest coproduct ---------------------------------------------------

@lru_cache(maxsize=1 << 16)
def forest_coproduct(f: Forest) -> LinComb:
    """Sum over proper biideals I_k of f|I_k (x) f|(V minus I_k minus u_k).

    With vertices listed maximum-first (postorder), I_k is a prefix and its
    complement after u_k is the matching suffix.
    """
    return LinComb._raw({pair: 1 for pair in fo.postorder_splits(f)})


@lru_cache(maxsize=1 << 18)
def forest_coproduct_recursive(f: Forest) -> LinComb:
    """The coproduct from its recursive definition (oracle for the production path).

    Delta(1) = 0, Delta(x) = 1 (x) 1, Delta(B_w(G)) = G (x) 1 + (id (x) B_w) Delta(G),
    Delta(T G) = T . Delta(G) + Delta(T) . G.
    """
    trees = f.trees
    if not trees:
        return ZERO
    if len(trees) == 1:
        t = trees[0]
        if t.root.kind == fo.X:
            return LinComb._raw({(ONE, ONE): 1})
        inner = Forest(t.children)
        d = {(inner, ONE): 1}
        for (u, v), c in forest_coproduct_recursive(inner).items():
            key = (u, Forest((Tree(t.root, v.trees),)))
            d[key] = d.get(key, 0) + c
        return LinComb._raw({k: c for k, c in d.items() if c})
    head = Forest(trees[:1])
    rest = Forest(trees[1:])
    return (
        _forest_act_left(head, forest_coproduct_recursive(rest))
        + _forest_act_right(forest_coproduct_recursive(head), rest)
    )


def _forest_act_left(f: Forest, t: LinComb) -> LinComb:
    return LinComb._raw({(fo.concat(f, u), v): c for (u, v), c in t.items()})


def _forest_act_right(t: LinComb, f: Forest) -> LinComb:
    return LinComb._raw({(u, fo.concat(v, f)): c for (u, v), c in t.items()})


def forest_mul(f: Forest, g: Forest) -> LinComb:
    return LinComb._raw({fo.concat(f, g): 1})


def graft_lc(omega, a: LinComb) -> LinComb:
    """Linear grafting operator B^+_omega."""
    deco = fo.odec(omega) if isinstance(omega, str) else omega
    return LinComb._raw({Forest((fo.graft(deco, f),)): c for f, c in a.items()})


def forest_instance(alphabet: fo.Alphabet | None = None) -> EpsInstance:
    return EpsInstance(
        name="forest",
        mul_basis=forest_mul,
        delta_basis=forest_coproduct,
        lam=0,
        unit=ONE,
        nilpotency_bound=fo.vertex_count,
        kind="forest",
        params={"alphabet": alphabet or fo.Alphabet()},
    )


# -- identity checks ----------------------------------------------------------

def compat_sides(inst: EpsInstance, a, b) -> tuple[LinComb, LinComb]:
    """Both sides of Delta(ab) = a . Delta(b) + Delta(a) . b + lam (a (x) b); no unit needed."""
    lhs = inst.delta(inst.mul_basis(a, b))
    acc = []
    for (u, v), c in inst.delta_basis(b).items():
        acc.append((lc_tensor(inst.mul_basis(a, u), LinComb.basis(v)), c))
    for (u, v), c in inst.delta_basis(a).items():
        acc.append((lc_tensor(LinComb.basis(u), inst.mul_basis(v, b)), c))
    rhs = lsum(acc) + lc_tensor(LinComb.basis(a), LinComb.basis(b)).scale(inst.lam)
    return lhs, rhs


def check_compat(inst: EpsInstance, a, b) -> Check:
    lhs, rhs = compat_sides(inst, a, b)
    return Check("compatibility", lhs, rhs, f"{a} , {b}")


def coassoc_sides(delta_basis, a) -> tuple[LinComb, LinComb]:
    """((Delta (x) id) Delta(a), (id (x) Delta) Delta(a)) as LinCombs over triples."""
    acc_l: dict = {}
    acc_r: dict = {}
    for (u, v), c in delta_basis(a).items():
        for (p, q), x in delta_basis(u).items():
            k = (p, q, v)
            acc_l[k] = acc_l.get(k, 0) + c * x
        for (p, q), x in delta_basis(v).items():
            k = (u, p, q)
            acc_r[k] = acc_r.get(k, 0) + c * x
    return (
        LinComb._raw({k: v for k, v in acc_l.items() if v}),
        LinComb._raw({k: v for k, v in acc_r.items() if v}),
    )


def check_coassoc(inst: EpsInstance, a) -> Check:
    lhs, rhs = coassoc_sides(inst.delta_basis, a)
    return Check("coassociativity", lhs, rhs, str(a))


def check_cocycle(omega, a: LinComb) -> Check:
    """Delta(B_w(a)) = a (x) 1 + (id (x) B_w) Delta(a) on the forest coproduct."""
    if not isinstance(a, LinComb):
        a = LinComb.basis(a)
    lhs = graft_lc(omega, a).apply(forest_coproduct)
    rhs = lc_tensor(a, LinComb.basis(ONE)) + map_tensor(
        a.apply(forest_coproduct), None, lambda g: graft_lc(omega, LinComb.basis(g))
    )
    return Check("cocycle", lhs, rhs, f"{omega} on {a!r}")


def check_operator_cocycle(inst: EpsInstance, op, a: LinComb) -> Check:
    """Generic form: Delta P(a) = a (x) 1 + (id (x) P) Delta(a)."""
    lhs = inst.delta(op(a))
    rhs = lc_tensor(a, inst.one()) + map_tensor(inst.delta(a), None, lambda g: op(LinComb.basis(g)))
    return Check("operator cocycle", lhs, rhs, repr(a))


# -- the tensor-square coalgebra ----------------------------------------------

def tensor_square_coproduct(inst_a: EpsInstance, inst_b: EpsInstance, a, b) -> LinComb:
    """Coproduct on A (x) B; basis elements of the result are ((a1, b1), (a2, b2))."""
    if inst_a.lam != inst_b.lam:
        raise ValueError(
            f"weight mismatch: {format_rat(inst_a.lam)} vs {format_rat(inst_b.lam)}"
        )
    if not (inst_a.unitary and inst_b.unitary):
        raise ValueError("both instances must be unitary")
    one_a, one_b = inst_a.unit, inst_b.unit
    d: dict = {}

    def add(k, c):
        d[k] = d.get(k, 0) + c

    for (u, v), c in inst_a.delta_basis(a).items():
        add(((u, one_b), (v, b)), c)
    for (u, v), c in inst_b.delta_basis(b).items():
        add(((a, u), (one_a, v)), c)
    if inst_a.lam:
        add(((a, one_b), (one_a, b)), inst_a.lam)
    return LinComb._raw({k: v for k, v in d.items() if v})


def check_tensor_square_coassoc(inst_a, inst_b, a, b) -> Check:
    lhs, rhs = coassoc_sides(lambda p: tensor_square_coproduct(inst_a, inst_b, *p), (a, b))
    return Check("tensor-square coassociativity", lhs, rhs, f"{a} (x) {b}")


def check_mult_coalgebra_morphism(inst: EpsInstance, a, b) -> Check:
    """Delta(m(a (x) b)) = (m (x) m) Delta_{A(x)A}(a (x) b)."""
    lhs = inst.delta(inst.mul_basis(a, b))
    rhs = lsum(
        (lc_tensor(inst.mul_basis(*p), inst.mul_basis(*q)), c)
        for (p, q), c in tensor_square_coproduct(inst, inst, a, b).items()
    )
    return Check("m is a coalgebra morphism", lhs, rhs, f"{a} , {b}")


def check_derivation(f1: Forest, f2: Forest) -> Check:
    """Delta(F1 F2) = F1 . Delta(F2) + Delta(F1) . F2 on forests."""
    lhs = forest_coproduct(fo.concat(f1, f2))
    rhs = _forest_act_left(f1, forest_coproduct(f2)) + _forest_act_right(forest_coproduct(f1), f2)
    return Check("derivation", lhs, rhs, f"{f1} , {f2}")


def grading_ok(f: Forest) -> bool:
    n = fo.vertex_count(f)
    return all(
        fo.vertex_count(u) + fo.vertex_count(v) == n - 1 for (u, v) in forest_coproduct(f)
    )

