"""Pre-Lie product a |> b = sum b_(1) a b_(2) and its commutator bracket."""
from __future__ import annotations

from fractions import Fraction

from . import forest as fo
from .epscore import Check, EpsInstance
from .forest import Forest
from .freemod import LinComb, ZERO, lsum


def _lc(a):
    return a if isinstance(a, LinComb) else LinComb.basis(a)


def prelie(inst: EpsInstance, a, b) -> LinComb:
    a, b = _lc(a), _lc(b)
    out = []
    for q, y in b.items():
        for (u, v), c in inst.delta_basis(q).items():
            left = inst.mul(LinComb.basis(u), a)
            out.append((inst.mul(left, LinComb.basis(v)), c * y))
    return lsum(out)


def prelie_forest(f1: Forest, f2: Forest) -> LinComb:
    """Biideal form: sum_k F2|I_k  F1  F2|(complement of I_k and u_k)."""
    order = fo.vertex_order(f2)
    n = len(order)
    terms: dict = {}
    for k in range(n):
        left = fo.restrict(f2, order[:k])
        right = fo.restrict(f2, order[k + 1:])
        g = fo.concat(fo.concat(left, f1), right)
        terms[g] = terms.get(g, 0) + Fraction(1)
    return LinComb(terms)


def bracket(inst: EpsInstance, a, b) -> LinComb:
    return prelie(inst, a, b) - prelie(inst, b, a)


def associator(inst: EpsInstance, a, b, c) -> LinComb:
    """(a |> b) |> c - a |> (b |> c)"""
    return prelie(inst, prelie(inst, a, b), c) - prelie(inst, a, prelie(inst, b, c))


def check_prelie_identity(inst: EpsInstance, a, b, c) -> Check:
    return Check("pre-Lie", associator(inst, a, b, c), associator(inst, b, a, c), f"{a}, {b}, {c}")


def check_jacobi(inst: EpsInstance, a, b, c) -> Check:
    a, b, c = _lc(a), _lc(b), _lc(c)
    total = (
        bracket(inst, bracket(inst, a, b), c)
        + bracket(inst, bracket(inst, b, c), a)
        + bracket(inst, bracket(inst, c, a), b)
    )
    return Check("Jacobi", total, ZERO, f"{a!r}, {b!r}, {c!r}")


def forest_prelie_matches(f1: Forest, f2: Forest, inst: EpsInstance) -> Check:
    return Check("biideal pre-Lie", prelie_forest(f1, f2), prelie(inst, f1, f2), f"{f1}, {f2}")

