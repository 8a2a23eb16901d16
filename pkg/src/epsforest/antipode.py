"""Antipodes through the derivation D = m Delta.

When D is locally nilpotent (and coefficients are rational) the antipode is

    S = -sum_n (1/n!) (-D)^n        with inverse        T = -sum_n (1/n!) D^n,

where D^n is the n-fold composition. Each instance declares a per-basis bound
N with D^(N+1) = 0; the bound is verified, not trusted.

Convolution powers follow the (n+1)-factor convention: ``D^{*n}(c)`` is
``D(c_(1)) ... D(c_(n+1))`` over the n-times iterated coproduct, so it is one
factor longer than the usual n-th convolution power.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import factorial

from .epscore import Check, EpsInstance
from .freemod import LinComb, LinOp, ZERO, identity, lsum, op_circ


class AntipodeUnavailable(Exception):
    """The instance has no locally nilpotent D, so the series antipode is refused."""


class NilpotencyViolation(AssertionError):
    """A declared nilpotency bound turned out to be wrong."""


def D_basis(inst: EpsInstance, b) -> LinComb:
    key = ("D", b)
    out = inst.memo.get(key)
    if out is None:
        out = inst.memo[key] = inst.mul_tensor(inst.delta_basis(b))
    return out


def D(inst: EpsInstance, a: LinComb) -> LinComb:
    """D = m o Delta, extended linearly."""
    if not isinstance(a, LinComb):
        a = LinComb.basis(a)
    return lsum((D_basis(inst, b), c) for b, c in a.items())


def require_nilpotent(inst: EpsInstance):
    if inst.nilpotency_bound is None:
        raise AntipodeUnavailable(
            f"instance {inst.name} (weight {inst.lam}) has no locally nilpotent D = m Delta; "
            "the exponential antipode series does not terminate"
        )


def _d_power_basis(inst: EpsInstance, b, k: int) -> LinComb:
    """D^k b, memoized per basis element so shared subterms are expanded once."""
    if k == 0:
        return LinComb.basis(b)
    key = ("D", b, k)
    out = inst.memo.get(key)
    if out is None:
        if k == 1:
            out = D_basis(inst, b)
        else:
            out = lsum((_d_power_basis(inst, u, k - 1), c) for u, c in D_basis(inst, b).items())
        inst.memo[key] = out
    return out


def d_powers(inst: EpsInstance, b) -> list[LinComb]:
    """[D^0 b, D^1 b, ..., D^N b] with N the declared bound; D^(N+1) b is checked to vanish."""
    require_nilpotent(inst)
    bound = inst.nilpotency_bound(b)
    powers = [_d_power_basis(inst, b, k) for k in range(bound + 1)]
    if D(inst, powers[-1]):
        raise NilpotencyViolation(f"D^{bound + 1} does not vanish on {b}")
    return powers


def _series_basis(inst: EpsInstance, b, sign: int) -> LinComb:
    key = ("S" if sign < 0 else "T", b)
    out = inst.memo.get(key)
    if out is None:
        powers = d_powers(inst, b)
        top = factorial(len(powers) - 1)
        # accumulate top! * (series) with integer weights, divide once per term
        scaled = lsum((p, -(sign ** n) * (top // factorial(n))) for n, p in enumerate(powers))
        out = LinComb._raw(
            {u: Fraction(c, top) if c.__class__ is int else c / top for u, c in scaled.items()}
        )
        inst.memo[key] = out
    return out


def _series(inst: EpsInstance, a, sign: int) -> LinComb:
    if not isinstance(a, LinComb):
        a = LinComb.basis(a)
    require_nilpotent(inst)
    return lsum((_series_basis(inst, b, sign), c) for b, c in a.items())


def antipode(inst: EpsInstance, a) -> LinComb:
    """S(a) = -sum_n (1/n!) (-D)^n (a)."""
    return _series(inst, a, -1)


def antipode_inverse(inst: EpsInstance, a) -> LinComb:
    """T(a) = -sum_n (1/n!) D^n (a), the compositional inverse of S."""
    return _series(inst, a, 1)


def antipode_op(inst: EpsInstance) -> LinOp:
    return LinOp(lambda b: antipode(inst, b), "S")


def check_antipode_axioms(inst: EpsInstance, u) -> tuple[Check, Check]:
    """S (.) id = 0 = id (.) S at u, for the circular convolution (.)."""
    S = antipode_op(inst)
    ident = identity()
    left = op_circ(S, ident, inst)(u)
    right = op_circ(ident, S, inst)(u)
    return (
        Check("S(u1) u2 + S(u) + u", left, ZERO, str(u)),
        Check("u1 S(u2) + u + S(u)", right, ZERO, str(u)),
    )


def check_bijective(inst: EpsInstance, a) -> tuple[Check, Check]:
    if not isinstance(a, LinComb):
        a = LinComb.basis(a)
    st = antipode(inst, antipode_inverse(inst, a))
    ts = antipode_inverse(inst, antipode(inst, a))
    return Check("S(T(a))", st, a, repr(a)), Check("T(S(a))", ts, a, repr(a))


def conv_power(inst: EpsInstance, f: LinOp, n: int) -> LinOp:
    """f^{*n} = m (f^{*(n-1)} (x) f) Delta with f^{*0} = f  (n+1 factors of f)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    op = f
    for _ in range(n):
        prev = op

        def rule(b, prev=prev):
            return lsum(
                (inst.mul(prev.rule(u), f.rule(v)), c)
                for (u, v), c in inst.delta_basis(b).items()
            )

        op = LinOp(rule, f"{f.name}^*{_ + 1}")
    return op


def check_conv_nilpotency(inst: EpsInstance, a, n: int) -> bool:
    """D^{*(n+1)}(a) = 0 and, with n the declared bound, D^{o(n+1)}(a) = 0."""
    Dop = LinOp(lambda b: D(inst, b), "D")
    conv_zero = not conv_power(inst, Dop, n + 1)(a)
    comp = LinComb.basis(a) if not isinstance(a, LinComb) else a
    for _ in range(n + 1):
        comp = D(inst, comp)
    return conv_zero and not comp


def strict_compositions(total: int, parts: int):
    """Ordered tuples of ``parts`` positive integers summing to ``total``."""
    for cuts in combinations(range(1, total), parts - 1):
        bounds = (0,) + cuts + (total,)
        yield tuple(bounds[i + 1] - bounds[i] for i in range(parts))


def divided_diff_antipode_closed(n: int) -> LinComb:
    """S(x_n) = sum_k (-1)^k sum over compositions (n_1..n_k) of n+1 of x_{n_1-1}...x_{n_k-1}.

    x_0 is the empty word.
    """
    from .instances import Word

    if n < 1:
        raise ValueError("n must be positive")
    terms: dict = {}
    for k in range(1, n + 2):
        for comp in strict_compositions(n + 1, k):
            w = Word(tuple(p - 1 for p in comp if p > 1))
            terms[w] = terms.get(w, 0) + (-1) ** k
    return LinComb({w: c for w, c in terms.items()})
