"""Operated algebras and the unique morphism out of decorated forests.

A target carries one linear operator per Omega label and an image for each X
label. ``evaluate`` is the structural recursion

    1 -> 1,  x -> f(x),  B_w(G) -> P_w(evaluate(G)),  F1 F2 -> evaluate(F1) evaluate(F2),

and the checks below test that it really is a morphism of operated algebras,
of coalgebras and of antipodes on concrete samples.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from . import forest as fo
from .antipode import antipode
from .epscore import Check, EpsInstance, check_operator_cocycle, forest_instance, graft_lc
from .forest import Forest, ONE
from .freemod import LinComb, LinOp, lsum, map_tensor


class BindingError(KeyError):
    """A forest uses a label the target has no operator or generator for."""


@dataclass(eq=False)
class OperatedTarget:
    name: str
    carrier: EpsInstance
    operators: dict[str, Callable[[LinComb], LinComb]]
    generators: dict[str, LinComb]
    _cache: dict = field(default_factory=dict, repr=False)

    def operator(self, label: str):
        try:
            return self.operators[label]
        except KeyError:
            raise BindingError(f"target {self.name} has no operator for {label!r}") from None

    def generator(self, label: str) -> LinComb:
        try:
            return self.generators[label]
        except KeyError:
            raise BindingError(f"target {self.name} has no image for generator {label!r}") from None


def evaluate(f: Forest, target: OperatedTarget) -> LinComb:
    cache = target._cache
    hit = cache.get(f)
    if hit is not None:
        return hit
    trees = f.trees
    if not trees:
        out = target.carrier.one()
    elif len(trees) == 1:
        t = trees[0]
        if t.root.kind == fo.X:
            out = target.generator(t.root.label)
        else:
            out = target.operator(t.root.label)(evaluate(Forest(t.children), target))
    else:
        out = target.carrier.mul(evaluate(Forest(trees[:1]), target), evaluate(Forest(trees[1:]), target))
    cache[f] = out
    return out


def evaluate_lc(a: LinComb, target: OperatedTarget) -> LinComb:
    return lsum((evaluate(f, target), c) for f, c in a.items())


# -- shipped targets ----------------------------------------------------------

def _grafter(label):
    return LinOp(lambda f: graft_lc(label, LinComb.basis(f)), f"B_{label}")


def identity_target(alphabet: fo.Alphabet | None = None) -> OperatedTarget:
    """Forests with grafting and x -> .x; evaluate is the identity."""
    return relabel_target({}, alphabet, name="identity")


def relabel_target(mapping: dict[str, str], alphabet: fo.Alphabet | None = None, name=None) -> OperatedTarget:
    """Forests again, with each label sent through ``mapping`` (missing labels fixed).

    X labels must go to X labels and Omega labels to Omega labels so that the
    images are still cocycles and primitive-like generators.
    """
    alphabet = alphabet or fo.Alphabet()
    for src, dst in mapping.items():
        a, b = alphabet.decoration(src), alphabet.decoration(dst)
        if a.kind != b.kind:
            raise ValueError(f"relabeling {src}->{dst} mixes X and Omega labels")
    gens = {x: LinComb.basis(fo.leaf(fo.xdec(mapping.get(x, x)))) for x in alphabet.X}
    ops = {w: _grafter(mapping.get(w, w)) for w in alphabet.Omega}
    label = name or "relabel:" + ",".join(f"{k}={v}" for k, v in sorted(mapping.items()))
    return OperatedTarget(label, forest_instance(alphabet), ops, gens)


def collapse_target(alphabet: fo.Alphabet | None = None) -> OperatedTarget:
    """k[x] of weight 0 with every P_w = (right multiplication by x) and f(x) = x.

    Since Delta(x) = 1 (x) 1, right multiplication by x satisfies the cocycle
    law, and every forest collapses to x^(number of vertices).
    """
    from .instances import Monomial, poly_instance

    alphabet = alphabet or fo.Alphabet()
    carrier = poly_instance(0)
    times_x = LinOp(lambda m: LinComb.basis(Monomial(m.n + 1)), "*x")
    gens = {x: LinComb.basis(Monomial(1)) for x in alphabet.X}
    return OperatedTarget("collapse", carrier, {w: times_x for w in alphabet.Omega}, gens)


def zero_target(alphabet: fo.Alphabet | None = None) -> OperatedTarget:
    """Delta = 0 on k[x], every P_w = 0 and f(x) = 1.

    An operated-algebra morphism (F -> 1 without Omega vertices, else 0) but not
    a coalgebra morphism, so only the first two properties hold.
    """
    from .instances import Monomial, poly_instance, trivial_instance

    alphabet = alphabet or fo.Alphabet()
    carrier = trivial_instance(poly_instance(0))
    zero = LinOp(lambda m: LinComb(), "0")
    gens = {x: LinComb.basis(Monomial(0)) for x in alphabet.X}
    return OperatedTarget("zero", carrier, {w: zero for w in alphabet.Omega}, gens)


def broken_target(alphabet: fo.Alphabet | None = None) -> OperatedTarget:
    """Forests with P_w = left multiplication by .w, which is not a cocycle."""
    alphabet = alphabet or fo.Alphabet()

    def left_mul(label):
        bullet = fo.leaf(fo.odec(label))
        return LinOp(lambda f: LinComb.basis(fo.concat(bullet, f)), f".{label}*")

    gens = {x: LinComb.basis(fo.leaf(fo.xdec(x))) for x in alphabet.X}
    return OperatedTarget("broken", forest_instance(alphabet), {w: left_mul(w) for w in alphabet.Omega}, gens)


def target_from_name(spec: str, alphabet: fo.Alphabet | None = None) -> OperatedTarget:
    """CLI presets: identity, relabel:x=y,a=b, collapse, zero, broken."""
    name, _, arg = spec.partition(":")
    if name == "identity":
        return identity_target(alphabet)
    if name == "relabel":
        mapping = {}
        for pair in filter(None, arg.split(",")):
            src, eq, dst = pair.partition("=")
            if not eq or not src or not dst:
                raise ValueError(f"bad relabeling {pair!r}, expected src=dst")
            mapping[src.strip()] = dst.strip()
        return relabel_target(mapping, alphabet)
    if name == "collapse":
        return collapse_target(alphabet)
    if name == "zero":
        return zero_target(alphabet)
    if name == "broken":
        return broken_target(alphabet)
    raise ValueError(f"unknown target {spec!r}")


# -- morphism checks -------------------------------------------------------------

@dataclass
class MorphismReport:
    target: str
    checked: int = 0
    failures: list[tuple[str, Forest, Check]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self):
        return self.ok

    @property
    def first_failure(self):
        return self.failures[0] if self.failures else None

    def __str__(self):
        if self.ok:
            return f"{self.target}: {self.checked} checks passed"
        prop, f, chk = self.failures[0]
        return f"{self.target}: {len(self.failures)} failures; first: {prop} at {f}: {chk}"


def _record(report: MorphismReport, prop: str, f: Forest, chk: Check):
    report.checked += 1
    if not chk.ok:
        report.failures.append((prop, f, chk))


def check_operated_morphism(
    target: OperatedTarget,
    sample: list[Forest],
    phi: Callable[[Forest], LinComb] | None = None,
    coalgebra: bool = True,
) -> MorphismReport:
    """Generators, multiplicativity, operator intertwining and (if ``coalgebra``)
    Delta phi(F) = (phi (x) phi) Delta(F) for each F in ``sample``.

    ``phi`` defaults to ``evaluate`` into the target; passing another map tests
    whether it coincides with the unique morphism.
    """
    phi = phi or (lambda f: evaluate(f, target))
    carrier = target.carrier
    rep = MorphismReport(target.name)
    _record(rep, "unit", ONE, Check("phi(1) = 1", phi(ONE), carrier.one()))
    for x, img in target.generators.items():
        g = fo.leaf(fo.xdec(x))
        _record(rep, "generator", g, Check(f"phi({x}) = f({x})", phi(g), img))
    for i, f in enumerate(sample):
        g = sample[(i + 1) % len(sample)]
        fg = fo.concat(f, g)
        _record(rep, "multiplicativity", fg, Check("phi(FG) = phi(F)phi(G)", phi(fg), carrier.mul(phi(f), phi(g)), f"{f} , {g}"))
        for w, op in target.operators.items():
            bf = Forest((fo.graft(fo.odec(w), f),))
            _record(rep, "intertwining", bf, Check(f"phi(B_{w} F) = P_{w} phi(F)", phi(bf), op(phi(f)), str(f)))
        if coalgebra:
            lhs = carrier.delta(phi(f))
            rhs = map_tensor(forest_instance().delta_basis(f), phi, phi)
            _record(rep, "coproduct", f, Check("Delta phi = (phi (x) phi) Delta", lhs, rhs, str(f)))
    return rep


def check_hopf_morphism_compat(
    target: OperatedTarget,
    sample: list[Forest],
    phi: Callable[[Forest], LinComb] | None = None,
) -> MorphismReport:
    """S_target(phi(F)) = phi(S(F)) for each F in ``sample``."""
    phi = phi or (lambda f: evaluate(f, target))
    source = forest_instance()
    rep = MorphismReport(target.name)
    for f in sample:
        lhs = antipode(target.carrier, phi(f))
        rhs = lsum((phi(g), c) for g, c in antipode(source, f).items())
        _record(rep, "antipode", f, Check("S phi = phi S", lhs, rhs, str(f)))
    return rep


def check_target_cocycles(target: OperatedTarget, elements) -> list[Check]:
    """The cocycle law for each operator of the target on each basis element."""
    return [
        check_operator_cocycle(target.carrier, op, LinComb.basis(b))
        for op in target.operators.values()
        for b in elements
    ]
