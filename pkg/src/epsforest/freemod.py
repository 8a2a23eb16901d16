"""Finite formal linear combinations with exact rational coefficients.

Basis elements are arbitrary hashable values. A tensor basis element is a
plain tuple of basis elements, so ``LinComb`` over pairs is the tensor square.
Linear operators are given by their value on basis elements.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Hashable, Iterable, Mapping

Rat = Fraction


def rat(value) -> Fraction:
    """Exact rational from an int, Fraction, or a ``"p/q"`` / ``"p"`` string."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        num, slash, den = text.partition("/")
        try:
            if slash:
                return Fraction(int(num), int(den))
            return Fraction(int(num))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {value!r}") from exc
    raise TypeError(f"cannot coerce {value!r} to a rational")


def format_rat(q: Fraction) -> str:
    q = rat(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def basis_key(b):
    """Canonical ordering key: the basis element's ``sort_key`` or its string."""
    if isinstance(b, tuple) and not hasattr(b, "sort_key"):
        return tuple(basis_key(x) for x in b)
    sk = getattr(b, "sort_key", None)
    return sk() if sk is not None else str(b)


class LinComb:
    """Element of the free module on a set of hashable basis elements.

    Zero coefficients are never stored. Values are treated as immutable.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping | Iterable | None = None):
        acc: dict = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for b, c in items:
                if c:
                    acc[b] = acc.get(b, 0) + c
        self._terms = {b: Fraction(c) for b, c in acc.items() if c}

    @classmethod
    def _raw(cls, d: dict) -> "LinComb":
        # d must already be pruned and hold Fractions/ints
        out = object.__new__(cls)
        out._terms = d
        return out

    @classmethod
    def basis(cls, b: Hashable, coeff=1) -> "LinComb":
        coeff = rat(coeff)
        return cls._raw({b: coeff} if coeff else {})

    # -- mapping-like access --
    def items(self):
        return self._terms.items()

    def keys(self):
        return self._terms.keys()

    def coeff(self, b) -> Fraction:
        return self._terms.get(b, Fraction(0))

    def __getitem__(self, b):
        return self.coeff(b)

    def __iter__(self):
        return iter(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __contains__(self, b):
        return b in self._terms

    def __eq__(self, other):
        if isinstance(other, LinComb):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def sorted_items(self):
        return sorted(self._terms.items(), key=lambda kv: basis_key(kv[0]))

    def __repr__(self):
        if not self._terms:
            return "LinComb(0)"
        body = " + ".join(f"{format_rat(c)}*{b}" for b, c in self.sorted_items())
        return f"LinComb({body})"

    # -- module structure --
    def __add__(self, other: "LinComb") -> "LinComb":
        if not isinstance(other, LinComb):
            return NotImplemented
        d = dict(self._terms)
        for b, c in other._terms.items():
            v = d.get(b, 0) + c
            if v:
                d[b] = v
            else:
                d.pop(b, None)
        return LinComb._raw(d)

    def __sub__(self, other: "LinComb") -> "LinComb":
        if not isinstance(other, LinComb):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "LinComb":
        return LinComb._raw({b: -c for b, c in self._terms.items()})

    def scale(self, c) -> "LinComb":
        c = rat(c)
        if not c:
            return ZERO
        return LinComb._raw({b: c * v for b, v in self._terms.items()})

    def __mul__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    __rmul__ = __mul__

    def apply(self, rule: Callable[[Hashable], "LinComb"]) -> "LinComb":
        """Linear extension of a basis-level rule."""
        return lsum((rule(b), c) for b, c in self._terms.items())


ZERO = LinComb()


def lsum(pairs: Iterable[tuple[LinComb, Fraction]]) -> LinComb:
    """sum of c * v over (v, c) pairs, accumulated in one dict."""
    d: dict = {}
    get = d.get
    for v, c in pairs:
        if c.__class__ is int and c == 1:
            # the common case in products of basis elements; skips Fraction multiplication
            for b, x in v._terms.items():
                d[b] = get(b, 0) + x
        else:
            for b, x in v._terms.items():
                d[b] = get(b, 0) + c * x
    return LinComb._raw({b: x for b, x in d.items() if x})


def lc_add(a: LinComb, b: LinComb) -> LinComb:
    return a + b


def lc_scale(c, a: LinComb) -> LinComb:
    return a.scale(c)


def lc_tensor(*factors: LinComb) -> LinComb:
    """Tensor product; basis of the result is the tuple of factor bases."""
    d = {(): Fraction(1)}
    for f in factors:
        nd: dict = {}
        for k, c in d.items():
            for b, x in f._terms.items():
                key = k + (b,)
                nd[key] = nd.get(key, 0) + c * x
        d = nd
    return LinComb._raw({k: v for k, v in d.items() if v})


def bimodule_act(left: LinComb, t: LinComb, right: LinComb, mul) -> LinComb:
    """``left . (u (x) v) . right = (left u) (x) (v right)``.

    ``mul(p, q)`` multiplies two basis elements and returns a LinComb.
    """
    d: dict = {}
    for (u, v), c in t.items():
        lu = lsum((mul(a, u), x) for a, x in left.items())
        vr = lsum((mul(v, b), y) for b, y in right.items())
        for p, x in lu.items():
            for q, y in vr.items():
                key = (p, q)
                d[key] = d.get(key, 0) + c * x * y
    return LinComb._raw({k: v for k, v in d.items() if v})


def map_tensor(t: LinComb, *maps) -> LinComb:
    """Apply one linear map per tensor leg (``None`` = identity)."""
    out = []
    for key, c in t.items():
        legs = [
            LinComb.basis(b) if f is None else f(b)
            for b, f in zip(key, maps)
        ]
        out.append((lc_tensor(*legs), c))
    return lsum(out)


class LinOp:
    """A linear endomap given on basis elements."""

    __slots__ = ("rule", "name")

    def __init__(self, rule: Callable[[Hashable], LinComb], name: str = "op"):
        self.rule = rule
        self.name = name

    def on_basis(self, b) -> LinComb:
        return self.rule(b)

    def __call__(self, x) -> LinComb:
        if not isinstance(x, LinComb):
            x = LinComb.basis(x)
        return x.apply(self.rule)

    def __repr__(self):
        return f"LinOp({self.name})"

    def __add__(self, other: "LinOp") -> "LinOp":
        return LinOp(lambda b: self.rule(b) + other.rule(b), f"({self.name}+{other.name})")

    def __neg__(self) -> "LinOp":
        return LinOp(lambda b: -self.rule(b), f"-{self.name}")

    def scale(self, c) -> "LinOp":
        c = rat(c)
        return LinOp(lambda b: self.rule(b).scale(c), f"{format_rat(c)}{self.name}")


def identity() -> LinOp:
    return LinOp(LinComb.basis, "id")


def zero_op() -> LinOp:
    return LinOp(lambda b: ZERO, "0")


def op_compose(f: LinOp, g: LinOp) -> LinOp:
    """f o g"""
    return LinOp(lambda b: g.rule(b).apply(f.rule), f"{f.name}.{g.name}")


def op_convolve(f: LinOp, g: LinOp, inst) -> LinOp:
    """f * g = m (f (x) g) Delta."""

    def rule(b):
        return lsum(
            (inst.mul(f.rule(u), g.rule(v)), c) for (u, v), c in inst.delta_basis(b).items()
        )

    return LinOp(rule, f"({f.name}*{g.name})")


def op_circ(f: LinOp, g: LinOp, inst) -> LinOp:
    """Circular convolution f * g + f + g; the zero map is its unit."""
    conv = op_convolve(f, g, inst)
    return LinOp(lambda b: conv.rule(b) + f.rule(b) + g.rule(b), f"({f.name}@{g.name})")
