"""Concrete infinitesimal bialgebras besides decorated forests.

* ``poly_instance(lam)``: k[x] of weight lam, Delta(1) = -lam 1(x)1, Delta(x) = 1(x)1.
* ``divided_diff_instance()``: words in x_1, x_2, ... with Delta(x_n) = sum x_i (x) x_{n-1-i}.
* ``quiver_instance(q)``: the path algebra of a finite quiver (no unit).
* ``foissy_instance()``: undecorated planar forests, weight -1.
* ``trivial_instance(base)``: any unitary algebra with Delta = 0.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import forest as fo
from .epscore import EpsInstance, forest_instance
from .forest import Forest, Tree, ONE
from .freemod import LinComb, ZERO, rat, format_rat


# -- k[x] of weight lambda -----------------------------------------------------

@dataclass(frozen=True, order=True)
class Monomial:
    n: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("negative exponent")

    def __str__(self):
        if self.n == 0:
            return "1"
        if self.n == 1:
            return "x"
        return f"x^{self.n}"

    def sort_key(self):
        return (self.n,)


def poly_instance(lam=0) -> EpsInstance:
    lam = rat(lam)

    def mul(a: Monomial, b: Monomial):
        return LinComb.basis(Monomial(a.n + b.n))

    @lru_cache(maxsize=None)
    def delta(m: Monomial):
        n = m.n
        if n == 0:
            return LinComb.basis((Monomial(0), Monomial(0)), -lam)
        terms = [((Monomial(i), Monomial(n - 1 - i)), Fraction(1)) for i in range(n)]
        terms += [((Monomial(i), Monomial(n - i)), lam) for i in range(1, n)]
        return LinComb(terms)

    return EpsInstance(
        name=f"poly:{format_rat(lam)}",
        mul_basis=mul,
        delta_basis=delta,
        lam=lam,
        unit=Monomial(0),
        # with lam = 0, D = d/dx; otherwise D(1) = -lam and D never dies out
        nilpotency_bound=(lambda m: m.n) if lam == 0 else None,
        kind="poly",
    )


# -- divided differences: words in x_1, x_2, ... -------------------------------

@dataclass(frozen=True)
class Word:
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        if any(i < 1 for i in self.letters):
            raise ValueError("letters are positive integers (x_0 is the empty word)")

    def __str__(self):
        if not self.letters:
            return "1"
        return " ".join(f"x{i}" for i in self.letters)

    def sort_key(self):
        return (len(self.letters), self.letters)

    @property
    def degree(self) -> int:
        return sum(self.letters)


def _gen(i: int) -> Word:
    return Word(() if i == 0 else (i,))


def divided_diff_instance() -> EpsInstance:
    def mul(a: Word, b: Word):
        return LinComb.basis(Word(a.letters + b.letters))

    @lru_cache(maxsize=None)
    def delta(w: Word):
        # weight-0 derivation rule applied letter by letter
        terms: dict = {}
        letters = w.letters
        for j, n in enumerate(letters):
            pre, post = letters[:j], letters[j + 1:]
            for i in range(n):
                key = (Word(pre + _gen(i).letters), Word(_gen(n - 1 - i).letters + post))
                terms[key] = terms.get(key, 0) + 1
        return LinComb(terms)

    return EpsInstance(
        name="divdiff",
        mul_basis=mul,
        delta_basis=delta,
        lam=0,
        unit=Word(()),
        nilpotency_bound=lambda w: w.degree,
        kind="divdiff",
    )


# -- quiver path algebra ---------------------------------------------------------

@dataclass(frozen=True)
class Arrow:
    name: str
    src: str
    tgt: str


@dataclass(frozen=True)
class QuiverSpec:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "arrows", tuple(self.arrows))
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise ValueError("duplicate quiver vertex")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise ValueError("duplicate arrow name")
        if vs & set(names):
            raise ValueError("arrow names must differ from vertex names")
        for a in self.arrows:
            if a.src not in vs or a.tgt not in vs:
                raise ValueError(f"arrow {a.name} has an endpoint outside the vertex set")

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise KeyError(name)

    @classmethod
    def from_json(cls, doc) -> "QuiverSpec":
        if isinstance(doc, str):
            doc = json.loads(doc)
        try:
            arrows = tuple(Arrow(str(a["name"]), str(a["src"]), str(a["tgt"])) for a in doc["arrows"])
            return cls(tuple(str(v) for v in doc["vertices"]), arrows)
        except (KeyError, TypeError) as exc:
            raise ValueError(f"ill-formed quiver document: {exc}") from exc

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "arrows": [{"name": a.name, "src": a.src, "tgt": a.tgt} for a in self.arrows],
        }


@dataclass(frozen=True)
class Path:
    """Either the trivial path at ``vertex`` (no arrows) or a composable arrow sequence."""

    arrows: tuple[Arrow, ...] = ()
    vertex: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "arrows", tuple(self.arrows))
        if self.arrows:
            for a, b in zip(self.arrows, self.arrows[1:]):
                if a.tgt != b.src:
                    raise ValueError(f"arrows {a.name} and {b.name} are not composable")
            object.__setattr__(self, "vertex", None)
        elif self.vertex is None:
            raise ValueError("a trivial path needs a vertex")

    @property
    def length(self) -> int:
        return len(self.arrows)

    @property
    def source(self) -> str:
        return self.arrows[0].src if self.arrows else self.vertex

    @property
    def target(self) -> str:
        return self.arrows[-1].tgt if self.arrows else self.vertex

    def __str__(self):
        if not self.arrows:
            return f"[{self.vertex}]"
        return " ".join(a.name for a in self.arrows)

    def sort_key(self):
        return (self.length, str(self))


def trivial_path(v: str) -> Path:
    return Path((), v)


def path_of(q: QuiverSpec, *names: str) -> Path:
    return Path(tuple(q.arrow(n) for n in names))


def path_mul(p: Path, r: Path) -> LinComb:
    if p.target != r.source:
        return ZERO
    if not p.arrows:
        return LinComb.basis(r)
    if not r.arrows:
        return LinComb.basis(p)
    return LinComb.basis(Path(p.arrows + r.arrows))


def quiver_instance(q: QuiverSpec) -> EpsInstance:
    @lru_cache(maxsize=None)
    def delta(p: Path):
        arr = p.arrows
        n = len(arr)
        if n == 0:
            return ZERO
        if n == 1:
            return LinComb.basis((trivial_path(arr[0].src), trivial_path(arr[0].tgt)))
        terms = [
            ((trivial_path(arr[0].src), Path(arr[1:])), Fraction(1)),
            ((Path(arr[:-1]), trivial_path(arr[-1].tgt)), Fraction(1)),
        ]
        terms += [((Path(arr[:i]), Path(arr[i + 1:])), Fraction(1)) for i in range(1, n - 1)]
        return LinComb(terms)

    return EpsInstance(
        name="quiver",
        mul_basis=path_mul,
        delta_basis=delta,
        lam=0,
        unit=None,
        nilpotency_bound=lambda p: p.length,
        kind="quiver",
        params={"quiver": q},
    )


def paths_up_to(q: QuiverSpec, n: int) -> list[Path]:
    out = [trivial_path(v) for v in q.vertices]
    layer = [Path((a,)) for a in q.arrows]
    for _ in range(n):
        out.extend(layer)
        layer = [Path(p.arrows + (a,)) for p in layer for a in q.arrows if a.src == p.target]
    return out


def sample_quiver() -> QuiverSpec:
    """A 4-vertex quiver with a loop, a 2-cycle and parallel arrows."""
    return QuiverSpec(
        ("u", "v", "w", "z"),
        (
            Arrow("a", "u", "v"),
            Arrow("b", "v", "w"),
            Arrow("c", "w", "u"),
            Arrow("d", "v", "v"),
            Arrow("e", "w", "z"),
            Arrow("f", "u", "v"),
        ),
    )


# -- Foissy's weight -1 coproduct on undecorated forests ----------------------------

FOISSY_LABEL = "o"
FOISSY_ALPHABET = fo.Alphabet(X=(), Omega=(FOISSY_LABEL,))
_BULLET = fo.odec(FOISSY_LABEL)


def foissy_graft(f: Forest) -> Forest:
    return Forest((Tree(_BULLET, f.trees),))


@lru_cache(maxsize=1 << 14)
def foissy_coproduct(f: Forest) -> LinComb:
    """Delta(1) = 1(x)1, Delta(B(G)) = B(G)(x)1 + (id (x) B) Delta(G),
    Delta(F1 F2) = F1 . Delta(F2) + Delta(F1) . F2 - F1 (x) F2."""
    trees = f.trees
    if not trees:
        return LinComb.basis((ONE, ONE))
    if len(trees) == 1:
        inner = Forest(trees[0].children)
        terms = [((f, ONE), Fraction(1))]
        terms += [((u, foissy_graft(v)), c) for (u, v), c in foissy_coproduct(inner).items()]
        return LinComb(terms)
    head, rest = Forest(trees[:1]), Forest(trees[1:])
    terms = [((fo.concat(head, u), v), c) for (u, v), c in foissy_coproduct(rest).items()]
    terms += [((u, fo.concat(v, rest)), c) for (u, v), c in foissy_coproduct(head).items()]
    terms.append(((head, rest), Fraction(-1)))
    return LinComb(terms)


def foissy_instance() -> EpsInstance:
    return EpsInstance(
        name="foissy",
        mul_basis=lambda f, g: LinComb.basis(fo.concat(f, g)),
        delta_basis=foissy_coproduct,
        lam=-1,
        unit=ONE,
        nilpotency_bound=None,
        kind="foissy",
        params={"alphabet": FOISSY_ALPHABET},
    )


def ladder(n: int) -> Forest:
    f = ONE
    for _ in range(n):
        f = foissy_graft(f)
    return f


# -- Delta = 0 -------------------------------------------------------------------

def trivial_instance(base: EpsInstance | None = None) -> EpsInstance:
    """Same unitary algebra as ``base`` (forests by default) with the zero coproduct."""
    base = base or forest_instance()
    if not base.unitary:
        raise ValueError("trivial instance needs a unitary base algebra")
    return EpsInstance(
        name=f"trivial[{base.name}]",
        mul_basis=base.mul_basis,
        delta_basis=lambda b: ZERO,
        lam=0,
        unit=base.unit,
        nilpotency_bound=lambda b: 0,
        kind="trivial",
        params=dict(base.params, base_kind=base.kind),
    )
