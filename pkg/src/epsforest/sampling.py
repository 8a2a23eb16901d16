"""Seeded random generators for forests and the other instance bases.

The forest distribution: pick a vertex count uniformly in [min_vertices,
max_vertices], split it into trees by choosing the first tree's size uniformly,
and recurse. Leaves draw from X and Omega together (weighted by ``leaf_x_weight``);
internal vertices draw from Omega. Only determinism is promised, not uniformity.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import forest as fo
from .forest import Forest, Tree
from .freemod import LinComb


@dataclass
class RandomForestGen:
    seed: int = 0
    max_vertices: int = 6
    min_vertices: int = 0
    alphabet: fo.Alphabet = field(default_factory=fo.Alphabet)
    leaf_x_weight: float = 0.5
    rng: random.Random = field(init=False, repr=False)

    def __post_init__(self):
        if self.min_vertices > self.max_vertices:
            raise ValueError("min_vertices exceeds max_vertices")
        if not (self.alphabet.X or self.alphabet.Omega):
            raise ValueError("empty alphabet")
        self.rng = random.Random(self.seed)

    def _leaf(self) -> fo.Decoration:
        a = self.alphabet
        use_x = a.X and (not a.Omega or self.rng.random() < self.leaf_x_weight)
        if use_x:
            return fo.xdec(self.rng.choice(a.X))
        return fo.odec(self.rng.choice(a.Omega))

    def _tree(self, n: int) -> Tree:
        if n == 1 or not self.alphabet.Omega:
            return Tree(self._leaf())
        root = fo.odec(self.rng.choice(self.alphabet.Omega))
        return Tree(root, self._trees(n - 1))

    def _trees(self, n: int) -> list[Tree]:
        out = []
        while n > 0:
            k = self.rng.randint(1, n)
            if not self.alphabet.Omega:
                k = 1
            out.append(self._tree(k))
            n -= k
        return out

    def forest(self, n: int | None = None) -> Forest:
        if n is None:
            n = self.rng.randint(self.min_vertices, self.max_vertices)
        return Forest(self._trees(n))

    def forests(self, count: int) -> list[Forest]:
        return [self.forest() for _ in range(count)]

    def lincomb(self, terms: int = 3, max_coeff: int = 5) -> LinComb:
        return LinComb((self.forest(), random_coeff(self.rng, max_coeff)) for _ in range(terms))


def random_coeff(rng: random.Random, bound: int = 5) -> Fraction:
    num = rng.choice([i for i in range(-bound, bound + 1) if i])
    return Fraction(num, rng.randint(1, bound))


def random_monomial(rng: random.Random, max_degree: int = 8):
    from .instances import Monomial

    return Monomial(rng.randint(0, max_degree))


def random_word(rng: random.Random, max_degree: int = 6):
    """A word whose total degree is at most ``max_degree``."""
    from .instances import Word

    budget = rng.randint(0, max_degree)
    letters = []
    while budget > 0:
        i = rng.randint(1, budget)
        letters.append(i)
        budget -= i
    return Word(tuple(letters))


def random_path(rng: random.Random, quiver, max_length: int = 5):
    from .instances import Path, trivial_path

    v = rng.choice(quiver.vertices)
    arrows = []
    for _ in range(rng.randint(0, max_length)):
        out = [a for a in quiver.arrows if a.src == v]
        if not out:
            break
        a = rng.choice(out)
        arrows.append(a)
        v = a.tgt
    return Path(tuple(arrows)) if arrows else trivial_path(v)
