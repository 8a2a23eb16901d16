"""Acceptance suite: one group of tests per criterion, each with its time budget.

A PASS/FAIL line per criterion is printed in the terminal summary.
"""
import json
import random
import time
from fractions import Fraction

import pytest

from epsforest import forest as fo
from epsforest.antipode import (
    antipode, check_antipode_axioms, check_bijective, check_conv_nilpotency,
    divided_diff_antipode_closed,
)
from epsforest.epscore import (
    check_coassoc, check_cocycle, check_compat, check_derivation, check_mult_coalgebra_morphism,
    check_tensor_square_coassoc, forest_coproduct, forest_coproduct_recursive, forest_instance,
)
from epsforest.freemod import LinComb, ZERO
from epsforest.instances import (
    Monomial, Word, divided_diff_instance, foissy_instance, ladder, path_of, poly_instance,
    quiver_instance, sample_quiver, trivial_path,
)
from epsforest.operated import (
    broken_target, check_hopf_morphism_compat, check_operated_morphism, collapse_target,
    identity_target, relabel_target,
)
from epsforest.prelie import (
    associator, bracket, check_jacobi, check_prelie_identity, forest_prelie_matches, prelie,
)
from epsforest.sampling import RandomForestGen, random_coeff, random_monomial, random_path, random_word
from epsforest.textio import (
    ParseError, format_lincomb, from_json, parse_basis, parse_forest, parse_lincomb, parse_tensor,
    to_json,
)
from conftest import WORKED, SMALL


class Budget:
    def __init__(self, seconds):
        self.seconds = seconds

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        if exc[0] is None:
            assert self.elapsed < self.seconds, f"took {self.elapsed:.1f}s, budget {self.seconds}s"


def F(s):
    return parse_forest(s, WORKED)


def T(s):
    return parse_tensor(s, WORKED)


def L(s):
    return parse_lincomb(s, WORKED)


def sample(seed, count, max_vertices, min_vertices=0, alphabet=SMALL):
    return RandomForestGen(seed, max_vertices, min_vertices, alphabet).forests(count)


# -- 1 ----------------------------------------------------------------------------

C1 = pytest.mark.criterion(1, "golden examples")


def poly_delta_formula(n, lam):
    terms = [((Monomial(i), Monomial(n - 1 - i)), 1) for i in range(n)]
    terms += [((Monomial(i), Monomial(n - i)), lam) for i in range(1, n)]
    return LinComb(terms)


@C1
def test_c1_goldens():
    with Budget(1.0):
        inst = forest_instance(WORKED)
        assert forest_coproduct(F("a(x)")) == T("x # 1 + 1 # a")
        assert forest_coproduct(F("b a(x)")) == T("b x # 1 + b # a + 1 # a(x)")
        assert forest_coproduct(F("w(b a(x))")) == T(
            "b a(x) # 1 + b x # w + b # w(a) + 1 # w(a(x))"
        )
        assert forest_coproduct(F("g w(y)")) == T("1 # w(y) + g # w + g y # 1")

        fi = foissy_instance()
        FT = lambda s: parse_tensor(s, inst=fi)
        assert fi.delta_basis(ladder(0)) == FT("1 # 1")
        assert fi.delta_basis(ladder(1)) == FT("o # 1 + 1 # o")
        assert fi.delta_basis(ladder(2)) == FT("o(o) # 1 + o # o + 1 # o(o)")
        assert fi.delta_basis(parse_basis("o o(o)", fi)) == FT(
            "o o(o) # 1 + o o # o + o # o(o) + 1 # o o(o)"
        )

        # the tree with root a and children b, g (left to right)
        t = F("a(b g)")
        names = [
            sorted(fo.label_at(t, v) for v in ideal) for ideal in fo.proper_biideals(t)
        ]
        assert names == [[], ["b"], ["b", "g"]]

        # coproducts assembled from restrictions to biideals
        for text, want in [
            ("b a(x)", "1 # a(x) + b # a + b x # 1"),
            ("w(b a(x))", "1 # w(a(x)) + b # w(a) + b x # w + b a(x) # 1"),
        ]:
            f = F(text)
            order = fo.vertex_order(f)
            expansion = ZERO
            for k, ideal in enumerate(fo.proper_biideals(f)):
                rest = set(order) - set(ideal) - {order[k]}
                expansion += LinComb.basis((fo.restrict(f, ideal), fo.restrict(f, rest)))
            assert expansion == T(want)
            assert forest_coproduct(f) == expansion

        for lam in [Fraction(0), Fraction(1), Fraction(-1), Fraction(3, 2)]:
            p = poly_instance(lam)
            assert p.delta_basis(Monomial(0)) == LinComb.basis((Monomial(0), Monomial(0)), -lam)
            assert p.delta_basis(Monomial(1)) == LinComb.basis((Monomial(0), Monomial(0)))
            for n in range(1, 6):
                assert p.delta_basis(Monomial(n)) == poly_delta_formula(n, lam)

        q = sample_quiver()
        qi = quiver_instance(q)
        u, v, w = (trivial_path(s) for s in "uvw")
        a, b = path_of(q, "a"), path_of(q, "b")
        assert qi.delta_basis(u) == ZERO
        assert qi.delta_basis(a) == LinComb.basis((u, v))
        assert qi.delta_basis(path_of(q, "a", "b")) == LinComb([((u, b), 1), ((a, w), 1)])

        f1, f2, f3 = F("x"), F("a(b)"), F("g w(y)")
        assert prelie(inst, f1, f2) == L("x a + b x")
        assert prelie(inst, f2, f1) == L("a(b)")
        assert prelie(inst, f2, f3) == L("a(b) w(y) + g a(b) w + g y a(b)")
        assert bracket(inst, f1, f2) == L("x a + b x - a(b)")
        assert inst.delta(prelie(inst, f2, f3)) == T(
            "1 # a w(y) + b # w(y) + a(b) # w + a(b) y # 1 + 1 # a(b) w + g # a w"
            " + g b # w + g a(b) # 1 + 1 # y a(b) + g # a(b) + g y # a + g y b # 1"
        )
        left = prelie(inst, prelie(inst, f1, f2), f3)
        assert left == L("x a w(y) + b x w(y) + g x a w + g b x w + g y x a + g y b x")
        right = prelie(inst, f1, prelie(inst, f2, f3))
        assert right - left == L(
            "a(b) x w + x a(b) w + a(b) y x + x y a(b) + g a(b) x + g x a(b)"
        )
        assert associator(inst, f1, f2, f3) == associator(inst, f2, f1, f3)


# -- 2 ----------------------------------------------------------------------------

C2 = pytest.mark.criterion(2, "combinatorial coproduct equals recursive coproduct")


@C2
def test_c2_oracle():
    with Budget(30):
        count = 0
        for f in fo.forests_up_to(6, SMALL):
            assert forest_coproduct(f) == forest_coproduct_recursive(f), f
            count += 1
        assert count == 129837
        for f in sample(2, 200, 9):
            assert forest_coproduct(f) == forest_coproduct_recursive(f), f


# -- 3 ----------------------------------------------------------------------------

C3 = pytest.mark.criterion(3, "coassociativity and compatibility")


@C3
def test_c3_forest_laws():
    with Budget(30):
        inst = forest_instance(SMALL)
        fs = sample(3, 200, 8)
        gs = sample(33, 200, 8)
        for f, g in zip(fs, gs):
            assert check_coassoc(inst, f)
            assert check_derivation(f, g)
            assert check_compat(inst, f, g)


@C3
def test_c3_poly_weighted_compat():
    with Budget(30):
        rng = random.Random(4)
        for _ in range(100):
            m, n = rng.randint(0, 8), rng.randint(0, 8)
            lam = random_coeff(rng, 4) if rng.random() < 0.8 else Fraction(0)
            assert check_compat(poly_instance(lam), Monomial(m), Monomial(n))


# -- 4 ----------------------------------------------------------------------------

C4 = pytest.mark.criterion(4, "cocycle condition for grafting")


@C4
def test_c4_cocycle():
    with Budget(30):
        for f in sample(5, 100, 8):
            for w in SMALL.Omega:
                assert check_cocycle(w, LinComb.basis(f))


# -- 5 ----------------------------------------------------------------------------

C5 = pytest.mark.criterion(5, "nilpotency of D")


@C5
def test_c5_nilpotency():
    with Budget(60):
        inst = forest_instance(SMALL)
        for f in fo.forests_up_to(5, SMALL):
            assert check_conv_nilpotency(inst, f, fo.vertex_count(f)), f
        for f in sample(6, 100, 8, min_vertices=6):
            assert check_conv_nilpotency(inst, f, fo.vertex_count(f)), f


# -- 6 ----------------------------------------------------------------------------

C6 = pytest.mark.criterion(6, "antipode")


@C6
def test_c6_antipode():
    with Budget(60):
        inst = forest_instance(SMALL)
        forests = list(fo.forests_up_to(5, SMALL)) + sample(7, 100, 7)
        for f in forests:
            left, right = check_antipode_axioms(inst, f)
            assert left, left
            assert right, right
            st, ts = check_bijective(inst, f)
            assert st, st
            assert ts, ts
        d = divided_diff_instance()
        for n in range(1, 9):
            assert antipode(d, Word((n,))) == divided_diff_antipode_closed(n), n


# -- 7 ----------------------------------------------------------------------------

C7 = pytest.mark.criterion(7, "pre-Lie and Lie identities")


def _identities(inst, triples):
    for a, b, c in triples:
        assert check_prelie_identity(inst, a, b, c)
        assert check_jacobi(inst, a, b, c)


@C7
def test_c7_forest():
    with Budget(30):
        fs = sample(8, 600, 4)
        _identities(forest_instance(SMALL), zip(fs[0::3], fs[1::3], fs[2::3]))


@pytest.mark.parametrize("lam", [0, 1, -1])
@C7
def test_c7_poly(lam):
    rng = random.Random(9)
    with Budget(30):
        _identities(poly_instance(lam), [[random_monomial(rng, 8) for _ in range(3)] for _ in range(200)])


@C7
def test_c7_divided_differences():
    rng = random.Random(10)
    with Budget(30):
        _identities(divided_diff_instance(), [[random_word(rng, 5) for _ in range(3)] for _ in range(200)])


@C7
def test_c7_quiver():
    rng = random.Random(11)
    q = sample_quiver()
    with Budget(30):
        _identities(quiver_instance(q), [[random_path(rng, q, 4) for _ in range(3)] for _ in range(200)])


@C7
def test_c7_biideal_formula_exhaustive():
    with Budget(60):
        inst = forest_instance(SMALL)
        by_size = [list(fo.enumerate_forests(n, SMALL)) for n in range(6)]
        for n1 in range(6):
            for n2 in range(6 - n1):
                for f in by_size[n1]:
                    for g in by_size[n2]:
                        assert forest_prelie_matches(f, g, inst), (f, g)


# -- 8 ----------------------------------------------------------------------------

C8 = pytest.mark.criterion(8, "coalgebra structure on the tensor square")


@C8
def test_c8_forest_pairs():
    with Budget(30):
        inst = forest_instance(SMALL)
        for f, g in zip(sample(12, 100, 5), sample(13, 100, 5)):
            assert check_tensor_square_coassoc(inst, inst, f, g)
            assert check_mult_coalgebra_morphism(inst, f, g)


@C8
def test_c8_poly_pairs():
    rng = random.Random(14)
    with Budget(30):
        p = poly_instance(1)
        for _ in range(100):
            m, n = random_monomial(rng, 6), random_monomial(rng, 6)
            assert check_tensor_square_coassoc(p, p, m, n)
            assert check_mult_coalgebra_morphism(p, m, n)


# -- 9 ----------------------------------------------------------------------------

C9 = pytest.mark.criterion(9, "evaluation into operated targets")


@pytest.mark.parametrize(
    "make",
    [identity_target, lambda a: relabel_target({"x": "y", "a": "b"}, a), collapse_target],
    ids=["identity", "relabel", "collapse"],
)
@C9
def test_c9_targets(make):
    with Budget(60):
        target = make(SMALL)
        fs = sample(15, 200, 6)
        rep = check_operated_morphism(target, fs)
        assert rep, str(rep)
        rep = check_hopf_morphism_compat(target, fs)
        assert rep, str(rep)


@C9
def test_c9_broken_target_rejected():
    rep = check_operated_morphism(broken_target(SMALL), sample(16, 200, 6))
    assert not rep
    prop, f, chk = rep.first_failure
    assert prop == "coproduct"
    assert chk.first_difference() is not None


# -- 10 ---------------------------------------------------------------------------

C10 = pytest.mark.criterion(10, "parser round trip and error positions")


@C10
def test_c10_fuzz():
    gen = RandomForestGen(seed=17, max_vertices=6, alphabet=WORKED)
    rng = gen.rng
    for i in range(500):
        kind = i % 3
        if kind == 0:
            value = gen.forest()
            text = str(value)
        elif kind == 1:
            value = gen.lincomb(rng.randint(0, 4))
            text = format_lincomb(value)
        else:
            value = LinComb(
                ((gen.forest(), gen.forest()), random_coeff(rng)) for _ in range(rng.randint(0, 4))
            )
            text = format_lincomb(value)
        parsed = (parse_forest, parse_lincomb, parse_tensor)[kind](text, WORKED)
        assert parsed == value, text
        assert from_json(json.loads(json.dumps(to_json(value))), WORKED) == value


@pytest.mark.parametrize(
    "text, column, needle",
    [
        ("x(y)", 1, "X-label"),
        ("a(q)", 3, "unknown label"),
        ("a(x", 4, "expected"),
    ],
    ids=["x-label-with-children", "unknown-label", "malformed"],
)
@C10
def test_c10_negative(text, column, needle):
    with pytest.raises(ParseError) as info:
        parse_forest(text, WORKED)
    err = info.value
    assert (err.line, err.column) == (1, column)
    assert needle in str(err)
