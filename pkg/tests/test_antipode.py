import pytest
from hypothesis import given

from epsforest import forest as fo
from epsforest.antipode import (
    AntipodeUnavailable, NilpotencyViolation, antipode, antipode_inverse, check_antipode_axioms,
    check_bijective, check_conv_nilpotency, d_powers, divided_diff_antipode_closed, strict_compositions,
    D,
)
from epsforest.epscore import forest_instance
from epsforest.freemod import LinComb
from epsforest.instances import (
    Monomial, Word, divided_diff_instance, foissy_instance, paths_up_to, poly_instance,
    quiver_instance, sample_quiver, trivial_instance,
)
from epsforest.textio import parse_lincomb
from conftest import WORKED, SMALL, small_forests


def L(s):
    return parse_lincomb(s, WORKED)


def test_single_vertex(inst, F):
    assert antipode(inst, F("x")) == L("1 - x")
    assert antipode(inst, F("1")) == L("-1")
    assert antipode_inverse(inst, F("x")) == L("- x - 1")


def test_two_vertices(inst, F):
    # D(a(x)) = x + a, D^2 = 2, so S = -(a(x) - x - a + 1)
    assert D(inst, LinComb.basis(F("a(x)"))) == L("x + a")
    assert antipode(inst, F("a(x)")) == L("- a(x) + x + a - 1")


def test_axioms_exhaustive_small():
    inst = forest_instance(SMALL)
    for f in fo.forests_up_to(4, SMALL):
        left, right = check_antipode_axioms(inst, f)
        assert left and right, f


@given(small_forests())
def test_bijective(f):
    inst = forest_instance(SMALL)
    st, ts = check_bijective(inst, f)
    assert st and ts


@given(small_forests())
def test_nilpotency(f):
    inst = forest_instance(SMALL)
    n = fo.vertex_count(f)
    assert check_conv_nilpotency(inst, f, n)
    assert len(d_powers(inst, f)) == n + 1


def test_refusals():
    with pytest.raises(AntipodeUnavailable):
        antipode(poly_instance(1), Monomial(2))
    with pytest.raises(AntipodeUnavailable):
        antipode(foissy_instance(), fo.ONE)


def test_wrong_bound_is_caught(F):
    inst = forest_instance(WORKED)
    inst.nilpotency_bound = lambda f: 0
    with pytest.raises(NilpotencyViolation):
        antipode(inst, F("x"))


def test_poly_weight_zero():
    p = poly_instance(0)
    # S = -exp(-d/dx), so S(x^n) = -(x - 1)^n
    assert antipode(p, Monomial(2)) == LinComb({Monomial(2): -1, Monomial(1): 2, Monomial(0): -1})
    for n in range(9):
        assert all(check_antipode_axioms(p, Monomial(n)))


def test_trivial_is_minus_identity(F):
    t = trivial_instance(forest_instance(WORKED))
    assert antipode(t, F("a(x) y")) == LinComb.basis(F("a(x) y"), -1)


def test_quiver_axioms():
    q = quiver_instance(sample_quiver())
    for p in paths_up_to(sample_quiver(), 4):
        assert all(check_antipode_axioms(q, p))
        assert all(check_bijective(q, p))


def test_strict_compositions():
    assert sorted(strict_compositions(4, 2)) == [(1, 3), (2, 2), (3, 1)]
    assert list(strict_compositions(3, 3)) == [(1, 1, 1)]
    assert list(strict_compositions(2, 3)) == []


def test_divided_differences_closed_form():
    d = divided_diff_instance()
    W = lambda *ls: Word(ls)
    assert divided_diff_antipode_closed(1) == LinComb({W(): 1, W(1): -1})
    assert divided_diff_antipode_closed(2) == LinComb({W(2): -1, W(1): 2, W(): -1})
    for n in range(1, 9):
        assert divided_diff_antipode_closed(n) == antipode(d, W(n))
        assert all(check_antipode_axioms(d, W(n)))
