from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from epsforest.freemod import (
    LinComb, LinOp, ZERO, identity, lc_tensor, map_tensor, op_circ, op_compose, rat, format_rat, zero_op,
)
from epsforest.epscore import forest_instance
from epsforest.textio import parse_forest

coeffs = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 6))
lincombs = st.dictionaries(st.sampled_from("pqrst"), coeffs, max_size=4).map(LinComb)


def test_rat():
    assert rat("3/2") == Fraction(3, 2)
    assert rat("-4") == -4
    assert rat(Fraction(1, 3)) == Fraction(1, 3)
    for bad in ("1/0", "x", "1.5"):
        with pytest.raises(ValueError):
            rat(bad)
    with pytest.raises(TypeError):
        rat(0.5)
    assert format_rat(Fraction(-3, 2)) == "-3/2"


def test_zero_pruning():
    a = LinComb([("p", 1), ("q", 2), ("p", -1)])
    assert a.keys() == {"q"}
    assert LinComb.basis("p") - LinComb.basis("p") == 0
    assert not LinComb.basis("p", 0)


@given(lincombs, lincombs, lincombs)
def test_module_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a + ZERO == a
    assert a - a == ZERO


@given(lincombs, coeffs, coeffs)
def test_scaling(a, s, t):
    assert a.scale(s).scale(t) == a.scale(s * t)
    assert a.scale(s) + a.scale(t) == a.scale(s + t)


@given(lincombs, lincombs)
def test_tensor_bilinear(a, b):
    c = LinComb.basis("z", 3)
    assert lc_tensor(a + c, b) == lc_tensor(a, b) + lc_tensor(c, b)
    assert lc_tensor(a.scale(2), b) == lc_tensor(a, b).scale(2)


def test_map_tensor_identity_legs():
    t = lc_tensor(LinComb.basis("p"), LinComb.basis("q", 2))
    assert map_tensor(t, None, None) == t
    dbl = lambda b: LinComb.basis(b + b)
    assert map_tensor(t, dbl, None) == lc_tensor(LinComb.basis("pp"), LinComb.basis("q", 2))


def test_circular_convolution_unit():
    inst = forest_instance()
    f = LinOp(lambda b: LinComb.basis(b, 3), "3id")
    for s in ("1", "x", "a(x) y"):
        u = parse_forest(s)
        assert op_circ(f, zero_op(), inst)(u) == f(u)
        assert op_circ(zero_op(), f, inst)(u) == f(u)


def test_compose():
    dbl = LinOp(lambda b: LinComb.basis(b, 2), "2")
    assert op_compose(dbl, identity())("p") == LinComb.basis("p", 2)
    assert (dbl + dbl)("p") == LinComb.basis("p", 4)
    assert (-dbl)("p") == LinComb.basis("p", -2)
