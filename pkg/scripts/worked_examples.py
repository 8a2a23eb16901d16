"""Print the worked coproducts, antipodes and pre-Lie products.

    python3 scripts/worked_examples.py
"""
from epsforest import forest as fo
from epsforest.antipode import antipode
from epsforest.epscore import forest_coproduct, forest_instance
from epsforest.instances import foissy_instance, ladder, poly_instance, Monomial
from epsforest.prelie import bracket, prelie
from epsforest.textio import format_lincomb, parse_basis, parse_forest

ALPHABET = fo.Alphabet(X=("x", "y"), Omega=("a", "b", "g", "w"))


def show(label, value):
    print(f"{label:<28} = {format_lincomb(value)}")


def main():
    inst = forest_instance(ALPHABET)
    F = lambda s: parse_forest(s, ALPHABET)

    print("# forest coproduct")
    for s in ["x", "a(x)", "b a(x)", "w(b a(x))", "g w(y)"]:
        show(f"Delta({s})", forest_coproduct(F(s)))

    print("\n# biideals of a(b g)")
    t = F("a(b g)")
    for ideal in fo.proper_biideals(t):
        print("  {" + ", ".join(sorted(fo.label_at(t, v) for v in ideal)) + "}")

    print("\n# weight -1 coproduct on undecorated forests")
    fi = foissy_instance()
    for f in [ladder(1), ladder(2), parse_basis("o o(o)", fi)]:
        show(f"Delta({f})", fi.delta_basis(f))

    print("\n# k[x]")
    for lam in [0, 1]:
        p = poly_instance(lam)
        show(f"Delta(x^3), lambda={lam}", p.delta_basis(Monomial(3)))
    show("S(x^3), lambda=0", antipode(poly_instance(0), Monomial(3)))

    print("\n# antipode on forests")
    for s in ["x", "a(x)", "b a(x)"]:
        show(f"S({s})", antipode(inst, F(s)))

    print("\n# pre-Lie products")
    f1, f2, f3 = F("x"), F("a(b)"), F("g w(y)")
    show("x |> a(b)", prelie(inst, f1, f2))
    show("a(b) |> g w(y)", prelie(inst, f2, f3))
    show("[x, a(b)]", bracket(inst, f1, f2))


if __name__ == "__main__":
    main()
