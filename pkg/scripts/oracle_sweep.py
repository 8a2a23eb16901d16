"""Compare the combinatorial and recursive forest coproducts on every forest up to a size.

    python3 scripts/oracle_sweep.py --max-vertices 6 --random 200 --seed 0
"""
import argparse
import time

from epsforest import forest as fo
from epsforest.epscore import forest_coproduct, forest_coproduct_recursive
from epsforest.sampling import RandomForestGen


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-vertices", type=int, default=6)
    ap.add_argument("--random", type=int, default=200, help="extra random forests")
    ap.add_argument("--random-max", type=int, default=9)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--X", default="x,y")
    ap.add_argument("--Omega", default="a,b")
    args = ap.parse_args(argv)
    alphabet = fo.Alphabet(X=tuple(args.X.split(",")), Omega=tuple(args.Omega.split(",")))

    start = time.perf_counter()
    for n in range(args.max_vertices + 1):
        count = 0
        for f in fo.enumerate_forests(n, alphabet):
            if forest_coproduct(f) != forest_coproduct_recursive(f):
                print(f"MISMATCH at {f}")
                return 1
            count += 1
        print(f"{n} vertices: {count:>7} forests agree")
    gen = RandomForestGen(args.seed, args.random_max, alphabet=alphabet)
    for f in gen.forests(args.random):
        if forest_coproduct(f) != forest_coproduct_recursive(f):
            print(f"MISMATCH at {f}")
            return 1
    print(f"{args.random} random forests (<= {args.random_max} vertices) agree")
    print(f"elapsed {time.perf_counter() - start:.1f}s")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
