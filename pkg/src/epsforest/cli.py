"""``eps`` command line.

Exit codes: 0 success, 1 a property check failed, 2 parse or usage error,
3 the request needs an antipode the instance does not have.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import dataclass, fields
from pathlib import Path

from . import forest as fo
from .antipode import (
    AntipodeUnavailable,
    antipode,
    check_antipode_axioms,
    check_bijective,
    check_conv_nilpotency,
    divided_diff_antipode_closed,
)
from .epscore import (
    EpsInstance,
    check_coassoc,
    check_cocycle,
    check_compat,
    forest_coproduct,
    forest_coproduct_recursive,
    forest_instance,
)
from .freemod import LinComb
from .instances import (
    QuiverSpec,
    Word,
    divided_diff_instance,
    foissy_instance,
    poly_instance,
    quiver_instance,
    trivial_instance,
)
from .operated import (
    BindingError,
    check_hopf_morphism_compat,
    check_operated_morphism,
    evaluate_lc,
    target_from_name,
)
from .prelie import bracket, check_jacobi, check_prelie_identity, forest_prelie_matches, prelie
from .sampling import RandomForestGen, random_monomial, random_path, random_word
from .textio import ParseError, SchemaError, format_lincomb, parse_basis, parse_lincomb, to_json

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_REFUSED = 0, 1, 2, 3

SUITES = ("coassoc", "compat", "cocycle", "oracle", "nilpotency", "antipode", "prelie", "jacobi", "operated")


@dataclass
class CliConfig:
    X: tuple[str, ...] = ("x", "y", "z")
    Omega: tuple[str, ...] = ("a", "b", "w")
    instance: str = "forest"
    format: str = "text"
    seed: int = 0
    samples: int = 100
    max_vertices: int = 6
    target: str = "identity"

    @property
    def alphabet(self) -> fo.Alphabet:
        return fo.Alphabet(X=tuple(self.X), Omega=tuple(self.Omega))


def _labels(text: str) -> tuple[str, ...]:
    return tuple(s.strip() for s in text.split(",") if s.strip())


def load_config(args) -> CliConfig:
    """Defaults, then the JSON config file (--config or EPS_CONFIG), then flags."""
    cfg = CliConfig()
    path = args.config or os.environ.get("EPS_CONFIG")
    if path:
        doc = json.loads(Path(path).read_text())
        known = {f.name for f in fields(CliConfig)}
        for key, val in doc.items():
            name = key.replace("-", "_")
            if name not in known:
                raise ValueError(f"unknown config key {key!r}")
            if name in ("X", "Omega"):
                val = _labels(val) if isinstance(val, str) else tuple(val)
            setattr(cfg, name, val)
    for name in ("instance", "format", "seed", "samples", "max_vertices", "target"):
        val = getattr(args, name, None)
        if val is not None:
            setattr(cfg, name, val)
    if args.X is not None:
        cfg.X = _labels(args.X)
    if args.Omega is not None:
        cfg.Omega = _labels(args.Omega)
    return cfg


def build_instance(cfg: CliConfig) -> EpsInstance:
    name, _, arg = cfg.instance.partition(":")
    if name == "forest":
        return forest_instance(cfg.alphabet)
    if name == "poly":
        return poly_instance(arg or "0")
    if name == "divdiff":
        return divided_diff_instance()
    if name == "quiver":
        if not arg:
            raise ValueError("quiver instance needs a file: --instance quiver:FILE")
        return quiver_instance(QuiverSpec.from_json(Path(arg).read_text()))
    if name == "foissy":
        return foissy_instance()
    if name == "trivial":
        return trivial_instance(forest_instance(cfg.alphabet))
    raise ValueError(f"unknown instance {cfg.instance!r}")


def emit(value, cfg: CliConfig, out=None):
    out = out or sys.stdout
    if cfg.format == "json":
        print(json.dumps(to_json(value), sort_keys=True), file=out)
    else:
        print(format_lincomb(value) if isinstance(value, LinComb) else str(value), file=out)


# -- subcommands ---------------------------------------------------------------------

def cmd_coproduct(args, cfg):
    inst = build_instance(cfg)
    a = parse_lincomb(args.expr, cfg.alphabet, inst)
    emit(inst.delta(a), cfg)
    return EXIT_OK


def cmd_antipode(args, cfg):
    inst = build_instance(cfg)
    a = parse_lincomb(args.expr, cfg.alphabet, inst)
    emit(antipode(inst, a), cfg)
    return EXIT_OK


def cmd_prelie(args, cfg):
    inst = build_instance(cfg)
    a, b = (parse_lincomb(e, cfg.alphabet, inst) for e in (args.left, args.right))
    emit(prelie(inst, a, b), cfg)
    return EXIT_OK


def cmd_bracket(args, cfg):
    inst = build_instance(cfg)
    a, b = (parse_lincomb(e, cfg.alphabet, inst) for e in (args.left, args.right))
    emit(bracket(inst, a, b), cfg)
    return EXIT_OK


def _addr(a) -> str:
    return ".".join(str(i) for i in a)


def cmd_biideals(args, cfg):
    f = parse_basis(args.expr, None, cfg.alphabet)
    rows = []
    for ideal in fo.proper_biideals(f):
        addrs = sorted(ideal)
        rows.append({
            "vertices": [_addr(a) for a in addrs],
            "labels": [fo.label_at(f, a) for a in addrs],
            "restriction": str(fo.restrict(f, ideal)),
        })
    if cfg.format == "json":
        print(json.dumps({"schema": "eps-forest/1", "biideals": rows}, sort_keys=True))
    else:
        for r in rows:
            body = ", ".join(f"{v}:{l}" for v, l in zip(r["vertices"], r["labels"]))
            print(f"{{{body}}}  {r['restriction']}")
    return EXIT_OK


def cmd_eval(args, cfg):
    target = target_from_name(args.target or cfg.target, cfg.alphabet)
    a = parse_lincomb(args.expr, cfg.alphabet)
    emit(evaluate_lc(a, target), cfg)
    return EXIT_OK


# -- check suites ---------------------------------------------------------------------

@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    total: int = 0
    first_failure: str | None = None

    def add(self, ok: bool, detail):
        self.total += 1
        if ok:
            self.passed += 1
        elif self.first_failure is None:
            self.first_failure = str(detail() if callable(detail) else detail)

    @property
    def ok(self) -> bool:
        return self.passed == self.total


def _forest_sample(cfg: CliConfig, salt: int, count: int | None = None, max_vertices=None):
    gen = RandomForestGen(
        seed=cfg.seed * 1000 + salt,
        max_vertices=max_vertices or cfg.max_vertices,
        alphabet=cfg.alphabet,
    )
    return gen.forests(count or cfg.samples)


def _basis_sample(inst: EpsInstance, cfg: CliConfig, salt: int, count: int | None = None):
    count = count or cfg.samples
    rng = random.Random(cfg.seed * 1000 + salt)
    kind = inst.kind if inst.kind != "trivial" else inst.params.get("base_kind", "forest")
    if kind == "poly":
        return [random_monomial(rng, 8) for _ in range(count)]
    if kind == "divdiff":
        return [random_word(rng, 6) for _ in range(count)]
    if kind == "quiver":
        return [random_path(rng, inst.params["quiver"], 5) for _ in range(count)]
    alphabet = inst.params.get("alphabet", cfg.alphabet)
    gen = RandomForestGen(seed=cfg.seed * 1000 + salt, max_vertices=cfg.max_vertices, alphabet=alphabet)
    return gen.forests(count)


def run_suite(name: str, cfg: CliConfig) -> SuiteResult:
    inst = build_instance(cfg)
    res = SuiteResult(name)
    if name == "coassoc":
        for b in _basis_sample(inst, cfg, 1):
            chk = check_coassoc(inst, b)
            res.add(chk.ok, chk)
    elif name == "compat":
        xs, ys = _basis_sample(inst, cfg, 2), _basis_sample(inst, cfg, 3)
        for a, b in zip(xs, ys):
            chk = check_compat(inst, a, b)
            res.add(chk.ok, chk)
    elif name == "cocycle":
        if inst.kind != "forest":
            raise ValueError("cocycle suite applies to the forest instance only")
        for f in _forest_sample(cfg, 4):
            for w in cfg.Omega:
                chk = check_cocycle(w, f)
                res.add(chk.ok, chk)
    elif name == "oracle":
        if inst.kind != "forest":
            raise ValueError("oracle suite applies to the forest instance only")
        for f in _forest_sample(cfg, 5):
            ok = forest_coproduct(f) == forest_coproduct_recursive(f)
            res.add(ok, lambda f=f: f"combinatorial and recursive coproducts differ on {f}")
    elif name == "nilpotency":
        if inst.nilpotency_bound is None:
            raise AntipodeUnavailable(f"instance {inst.name} has no locally nilpotent D")
        for b in _basis_sample(inst, cfg, 6):
            n = inst.nilpotency_bound(b)
            res.add(check_conv_nilpotency(inst, b, n), lambda b=b, n=n: f"D^(n+1) does not vanish on {b} (n={n})")
    elif name == "antipode":
        for b in _basis_sample(inst, cfg, 7):
            for chk in (*check_antipode_axioms(inst, b), *check_bijective(inst, b)):
                res.add(chk.ok, chk)
        if inst.kind == "divdiff":
            for n in range(1, 9):
                ok = divided_diff_antipode_closed(n) == antipode(inst, Word((n,)))
                res.add(ok, f"closed form differs from the series on x{n}")
    elif name in ("prelie", "jacobi"):
        check = check_prelie_identity if name == "prelie" else check_jacobi
        a, b, c = (_basis_sample(inst, cfg, s) for s in (8, 9, 10))
        for triple in zip(a, b, c):
            chk = check(inst, *triple)
            res.add(chk.ok, chk)
        if name == "prelie" and inst.kind == "forest":
            for f1, f2 in zip(_forest_sample(cfg, 11), _forest_sample(cfg, 12)):
                chk = forest_prelie_matches(f1, f2, inst)
                res.add(chk.ok, chk)
    elif name == "operated":
        sample = _forest_sample(cfg, 13)
        for tname in ("identity", "relabel:" + f"{cfg.X[0]}={cfg.X[-1]}", "collapse"):
            target = target_from_name(tname, cfg.alphabet)
            for rep in (check_operated_morphism(target, sample), check_hopf_morphism_compat(target, sample)):
                res.add(rep.ok, rep)
        rep = check_operated_morphism(target_from_name("broken", cfg.alphabet), sample)
        res.add(not rep.ok, "the broken target was not rejected")
    else:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES + ('all',))}")
    return res


def cmd_check(args, cfg):
    names = SUITES if args.suite == "all" else (args.suite,)
    if args.suite != "all" and args.suite not in SUITES:
        raise ValueError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES + ('all',))}")
    results = []
    inst = build_instance(cfg)
    for name in names:
        if args.suite == "all" and not _suite_applies(name, inst):
            print(f"{name}: skipped (not applicable to {inst.name})")
            continue
        r = run_suite(name, cfg)
        results.append(r)
        status = "pass" if r.ok else "FAIL"
        line = f"{r.name}: {r.passed}/{r.total} {status}"
        if r.first_failure:
            line += f"; first counterexample: {r.first_failure}"
        print(line)
    return EXIT_OK if all(r.ok for r in results) else EXIT_FAIL


def _suite_applies(name: str, inst: EpsInstance) -> bool:
    if name in ("cocycle", "oracle", "operated"):
        return inst.kind == "forest"
    if name in ("nilpotency", "antipode"):
        return inst.nilpotency_bound is not None
    return True


# -- entry point ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--X", help="comma-separated leaf labels (default x,y,z)")
    common.add_argument("--Omega", help="comma-separated operator labels (default a,b,w)")
    common.add_argument("--instance", help="forest | poly:LAMBDA | divdiff | quiver:FILE | foissy | trivial")
    common.add_argument("--format", choices=("text", "json"))
    common.add_argument("--seed", type=int)
    common.add_argument("--samples", type=int)
    common.add_argument("--max-vertices", dest="max_vertices", type=int)
    common.add_argument("--config", help="JSON file mirroring the flags (falls back to $EPS_CONFIG)")

    p = argparse.ArgumentParser(prog="eps", description="Exact computations in weighted infinitesimal bialgebras.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("coproduct", parents=[common], help="print the coproduct of an element")
    s.add_argument("expr")
    s.set_defaults(func=cmd_coproduct)

    s = sub.add_parser("antipode", parents=[common], help="print the antipode of an element")
    s.add_argument("expr")
    s.set_defaults(func=cmd_antipode)

    for name, func in (("prelie", cmd_prelie), ("bracket", cmd_bracket)):
        s = sub.add_parser(name, parents=[common], help=f"print the {name} of two elements")
        s.add_argument("left")
        s.add_argument("right")
        s.set_defaults(func=func)

    s = sub.add_parser("biideals", parents=[common], help="list the proper biideals of a forest")
    s.add_argument("expr")
    s.set_defaults(func=cmd_biideals)

    s = sub.add_parser("eval", parents=[common], help="evaluate forests in an operated target")
    s.add_argument("expr")
    s.add_argument("--target", help="identity | relabel:x=y,... | collapse | zero | broken")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("check", parents=[common], help="run a property suite")
    s.add_argument("suite", help=", ".join(SUITES + ("all",)))
    s.set_defaults(func=cmd_check)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        cfg = load_config(args)
        return args.func(args, cfg)
    except AntipodeUnavailable as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except (ParseError, SchemaError, BindingError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
