"""Text grammar, canonical printer and JSON encoding.

Grammar (whitespace separates sibling trees)::

    forest  := "1" | tree {tree}
    tree    := label ["(" forest ")"]
    lincomb := ["-"] term {("+" | "-") term}
    term    := [rational "*"] basis
    tensor  := ["-"] tterm {("+" | "-") tterm}
    tterm   := [rational "*"] leg "#" leg
    leg     := basis | "(" lincomb ")"

``basis`` is a forest by default; other instances plug in their own basis
grammar (``x^3`` for k[x], ``x1 x2`` for words, ``a b`` or ``[v]`` for paths).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import forest as fo
from .forest import Forest, Tree, ONE
from .freemod import LinComb, ZERO, lc_tensor, lsum, format_rat, rat

SCHEMA = "eps-forest/1"

_TOKEN = re.compile(
    r"(?P<ws>\s+)|(?P<ident>[A-Za-z_][A-Za-z0-9_']*)|(?P<num>\d+)|(?P<sym>[()\[\]#*/+^-])"
)


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int, expected=()):
        self.message = message
        self.line = line
        self.column = column
        self.expected = frozenset(expected)
        exp = f" (expected {', '.join(sorted(self.expected))})" if self.expected else ""
        super().__init__(f"{line}:{column}: {message}{exp}")


@dataclass(frozen=True)
class Token:
    kind: str  # ident, num, sym, eof
    text: str
    line: int
    column: int


def tokenize(src: str) -> list[Token]:
    out = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        col = pos - line_start + 1
        if m is None:
            raise ParseError(f"unexpected character {src[pos]!r}", line, col)
        kind = m.lastgroup
        text = m.group()
        if kind == "ws":
            nl = text.count("\n")
            if nl:
                line += nl
                line_start = pos + text.rindex("\n") + 1
        else:
            out.append(Token(kind, text, line, col))
        pos = m.end()
    out.append(Token("eof", "", line, pos - line_start + 1))
    return out


class Parser:
    def __init__(self, src: str):
        self.src = src
        self.toks = tokenize(src)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def at(self, text: str) -> bool:
        return self.tok.kind in ("sym", "num") and self.tok.text == text

    def advance(self) -> Token:
        t = self.tok
        if t.kind != "eof":
            self.i += 1
        return t

    def error(self, message: str, expected=(), tok: Token | None = None) -> ParseError:
        t = tok or self.tok
        return ParseError(message, t.line, t.column, expected)

    def expect(self, text: str) -> Token:
        if not self.at(text):
            found = self.tok.text or "end of input"
            raise self.error(f"found {found!r}", {repr(text)})
        return self.advance()

    def finish(self):
        if self.tok.kind != "eof":
            raise self.error(f"unexpected {self.tok.text!r}", {"end of input"})


# -- basis grammars -------------------------------------------------------------

def _forest_basis(alphabet: fo.Alphabet):
    def parse(p: Parser) -> Forest:
        if p.at("1"):
            p.advance()
            return ONE
        if p.tok.kind != "ident":
            raise p.error(f"found {p.tok.text or 'end of input'!r}", {"label", "'1'"})
        trees = []
        while p.tok.kind == "ident":
            trees.append(_tree(p, alphabet))
        return Forest(trees)

    return parse


def _tree(p: Parser, alphabet: fo.Alphabet) -> Tree:
    t = p.advance()
    try:
        deco = alphabet.decoration(t.text)
    except KeyError:
        raise p.error(f"unknown label {t.text!r}", tok=t) from None
    if not p.at("("):
        return Tree(deco)
    if deco.kind != fo.OMEGA:
        raise p.error(f"X-label {t.text!r} cannot have children", tok=t)
    p.advance()
    if p.at("1"):
        p.advance()
        children = []
    else:
        children = []
        if p.tok.kind != "ident":
            raise p.error(f"found {p.tok.text or 'end of input'!r}", {"label", "'1'"})
        while p.tok.kind == "ident":
            children.append(_tree(p, alphabet))
    p.expect(")")
    return Tree(deco, children)


def _poly_basis(p: Parser):
    from .instances import Monomial

    if p.at("1"):
        p.advance()
        return Monomial(0)
    t = p.tok
    if t.kind != "ident" or t.text != "x":
        raise p.error(f"found {t.text or 'end of input'!r}", {"'1'", "'x'"})
    p.advance()
    if p.at("^"):
        p.advance()
        if p.tok.kind != "num":
            raise p.error("exponent must be a nonnegative integer", {"integer"})
        return Monomial(int(p.advance().text))
    return Monomial(1)


_LETTER = re.compile(r"x([1-9][0-9]*)$")


def _word_basis(p: Parser):
    from .instances import Word

    if p.at("1"):
        p.advance()
        return Word(())
    letters = []
    while p.tok.kind == "ident":
        m = _LETTER.match(p.tok.text)
        if not m:
            raise p.error(f"{p.tok.text!r} is not a generator x1, x2, ...")
        letters.append(int(m.group(1)))
        p.advance()
    if not letters:
        raise p.error(f"found {p.tok.text or 'end of input'!r}", {"'1'", "generator"})
    return Word(tuple(letters))


def _path_basis(quiver):
    from .instances import Path, trivial_path

    def parse(p: Parser):
        if p.at("["):
            p.advance()
            t = p.tok
            if t.kind != "ident" or t.text not in quiver.vertices:
                raise p.error(f"unknown vertex {t.text!r}", {"vertex"})
            p.advance()
            p.expect("]")
            return trivial_path(t.text)
        start = p.tok
        arrows = []
        while p.tok.kind == "ident":
            try:
                arrows.append(quiver.arrow(p.tok.text))
            except KeyError:
                raise p.error(f"unknown arrow {p.tok.text!r}") from None
            p.advance()
        if not arrows:
            raise p.error(f"found {p.tok.text or 'end of input'!r}", {"'['", "arrow"})
        try:
            return Path(tuple(arrows))
        except ValueError as exc:
            raise p.error(str(exc), tok=start) from None

    return parse


def basis_parser(inst=None, alphabet: fo.Alphabet | None = None) -> Callable[[Parser], object]:
    """The basis grammar matching an instance (forests when ``inst`` is None)."""
    kind = inst.kind if inst is not None else "forest"
    if kind == "trivial":
        kind = inst.params.get("base_kind", "forest")
    if kind == "poly":
        return _poly_basis
    if kind == "divdiff":
        return _word_basis
    if kind == "quiver":
        return _path_basis(inst.params["quiver"])
    if inst is not None:
        # an instance with its own label set (Foissy) overrides the caller's
        alphabet = inst.params.get("alphabet", alphabet)
    return _forest_basis(alphabet or fo.Alphabet())


# -- linear combinations -----------------------------------------------------------

def _coefficient(p: Parser) -> Fraction:
    """Optional ``p/q *`` prefix; returns 1 when absent."""
    if p.tok.kind != "num":
        return Fraction(1)
    nxt = p.peek()
    if not (nxt.kind == "sym" and nxt.text in "*/"):
        return Fraction(1)
    num = int(p.advance().text)
    den = 1
    if p.at("/"):
        p.advance()
        if p.tok.kind != "num":
            raise p.error("malformed rational", {"integer"})
        den = int(p.advance().text)
        if den == 0:
            raise p.error("zero denominator")
    p.expect("*")
    return Fraction(num, den)


def _signed_terms(p: Parser, term: Callable[[Parser], LinComb]) -> LinComb:
    if p.at("0") and p.peek().text not in ("*", "/"):
        p.advance()
        return ZERO
    sign = 1
    if p.at("-"):
        p.advance()
        sign = -1
    parts = [(term(p), sign)]
    while p.at("+") or p.at("-"):
        sign = 1 if p.advance().text == "+" else -1
        parts.append((term(p), sign))
    return lsum(parts)


def _lincomb(p: Parser, basis) -> LinComb:
    def term(p):
        c = _coefficient(p)
        return LinComb.basis(basis(p), c)

    return _signed_terms(p, term)


def _leg(p: Parser, basis) -> LinComb:
    if p.at("("):
        p.advance()
        v = _lincomb(p, basis)
        p.expect(")")
        return v
    return LinComb.basis(basis(p))


def _tensor(p: Parser, basis) -> LinComb:
    def term(p):
        c = _coefficient(p)
        left = _leg(p, basis)
        p.expect("#")
        right = _leg(p, basis)
        return lc_tensor(left, right).scale(c)

    return _signed_terms(p, term)


def parse_forest(s: str, alphabet: fo.Alphabet | None = None) -> Forest:
    p = Parser(s)
    f = _forest_basis(alphabet or fo.Alphabet())(p)
    p.finish()
    return f


def parse_basis(s: str, inst=None, alphabet=None):
    p = Parser(s)
    b = basis_parser(inst, alphabet)(p)
    p.finish()
    return b


def parse_lincomb(s: str, alphabet: fo.Alphabet | None = None, inst=None) -> LinComb:
    p = Parser(s)
    v = _lincomb(p, basis_parser(inst, alphabet))
    p.finish()
    return v


def parse_tensor(s: str, alphabet: fo.Alphabet | None = None, inst=None) -> LinComb:
    p = Parser(s)
    v = _tensor(p, basis_parser(inst, alphabet))
    p.finish()
    return v


# -- printing ---------------------------------------------------------------------

def format_basis(b) -> str:
    if isinstance(b, tuple) and not hasattr(b, "sort_key"):
        return " # ".join(format_basis(x) for x in b)
    return str(b)


def format_lincomb(v: LinComb) -> str:
    """Canonical text: terms in basis order, "0" for zero, "3/2 * b" for scaled terms."""
    if not v:
        return "0"
    out = []
    for i, (b, c) in enumerate(v.sorted_items()):
        mag = abs(c)
        body = format_basis(b) if mag == 1 else f"{format_rat(mag)} * {format_basis(b)}"
        if i == 0:
            out.append(f"- {body}" if c < 0 else body)
        else:
            out.append(f"{'-' if c < 0 else '+'} {body}")
    return " ".join(out)


def format_value(v) -> str:
    if isinstance(v, LinComb):
        return format_lincomb(v)
    return format_basis(v)


# -- JSON -------------------------------------------------------------------------

class SchemaError(ValueError):
    def __init__(self, message: str, pointer: str):
        self.pointer = pointer or "/"
        super().__init__(f"{self.pointer}: {message}")


def _tree_json(t: Tree) -> dict:
    return {"d": t.root.label, "c": [_tree_json(c) for c in t.children]}


def forest_json(f: Forest) -> list:
    return [_tree_json(t) for t in f.trees]


def _elem_json(b):
    if isinstance(b, Forest):
        return {"forest": forest_json(b)}
    return {"text": str(b)}


def to_json(value) -> dict:
    """Forest, basis element, LinComb or LinComb over pairs (tensor) to a JSON document."""
    doc: dict = {"schema": SCHEMA}
    if isinstance(value, LinComb):
        terms = []
        for b, c in value.sorted_items():
            if isinstance(b, tuple) and not hasattr(b, "sort_key"):
                if len(b) != 2:
                    raise ValueError("only tensors of two legs are encodable")
                elem = {"left": _elem_json(b[0]), "right": _elem_json(b[1])}
            else:
                elem = _elem_json(b)
            terms.append({"coeff": format_rat(c), "elem": elem})
        doc["terms"] = terms
        return doc
    doc.update(_elem_json(value))
    return doc


def _tree_from(node, alphabet: fo.Alphabet, ptr: str) -> Tree:
    if not isinstance(node, dict):
        raise SchemaError("tree node must be an object", ptr)
    if set(node) - {"d", "c"} or "d" not in node:
        raise SchemaError("tree node needs exactly 'd' and optional 'c'", ptr)
    label = node["d"]
    if not isinstance(label, str):
        raise SchemaError("label must be a string", ptr + "/d")
    try:
        deco = alphabet.decoration(label)
    except KeyError:
        raise SchemaError(f"unknown label {label!r}", ptr + "/d") from None
    kids = node.get("c", [])
    if not isinstance(kids, list):
        raise SchemaError("children must be an array", ptr + "/c")
    if kids and deco.kind != fo.OMEGA:
        raise SchemaError(f"X-label {label!r} cannot have children", ptr + "/c")
    return Tree(deco, [_tree_from(k, alphabet, f"{ptr}/c/{i}") for i, k in enumerate(kids)])


def _forest_from(arr, alphabet, ptr) -> Forest:
    if not isinstance(arr, list):
        raise SchemaError("forest must be an array", ptr)
    return Forest([_tree_from(t, alphabet, f"{ptr}/{i}") for i, t in enumerate(arr)])


def _elem_from(obj, alphabet, inst, ptr):
    if not isinstance(obj, dict):
        raise SchemaError("element must be an object", ptr)
    if "forest" in obj:
        return _forest_from(obj["forest"], alphabet, ptr + "/forest")
    if "text" in obj:
        if not isinstance(obj["text"], str):
            raise SchemaError("text must be a string", ptr + "/text")
        try:
            return parse_basis(obj["text"], inst, alphabet)
        except ParseError as exc:
            raise SchemaError(str(exc), ptr + "/text") from None
    raise SchemaError("element needs 'forest' or 'text'", ptr)


def from_json(doc, alphabet: fo.Alphabet | None = None, inst=None):
    """Inverse of :func:`to_json`. Decoration kinds come from ``alphabet``."""
    alphabet = alphabet or (inst.params.get("alphabet") if inst is not None else None) or fo.Alphabet()
    if not isinstance(doc, dict):
        raise SchemaError("document must be an object", "")
    if doc.get("schema", SCHEMA) != SCHEMA:
        raise SchemaError(f"unsupported schema {doc.get('schema')!r}", "/schema")
    if "terms" in doc:
        terms = doc["terms"]
        if not isinstance(terms, list):
            raise SchemaError("terms must be an array", "/terms")
        pairs = []
        for i, t in enumerate(terms):
            ptr = f"/terms/{i}"
            if not isinstance(t, dict) or "coeff" not in t or "elem" not in t:
                raise SchemaError("term needs 'coeff' and 'elem'", ptr)
            if not isinstance(t["coeff"], str):
                raise SchemaError("coefficient must be a string", ptr + "/coeff")
            try:
                c = rat(t["coeff"])
            except ValueError as exc:
                raise SchemaError(str(exc), ptr + "/coeff") from None
            e = t["elem"]
            if isinstance(e, dict) and "left" in e:
                if "right" not in e:
                    raise SchemaError("tensor needs 'right'", ptr + "/elem")
                key = (
                    _elem_from(e["left"], alphabet, inst, ptr + "/elem/left"),
                    _elem_from(e["right"], alphabet, inst, ptr + "/elem/right"),
                )
            else:
                key = _elem_from(e, alphabet, inst, ptr + "/elem")
            pairs.append((key, c))
        return LinComb(pairs)
    return _elem_from(doc, alphabet, inst, "")
