"""A small predicate language over partition parts and multiplicities.

Atoms are integer-linear comparisons over indexed symbols (``L2``,
``Klast``, ``Lsecondlast``, ``L[i]`` under a quantifier), parity tests
``odd(x)`` / ``even(x)``, comparisons against ``dim``, and single-level
``forall i:`` / ``exists i:`` quantifiers whose body may test the index
itself (``i = 1``, ``i = dim``).  Connectives are ``and``, ``or``,
``not`` with parentheses; a quantifier body extends as far right as
possible, so parenthesize it when it sits inside a conjunction.

Out-of-range indices (``L3`` on a two-part partition) make the
containing atom false rather than raising, which keeps every predicate
total on valid partitions.

Two evaluation routes exist on purpose: :meth:`SetPredicate.member`
walks the tree, while calling the predicate uses a compiled closure.
They are cross-checked by the test suite.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable

from .core import Partition


class DslError(ValueError):
    """Base class for predicate-language errors."""


class DslSyntaxError(DslError):
    """Malformed predicate text; carries the character position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnknownSymbolError(DslError):
    """An identifier is not a recognized symbol."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


# --- AST -------------------------------------------------------------

@dataclass(frozen=True)
class Sym:
    """An indexed symbol: a part, a multiplicity, ``dim`` or the bound index.

    ``index`` is a 1-based integer, "last", "secondlast", or "bound"
    for the quantifier variable; it is None for kinds "dim" and "idx".
    """

    kind: str
    index: int | str | None = None


@dataclass(frozen=True)
class LinExpr:
    """An integer-linear combination of symbols plus a constant."""

    terms: tuple[tuple[int, Sym], ...]
    const: int = 0


@dataclass(frozen=True)
class Lit:
    value: bool


@dataclass(frozen=True)
class Cmp:
    lhs: LinExpr
    op: str
    rhs: LinExpr


@dataclass(frozen=True)
class Parity:
    sym: Sym
    odd: bool


@dataclass(frozen=True)
class Not:
    item: "Node"


@dataclass(frozen=True)
class And:
    items: tuple["Node", ...]


@dataclass(frozen=True)
class Or:
    items: tuple["Node", ...]


@dataclass(frozen=True)
class Quant:
    forall: bool
    body: "Node"


@dataclass(frozen=True)
class Dynamic:
    """A membership test given procedurally, e.g. by iterating a map.

    Not expressible in the grammar; formats as its label.
    """

    label: str
    fn: Callable[[tuple, tuple, int], bool]


Node = Lit | Cmp | Parity | Not | And | Or | Quant | Dynamic


# --- reference evaluation ---------------------------------------------

def _position(sym: Sym, m: int, i: int | None) -> int | None:
    idx = sym.index
    if idx == "bound":
        j = i
    elif idx == "last":
        j = m
    elif idx == "secondlast":
        j = m - 1
    else:
        j = idx
    if j is None or j < 1 or j > m:
        return None
    return j - 1


def _lin_value(expr: LinExpr, L, K, m: int, i: int | None) -> int | None:
    total = expr.const
    for coef, sym in expr.terms:
        if sym.kind == "dim":
            total += coef * m
        elif sym.kind == "idx":
            if i is None:
                return None
            total += coef * i
        else:
            pos = _position(sym, m, i)
            if pos is None:
                return None
            total += coef * (L[pos] if sym.kind == "L" else K[pos])
    return total


_CMP = {
    "<": lambda a, b: a < b,
    "<=": lambda a, b: a <= b,
    "=": lambda a, b: a == b,
    ">=": lambda a, b: a >= b,
    ">": lambda a, b: a > b,
}


def evaluate(node: Node, L, K, m: int, i: int | None = None) -> bool:
    """Tree-walking evaluation; the reference semantics."""
    if isinstance(node, Lit):
        return node.value
    if isinstance(node, Cmp):
        lv = _lin_value(node.lhs, L, K, m, i)
        rv = _lin_value(node.rhs, L, K, m, i)
        if lv is None or rv is None:
            return False
        return _CMP[node.op](lv, rv)
    if isinstance(node, Parity):
        if node.sym.kind == "dim":
            v = m
        elif node.sym.kind == "idx":
            if i is None:
                return False
            v = i
        else:
            pos = _position(node.sym, m, i)
            if pos is None:
                return False
            v = L[pos] if node.sym.kind == "L" else K[pos]
        return v % 2 == (1 if node.odd else 0)
    if isinstance(node, Not):
        return not evaluate(node.item, L, K, m, i)
    if isinstance(node, And):
        return all(evaluate(item, L, K, m, i) for item in node.items)
    if isinstance(node, Or):
        return any(evaluate(item, L, K, m, i) for item in node.items)
    if isinstance(node, Quant):
        gen = (evaluate(node.body, L, K, m, j) for j in range(1, m + 1))
        return all(gen) if node.forall else any(gen)
    if isinstance(node, Dynamic):
        return node.fn(L, K, m)
    raise TypeError(f"unknown node {node!r}")


# --- compilation to a closure ------------------------------------------

def _emit_sym(sym: Sym) -> tuple[str | None, str]:
    if sym.kind == "dim":
        return None, "m"
    if sym.kind == "idx":
        return None, "i"
    seq = sym.kind
    idx = sym.index
    if idx == "bound":
        return None, f"{seq}[i-1]"
    if idx == "last":
        return None, f"{seq}[m-1]"
    if idx == "secondlast":
        return "m >= 2", f"{seq}[m-2]"
    if idx == 1:
        return None, f"{seq}[0]"
    return f"m >= {idx}", f"{seq}[{idx - 1}]"


def _emit_lin(expr: LinExpr) -> tuple[list[str], str]:
    guards: list[str] = []
    pieces: list[str] = []
    for coef, sym in expr.terms:
        g, v = _emit_sym(sym)
        if g is not None:
            guards.append(g)
        pieces.append(v if coef == 1 else f"{coef}*{v}")
    if expr.const or not pieces:
        pieces.append(str(expr.const))
    return guards, " + ".join(pieces)


def _emit(node: Node, dyn: dict) -> str:
    if isinstance(node, Lit):
        return "True" if node.value else "False"
    if isinstance(node, Cmp):
        lg, lv = _emit_lin(node.lhs)
        rg, rv = _emit_lin(node.rhs)
        op = "==" if node.op == "=" else node.op
        clauses = sorted(set(lg + rg)) + [f"({lv}) {op} ({rv})"]
        return "(" + " and ".join(clauses) + ")"
    if isinstance(node, Parity):
        g, v = _emit_sym(node.sym)
        test = f"({v}) % 2 == {1 if node.odd else 0}"
        return f"({g} and {test})" if g else f"({test})"
    if isinstance(node, Not):
        return f"(not {_emit(node.item, dyn)})"
    if isinstance(node, And):
        return "(" + " and ".join(_emit(item, dyn) for item in node.items) + ")"
    if isinstance(node, Or):
        return "(" + " or ".join(_emit(item, dyn) for item in node.items) + ")"
    if isinstance(node, Quant):
        fn = "all" if node.forall else "any"
        return f"{fn}({_emit(node.body, dyn)} for i in range(1, m + 1))"
    if isinstance(node, Dynamic):
        name = f"_dyn{len(dyn)}"
        dyn[name] = node.fn
        return f"{name}(L, K, m)"
    raise TypeError(f"unknown node {node!r}")


def compile_node(root: Node) -> Callable[[tuple, tuple, int], bool]:
    """Compile the tree to a closure over (parts, mults, dim)."""
    namespace: dict = {}
    body = _emit(root, namespace)
    src = f"def _pred(L, K, m):\n    return {body}\n"
    exec(src, namespace)
    return namespace["_pred"]


# --- formatting --------------------------------------------------------

def _format_sym(sym: Sym) -> str:
    if sym.kind == "dim":
        return "dim"
    if sym.kind == "idx":
        return "i"
    idx = sym.index
    if idx == "bound":
        return f"{sym.kind}[i]"
    return f"{sym.kind}{idx}"


def _format_lin(expr: LinExpr) -> str:
    out = ""
    for coef, sym in expr.terms:
        mag = abs(coef)
        piece = _format_sym(sym) if mag == 1 else f"{mag}*{_format_sym(sym)}"
        if not out:
            out = piece if coef > 0 else f"-{piece}"
        else:
            out += f" + {piece}" if coef > 0 else f" - {piece}"
    if expr.const or not out:
        c = expr.const
        if not out:
            out = str(c)
        else:
            out += f" + {c}" if c > 0 else f" - {-c}"
    return out


def format_node(node: Node, level: int = 0) -> str:
    """Canonical text; parse(format(x)) reproduces x for grammar trees."""
    if isinstance(node, Lit):
        return "true" if node.value else "false"
    if isinstance(node, Cmp):
        return f"{_format_lin(node.lhs)} {node.op} {_format_lin(node.rhs)}"
    if isinstance(node, Parity):
        return f"{'odd' if node.odd else 'even'}({_format_sym(node.sym)})"
    if isinstance(node, Not):
        return f"not {format_node(node.item, 3)}"
    if isinstance(node, And):
        text = " and ".join(format_node(item, 2) for item in node.items)
        return f"({text})" if level > 2 else text
    if isinstance(node, Or):
        text = " or ".join(format_node(item, 1) for item in node.items)
        return f"({text})" if level > 1 else text
    if isinstance(node, Quant):
        text = f"{'forall' if node.forall else 'exists'} i: {format_node(node.body, 0)}"
        return f"({text})" if level > 0 else text
    if isinstance(node, Dynamic):
        return node.label
    raise TypeError(f"unknown node {node!r}")


# --- the public predicate object ----------------------------------------

class SetPredicate:
    """A membership test for a set of partitions.

    Calling the predicate on a Partition uses the compiled closure;
    :meth:`member` uses the reference evaluator.  Predicates combine
    with ``&``, ``|`` and ``~``.
    """

    __slots__ = ("root", "_fn")

    def __init__(self, root: Node):
        self.root = root
        self._fn = None

    @property
    def fn(self) -> Callable[[tuple, tuple, int], bool]:
        """The compiled (parts, mults, dim) -> bool closure."""
        if self._fn is None:
            self._fn = compile_node(self.root)
        return self._fn

    def __call__(self, p: Partition) -> bool:
        return self.fn(p.parts, p.mults, len(p.parts))

    def member(self, p: Partition) -> bool:
        """Reference evaluation, independent of the compiler."""
        return evaluate(self.root, p.parts, p.mults, len(p.parts))

    def source(self) -> str:
        return format_node(self.root)

    def __and__(self, other: "SetPredicate") -> "SetPredicate":
        return SetPredicate(And(_flatten(And, (self.root, other.root))))

    def __or__(self, other: "SetPredicate") -> "SetPredicate":
        return SetPredicate(Or(_flatten(Or, (self.root, other.root))))

    def __invert__(self) -> "SetPredicate":
        return SetPredicate(Not(self.root))

    def __eq__(self, other) -> bool:
        return isinstance(other, SetPredicate) and self.root == other.root

    def __hash__(self) -> int:
        return hash(self.root)

    def __repr__(self) -> str:
        return f"SetPredicate({self.source()!r})"


TRUE = SetPredicate(Lit(True))
FALSE = SetPredicate(Lit(False))


# --- parser --------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"(?P<int>\d+)|(?P<ident>[A-Za-z][A-Za-z0-9]*)"
    r"|(?P<op><=|>=|<|>|=|\(|\)|\[|\]|:|\*|\+|-)"
)

_KEYWORDS = {
    "and", "or", "not", "forall", "exists", "odd", "even", "true", "false",
}

_REL_OPS = {"<", "<=", "=", ">=", ">"}

_SYM_RE = re.compile(r"^([LK])(\d+|last|secondlast|first)?$")


def _flatten(cls, items):
    # associative connectives are kept flat so equivalent texts parse
    # to identical trees
    flat = []
    for item in items:
        if isinstance(item, cls):
            flat.extend(item.items)
        else:
            flat.append(item)
    return tuple(flat)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise DslSyntaxError(f"unexpected character {text[pos]!r}", pos)
        tokens.append((m.lastgroup, m.group(), pos))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str, resolve=None):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0
        self.bound: str | None = None
        # optional hook mapping a set name to an AST root, so callers
        # can splice registered sets into predicate text
        self.resolve = resolve

    def peek(self) -> tuple[str, str, int] | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def advance(self) -> tuple[str, str, int]:
        tok = self.peek()
        if tok is None:
            raise DslSyntaxError("unexpected end of input", len(self.text))
        self.pos += 1
        return tok

    def expect_op(self, op: str) -> None:
        tok = self.peek()
        if tok is None or tok[0] != "op" or tok[1] != op:
            where = tok[2] if tok else len(self.text)
            raise DslSyntaxError(f"expected {op!r}", where)
        self.pos += 1

    def _at_keyword(self, word: str) -> bool:
        tok = self.peek()
        return tok is not None and tok[0] == "ident" and tok[1] == word

    def parse(self) -> Node:
        node = self.parse_or()
        tok = self.peek()
        if tok is not None:
            raise DslSyntaxError(f"unexpected trailing {tok[1]!r}", tok[2])
        return node

    def parse_or(self) -> Node:
        items = [self.parse_and()]
        while self._at_keyword("or"):
            self.advance()
            items.append(self.parse_and())
        return items[0] if len(items) == 1 else Or(_flatten(Or, items))

    def parse_and(self) -> Node:
        items = [self.parse_not()]
        while self._at_keyword("and"):
            self.advance()
            items.append(self.parse_not())
        return items[0] if len(items) == 1 else And(_flatten(And, items))

    def parse_not(self) -> Node:
        if self._at_keyword("not"):
            self.advance()
            return Not(self.parse_not())
        return self.parse_atom()

    def parse_atom(self) -> Node:
        tok = self.peek()
        if tok is None:
            raise DslSyntaxError("unexpected end of input", len(self.text))
        kind, text, where = tok
        if kind == "op" and text == "(":
            self.advance()
            node = self.parse_or()
            self.expect_op(")")
            return node
        if kind == "ident" and text in ("true", "false"):
            self.advance()
            return Lit(text == "true")
        if kind == "ident" and text in ("odd", "even"):
            self.advance()
            self.expect_op("(")
            sym = self.parse_sym()
            self.expect_op(")")
            return Parity(sym, odd=(text == "odd"))
        if kind == "ident" and text in ("forall", "exists"):
            return self.parse_quant()
        if (
            kind == "ident"
            and self.resolve is not None
            and text not in _KEYWORDS
            and text != "dim"
            and (self.bound is None or text != self.bound)
            and _SYM_RE.match(text) is None
        ):
            return self.parse_named_set()
        return self.parse_cmp()

    def parse_named_set(self) -> Node:
        _, text, where = self.advance()
        name = text
        nxt = self.peek()
        if nxt is not None and nxt[0] == "op" and nxt[1] == "(":
            after = self.tokens[self.pos + 1: self.pos + 3]
            if (
                len(after) == 2
                and after[0][0] == "int"
                and after[1][0] == "op"
                and after[1][1] == ")"
            ):
                self.pos += 3
                name = f"{text}({after[0][1]})"
        root = self.resolve(name)
        if root is None:
            raise UnknownSymbolError(f"unknown symbol or set name {name!r}", where)
        return root

    def parse_quant(self) -> Node:
        _, word, where = self.advance()
        if self.bound is not None:
            raise DslSyntaxError("nested quantifiers are not supported", where)
        tok = self.advance()
        if tok[0] != "ident" or tok[1] in _KEYWORDS:
            raise DslSyntaxError("expected an index variable name", tok[2])
        self.expect_op(":")
        self.bound = tok[1]
        try:
            body = self.parse_or()
        finally:
            self.bound = None
        return Quant(forall=(word == "forall"), body=body)

    def parse_cmp(self) -> Node:
        lhs = self.parse_sum()
        tok = self.peek()
        if tok is None or tok[0] != "op" or tok[1] not in _REL_OPS:
            where = tok[2] if tok else len(self.text)
            raise DslSyntaxError("expected a comparison operator", where)
        op = self.advance()[1]
        rhs = self.parse_sum()
        return Cmp(lhs, op, rhs)

    def parse_sum(self) -> LinExpr:
        terms: list[tuple[int, Sym]] = []
        const = 0
        sign = 1
        tok = self.peek()
        if tok is not None and tok[0] == "op" and tok[1] in ("+", "-"):
            sign = -1 if tok[1] == "-" else 1
            self.advance()
        while True:
            coef, sym = self.parse_term()
            if sym is None:
                const += sign * coef
            else:
                terms.append((sign * coef, sym))
            tok = self.peek()
            if tok is not None and tok[0] == "op" and tok[1] in ("+", "-"):
                sign = -1 if tok[1] == "-" else 1
                self.advance()
            else:
                break
        return LinExpr(tuple(terms), const)

    def parse_term(self) -> tuple[int, Sym | None]:
        tok = self.peek()
        if tok is None:
            raise DslSyntaxError("unexpected end of input", len(self.text))
        if tok[0] == "int":
            self.advance()
            coef = int(tok[1])
            nxt = self.peek()
            if nxt is not None and nxt[0] == "op" and nxt[1] == "*":
                self.advance()
                return coef, self.parse_sym()
            if nxt is not None and nxt[0] == "ident" and nxt[1] not in _KEYWORDS:
                return coef, self.parse_sym()
            return coef, None
        return 1, self.parse_sym()

    def parse_sym(self) -> Sym:
        tok = self.advance()
        kind, text, where = tok
        if kind != "ident":
            raise DslSyntaxError(f"expected a symbol, got {text!r}", where)
        if text in _KEYWORDS:
            raise DslSyntaxError(f"unexpected keyword {text!r}", where)
        if text == "dim":
            return Sym("dim")
        if self.bound is not None and text == self.bound:
            return Sym("idx")
        m = _SYM_RE.match(text)
        if m is None:
            raise UnknownSymbolError(f"unknown symbol {text!r}", where)
        base, rest = m.group(1), m.group(2)
        if rest is None:
            nxt = self.peek()
            if nxt is None or nxt[0] != "op" or nxt[1] != "[":
                raise UnknownSymbolError(
                    f"bare {base!r} needs an index like {base}1 or {base}[i]", where
                )
            self.advance()
            var = self.advance()
            if var[0] != "ident" or self.bound is None or var[1] != self.bound:
                raise UnknownSymbolError(
                    f"index variable {var[1]!r} is not bound by a quantifier", var[2]
                )
            self.expect_op("]")
            return Sym(base, "bound")
        if rest == "first":
            return Sym(base, 1)
        if rest in ("last", "secondlast"):
            return Sym(base, rest)
        idx = int(rest)
        if idx < 1:
            raise DslSyntaxError("indices start at 1", where)
        return Sym(base, idx)


def parse_predicate(text: str) -> SetPredicate:
    """Parse predicate text into a :class:`SetPredicate`."""
    return SetPredicate(_Parser(text).parse())
