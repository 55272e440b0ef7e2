"""Text formats: network rules, digraphs, cycle sets, DOT and JSON output.

Network files define one update rule per variable over a finite alphabet
(default binary).  Expressions support NOT/AND/XOR/OR (NOT and XOR binary
only), modular + and *, constants, parentheses, and inline lookup tables;
precedence is NOT > * > + > AND > XOR > OR, all binary operators associate
left.  AND and OR generalize to min and max on larger alphabets.

Digraph files list a vertex count and one edge per line.  Cycle-set files
list a bound, the labels of each level, and the rotation and repetition
tables positionally.  All emitters produce byte-identical output for equal
inputs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional, Sequence

from .attractor import TruncatedCycleSet
from .cycleset import validate
from .digraph import Digraph, make_digraph
from .wiring import (
    ProductFunction,
    decode_state,
    independent_lift,
    make_product_function,
    depends_on,
)


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int = 0):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


# --- expression tokenizer and parser -----------------------------------------

_KEYWORDS = {"not", "and", "or", "xor", "table"}
_SYMBOLS = "(),:=+*"

# binding strength of the binary operators, loosest first
_PRECEDENCE = {"or": 1, "xor": 2, "and": 3, "+": 4, "*": 5}


@dataclass(frozen=True)
class _Token:
    kind: str  # "name", "int", "keyword", or the symbol itself
    text: str
    line: int
    column: int


def _tokenize(text: str, line_no: int) -> list[_Token]:
    tokens = []
    i = 0
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c == "#":
            break
        col = i + 1
        if c in _SYMBOLS:
            tokens.append(_Token(c, c, line_no, col))
            i += 1
            continue
        if c.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(_Token("int", text[i:j], line_no, col))
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            kind = "keyword" if word.lower() in _KEYWORDS else "name"
            tokens.append(_Token(kind, word, line_no, col))
            i = j
            continue
        raise ParseError(f"unexpected character {c!r}", line_no, col)
    return tokens


class _ExprParser:
    def __init__(self, tokens: list[_Token], line_no: int):
        self.tokens = tokens
        self.pos = 0
        self.line_no = line_no

    def peek(self) -> Optional[_Token]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self) -> _Token:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of expression", self.line_no,
                             self.tokens[-1].column if self.tokens else 0)
        self.pos += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.next()
        if tok.kind != kind:
            raise ParseError(f"expected {kind!r}, found {tok.text!r}",
                             tok.line, tok.column)
        return tok

    def parse(self):
        expr = self.parse_binary(1)
        tok = self.peek()
        if tok is not None:
            raise ParseError(f"unexpected {tok.text!r}", tok.line, tok.column)
        return expr

    def parse_binary(self, min_prec: int):
        left = self.parse_unary()
        while True:
            tok = self.peek()
            if tok is None:
                return left
            op = tok.text.lower() if tok.kind == "keyword" else tok.kind
            prec = _PRECEDENCE.get(op)
            if prec is None or prec < min_prec:
                return left
            self.next()
            right = self.parse_binary(prec + 1)
            left = (op, left, right)

    def parse_unary(self):
        tok = self.peek()
        if tok is not None and tok.kind == "keyword" and tok.text.lower() == "not":
            self.next()
            return ("not", self.parse_unary())
        return self.parse_primary()

    def parse_primary(self):
        tok = self.next()
        if tok.kind == "int":
            return ("const", int(tok.text), tok.line, tok.column)
        if tok.kind == "(":
            inner = self.parse_binary(1)
            self.expect(")")
            return inner
        if tok.kind == "keyword" and tok.text.lower() == "table":
            self.expect("(")
            args = [self.parse_binary(1)]
            while self.peek() is not None and self.peek().kind == ",":
                self.next()
                args.append(self.parse_binary(1))
            self.expect(":")
            entries = []
            while self.peek() is not None and self.peek().kind == "int":
                entries.append(int(self.next().text))
            self.expect(")")
            return ("table", tuple(args), tuple(entries), tok.line, tok.column)
        if tok.kind == "name":
            return ("var", tok.text, tok.line, tok.column)
        raise ParseError(f"unexpected {tok.text!r}", tok.line, tok.column)


def _check_expr(expr, alphabet: int, known: set[str], line: int) -> None:
    head = expr[0]
    if head == "const":
        _, value, line, col = expr
        if value >= alphabet:
            raise ParseError(f"constant {value} is not below the alphabet size",
                             line, col)
    elif head == "var":
        _, name, line, col = expr
        if name not in known:
            raise ParseError(f"undeclared variable {name!r}", line, col)
    elif head == "not":
        if alphabet != 2:
            raise ParseError("NOT needs a binary alphabet", line, 0)
        _check_expr(expr[1], alphabet, known, line)
    elif head == "xor":
        if alphabet != 2:
            raise ParseError("XOR needs a binary alphabet", line, 0)
        _check_expr(expr[1], alphabet, known, line)
        _check_expr(expr[2], alphabet, known, line)
    elif head in ("and", "or", "+", "*"):
        _check_expr(expr[1], alphabet, known, line)
        _check_expr(expr[2], alphabet, known, line)
    elif head == "table":
        _, args, entries, line, col = expr
        expected = alphabet ** len(args)
        if len(entries) != expected:
            raise ParseError(
                f"table over {len(args)} inputs needs {expected} entries, "
                f"got {len(entries)}", line, col)
        if any(e >= alphabet for e in entries):
            raise ParseError("table entry is not below the alphabet size",
                             line, col)
        for arg in args:
            _check_expr(arg, alphabet, known, line)
    else:  # pragma: no cover
        raise AssertionError(f"unknown expression head {head}")


def eval_expr(expr, env: dict, alphabet: int) -> int:
    head = expr[0]
    if head == "const":
        return expr[1]
    if head == "var":
        return env[expr[1]]
    if head == "not":
        return 1 - eval_expr(expr[1], env, alphabet)
    if head == "and":
        return min(eval_expr(expr[1], env, alphabet),
                   eval_expr(expr[2], env, alphabet))
    if head == "or":
        return max(eval_expr(expr[1], env, alphabet),
                   eval_expr(expr[2], env, alphabet))
    if head == "xor":
        return eval_expr(expr[1], env, alphabet) ^ eval_expr(expr[2], env, alphabet)
    if head == "+":
        return (eval_expr(expr[1], env, alphabet)
                + eval_expr(expr[2], env, alphabet)) % alphabet
    if head == "*":
        return (eval_expr(expr[1], env, alphabet)
                * eval_expr(expr[2], env, alphabet)) % alphabet
    if head == "table":
        _, args, entries = expr[0], expr[1], expr[2]
        index = 0
        for arg in args:
            index = index * alphabet + eval_expr(arg, env, alphabet)
        return entries[index]
    raise AssertionError(f"unknown expression head {head}")  # pragma: no cover


# --- network files --------------------------------------------------------------

def parse_network(text: str) -> ProductFunction:
    """Parse update rules into a product function.

    Variables come from `var` lines and rule heads, in order of first
    appearance; every variable needs exactly one rule, and expressions may
    only reference declared variables.
    """
    alphabet: Optional[int] = None
    order: list[str] = []
    rules: dict[str, object] = {}
    rule_seen_line: dict[str, int] = {}

    for line_no, raw in enumerate(text.splitlines(), start=1):
        tokens = _tokenize(raw, line_no)
        if not tokens:
            continue
        head = tokens[0]
        if head.kind == "name" and head.text == "alphabet":
            if len(tokens) != 2 or tokens[1].kind != "int":
                raise ParseError("expected `alphabet <size>`", line_no,
                                 head.column)
            if alphabet is not None:
                raise ParseError("alphabet declared twice", line_no, head.column)
            if rules:
                raise ParseError("alphabet must precede the rules", line_no,
                                 head.column)
            alphabet = int(tokens[1].text)
            if alphabet < 2:
                raise ParseError("alphabet size must be at least 2", line_no,
                                 tokens[1].column)
            continue
        if head.kind == "name" and head.text == "var":
            if len(tokens) != 2 or tokens[1].kind != "name":
                raise ParseError("expected `var <name>`", line_no, head.column)
            name = tokens[1].text
            if name in order:
                raise ParseError(f"variable {name!r} declared twice", line_no,
                                 tokens[1].column)
            order.append(name)
            continue
        if head.kind == "name" and head.text == "f":
            if len(tokens) < 5 or tokens[1].kind != "(" or \
                    tokens[2].kind != "name" or tokens[3].kind != ")" or \
                    tokens[4].kind != "=":
                raise ParseError("expected `f(<name>) = <expression>`",
                                 line_no, head.column)
            name = tokens[2].text
            if name in rules:
                raise ParseError(
                    f"second rule for {name!r} (first on line "
                    f"{rule_seen_line[name]})", line_no, tokens[2].column)
            if name not in order:
                order.append(name)
            rules[name] = _ExprParser(tokens[5:], line_no).parse()
            rule_seen_line[name] = line_no
            continue
        raise ParseError(f"unrecognized directive {head.text!r}", line_no,
                         head.column)

    if alphabet is None:
        alphabet = 2
    if not order:
        raise ParseError("no variables declared", 1, 1)
    for name in order:
        if name not in rules:
            raise ParseError(f"variable {name!r} has no update rule", 1, 1)

    known = set(order)
    for name in order:
        _check_expr(rules[name], alphabet, known, rule_seen_line[name])

    tables = []
    size = alphabet ** len(order)
    for name in order:
        expr = rules[name]
        table = []
        for state in range(size):
            digits = decode_state(state, len(order), alphabet)
            env = dict(zip(order, digits))
            table.append(eval_expr(expr, env, alphabet))
        tables.append(tuple(table))
    return make_product_function(alphabet, order, tables)


def emit_network(f: ProductFunction) -> str:
    """Render a product function as parseable rules (lookup-table form)."""
    lines = [f"alphabet {f.alphabet}"]
    for name in f.names:
        lines.append(f"var {name}")
    for j in range(f.arity):
        deps = [i for i in range(f.arity) if depends_on(f, j, i)]
        if not deps:
            lines.append(f"f({f.names[j]}) = {f.tables[j][0]}")
            continue
        removed = [i for i in range(f.arity) if i not in deps]
        entries = independent_lift(f, j, removed)
        args = ", ".join(f.names[i] for i in deps)
        values = " ".join(str(v) for v in entries)
        lines.append(f"f({f.names[j]}) = table({args} : {values})")
    return "\n".join(lines) + "\n"


# --- digraph files -----------------------------------------------------------------

def parse_digraph(text: str) -> Digraph:
    vertex_count: Optional[int] = None
    edges: list[tuple[int, int]] = []
    seen = set()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        tokens = _tokenize(raw, line_no)
        if not tokens:
            continue
        head = tokens[0]
        if head.kind == "name" and head.text == "vertices":
            if vertex_count is not None:
                raise ParseError("vertex count declared twice", line_no,
                                 head.column)
            if len(tokens) != 2 or tokens[1].kind != "int":
                raise ParseError("expected `vertices <count>`", line_no,
                                 head.column)
            vertex_count = int(tokens[1].text)
            continue
        if head.kind == "name" and head.text == "edge":
            if vertex_count is None:
                raise ParseError("edge before the vertex count", line_no,
                                 head.column)
            if len(tokens) != 3 or tokens[1].kind != "int" or \
                    tokens[2].kind != "int":
                raise ParseError("expected `edge <src> <tgt>`", line_no,
                                 head.column)
            u, v = int(tokens[1].text), int(tokens[2].text)
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise ParseError(f"edge ({u}, {v}) out of range", line_no,
                                 head.column)
            if (u, v) in seen:
                raise ParseError(f"duplicate edge ({u}, {v})", line_no,
                                 head.column)
            seen.add((u, v))
            edges.append((u, v))
            continue
        raise ParseError(f"unrecognized directive {head.text!r}", line_no,
                         head.column)
    if vertex_count is None:
        raise ParseError("missing vertex count", 1, 1)
    return make_digraph(vertex_count, edges)


def emit_digraph(g: Digraph) -> str:
    lines = [f"vertices {g.vertex_count}"]
    for u, v in g.edges:
        lines.append(f"edge {u} {v}")
    return "\n".join(lines) + "\n"


# --- cycle-set files ----------------------------------------------------------------

def _split_header(raw: str, line_no: int) -> Optional[tuple[list[str], list[str]]]:
    """Split a cycle-set line at the first colon into word lists."""
    body = raw.split("#", 1)[0]
    if not body.strip():
        return None
    if ":" not in body:
        return (body.split(), [])
    head, rest = body.split(":", 1)
    return (head.split(), rest.split())


def parse_cycleset(text: str) -> TruncatedCycleSet:
    """Parse levels, rotations and repetitions, then validate the relations.

    `rot` and `deg` lines list images positionally, in the order the source
    level's labels were declared.
    """
    bound: Optional[int] = None
    level_order: dict[int, list[str]] = {}
    rot: dict[int, dict] = {}
    deg: dict[tuple[int, int], dict] = {}

    for line_no, raw in enumerate(text.splitlines(), start=1):
        split = _split_header(raw, line_no)
        if split is None:
            continue
        head, rest = split
        if head[0] == "bound":
            if bound is not None:
                raise ParseError("bound declared twice", line_no)
            if len(head) != 2 or not head[1].isdigit() or rest:
                raise ParseError("expected `bound <N>`", line_no)
            bound = int(head[1])
            if bound < 1:
                raise ParseError("bound must be positive", line_no)
            continue
        if bound is None:
            raise ParseError("the bound must come first", line_no)
        if head[0] == "level":
            if len(head) != 2 or not head[1].isdigit():
                raise ParseError("expected `level <n>: <labels>`", line_no)
            n = int(head[1])
            if not 1 <= n <= bound:
                raise ParseError(f"level {n} outside the bound", line_no)
            if n in level_order:
                raise ParseError(f"level {n} declared twice", line_no)
            if len(set(rest)) != len(rest):
                raise ParseError(f"duplicate label at level {n}", line_no)
            level_order[n] = rest
            continue
        if head[0] == "rot":
            if len(head) != 2 or not head[1].isdigit():
                raise ParseError("expected `rot <n>: <images>`", line_no)
            n = int(head[1])
            if n not in level_order:
                raise ParseError(f"rot line before level {n}", line_no)
            if n in rot:
                raise ParseError(f"rot {n} declared twice", line_no)
            if len(rest) != len(level_order[n]):
                raise ParseError(f"rot at level {n} needs "
                                 f"{len(level_order[n])} images", line_no)
            rot[n] = dict(zip(level_order[n], rest))
            continue
        if head[0] == "deg":
            if len(head) != 3 or not (head[1].isdigit() and head[2].isdigit()):
                raise ParseError("expected `deg <n> <m>: <images>`", line_no)
            n, m = int(head[1]), int(head[2])
            if n not in level_order or m not in level_order:
                raise ParseError(f"deg line before levels {n} and {m}", line_no)
            if m <= n or m % n != 0 or m > bound:
                raise ParseError(f"deg {n} {m} is not a divisor pair "
                                 "within the bound", line_no)
            if (n, m) in deg:
                raise ParseError(f"deg {n} {m} declared twice", line_no)
            if len(rest) != len(level_order[n]):
                raise ParseError(f"deg {n} {m} needs "
                                 f"{len(level_order[n])} images", line_no)
            deg[(n, m)] = dict(zip(level_order[n], rest))
            continue
        raise ParseError(f"unrecognized directive {head[0]!r}", line_no)

    if bound is None:
        raise ParseError("missing bound", 1)
    levels = {n: tuple(level_order.get(n, ())) for n in range(1, bound + 1)}
    for n in range(1, bound + 1):
        if levels[n] and n not in rot:
            raise ParseError(f"missing rot line for level {n}", 1)
        for m in range(2 * n, bound + 1, n):
            if levels[n] and (n, m) not in deg:
                raise ParseError(f"missing deg {n} {m} line", 1)
    return validate(bound, levels, rot, deg, provenance="explicit")


def element_token(element) -> str:
    """Deterministic single-token rendering of a level element."""
    if isinstance(element, str):
        return element
    if isinstance(element, int):
        return str(element)
    if isinstance(element, tuple):
        return "-".join(element_token(e) for e in element)
    key = getattr(element, "sort_key", None)
    if key is not None:
        return "-".join(str(part) for part in key())
    return repr(element)


def emit_cycleset(cs: TruncatedCycleSet) -> str:
    lines = [f"bound {cs.bound}"]
    for n in range(1, cs.bound + 1):
        labels = " ".join(element_token(x) for x in cs.level(n))
        lines.append(f"level {n}:{' ' + labels if labels else ''}")
    for n in range(1, cs.bound + 1):
        if not cs.level(n):
            continue
        images = " ".join(element_token(cs.rotate(n, x)) for x in cs.level(n))
        lines.append(f"rot {n}: {images}")
    for n in range(1, cs.bound + 1):
        if not cs.level(n):
            continue
        for m in range(2 * n, cs.bound + 1, n):
            images = " ".join(
                element_token(cs.degenerate(x, n, m)) for x in cs.level(n))
            lines.append(f"deg {n} {m}: {images}")
    return "\n".join(lines) + "\n"


# --- DOT and JSON output ---------------------------------------------------------------

def to_dot(g: Digraph, labels: Optional[Sequence[str]] = None) -> str:
    """Graphviz rendering with ascending vertex and edge order."""
    lines = ["digraph {"]
    for v in range(g.vertex_count):
        if labels is not None:
            lines.append(f'  {v} [label="{labels[v]}"];')
        else:
            lines.append(f"  {v};")
    for u, v in g.edges:
        lines.append(f"  {u} -> {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class AnalysisReport:
    """Sections of the JSON report; absent sections are omitted."""

    system: Optional[dict] = None
    attractors: Optional[dict] = None
    wiring: Optional[dict] = None
    cuts: Optional[list] = None
    decomposition: Optional[dict] = None


def report_json(report: AnalysisReport) -> str:
    document: dict = {"schema": 1}
    for section in ("system", "attractors", "wiring", "cuts", "decomposition"):
        value = getattr(report, section)
        if value is not None:
            document[section] = value
    return json.dumps(document, indent=2) + "\n"
