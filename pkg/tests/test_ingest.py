import json
import random

import pytest

from cyclekit import (
    ParseError,
    attractor_truncated,
    builtin_examples,
    check_property_b,
    cycle_graph,
    emit_cycleset,
    emit_digraph,
    emit_network,
    make_digraph,
    nondeg_orbit_counts,
    parse_cycleset,
    parse_digraph,
    parse_network,
    report_json,
    to_dot,
    wiring_diagram,
)
from cyclekit.ingest import AnalysisReport
from cyclekit.wiring import decode_state

from helpers import random_product_function, random_semidirect_function

FIG1 = "f(x1)=x1\nf(x2)=x2 XOR x3\nf(x3)=x1 OR x2\n"


class TestParseNetwork:
    def test_fig1(self):
        f = parse_network(FIG1)
        assert f.names == ("x1", "x2", "x3")
        assert f.to_dds().update == (0, 2, 3, 1, 5, 7, 7, 5)

    def test_two_variable_example(self):
        f = parse_network("f(x1)=x1 XOR x2\nf(x2)=x1\n")
        assert f.tables == ((0, 1, 1, 0), (0, 0, 1, 1))

    def test_mod3_successor(self):
        f = parse_network("alphabet 3\nf(a)=(a + 1)\n")
        assert f.tables == ((1, 2, 0),)

    def test_min_max_semantics_on_larger_alphabets(self):
        f = parse_network("alphabet 3\nf(a)=a AND b\nf(b)=a OR b\n")
        for s in range(9):
            a, b = decode_state(s, 2, 3)
            assert f.tables[0][s] == min(a, b)
            assert f.tables[1][s] == max(a, b)

    def test_precedence(self):
        # NOT binds tightest; * over +; arithmetic over AND over XOR over OR
        f = parse_network("var a\nvar b\nvar c\n"
                          "f(a) = NOT a AND b OR c\n"
                          "f(b) = a + b * c\n"
                          "f(c) = a XOR b AND c\n")
        for s in range(8):
            a, b, c = decode_state(s, 3, 2)
            assert f.tables[0][s] == max(min(1 - a, b), c)
            assert f.tables[1][s] == (a + b * c) % 2
            assert f.tables[2][s] == a ^ min(b, c)

    def test_parentheses(self):
        f = parse_network("var a\nvar b\nf(a) = NOT (a AND b)\nf(b) = b\n")
        for s in range(4):
            a, b = decode_state(s, 2, 2)
            assert f.tables[0][s] == 1 - min(a, b)

    def test_inline_table(self):
        f = parse_network("f(a) = table(a, b : 0 1 1 1)\nf(b) = a\n")
        assert f.tables[0] == (0, 1, 1, 1)

    def test_var_lines_fix_order(self):
        f = parse_network("var x2\nvar x1\nf(x1)=x2\nf(x2)=x1\n")
        assert f.names == ("x2", "x1")

    def test_comments_and_blanks(self):
        f = parse_network("# a comment\n\nf(a) = a # trailing\n")
        assert f.names == ("a",)


class TestParseNetworkErrors:
    def test_syntax_error_position(self):
        with pytest.raises(ParseError) as err:
            parse_network("f(x1) = x1 OR\n")
        assert err.value.line == 1

    def test_undeclared_variable(self):
        with pytest.raises(ParseError) as err:
            parse_network("f(x1) = x9\n")
        assert "undeclared" in str(err.value)

    def test_missing_rule(self):
        with pytest.raises(ParseError) as err:
            parse_network("var a\nvar b\nf(a) = b\n")
        assert "no update rule" in str(err.value)

    def test_duplicate_rule(self):
        with pytest.raises(ParseError):
            parse_network("f(a) = a\nf(a) = NOT a\n")

    def test_xor_needs_binary(self):
        with pytest.raises(ParseError) as err:
            parse_network("alphabet 3\nf(a) = a XOR a\n")
        assert "XOR" in str(err.value)

    def test_not_needs_binary(self):
        with pytest.raises(ParseError):
            parse_network("alphabet 3\nf(a) = NOT a\n")

    def test_alphabet_too_small(self):
        with pytest.raises(ParseError):
            parse_network("alphabet 1\nf(a) = a\n")

    def test_constant_out_of_range(self):
        with pytest.raises(ParseError):
            parse_network("f(a) = a + 2\n")

    def test_bad_table_size(self):
        with pytest.raises(ParseError):
            parse_network("f(a) = table(a : 0 1 0)\n")


# independent expression evaluator used to cross-check the parser's tables
def _eval(node, env):
    kind = node[0]
    if kind == "var":
        return env[node[1]]
    if kind == "const":
        return node[1]
    if kind == "not":
        return 1 - _eval(node[1], env)
    a = _eval(node[1], env)
    b = _eval(node[2], env)
    if kind == "and":
        return min(a, b)
    if kind == "or":
        return max(a, b)
    if kind == "xor":
        return a ^ b
    if kind == "+":
        return (a + b) % node[3]
    if kind == "*":
        return (a * b) % node[3]
    raise AssertionError(kind)


def _render(node):
    kind = node[0]
    if kind == "var":
        return node[1]
    if kind == "const":
        return str(node[1])
    if kind == "not":
        return f"NOT ({_render(node[1])})"
    symbol = {"and": "AND", "or": "OR", "xor": "XOR", "+": "+", "*": "*"}[kind]
    return f"({_render(node[1])}) {symbol} ({_render(node[2])})"


def _random_expr(rng, names, alphabet, depth):
    if depth == 0 or rng.random() < 0.3:
        if rng.random() < 0.25:
            return ("const", rng.randrange(alphabet))
        return ("var", rng.choice(names))
    ops = ["and", "or", "+", "*"] + (["xor", "not"] if alphabet == 2 else [])
    op = rng.choice(ops)
    if op == "not":
        return ("not", _random_expr(rng, names, alphabet, depth - 1))
    return (op, _random_expr(rng, names, alphabet, depth - 1),
            _random_expr(rng, names, alphabet, depth - 1), alphabet)


class TestParserAgainstEvaluator:
    def test_random_expressions(self):
        rng = random.Random(90)
        for _ in range(40):
            alphabet = rng.choice((2, 3))
            arity = rng.randint(1, 3)
            names = [f"v{i}" for i in range(arity)]
            exprs = [_random_expr(rng, names, alphabet, 3)
                     for _ in range(arity)]
            text = f"alphabet {alphabet}\n" + "".join(
                f"var {name}\n" for name in names) + "".join(
                f"f({name}) = {_render(expr)}\n"
                for name, expr in zip(names, exprs))
            f = parse_network(text)
            for s in range(f.state_count):
                env = dict(zip(names, decode_state(s, arity, alphabet)))
                for j, expr in enumerate(exprs):
                    assert f.tables[j][s] == _eval(expr, env)


class TestRoundTrips:
    def test_network_round_trip(self):
        rng = random.Random(91)
        for _ in range(25):
            f = random_product_function(rng)
            assert parse_network(emit_network(f)) == f

    def test_assembled_network_round_trip(self):
        rng = random.Random(92)
        for _ in range(25):
            f, _ = random_semidirect_function(rng, max_arity=4)
            assert parse_network(emit_network(f)) == f

    def test_emit_is_stable(self):
        f = parse_network(FIG1)
        once = emit_network(f)
        assert parse_network(once) == f
        assert emit_network(parse_network(once)) == once

    def test_digraph_round_trip(self):
        text = "vertices 4\nedge 0 1\nedge 1 1\nedge 2 3\nedge 3 2\n"
        g = parse_digraph(text)
        assert emit_digraph(g) == text
        assert parse_digraph(emit_digraph(g)) == g

    def test_cycleset_round_trip(self):
        for cs in builtin_examples(6).values():
            text = emit_cycleset(cs)
            back = parse_cycleset(text)
            assert back.levels == cs.levels
            assert back.rot == cs.rot
            assert back.deg == cs.deg
            assert emit_cycleset(back) == text

    def test_attractor_cycleset_emits_and_parses(self):
        g = make_digraph(4, [(0, 1), (1, 1), (2, 3), (3, 2)])
        cs = attractor_truncated(g, 4)
        back = parse_cycleset(emit_cycleset(cs))
        assert [len(back.level(n)) for n in range(1, 5)] == \
            [len(cs.level(n)) for n in range(1, 5)]


class TestParseDigraphErrors:
    def test_duplicate_edge(self):
        with pytest.raises(ParseError) as err:
            parse_digraph("vertices 2\nedge 0 1\nedge 0 1\n")
        assert "duplicate" in str(err.value)

    def test_out_of_range(self):
        with pytest.raises(ParseError):
            parse_digraph("vertices 2\nedge 0 2\n")

    def test_missing_count(self):
        with pytest.raises(ParseError):
            parse_digraph("edge 0 1\n")


class TestParseCycleset:
    def test_even_singleton_example_classifies(self):
        text = emit_cycleset(builtin_examples(6)["a-not-b"])
        cs = parse_cycleset(text)
        violation = check_property_b(cs)
        assert violation is not None and violation.level == 2

    def test_example_digraph_attractors_match(self):
        g = parse_digraph("vertices 4\nedge 0 1\nedge 1 1\nedge 2 3\nedge 3 2\n")
        assert nondeg_orbit_counts(g, 4) == {1: 1, 2: 1, 3: 0, 4: 0}

    def test_relation_violation_reported(self):
        text = ("bound 2\nlevel 1: a b\nlevel 2: x\n"
                "rot 1: b a\nrot 2: x\ndeg 1 2: x x\n")
        from cyclekit import CycleSetValidationError
        with pytest.raises(CycleSetValidationError):
            parse_cycleset(text)

    def test_missing_rot_rejected(self):
        with pytest.raises(ParseError):
            parse_cycleset("bound 2\nlevel 1: a\nlevel 2:\ndeg 1 2:\n")

    def test_duplicate_rot_line_rejected(self):
        with pytest.raises(ParseError) as err:
            parse_cycleset("bound 1\nlevel 1: a\nrot 1: a\nrot 1: a\n")
        assert "twice" in str(err.value)


class TestDot:
    def test_cycle_graph(self):
        dot = to_dot(cycle_graph(3))
        assert dot == ("digraph {\n  0;\n  1;\n  2;\n"
                       "  0 -> 1;\n  1 -> 2;\n  2 -> 0;\n}\n")

    def test_fig1_wiring_edge_count(self):
        f = parse_network(FIG1)
        dot = to_dot(wiring_diagram(f), labels=f.names)
        assert dot.count("->") == 5
        assert 'label="x1"' in dot

    def test_deterministic(self):
        f = parse_network(FIG1)
        g = wiring_diagram(f)
        assert to_dot(g, f.names) == to_dot(g, f.names)


class TestReportJson:
    def test_schema_and_determinism(self):
        report = AnalysisReport(
            system={"variables": ["a"], "alphabet": 2, "state_count": 2},
            attractors={"max_length": 2, "lengths": [1],
                        "counts": {"1": 2}, "orbits": []},
        )
        out1 = report_json(report)
        out2 = report_json(report)
        assert out1 == out2
        doc = json.loads(out1)
        assert doc["schema"] == 1
        assert list(doc.keys()) == ["schema", "system", "attractors"]
