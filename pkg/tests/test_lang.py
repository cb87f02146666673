"""Language core: lexer/parser, plain semantics, execution counting."""

import pytest

from mutlab.lang import (
    MiniRuntimeError, MiniSyntaxError, compile_program, eval_plain,
    parse_program, run_entry, to_source,
)
from mutlab.lang.values import INT_MAX, binary_op, compare_op, plain_eq


def run_src(src, entry="main", env=None):
    return eval_plain(parse_program(src), entry, env or {})


class TestParser:
    def test_simple_function(self):
        ast = parse_program("def f(x):\n    return x + 1\n")
        assert [f.name for f in ast.functions] == ["f"]

    def test_test_functions_are_flagged(self):
        ast = parse_program(
            "def f():\n    return 1\n\ndef test_f():\n    assert f() == 1\n")
        assert [f.is_test for f in ast.functions] == [False, True]

    def test_elif_desugars(self):
        src = ("def f(x):\n"
               "    if x < 0:\n"
               "        return 0\n"
               "    elif x < 10:\n"
               "        return 1\n"
               "    else:\n"
               "        return 2\n")
        assert run_src(src, "f", {"x": 5}).value == 1
        assert run_src(src, "f", {"x": 50}).value == 2

    def test_aug_assign_desugars(self):
        src = "def f(x):\n    x += 3\n    x *= 2\n    return x\n"
        assert run_src(src, "f", {"x": 4}).value == 14
        # the printer restores the sugar
        assert "x += 3" in to_source(parse_program(src))

    def test_top_level_statement_rejected(self):
        with pytest.raises(MiniSyntaxError):
            parse_program("x = 1\n")

    def test_duplicate_function_rejected(self):
        with pytest.raises(MiniSyntaxError):
            parse_program("def f():\n    return 1\ndef f():\n    return 2\n")

    def test_tabs_rejected(self):
        with pytest.raises(MiniSyntaxError):
            parse_program("def f():\n\treturn 1\n")

    def test_print_parse_fixed_point(self):
        src = ("def f(a, b):\n"
               "    c = (a + b) * 2 - a % 3\n"
               "    while c > 0:\n"
               "        c = c - 1\n"
               "    if a < b and b != 0:\n"
               "        return [a, b][0]\n"
               "    return -c\n")
        once = to_source(parse_program(src))
        assert to_source(parse_program(once)) == once


class TestValues:
    def test_int_overflow_is_error(self):
        with pytest.raises(MiniRuntimeError) as e:
            binary_op("*", INT_MAX, 2)
        assert e.value.kind == "overflow"

    def test_true_division_yields_float(self):
        assert binary_op("/", 2, 2) == 1.0
        assert isinstance(binary_op("/", 2, 2), float)

    def test_floor_semantics(self):
        assert binary_op("//", -7, 2) == -4
        assert binary_op("%", -7, 2) == 1

    def test_division_by_zero(self):
        for op in ("/", "//", "%"):
            with pytest.raises(MiniRuntimeError) as e:
                binary_op(op, 1, 0)
            assert e.value.kind == "zero-division"

    def test_bitwise_on_float_is_type_error(self):
        for op in ("<<", ">>", "|", "^", "&"):
            with pytest.raises(MiniRuntimeError) as e:
                binary_op(op, 1.5, 1)
            assert e.value.kind == "type"

    def test_shift_guards(self):
        with pytest.raises(MiniRuntimeError):
            binary_op("<<", 1, -1)
        with pytest.raises(MiniRuntimeError):
            binary_op("<<", 1, 600)

    def test_plain_eq_is_type_sensitive(self):
        assert not plain_eq(1, 1.0)
        assert plain_eq(1.0, 1.0)
        assert not plain_eq(True, 1)
        # but comparison follows numeric equality
        assert compare_op("==", 1, 1.0) is True

    def test_string_concat_and_ordering(self):
        assert binary_op("+", "ab", "cd") == "abcd"
        assert compare_op("<", "ab", "b") is True
        with pytest.raises(MiniRuntimeError):
            binary_op("-", "ab", "cd")


class TestInterp:
    def test_and_or_evaluate_both_operands(self):
        # no short-circuit: the right operand's error always surfaces
        src = ("def f(x):\n"
               "    return x == 0 or 1 // x == 1\n")
        out = run_src(src, "f", {"x": 0})
        assert out.status == "error" and out.kind == "zero-division"

    def test_condition_must_be_bool(self):
        out = run_src("def f():\n    if 1:\n        return 2\n    return 3\n", "f")
        assert out.status == "error" and out.kind == "type"

    def test_statement_counting(self):
        # 1 assign + 4 condition evals + 3 bodies x 2 stmts + 1 return = 12
        src = ("def f():\n"
               "    i = 0\n"
               "    while i < 3:\n"
               "        x = i\n"
               "        i = i + 1\n"
               "    return i\n")
        out = run_src(src, "f")
        assert out.status == "pass" and out.value == 3
        assert out.stmts == 12

    def test_step_budget(self):
        src = "def f():\n    x = 0\n    while x == 0:\n        x = x * 1\n    return x\n"
        out = eval_plain(parse_program(src), "f", {}, budget=50)
        assert out.status == "timeout"

    def test_assert_statuses(self):
        prog = compile_program(parse_program(
            "def test_a():\n    assert 1 == 2\n"))
        assert run_entry(prog, "test_a", []).status == "assert"

    def test_builtins(self):
        src = ("def f(s):\n"
               "    return [len(s), ord(\"A\"), chr(66), abs(0 - 3),"
               " min(4, 2), max(4, 2), int(2.9), float(2)]\n")
        out = run_src(src, "f", {"s": "hey"})
        assert out.value == (3, 65, "B", 3, 2, 4, 2, 2.0)

    def test_negative_index_and_bounds(self):
        src = "def f(s, i):\n    return s[i]\n"
        assert run_src(src, "f", {"s": "abc", "i": -1}).value == "c"
        out = run_src(src, "f", {"s": "abc", "i": 3})
        assert out.status == "error" and out.kind == "index"

    def test_math_domain_errors(self):
        out = run_src("def f():\n    return log(0)\n", "f")
        assert out.status == "error"
        out = run_src("def f():\n    return sqrt(0 - 1.0)\n", "f")
        assert out.status == "error"
