"""Pretty-printer. `to_source(parse_program(s))` reparses to the same
structure, and printing is a fixed point on its own output.

Meta-mutant nodes render in a debug form (`@T(...)`, `@C(...)`) that is
not meant to be reparsed.
"""

from __future__ import annotations

from .nodes import (
    Assert, Assign, Ast, BinOp, BoolOp, Call, Compare, Expr, ExprStmt,
    FunctionDef, If, Index, ListLit, Literal, Return, Stmt, TaintChoice,
    TaintedCond, UnaryOp, Var, While,
)

_BIN_PREC = {
    "or": 1, "and": 2,
    "==": 4, "!=": 4, "<": 4, "<=": 4, ">": 4, ">=": 4,
    "|": 5, "^": 6, "&": 7, "<<": 8, ">>": 8,
    "+": 9, "-": 9, "*": 10, "/": 10, "//": 10, "%": 10,
}
_NOT_PREC = 3
_UNARY_PREC = 11
_POSTFIX_PREC = 12
_ATOM_PREC = 13


def _lit(value) -> str:
    if isinstance(value, bool):
        return "True" if value else "False"
    if isinstance(value, str):
        body = value.replace("\\", "\\\\").replace('"', '\\"')
        body = body.replace("\n", "\\n").replace("\t", "\\t")
        return f'"{body}"'
    return repr(value)


def expr_to_source(e: Expr, min_prec: int = 0) -> str:
    if isinstance(e, Literal):
        return _lit(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Call):
        args = ", ".join(expr_to_source(a) for a in e.args)
        return f"{e.name}({args})"
    if isinstance(e, ListLit):
        return "[" + ", ".join(expr_to_source(a) for a in e.items) + "]"
    if isinstance(e, Index):
        base = expr_to_source(e.base, _POSTFIX_PREC)
        return f"{base}[{expr_to_source(e.index)}]"
    if isinstance(e, UnaryOp):
        if e.op == "not":
            text = f"not {expr_to_source(e.operand, _NOT_PREC)}"
            return f"({text})" if _NOT_PREC < min_prec else text
        text = f"-{expr_to_source(e.operand, _UNARY_PREC)}"
        return f"({text})" if _UNARY_PREC < min_prec else text
    if isinstance(e, (BinOp, Compare, BoolOp)):
        prec = _BIN_PREC[e.op]
        left = expr_to_source(e.left, prec)
        right = expr_to_source(e.right, prec + 1)
        text = f"{left} {e.op} {right}"
        return f"({text})" if prec < min_prec else text
    if isinstance(e, TaintChoice):
        left = expr_to_source(e.left, _ATOM_PREC)
        right = expr_to_source(e.right, _ATOM_PREC)
        parts = [f"<M{m}: {left} {op} {right}>" for m, op in sorted(e.variants.items())]
        return "@T(" + ", ".join(parts) + ")"
    if isinstance(e, TaintedCond):
        return f"@C({expr_to_source(e.cond)})"
    raise TypeError(f"cannot print {e!r}")


def _stmt_lines(s: Stmt, indent: int, out: list[str]) -> None:
    pad = "  " * indent
    if isinstance(s, Assign):
        if s.aug_op is not None and isinstance(s.value, BinOp):
            rhs = expr_to_source(s.value.right, _BIN_PREC[s.aug_op] + 1)
            out.append(f"{pad}{s.name} {s.aug_op}= {rhs}")
        else:
            out.append(f"{pad}{s.name} = {expr_to_source(s.value)}")
    elif isinstance(s, Return):
        out.append(f"{pad}return" if s.value is None
                   else f"{pad}return {expr_to_source(s.value)}")
    elif isinstance(s, Assert):
        out.append(f"{pad}assert {expr_to_source(s.test)}")
    elif isinstance(s, ExprStmt):
        out.append(f"{pad}{expr_to_source(s.value)}")
    elif isinstance(s, While):
        out.append(f"{pad}while {expr_to_source(s.cond)}:")
        for inner in s.body:
            _stmt_lines(inner, indent + 1, out)
    elif isinstance(s, If):
        out.append(f"{pad}if {expr_to_source(s.cond)}:")
        for inner in s.then_body:
            _stmt_lines(inner, indent + 1, out)
        if s.else_body:
            out.append(f"{pad}else:")
            for inner in s.else_body:
                _stmt_lines(inner, indent + 1, out)
    else:
        raise TypeError(f"cannot print {s!r}")


def fn_to_source(fn: FunctionDef) -> str:
    out = [f"def {fn.name}({', '.join(fn.params)}):"]
    for s in fn.body:
        _stmt_lines(s, 1, out)
    return "\n".join(out)


def to_source(ast: Ast) -> str:
    return "\n\n".join(fn_to_source(f) for f in ast.functions) + "\n"
