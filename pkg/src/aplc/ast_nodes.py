"""Typed AST plus a pretty-printer that emits canonical APL text.

Spans are carried for diagnostics but excluded from equality so structural
comparison (round-trip tests) ignores layout.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .arabic import ARABIC_COMMA, ARABIC_DECIMAL_SEPARATOR, ARABIC_INDIC_DIGITS, ASCII_DIGITS
from .diagnostics import Span
from .keywords import DEFAULT_KEYWORDS, Keyword


@dataclass
class Node:
    span: Span | None = field(default=None, kw_only=True, compare=False, repr=False)


# --- expressions -----------------------------------------------------------


@dataclass
class Name(Node):
    identifier: str = ""


@dataclass
class IntLit(Node):
    value: int = 0


@dataclass
class FloatLit(Node):
    value: float = 0.0


@dataclass
class StringLit(Node):
    value: str = ""


@dataclass
class BoolLit(Node):
    value: bool = False


@dataclass
class NoneLit(Node):
    pass


@dataclass
class ListLit(Node):
    items: list[Node] = field(default_factory=list)


@dataclass
class Call(Node):
    callee: Node = None
    args: list[Node] = field(default_factory=list)


@dataclass
class Index(Node):
    base: Node = None
    index: Node = None


@dataclass
class BinOp(Node):
    op: str = ""
    lhs: Node = None
    rhs: Node = None


@dataclass
class UnaryOp(Node):
    op: str = ""
    operand: Node = None


# --- statements ------------------------------------------------------------


@dataclass
class Assign(Node):
    target: Name = None
    value: Node = None


@dataclass
class IndexAssign(Node):
    base: Name = None
    index: Node = None
    value: Node = None


@dataclass
class ExprStmt(Node):
    expr: Node = None


@dataclass
class If(Node):
    cond: Node = None
    then_block: list[Node] = field(default_factory=list)
    elif_chain: list[tuple[Node, list[Node]]] = field(default_factory=list)
    else_block: list[Node] | None = None


@dataclass
class While(Node):
    cond: Node = None
    block: list[Node] = field(default_factory=list)


@dataclass
class ForEach(Node):
    var: str = ""
    iterable: Node = None
    block: list[Node] = field(default_factory=list)


@dataclass
class FuncDef(Node):
    name: str = ""
    params: list[str] = field(default_factory=list)
    block: list[Node] = field(default_factory=list)


@dataclass
class Return(Node):
    expr: Node | None = None


@dataclass
class Program(Node):
    body: list[Node] = field(default_factory=list)


# --- canonical APL pretty-printer ------------------------------------------

_TO_ARABIC_DIGITS = str.maketrans(ASCII_DIGITS + ".", ARABIC_INDIC_DIGITS + ARABIC_DECIMAL_SEPARATOR)

_WORD_OPS = {"and": Keyword.AND, "or": Keyword.OR, "not": Keyword.NOT}


def _kw(kw: Keyword) -> str:
    return DEFAULT_KEYWORDS.display_of(kw)


def _escape(value: str) -> str:
    return value.replace("\\", "\\\\").replace('"', '\\"')


def expr_to_source(node: Node) -> str:
    """Render an expression; compound forms parenthesized for unambiguity."""
    if isinstance(node, Name):
        return node.identifier
    if isinstance(node, IntLit):
        return str(node.value).translate(_TO_ARABIC_DIGITS)
    if isinstance(node, FloatLit):
        return repr(node.value).translate(_TO_ARABIC_DIGITS)
    if isinstance(node, StringLit):
        return f'"{_escape(node.value)}"'
    if isinstance(node, BoolLit):
        return _kw(Keyword.TRUE) if node.value else _kw(Keyword.FALSE)
    if isinstance(node, NoneLit):
        return _kw(Keyword.NONE)
    if isinstance(node, ListLit):
        return "[" + (ARABIC_COMMA + " ").join(expr_to_source(i) for i in node.items) + "]"
    if isinstance(node, Call):
        args = (ARABIC_COMMA + " ").join(expr_to_source(a) for a in node.args)
        return f"{expr_to_source(node.callee)}({args})"
    if isinstance(node, Index):
        return f"{expr_to_source(node.base)}[{expr_to_source(node.index)}]"
    if isinstance(node, BinOp):
        op = _kw(_WORD_OPS[node.op]) if node.op in _WORD_OPS else node.op
        return f"({expr_to_source(node.lhs)} {op} {expr_to_source(node.rhs)})"
    if isinstance(node, UnaryOp):
        op = _kw(_WORD_OPS[node.op]) if node.op in _WORD_OPS else node.op
        return f"({op} {expr_to_source(node.operand)})"
    raise TypeError(f"not an expression node: {node!r}")


def _block_lines(block: list[Node], depth: int) -> list[str]:
    lines = []
    for stmt in block:
        lines.extend(_stmt_lines(stmt, depth))
    return lines


def _stmt_lines(node: Node, depth: int) -> list[str]:
    pad = "    " * depth
    if isinstance(node, Assign):
        return [f"{pad}{node.target.identifier} = {expr_to_source(node.value)}"]
    if isinstance(node, IndexAssign):
        base = node.base.identifier
        return [f"{pad}{base}[{expr_to_source(node.index)}] = {expr_to_source(node.value)}"]
    if isinstance(node, ExprStmt):
        return [f"{pad}{expr_to_source(node.expr)}"]
    if isinstance(node, Return):
        if node.expr is None:
            return [f"{pad}{_kw(Keyword.RETURN)}"]
        return [f"{pad}{_kw(Keyword.RETURN)} {expr_to_source(node.expr)}"]
    if isinstance(node, While):
        lines = [f"{pad}{_kw(Keyword.WHILE)} {expr_to_source(node.cond)} {{"]
        lines += _block_lines(node.block, depth + 1)
        lines.append(f"{pad}}}")
        return lines
    if isinstance(node, ForEach):
        head = f"{pad}{_kw(Keyword.FOR)} {node.var} {_kw(Keyword.IN)} {expr_to_source(node.iterable)} {{"
        return [head, *_block_lines(node.block, depth + 1), f"{pad}}}"]
    if isinstance(node, FuncDef):
        params = (ARABIC_COMMA + " ").join(node.params)
        head = f"{pad}{_kw(Keyword.DEF)} {node.name}({params}) {{"
        return [head, *_block_lines(node.block, depth + 1), f"{pad}}}"]
    if isinstance(node, If):
        lines = [f"{pad}{_kw(Keyword.IF)} {expr_to_source(node.cond)} {{"]
        lines += _block_lines(node.then_block, depth + 1)
        lines.append(f"{pad}}}")
        for cond, block in node.elif_chain:
            lines.append(f"{pad}{_kw(Keyword.ELIF)} {expr_to_source(cond)} {{")
            lines += _block_lines(block, depth + 1)
            lines.append(f"{pad}}}")
        if node.else_block is not None:
            lines.append(f"{pad}{_kw(Keyword.ELSE)} {{")
            lines += _block_lines(node.else_block, depth + 1)
            lines.append(f"{pad}}}")
        return lines
    raise TypeError(f"not a statement node: {node!r}")


def to_source(program: Program) -> str:
    """Emit canonical APL text; parsing it back yields an equal Program."""
    lines = _block_lines(program.body, 0)
    return "\n".join(lines) + ("\n" if lines else "")
