"""Lowering of the AST to Python 3 source text.

Keywords map through the keyword table, identifiers romanize to ASCII via a
stable first-occurrence rename map, braces become 4-space indentation, and
string literals pass through byte-verbatim.
"""
from __future__ import annotations

import keyword as _py_keyword
from dataclasses import dataclass, field

from . import arabic
from . import ast_nodes as ast
from .diagnostics import UnsupportedNode
from .keywords import BUILTIN_FORMS

# Buckwalter-flavoured romanization, tuned for readable identifiers.
ROMANIZATION: dict[str, str] = {
    "ء": "",
    "آ": "a",
    "أ": "a",
    "ؤ": "w",
    "إ": "i",
    "ئ": "y",
    "ا": "a",
    "ب": "b",
    "ة": "h",
    "ت": "t",
    "ث": "th",
    "ج": "j",
    "ح": "h",
    "خ": "kh",
    "د": "d",
    "ذ": "dh",
    "ر": "r",
    "ز": "z",
    "س": "s",
    "ش": "sh",
    "ص": "s",
    "ض": "d",
    "ط": "t",
    "ظ": "z",
    "ع": "e",
    "غ": "gh",
    "ف": "f",
    "ق": "q",
    "ك": "k",
    "ل": "l",
    "م": "m",
    "ن": "n",
    "ه": "h",
    "و": "w",
    "ى": "a",
    "ي": "y",
}

# Names the emitted code may reference; user identifiers must not shadow them.
RESERVED: frozenset[str] = frozenset(
    _py_keyword.kwlist
) | frozenset(_py_keyword.softkwlist) | frozenset(BUILTIN_FORMS.values())


def transliterate(name: str, taken: set[str] | frozenset[str] = frozenset()) -> str:
    """Romanize an identifier to ASCII, avoiding `taken` and Python reserved words."""
    out = []
    for ch in name:
        if ch in ROMANIZATION:
            out.append(ROMANIZATION[ch])
        elif "a" <= ch <= "z" or ch == "_":
            out.append(ch)
        elif "A" <= ch <= "Z":
            out.append(ch.lower())
        elif arabic.is_digit_char(ch):
            out.append(ch.translate(arabic.DIGIT_FOLD))
    base = "".join(out)
    if not base:
        base = "x"
    if base[0].isdigit():
        base = "n" + base
    candidate = base
    n = 2
    while candidate in taken or candidate in RESERVED:
        candidate = f"{base}_{n}"
        n += 1
    return candidate


class RenameMap:
    """Stable, injective Arabic -> ASCII identifier mapping, first occurrence order."""

    def __init__(self):
        self._targets: dict[str, str] = {}
        self._taken: set[str] = set()

    def target_for(self, arabic_name: str) -> str:
        hit = self._targets.get(arabic_name)
        if hit is not None:
            return hit
        target = transliterate(arabic_name, self._taken)
        self._targets[arabic_name] = target
        self._taken.add(target)
        return target

    @property
    def entries(self) -> list[tuple[str, str]]:
        return list(self._targets.items())

    def __len__(self) -> int:
        return len(self._targets)


@dataclass
class TargetSource:
    text: str
    rename_map: RenameMap = field(default_factory=RenameMap)
    prelude_used: bool = False
    source_origin: str = "<memory>"


HEADER_MARK = "# rename map"

PRELUDE = '''\
from pathlib import Path

def read_file(path):
    p = Path(path)
    if p.suffix != ".txt":
        raise ValueError("read_file: only .txt files are allowed")
    root = Path.cwd().resolve()
    full = (root / p).resolve()
    if root != full and root not in full.parents:
        raise ValueError("read_file: path escapes the working directory")
    return full.read_text(encoding="utf-8")
'''

_PREC = {
    "or": 1,
    "and": 2,
    "==": 4, "!=": 4, "<": 4, ">": 4, "<=": 4, ">=": 4,
    "+": 5, "-": 5,
    "*": 6, "/": 6, "%": 6,
}
_COMPARISONS = {"==", "!=", "<", ">", "<=", ">="}


def _prec(node: ast.Node) -> int:
    if isinstance(node, ast.BinOp):
        return _PREC[node.op]
    if isinstance(node, ast.UnaryOp):
        return 3 if node.op == "not" else 7
    return 9


class _Emitter:
    def __init__(self):
        self.renames = RenameMap()
        self.prelude_used = False

    def expr(self, node: ast.Node) -> str:
        if isinstance(node, ast.Name):
            target = BUILTIN_FORMS.get(node.identifier)
            if target is not None:
                if target == "read_file":
                    self.prelude_used = True
                return target
            return self.renames.target_for(node.identifier)
        if isinstance(node, ast.IntLit):
            return str(node.value)
        if isinstance(node, ast.FloatLit):
            return repr(node.value)
        if isinstance(node, ast.StringLit):
            body = node.value.replace("\\", "\\\\").replace('"', '\\"')
            return f'"{body}"'
        if isinstance(node, ast.BoolLit):
            return "True" if node.value else "False"
        if isinstance(node, ast.NoneLit):
            return "None"
        if isinstance(node, ast.ListLit):
            return "[" + ", ".join(self.expr(i) for i in node.items) + "]"
        if isinstance(node, ast.Call):
            args = ", ".join(self.expr(a) for a in node.args)
            return f"{self.expr(node.callee)}({args})"
        if isinstance(node, ast.Index):
            return f"{self.expr(node.base)}[{self.expr(node.index)}]"
        if isinstance(node, ast.BinOp):
            lhs = self._operand(node.lhs, node, right=False)
            rhs = self._operand(node.rhs, node, right=True)
            return f"{lhs} {node.op} {rhs}"
        if isinstance(node, ast.UnaryOp):
            my_prec = _prec(node)
            text = self.expr(node.operand)
            if _prec(node.operand) < my_prec:
                text = f"({text})"
            return f"not {text}" if node.op == "not" else f"-{text}"
        raise UnsupportedNode(node.span, node=type(node).__name__)

    def _operand(self, child: ast.Node, parent: ast.BinOp, right: bool) -> str:
        text = self.expr(child)
        parent_prec = _PREC[parent.op]
        child_prec = _prec(child)
        need = child_prec < parent_prec
        # A comparison under a comparison must not read as a Python chain.
        if (parent.op in _COMPARISONS and isinstance(child, ast.BinOp)
                and child.op in _COMPARISONS):
            need = True
        if right and child_prec == parent_prec:
            need = True
        return f"({text})" if need else text

    def name(self, identifier: str) -> str:
        return self.renames.target_for(identifier)

    def block(self, block: list[ast.Node], depth: int) -> list[str]:
        lines: list[str] = []
        for stmt in block:
            lines.extend(self.stmt(stmt, depth))
        return lines

    def stmt(self, node: ast.Node, depth: int) -> list[str]:
        pad = "    " * depth
        if isinstance(node, ast.Assign):
            return [f"{pad}{self.name(node.target.identifier)} = {self.expr(node.value)}"]
        if isinstance(node, ast.IndexAssign):
            base = self.name(node.base.identifier)
            return [f"{pad}{base}[{self.expr(node.index)}] = {self.expr(node.value)}"]
        if isinstance(node, ast.ExprStmt):
            return [f"{pad}{self.expr(node.expr)}"]
        if isinstance(node, ast.Return):
            if node.expr is None:
                return [f"{pad}return"]
            return [f"{pad}return {self.expr(node.expr)}"]
        if isinstance(node, ast.If):
            lines = [f"{pad}if {self.expr(node.cond)}:"]
            lines += self.block(node.then_block, depth + 1)
            for cond, body in node.elif_chain:
                lines.append(f"{pad}elif {self.expr(cond)}:")
                lines += self.block(body, depth + 1)
            if node.else_block is not None:
                lines.append(f"{pad}else:")
                lines += self.block(node.else_block, depth + 1)
            return lines
        if isinstance(node, ast.While):
            return [f"{pad}while {self.expr(node.cond)}:",
                    *self.block(node.block, depth + 1)]
        if isinstance(node, ast.ForEach):
            head = f"{pad}for {self.name(node.var)} in {self.expr(node.iterable)}:"
            return [head, *self.block(node.block, depth + 1)]
        if isinstance(node, ast.FuncDef):
            fname = self.name(node.name)
            params = ", ".join(self.name(p) for p in node.params)
            return [f"{pad}def {fname}({params}):",
                    *self.block(node.block, depth + 1)]
        raise UnsupportedNode(node.span, node=type(node).__name__)


def emit(program: ast.Program, origin: str = "<memory>") -> TargetSource:
    """Emit Python source for a checked Program; pure and deterministic."""
    em = _Emitter()
    body = em.block(program.body, 0)

    lines = [HEADER_MARK]
    for arabic_name, target in em.renames.entries:
        if target != arabic_name:
            lines.append(f"# {target} := {arabic_name}")
    if em.prelude_used:
        lines.append("")
        lines.extend(PRELUDE.splitlines())
    if body:
        lines.append("")
        lines.extend(body)
    return TargetSource(
        text="\n".join(lines) + "\n",
        rename_map=em.renames,
        prelude_used=em.prelude_used,
        source_origin=origin,
    )
