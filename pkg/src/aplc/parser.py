"""Recursive-descent parser for the brace-block grammar, plus a light checker.

One statement per line; the opening brace closes its header line and the
closing brace stands alone. An elif/else header follows on the line after
the closing brace, which keeps the grammar LL(2): Newline then the keyword.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import ast_nodes as ast
from .diagnostics import (
    CATALOG,
    BadAssignTarget,
    BraceNotLast,
    DanglingElse,
    EmptyBlock,
    KeywordInExpr,
    ParseError,
    ReturnOutsideFunction,
    Span,
)
from .keywords import BUILTIN_FORMS, CALLABLE_KEYWORDS, DEFAULT_KEYWORDS, Keyword
from .lexer import Token, TokenKind

_COMPARISON_OPS = {"==", "!=", "<", ">", "<=", ">="}
_ADDITIVE_OPS = {"+", "-"}
_MULTIPLICATIVE_OPS = {"*", "/", "%"}


def _join(a: Span | None, b: Span | None) -> Span | None:
    if a is None or b is None:
        return a or b
    return Span(a.start, b.end, a.line, a.col)


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.i = 0

    def peek(self, offset: int = 0) -> Token:
        i = min(self.i + offset, len(self.tokens) - 1)
        return self.tokens[i]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        if tok.kind is not TokenKind.EOF:
            self.i += 1
        return tok

    def at_keyword(self, kw: Keyword, offset: int = 0) -> bool:
        tok = self.peek(offset)
        return tok.kind is TokenKind.KEYWORD and tok.keyword is kw

    def expect(self, kind: TokenKind, what: str) -> Token:
        tok = self.peek()
        if tok.kind is not kind:
            raise ParseError(tok.span, expected=[what], found=_describe(tok))
        return self.advance()

    # --- statements -------------------------------------------------------

    def program(self) -> ast.Program:
        body: list[ast.Node] = []
        while self.peek().kind is not TokenKind.EOF:
            body.append(self.statement())
            self.expect(TokenKind.NEWLINE, "end of line")
        end = self.peek().span
        return ast.Program(body, span=Span(0, end.end, 1, 1))

    def statement(self) -> ast.Node:
        tok = self.peek()
        if tok.kind is TokenKind.KEYWORD:
            if tok.keyword is Keyword.IF:
                return self.if_stmt()
            if tok.keyword is Keyword.WHILE:
                return self.while_stmt()
            if tok.keyword is Keyword.FOR:
                return self.foreach_stmt()
            if tok.keyword is Keyword.DEF:
                return self.funcdef_stmt()
            if tok.keyword is Keyword.RETURN:
                return self.return_stmt()
            if tok.keyword in (Keyword.ELIF, Keyword.ELSE):
                raise DanglingElse(tok.span)
        return self.simple_stmt()

    def simple_stmt(self) -> ast.Node:
        expr = self.expression()
        if self.peek().kind is TokenKind.OPERATOR and self.peek().lexeme == "=":
            eq = self.advance()
            value = self.expression()
            span = _join(expr.span, value.span)
            if isinstance(expr, ast.Name):
                if expr.identifier in BUILTIN_FORMS:
                    raise BadAssignTarget(expr.span)
                return ast.Assign(expr, value, span=span)
            if isinstance(expr, ast.Index) and isinstance(expr.base, ast.Name):
                return ast.IndexAssign(expr.base, expr.index, value, span=span)
            raise BadAssignTarget(eq.span)
        return ast.ExprStmt(expr, span=expr.span)

    def block(self) -> list[ast.Node]:
        self.expect(TokenKind.LBRACE, "{")
        if self.peek().kind is not TokenKind.NEWLINE:
            raise BraceNotLast(self.peek().span)
        self.advance()
        stmts: list[ast.Node] = []
        while self.peek().kind is not TokenKind.RBRACE:
            if self.peek().kind is TokenKind.EOF:
                raise ParseError(self.peek().span, expected=["}"], found=_describe(self.peek()))
            stmts.append(self.statement())
            self.expect(TokenKind.NEWLINE, "end of line")
        rbrace = self.advance()
        if not stmts:
            raise EmptyBlock(rbrace.span)
        return stmts

    def if_stmt(self) -> ast.Node:
        start = self.advance()
        cond = self.expression()
        then_block = self.block()
        elif_chain: list[tuple[ast.Node, list[ast.Node]]] = []
        else_block = None
        # Header of the next branch sits on the line after the '}'.
        while self.peek().kind is TokenKind.NEWLINE and self.at_keyword(Keyword.ELIF, 1):
            self.advance()
            self.advance()
            c = self.expression()
            elif_chain.append((c, self.block()))
        if self.peek().kind is TokenKind.NEWLINE and self.at_keyword(Keyword.ELSE, 1):
            self.advance()
            self.advance()
            else_block = self.block()
        end = self.tokens[self.i - 1].span
        return ast.If(cond, then_block, elif_chain, else_block, span=_join(start.span, end))

    def while_stmt(self) -> ast.Node:
        start = self.advance()
        cond = self.expression()
        block = self.block()
        end = self.tokens[self.i - 1].span
        return ast.While(cond, block, span=_join(start.span, end))

    def foreach_stmt(self) -> ast.Node:
        start = self.advance()
        var = self.expect(TokenKind.IDENTIFIER, "loop variable")
        if not self.at_keyword(Keyword.IN):
            tok = self.peek()
            raise ParseError(tok.span, expected=[DEFAULT_KEYWORDS.display_of(Keyword.IN)],
                             found=_describe(tok))
        self.advance()
        iterable = self.expression()
        block = self.block()
        end = self.tokens[self.i - 1].span
        return ast.ForEach(var.value, iterable, block, span=_join(start.span, end))

    def funcdef_stmt(self) -> ast.Node:
        start = self.advance()
        name = self.expect(TokenKind.IDENTIFIER, "function name")
        self.expect(TokenKind.LPAREN, "(")
        params: list[str] = []
        if self.peek().kind is not TokenKind.RPAREN:
            params.append(self.expect(TokenKind.IDENTIFIER, "parameter name").value)
            while self.peek().kind is TokenKind.COMMA:
                self.advance()
                params.append(self.expect(TokenKind.IDENTIFIER, "parameter name").value)
        self.expect(TokenKind.RPAREN, ")")
        block = self.block()
        end = self.tokens[self.i - 1].span
        return ast.FuncDef(name.value, params, block, span=_join(start.span, end))

    def return_stmt(self) -> ast.Node:
        start = self.advance()
        if self.peek().kind is TokenKind.NEWLINE:
            return ast.Return(None, span=start.span)
        expr = self.expression()
        return ast.Return(expr, span=_join(start.span, expr.span))

    # --- expressions ------------------------------------------------------

    def expression(self) -> ast.Node:
        return self.or_expr()

    def or_expr(self) -> ast.Node:
        node = self.and_expr()
        while self.at_keyword(Keyword.OR):
            self.advance()
            rhs = self.and_expr()
            node = ast.BinOp("or", node, rhs, span=_join(node.span, rhs.span))
        return node

    def and_expr(self) -> ast.Node:
        node = self.not_expr()
        while self.at_keyword(Keyword.AND):
            self.advance()
            rhs = self.not_expr()
            node = ast.BinOp("and", node, rhs, span=_join(node.span, rhs.span))
        return node

    def not_expr(self) -> ast.Node:
        if self.at_keyword(Keyword.NOT):
            start = self.advance()
            operand = self.not_expr()
            return ast.UnaryOp("not", operand, span=_join(start.span, operand.span))
        return self.comparison()

    def comparison(self) -> ast.Node:
        node = self.additive()
        while (self.peek().kind is TokenKind.OPERATOR
               and self.peek().lexeme in _COMPARISON_OPS):
            op = self.advance().lexeme
            rhs = self.additive()
            node = ast.BinOp(op, node, rhs, span=_join(node.span, rhs.span))
        return node

    def additive(self) -> ast.Node:
        node = self.multiplicative()
        while (self.peek().kind is TokenKind.OPERATOR
               and self.peek().lexeme in _ADDITIVE_OPS):
            op = self.advance().lexeme
            rhs = self.multiplicative()
            node = ast.BinOp(op, node, rhs, span=_join(node.span, rhs.span))
        return node

    def multiplicative(self) -> ast.Node:
        node = self.unary()
        while (self.peek().kind is TokenKind.OPERATOR
               and self.peek().lexeme in _MULTIPLICATIVE_OPS):
            op = self.advance().lexeme
            rhs = self.unary()
            node = ast.BinOp(op, node, rhs, span=_join(node.span, rhs.span))
        return node

    def unary(self) -> ast.Node:
        if self.peek().kind is TokenKind.OPERATOR and self.peek().lexeme == "-":
            start = self.advance()
            operand = self.unary()
            return ast.UnaryOp("-", operand, span=_join(start.span, operand.span))
        return self.postfix()

    def postfix(self) -> ast.Node:
        node = self.primary()
        while True:
            tok = self.peek()
            if tok.kind is TokenKind.LPAREN:
                self.advance()
                args: list[ast.Node] = []
                if self.peek().kind is not TokenKind.RPAREN:
                    args.append(self.expression())
                    while self.peek().kind is TokenKind.COMMA:
                        self.advance()
                        args.append(self.expression())
                rparen = self.expect(TokenKind.RPAREN, ")")
                node = ast.Call(node, args, span=_join(node.span, rparen.span))
            elif tok.kind is TokenKind.LBRACKET:
                self.advance()
                index = self.expression()
                rbracket = self.expect(TokenKind.RBRACKET, "]")
                node = ast.Index(node, index, span=_join(node.span, rbracket.span))
            else:
                return node

    def primary(self) -> ast.Node:
        tok = self.peek()
        if tok.kind is TokenKind.INT_LIT:
            self.advance()
            return ast.IntLit(int(tok.value), span=tok.span)
        if tok.kind is TokenKind.FLOAT_LIT:
            self.advance()
            return ast.FloatLit(float(tok.value), span=tok.span)
        if tok.kind is TokenKind.STRING_LIT:
            self.advance()
            return ast.StringLit(tok.value, span=tok.span)
        if tok.kind is TokenKind.IDENTIFIER:
            self.advance()
            return ast.Name(tok.value, span=tok.span)
        if tok.kind is TokenKind.KEYWORD:
            if tok.keyword is Keyword.TRUE:
                self.advance()
                return ast.BoolLit(True, span=tok.span)
            if tok.keyword is Keyword.FALSE:
                self.advance()
                return ast.BoolLit(False, span=tok.span)
            if tok.keyword is Keyword.NONE:
                self.advance()
                return ast.NoneLit(span=tok.span)
            if tok.keyword in CALLABLE_KEYWORDS:
                self.advance()
                return ast.Name(DEFAULT_KEYWORDS.form_of(tok.keyword), span=tok.span)
            raise KeywordInExpr(tok.span, word=tok.lexeme)
        if tok.kind is TokenKind.LPAREN:
            self.advance()
            node = self.expression()
            self.expect(TokenKind.RPAREN, ")")
            return node
        if tok.kind is TokenKind.LBRACKET:
            self.advance()
            items: list[ast.Node] = []
            if self.peek().kind is not TokenKind.RBRACKET:
                items.append(self.expression())
                while self.peek().kind is TokenKind.COMMA:
                    self.advance()
                    items.append(self.expression())
            rb = self.expect(TokenKind.RBRACKET, "]")
            return ast.ListLit(items, span=_join(tok.span, rb.span))
        raise ParseError(tok.span, expected=["expression"], found=_describe(tok))


def _describe(tok: Token) -> str:
    if tok.kind is TokenKind.EOF:
        return "end of input"
    if tok.kind is TokenKind.NEWLINE:
        return "end of line"
    return repr(tok.lexeme)


def parse(tokens: list[Token]) -> ast.Program:
    """Parse a tokenize() output into a Program; raises ParseError on the first fault."""
    return _Parser(tokens).program()


# --- semantic check -------------------------------------------------------


@dataclass(frozen=True)
class SemanticWarning:
    code: str
    span: Span | None
    params: tuple[tuple[str, str], ...] = ()

    @property
    def message_en(self) -> str:
        return CATALOG[self.code][0].format(**dict(self.params))

    @property
    def message_ar(self) -> str:
        return CATALOG[self.code][1].format(**dict(self.params))


def _direct_defs(block: list[ast.Node]) -> set[str]:
    """Names bound anywhere in this scope, not descending into functions."""
    defs: set[str] = set()
    for stmt in block:
        if isinstance(stmt, ast.Assign):
            defs.add(stmt.target.identifier)
        elif isinstance(stmt, ast.ForEach):
            defs.add(stmt.var)
            defs |= _direct_defs(stmt.block)
        elif isinstance(stmt, ast.FuncDef):
            defs.add(stmt.name)
        elif isinstance(stmt, ast.While):
            defs |= _direct_defs(stmt.block)
        elif isinstance(stmt, ast.If):
            defs |= _direct_defs(stmt.then_block)
            for _, b in stmt.elif_chain:
                defs |= _direct_defs(b)
            if stmt.else_block:
                defs |= _direct_defs(stmt.else_block)
    return defs


def check(program: ast.Program) -> list[SemanticWarning]:
    """Flag undefined names and unknown callees; reject top-level return."""
    warnings: list[SemanticWarning] = []

    def warn(code: str, span: Span | None, **params) -> None:
        warnings.append(SemanticWarning(code, span, tuple(sorted(params.items()))))

    def visit_expr(node: ast.Node, env: set[str], as_callee: bool = False) -> None:
        if isinstance(node, ast.Name):
            if node.identifier in BUILTIN_FORMS or node.identifier in env:
                return
            if as_callee:
                warn("unknown-callee", node.span, name=node.identifier)
            else:
                warn("undefined-name", node.span, name=node.identifier)
        elif isinstance(node, ast.Call):
            visit_expr(node.callee, env, as_callee=True)
            for a in node.args:
                visit_expr(a, env)
        elif isinstance(node, ast.Index):
            visit_expr(node.base, env)
            visit_expr(node.index, env)
        elif isinstance(node, ast.BinOp):
            visit_expr(node.lhs, env)
            visit_expr(node.rhs, env)
        elif isinstance(node, ast.UnaryOp):
            visit_expr(node.operand, env)
        elif isinstance(node, ast.ListLit):
            for item in node.items:
                visit_expr(item, env)

    def visit_block(block: list[ast.Node], env: set[str], in_function: bool) -> None:
        for stmt in block:
            if isinstance(stmt, ast.Assign):
                visit_expr(stmt.value, env)
            elif isinstance(stmt, ast.IndexAssign):
                visit_expr(ast.Name(stmt.base.identifier, span=stmt.base.span), env)
                visit_expr(stmt.index, env)
                visit_expr(stmt.value, env)
            elif isinstance(stmt, ast.ExprStmt):
                visit_expr(stmt.expr, env)
            elif isinstance(stmt, ast.Return):
                if not in_function:
                    raise ReturnOutsideFunction(stmt.span)
                if stmt.expr is not None:
                    visit_expr(stmt.expr, env)
            elif isinstance(stmt, ast.If):
                visit_expr(stmt.cond, env)
                visit_block(stmt.then_block, env, in_function)
                for cond, b in stmt.elif_chain:
                    visit_expr(cond, env)
                    visit_block(b, env, in_function)
                if stmt.else_block:
                    visit_block(stmt.else_block, env, in_function)
            elif isinstance(stmt, ast.While):
                visit_expr(stmt.cond, env)
                visit_block(stmt.block, env, in_function)
            elif isinstance(stmt, ast.ForEach):
                visit_expr(stmt.iterable, env)
                visit_block(stmt.block, env, in_function)
            elif isinstance(stmt, ast.FuncDef):
                local = env | set(stmt.params) | _direct_defs(stmt.block)
                visit_block(stmt.block, local, True)

    env = _direct_defs(program.body)
    visit_block(program.body, env, False)
    return warnings
