"""Recursive-descent parser for the supported ASP-Core-2 subset.

Supported: normal rules, constraints, choice rules ``L { a : c; b } U``,
cardinality atoms in bodies, conditional literals (``:`` syntax, terminated
by ``;`` in bodies), comparisons ``= != < <= > >=`` over terms with integer
arithmetic ``+ - * / \\ mod``, ``#external`` declarations, ``%`` and
``%* *%`` comments.  ``#show`` directives are accepted and ignored.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from ..errors import ParseError, SafetyError
from .syntax import (
    Arith,
    CardinalityAtom,
    Comparison,
    CondLiteral,
    ExternalStmt,
    Fn,
    Literal,
    ProgramAST,
    RuleStmt,
    Var,
    variables,
)

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<block>%\*.*?\*%)
  | (?P<comment>%[^\n]*)
  | (?P<directive>\#[a-z]+)
  | (?P<int>[0-9]+)
  | (?P<ident>_*[a-z][A-Za-z0-9_']*)
  | (?P<var>_*[A-Z][A-Za-z0-9_']*)
  | (?P<anon>_)
  | (?P<op>:-|!=|<>|<=|>=|==|\.\.|[=<>:.,;(){}+\-*/\\])
    """,
    re.VERBOSE | re.DOTALL,
)

_COMPARISONS = {"=": "=", "==": "=", "!=": "!=", "<>": "!=", "<": "<", "<=": "<=", ">": ">", ">=": ">="}


@dataclass
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        value = m.group()
        if kind not in ("ws", "comment", "block"):
            tokens.append(Token(kind, value, line, pos - line_start + 1))
        newlines = value.count("\n")
        if newlines:
            line += newlines
            line_start = pos + value.rfind("\n") + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0
        self.anon = 0

    # token helpers
    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def at(self, *texts: str) -> bool:
        return self.tok.kind in ("op", "directive") and self.tok.text in texts

    def at_keyword(self, word: str) -> bool:
        return self.tok.kind == "ident" and self.tok.text == word

    def advance(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.error(f"expected {text!r}, found {self.tok.text or 'end of input'!r}")
        return self.advance()

    def error(self, message: str, tok: Optional[Token] = None):
        tok = tok or self.tok
        raise ParseError(message, tok.line, tok.col)

    # program
    def program(self) -> ProgramAST:
        ast = ProgramAST()
        while self.tok.kind != "eof":
            stmt = self.statement()
            if isinstance(stmt, ExternalStmt):
                ast.externals.append(stmt)
            elif stmt is not None:
                ast.statements.append(stmt)
        return ast

    def statement(self):
        start = self.tok
        if self.tok.kind == "directive":
            name = self.advance().text
            if name == "#external":
                atom = self.atom()
                cond = ()
                if self.at(":"):
                    self.advance()
                    cond = self.condition_list()
                self.expect(".")
                stmt = ExternalStmt(atom, cond, start.line)
                _check_external_safety(stmt, start)
                return stmt
            if name == "#show":
                while not self.at(".") and self.tok.kind != "eof":
                    self.advance()
                self.expect(".")
                return None
            self.error(f"unsupported directive {name}", start)
        head = None
        if not self.at(":-"):
            head = self.head()
        body: tuple = ()
        if self.at(":-"):
            self.advance()
            body = self.body()
        elif head is None:
            self.error("empty statement")
        self.expect(".")
        stmt = RuleStmt(head, body, start.line)
        _check_safety(stmt, start)
        return stmt

    def head(self):
        if self.at("{") or (self.tok.kind == "int" and self.peek().text == "{"):
            return self.cardinality(choice=True)
        if self.at_keyword("not"):
            self.error("negation is not allowed in rule heads")
        return self.atom()

    def body(self) -> tuple:
        items = [self.body_item()]
        while self.at(",", ";"):
            self.advance()
            items.append(self.body_item())
        return tuple(items)

    def body_item(self):
        positive = True
        if self.at_keyword("not"):
            self.advance()
            positive = False
        if self.at("{") or (self.tok.kind == "int" and self.peek().text == "{"):
            agg = self.cardinality(choice=False)
            return CardinalityAtom(agg.lower, agg.upper, agg.elements, positive)
        lit = self.simple(positive)
        if self.at(":"):
            self.advance()
            return CondLiteral(lit, self.condition_list())
        return lit

    def condition_list(self) -> tuple:
        conds = [self.simple_with_sign()]
        while self.at(","):
            self.advance()
            conds.append(self.simple_with_sign())
        return tuple(conds)

    def simple_with_sign(self):
        positive = True
        if self.at_keyword("not"):
            self.advance()
            positive = False
        return self.simple(positive)

    def simple(self, positive: bool):
        tok = self.tok
        left = self.term()
        if self.tok.kind == "op" and self.tok.text in _COMPARISONS:
            if not positive:
                self.error("negated comparisons are not supported; use the complementary operator", tok)
            op = _COMPARISONS[self.advance().text]
            right = self.term()
            return Comparison(op, left, right)
        return Literal(self._as_atom(left, tok), positive)

    def cardinality(self, choice: bool) -> CardinalityAtom:
        tok = self.tok
        lower = int(self.advance().text) if self.tok.kind == "int" else None
        self.expect("{")
        elements = []
        if not self.at("}"):
            elements.append(self.element(choice))
            while self.at(";"):
                self.advance()
                elements.append(self.element(choice))
        self.expect("}")
        upper = int(self.advance().text) if self.tok.kind == "int" else None
        if lower is not None and upper is not None and lower > upper:
            self.error(f"bad bounds: lower {lower} exceeds upper {upper}", tok)
        return CardinalityAtom(lower, upper, tuple(elements))

    def element(self, choice: bool) -> CondLiteral:
        if choice:
            tok = self.tok
            if self.at_keyword("not"):
                self.error("choice elements must be atoms", tok)
            lit = Literal(self.atom(), True)
        else:
            lit = self.simple_with_sign()
            if isinstance(lit, Comparison):
                self.error("cardinality elements must be literals")
        cond = ()
        if self.at(":"):
            self.advance()
            cond = self.condition_list()
        return CondLiteral(lit, cond)

    # terms
    def atom(self):
        tok = self.tok
        return self._as_atom(self.term(), tok)

    def _as_atom(self, term, tok: Token):
        if isinstance(term, str):
            if term == "not":
                self.error("'not' is a reserved word", tok)
            return term
        if isinstance(term, Fn):
            for arg in term.args:
                if _has_arith(arg):
                    self.error("arithmetic is only supported inside comparisons", tok)
            return term
        self.error(f"expected an atom, found {tok.text!r}", tok)

    def term(self):
        left = self.product()
        while self.at("+", "-"):
            op = self.advance().text
            left = Arith(op, left, self.product())
        return left

    def product(self):
        left = self.unary()
        while self.at("*", "/", "\\") or self.at_keyword("mod"):
            op = self.advance().text
            left = Arith("\\" if op == "mod" else op, left, self.unary())
        return left

    def unary(self):
        if self.at("-"):
            self.advance()
            inner = self.unary()
            if isinstance(inner, int):
                return -inner
            return Arith("-", 0, inner)
        return self.primary()

    def primary(self):
        tok = self.tok
        if tok.kind == "int":
            self.advance()
            return int(tok.text)
        if tok.kind == "var":
            self.advance()
            return Var(tok.text)
        if tok.kind == "anon":
            self.advance()
            self.anon += 1
            return Var(f"_{self.anon}")
        if tok.kind == "ident":
            self.advance()
            if self.at("("):
                self.advance()
                args = [self.term()]
                while self.at(","):
                    self.advance()
                    args.append(self.term())
                self.expect(")")
                return Fn(tok.text, tuple(args))
            return tok.text
        if self.at("("):
            self.advance()
            inner = self.term()
            self.expect(")")
            return inner
        self.error(f"unexpected token {tok.text or 'end of input'!r}")


def _has_arith(term) -> bool:
    if isinstance(term, Arith):
        return True
    if isinstance(term, Fn):
        return any(_has_arith(a) for a in term.args)
    return False


def _positive_vars(items) -> set:
    out = set()
    for item in items:
        if isinstance(item, Literal) and item.positive:
            out |= item.vars()
    return out


def _check_conditional(cond: CondLiteral, bound: set, tok: Token, binds_itself: bool):
    local_bound = bound | _positive_vars(cond.condition)
    if binds_itself and isinstance(cond.literal, Literal) and cond.literal.positive:
        local_bound |= cond.literal.vars()
    unsafe = cond.vars() - local_bound
    if unsafe:
        name = sorted(unsafe)[0]
        raise SafetyError(f"unsafe variable {name} in '{cond}'", tok.line, tok.col)


def _check_safety(stmt: RuleStmt, tok: Token):
    bound = _positive_vars(stmt.body)
    for item in stmt.body:
        if isinstance(item, (Comparison, Literal)):
            unsafe = item.vars() - bound
            if unsafe:
                raise SafetyError(f"unsafe variable {sorted(unsafe)[0]} in '{item}'", tok.line, tok.col)
        elif isinstance(item, CondLiteral):
            _check_conditional(item, bound, tok, binds_itself=False)
        elif isinstance(item, CardinalityAtom):
            for element in item.elements:
                _check_conditional(element, bound, tok, binds_itself=True)
    if stmt.is_choice:
        for element in stmt.head.elements:
            _check_conditional(element, bound, tok, binds_itself=False)
    elif stmt.head is not None:
        unsafe = variables(stmt.head) - bound
        if unsafe:
            raise SafetyError(f"unsafe variable {sorted(unsafe)[0]} in head", tok.line, tok.col)


def _check_external_safety(stmt: ExternalStmt, tok: Token):
    bound = _positive_vars(stmt.condition)
    unsafe = (variables(stmt.atom) | set().union(*(c.vars() for c in stmt.condition))) - bound
    if unsafe:
        raise SafetyError(f"unsafe variable {sorted(unsafe)[0]} in #external", tok.line, tok.col)


def parse(text: str) -> ProgramAST:
    """Parse program text; raises :class:`ParseError` / :class:`SafetyError` with line and column."""
    return _Parser(text).program()
