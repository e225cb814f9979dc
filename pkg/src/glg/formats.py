"""Line-oriented text formats for algebras and gradings.

Algebra file::

    field Q                 # or: field GF 2
    basis a u v w
    bracket a u = u
    bracket a v = w

Grading file::

    part alpha = a, u
    part beta = v

``#`` starts a comment.  Expressions are ``0`` or signed sums of ``name`` or
``coeff*name`` with integer or ``a/b`` coefficients.  Brackets not declared
are zero, and only one orientation of each pair may be given.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .exactmath import QQ, Field, is_prime
from .grading import LABEL_RE, Grading, GradingError, validate_grading
from .liealg import LieAlgebra, check_lie_axioms

NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")
_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[-+*,=]))")


class ParseError(ValueError):
    def __init__(self, message, line=None, column=None):
        self.message, self.line, self.column = message, line, column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


def _lines(text):
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        if body.strip():
            yield lineno, body


def _tokens(body, lineno, start):
    """Tokens of ``body[start:]`` as (kind, text, column)."""
    out = []
    pos = start
    while pos < len(body):
        if body[pos:].strip() == "":
            break
        m = _TOKEN.match(body, pos)
        if not m:
            col = pos + len(body[pos:]) - len(body[pos:].lstrip()) + 1
            raise ParseError(f"unexpected character {body[col - 1]!r}", lineno, col)
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind) + 1))
        pos = m.end()
    return out


class _Expr:
    """Recursive-descent reader for one comma-free expression."""

    def __init__(self, toks, lineno, field, names, end_col):
        self.toks, self.i = toks, 0
        self.lineno, self.field, self.names, self.end_col = lineno, field, names, end_col

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.lineno, tok[2] if tok else self.end_col)

    def coeff(self, tok):
        try:
            return self.field(Fraction(tok[1]))
        except ZeroDivisionError:
            self.error(f"coefficient {tok[1]} is not defined in {self.field}", tok)

    def term(self):
        tok = self.peek()
        if tok is None:
            self.error("expected a term")
        c = self.field.one
        if tok[0] == "num":
            self.i += 1
            c = self.coeff(tok)
            nxt = self.peek()
            if nxt is None or nxt[1] != "*":
                if tok[1] == "0":
                    return None, self.field.zero
                self.error("expected '*' after coefficient")
            self.i += 1
            tok = self.peek()
        if tok is None or tok[0] != "name":
            self.error("expected a basis name")
        if tok[1] not in self.names:
            self.error(f"unknown basis name {tok[1]!r}", tok)
        self.i += 1
        return tok[1], c

    def read(self):
        """Parse up to a ',' or the end; return a coordinate vector."""
        f = self.field
        v = [f.zero] * len(self.names)
        sign = f.one
        tok = self.peek()
        if tok and tok[1] in "+-":
            sign = f.neg(f.one) if tok[1] == "-" else f.one
            self.i += 1
        while True:
            name, c = self.term()
            if name is not None:
                k = self.names.index(name)
                v[k] = f.add(v[k], f.mul(sign, c))
            tok = self.peek()
            if tok is None or tok[1] == ",":
                return tuple(v)
            if tok[1] not in "+-":
                self.error(f"unexpected {tok[1]!r}")
            sign = f.neg(f.one) if tok[1] == "-" else f.one
            self.i += 1


def _field_from(words, lineno):
    if words == ["Q"]:
        return QQ
    if len(words) == 2 and words[0] == "GF" and words[1].isdigit():
        p = int(words[1])
        if not is_prime(p) or p >= 2**31:
            raise ParseError(f"GF {p}: characteristic must be a prime below 2^31", lineno)
        return Field(p)
    raise ParseError("expected 'field Q' or 'field GF <p>'", lineno)


def parse_algebra(text: str) -> LieAlgebra:
    field = None
    names = None
    basis_line = None
    declared = {}  # frozenset pair -> (line, i, j, vector)
    for lineno, body in _lines(text):
        words = body.split()
        key = words[0]
        if key == "field":
            if field is not None:
                raise ParseError("field declared twice", lineno)
            if names is not None:
                raise ParseError("field must come before basis", lineno)
            field = _field_from(words[1:], lineno)
        elif key == "basis":
            if names is not None:
                raise ParseError(f"basis declared twice (first on line {basis_line})", lineno)
            if len(words) < 2:
                raise ParseError("basis needs at least one name", lineno)
            for w in words[1:]:
                if not NAME_RE.match(w):
                    raise ParseError(f"bad basis name {w!r}", lineno, body.index(w) + 1)
            if len(set(words[1:])) != len(words) - 1:
                raise ParseError("basis names must be distinct", lineno)
            names, basis_line = words[1:], lineno
            field = field or QQ
        elif key == "bracket":
            if names is None:
                raise ParseError("bracket before basis", lineno)
            _bracket_line(body, lineno, field, names, declared)
        else:
            raise ParseError(f"unknown keyword {key!r}", lineno, body.index(key) + 1)
    if names is None:
        raise ParseError("no basis declared")
    brackets = {}
    lines = {}
    for pair, (line, i, j, v) in declared.items():
        brackets[(names[i], names[j])] = dict(zip(names, v))
        lines[pair] = line
    alg = LieAlgebra.from_brackets(field, names, brackets)
    report = check_lie_axioms(alg)
    if report.jacobi:
        i, j, k = report.jacobi[0][:3]
        pairs = [frozenset(p) for p in ((i, j), (j, k), (k, i))]
        line = max((lines[p] for p in pairs if p in lines), default=basis_line)
        raise ParseError(f"Jacobi identity fails for {names[i]}, {names[j]}, {names[k]}", line)
    return alg


def _bracket_line(body, lineno, field, names, declared):
    m = re.match(r"\s*bracket\s+(\S+)\s+(\S+)\s*=", body)
    if not m:
        raise ParseError("expected 'bracket <name> <name> = <expr>'", lineno)
    x, y = m.group(1), m.group(2)
    for w, g in ((x, 1), (y, 2)):
        if w not in names:
            raise ParseError(f"unknown basis name {w!r}", lineno, m.start(g) + 1)
    if x == y:
        raise ParseError(f"diagonal bracket [{x},{x}] must be zero", lineno, m.start(1) + 1)
    toks = _tokens(body, lineno, m.end())
    expr = _Expr(toks, lineno, field, names, len(body) + 1)
    v = expr.read()
    if expr.peek() is not None:
        expr.error("expected end of line")
    i, j = names.index(x), names.index(y)
    pair = frozenset((i, j))
    if pair in declared:
        line, pi, pj, pv = declared[pair]
        if (pi, pj) == (i, j):
            raise ParseError(f"duplicate bracket declaration for [{x},{y}] (line {line})", lineno)
        if tuple(field.neg(c) for c in pv) != v:
            raise ParseError(f"[{x},{y}] is inconsistent with anticommutativity "
                             f"(line {line} forces it to be minus [{y},{x}])", lineno)
        raise ParseError(f"duplicate bracket declaration: [{x},{y}] already follows from line {line}", lineno)
    declared[pair] = (lineno, i, j, v)


def parse_grading(text: str, alg: LieAlgebra) -> Grading:
    """Parse a grading file and validate it against ``alg``.

    Validation failures are raised as the corresponding GradingError.
    """
    items = []
    seen = {}
    names = list(alg.basis_names)
    for lineno, body in _lines(text):
        m = re.match(r"\s*part\s+(\S+)\s*=", body)
        if not m:
            key = body.split()[0]
            if key != "part":
                raise ParseError(f"unknown keyword {key!r}", lineno, body.index(key) + 1)
            raise ParseError("expected 'part <label> = <expr>, ...'", lineno)
        label = m.group(1)
        if not LABEL_RE.match(label):
            raise ParseError(f"bad label {label!r}", lineno, m.start(1) + 1)
        if label in seen:
            raise ParseError(f"part {label!r} already declared on line {seen[label]}", lineno)
        seen[label] = lineno
        toks = _tokens(body, lineno, m.end())
        expr = _Expr(toks, lineno, alg.field, names, len(body) + 1)
        vectors = [expr.read()]
        while expr.peek() is not None:
            expr.i += 1  # the comma
            vectors.append(expr.read())
        items.append((label, alg.span_vectors(vectors)))
    if not items:
        raise ParseError("no parts declared")
    return validate_grading(alg, items)


def _format_coeff(field: Field, c):
    if field.characteristic == 0:
        return str(c)
    return str(c % field.characteristic)


def format_expr(alg: LieAlgebra, v) -> str:
    terms = []
    for c, name in zip(v, alg.basis_names):
        if not c:
            continue
        neg = alg.field.characteristic == 0 and c < 0
        c = -c if neg else c
        body = name if c == 1 else f"{_format_coeff(alg.field, c)}*{name}"
        terms.append(("- " if neg else "+ ") + body)
    if not terms:
        return "0"
    text = " ".join(terms)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


def serialize_algebra(alg: LieAlgebra) -> str:
    f = alg.field
    lines = ["field Q" if f.characteristic == 0 else f"field GF {f.characteristic}",
             "basis " + " ".join(alg.basis_names)]
    for i, j, v in alg.brackets():
        lines.append(f"bracket {alg.basis_names[i]} {alg.basis_names[j]} = {format_expr(alg, v)}")
    return "\n".join(lines) + "\n"


def serialize_grading(grading: Grading) -> str:
    alg = grading.algebra
    lines = [f"part {label} = " + ", ".join(format_expr(alg, row) for row in s.basis)
             for label, s in grading.items]
    return "\n".join(lines) + "\n"


__all__ = ["GradingError", "ParseError", "format_expr", "parse_algebra", "parse_grading",
           "serialize_algebra", "serialize_grading"]
