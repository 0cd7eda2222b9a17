"""Text formats: expressions, field headers, matrices, homs, bases and hs files.

Every printer here produces text its parser reads back to an equal value.
Parse failures raise :class:`ParseError` with the byte offset of the
offending token in the original text.
"""

import re
from fractions import Fraction

from .errors import DegreeCapExceeded, ParseError, TsvsError
from .funcfield import DiffOperator, FunctionField, RatFunc
from .matrix import Matrix
from .numfield import NumberField
from .poly import QQ, Poly

MAX_MATRIX_SIZE = 64

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _byte_offset(text, pos):
    return len(text[:pos].encode("utf-8"))


class _Tokens:
    def __init__(self, text, base=0):
        self.text = text
        self.base = base  # character offset of text inside the whole file
        self.items = []
        pos = 0
        n = len(text)
        while pos < n:
            m = _TOKEN.match(text, pos)
            if m is None:
                break  # only trailing whitespace remains
            if m.group(1) is not None:
                self.items.append(("num", m.group(1), m.start(1)))
            elif m.group(2) is not None:
                self.items.append(("name", m.group(2), m.start(2)))
            else:
                self.items.append(("op", m.group(3), m.start(3)))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.items[self.i] if self.i < len(self.items) else ("end", "", len(self.text))

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def error(self, message, tok=None, full=None):
        tok = tok or self.peek()
        raise ParseError(message, _byte_offset(full if full is not None else self.text, self.base + tok[2]))

    def expect(self, op, full=None):
        tok = self.next()
        if tok[0] != "op" or tok[1] != op:
            shown = tok[1] or "end of input"
            self.error(f"expected {op!r}, found {shown!r}", tok, full)
        return tok


class ExprParser:
    """Recursive descent over + - * / ^, unary signs, parentheses and lists.

    ``env`` maps identifiers to values and ``funcs`` maps call names to
    one-argument callables; ``fallback(name)`` may resolve other names.
    """

    def __init__(self, env=None, funcs=None, fallback=None):
        self.env = dict(env or {})
        self.funcs = dict(funcs or {})
        self.fallback = fallback

    def parse(self, text, full=None, base=0):
        self.full = text if full is None else full
        self.toks = _Tokens(text, base)
        value = self._value()
        tok = self.toks.peek()
        if tok[0] != "end":
            self._fail(f"unexpected {tok[1]!r}", tok)
        return value

    def _fail(self, message, tok=None):
        self.toks.error(message, tok, self.full)

    def _value(self):
        tok = self.toks.peek()
        if tok[0] == "op" and tok[1] == "[":
            return self._list()
        return self._expr()

    def _list(self):
        self.toks.expect("[", self.full)
        items = []
        sep = None
        if self.toks.peek()[:2] == ("op", "]"):
            self.toks.next()
            return items
        while True:
            items.append(self._value())
            tok = self.toks.next()
            if tok[0] == "op" and tok[1] == "]":
                return items
            if tok[0] == "op" and tok[1] in ",;":
                if sep is None:
                    sep = tok[1]
                elif sep != tok[1]:
                    self._fail("mixed ',' and ';' separators in one list", tok)
                continue
            self._fail(f"expected ',' or ']', found {tok[1] or 'end of input'!r}", tok)

    def _arith(self, fn, tok):
        try:
            out = fn()
        except TsvsError as exc:
            if isinstance(exc, ParseError):
                raise
            self._fail(f"{exc.name}: {exc}", tok)
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            self._fail(str(exc) or type(exc).__name__, tok)
        if out is NotImplemented:
            self._fail("operands do not combine", tok)
        return out

    def _expr(self):
        left = self._term()
        while True:
            tok = self.toks.peek()
            if tok[0] == "op" and tok[1] in "+-":
                self.toks.next()
                right = self._term()
                if tok[1] == "+":
                    left = self._arith(lambda a=left, b=right: a + b, tok)
                else:
                    left = self._arith(lambda a=left, b=right: a - b, tok)
            else:
                return left

    def _term(self):
        left = self._unary()
        while True:
            tok = self.toks.peek()
            if tok[0] == "op" and tok[1] in "*/":
                self.toks.next()
                right = self._unary()
                if tok[1] == "*":
                    left = self._arith(lambda a=left, b=right: a * b, tok)
                else:
                    left = self._arith(lambda a=left, b=right: a / b, tok)
            else:
                return left

    def _unary(self):
        tok = self.toks.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.toks.next()
            inner = self._unary()
            return inner if tok[1] == "+" else self._arith(lambda: -inner, tok)
        return self._power()

    def _power(self):
        base = self._atom()
        tok = self.toks.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.toks.next()
            etok = self.toks.peek()
            exp = self._unary()
            if isinstance(exp, Fraction) and exp.denominator == 1:
                exp = int(exp)
            if not isinstance(exp, int):
                self._fail("exponent must be an integer", etok)
            return self._arith(lambda: base ** exp, tok)
        return base

    def _atom(self):
        tok = self.toks.next()
        kind, text, _ = tok
        if kind == "num":
            return Fraction(int(text))
        if kind == "name":
            nxt = self.toks.peek()
            if nxt[:2] == ("op", "(") and text in self.funcs:
                self.toks.next()
                arg = self._expr()
                self.toks.expect(")", self.full)
                return self._arith(lambda: self.funcs[text](arg), tok)
            if text in self.env:
                return self.env[text]
            if self.fallback is not None:
                value = self.fallback(text)
                if value is not None:
                    return value
            self._fail(f"unknown name {text!r}", tok)
        if kind == "op" and text == "(":
            inner = self._expr()
            self.toks.expect(")", self.full)
            return inner
        self._fail(f"unexpected {text or 'end of input'!r}", tok)


# -- scalars and polynomials ------------------------------------------------------------


def field_env(F):
    """Identifiers naming elements of F."""
    if isinstance(F, NumberField):
        return {F.gen_name: F.gen}
    if isinstance(F, FunctionField):
        return {F.var: F.gen}
    return {}


def _coerce(F, value, offset=0):
    try:
        return F.coerce(value)
    except TsvsError:
        raise ParseError(f"value is not an element of {F.header()}", offset) from None


def parse_poly(text, field=QQ, var="x"):
    """A polynomial in ``var`` over Q or a number field (``g`` names its generator)."""
    X = Poly.x(field)
    env = {var: X}
    if isinstance(field, NumberField):
        env[field.gen_name] = Poly.constant(field.gen, field)
    value = ExprParser(env).parse(text)
    if isinstance(value, list):
        raise ParseError("expected a polynomial, found a list", 0)
    if not isinstance(value, Poly):
        value = Poly.constant(_coerce(field, value), field)
    return value


def parse_element(text, F):
    value = ExprParser(field_env(F)).parse(text)
    if isinstance(value, list):
        raise ParseError("expected a field element, found a list", 0)
    return _coerce(F, value)


def format_element(F, x):
    return F.format_element(x)


# -- fields -------------------------------------------------------------------------------

_NUMBERFIELD = re.compile(r"\s*numberfield\s+([A-Za-z_][A-Za-z_0-9]*)\s*:(.*)$", re.S)
_FUNCFIELD = re.compile(r"\s*funcfield\s+([A-Za-z_][A-Za-z_0-9]*)\s*$")
_RATIONAL = re.compile(r"\s*rational\s*$")


def is_field_header(line):
    return bool(_NUMBERFIELD.match(line) or _FUNCFIELD.match(line) or _RATIONAL.match(line))


def parse_field_header(line, full=None, base=0, max_degree=None):
    full = line if full is None else full
    m = _NUMBERFIELD.match(line)
    if m:
        gen = m.group(1)
        if gen == "x":
            raise ParseError("the generator name x is reserved for polynomials", _byte_offset(full, base + m.start(1)))
        f = ExprParser({"x": Poly.x(QQ)}).parse(m.group(2), full, base + m.start(2))
        if not isinstance(f, Poly):
            if isinstance(f, list):
                raise ParseError("defining polynomial expected", _byte_offset(full, base + m.start(2)))
            f = Poly.constant(f, QQ)
        return NumberField(f, gen_name=gen, max_degree=max_degree)
    m = _FUNCFIELD.match(line)
    if m:
        return FunctionField(m.group(1))
    if _RATIONAL.match(line):
        return QQ
    raise ParseError("expected 'numberfield <g>: <poly>', 'funcfield <t>' or 'rational'",
                     _byte_offset(full, base + len(line) - len(line.lstrip())))


def format_field(F):
    return F.header()


def _strip_comments(text):
    """Blank out '#' comments, keeping every other character in place."""
    return re.sub(r"#[^\n]*", lambda m: " " * len(m.group(0)), text)


def _lines(text):
    """(start offset, line) for every non-blank line after comment removal."""
    out = []
    pos = 0
    for line in _strip_comments(text).split("\n"):
        if line.strip():
            out.append((pos, line))
        pos += len(line) + 1
    return out


def parse_field(text, max_degree=None):
    lines = _lines(text)
    if not lines:
        raise ParseError("empty field file", 0)
    if len(lines) > 1:
        raise ParseError("a field file holds a single header line", _byte_offset(text, lines[1][0]))
    base, line = lines[0]
    return parse_field_header(line, text, base, max_degree)


# -- matrices and homs ---------------------------------------------------------------------


def _matrix_from_value(F, value, text, base, max_size):
    off = _byte_offset(text, base)
    if not isinstance(value, list) or not value or not all(isinstance(r, list) for r in value):
        raise ParseError("expected a matrix [[...], ...]", off)
    width = len(value[0])
    if width == 0 or any(len(r) != width for r in value):
        raise ParseError("matrix rows have unequal or zero length", off)
    if max(len(value), width) > max_size:
        raise DegreeCapExceeded(f"matrix size {len(value)}x{width} exceeds cap {max_size}")
    rows = []
    for r in value:
        row = []
        for v in r:
            if isinstance(v, list):
                raise ParseError("matrix entries must be scalars", off)
            row.append(_coerce(F, v, off))
        rows.append(row)
    return Matrix(F, rows)


def parse_matrix_body(text, F, full=None, base=0, max_size=None):
    full = text if full is None else full
    max_size = MAX_MATRIX_SIZE if max_size is None else max_size
    value = ExprParser(field_env(F)).parse(text, full, base)
    return _matrix_from_value(F, value, full, base, max_size)


def _header_and_body(text, require_header, default=QQ, max_degree=None):
    lines = _lines(text)
    if not lines:
        raise ParseError("empty input", 0)
    base, first = lines[0]
    if is_field_header(first):
        F = parse_field_header(first, text, base, max_degree)
        rest = lines[1:]
    elif require_header:
        raise ParseError("missing field header line", _byte_offset(text, base))
    else:
        F, rest = default, lines
    if not rest:
        raise ParseError("missing body after header", len(text.encode("utf-8")))
    body_start = rest[0][0]
    body = _strip_comments(text)[body_start:]
    return F, body, body_start


def parse_matrix(text, field=None, max_size=None, max_degree=None):
    """A matrix file: optional field header (Q by default), then ``[[...], ...]``."""
    F, body, start = _header_and_body(text, False, field or QQ, max_degree)
    return parse_matrix_body(body, F, text, start, max_size)


def format_matrix(M, header=True):
    body = M.format()
    return f"{M.field.header()}\n{body}\n" if header else body + "\n"


def parse_hom(text, max_size=None, max_degree=None):
    from .bimod import MatrixHom

    F, body, start = _header_and_body(text, True, max_degree=max_degree)
    A = parse_matrix_body(body, F, text, start, max_size)
    if not A.is_square():
        raise ParseError("hom matrix must be square", _byte_offset(text, start))
    return MatrixHom(F, A)


def format_hom(h):
    return f"{h.field.header()}\n{h.gen_image.format()}\n"


# -- bases of K[X]/(g) ----------------------------------------------------------------------


def parse_basis(text, K, var="x"):
    """``[1, 1/2*g^2*x]``: polynomials in ``x`` over K.  A leading field header must match K."""
    lines = _lines(text)
    if not lines:
        raise ParseError("empty basis file", 0)
    start = lines[0][0]
    if is_field_header(lines[0][1]):
        F = parse_field_header(lines[0][1], text, start)
        if F != K:
            raise ParseError("basis header names a different field", _byte_offset(text, start))
        if len(lines) < 2:
            raise ParseError("missing basis after header", len(text.encode("utf-8")))
        start = lines[1][0]
    body = _strip_comments(text)[start:]
    X = Poly.x(K)
    env = {var: X, K.gen_name: Poly.constant(K.gen, K)}
    value = ExprParser(env).parse(body, text, start)
    if not isinstance(value, list) or any(isinstance(v, list) for v in value):
        raise ParseError("expected a list of polynomials", _byte_offset(text, start))
    return [v if isinstance(v, Poly) else Poly.constant(K.coerce(v), K) for v in value]


def format_basis(basis, var="x"):
    return "[" + ", ".join(p.format(var) for p in basis) + "]"


# -- higher derivations ----------------------------------------------------------------------

_HS = re.compile(r"\s*hs\s+over\s+(.*?):\s*(\[.*)$", re.S)
_HASSE_NAME = re.compile(r"D(\d+)$")


def parse_hs(text):
    """``hs over funcfield t: [D0; D1; t*D1 + 2*D2]`` (entries may also be ``sub(s)``)."""
    from .canonical import HigherDerivation, Substitution

    clean = _strip_comments(text)
    m = _HS.match(clean)
    if not m:
        raise ParseError("expected 'hs over <field>: [...]'", 0)
    F = parse_field_header(m.group(1), text, m.start(1))
    env = field_env(F)

    def hasse(name):
        hm = _HASSE_NAME.match(name)
        return DiffOperator.hasse(F, int(hm.group(1))) if hm else None

    funcs = {"sub": lambda s: Substitution(F, s)}
    value = ExprParser(env, funcs, hasse).parse(m.group(2), text, m.start(2))
    off = _byte_offset(text, m.start(2))
    if not isinstance(value, list) or not value:
        raise ParseError("expected a nonempty list [d0; d1; ...]", off)
    maps = []
    for v in value:
        if isinstance(v, (DiffOperator, Substitution)):
            maps.append(v)
        elif isinstance(v, (Fraction, RatFunc)) and not v:
            maps.append(DiffOperator(F))
        else:
            raise ParseError("each entry must be a differential operator or sub(...)", off)
    return HigherDerivation(F, maps)


def format_hs(d):
    return d.header() + "\n"
