"""Dense univariate polynomials over an exact field.

Coefficients are stored lowest degree first.  The coefficient field is any
object exposing ``zero``, ``one``, ``coerce`` and ``format_element``; the
rational field ``QQ`` below is the base case, with elements represented as
:class:`fractions.Fraction`.
"""

from fractions import Fraction
from math import gcd

from .errors import BothZero, DivisionByZeroPoly, FieldMismatch


class RationalField:
    """The field Q.  Elements are plain ``Fraction`` values."""

    name = "rational"
    degree = 1
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, value):
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        raise FieldMismatch(f"cannot interpret {value!r} as a rational number")

    def format_element(self, value):
        return str(value)

    def header(self):
        return "rational"

    def random_element(self, rng, bound=5):
        return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))

    def __repr__(self):
        return "QQ"

    def __reduce__(self):
        return (_get_qq, ())


def _get_qq():
    return QQ


QQ = RationalField()


def is_compound(text):
    """True if ``text`` is a sum of several terms at paren depth zero."""
    depth = 0
    for i, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif depth == 0 and i > 0 and ch in "+-" and text[i - 1] == " ":
            return True
    return False


def format_terms(terms):
    """Join ``(coefficient_text, monomial_text)`` pairs into a signed sum.

    An empty monomial marks a constant term.
    """
    pieces = []
    for coeff, mono in terms:
        negative = False
        if is_compound(coeff):
            coeff = f"({coeff})"
        elif coeff.startswith("-"):
            negative = True
            coeff = coeff[1:]
        if not mono:
            body = coeff
        elif coeff == "1":
            body = mono
        else:
            body = f"{coeff}*{mono}"
        if not pieces:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f" - {body}" if negative else f" + {body}")
    return "".join(pieces) if pieces else "0"


class Poly:
    __slots__ = ("field", "coeffs")

    def __init__(self, coeffs=(), field=QQ):
        c = [field.coerce(x) for x in coeffs]
        while c and not c[-1]:
            c.pop()
        self.field = field
        self.coeffs = tuple(c)

    @classmethod
    def _make(cls, coeffs, field):
        # trusted constructor: coefficients already in the field
        c = list(coeffs)
        while c and not c[-1]:
            c.pop()
        p = cls.__new__(cls)
        p.field = field
        p.coeffs = tuple(c)
        return p

    @classmethod
    def x(cls, field=QQ):
        return cls._make((field.zero, field.one), field)

    @classmethod
    def constant(cls, value, field=QQ):
        return cls._make((field.coerce(value),), field)

    @classmethod
    def monomial(cls, n, value=1, field=QQ):
        return cls._make((field.zero,) * n + (field.coerce(value),), field)

    # -- basic properties ------------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one

    def __getitem__(self, k):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return self.field.zero

    def __len__(self):
        return len(self.coeffs)

    # -- arithmetic --------------------------------------------------------

    def _lift(self, other):
        if isinstance(other, Poly):
            if other.field != self.field:
                raise FieldMismatch("polynomials over different fields")
            return other
        try:
            return Poly._make((self.field.coerce(other),), self.field)
        except FieldMismatch:
            return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly._make(out, self.field)

    __radd__ = __add__

    def __neg__(self):
        return Poly._make([-c for c in self.coeffs], self.field)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            try:
                s = self.field.coerce(other)
            except FieldMismatch:
                return NotImplemented
            return Poly._make([c * s for c in self.coeffs], self.field)
        if other.field != self.field:
            raise FieldMismatch("polynomials over different fields")
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly._make((), self.field)
        zero = self.field.zero
        out = [zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return Poly._make(out, self.field)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers need a nonnegative integer exponent")
        result = Poly._make((self.field.one,), self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other):
        other = self._lift(other)
        if not other:
            raise DivisionByZeroPoly("polynomial division by zero")
        r = list(self.coeffs)
        db = other.degree
        if len(r) <= db:
            return Poly._make((), self.field), self
        inv = self.field.one / other.lc
        q = [self.field.zero] * (len(r) - db)
        b = other.coeffs
        for k in range(len(r) - 1, db - 1, -1):
            c = r[k]
            if not c:
                continue
            c = c * inv
            q[k - db] = c
            for j in range(db + 1):
                r[k - db + j] = r[k - db + j] - c * b[j]
        return Poly._make(q, self.field), Poly._make(r[:db], self.field)

    def __divmod__(self, other):
        return self.divmod(other)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __truediv__(self, other):
        if isinstance(other, Poly):
            if other.degree != 0:
                raise DivisionByZeroPoly("exact division by a non-constant polynomial; use divmod")
            other = other.coeffs[0]
        s = self.field.coerce(other)
        if not s:
            raise DivisionByZeroPoly("polynomial division by zero")
        inv = self.field.one / s
        return Poly._make([c * inv for c in self.coeffs], self.field)

    def monic(self):
        if not self.coeffs:
            return self
        return self / self.coeffs[-1]

    def derivative(self):
        return Poly._make([c * k for k, c in enumerate(self.coeffs)][1:], self.field)

    def __call__(self, value):
        """Evaluate by Horner's rule at any value closed under + and *."""
        if not self.coeffs:
            return self.field.zero
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * value + c
        return acc

    def compose(self, other):
        """Return self(other) for another polynomial over the same field."""
        other = self._lift(other)
        acc = Poly._make((), self.field)
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def map_coeffs(self, fn, field):
        return Poly._make([fn(c) for c in self.coeffs], field)

    # -- comparison / display -------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field == other.field and self.coeffs == other.coeffs
        try:
            other = self.field.coerce(other)
        except (FieldMismatch, TypeError):
            return NotImplemented
        if not other:
            return not self.coeffs
        return self.coeffs == (other,)

    def __hash__(self):
        return hash(("Poly", self.coeffs))

    def sort_key(self):
        key = []
        for c in self.coeffs:
            coords = getattr(c, "coords", None)
            key.append(tuple(coords) if coords is not None else (c,))
        return (self.degree, tuple(key))

    def format(self, var="x"):
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            terms.append((self.field.format_element(c), mono))
        return format_terms(terms)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"Poly({self.format()!r})"


def ratpoly(coeffs):
    """Shorthand: a rational polynomial from low-to-high coefficients."""
    return Poly([Fraction(c) for c in coeffs], QQ)


def poly_gcd(p, q):
    """Monic greatest common divisor."""
    if not p and not q:
        raise BothZero("gcd of two zero polynomials")
    if not p:
        return q.monic()
    if not q:
        return p.monic()
    if p.field is QQ:
        if p.degree == 0 or q.degree == 0:
            return Poly._make((Fraction(1),), QQ)
        return _gcd_over_Q(p, q)
    a, b = p, q
    while b:
        a, b = b, a % b
    return a.monic()


def _int_primitive(f):
    g = 0
    for a in f:
        g = gcd(g, a)
        if g == 1:
            return f
    return [a // g for a in f]


def _int_coeffs(p):
    den = 1
    for c in p.coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    return _int_primitive([int(c * den) for c in p.coeffs])


def _gcd_over_Q(p, q):
    """Primitive PRS on integer coefficient lists; Fraction arithmetic only at the end."""
    a, b = _int_coeffs(p), _int_coeffs(q)
    if len(a) < len(b):
        a, b = b, a
    while b:
        n = len(b) - 1
        lb = b[-1]
        r = list(a)
        while len(r) - 1 >= n and r:
            c = r[-1]
            shift = len(r) - 1 - n
            r = [x * lb for x in r]
            for i, bi in enumerate(b):
                r[i + shift] -= c * bi
            while r and not r[-1]:
                r.pop()
        a, b = b, (_int_primitive(r) if r else r)
    lc = a[-1]
    return Poly._make(tuple(Fraction(x, lc) for x in a), QQ)


def poly_xgcd(p, q):
    """Return ``(g, s, t)`` with ``s*p + t*q = g`` and ``g`` monic."""
    if not p and not q:
        raise BothZero("gcd of two zero polynomials")
    field = p.field
    one = Poly.constant(field.one, field)
    zero = Poly._make((), field)
    r0, r1 = p, q
    s0, s1 = one, zero
    t0, t1 = zero, one
    while r1:
        quo, rem = r0.divmod(r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quo * s1
        t0, t1 = t1, t0 - quo * t1
    inv = field.one / r0.lc
    return r0 * inv, s0 * inv, t0 * inv


def squarefree_decomposition(p):
    """Yun's algorithm (characteristic zero).

    Returns ``[(a_i, i), ...]`` with monic squarefree, pairwise coprime
    ``a_i`` such that ``monic(p) = prod a_i^i``.  Trivial parts are omitted.
    """
    p = p.monic()
    if p.degree < 1:
        return []
    out = []
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = p // a
    c = dp // a
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        g = poly_gcd(b, d)
        if g.degree > 0:
            out.append((g, i))
        b = b // g
        c = d // g
        d = c - b.derivative()
        i += 1
    return out


def interpolate(xs, ys, field=QQ):
    """Newton interpolation through the points ``(xs[i], ys[i])``."""
    n = len(xs)
    coef = [field.coerce(y) for y in ys]
    xs = [field.coerce(x) for x in xs]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    result = Poly._make((), field)
    X = Poly.x(field)
    for i in range(n - 1, -1, -1):
        result = result * (X - xs[i]) + coef[i]
    return result
