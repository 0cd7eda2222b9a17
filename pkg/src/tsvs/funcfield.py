"""The rational function field Q(t), Hasse derivatives and differential operators."""

from fractions import Fraction
from math import comb

from .errors import DivisionByZero, FieldMismatch, NoFit, SingularMatrix
from .poly import QQ, Poly, format_terms, is_compound, poly_gcd


class FunctionField:
    """Q(t).  Elements are :class:`RatFunc` values."""

    degree = None

    def __init__(self, var="t"):
        self.var = var
        self.zero = RatFunc(self, Poly(), Poly([1]))
        self.one = RatFunc(self, Poly([1]), Poly([1]))

    @property
    def gen(self):
        return RatFunc(self, Poly.x(), Poly([1]))

    def from_poly(self, p):
        return RatFunc(self, p, Poly([1]))

    def element(self, num, den=None):
        num = num if isinstance(num, Poly) else Poly(num)
        den = Poly([1]) if den is None else (den if isinstance(den, Poly) else Poly(den))
        return RatFunc.make(self, num, den)

    def coerce(self, value):
        if isinstance(value, RatFunc):
            if value.field is not self and value.field != self:
                raise FieldMismatch("element belongs to a different function field")
            return value
        if isinstance(value, (int, Fraction)):
            if not value:
                return self.zero
            return RatFunc(self, Poly([Fraction(value)]), Poly([1]))
        if isinstance(value, Poly) and value.field is QQ:
            return self.from_poly(value)
        raise FieldMismatch(f"cannot interpret {value!r} in Q({self.var})")

    def format_element(self, value):
        return value.format()

    def header(self):
        return f"funcfield {self.var}"

    def random_element(self, rng, bound=3, max_degree=2):
        def rp(lo):
            return Poly([Fraction(rng.randint(-bound, bound)) for _ in range(rng.randint(lo, max_degree + 1))])

        num = rp(1)
        den = rp(1)
        while not den:
            den = rp(1)
        return RatFunc.make(self, num, den)

    def __eq__(self, other):
        return isinstance(other, FunctionField) and other.var == self.var

    def __hash__(self):
        return hash(("FunctionField", self.var))

    def __repr__(self):
        return f"FunctionField({self.var!r})"

    def __str__(self):
        return self.header()


class RatFunc:
    """num/den with gcd 1 and monic denominator."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field, num, den):
        # trusted: already normalized
        self.field = field
        self.num = num
        self.den = den

    @classmethod
    def make(cls, field, num, den):
        if not den:
            raise DivisionByZero("zero denominator")
        if not num:
            return field.zero
        g = poly_gcd(num, den)
        if g.degree > 0:
            num, den = num // g, den // g
        lc = den.lc
        if lc != 1:
            num, den = num / lc, den / lc
        return cls(field, num, den)

    def _other(self, other):
        if isinstance(other, RatFunc):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatch("elements of different function fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.coerce(other)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RatFunc.make(self.field, self.num + o.num, self.den)
        if self.den.degree == 0 or o.den.degree == 0 or poly_gcd(self.den, o.den).degree == 0:
            # coprime denominators: the sum is already in lowest terms
            num = self.num * o.den + o.num * self.den
            if not num:
                return self.field.zero
            return RatFunc(self.field, num, self.den * o.den)
        return RatFunc.make(self.field, self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(self.field, -self.num, self.den)

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return self.field.zero
            return RatFunc(self.field, self.num * Fraction(other), self.den)
        o = self._other(other)
        if o is None:
            return NotImplemented
        if not self.num or not o.num:
            return self.field.zero
        # cross-cancel so no gcd of the full products is needed
        n1, d1, n2, d2 = self.num, self.den, o.num, o.den
        if d2.degree > 0 and n1.degree > 0:
            g = poly_gcd(n1, d2)
            if g.degree > 0:
                n1, d2 = n1 // g, d2 // g
        if d1.degree > 0 and n2.degree > 0:
            g = poly_gcd(n2, d1)
            if g.degree > 0:
                n2, d1 = n2 // g, d1 // g
        num, den = n1 * n2, d1 * d2
        lc = den.lc
        if lc != 1:
            num, den = num / lc, den / lc
        return RatFunc(self.field, num, den)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise DivisionByZero("inverse of zero in Q(t)")
        return RatFunc.make(self.field, self.den, self.num)

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.field, self.num ** n, self.den ** n)

    def __bool__(self):
        return bool(self.num)

    def is_zero(self):
        return not self.num

    def is_polynomial(self):
        return self.den.degree == 0

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self.den.degree == 0 and self.num == Fraction(other)
        return NotImplemented

    def __hash__(self):
        if self.den.degree == 0 and self.num.degree <= 0:
            return hash(self.num[0])
        return hash((self.num.coeffs, self.den.coeffs))

    def __call__(self, value):
        """Evaluate at a rational point; DivisionByZero at a pole."""
        d = self.den(Fraction(value))
        if not d:
            raise DivisionByZero(f"pole at {value}")
        return self.num(Fraction(value)) / d

    def substitute(self, s):
        """x(t) -> x(s(t)) for another element s of Q(t)."""
        s = self.field.coerce(s)

        def ev(p):
            acc = self.field.zero
            for c in reversed(p.coeffs):
                acc = acc * s + c
            return acc

        return ev(self.num) / ev(self.den)

    def format(self):
        var = self.field.var
        n = self.num.format(var)
        if self.den.degree == 0:
            return n
        d = self.den.format(var)
        if is_compound(n):
            n = f"({n})"
        if is_compound(d) or "*" in d:
            d = f"({d})"
        return f"{n}/{d}"

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"RatFunc({self.format()!r})"


# -- Hasse derivatives ----------------------------------------------------------------


def hasse_poly(j, p):
    """D_j on Q[t]: t^n -> C(n, j) t^(n-j)."""
    if j == 0:
        return p
    return Poly([comb(n, j) * c for n, c in enumerate(p.coeffs)][j:])


def hasse_apply(j, x):
    """The j-th Hasse derivative of x in Q(t)."""
    if j < 0:
        raise ValueError("Hasse order must be nonnegative")
    F = x.field
    if j == 0 or not x:
        return x
    if x.den.degree == 0:
        return RatFunc.make(F, hasse_poly(j, x.num), x.den)
    return hasse_series(x, j)[j]


def hasse_series(x, m):
    """[D_0(x), ..., D_m(x)]."""
    F = x.field
    if not x:
        return [x] * (m + 1)
    if x.den.degree == 0:
        return [RatFunc.make(F, hasse_poly(j, x.num), x.den) for j in range(m + 1)]
    # D_l(p/q) = N_l / q^(l+1) with
    # N_l = D_l(p) q^l - sum_{i<l} N_i D_{l-i}(q) q^(l-1-i), all polynomial
    p, q = x.num, x.den
    dq = [hasse_poly(k, q) for k in range(m + 1)]
    qpow = [Poly([1])]
    for _ in range(m + 1):
        qpow.append(qpow[-1] * q)
    ns = [p]
    ds = [x]
    for l in range(1, m + 1):
        acc = hasse_poly(l, p) * qpow[l]
        for i in range(l):
            if dq[l - i]:
                acc = acc - ns[i] * dq[l - i] * qpow[l - 1 - i]
        ns.append(acc)
        ds.append(RatFunc.make(F, acc, qpow[l + 1]) if acc else F.zero)
    return ds


class DiffOperator:
    """sum_j c_j(t) D_j with D_j the j-th Hasse derivative."""

    __slots__ = ("field", "terms")

    def __init__(self, field, terms=None):
        self.field = field
        clean = {}
        for j, c in (terms or {}).items():
            c = field.coerce(c)
            if c:
                clean[int(j)] = c
        self.terms = dict(sorted(clean.items()))

    @classmethod
    def identity(cls, field):
        return cls(field, {0: field.one})

    @classmethod
    def hasse(cls, field, j):
        return cls(field, {j: field.one})

    @property
    def order(self):
        return max(self.terms) if self.terms else -1

    def is_zero(self):
        return not self.terms

    def __call__(self, x):
        return self.apply(x)

    def apply(self, x):
        F = self.field
        x = F.coerce(x)
        if not self.terms:
            return F.zero
        ds = hasse_series(x, self.order)
        acc = F.zero
        for j, c in self.terms.items():
            if ds[j]:
                acc = acc + c * ds[j]
        return acc

    def __add__(self, other):
        if not isinstance(other, DiffOperator):
            return NotImplemented
        terms = dict(self.terms)
        for j, c in other.terms.items():
            terms[j] = terms.get(j, self.field.zero) + c
        return DiffOperator(self.field, terms)

    def __neg__(self):
        return DiffOperator(self.field, {j: -c for j, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = self.field.coerce(c)
        return DiffOperator(self.field, {j: c * e for j, e in self.terms.items()})

    def compose(self, other):
        """self o other, again a differential operator."""
        F = self.field
        out = {}
        for i, c in self.terms.items():
            for j, e in other.terms.items():
                de = hasse_series(e, i)
                for a in range(i + 1):
                    if not de[a]:
                        continue
                    b = i - a
                    k = b + j
                    out[k] = out.get(k, F.zero) + c * de[a] * comb(k, j)
        return DiffOperator(F, out)

    def __mul__(self, other):
        if isinstance(other, DiffOperator):
            return self.compose(other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        return isinstance(other, DiffOperator) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def format(self):
        return format_terms([(c.format(), f"D{j}") for j, c in self.terms.items()])

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"DiffOperator({self.format()!r})"


def op_apply(L, x):
    return L.apply(x)


def fit_operator(samples, max_order, field=None):
    """Find sum_{j<=max_order} c_j D_j matching every ``(x, y)`` sample.

    The whole sample set forms one linear system over Q(t); free unknowns
    are set to zero.  Raises NoFit when the system is inconsistent.
    """
    from .matrix import Matrix

    samples = list(samples)
    if not samples:
        raise NoFit("no samples")
    F = field or samples[0][0].field
    rows = []
    rhs = []
    for x, y in samples:
        rows.append(hasse_series(F.coerce(x), max_order))
        rhs.append([F.coerce(y)])
    A = Matrix(F, rows)
    b = Matrix(F, rhs)
    try:
        sol = A.solve(b)
    except SingularMatrix:
        raise NoFit("samples are not matched by any operator of the given order") from None
    L = DiffOperator(F, {j: sol[j, 0] for j in range(max_order + 1)})
    for x, y in samples:
        if L.apply(x) != F.coerce(y):
            raise NoFit(f"operator {L} fails on sample {x}")
    return L
