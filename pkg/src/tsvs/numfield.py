"""Number fields Q[g]/(f), factorization over them, and relative extensions."""

import hashlib
import json
import os
import threading
from fractions import Fraction

from .errors import (
    BadBasis,
    DegreeCapExceeded,
    DivisionByZero,
    FieldMismatch,
    NotIrreducible,
    NotIrreducibleOverK,
    NotMonic,
    SingularMatrix,
    ZeroPolynomial,
)
from .factor import factor_over_Q, resultant
from .poly import QQ, Poly, format_terms, interpolate, poly_gcd, poly_xgcd, squarefree_decomposition

MAX_FIELD_DEGREE = 8
MAX_NORM_DEGREE = 64


class NumberField:
    """K = Q[g]/(f) for a monic irreducible f."""

    def __init__(self, defining_poly, gen_name="g", max_degree=None):
        if max_degree is None:
            max_degree = MAX_FIELD_DEGREE
        f = defining_poly
        if not isinstance(f, Poly) or f.field is not QQ:
            f = Poly(f, QQ)
        if f.degree < 1:
            raise NotIrreducible("defining polynomial must have positive degree")
        if not f.is_monic():
            raise NotMonic(f"defining polynomial {f} is not monic")
        if f.degree > max_degree:
            raise DegreeCapExceeded(f"field degree {f.degree} exceeds cap {max_degree}")
        facs = factor_over_Q(f)
        if len(facs) != 1 or facs[0][1] != 1:
            raise NotIrreducible(f"{f} is reducible over Q")
        self.defining_poly = f
        self.gen_name = gen_name
        self.degree = d = f.degree
        # coordinates of g^k for d <= k <= 2d - 2
        self._powers = {}
        cur = [-c for c in f.coeffs[:d]]
        for k in range(d, 2 * d - 1):
            self._powers[k] = tuple(cur)
            top = cur[-1]
            cur = [Fraction(0)] + cur[:-1]
            if top:
                cur = [a - top * c for a, c in zip(cur, f.coeffs[:d])]
        self.zero = NFElement(self, (Fraction(0),) * d)
        self.one = NFElement(self, (Fraction(1),) + (Fraction(0),) * (d - 1))

    @property
    def gen(self):
        if self.degree == 1:
            return NFElement(self, (-self.defining_poly.coeffs[0],))
        return NFElement(self, (Fraction(0), Fraction(1)) + (Fraction(0),) * (self.degree - 2))

    def _reduce(self, conv):
        d = self.degree
        out = list(conv[:d]) + [Fraction(0)] * max(0, d - len(conv))
        for k in range(d, len(conv)):
            c = conv[k]
            if c:
                for i, a in enumerate(self._powers[k]):
                    out[i] += c * a
        return tuple(out)

    def element(self, coords):
        coords = tuple(Fraction(c) for c in coords)
        if len(coords) != self.degree:
            raise ValueError(f"expected {self.degree} coordinates, got {len(coords)}")
        return NFElement(self, coords)

    def from_poly(self, p):
        """Image of a rational polynomial under x -> g."""
        coeffs = list(p.coeffs)
        if len(coeffs) > 2 * self.degree - 1:
            coeffs = list((p % self.defining_poly).coeffs)
        return NFElement(self, self._reduce(coeffs))

    def coerce(self, value):
        if isinstance(value, NFElement):
            if value.field is not self and value.field != self:
                raise FieldMismatch("element belongs to a different number field")
            return value
        if isinstance(value, (int, Fraction)):
            return NFElement(self, (Fraction(value),) + (Fraction(0),) * (self.degree - 1))
        raise FieldMismatch(f"cannot interpret {value!r} in {self}")

    def format_element(self, value):
        if self.degree == 1:
            return str(value.coords[0])
        terms = []
        g = self.gen_name
        for k in range(self.degree - 1, -1, -1):
            c = value.coords[k]
            if c:
                mono = "" if k == 0 else (g if k == 1 else f"{g}^{k}")
                terms.append((str(c), mono))
        return format_terms(terms)

    def header(self):
        return f"numberfield {self.gen_name}: {self.defining_poly.format('x')}"

    def random_element(self, rng, bound=3):
        return NFElement(self, tuple(Fraction(rng.randint(-bound, bound), rng.randint(1, 2))
                                     for _ in range(self.degree)))

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.defining_poly == other.defining_poly

    def __hash__(self):
        return hash(("NumberField", self.defining_poly.coeffs))

    def __repr__(self):
        return f"NumberField({self.defining_poly.format('x')!r})"

    def __str__(self):
        return self.header()


class NFElement:
    __slots__ = ("field", "coords")

    def __init__(self, field, coords):
        self.field = field
        self.coords = coords

    def _other(self, other):
        if isinstance(other, NFElement):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatch("elements of different number fields")
            return other.coords
        if isinstance(other, (int, Fraction)):
            return (Fraction(other),) + (Fraction(0),) * (len(self.coords) - 1)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return NFElement(self.field, tuple(a + b for a, b in zip(self.coords, o)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return NFElement(self.field, tuple(a - b for a, b in zip(self.coords, o)))

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return NFElement(self.field, tuple(b - a for a, b in zip(self.coords, o)))

    def __neg__(self):
        return NFElement(self.field, tuple(-a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return NFElement(self.field, tuple(a * other for a in self.coords))
        if not isinstance(other, NFElement):
            return NotImplemented
        o = self._other(other)
        a = self.coords
        conv = [Fraction(0)] * (len(a) + len(o) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(o):
                    if y:
                        conv[i + j] += x * y
        return NFElement(self.field, self.field._reduce(conv))

    __rmul__ = __mul__

    def to_poly(self):
        return Poly(self.coords, QQ)

    def inverse(self):
        if not self:
            raise DivisionByZero("inverse of zero in a number field")
        g, s, _ = poly_xgcd(self.to_poly(), self.field.defining_poly)
        return self.field.from_poly(s)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise DivisionByZero("division by zero")
            return NFElement(self.field, tuple(a / other for a in self.coords))
        if not isinstance(other, NFElement):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __bool__(self):
        return any(self.coords)

    def is_zero(self):
        return not any(self.coords)

    def is_rational(self):
        return not any(self.coords[1:])

    def __eq__(self, other):
        if isinstance(other, NFElement):
            return self.coords == other.coords and (self.field is other.field or self.field == other.field)
        if isinstance(other, (int, Fraction)):
            return self.coords[0] == other and not any(self.coords[1:])
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coords[0])
        return hash(self.coords)

    def __str__(self):
        return self.field.format_element(self)

    def __repr__(self):
        return f"NFElement({self})"


# -- factorization over K ----------------------------------------------------------

_cache_lock = threading.Lock()
_memo = {}
_disk_cache_dir = None


def configure_cache(directory):
    """Enable an on-disk factorization cache (``None`` disables it)."""
    global _disk_cache_dir
    with _cache_lock:
        _disk_cache_dir = directory
        if directory:
            os.makedirs(directory, exist_ok=True)


def clear_cache():
    """Forget in-memory factorizations (the disk cache is left alone)."""
    with _cache_lock:
        _memo.clear()


def _cache_key(p, K):
    payload = json.dumps([[str(c) for c in K.defining_poly.coeffs],
                          [[str(a) for a in c.coords] for c in p.coeffs]])
    return hashlib.sha256(payload.encode()).hexdigest()


def _cache_get(key, K):
    with _cache_lock:
        if key in _memo:
            return _memo[key]
        directory = _disk_cache_dir
    if directory:
        path = os.path.join(directory, key + ".json")
        if os.path.exists(path):
            with open(path) as fh:
                raw = json.load(fh)
            value = [(Poly([K.element([Fraction(a) for a in c]) for c in coeffs], K), m)
                     for coeffs, m in raw]
            with _cache_lock:
                _memo.setdefault(key, value)
            return value
    return None


def _cache_put(key, value):
    with _cache_lock:
        _memo.setdefault(key, value)
        directory = _disk_cache_dir
    if directory:
        raw = [([[str(a) for a in c.coords] for c in g.coeffs], m) for g, m in value]
        path = os.path.join(directory, key + ".json")
        tmp = f"{path}.{os.getpid()}.{threading.get_ident()}.tmp"
        with open(tmp, "w") as fh:
            json.dump(raw, fh)
        os.replace(tmp, path)


def as_kx(p, K):
    """Coerce a rational polynomial (or a K[X] polynomial) to K[X]."""
    if p.field == K:
        return p
    return Poly([K.coerce(c) for c in p.coeffs], K)


def norm_poly(h, K):
    """Norm_{K/Q} of a monic h in K[X], by interpolating resultants at integer points."""
    D = K.degree * h.degree
    f = K.defining_poly
    xs, ys = [], []
    for x0 in range(D + 1):
        val = h(K.coerce(x0))
        xs.append(x0)
        ys.append(resultant(val.to_poly(), f) if val else Fraction(0))
    return interpolate(xs, ys)


def _trager(g, K, max_norm_degree):
    if g.degree <= 1:
        return [g]
    if g.degree * K.degree > max_norm_degree:
        raise DegreeCapExceeded(f"norm degree {g.degree * K.degree} exceeds cap {max_norm_degree}")
    X = Poly.x(K)
    gamma = K.gen
    s = 0
    while True:
        shifted = g.compose(X - gamma * s)
        N = norm_poly(shifted, K)
        if poly_gcd(N, N.derivative()).degree == 0:
            break
        s += 1
    facs = factor_over_Q(N)
    if len(facs) == 1:
        return [g]
    out = []
    back = X + gamma * s
    for Ni, _ in facs:
        hi = poly_gcd(shifted, as_kx(Ni, K))
        out.append(hi.compose(back).monic())
    return out


def factor_over_K(p, K=None, max_norm_degree=None):
    """Factor a nonzero polynomial of K[X] into monic irreducibles (Trager).

    Returns ``[(factor, multiplicity), ...]`` sorted by degree and then by
    coefficient coordinates.
    """
    if K is None:
        K = p.field
    if max_norm_degree is None:
        max_norm_degree = MAX_NORM_DEGREE
    p = as_kx(p, K)
    if not p:
        raise ZeroPolynomial("cannot factor the zero polynomial")
    key = _cache_key(p, K)
    cached = _cache_get(key, K)
    if cached is not None:
        return list(cached)
    out = []
    for part, mult in squarefree_decomposition(p):
        for g in _trager(part, K, max_norm_degree):
            out.append((g, mult))
    out.sort(key=lambda gm: (gm[0].sort_key(), gm[1]))
    _cache_put(key, out)
    return list(out)


# -- relative extensions -------------------------------------------------------------


class RelativeExtension:
    """E = K[X]/(g) with a chosen K-basis, structure constants and lambda maps.

    Elements of E are polynomials in K[X] of degree < m = deg g.  The
    embedding lambda sends the generator of K to the class of X.
    """

    def __init__(self, base, modulus, basis=None, check=True, max_norm_degree=None):
        from .matrix import Matrix

        self.base = K = base
        g = as_kx(modulus, K)
        if not g.is_monic():
            raise NotIrreducibleOverK("relative modulus must be monic")
        if check:
            facs = factor_over_K(g, K, max_norm_degree)
            if len(facs) != 1 or facs[0][1] != 1:
                raise NotIrreducibleOverK(f"{g} is reducible over {K}")
        self.modulus = g
        self.m = m = g.degree
        X = Poly.x(K)
        if basis is None:
            basis = [X ** i for i in range(m)]
        else:
            basis = [self.reduce(as_kx(b, K) if isinstance(b, Poly) else Poly([K.coerce(b)], K))
                     for b in basis]
        if len(basis) != m:
            raise BadBasis(f"basis needs {m} elements, got {len(basis)}")
        self.basis = [self.reduce(b) for b in basis]
        self.change = Matrix(K, [self._power_coords(b) for b in self.basis])
        try:
            self._change_inv = self.change.inverse()
        except SingularMatrix:
            raise BadBasis("basis elements are linearly dependent over K") from None
        self.beta = [[self.coords(self.mul(bi, bj)) for bj in self.basis] for bi in self.basis]

    def reduce(self, p):
        return p % self.modulus

    def mul(self, a, b):
        return (a * b) % self.modulus

    def _power_coords(self, p):
        K = self.base
        return [p[k] if k <= p.degree else K.zero for k in range(self.m)]

    def coords(self, p):
        """Coordinates of an element of E in the chosen basis."""
        v = self._power_coords(self.reduce(p))
        inv = self._change_inv
        K = self.base
        out = []
        for j in range(self.m):
            acc = K.zero
            for i in range(self.m):
                if v[i]:
                    acc = acc + v[i] * inv[i, j]
            out.append(acc)
        return out

    def element(self, coords):
        acc = Poly([], self.base)
        for c, b in zip(coords, self.basis):
            acc = acc + b * c
        return self.reduce(acc)

    def embed(self, x):
        """lambda(x): the image of x in E under g -> X."""
        if not isinstance(x, NFElement) or (x.field is not self.base and x.field != self.base):
            raise FieldMismatch("element is not in the base field of this extension")
        r = Poly([self.base.coerce(c) for c in x.coords], self.base)
        return self.reduce(r)

    def lambda_coords(self, x):
        return self.coords(self.embed(x))

    @property
    def structure_constants(self):
        return self.beta

    def format_element(self, p, var="x"):
        return p.format(var)


def make_number_field(f, gen_name="g", max_degree=None):
    return NumberField(f, gen_name=gen_name, max_degree=max_degree)


def make_relative_extension(K, g, basis=None, max_norm_degree=None):
    return RelativeExtension(K, g, basis=basis, max_norm_degree=max_norm_degree)


def lambda_coords(E, x):
    return E.lambda_coords(x)
