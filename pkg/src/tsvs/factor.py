"""Factorization over Q and resultants.

Production path: squarefree decomposition, then Zassenhaus (mod-p
factorization, multifactor Hensel lifting, subset recombination).  A
Kronecker-style exhaustive search over integer values is kept as an
independent cross-check for small degrees.
"""

import math
import random
from fractions import Fraction
from itertools import combinations, product

from . import _modp as M
from .errors import ZeroPolynomial
from .poly import QQ, Poly, squarefree_decomposition

KRONECKER_MAX_DEGREE = 6

_SMALL_PRIMES = [p for p in range(3, 2000) if all(p % q for q in range(2, int(p ** 0.5) + 1))]


# -- conversions ---------------------------------------------------------------


def to_primitive_int(p):
    """Split a rational polynomial as ``content * F`` with ``F`` primitive over Z, lc > 0."""
    den = 1
    for c in p.coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in p.coeffs]
    g = 0
    for a in ints:
        g = math.gcd(g, a)
    if ints[-1] < 0:
        g = -g
    return Fraction(g, den), [a // g for a in ints]


def from_int(f):
    return Poly([Fraction(a) for a in f], QQ)


# -- resultant -------------------------------------------------------------------


def resultant(p, q):
    """Resultant with the convention ``res(p, q) = lc(q)^deg(p) * prod p(beta)``
    over the roots ``beta`` of ``q``.

    This equals the Sylvester resultant with the arguments swapped,
    ``Res(q, p)``.  Computed with the subresultant PRS.
    """
    if not p or not q:
        return Fraction(0)
    return _subresultant_res(q, p)


def _subresultant_res(a, b):
    """Sylvester resultant Res(a, b) by the subresultant PRS (Collins/Brown)."""
    g = h = Fraction(1)
    s = 1
    if a.degree < b.degree:
        a, b = b, a
        if a.degree % 2 and b.degree % 2:
            s = -1
    while b.degree > 0:
        delta = a.degree - b.degree
        if a.degree % 2 and b.degree % 2:
            s = -s
        r = (a * b.lc ** (delta + 1)) % b
        a, b = b, r / (g * h ** delta)
        if not b:
            return Fraction(0)
        g = a.lc
        h = h ** (1 - delta) * g ** delta
    return s * h ** (1 - a.degree) * b.lc ** a.degree


# -- Kronecker oracle --------------------------------------------------------------


def _divisors(n):
    n = abs(n)
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def _kronecker_factor_int(f):
    """Split a primitive integer polynomial into irreducibles by exhaustive search."""
    n = len(f) - 1
    if n <= 1:
        return [f]
    for k in range(1, n // 2 + 1):
        pts = []
        x = 0
        while len(pts) < k + 1:
            val = sum(c * x ** i for i, c in enumerate(f))
            if val == 0:
                lin = [-x, 1]
                q = M.divmod_exact_int(f, lin)
                return [lin] + _kronecker_factor_int(q)
            pts.append((x, val))
            x = -x if x > 0 else -x + 1
        choices = [[s * d for d in _divisors(v) for s in (1, -1)] for _, v in pts]
        xs = [Fraction(a) for a, _ in pts]
        for ys in product(*choices):
            g = _interp_int(xs, ys)
            if g is None or len(g) - 1 != k:
                continue
            if g[-1] < 0:
                g = [-c for c in g]
            q = M.divmod_exact_int(f, g)
            if q is not None:
                return _kronecker_factor_int(g) + _kronecker_factor_int(q)
    return [f]


def _interp_int(xs, ys):
    from .poly import interpolate

    g = interpolate(xs, [Fraction(y) for y in ys])
    if any(c.denominator != 1 for c in g.coeffs) or not g:
        return None
    return [int(c) for c in g.coeffs]


# -- Zassenhaus --------------------------------------------------------------------


def _hensel_step(m, f, g, h, s, t):
    mm = m * m
    e = M.mod_sym(M.sub(f, M.mul(g, h)), mm)
    q, r = M.divmod_monic(M.mul(s, e), h)
    q, r = M.mod_sym(q, mm), M.mod_sym(r, mm)
    u = M.add(M.mul(t, e), M.mul(q, g))
    G = M.mod_sym(M.add(g, u), mm)
    H = M.mod_sym(M.add(h, r), mm)
    u = M.add(M.mul(s, G), M.mul(t, H))
    b = M.mod_sym(M.sub(u, [1]), mm)
    c, d = M.divmod_monic(M.mul(s, b), H)
    c, d = M.mod_sym(c, mm), M.mod_sym(d, mm)
    u = M.add(M.mul(t, b), M.mul(c, G))
    S = M.mod_sym(M.sub(s, d), mm)
    T = M.mod_sym(M.sub(t, u), mm)
    return G, H, S, T


def _hensel_lift(p, f, factors, ell):
    """Lift ``f = lc(f) * prod(factors) mod p`` to monic factors mod ``p**ell``."""
    r = len(factors)
    lc = f[-1]
    pl = p ** ell
    if r == 1:
        inv = pow(lc % pl, -1, pl)
        return [M.mod_sym(M.scale(f, inv), pl)]
    k = r // 2
    steps = max(1, math.ceil(math.log2(ell)))
    g = [lc]
    for fi in factors[:k]:
        g = M.pmul(g, fi, p)
    h = factors[k]
    for fi in factors[k + 1:]:
        h = M.pmul(h, fi, p)
    s, t, _ = M.pgcdex(g, h, p)
    g, h, s, t = (M.mod_sym(x, p) for x in (g, h, s, t))
    m = p
    for _ in range(steps):
        g, h, s, t = _hensel_step(m, f, g, h, s, t)
        m *= m
    return _hensel_lift(p, g, factors[:k], ell) + _hensel_lift(p, h, factors[k:], ell)


def _choose_prime(f, rng, trials=6):
    lc = f[-1]
    best = None
    tried = 0
    for p in _SMALL_PRIMES:
        if lc % p == 0:
            continue
        fp = M.reduce(list(f), p)
        if not M.is_squarefree_mod(fp, p):
            continue
        facs = M.factor_mod_p(fp, p, rng)
        if best is None or len(facs) < len(best[1]):
            best = (p, facs)
        tried += 1
        if len(facs) == 1 or tried >= trials:
            break
    return best


def _zassenhaus(f):
    """Irreducible factors of a squarefree primitive integer polynomial (lc > 0)."""
    n = len(f) - 1
    if n <= 1:
        return [f]
    rng = random.Random(0x5A55)
    p, local = _choose_prime(f, rng)
    if len(local) == 1:
        return [f]
    lc = f[-1]
    norm2 = math.isqrt(sum(a * a for a in f)) + 1
    bound = abs(lc) * (2 ** n) * norm2
    ell = 1
    while p ** ell <= 2 * bound * abs(lc):
        ell += 1
    pl = p ** ell
    lifted = _hensel_lift(p, f, local, ell)

    found = []
    remaining = list(range(len(lifted)))
    s = 1
    while 2 * s <= len(remaining):
        hit = False
        for subset in combinations(remaining, s):
            lcf = f[-1]
            G = [lcf]
            for i in subset:
                G = M.mod_sym(M.mul(G, lifted[i]), pl)
            H = [lcf]
            for i in remaining:
                if i not in subset:
                    H = M.mod_sym(M.mul(H, lifted[i]), pl)
            if M.mul(G, H) != M.scale(f, lcf):
                continue
            G = _primitive(G)
            H = _primitive(H)
            found.append(G)
            f = H
            remaining = [i for i in remaining if i not in subset]
            hit = True
            break
        if not hit:
            s += 1
    found.append(f)
    return found


def _primitive(f):
    g = 0
    for a in f:
        g = math.gcd(g, a)
    if f[-1] < 0:
        g = -g
    return [a // g for a in f]


# -- public entry points -----------------------------------------------------------


def factor_over_Q(p, method="zassenhaus"):
    """Factor a nonzero rational polynomial.

    Returns ``[(monic irreducible, multiplicity), ...]`` sorted by degree and
    then by coefficient list; ``lc(p) * prod(g**e) == p``.
    ``method`` is ``"zassenhaus"`` or ``"kronecker"`` (small degrees only).
    """
    if not p:
        raise ZeroPolynomial("cannot factor the zero polynomial")
    if method == "zassenhaus":
        split = _zassenhaus
    elif method == "kronecker":
        split = _kronecker_factor_int
    else:
        raise ValueError(f"unknown factorization method {method!r}")
    out = []
    for part, mult in squarefree_decomposition(p):
        _, F = to_primitive_int(part)
        if method == "kronecker" and len(F) - 1 > KRONECKER_MAX_DEGREE:
            raise ValueError("Kronecker search is limited to small degrees")
        for g in split(F):
            out.append((from_int(g).monic(), mult))
    out.sort(key=lambda gm: (gm[0].sort_key(), gm[1]))
    return out


def is_irreducible_over_Q(p):
    facs = factor_over_Q(p)
    return len(facs) == 1 and facs[0][1] == 1
