"""Integer and mod-p polynomial kernels on plain ``int`` lists.

All lists are lowest degree first with no trailing zeros; ``[]`` is zero.
These helpers back the Zassenhaus factorizer and are kept free of the
``Poly``/``Fraction`` machinery for speed.
"""


def trim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def add(f, g):
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, c in enumerate(g):
        out[i] += c
    return trim(out)


def sub(f, g):
    out = list(f) + [0] * (len(g) - len(f))
    for i, c in enumerate(g):
        out[i] -= c
    return trim(out)


def mul(f, g):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return trim(out)


def scale(f, c):
    return trim([a * c for a in f])


def mod_sym(f, m):
    """Reduce coefficients into the symmetric range (-m/2, m/2]."""
    half = m // 2
    out = []
    for a in f:
        a %= m
        if a > half:
            a -= m
        out.append(a)
    return trim(out)


def reduce(f, p):
    return trim([a % p for a in f])


def divmod_monic(f, g):
    """Division over Z by a monic divisor ``g``."""
    r = list(f)
    dg = len(g) - 1
    if len(r) <= dg:
        return [], trim(r)
    q = [0] * (len(r) - dg)
    for k in range(len(r) - 1, dg - 1, -1):
        c = r[k]
        if c:
            q[k - dg] = c
            for j in range(dg + 1):
                r[k - dg + j] -= c * g[j]
    return trim(q), trim(r[:dg])


def divmod_exact_int(f, g):
    """Exact division over Z; returns None if ``g`` does not divide ``f``."""
    r = list(f)
    dg = len(g) - 1
    if len(r) - 1 < dg:
        return None if any(r) else []
    lc = g[-1]
    q = [0] * (len(r) - dg)
    for k in range(len(r) - 1, dg - 1, -1):
        c = r[k]
        if c:
            if c % lc:
                return None
            c //= lc
            q[k - dg] = c
            for j in range(dg + 1):
                r[k - dg + j] -= c * g[j]
    if any(r[:dg]):
        return None
    return trim(q)


# -- arithmetic in GF(p)[x] ---------------------------------------------------


def pmul(f, g, p):
    return reduce(mul(f, g), p)


def pmonic(f, p):
    if not f:
        return f
    inv = pow(f[-1], -1, p)
    return reduce([a * inv for a in f], p)


def pdivmod(f, g, p):
    r = list(f)
    dg = len(g) - 1
    if len(r) <= dg:
        return [], trim(r)
    inv = pow(g[-1], -1, p)
    q = [0] * (len(r) - dg)
    for k in range(len(r) - 1, dg - 1, -1):
        c = r[k] % p
        if c:
            c = c * inv % p
            q[k - dg] = c
            for j in range(dg + 1):
                r[k - dg + j] = (r[k - dg + j] - c * g[j]) % p
    return trim(q), trim([a % p for a in r[:dg]])


def pmod(f, g, p):
    return pdivmod(f, g, p)[1]


def pgcd(f, g, p):
    f, g = reduce(list(f), p), reduce(list(g), p)
    while g:
        f, g = g, pmod(f, g, p)
    return pmonic(f, p)


def pgcdex(f, g, p):
    """Return ``(s, t, h)`` with ``s*f + t*g = h = gcd`` monic, over GF(p)."""
    r0, r1 = reduce(list(f), p), reduce(list(g), p)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = pdivmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, reduce(sub(s0, mul(q, s1)), p)
        t0, t1 = t1, reduce(sub(t0, mul(q, t1)), p)
    inv = pow(r0[-1], -1, p)
    return (reduce(scale(s0, inv), p), reduce(scale(t0, inv), p), reduce(scale(r0, inv), p))


def ppowmod(f, n, g, p):
    result = [1]
    base = pmod(f, g, p)
    while n:
        if n & 1:
            result = pmod(mul(result, base), g, p)
        base = pmod(mul(base, base), g, p)
        n >>= 1
    return result


def pderiv(f, p):
    return reduce([i * a for i, a in enumerate(f)][1:], p)


def is_squarefree_mod(f, p):
    return len(pgcd(f, pderiv(f, p), p)) == 1


def distinct_degree(f, p):
    """Distinct-degree factorization of a monic squarefree ``f`` mod ``p``."""
    out = []
    h = [0, 1]
    i = 0
    while 2 * (i + 1) <= len(f) - 1:
        i += 1
        h = ppowmod(h, p, f, p)
        g = pgcd(sub(h, [0, 1]), f, p)
        if len(g) > 1:
            out.append((g, i))
            f = pdivmod(f, g, p)[0]
            h = pmod(h, f, p)
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def equal_degree(f, d, p, rng):
    """Cantor-Zassenhaus splitting of a product of degree-``d`` factors (p odd)."""
    n = len(f) - 1
    if n == d:
        return [f]
    exp = (p ** d - 1) // 2
    while True:
        a = trim([rng.randrange(p) for _ in range(n)])
        if len(a) < 2:
            continue
        b = sub(ppowmod(a, exp, f, p), [1])
        g = pgcd(b, f, p)
        if 1 < len(g) < len(f):
            return equal_degree(g, d, p, rng) + equal_degree(pdivmod(f, g, p)[0], d, p, rng)


def factor_mod_p(f, p, rng):
    """Monic irreducible factors of a squarefree ``f`` over GF(p), p odd."""
    f = pmonic(reduce(list(f), p), p)
    out = []
    for g, d in distinct_degree(f, p):
        out.extend(equal_degree(g, d, p, rng))
    out.sort()
    return out
