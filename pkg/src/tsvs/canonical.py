"""Higher derivations, Toeplitz homs and canonical forms of matrix homs.

Covers the Toeplitz hom of a higher derivation, products of higher
derivations, triangularization of a hom whose generator image splits,
the block structure of an a-homogeneous hom, Jordan-ordered matrices with
their upper triangular conjugation to Jordan form, and the block shape of
the commutant of a Jordan matrix.
"""

import random
from dataclasses import dataclass

from .bimod import MatrixHom, hom_eval, hom_validate
from .errors import (
    DoesNotSplit,
    FieldMismatch,
    InvariantViolation,
    LeibnizViolation,
    MultipleEigenvalues,
    NoFit,
    NotComposable,
    NotHomogeneous,
    NotJCF,
    NotJordanOrdered,
    NotTriangular,
    OrderMismatch,
    ProportionalityFailure,
)
from .funcfield import DiffOperator, FunctionField, fit_operator
from .matrix import Matrix, commutation_space, eigenvalues_in_field, jcf
from .numfield import NumberField

LEIBNIZ_MAX_DEGREE = 30
LEIBNIZ_RANDOM_PAIRS = 100


# -- maps K -> K ----------------------------------------------------------------------


class Substitution:
    """The field endomorphism sending the generator to ``image``."""

    closed_form = True

    def __init__(self, field, image):
        self.field = field
        self.image = field.coerce(image)

    def apply(self, x):
        F = self.field
        x = F.coerce(x)
        if isinstance(F, FunctionField):
            return x.substitute(self.image)
        if isinstance(F, NumberField):
            acc = F.zero
            for c in reversed(x.coords):
                acc = acc * self.image + c
            return acc
        return x

    def is_identity(self):
        return self.image == self.field.gen

    def format(self):
        return f"sub({self.field.format_element(self.image)})"

    def __eq__(self, other):
        return isinstance(other, Substitution) and self.image == other.image

    def __hash__(self):
        return hash(("sub", self.image))


class Composite:
    """outer o inner."""

    closed_form = True

    def __init__(self, outer, inner):
        self.outer = outer
        self.inner = inner
        self.field = outer.field

    def apply(self, x):
        return self.outer.apply(self.inner.apply(x))

    def format(self):
        return f"({self.outer.format()}) o ({self.inner.format()})"


class SumMap:
    closed_form = True

    def __init__(self, field, parts):
        self.field = field
        self.parts = list(parts)

    def apply(self, x):
        acc = self.field.zero
        for p in self.parts:
            acc = acc + p.apply(x)
        return acc

    def format(self):
        return " + ".join(f"({p.format()})" for p in self.parts) if self.parts else "0"


class BlackBox:
    """A map known only through evaluation."""

    closed_form = False

    def __init__(self, field, fn, label="?"):
        self.field = field
        self.fn = fn
        self.label = label

    def apply(self, x):
        return self.fn(x)

    def format(self):
        return f"<{self.label}>"


def _is_identity_map(m):
    if isinstance(m, DiffOperator):
        return m.terms == {0: m.field.one}
    if isinstance(m, Substitution):
        return m.is_identity()
    return False


def _is_zero_map(m):
    return isinstance(m, DiffOperator) and m.is_zero()


def compose_maps(a, b):
    """a o b in the simplest available representation."""
    if _is_zero_map(a) or _is_zero_map(b):
        return DiffOperator(a.field)
    if _is_identity_map(a):
        return b
    if _is_identity_map(b):
        return a
    if isinstance(a, BlackBox) or isinstance(b, BlackBox):
        raise NotComposable("cannot compose a map that has no closed form")
    if isinstance(a, DiffOperator) and isinstance(b, DiffOperator):
        return a.compose(b)
    return Composite(a, b)


def add_maps(field, maps):
    maps = [m for m in maps if not _is_zero_map(m)]
    if all(isinstance(m, DiffOperator) for m in maps):
        acc = DiffOperator(field)
        for m in maps:
            acc = acc + m
        return acc
    if len(maps) == 1:
        return maps[0]
    return SumMap(field, maps)


# -- higher derivations ---------------------------------------------------------------


class HigherDerivation:
    """A sequence (d_0, ..., d_m) of maps K -> K."""

    def __init__(self, field, maps, certified_order=None):
        if not maps:
            raise ValueError("a higher derivation needs at least d_0")
        self.field = field
        self.maps = list(maps)
        # levels up to this one are known to satisfy the Leibniz identity
        self.certified_order = len(self.maps) - 1 if certified_order is None else certified_order

    @property
    def order(self):
        return len(self.maps) - 1

    @property
    def d0(self):
        return self.maps[0]

    @property
    def tail(self):
        return self.maps[1:]

    def __getitem__(self, k):
        return self.maps[k]

    def __len__(self):
        return len(self.maps)

    def values(self, x):
        return [m.apply(x) for m in self.maps]

    @property
    def closed_form(self):
        return all(m.closed_form for m in self.maps)

    def is_operator_form(self):
        return all(isinstance(m, DiffOperator) for m in self.maps)

    def format(self):
        return "[" + "; ".join(m.format() for m in self.maps) + "]"

    def header(self):
        return f"hs over {self.field.header()}: {self.format()}"

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"HigherDerivation({self.format()})"

    def __eq__(self, other):
        if not isinstance(other, HigherDerivation) or not (self.is_operator_form() and other.is_operator_form()):
            return NotImplemented
        return self.maps == other.maps

    def __hash__(self):
        return hash(tuple(m.format() for m in self.maps))


def identity_hs(field):
    return HigherDerivation(field, [DiffOperator.identity(field)])


def hasse_hs(field, m):
    """{D_0, D_1, ..., D_m}."""
    return HigherDerivation(field, [DiffOperator.hasse(field, j) for j in range(m + 1)])


def hs_from_taylor(field, bs):
    """The higher derivation of t -> t + sum_k bs[k-1] s^k, truncated at order len(bs).

    d_k = sum_j [s^k] (sum_i b_i s^i)^j D_j.
    """
    m = len(bs)
    bs = [field.coerce(b) for b in bs]
    u = [field.zero] + bs  # power series in s, truncated at degree m
    powers = [[field.one] + [field.zero] * m]
    for _ in range(m):
        prev = powers[-1]
        nxt = [field.zero] * (m + 1)
        for i, a in enumerate(prev):
            if not a:
                continue
            for j, b in enumerate(u):
                if b and i + j <= m:
                    nxt[i + j] = nxt[i + j] + a * b
        powers.append(nxt)
    maps = []
    for k in range(m + 1):
        maps.append(DiffOperator(field, {j: powers[j][k] for j in range(k + 1)}))
    return HigherDerivation(field, maps)


def leibniz_samples(field, seed=0, max_degree=LEIBNIZ_MAX_DEGREE, random_pairs=LEIBNIZ_RANDOM_PAIRS):
    """Generator-power pairs with total degree <= max_degree, then seeded random pairs."""
    g = field.gen
    powers = [field.one]
    for _ in range(max_degree):
        powers.append(powers[-1] * g)
    pairs = [(a, b) for a in range(max_degree + 1) for b in range(max_degree + 1 - a)]
    rng = random.Random(seed)
    rand = [(field.random_element(rng), field.random_element(rng)) for _ in range(random_pairs)]
    return powers, pairs, rand


def leibniz_check(d, seed=0, max_degree=LEIBNIZ_MAX_DEGREE, random_pairs=LEIBNIZ_RANDOM_PAIRS, upto=None):
    """Verify d_l(xy) = sum_{i+j=l} d_i(x) d_j(y) for l <= upto on the standard sample set."""
    F = d.field
    m = d.order if upto is None else min(upto, d.order)
    powers, pairs, rand = leibniz_samples(F, seed, max_degree, random_pairs)
    cache = {}

    def vals(key, x):
        if key not in cache:
            cache[key] = d.values(x)
        return cache[key]

    def check(x, y, vx, vy, vxy):
        for l in range(m + 1):
            acc = F.zero
            for i in range(l + 1):
                if vx[i] and vy[l - i]:
                    acc = acc + vx[i] * vy[l - i]
            if acc != vxy[l]:
                raise LeibnizViolation(
                    f"d_{l}(xy) differs from the Leibniz sum at x = {F.format_element(x)}, "
                    f"y = {F.format_element(y)}", witness=(l, x, y))

    for a, b in pairs:
        check(powers[a], powers[b], vals(("p", a), powers[a]), vals(("p", b), powers[b]),
              vals(("p", a + b), powers[a + b]))
    for k, (x, y) in enumerate(rand):
        check(x, y, vals(("x", k), x), vals(("y", k), y), d.values(x * y))
    return {"monomial_pairs": len(pairs), "random_pairs": len(rand), "order": m}


def leibniz_defect(d, **kw):
    """First level at which the Leibniz identity fails on the samples, or None."""
    for level in range(d.order + 1):
        try:
            leibniz_check(d, upto=level, **kw)
        except LeibnizViolation as exc:
            return level, exc.witness
    return None


def hs_product(d, e, check=True):
    """delta_l = sum_{i+j=l} d_i o e_j for l <= m + n.

    For truncated sequences the Leibniz identity is only guaranteed through
    level min(m, n): higher levels of the expansion need d_i with i > m or
    e_j with j > n.  The result records that level as ``certified_order``
    and the check runs through it.
    """
    if d.field != e.field:
        raise FieldMismatch("higher derivations over different fields")
    F = d.field
    maps = []
    for l in range(d.order + e.order + 1):
        terms = []
        for i in range(max(0, l - e.order), min(l, d.order) + 1):
            terms.append(compose_maps(d[i], e[l - i]))
        maps.append(add_maps(F, terms))
    certified = min(d.certified_order, e.certified_order)
    out = HigherDerivation(F, maps, certified_order=certified)
    if check:
        leibniz_check(out, upto=certified)
    return out


def toeplitz_matrix(field, values):
    """Upper triangular Toeplitz matrix with values[k] on the k-th superdiagonal."""
    n = len(values)
    return Matrix._make(field, [[values[j - i] if j >= i else field.zero for j in range(n)] for i in range(n)], n)


def toeplitz_hom(d, check=True):
    """phi(d): generator -> Toeplitz matrix of (d_0(gen), ..., d_m(gen))."""
    if check:
        leibniz_check(d)
    F = d.field
    h = MatrixHom(F, toeplitz_matrix(F, d.values(F.gen)))
    hom_validate(h)
    return h


def scaled_derivation_similar(d, x):
    """Certificate that diag(x, 1) conjugates phi({d0, d1}) to phi({d0, x d1})."""
    if d.order != 1:
        raise OrderMismatch(f"expected a higher derivation of order 1, got order {d.order}")
    F = d.field
    x = F.coerce(x)
    if not x:
        raise ValueError("scaling element must be nonzero")
    d1 = d[1]
    if isinstance(d1, DiffOperator):
        scaled = d1.scale(x)
    else:
        scaled = BlackBox(F, lambda y, _d=d1, _x=x: _x * _d.apply(y), f"{F.format_element(x)}*{d1.format()}")
    d_prime = HigherDerivation(F, [d[0], scaled])
    P = Matrix.diag(F, [x, F.one])
    lhs = P * toeplitz_hom(d, check=False).gen_image * P.inverse()
    rhs = toeplitz_hom(d_prime, check=False).gen_image
    if lhs != rhs:
        raise InvariantViolation("diag(x, 1) conjugation certificate failed")
    return {"d": d, "d_prime": d_prime, "P": P, "conjugated": lhs}


# -- triangularization ----------------------------------------------------------------


def triangularize_commuting(h, eigenvalues=None):
    """``(P, T)`` with P A P^-1 = T upper triangular, A the generator image.

    Eigenvalues are taken in the given order (or from the factorization of
    the characteristic polynomial); each step adds an eigenvector of the
    action on the quotient by the span already built.
    """
    A = h.gen_image if isinstance(h, MatrixHom) else h
    F = A.field
    n = A.nrows
    if eigenvalues is None:
        if A.is_upper_triangular():
            return Matrix.identity(F, n), A
        if isinstance(F, FunctionField):
            raise DoesNotSplit("eigenvalues over Q(t) must be supplied for a non-triangular generator image")
        eigenvalues = [e for e, _ in eigenvalues_in_field(A)]
    eigenvalues = [F.coerce(e) for e in eigenvalues]
    cols = [[F.one if i == j else F.zero for i in range(n)] for j in range(n)]
    for k in range(n):
        Q = Matrix.from_columns(F, cols)
        C = Q.inverse() * A * Q
        S = C.submatrix(range(k, n), range(k, n))
        v = None
        for lam in eigenvalues:
            ker = (S - Matrix.identity(F, n - k) * lam).nullspace()
            if ker:
                v = ker[0]
                break
        if v is None:
            raise DoesNotSplit("the supplied eigenvalues do not split the generator image")
        j0 = next(j for j, c in enumerate(v) if c)
        w = [F.zero] * n
        for j, c in enumerate(v):
            if c:
                col = cols[k + j]
                w = [a + c * b for a, b in zip(w, col)]
        rest = [cols[k + j] for j in range(n - k) if j != j0]
        cols = cols[:k] + [w] + rest
    Q = Matrix.from_columns(F, cols)
    P = Q.inverse()
    T = P * A * Q
    if not T.is_upper_triangular():
        raise InvariantViolation("triangularization produced a non-triangular matrix")
    return P, T


# -- homogeneous structure ------------------------------------------------------------


@dataclass
class HomogeneousForm:
    P: Matrix
    blocks: list  # block sizes
    derivations: list  # HigherDerivation per diagonal block
    hom: MatrixHom  # the conjugated hom
    alphas: list  # proportionality constants per block
    representation: list  # "operator" or "black box" per block
    cocycle_pairs: int = 0  # sampled (x, y) pairs on which the cocycle relation was verified

    @property
    def offsets(self):
        out, s = [], 0
        for b in self.blocks:
            out.append(s)
            s += b
        return out

    def block(self, i, j, x):
        """A_ij(x)."""
        M = hom_eval(self.hom, x)
        oi, oj = self.offsets[i], self.offsets[j]
        return M.submatrix(range(oi, oi + self.blocks[i]), range(oj, oj + self.blocks[j]))

    def annotated(self):
        lines = [f"blocks: {' '.join(str(b) for b in self.blocks)}"]
        for i, (d, rep) in enumerate(zip(self.derivations, self.representation)):
            lines.append(f"A{i + 1}{i + 1} = phi(d{i + 1}), d{i + 1} = {d.format()} ({rep})")
        lines.append(f"generator image: {self.hom.gen_image.format()}")
        lines.append(f"P: {self.P.format()}")
        return lines


def _sample_elements(F, rng, count):
    out = []
    g = F.gen
    out.extend([g, g * g + 1, g * g * g])
    while len(out) < count:
        out.append(F.random_element(rng))
    return out[:count]


def _pole_safe(h, x):
    try:
        return hom_eval(h, x)
    except Exception:
        return None


def homogeneous_structure(h, a, seed=0, pairs=50, check_samples=4):
    """Block upper triangular form of an a-homogeneous hom with Toeplitz diagonal blocks."""
    F = h.field
    n = h.n
    if isinstance(a, MatrixHom):
        if a.n != 1:
            raise NotHomogeneous("the diagonal hom must be 1-dimensional")
        mu = a.gen_image[0, 0]
    else:
        mu = F.coerce(a)
    N = h.gen_image - Matrix.identity(F, n) * mu
    if not (N ** n).is_zero():
        raise NotHomogeneous("generator image has an eigenvalue other than a(gen)")
    P0, B = triangularize_commuting(h, [mu])
    rng = random.Random(seed)
    samples = _sample_elements(F, rng, check_samples)
    tri = MatrixHom(F, B)
    sample_mats = [m for m in (_pole_safe(tri, x) for x in samples) if m is not None]

    # split where the first superdiagonal of the generator image vanishes
    cuts = [0] + [i + 1 for i in range(n - 1) if not B[i, i + 1]] + [n]
    sizes = [cuts[k + 1] - cuts[k] for k in range(len(cuts) - 1)]
    alphas = []
    conj = []
    for k, s in enumerate(sizes):
        r0 = cuts[k]
        block_alphas = []
        for i in range(r0, r0 + s - 2):
            alpha = B[i + 1, i + 2] / B[i, i + 1]
            if not alpha:
                raise ProportionalityFailure(f"zero proportionality constant at row {i + 1}", witness=(i, i + 1))
            for M in sample_mats:
                if M[i + 1, i + 2] != alpha * M[i, i + 1]:
                    raise ProportionalityFailure(
                        f"superdiagonal entries ({i + 2},{i + 3}) and ({i + 1},{i + 2}) are not proportional",
                        witness=(i, i + 1))
            block_alphas.append(alpha)
        alphas.append(block_alphas)
        Bk = B.submatrix(range(r0, r0 + s), range(r0, r0 + s))
        J = jcf(Bk, [mu])
        if J.blocks != [[s]]:
            raise InvariantViolation("diagonal block is not a single Jordan block")
        conj.append(J.P)
    P = Matrix.block_diag(conj, F) * P0
    psi = MatrixHom(F, P * h.gen_image * P.inverse())

    d0 = DiffOperator.identity(F) if (isinstance(F, FunctionField) and mu == F.gen) else Substitution(F, mu)
    derivations, reps = [], []
    for k, s in enumerate(sizes):
        r0 = cuts[k]
        maps = [d0]
        rep = "operator"
        for j in range(1, s):
            def entry(x, _r=r0, _j=j):
                return hom_eval(psi, x)[_r, _r + _j]

            fitted = None
            if isinstance(d0, DiffOperator):
                fit_samples = [(F.gen ** e, entry(F.gen ** e)) for e in range(j + 4)]
                try:
                    fitted = fit_operator(fit_samples, j, F)
                except NoFit:
                    fitted = None
            if fitted is None:
                rep = "black box"
                maps.append(BlackBox(F, entry, f"d{k + 1},{j}"))
            else:
                maps.append(fitted)
        derivations.append(HigherDerivation(F, maps))
        reps.append(rep)
    form = HomogeneousForm(P, sizes, derivations, psi, alphas, reps)
    form.cocycle_pairs = verify_homogeneous_form(form, seed=seed, pairs=pairs)
    return form


def verify_homogeneous_form(form, seed=0, pairs=50):
    """Diagonal blocks equal phi(d_i) and A_ij(xy) = sum_l A_il(x) A_lj(y) on samples."""
    F = form.hom.field
    rng = random.Random(seed + 1)
    xs = [F.gen, F.gen * F.gen]
    offs = form.offsets
    for x in xs + [F.random_element(rng) for _ in range(3)]:
        M = _pole_safe(form.hom, x)
        if M is None:
            continue
        for i in range(M.nrows):
            for j in range(i):
                if M[i, j]:
                    raise InvariantViolation("conjugated hom is not upper triangular")
        for k, (d, s) in enumerate(zip(form.derivations, form.blocks)):
            o = offs[k]
            T = toeplitz_matrix(F, d.values(x))
            if M.submatrix(range(o, o + s), range(o, o + s)) != T:
                raise InvariantViolation(f"diagonal block {k + 1} differs from phi(d{k + 1})")
    checked = 0
    tries = 0
    while checked < pairs and tries < 4 * pairs:
        tries += 1
        x, y = F.random_element(rng), F.random_element(rng)
        Mx, My, Mxy = _pole_safe(form.hom, x), _pole_safe(form.hom, y), _pole_safe(form.hom, x * y)
        if Mx is None or My is None or Mxy is None:
            continue
        t = len(form.blocks)
        for i in range(t):
            for j in range(i, t):
                ri = range(offs[i], offs[i] + form.blocks[i])
                cj = range(offs[j], offs[j] + form.blocks[j])
                acc = None
                for l in range(i, j + 1):
                    rl = range(offs[l], offs[l] + form.blocks[l])
                    term = Mx.submatrix(ri, rl) * My.submatrix(rl, cj)
                    acc = term if acc is None else acc + term
                if Mxy.submatrix(ri, cj) != acc:
                    raise InvariantViolation(f"cocycle relation fails for block ({i + 1},{j + 1})")
        checked += 1
    return checked


# -- Jordan-ordered matrices ------------------------------------------------------------


def _single_eigenvalue(A):
    if not A.is_square():
        raise NotTriangular("matrix is not square")
    if not A.is_upper_triangular():
        raise NotTriangular("matrix is not upper triangular")
    diag = A.diagonal()
    lam = diag[0]
    if any(d != lam for d in diag):
        raise MultipleEigenvalues("diagonal is not constant")
    return lam


def jordan_block_sizes(A, lam):
    """Decreasing Jordan block sizes of A at eigenvalue lam."""
    F = A.field
    n = A.nrows
    N = A - Matrix.identity(F, n) * lam
    ranks = [n]
    Nk = Matrix.identity(F, n)
    while ranks[-1] > 0 and len(ranks) <= n:
        Nk = Nk * N
        r = Nk.rank()
        if r == ranks[-1]:
            break
        ranks.append(r)
    ranks.append(ranks[-1])
    # number of blocks of size >= k is ranks[k-1] - ranks[k]
    at_least = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
    sizes = []
    for k in range(len(at_least), 0, -1):
        exact = at_least[k - 1] - (at_least[k] if k < len(at_least) else 0)
        sizes.extend([k] * exact)
    return sizes


def _required_dims(sizes, n):
    out = []
    for i in range(1, n + 1):
        acc = 0
        for j, s in enumerate(sizes, 1):
            acc += s
            if acc >= i:
                out.append(j)
                break
    return out


def jordan_ordered_profile(A):
    lam = _single_eigenvalue(A)
    F = A.field
    n = A.nrows
    sizes = jordan_block_sizes(A, lam)
    dims = []
    for i in range(1, n + 1):
        Ai = A.submatrix(range(i), range(i)) - Matrix.identity(F, i) * lam
        dims.append(Ai.nullity())
    return lam, sizes, dims, _required_dims(sizes, n)


def is_jordan_ordered(A):
    _, _, dims, required = jordan_ordered_profile(A)
    return dims == required


def _block_bottoms(B):
    """Rows of a Jordan matrix B that end a block."""
    n = B.nrows
    return [i for i in range(n) if i == n - 1 or not B[i, i + 1]]


def jordan_order_conjugate(A):
    """Upper triangular P with P A P^-1 in Jordan form with decreasing blocks."""
    lam, sizes, dims, required = jordan_ordered_profile(A)
    if dims != required:
        i = next(k for k, (d, r) in enumerate(zip(dims, required)) if d != r)
        raise NotJordanOrdered(
            f"leading {i + 1}x{i + 1} minor has eigenspace dimension {dims[i]}, expected {required[i]}",
            witness=i + 1)
    F = A.field
    n = A.nrows
    P = Matrix.identity(F, 1)
    J = Matrix._make(F, [[lam]], 1)
    for k in range(1, n):
        col = [A[i, k] for i in range(k)]
        a = P.apply(col)
        bottoms = _block_bottoms(J)
        NI = Matrix.identity(F, k) * lam - J
        grows = dims[k] == dims[k - 1] + 1
        if grows:
            rhs = [-x for x in a]
            c = None
        else:
            c = a[k - 1]
            rhs = [-x for x in a[:k - 1]] + [F.zero]
        for i in bottoms:
            if rhs[i]:
                raise NotJordanOrdered(
                    f"shear system has no solution at step {k + 1} (row {i + 1})", witness=k + 1)
        b = NI.solve(rhs)
        if not grows and not c:
            raise NotJordanOrdered(f"chain constant vanishes at step {k + 1}", witness=k + 1)
        T = Matrix.identity(F, k + 1)
        T = Matrix._make(F, [list(T.row(i)[:k]) + [b[i]] for i in range(k)] + [T.row(k)], k + 1)
        R = Matrix.block_diag([P, Matrix.identity(F, 1)], F)
        P = T * R
        new_rows = [list(J.row(i)) + [F.zero] for i in range(k)] + [[F.zero] * k + [lam]]
        if not grows:
            D = Matrix.diag(F, [F.one] * k + [c])
            P = D * P
            new_rows[k - 1][k] = F.one
        J = Matrix._make(F, new_rows, k + 1)
    if P * A != J * P:
        raise InvariantViolation("Jordan-ordered conjugation check failed")
    if not P.is_upper_triangular():
        raise InvariantViolation("conjugator is not upper triangular")
    got = _jcf_blocks(J)[1]
    if [s for _, s, _ in got] != sizes:
        raise InvariantViolation("conjugated matrix does not have the expected block sizes")
    return P, J


# -- commutant shapes -------------------------------------------------------------------


def _jcf_blocks(J):
    """``(lams, [(lam, size, start)])`` for a Jordan matrix; NotJCF otherwise."""
    if not J.is_square():
        raise NotJCF("matrix is not square")
    F = J.field
    n = J.nrows
    for i in range(n):
        for j in range(n):
            if j != i and j != i + 1 and J[i, j]:
                raise NotJCF(f"nonzero entry outside the diagonal and superdiagonal at ({i + 1},{j + 1})")
    blocks = []
    start = 0
    for i in range(n):
        last = i == n - 1
        if not last:
            s = J[i, i + 1]
            if s and s != F.one:
                raise NotJCF(f"superdiagonal entry at ({i + 1},{i + 2}) is neither 0 nor 1")
            if s and J[i, i] != J[i + 1, i + 1]:
                raise NotJCF(f"block crosses eigenvalues at row {i + 1}")
        if last or not J[i, i + 1]:
            blocks.append((J[start, start], i - start + 1, start))
            start = i + 1
    lams = []
    for lam, _, _ in blocks:
        if lam not in lams:
            lams.append(lam)
    return lams, blocks


def jcf_block_structure(J):
    return _jcf_blocks(J)[1]


@dataclass(frozen=True)
class ToeplitzShape:
    blocks: tuple  # (eigenvalue, size, start)
    grid: tuple  # grid[p][q] = (kind, ok) with kind in {"zero", "0T", "T0"}

    @property
    def ok(self):
        return all(ok for row in self.grid for _, ok in row)


def _is_ut_toeplitz(M):
    n = M.nrows
    for i in range(n):
        for j in range(n):
            if j < i:
                if M[i, j]:
                    return False
            elif M[i, j] != M[0, j - i]:
                return False
    return True


def commutant_shape_check(J, X):
    """``(ok, ToeplitzShape)``: X commutes with J and has the generalized Toeplitz block shape."""
    _, blocks = _jcf_blocks(J)
    grid = []
    for lp, np_, sp in blocks:
        row = []
        for lq, nq, sq in blocks:
            sub = X.submatrix(range(sp, sp + np_), range(sq, sq + nq))
            if lp != lq:
                row.append(("zero", sub.is_zero()))
            elif np_ <= nq:
                pad = nq - np_
                zero_part = sub.submatrix(range(np_), range(pad))
                T = sub.submatrix(range(np_), range(pad, nq))
                row.append(("0T", zero_part.is_zero() and _is_ut_toeplitz(T)))
            else:
                T = sub.submatrix(range(nq), range(nq))
                zero_part = sub.submatrix(range(nq, np_), range(nq))
                row.append(("T0", zero_part.is_zero() and _is_ut_toeplitz(T)))
        grid.append(tuple(row))
    shape = ToeplitzShape(tuple(blocks), tuple(grid))
    commutes = X * J == J * X
    return shape.ok and commutes, shape


def commutant_basis(J):
    return commutation_space(J, J)


def expected_commutant_dimension(J):
    """sum over same-eigenvalue block pairs of min(n_p, n_q)."""
    _, blocks = _jcf_blocks(J)
    return sum(min(np_, nq) for lp, np_, _ in blocks for lq, nq, _ in blocks if lp == lq)


def random_unipotent_upper(field, n, rng, bound=3):
    rows = [[field.one if i == j else (field.coerce(rng.randint(-bound, bound)) if j > i else field.zero)
             for j in range(n)] for i in range(n)]
    return Matrix(field, rows)


def jordan_matrix(field, lam, sizes):
    return Matrix.block_diag([Matrix.jordan_block(field, lam, s) for s in sizes], field)


__all__ = [
    "Substitution",
    "Composite",
    "SumMap",
    "BlackBox",
    "HigherDerivation",
    "identity_hs",
    "hasse_hs",
    "hs_from_taylor",
    "leibniz_check",
    "leibniz_defect",
    "hs_product",
    "toeplitz_matrix",
    "toeplitz_hom",
    "scaled_derivation_similar",
    "triangularize_commuting",
    "HomogeneousForm",
    "homogeneous_structure",
    "verify_homogeneous_form",
    "is_jordan_ordered",
    "jordan_block_sizes",
    "jordan_order_conjugate",
    "ToeplitzShape",
    "commutant_shape_check",
    "commutant_basis",
    "expected_commutant_dimension",
    "random_unipotent_upper",
    "jordan_matrix",
]
