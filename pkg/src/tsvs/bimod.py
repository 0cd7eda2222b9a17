"""Matrix homomorphisms K -> M_n(K), embedding orbits and simple bimodules.

A homomorphism is stored by the image A of the field generator; every other
value is a polynomial (number field) or rational function (Q(t)) in A.
Orbits of embeddings of K are the monic irreducible factors of the defining
polynomial over K, and the simple bimodule of an orbit is built from the
structure constants of K[X]/(g).
"""

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .errors import (
    FieldMismatch,
    InvariantViolation,
    NonInvertibleDenominator,
    NotAHomomorphism,
    SingularMatrix,
)
from .funcfield import FunctionField
from .matrix import Matrix, poly_at_matrix, similarity_solve
from .numfield import NumberField, RelativeExtension, as_kx, factor_over_K
from .poly import QQ, Poly


class MatrixHom:
    """A homomorphism of K into n x n matrices, given by A = phi(generator)."""

    __slots__ = ("field", "gen_image")

    def __init__(self, field, gen_image):
        if not isinstance(gen_image, Matrix):
            gen_image = Matrix(field, gen_image)
        if gen_image.field is not field and gen_image.field != field:
            raise FieldMismatch("generator image is over a different field")
        if not gen_image.is_square():
            raise ValueError("generator image must be square")
        self.field = field
        self.gen_image = gen_image

    @property
    def n(self):
        return self.gen_image.nrows

    @property
    def A(self):
        return self.gen_image

    def __call__(self, x):
        return hom_eval(self, x)

    def conjugate(self, P, P_inv=None):
        """The hom x -> P phi(x) P^-1."""
        P_inv = P.inverse() if P_inv is None else P_inv
        return MatrixHom(self.field, P * self.gen_image * P_inv)

    def direct_sum(self, other):
        return MatrixHom(self.field, Matrix.block_diag([self.gen_image, other.gen_image], self.field))

    def __eq__(self, other):
        return isinstance(other, MatrixHom) and self.field == other.field and self.gen_image == other.gen_image

    def __hash__(self):
        return hash(self.gen_image)

    def __repr__(self):
        return f"MatrixHom({self.field.header()}, {self.gen_image.format()})"


def hom_eval(h, x):
    """phi(x) as an exact matrix."""
    F = h.field
    A = h.gen_image
    n = h.n
    if isinstance(x, (int, Fraction)):
        return Matrix.identity(F, n) * F.coerce(x)
    if isinstance(F, NumberField):
        x = F.coerce(x)
        return poly_at_matrix(x.to_poly(), A)
    if isinstance(F, FunctionField):
        x = F.coerce(x)
        num = poly_at_matrix(x.num, A)
        if x.den.degree == 0:
            return num
        den = poly_at_matrix(x.den, A)
        try:
            return num * den.inverse()
        except SingularMatrix:
            raise NonInvertibleDenominator(
                f"denominator {x.den.format(F.var)} is not invertible at the generator image") from None
    if F is QQ:
        return Matrix.identity(F, n) * F.coerce(x)
    raise FieldMismatch(f"unsupported field {F!r}")


def default_test_denominators():
    t = Poly.x(QQ)
    return [t, t * t + 1, t + 1, t - 2]


def hom_validate(h, denominators=None):
    """Certify that A defines a homomorphism.

    Number field: f(A) = 0.  Q(t): q(A) invertible for each test denominator.
    Returns a dict describing what was checked.
    """
    F = h.field
    if isinstance(F, NumberField):
        fA = poly_at_matrix(F.defining_poly, h.gen_image)
        if not fA.is_zero():
            raise NotAHomomorphism(
                f"defining polynomial {F.defining_poly.format('x')} does not vanish at the generator image",
                witness=F.defining_poly)
        return {"kind": "numberfield", "check": "f(A) = 0", "polynomial": F.defining_poly.format("x")}
    if isinstance(F, FunctionField):
        qs = default_test_denominators() if denominators is None else list(denominators)
        for q in qs:
            if not poly_at_matrix(q, h.gen_image).is_invertible():
                raise NotAHomomorphism(f"q(A) is singular for q = {q.format(F.var)}", witness=q)
        return {"kind": "funcfield", "check": "q(A) invertible",
                "denominators": [q.format(F.var) for q in qs]}
    return {"kind": "rational", "check": "none"}


# -- orbits -------------------------------------------------------------------------


@dataclass(frozen=True)
class Orbit:
    id: int
    factor: Poly
    size: int
    is_trivial: bool


@dataclass(frozen=True)
class OrbitTable:
    field: NumberField
    orbits: list

    def __getitem__(self, orbit_id):
        for o in self.orbits:
            if o.id == orbit_id:
                return o
        raise KeyError(f"no orbit with id {orbit_id}")

    @property
    def trivial(self):
        return next(o for o in self.orbits if o.is_trivial)

    @property
    def nontrivial(self):
        return [o for o in self.orbits if not o.is_trivial]

    def by_factor(self, g):
        for o in self.orbits:
            if o.factor == g:
                return o
        raise KeyError(f"{g} is not an orbit factor")


def classify(K):
    """The orbit table of K: one orbit per irreducible factor of f over K.

    Orbits are numbered from 1, ordered by size with the trivial orbit
    first among the singletons, then by factor coefficients.
    """
    f = as_kx(K.defining_poly, K)
    trivial = Poly.x(K) - K.gen
    facs = factor_over_K(f, K)
    if any(m != 1 for _, m in facs):
        raise InvariantViolation("defining polynomial is not squarefree over K")
    ordered = sorted((g for g, _ in facs), key=lambda g: (g.degree, g != trivial, g.sort_key()))
    orbits = [Orbit(i + 1, g, g.degree, g == trivial) for i, g in enumerate(ordered)]
    if sum(o.size for o in orbits) != K.degree or sum(o.is_trivial for o in orbits) != 1:
        raise InvariantViolation("orbit table fails the size count")
    return OrbitTable(K, orbits)


# -- simple bimodules -----------------------------------------------------------------


@dataclass(frozen=True)
class SimpleBimodule:
    orbit: Orbit
    ext: RelativeExtension
    hom: MatrixHom
    eigenvector: list = dc_field(default_factory=list)

    @property
    def dim(self):
        return self.hom.n


def simple_from_orbit(K, orbit, basis=None, table=None):
    """V(lambda) for an orbit (given by id or as an Orbit).

    phi_ij(gen) = sum_k beta[j][k][i] * lambda_k(gen).
    """
    if not isinstance(orbit, Orbit):
        orbit = (table or classify(K))[orbit]
    E = RelativeExtension(K, orbit.factor, basis=basis, check=False)
    m = E.m
    lam = E.lambda_coords(K.gen)
    beta = E.beta
    rows = []
    for i in range(m):
        row = []
        for j in range(m):
            acc = K.zero
            for k in range(m):
                c = beta[j][k][i]
                if c and lam[k]:
                    acc = acc + c * lam[k]
            row.append(acc)
        rows.append(row)
    A = Matrix(K, rows)
    hom = MatrixHom(K, A)
    hom_validate(hom)
    # v . A = Xbar . v with v = (alpha_1, ..., alpha_m)
    Xbar = Poly.x(K)
    for j in range(m):
        lhs = Poly([], K)
        for i in range(m):
            if A[i, j]:
                lhs = lhs + E.basis[i] * A[i, j]
        if E.reduce(lhs) != E.mul(Xbar, E.basis[j]):
            raise InvariantViolation("eigenvector relation fails for the constructed simple")
    return SimpleBimodule(orbit, E, hom, list(E.basis))


def minimal_polynomial_in_ext(E, a):
    """Minimal polynomial over K of an element a of K[X]/(g)."""
    K = E.base
    powers = [E.coords(Poly([K.one], K))]
    cur = Poly([K.one], K)
    while True:
        cur = E.mul(cur, a)
        v = E.coords(cur)
        M = Matrix(K, [list(p) for p in powers]).transpose()
        try:
            c = M.solve(v)
        except SingularMatrix:
            powers.append(v)
            continue
        return Poly([-x for x in c] + [K.one], K)


def endomorphism_basis(S):
    """M(p)_ij = beta[p][j][i], certified as a copy of K(lambda) commuting with phi."""
    E = S.ext
    K = E.base
    m = E.m
    beta = E.beta
    Ms = [Matrix(K, [[beta[p][j][i] for j in range(m)] for i in range(m)]) for p in range(m)]
    A = S.hom.gen_image
    for p, Mp in enumerate(Ms):
        if Mp * A != A * Mp:
            raise InvariantViolation(f"M({p + 1}) does not commute with the generator image")
        for q in range(p + 1, m):
            if Mp * Ms[q] != Ms[q] * Mp:
                raise InvariantViolation(f"M({p + 1}) and M({q + 1}) do not commute")
        for q in range(m):
            acc = Matrix.zeros(K, m)
            for k in range(m):
                if beta[p][q][k]:
                    acc = acc + Ms[k] * beta[p][q][k]
            if Mp * Ms[q] != acc:
                raise InvariantViolation(f"M({p + 1}) M({q + 1}) breaks the structure constants")
        mp = minimal_polynomial_in_ext(E, E.basis[p])
        if not poly_at_matrix(mp, Mp).is_zero():
            raise InvariantViolation(f"M({p + 1}) does not satisfy the minimal polynomial of its basis element")
    return Ms


def decomposition_of(h, table=None):
    from .tensor import decompose

    return decompose(h, table)


def hom_similar(h1, h2, seed=0):
    """Decide whether two homs define isomorphic bimodules."""
    if h1.field != h2.field:
        raise FieldMismatch("homs over different fields")
    if h1.n != h2.n:
        return False
    if isinstance(h1.field, NumberField):
        table = classify(h1.field)
        return decomposition_of(h1, table).parts == decomposition_of(h2, table).parts
    return similarity_solve(h1.gen_image, h2.gen_image, seed=seed) is not None

