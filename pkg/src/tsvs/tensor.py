"""Kronecker composition of homs, semisimple decomposition and K_0 presentations."""

import json
from dataclasses import dataclass

from .bimod import MatrixHom, classify, hom_eval, simple_from_orbit
from .errors import FieldMismatch, InvariantViolation, NotSemisimple
from .matrix import Matrix, poly_at_matrix
from .numfield import NumberField


def kronecker_apply(h, B):
    """phi (x) B: the block matrix whose (i1,i2),(j1,j2) entry is phi(B[i2][j2])[i1][j1]."""
    if B.field != h.field:
        raise FieldMismatch("matrix and hom are over different fields")
    m = h.n
    n2, c2 = B.nrows, B.ncols
    F = h.field
    rows = [[F.zero] * (m * c2) for _ in range(m * n2)]
    cache = {}
    for i2 in range(n2):
        for j2 in range(c2):
            b = B[i2, j2]
            if not b:
                continue
            if b not in cache:
                cache[b] = hom_eval(h, b)
            img = cache[b]
            for i1 in range(m):
                for j1 in range(m):
                    rows[i1 * n2 + i2][j1 * c2 + j2] = img[i1, j1]
    return Matrix._make(F, rows, m * c2)


def kronecker_compose(h1, h2):
    """The hom phi (x) psi of size m*n, multi-indices ordered lexicographically."""
    if h1.field != h2.field:
        raise FieldMismatch("homs over different fields")
    return MatrixHom(h1.field, kronecker_apply(h1, h2.gen_image))


# -- decomposition --------------------------------------------------------------------


@dataclass(frozen=True)
class Decomposition:
    field: NumberField
    parts: tuple  # ((orbit_id, multiplicity), ...) sorted by orbit id

    def multiplicity(self, orbit_id):
        return dict(self.parts).get(orbit_id, 0)

    def as_dict(self):
        return dict(self.parts)


def decompose(h, table=None):
    """Multiplicity of each simple in the bimodule of h: nullity(g(A)) / deg g."""
    K = h.field
    if not isinstance(K, NumberField):
        raise FieldMismatch("decomposition is defined over number fields")
    table = table or classify(K)
    parts = []
    total = 0
    for o in table.orbits:
        null = poly_at_matrix(o.factor, h.gen_image).nullity()
        if null % o.size:
            raise NotSemisimple(f"nullity {null} of orbit {o.id} is not a multiple of {o.size}")
        if null:
            parts.append((o.id, null // o.size))
            total += null
    if total != h.n:
        raise NotSemisimple(f"simple parts account for {total} of {h.n} dimensions")
    return Decomposition(K, tuple(parts))


def direct_sum_of_simples(K, multiplicities, table=None, simples=None):
    """Block-diagonal hom with simple_k repeated multiplicities[k] times."""
    table = table or classify(K)
    blocks = []
    for oid, mult in sorted(multiplicities.items()):
        S = simples[oid] if simples else simple_from_orbit(K, oid, table=table)
        blocks.extend([S.hom.gen_image] * mult)
    return MatrixHom(K, Matrix.block_diag(blocks, K))


# -- K_0 -----------------------------------------------------------------------------


@dataclass(frozen=True)
class K0Presentation:
    field: NumberField
    orbit_ids: tuple  # generator x_i <-> orbit_ids[i-1]
    orbit_sizes: tuple
    constants: tuple  # constants[i][j] = alpha_ij
    coefficients: tuple  # coefficients[i][j][l] = alpha_ijl
    automorphisms: tuple = None  # composition table when every orbit is a singleton
    group_name: str = None

    @property
    def rank(self):
        return len(self.orbit_ids)

    def generator(self, i):
        return f"x{i + 1}"

    def relation_rhs(self, i, j):
        terms = []
        for l, a in enumerate(self.coefficients[i][j]):
            if a:
                terms.append((a, self.generator(l)))
        if self.constants[i][j]:
            terms.append((self.constants[i][j], ""))
        return terms

    def relation(self, i, j, square_style=False):
        xi, xj = self.generator(i), self.generator(j)
        lhs = f"{xi}^2" if square_style and i == j else f"{xi}*{xj}"
        out = lhs
        for a, mono in self.relation_rhs(i, j):
            sign = " - " if a > 0 else " + "
            a = abs(a)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            out += sign + body
        return out

    def text(self):
        r = self.rank
        if r == 0:
            return "Z"
        if r == 1:
            return f"Z[x1]/({self.relation(0, 0, square_style=True)})"
        gens = ",".join(self.generator(i) for i in range(r))
        rels = ", ".join(self.relation_grouped(i, j) for i in range(r) for j in range(r))
        return f"Z<{gens}> / ( {rels} )"

    def relation_grouped(self, i, j):
        """``xi*xj - ( ... )`` with the right-hand side kept in parentheses."""
        rhs = []
        for a, mono in self.relation_rhs(i, j):
            if not mono:
                body = str(abs(a))
            elif abs(a) == 1:
                body = mono
            else:
                body = f"{abs(a)}*{mono}"
            if not rhs:
                rhs.append(body if a > 0 else f"-{body}")
            else:
                rhs.append(f" + {body}" if a > 0 else f" - {body}")
        return f"{self.generator(i)}*{self.generator(j)} - ( {''.join(rhs) or '0'} )"

    def table_dict(self):
        r = self.rank
        return {
            "generators": [self.generator(i) for i in range(r)],
            "orbits": list(self.orbit_ids),
            "sizes": list(self.orbit_sizes),
            "alpha": {f"{i + 1},{j + 1}": {"constant": self.constants[i][j],
                                           "coefficients": list(self.coefficients[i][j])}
                      for i in range(r) for j in range(r)},
        }

    def table_json(self):
        return json.dumps(self.table_dict(), sort_keys=True)

    def multiply(self, u, v):
        """Product in K_0 of vectors over the basis (1, x1, ..., xr)."""
        r = self.rank
        out = [0] * (r + 1)
        for a in range(r + 1):
            if not u[a]:
                continue
            for b in range(r + 1):
                if not v[b]:
                    continue
                c = u[a] * v[b]
                if a == 0 or b == 0:
                    out[a + b] += c
                    continue
                i, j = a - 1, b - 1
                out[0] += c * self.constants[i][j]
                for l in range(r):
                    out[l + 1] += c * self.coefficients[i][j][l]
        return out


def _group_name(table):
    n = len(table)

    def order(i):
        k, cur = 1, i
        while cur != 0:
            cur = table[i][cur]
            k += 1
        return k

    orders = [order(i) for i in range(n)]
    abelian = all(table[i][j] == table[j][i] for i in range(n) for j in range(n))
    if n in orders:
        return f"C{n}"
    if abelian and all(o <= 2 for o in orders):
        k = n.bit_length() - 1
        return "C2 x C2" if k == 2 else f"C2^{k}"
    return f"{'abelian ' if abelian else ''}group of order {n}"


def k0_presentation(K, table=None):
    """Generators, structure constants and checks for the Grothendieck ring of K."""
    table = table or classify(K)
    nontrivial = table.nontrivial
    trivial_id = table.trivial.id
    simples = {o.id: simple_from_orbit(K, o, table=table) for o in table.orbits}
    r = len(nontrivial)
    index = {o.id: l for l, o in enumerate(nontrivial)}
    constants = [[0] * r for _ in range(r)]
    coefficients = [[[0] * r for _ in range(r)] for _ in range(r)]
    for i, oi in enumerate(nontrivial):
        for j, oj in enumerate(nontrivial):
            h = kronecker_compose(simples[oi.id].hom, simples[oj.id].hom)
            for oid, mult in decompose(h, table).parts:
                if oid == trivial_id:
                    constants[i][j] = mult
                else:
                    coefficients[i][j][index[oid]] = mult
    sizes = [o.size for o in nontrivial]
    for i in range(r):
        for j in range(r):
            if constants[i][j] != constants[j][i] or coefficients[i][j] != coefficients[j][i]:
                raise InvariantViolation(f"tensor table is not symmetric at ({i + 1},{j + 1})")
            if sizes[i] * sizes[j] != constants[i][j] + sum(a * s for a, s in zip(coefficients[i][j], sizes)):
                raise InvariantViolation(f"dimension count fails at ({i + 1},{j + 1})")
    autos = name = None
    if all(o.size == 1 for o in table.orbits):
        ids = [o.id for o in table.orbits]
        pos = {oid: k for k, oid in enumerate(ids)}
        autos = []
        for oi in table.orbits:
            row = []
            for oj in table.orbits:
                h = kronecker_compose(simples[oi.id].hom, simples[oj.id].hom)
                (oid, _), = decompose(h, table).parts
                row.append(pos[oid])
            autos.append(tuple(row))
        autos = tuple(autos)
        name = _group_name(autos)
    pres = K0Presentation(
        K,
        tuple(o.id for o in nontrivial),
        tuple(sizes),
        tuple(tuple(row) for row in constants),
        tuple(tuple(tuple(c) for c in row) for row in coefficients),
        autos,
        name,
    )
    check_k0_ring(pres)
    return pres


def check_k0_ring(pres):
    """Brute-force associativity and commutativity on the basis (1, x1, ..., xr)."""
    r = pres.rank
    basis = [[1 if k == a else 0 for k in range(r + 1)] for a in range(r + 1)]
    for a in range(1, r + 1):
        for b in range(1, r + 1):
            if pres.multiply(basis[a], basis[b]) != pres.multiply(basis[b], basis[a]):
                raise InvariantViolation("K_0 product is not commutative")
            ab = pres.multiply(basis[a], basis[b])
            for c in range(1, r + 1):
                if pres.multiply(ab, basis[c]) != pres.multiply(basis[a], pres.multiply(basis[b], basis[c])):
                    raise InvariantViolation("K_0 product is not associative")
    return True


def k0_group_structure(K, table=None):
    """Summands K(lambda) of K_0 as ``[(orbit, description)]``; K_i for i >= 1 is not computed."""
    table = table or classify(K)
    out = []
    for o in table.orbits:
        desc = "K" if o.size == 1 else f"K[X]/({o.factor.format('X')})"
        out.append((o, desc))
    return out
