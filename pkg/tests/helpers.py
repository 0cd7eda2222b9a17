"""Seeded random instances shared by the property and acceptance suites."""

from tsvs.bimod import MatrixHom, classify, simple_from_orbit
from tsvs.matrix import Matrix


def random_int_matrix(field, rows, cols, rng, bound=3):
    return Matrix(field, [[field.coerce(rng.randint(-bound, bound)) for _ in range(cols)] for _ in range(rows)])


def random_invertible_int_matrix(field, n, rng, bound=3):
    while True:
        M = random_int_matrix(field, n, n, rng, bound)
        if M.is_invertible():
            return M


def random_field_matrix(field, rows, cols, rng):
    return Matrix(field, [[field.random_element(rng) for _ in range(cols)] for _ in range(rows)])


def simples_of(K):
    table = classify(K)
    return table, {o.id: simple_from_orbit(K, o, table=table) for o in table.orbits}


def random_multiplicities(table, rng, max_dim):
    """A nonempty {orbit id: multiplicity} with total dimension <= max_dim."""
    while True:
        mult = {}
        dim = 0
        for o in table.orbits:
            k = rng.randint(0, 2)
            if k and dim + k * o.size <= max_dim:
                mult[o.id] = k
                dim += k * o.size
        if mult:
            return mult, dim


def direct_sum_hom(K, mult, simples):
    blocks = []
    for oid in sorted(mult):
        blocks.extend([simples[oid].hom.gen_image] * mult[oid])
    return MatrixHom(K, Matrix.block_diag(blocks, K))


def kron_oracle(h, B):
    """phi (x) B straight from the entrywise definition, one entry at a time."""
    m = h.n
    n2, c2 = B.nrows, B.ncols
    F = h.field
    out = [[F.zero] * (m * c2) for _ in range(m * n2)]
    for i1 in range(m):
        for i2 in range(n2):
            for j1 in range(m):
                for j2 in range(c2):
                    out[i1 * n2 + i2][j1 * c2 + j2] = h(B[i2, j2])[i1, j1]
    return Matrix(F, out)
