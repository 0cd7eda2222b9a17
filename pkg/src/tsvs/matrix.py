"""Exact dense matrices over Q, a number field or Q(t).

Includes row reduction, nullspaces, characteristic polynomials, Jordan
forms with eigenvalues in the field, and a similarity solver.
"""

import random
from dataclasses import dataclass

from .errors import (
    BadEigenvalueList,
    DoesNotSplit,
    FieldMismatch,
    NotSquare,
    SimilarityUndecided,
    SingularMatrix,
)
from .poly import QQ, Poly, squarefree_decomposition

SIMILARITY_BUDGET = 64


class Matrix:
    __slots__ = ("field", "nrows", "ncols", "_rows")

    def __init__(self, field, rows):
        rows = [list(r) for r in rows]
        self.field = field
        self.nrows = len(rows)
        self.ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != self.ncols:
                raise ValueError("ragged matrix rows")
        self._rows = tuple(tuple(field.coerce(x) for x in r) for r in rows)

    @classmethod
    def _make(cls, field, rows, ncols=None):
        m = cls.__new__(cls)
        m.field = field
        m._rows = tuple(tuple(r) for r in rows)
        m.nrows = len(m._rows)
        m.ncols = len(m._rows[0]) if m._rows else (ncols or 0)
        return m

    # -- constructors --------------------------------------------------------

    @classmethod
    def identity(cls, field, n):
        z, o = field.zero, field.one
        return cls._make(field, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, field, r, c=None):
        c = r if c is None else c
        return cls._make(field, [[field.zero] * c for _ in range(r)], c)

    @classmethod
    def diag(cls, field, entries):
        entries = [field.coerce(e) for e in entries]
        n = len(entries)
        return cls._make(field, [[entries[i] if i == j else field.zero for j in range(n)] for i in range(n)])

    @classmethod
    def block_diag(cls, blocks, field=None):
        field = field or blocks[0].field
        n = sum(b.nrows for b in blocks)
        m = sum(b.ncols for b in blocks)
        rows = [[field.zero] * m for _ in range(n)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.nrows):
                for j in range(b.ncols):
                    rows[r0 + i][c0 + j] = b[i, j]
            r0 += b.nrows
            c0 += b.ncols
        return cls._make(field, rows, m)

    @classmethod
    def from_columns(cls, field, cols):
        cols = [list(c) for c in cols]
        if not cols:
            return cls._make(field, [])
        return cls._make(field, [[c[i] for c in cols] for i in range(len(cols[0]))])

    @classmethod
    def jordan_block(cls, field, lam, n):
        lam = field.coerce(lam)
        return cls._make(field, [[lam if i == j else (field.one if j == i + 1 else field.zero)
                                  for j in range(n)] for i in range(n)])

    # -- access ----------------------------------------------------------------

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    @property
    def rows(self):
        return self._rows

    def row(self, i):
        return list(self._rows[i])

    def col(self, j):
        return [r[j] for r in self._rows]

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def is_square(self):
        return self.nrows == self.ncols

    def _check_field(self, other):
        if other.field is not self.field and other.field != self.field:
            raise FieldMismatch("matrices over different fields")

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_field(other)
        if self.shape != other.shape:
            raise ValueError("shape mismatch in addition")
        return Matrix._make(self.field, [[a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)],
                            self.ncols)

    def __neg__(self):
        return Matrix._make(self.field, [[-a for a in r] for r in self._rows], self.ncols)

    def __sub__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Matrix):
            self._check_field(other)
            if self.ncols != other.nrows:
                raise ValueError("shape mismatch in product")
            cols = list(zip(*other._rows)) if other._rows else []
            z = self.field.zero
            out = []
            for r in self._rows:
                row = []
                for c in cols:
                    acc = z
                    for a, b in zip(r, c):
                        if a and b:
                            acc = acc + a * b
                    row.append(acc)
                out.append(row)
            return Matrix._make(self.field, out, other.ncols)
        s = self.field.coerce(other)
        return Matrix._make(self.field, [[a * s for a in r] for r in self._rows], self.ncols)

    def __rmul__(self, other):
        s = self.field.coerce(other)
        return Matrix._make(self.field, [[s * a for a in r] for r in self._rows], self.ncols)

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = Matrix.identity(self.field, self.nrows)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def map(self, fn, field=None):
        return Matrix._make(field or self.field, [[fn(a) for a in r] for r in self._rows], self.ncols)

    def apply(self, vec):
        z = self.field.zero
        out = []
        for r in self._rows:
            acc = z
            for a, b in zip(r, vec):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return out

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash(self._rows)

    def is_zero(self):
        return not any(a for r in self._rows for a in r)

    def transpose(self):
        return Matrix._make(self.field, [list(c) for c in zip(*self._rows)], self.nrows)

    @property
    def T(self):
        return self.transpose()

    def submatrix(self, rows, cols):
        rows = list(rows)
        cols = list(cols)
        return Matrix._make(self.field, [[self._rows[i][j] for j in cols] for i in rows], len(cols))

    def trace(self):
        acc = self.field.zero
        for i in range(min(self.nrows, self.ncols)):
            acc = acc + self._rows[i][i]
        return acc

    def is_upper_triangular(self):
        return all(not self._rows[i][j] for i in range(self.nrows) for j in range(min(i, self.ncols)))

    def diagonal(self):
        return [self._rows[i][i] for i in range(min(self.nrows, self.ncols))]

    def kron(self, other):
        self._check_field(other)
        n2, m2 = other.nrows, other.ncols
        rows = []
        for i1 in range(self.nrows):
            for i2 in range(n2):
                row = []
                for j1 in range(self.ncols):
                    a = self._rows[i1][j1]
                    for j2 in range(m2):
                        row.append(a * other._rows[i2][j2] if a else self.field.zero)
                rows.append(row)
        return Matrix._make(self.field, rows, self.ncols * m2)

    # -- elimination -------------------------------------------------------------

    def rref(self):
        """Return ``(R, T, rank, pivots)`` with ``T * self == R`` reduced row echelon."""
        F = self.field
        n, m = self.nrows, self.ncols
        A = [list(r) for r in self._rows]
        T = [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]
        pivots = []
        r = 0
        for c in range(m):
            if r >= n:
                break
            p = next((i for i in range(r, n) if A[i][c]), None)
            if p is None:
                continue
            A[r], A[p] = A[p], A[r]
            T[r], T[p] = T[p], T[r]
            inv = F.one / A[r][c]
            if inv != F.one:
                A[r] = [a * inv for a in A[r]]
                T[r] = [a * inv for a in T[r]]
            for i in range(n):
                if i != r and A[i][c]:
                    f = A[i][c]
                    A[i] = [a - f * b if b else a for a, b in zip(A[i], A[r])]
                    T[i] = [a - f * b if b else a for a, b in zip(T[i], T[r])]
            pivots.append(c)
            r += 1
        return Matrix._make(F, A, m), Matrix._make(F, T, n), r, pivots

    def rank(self):
        return self.rref()[2]

    def nullity(self):
        return self.ncols - self.rank()

    def nullspace(self):
        """Reduced basis of {v : self * v = 0}, as lists of field elements."""
        F = self.field
        R, _, rank, pivots = self.rref()
        free = [j for j in range(self.ncols) if j not in pivots]
        basis = []
        for f in free:
            v = [F.zero] * self.ncols
            v[f] = F.one
            for i, p in enumerate(pivots):
                v[p] = -R[i, f]
            basis.append(v)
        return basis

    def solve(self, b):
        """A particular solution X of ``self * X = b`` (free unknowns zero).

        ``b`` may be a Matrix or a list (column).  Raises SingularMatrix when
        the system is inconsistent.
        """
        F = self.field
        as_list = not isinstance(b, Matrix)
        B = Matrix._make(F, [[F.coerce(x)] for x in b], 1) if as_list else b
        if B.nrows != self.nrows:
            raise ValueError("right-hand side has the wrong number of rows")
        aug = Matrix._make(F, [list(r) + list(s) for r, s in zip(self._rows, B._rows)], self.ncols + B.ncols)
        R, _, rank, pivots = aug.rref()
        if pivots and pivots[-1] >= self.ncols:
            raise SingularMatrix("inconsistent linear system")
        X = [[F.zero] * B.ncols for _ in range(self.ncols)]
        for i, p in enumerate(pivots):
            for k in range(B.ncols):
                X[p][k] = R[i, self.ncols + k]
        if as_list:
            return [x[0] for x in X]
        return Matrix._make(F, X, B.ncols)

    def inverse(self):
        if not self.is_square():
            raise NotSquare("only square matrices have inverses")
        R, T, rank, _ = self.rref()
        if rank < self.nrows:
            raise SingularMatrix("matrix is singular")
        return T

    def det(self):
        if not self.is_square():
            raise NotSquare("determinant of a non-square matrix")
        F = self.field
        n = self.nrows
        A = [list(r) for r in self._rows]
        d = F.one
        for c in range(n):
            p = next((i for i in range(c, n) if A[i][c]), None)
            if p is None:
                return F.zero
            if p != c:
                A[c], A[p] = A[p], A[c]
                d = -d
            d = d * A[c][c]
            inv = F.one / A[c][c]
            for i in range(c + 1, n):
                if A[i][c]:
                    f = A[i][c] * inv
                    A[i] = [a - f * b if b else a for a, b in zip(A[i], A[c])]
        return d

    def is_invertible(self):
        return self.is_square() and self.rank() == self.nrows

    # -- display -------------------------------------------------------------------

    def format(self, multiline=False):
        fe = self.field.format_element
        rows = ["[" + ", ".join(fe(a) for a in r) + "]" for r in self._rows]
        if multiline and len(rows) > 1:
            return "[" + ",\n ".join(rows) + "]"
        return "[" + ", ".join(rows) + "]"

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"Matrix({self.format()})"


# -- polynomials and matrices ---------------------------------------------------------


def charpoly(M):
    """Monic characteristic polynomial det(X I - M), by Faddeev-LeVerrier."""
    if not M.is_square():
        raise NotSquare("characteristic polynomial of a non-square matrix")
    F = M.field
    n = M.nrows
    coeffs = [F.zero] * (n + 1)
    coeffs[n] = F.one
    I = Matrix.identity(F, n)
    Mk = Matrix.zeros(F, n)
    for k in range(1, n + 1):
        Mk = M * (Mk + I * coeffs[n - k + 1])
        coeffs[n - k] = -(Mk.trace() / k)
    return Poly._make(coeffs, F)


def poly_at_matrix(p, M):
    F = M.field
    n = M.nrows
    acc = Matrix.zeros(F, n)
    I = Matrix.identity(F, n)
    for c in reversed(p.coeffs):
        acc = acc * M + I * F.coerce(c)
    return acc


def _lift_poly(p, F):
    if p.field is F or p.field == F:
        return p
    return Poly._make([F.coerce(c) for c in p.coeffs], F)


def factor_in_field(p, F):
    """Factor a polynomial over F (Q or a number field)."""
    from .factor import factor_over_Q
    from .numfield import NumberField, factor_over_K

    if F is QQ:
        return factor_over_Q(p)
    if isinstance(F, NumberField):
        return factor_over_K(p, F)
    raise DoesNotSplit("factorization is only available over Q and number fields")


def eigenvalues_in_field(M):
    """``[(eigenvalue, algebraic multiplicity)]`` when charpoly(M) splits over the field.

    Over Q(t) the matrix must be upper triangular.
    """
    F = M.field
    if F is QQ or getattr(F, "defining_poly", None) is not None:
        out = []
        for g, m in factor_in_field(charpoly(M), F):
            if g.degree != 1:
                raise DoesNotSplit(f"characteristic polynomial has irreducible factor {g.format('X')}")
            out.append((-g[0], m))
        return out
    if M.is_upper_triangular():
        out = []
        for d in M.diagonal():
            for k, (e, m) in enumerate(out):
                if e == d:
                    out[k] = (e, m + 1)
                    break
            else:
                out.append((d, 1))
        return out
    raise DoesNotSplit("eigenvalues over Q(t) must be supplied for non-triangular matrices")


# -- Jordan form ---------------------------------------------------------------------


@dataclass(frozen=True)
class JordanForm:
    eigenvalues: list
    blocks: list
    P: Matrix
    J: Matrix

    @property
    def conjugator(self):
        return self.P

    def pairs(self):
        return [(lam, n) for lam, sizes in zip(self.eigenvalues, self.blocks) for n in sizes]


def _in_span(basis_rows, v, F):
    if not basis_rows:
        return not any(v)
    return Matrix._make(F, basis_rows + [v]).rank() == len(basis_rows)


def _independent_rank(rows, F):
    return Matrix._make(F, rows).rank() if rows else 0


def jordan_chains(M, lam):
    """Chains for eigenvalue ``lam``: list of column lists [N^(k-1) v, ..., N v, v]."""
    F = M.field
    n = M.nrows
    N = M - Matrix.identity(F, n) * lam
    kernels = [[]]
    powers = [Matrix.identity(F, n)]
    while True:
        powers.append(powers[-1] * N)
        ker = powers[-1].nullspace()
        if len(ker) == len(kernels[-1]):
            break
        kernels.append(ker)
        if len(ker) == n:
            break
    top = len(kernels) - 1
    chains = []
    for k in range(top, 0, -1):
        span = list(kernels[k - 1])
        for ch in chains:
            span.append(ch[k - 1])
        rank = _independent_rank(span, F)
        for cand in kernels[k]:
            trial = span + [cand]
            r = _independent_rank(trial, F)
            if r > rank:
                span, rank = trial, r
                chain = [cand]
                for _ in range(k - 1):
                    chain.append(N.apply(chain[-1]))
                chains.append(list(reversed(chain)))
    return chains


def jcf(M, eigenvalues=None):
    """Jordan form of M with ``P * M * P^-1 == J``.

    ``eigenvalues`` fixes the order of the blocks.  When omitted they are read
    off the diagonal of a triangular matrix, or found by factoring the
    characteristic polynomial over Q or a number field.
    """
    if not M.is_square():
        raise NotSquare("Jordan form of a non-square matrix")
    F = M.field
    n = M.nrows
    if eigenvalues is None:
        eigenvalues = [e for e, _ in eigenvalues_in_field(M)]
    eigenvalues = [F.coerce(e) for e in eigenvalues]
    for i, e in enumerate(eigenvalues):
        if e in eigenvalues[:i]:
            raise BadEigenvalueList(f"eigenvalue {F.format_element(e)} listed twice")
    cols = []
    blocks = []
    for lam in eigenvalues:
        chains = jordan_chains(M, lam)
        if not chains:
            raise BadEigenvalueList(f"{F.format_element(lam)} is not an eigenvalue")
        blocks.append([len(c) for c in chains])
        for c in chains:
            cols.extend(c)
    if len(cols) != n:
        raise DoesNotSplit("supplied eigenvalues do not account for the whole characteristic polynomial")
    Q = Matrix.from_columns(F, cols)
    P = Q.inverse()
    J = Matrix.block_diag([Matrix.jordan_block(F, lam, s) for lam, sizes in zip(eigenvalues, blocks)
                           for s in sizes], F)
    if P * M != J * P:
        from .errors import InvariantViolation

        raise InvariantViolation("Jordan conjugator check failed")
    return JordanForm(list(eigenvalues), blocks, P, J)


# -- similarity ------------------------------------------------------------------------


def _similarity_invariants(A, F):
    cp = charpoly(A)
    if F is QQ or getattr(F, "defining_poly", None) is not None:
        parts = [g for g, _ in factor_in_field(cp, F)]
    else:
        parts = [g for g, _ in squarefree_decomposition(cp)]
    n = A.nrows
    ranks = []
    for g in parts:
        G = poly_at_matrix(g, A)
        Gk = G
        seq = []
        for _ in range(n):
            r = Gk.rank()
            seq.append(r)
            if len(seq) > 1 and seq[-1] == seq[-2]:
                break
            Gk = Gk * G
        ranks.append(tuple(seq))
    return cp, parts, ranks


def commutation_space(A1, A2):
    """Basis of {X : X A1 = A2 X}, each as an n x n Matrix."""
    F = A1.field
    n = A1.nrows
    rows = []
    for i in range(n):
        for j in range(n):
            row = [F.zero] * (n * n)
            for k in range(n):
                if A1[k, j]:
                    row[i * n + k] = row[i * n + k] + A1[k, j]
                if A2[i, k]:
                    row[k * n + j] = row[k * n + j] - A2[i, k]
            rows.append(row)
    L = Matrix._make(F, rows, n * n)
    return [Matrix._make(F, [v[i * n:(i + 1) * n] for i in range(n)], n) for v in L.nullspace()]


def similarity_solve(A1, A2, seed=0, budget=SIMILARITY_BUDGET):
    """Some invertible P with ``P * A1 == A2 * P``, or None when provably not similar."""
    if not A1.is_square() or not A2.is_square():
        raise NotSquare("similarity needs square matrices")
    A1._check_field(A2)
    if A1.nrows != A2.nrows:
        return None
    F = A1.field
    cp1, parts, r1 = _similarity_invariants(A1, F)
    if charpoly(A2) != cp1:
        return None
    r2 = []
    n = A1.nrows
    for g in parts:
        G = poly_at_matrix(g, A2)
        Gk = G
        seq = []
        for _ in range(n):
            r = Gk.rank()
            seq.append(r)
            if len(seq) > 1 and seq[-1] == seq[-2]:
                break
            Gk = Gk * G
        r2.append(tuple(seq))
    if r1 != r2:
        return None
    basis = commutation_space(A1, A2)
    if not basis:
        return None
    for X in basis:
        if X.is_invertible():
            return X
    rng = random.Random(seed)
    for _ in range(budget):
        X = Matrix.zeros(F, n)
        for B in basis:
            c = rng.randint(-3, 3)
            if c:
                X = X + B * c
        if X.is_invertible():
            return X
    raise SimilarityUndecided(f"no invertible conjugator found in {budget} random trials")
