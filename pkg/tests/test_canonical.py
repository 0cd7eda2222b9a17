import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tsvs.bimod import MatrixHom
from tsvs.canonical import (
    BlackBox,
    HigherDerivation,
    Substitution,
    commutant_basis,
    commutant_shape_check,
    expected_commutant_dimension,
    hasse_hs,
    homogeneous_structure,
    hs_from_taylor,
    hs_product,
    identity_hs,
    is_jordan_ordered,
    jordan_block_sizes,
    jordan_matrix,
    jordan_order_conjugate,
    leibniz_check,
    leibniz_defect,
    random_unipotent_upper,
    scaled_derivation_similar,
    toeplitz_hom,
    toeplitz_matrix,
    triangularize_commuting,
)
from tsvs.errors import (
    DoesNotSplit,
    LeibnizViolation,
    MultipleEigenvalues,
    NotHomogeneous,
    NotJCF,
    NotJordanOrdered,
    NotTriangular,
)
from tsvs.funcfield import DiffOperator, FunctionField
from tsvs.matrix import Matrix, jcf
from tsvs.numfield import NumberField
from tsvs.poly import QQ, Poly

F = FunctionField("t")
t = F.gen
D = [DiffOperator.hasse(F, j) for j in range(6)]
X = Poly.x(QQ)


def qmat(rows):
    return Matrix(QQ, [[Fraction(a) for a in r] for r in rows])


class TestHigherDerivations:
    def test_hasse_passes_leibniz(self):
        report = leibniz_check(hasse_hs(F, 3), random_pairs=10, max_degree=10)
        assert report["order"] == 3
        assert report["monomial_pairs"] == 66

    def test_rejects_non_derivation(self):
        bad = HigherDerivation(F, [D[0], D[2]])
        with pytest.raises(LeibnizViolation):
            leibniz_check(bad, random_pairs=0, max_degree=4)
        assert leibniz_defect(bad, random_pairs=0, max_degree=4)[0] == 1

    def test_taylor_family(self):
        # t -> t + s gives the Hasse derivatives; t -> t + t s gives the Euler family
        assert hs_from_taylor(F, [1, 0, 0]).maps == hasse_hs(F, 3).maps
        euler = hs_from_taylor(F, [t, 0])
        assert euler.format() == "[D0; t*D1; t^2*D2]"
        leibniz_check(euler, random_pairs=10, max_degree=8)

    def test_product_of_hasse(self):
        p = hs_product(hasse_hs(F, 1), hasse_hs(F, 1))
        assert p.format() == "[D0; 2*D1; 2*D2]"
        assert p.order == 2
        assert p.certified_order == 1

    def test_truncated_product_breaks_leibniz_above_min_order(self):
        # delta_2(t*t) = 2, while the Leibniz sum is delta_1(t)^2 = 4
        p = hs_product(hasse_hs(F, 1), hasse_hs(F, 1), check=False)
        assert p[2].apply(t * t) == 2
        leibniz = sum((p[i].apply(t) * p[2 - i].apply(t) for i in range(3)), F.zero)
        assert leibniz == 4
        level, _ = leibniz_defect(p, random_pairs=0, max_degree=4)
        assert level == 2

    def test_product_with_identity(self):
        d = hasse_hs(F, 2)
        assert hs_product(identity_hs(F), d).maps == d.maps

    def test_black_box_composition(self):
        sq = BlackBox(F, lambda x: x.substitute(t * t), "sub(t^2)")
        d = HigherDerivation(F, [sq])
        leibniz_check(d, random_pairs=5, max_degree=6)
        assert not d.closed_form


class TestToeplitz:
    def test_matrix_shape(self):
        M = toeplitz_matrix(F, [t, F.one, F.coerce(3)])
        assert M == Matrix(F, [[t, 1, 3], [0, t, 1], [0, 0, t]])

    @pytest.mark.parametrize("m", range(1, 4))
    def test_hom_is_multiplicative(self, m):
        h = toeplitz_hom(hasse_hs(F, m))
        rng = random.Random(m)
        for _ in range(3):
            a, b = F.random_element(rng), F.random_element(rng)
            assert h(a * b) == h(a) * h(b)
            assert h(a) == toeplitz_matrix(F, hasse_hs(F, m).values(a))

    def test_scaled_derivation(self):
        cert = scaled_derivation_similar(hasse_hs(F, 1), t)
        assert cert["d_prime"].format() == "[D0; t*D1]"
        assert cert["P"] == Matrix.diag(F, [t, 1])

    def test_number_field_substitution(self):
        K = NumberField(X ** 2 - 2)
        d = HigherDerivation(K, [Substitution(K, -K.gen)])
        h = toeplitz_hom(d)
        assert h.gen_image == Matrix(K, [[-K.gen]])


class TestTriangularize:
    @pytest.mark.parametrize("seed", range(5))
    def test_rational_matrices(self, seed):
        rng = random.Random(seed)
        n = 4
        T0 = Matrix(QQ, [[Fraction(rng.choice([1, 2])) if i == j else
                          (Fraction(rng.randint(-2, 2)) if j > i else Fraction(0)) for j in range(n)]
                         for i in range(n)])
        S = Matrix(QQ, [[Fraction(rng.randint(-2, 2) if i != j else 1) for j in range(n)] for i in range(n)])
        if not S.is_invertible():
            return
        A = S * T0 * S.inverse()
        P, T = triangularize_commuting(MatrixHom(QQ, A))
        assert T.is_upper_triangular()
        assert P * A * P.inverse() == T

    def test_function_field_needs_eigenvalues(self):
        A = Matrix(F, [[t, 0], [1, t]])
        with pytest.raises(DoesNotSplit):
            triangularize_commuting(MatrixHom(F, A))
        P, T = triangularize_commuting(MatrixHom(F, A), [t])
        assert T.is_upper_triangular() and P * A * P.inverse() == T


class TestHomogeneous:
    def test_single_jordan_block(self):
        form = homogeneous_structure(MatrixHom(F, Matrix(F, [[t, 1], [0, t]])), t, pairs=5)
        assert form.blocks == [2]
        assert form.derivations[0].format() == "[D0; D1]"
        assert form.representation == ["operator"]
        assert form.cocycle_pairs == 5

    def test_two_blocks(self):
        h = toeplitz_hom(hasse_hs(F, 1), check=False).direct_sum(toeplitz_hom(hasse_hs(F, 1), check=False))
        form = homogeneous_structure(h, t, pairs=5)
        assert form.blocks == [2, 2]

    def test_not_homogeneous(self):
        with pytest.raises(NotHomogeneous):
            homogeneous_structure(MatrixHom(F, Matrix(F, [[t, 0], [0, t + 1]])), t)


class TestJordanOrdered:
    def test_jcf_is_ordered_with_identity_conjugator(self):
        J = jordan_matrix(QQ, Fraction(2), [3, 1])
        assert is_jordan_ordered(J)
        P, J2 = jordan_order_conjugate(J)
        assert P == Matrix.identity(QQ, 4)
        assert J2 == J

    def test_increasing_blocks_are_not_ordered(self):
        J = jordan_matrix(QQ, Fraction(0), [1, 2])
        assert not is_jordan_ordered(J)
        with pytest.raises(NotJordanOrdered) as exc:
            jordan_order_conjugate(J)
        assert exc.value.witness == 2

    def test_preconditions(self):
        with pytest.raises(NotTriangular):
            is_jordan_ordered(qmat([[1, 0], [1, 1]]))
        with pytest.raises(MultipleEigenvalues):
            is_jordan_ordered(qmat([[1, 0], [0, 2]]))

    def test_block_sizes(self):
        assert jordan_block_sizes(jordan_matrix(QQ, Fraction(1), [1, 3, 2]), 1) == [3, 2, 1]

    @pytest.mark.parametrize("seed", range(10))
    def test_unipotent_conjugates_return_to_jcf(self, seed):
        rng = random.Random(seed)
        sizes = sorted((rng.randint(1, 3) for _ in range(rng.randint(1, 3))), reverse=True)
        J0 = jordan_matrix(QQ, Fraction(rng.randint(-2, 2)), sizes)
        U = random_unipotent_upper(QQ, J0.nrows, rng)
        A = U * J0 * U.inverse()
        P, J = jordan_order_conjugate(A)
        assert J == J0
        assert P.is_upper_triangular()
        assert P * A * P.inverse() == J
        assert sorted(jcf(A).blocks[0]) == sorted(sizes)


class TestCommutant:
    @given(st.lists(st.integers(1, 3), min_size=1, max_size=3))
    @settings(max_examples=25, deadline=None)
    def test_basis_has_toeplitz_shape(self, sizes):
        J = jordan_matrix(QQ, Fraction(1), sizes)
        basis = commutant_basis(J)
        assert len(basis) == expected_commutant_dimension(J) == sum(min(a, b) for a in sizes for b in sizes)
        for Y in basis:
            ok, _ = commutant_shape_check(J, Y)
            assert ok

    def test_distinct_eigenvalues_force_zero_blocks(self):
        J = Matrix.block_diag([Matrix.jordan_block(QQ, Fraction(1), 2), Matrix.jordan_block(QQ, Fraction(3), 1)], QQ)
        assert expected_commutant_dimension(J) == 3
        X_bad = qmat([[1, 0, 1], [0, 1, 0], [0, 0, 1]])
        ok, shape = commutant_shape_check(J, X_bad)
        assert not ok
        assert shape.grid[0][1] == ("zero", False)

    def test_not_jcf(self):
        with pytest.raises(NotJCF):
            commutant_shape_check(qmat([[1, 2], [0, 1]]), qmat([[1, 0], [0, 1]]))
