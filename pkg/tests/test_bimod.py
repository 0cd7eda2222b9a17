import random

import pytest

from helpers import direct_sum_hom, random_invertible_int_matrix, random_multiplicities, simples_of
from tsvs.bimod import MatrixHom, classify, endomorphism_basis, hom_similar, hom_validate, simple_from_orbit
from tsvs.errors import FieldMismatch, NonInvertibleDenominator, NotAHomomorphism
from tsvs.funcfield import FunctionField
from tsvs.matrix import Matrix, poly_at_matrix
from tsvs.numfield import NumberField
from tsvs.poly import QQ, Poly

X = Poly.x(QQ)
K3 = NumberField(X ** 3 - 2)

FIELDS = [X ** 2 - 2, X ** 3 - 2, X ** 4 + 1, X ** 4 - 2, X ** 3 - 3 * X + 1]


class TestClassify:
    @pytest.mark.parametrize("f", FIELDS, ids=lambda f: f.format("x"))
    def test_orbit_sizes_sum_to_degree(self, f):
        K = NumberField(f)
        table = classify(K)
        assert sum(o.size for o in table.orbits) == K.degree
        assert [o.id for o in table.orbits] == list(range(1, len(table.orbits) + 1))
        assert table.orbits[0].is_trivial
        assert table.trivial.factor == Poly.x(K) - K.gen

    def test_cbrt2(self):
        table = classify(K3)
        assert [(o.id, o.size, o.is_trivial) for o in table.orbits] == [(1, 1, True), (2, 2, False)]

    def test_galois_fields_have_singletons(self):
        for f in (X ** 4 + 1, X ** 3 - 3 * X + 1):
            assert all(o.size == 1 for o in classify(NumberField(f)).orbits)

    def test_lookup(self):
        table = classify(K3)
        with pytest.raises(KeyError):
            table[7]
        assert table.by_factor(table[2].factor).id == 2


class TestSimple:
    @pytest.mark.parametrize("f", FIELDS, ids=lambda f: f.format("x"))
    def test_simple_is_homomorphism(self, f):
        K = NumberField(f)
        table, simples = simples_of(K)
        for o in table.orbits:
            S = simples[o.id]
            assert S.dim == o.size
            hom_validate(S.hom)
            # the generator image has the orbit factor as minimal polynomial
            assert poly_at_matrix(o.factor, S.hom.gen_image).is_zero()

    def test_trivial_orbit_is_identity_embedding(self):
        table, simples = simples_of(K3)
        assert simples[1].hom.gen_image == Matrix(K3, [[K3.gen]])

    def test_custom_basis_changes_matrix_not_class(self):
        g = K3.gen
        x = Poly.x(K3)
        basis = [Poly([K3.one], K3), x * (g * g / 2)]
        S1 = simple_from_orbit(K3, 2)
        S2 = simple_from_orbit(K3, 2, basis=basis)
        assert S2.hom.gen_image == Matrix(K3, [[0, -g], [g, -g]])
        assert hom_similar(S1.hom, S2.hom)

    def test_endomorphisms_form_field_copy(self):
        S = simple_from_orbit(K3, 2)
        Ms = endomorphism_basis(S)
        assert len(Ms) == 2
        assert Ms[0] == Matrix.identity(K3, 2)


class TestHom:
    def test_eval_is_multiplicative(self):
        S = simple_from_orbit(K3, 2)
        rng = random.Random(5)
        for _ in range(5):
            a, b = K3.random_element(rng), K3.random_element(rng)
            assert S.hom(a * b) == S.hom(a) * S.hom(b)
            assert S.hom(a + b) == S.hom(a) + S.hom(b)

    def test_validate_rejects_with_witness(self):
        h = MatrixHom(K3, Matrix(K3, [[1]]))
        with pytest.raises(NotAHomomorphism) as exc:
            hom_validate(h)
        assert exc.value.witness == K3.defining_poly

    def test_function_field(self):
        F = FunctionField("t")
        t = F.gen
        h = MatrixHom(F, Matrix(F, [[t, 1], [0, t]]))
        assert hom_validate(h)["kind"] == "funcfield"
        x = 1 / (t + 1)
        assert h(x) * h(t + 1) == Matrix.identity(F, 2)
        bad = MatrixHom(F, Matrix(F, [[0, 0], [0, 0]]))
        with pytest.raises(NotAHomomorphism):
            hom_validate(bad)
        with pytest.raises(NonInvertibleDenominator):
            bad(1 / t)

    def test_field_mismatch(self):
        K2 = NumberField(X ** 2 - 2)
        with pytest.raises(FieldMismatch):
            MatrixHom(K3, Matrix(K2, [[K2.gen]]))


class TestSimilar:
    @pytest.mark.parametrize("seed", range(6))
    def test_conjugates_are_similar(self, seed):
        rng = random.Random(seed)
        table, simples = simples_of(K3)
        mult, dim = random_multiplicities(table, rng, 5)
        h = direct_sum_hom(K3, mult, simples)
        P = random_invertible_int_matrix(K3, dim, rng)
        assert hom_similar(h, h.conjugate(P))

    def test_different_multiplicities(self):
        table, simples = simples_of(K3)
        a = direct_sum_hom(K3, {1: 2, 2: 1}, simples)
        b = direct_sum_hom(K3, {1: 4}, simples)
        assert a.n == b.n == 4
        assert not hom_similar(a, b)

    def test_function_field_similarity(self):
        F = FunctionField("t")
        t = F.gen
        a = MatrixHom(F, Matrix(F, [[t, 1], [0, t]]))
        b = MatrixHom(F, Matrix(F, [[t, 0], [1, t]]))
        c = MatrixHom(F, Matrix(F, [[t, 0], [0, t]]))
        assert hom_similar(a, b)
        assert not hom_similar(a, c)
