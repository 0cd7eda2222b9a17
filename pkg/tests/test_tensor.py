import json
import random

import pytest

from helpers import direct_sum_hom, kron_oracle, random_invertible_int_matrix, random_multiplicities, simples_of
from tsvs.bimod import MatrixHom
from tsvs.errors import FieldMismatch, InvariantViolation, NotSemisimple
from tsvs.matrix import Matrix
from tsvs.numfield import NumberField
from tsvs.poly import QQ, Poly
from tsvs.tensor import (
    K0Presentation,
    check_k0_ring,
    decompose,
    k0_group_structure,
    k0_presentation,
    kronecker_apply,
    kronecker_compose,
)

X = Poly.x(QQ)
K3 = NumberField(X ** 3 - 2)


class TestKronecker:
    @pytest.mark.parametrize("seed", range(5))
    def test_matches_entrywise_definition(self, seed):
        rng = random.Random(seed)
        _, simples = simples_of(K3)
        h = simples[2].hom
        B = Matrix(K3, [[K3.random_element(rng) for _ in range(2)] for _ in range(3)])
        assert kronecker_apply(h, B) == kron_oracle(h, B)

    def test_composition_is_a_hom(self):
        _, simples = simples_of(K3)
        h = kronecker_compose(simples[2].hom, simples[2].hom)
        assert h.n == 4
        rng = random.Random(0)
        a, b = K3.random_element(rng), K3.random_element(rng)
        assert h(a * b) == h(a) * h(b)

    def test_trivial_is_unit(self):
        _, simples = simples_of(K3)
        one = simples[1].hom
        for oid in (1, 2):
            assert kronecker_compose(one, simples[oid].hom) == simples[oid].hom

    def test_field_mismatch(self):
        K2 = NumberField(X ** 2 - 2)
        with pytest.raises(FieldMismatch):
            kronecker_compose(MatrixHom(K2, [[K2.gen]]), MatrixHom(K3, [[K3.gen]]))


class TestDecompose:
    @pytest.mark.parametrize("seed", range(6))
    def test_recovers_multiplicities_after_conjugation(self, seed):
        rng = random.Random(seed)
        K = NumberField(X ** 4 - 2)
        table, simples = simples_of(K)
        mult, dim = random_multiplicities(table, rng, 6)
        h = direct_sum_hom(K, mult, simples)
        P = random_invertible_int_matrix(K, dim, rng)
        assert decompose(h.conjugate(P), table).as_dict() == mult

    def test_square_of_size_two_simple(self):
        table, simples = simples_of(K3)
        d = decompose(kronecker_compose(simples[2].hom, simples[2].hom), table)
        assert d.parts == ((1, 2), (2, 1))
        assert d.multiplicity(2) == 1 and d.multiplicity(9) == 0

    def test_not_semisimple(self):
        K = NumberField(X ** 2 - 2)
        g = K.gen
        # a Jordan block cannot be a sum of simples
        with pytest.raises(NotSemisimple):
            decompose(MatrixHom(K, Matrix(K, [[g, 1], [0, g]])))


class TestK0:
    def test_rational(self):
        assert k0_presentation(NumberField(X - 1)).text() == "Z"

    def test_cbrt2(self):
        pres = k0_presentation(K3)
        assert pres.text() == "Z[x1]/(x1^2 - x1 - 2)"
        assert pres.group_name is None

    def test_sqrt2(self):
        pres = k0_presentation(NumberField(X ** 2 - 2))
        assert pres.text() == "Z[x1]/(x1^2 - 1)"
        assert pres.group_name == "C2"

    def test_klein_four(self):
        pres = k0_presentation(NumberField(X ** 4 + 1))
        assert pres.group_name == "C2 x C2"
        assert pres.text() == (
            "Z<x1,x2,x3> / ( x1*x1 - ( 1 ), x1*x2 - ( x3 ), x1*x3 - ( x2 ), "
            "x2*x1 - ( x3 ), x2*x2 - ( 1 ), x2*x3 - ( x1 ), "
            "x3*x1 - ( x2 ), x3*x2 - ( x1 ), x3*x3 - ( 1 ) )")

    def test_cyclic(self):
        assert k0_presentation(NumberField(X ** 4 + X ** 3 + X ** 2 + X + 1)).group_name == "C4"
        assert k0_presentation(NumberField(X ** 3 - 3 * X + 1)).group_name == "C3"

    def test_mixed_sizes(self):
        pres = k0_presentation(NumberField(X ** 4 - 2))
        assert pres.relation_grouped(1, 1) == "x2*x2 - ( 2*x1 + 2 )"

    def test_dimension_count(self):
        pres = k0_presentation(NumberField(X ** 4 - 2))
        for i in range(pres.rank):
            for j in range(pres.rank):
                total = pres.constants[i][j] + sum(
                    a * s for a, s in zip(pres.coefficients[i][j], pres.orbit_sizes))
                assert total == pres.orbit_sizes[i] * pres.orbit_sizes[j]

    def test_table_json_is_stable(self):
        pres = k0_presentation(K3)
        data = json.loads(pres.table_json())
        assert data["alpha"]["1,1"] == {"constant": 2, "coefficients": [1]}
        assert pres.table_json() == k0_presentation(K3).table_json()

    def test_ring_check_rejects_noncommutative_table(self):
        bad = K0Presentation(K3, (2, 3), (1, 1), ((1, 0), (0, 1)), (((0, 0), (1, 0)), ((0, 1), (0, 0))))
        with pytest.raises(InvariantViolation):
            check_k0_ring(bad)

    def test_group_structure(self):
        parts = k0_group_structure(K3)
        assert [d for _, d in parts] == ["K", "K[X]/(X^2 + g*X + g^2)"]
