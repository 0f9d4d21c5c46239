"""
典范代数结构测试
"""

from fractions import Fraction

import pytest

from exceptional_modules.services import algebra as algebra_service


class TestCanonicalAlgebra:
    """典范代数测试类"""

    def test_vertices_and_arrows(self, alg237):
        assert len(alg237.vertices) == 11
        assert len(alg237.arrows) == 12
        assert alg237.vertices[0] == "v0"
        assert alg237.vertices[-1] == "vc"
        assert alg237.vertices[1:4] == ["x_1_1", "x_2_1", "x_2_2"]

    def test_arrow_endpoints(self, alg237):
        first = alg237.arrows[alg237.arrow(3, 1)]
        last = alg237.arrows[alg237.arrow(3, 7)]
        assert first.source == alg237.zero_vertex
        assert alg237.vertices[first.target] == "x_3_1"
        assert last.target == alg237.sink_vertex
        assert first.label == "alpha_3_1"

    def test_arm_vertex_bounds(self, alg237):
        assert alg237.arm_vertex(2, 0) == 0
        assert alg237.arm_vertex(2, 3) == alg237.sink_vertex
        with pytest.raises(ValueError):
            alg237.arm_vertex(2, 4)
        with pytest.raises(ValueError):
            alg237.weight(4)

    def test_paths(self, alg237):
        pth = alg237.path(3, 2, 5)
        assert pth.length == 4
        assert alg237.vertices[alg237.path_source(pth)] == "x_3_1"
        assert alg237.vertices[alg237.path_target(pth)] == "x_3_5"
        with pytest.raises(ValueError):
            alg237.path(3, 5, 2)
        with pytest.raises(ValueError):
            alg237.path(1, 1, 3)

    def test_relations(self, alg237, alg2222):
        rels = alg237.relations()
        assert [(r.arm, r.lam) for r in rels] == [(3, Fraction(1))]
        assert [(r.arm, r.lam) for r in alg2222.relations()] == [(3, Fraction(1)), (4, Fraction(2))]

    def test_tubular_algebra(self, alg333):
        assert len(alg333.vertices) == 8
        assert len(alg333.arrows) == 9
        assert len(alg333.relations()) == 1
        assert alg333.is_normalized

    def test_two_arms_have_no_relations(self):
        alg = algebra_service.build([3, 4])
        assert alg.relations() == []
        assert alg.lambdas == (Fraction(0),)

    def test_coefficient_set(self, alg237, alg2222):
        assert alg237.coefficient_set() == {Fraction(0), Fraction(1), Fraction(-1)}
        assert alg2222.coefficient_set() == {Fraction(k) for k in range(-2, 3)}


class TestBuild:
    """构造与描述测试类"""

    def test_default_lambdas(self):
        alg = algebra_service.build([2, 2, 2, 2, 2])
        assert alg.lambdas == (Fraction(0), Fraction(1), Fraction(2), Fraction(3))
        assert alg.is_normalized

    def test_explicit_lambdas(self):
        alg = algebra_service.build([2, 2, 2, 2], ["0", "1", "1/2"])
        assert alg.lam(4) == Fraction(1, 2)
        assert Fraction(-1, 2) in alg.coefficient_set()

    def test_non_normalized_lambdas_allowed(self):
        alg = algebra_service.build([2, 3, 7], [1, 5])
        assert not alg.is_normalized

    @pytest.mark.parametrize("lambdas", [["0"], ["0", "0"], ["0", "x"]])
    def test_invalid_lambdas(self, lambdas):
        with pytest.raises(ValueError):
            algebra_service.build([2, 3, 7], lambdas)

    def test_descriptor_round_trip(self, alg2222):
        desc = alg2222.descriptor()
        assert desc == {"weights": [2, 2, 2, 2], "lambdas": ["0", "1", "2"]}
        assert algebra_service.from_descriptor(desc) == alg2222

    def test_descriptor_missing_field(self):
        with pytest.raises(ValueError):
            algebra_service.from_descriptor({"lambdas": []})

    def test_equality_and_hash(self, alg237):
        other = algebra_service.build((2, 3, 7), [0, 1])
        assert other == alg237
        assert hash(other) == hash(alg237)
        assert other != algebra_service.build((2, 3, 7), [0, 2])
