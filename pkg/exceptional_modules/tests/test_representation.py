"""
表示、典范关系与审计测试
"""

from fractions import Fraction

import pytest
from hypothesis import HealthCheck, given, settings as hypothesis_settings, strategies as st

from exceptional_modules.models.reports import Severity
from exceptional_modules.services.hom_ext import ext_dim, hom_dim, is_exceptional
from exceptional_modules.services.linalg import Matrix
from exceptional_modules.services.representation import (
    Rep, arm_prefix, arm_suffix, base_change, check_relations, direct_sum, path_matrix, rank,
    quotient_at_zero_vertex, relation_residuals, satisfies_relations, tensor_power, zero_rep,
)
from exceptional_modules.services.small_rank import projective, tube_simple
from exceptional_modules.services.validation import (
    EntryKind, MatrixScope, acceptability_audit, coefficient_audit, get_audit_service,
)
from exceptional_modules.tests.strategies import base_changed, relation_modules


def scaled_p_c(alg, p_c, factor):
    """v0 上做基变换 diag(1, factor)"""
    g = [Matrix.identity(d) for d in p_c.dims]
    g[0] = Matrix.from_rows([[1, 0], [0, factor]])
    return base_change(p_c, g)


class TestRep:
    """表示构造测试类"""

    def test_shape_mismatch_rejected(self, alg237, p_c):
        mats = list(p_c.mats)
        mats[0] = Matrix(1, 1)
        with pytest.raises(ValueError):
            Rep(alg237, p_c.dims, mats)

    def test_negative_dimension_rejected(self, alg237):
        dims = [0] * len(alg237.vertices)
        dims[1] = -1
        with pytest.raises(ValueError):
            Rep(alg237, dims, [Matrix(0, 0)] * len(alg237.arrows))

    def test_rank_and_total_dim(self, p_c, p_0):
        assert rank(p_c) == 1
        assert rank(p_0) == 1
        assert p_c.total_dim == 12

    def test_zero_rep(self, alg237):
        z = zero_rep(alg237)
        assert z.total_dim == 0
        assert satisfies_relations(z)

    def test_path_matrices(self, alg237, p_c):
        full3 = path_matrix(p_c, alg237.full_path(3))
        assert full3 == Matrix.from_rows([[1], [1]])
        assert arm_prefix(p_c, 3, 0) == Matrix.identity(2)
        assert arm_suffix(p_c, 3, 8) == Matrix.identity(1)
        assert arm_suffix(p_c, 3, 2) == Matrix.identity(1)


class TestRelations:
    """典范关系测试类"""

    def test_relations_hold(self, p_c):
        assert satisfies_relations(p_c)
        assert check_relations(p_c).passed

    def test_broken_relation_reports_residual(self, broken_p_c):
        assert not satisfies_relations(broken_p_c)
        residual = relation_residuals(broken_p_c)[3]
        assert residual == Matrix.from_rows([[0], [1]])
        report = check_relations(broken_p_c)
        assert not report.passed
        assert report.get("relation_3").details == ["残差[1,0] = 1"]


class TestConstructions:
    """直和、张量幂与基变换测试类"""

    def test_direct_sum(self, p_c, p_0):
        s = direct_sum(p_c, p_0)
        assert s.dims == tuple(a + b for a, b in zip(p_c.dims, p_0.dims))
        assert satisfies_relations(s)
        assert rank(s) == 2

    def test_direct_sum_requires_same_algebra(self, p_c, alg2222):
        with pytest.raises(ValueError):
            direct_sum(p_c, zero_rep(alg2222))

    def test_tensor_power(self, p_c):
        t = tensor_power(p_c, 3)
        assert t.dims == tuple(3 * d for d in p_c.dims)
        assert satisfies_relations(t)
        assert tensor_power(p_c, 0).total_dim == 0
        with pytest.raises(ValueError):
            tensor_power(p_c, -1)

    def test_base_change_preserves_relations(self, alg237, p_c):
        m = scaled_p_c(alg237, p_c, 5)
        assert satisfies_relations(m)
        assert m.mat(2, 1) == Matrix.from_rows([[0], [5]])

    def test_base_change_requires_invertible(self, alg237, p_c):
        g = [Matrix.identity(d) for d in p_c.dims]
        g[0] = Matrix(2, 2)
        with pytest.raises(ValueError):
            base_change(p_c, g)

    def test_quotient_at_zero_vertex(self, alg237, p_c):
        q = quotient_at_zero_vertex(p_c)
        assert q.dims == (0,) + p_c.dims[1:]
        assert satisfies_relations(q)
        assert rank(q) == -1
        assert quotient_at_zero_vertex(projective(alg237, 0)).total_dim == 0

    @hypothesis_settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])
    @given(st.data())
    def test_base_change_preserves_hom_and_ext(self, data):
        x = data.draw(relation_modules)
        y = data.draw(relation_modules)
        x2 = data.draw(base_changed(x))
        y2 = data.draw(base_changed(y))
        assert satisfies_relations(x2)
        assert satisfies_relations(y2)
        assert hom_dim(x2, y2) == hom_dim(x, y)
        assert ext_dim(x2, y2) == ext_dim(x, y)
        assert is_exceptional(x2) == is_exceptional(x)


class TestAudits:
    """系数审计与可接受性审计测试类"""

    def test_default_rules(self):
        rules = get_audit_service().rules
        assert sorted(rules) == ["C1", "C2", "C3", "C4", "C5"]
        assert rules["C1"].scope == MatrixScope.FIRST_ARROWS.value
        assert rules["C3"].entry_kind == EntryKind.ZERO_ONE.value

    def test_coefficient_audit_passes(self, p_c):
        assert coefficient_audit(p_c).passed

    def test_coefficient_audit_flags_entry(self, alg237, p_c):
        report = coefficient_audit(scaled_p_c(alg237, p_c, 5))
        assert not report.passed
        assert "alpha_2_1[1,0] = 5" in report.get("coefficients").details

    def test_coefficient_audit_as_warning(self, alg237, p_c):
        report = coefficient_audit(scaled_p_c(alg237, p_c, 5), Severity.WARNING)
        assert report.passed
        assert not report.all_valid

    def test_acceptability_of_p_c(self, p_c):
        report = acceptability_audit(p_c)
        assert report.passed
        assert report.get("rank_scope") is None

    def test_acceptability_flags_zero_one_violation(self, alg237, p_c):
        # v0 上 diag(1, −1)：臂 2 的首箭头出现 −1，违反 C2 与 C3
        report = acceptability_audit(scaled_p_c(alg237, p_c, -1))
        assert not report.get("C2").is_valid
        assert not report.get("C3").is_valid
        assert report.get("C1").is_valid

    def test_rank_zero_is_noted(self, alg237):
        m = tube_simple(alg237, 3, 7)
        report = acceptability_audit(m, Severity.WARNING)
        assert report.get("rank_scope").severity == Severity.INFO.value
        assert report.passed
