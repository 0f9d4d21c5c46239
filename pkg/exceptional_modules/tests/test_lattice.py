"""
L(p) 群运算与平移界测试
"""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st
from pydantic import ValidationError

from exceptional_modules.services import lattice

P237 = (2, 3, 7)


def elements(p=P237):
    return st.tuples(
        st.integers(-5, 5), st.lists(st.integers(-20, 20), min_size=len(p), max_size=len(p)),
    ).map(lambda t: lattice.normal_form(t[0], t[1], p))


class TestWeights:
    """权重序列测试类"""

    def test_period_and_arms(self):
        w = lattice.as_weights(P237)
        assert w.t == 3
        assert w.period == 42

    @pytest.mark.parametrize("bad", [(2,), (1, 3), (2, 0, 5)])
    def test_invalid_weights(self, bad):
        with pytest.raises(ValidationError):
            lattice.as_weights(bad)

    @pytest.mark.parametrize("p, chi, wild", [
        ((2, 3, 7), Fraction(-1, 42), True),
        ((3, 3, 3), Fraction(0), False),
        ((2, 2, 2, 2), Fraction(0), False),
        ((2, 3, 5), Fraction(1, 30), False),
        ((2, 2, 2, 3), Fraction(-1, 6), True),
    ])
    def test_euler_characteristic(self, p, chi, wild):
        assert lattice.euler_characteristic(p) == chi
        assert lattice.is_wild(p) is wild


class TestElements:
    """群元素运算测试类"""

    def test_normal_form_carries_into_c(self):
        e = lattice.normal_form(0, [2, 0, 0], P237)
        assert e == lattice.canonical_element(P237)
        e = lattice.normal_form(0, [-1, 0, 0], P237)
        assert (e.a, e.coeffs) == (-1, (1, 0, 0))

    def test_non_normal_coefficients_rejected(self):
        with pytest.raises(ValidationError):
            lattice.LElement(p=P237, a=0, coeffs=(2, 0, 0))

    def test_dualizing_element(self):
        omega = lattice.dualizing_element(P237)
        assert (omega.a, omega.coeffs) == (-2, (1, 2, 6))
        assert lattice.degree(omega) == 1

    def test_degrees_of_generators(self):
        assert lattice.degree(lattice.canonical_element(P237)) == 42
        assert [lattice.degree(lattice.generator(i, P237)) for i in (1, 2, 3)] == [21, 14, 6]

    def test_parse_and_format(self):
        e = lattice.parse_element("1;3,0,8", P237)
        assert lattice.format_element(e) == "3;1,0,1"
        with pytest.raises(ValueError):
            lattice.parse_element("x;1", P237)
        with pytest.raises(ValueError):
            lattice.parse_element("0;1,2", P237)

    def test_mixed_weights_rejected(self):
        with pytest.raises(ValueError):
            lattice.add(lattice.zero(P237), lattice.zero((3, 3, 3)))

    @given(elements(), elements())
    def test_group_laws(self, e1, e2):
        assert lattice.add(e1, e2) == lattice.add(e2, e1)
        assert lattice.sub(lattice.add(e1, e2), e2) == e1
        assert lattice.degree(lattice.add(e1, e2)) == lattice.degree(e1) + lattice.degree(e2)

    @given(elements())
    def test_nonnegative_has_nonnegative_degree(self, e):
        if lattice.is_nonnegative(e):
            assert lattice.degree(e) >= 0


class TestTranslationBound:
    """平移界测试类"""

    def test_module_determinant(self):
        assert lattice.is_module_determinant(lattice.zero(P237))
        boundary = lattice.add(lattice.canonical_element(P237), lattice.dualizing_element(P237))
        assert not lattice.is_module_determinant(boundary)

    def test_tau_det(self):
        d = lattice.zero(P237)
        assert lattice.tau_det(d, 2) == lattice.multiply(lattice.dualizing_element(P237), 2)
        with pytest.raises(ValueError):
            lattice.tau_det(d, -1)

    def test_formula_bound(self):
        assert lattice.translation_bound([lattice.zero(P237)], P237) == 2
        dets = [lattice.parse_element(s, P237) for s in ("0;0,0,0", "-1;0,0,0", "2;1,1,1")]
        assert lattice.translation_bound(dets, P237) == 3

    def test_empty_or_mismatched_dets(self):
        with pytest.raises(ValueError):
            lattice.translation_bound([], P237)
        with pytest.raises(ValueError):
            lattice.translation_bound([lattice.zero((3, 3, 3))], P237)

    def test_sharp_bound_requires_wild(self):
        with pytest.raises(ValueError):
            lattice.sharp_translation_bound([lattice.zero((3, 3, 3))], (3, 3, 3))

    @pytest.mark.parametrize("det", ["0;0,0,0", "-1;0,0,0", "1;1,2,3", "0;1,0,6"])
    def test_sharp_bound_is_last_nonnegative_shift(self, det):
        d = lattice.parse_element(det, P237)
        bound = lattice.sharp_translation_bound([d], P237)
        if bound > 0:
            assert lattice.is_nonnegative(lattice.shift_defect(d, bound))
        for n in range(bound + 1, bound + 100):
            assert not lattice.is_nonnegative(lattice.shift_defect(d, n))

    def test_sharp_bound_of_zero_determinant(self):
        # c + (1−n)ω：n = 1 给出 c，n = 2 给出 c − ω = x_1 + x_2 + x_3
        d = lattice.zero(P237)
        assert lattice.shift_defect(d, 1) == lattice.canonical_element(P237)
        assert lattice.format_element(lattice.shift_defect(d, 2)) == "0;1,1,1"
        assert lattice.sharp_translation_bound([d], P237) >= 2
