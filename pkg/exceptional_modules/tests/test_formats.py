"""
表示文件与 LaTeX 输出测试
"""

import json
from fractions import Fraction

import pytest
from hypothesis import given, settings as hypothesis_settings

from exceptional_modules.api import formats
from exceptional_modules.api.formats import RepFormatError
from exceptional_modules.services import kronecker
from exceptional_modules.services.linalg import Matrix
from exceptional_modules.services.representation import Rep
from exceptional_modules.tests.strategies import arbitrary_reps, theta_reps


class TestRepFile:
    """表示文件测试类"""

    def test_emit_layout(self, p_c):
        data = json.loads(formats.emit_rep(p_c))
        assert data["algebra"] == {"weights": [2, 3, 7], "lambdas": ["0", "1"]}
        assert data["dims"]["v0"] == 2
        assert data["mats"]["alpha_3_1"] == [["1"], ["1"]]

    def test_parse_emitted(self, p_c):
        assert formats.parse_rep(formats.emit_rep(p_c)) == p_c

    @hypothesis_settings(max_examples=100, deadline=None)
    @given(arbitrary_reps)
    def test_random_round_trip(self, m):
        assert formats.parse_rep(formats.emit_rep(m)) == m

    def test_zero_dimensional_vertices(self, alg237):
        dims = [0] * len(alg237.vertices)
        dims[alg237.arm_vertex(3, 2)] = 1
        mats = [Matrix(dims[a.source], dims[a.target]) for a in alg237.arrows]
        m = Rep(alg237, dims, mats)
        data = json.loads(formats.emit_rep(m))
        assert data["dims"]["x_3_2"] == 1
        assert data["mats"]["alpha_3_2"] == []
        assert data["mats"]["alpha_3_3"] == [[]]
        assert formats.parse_rep(json.dumps(data)) == m

    def test_fraction_entries(self, p_c):
        data = json.loads(formats.emit_rep(p_c))
        data["algebra"]["lambdas"] = ["0", "-3/2"]
        data["mats"]["alpha_3_1"] = [["1"], ["-3/2"]]
        m = formats.parse_rep(json.dumps(data))
        assert m.mat(3, 1)[1, 0] == Fraction(-3, 2)
        assert not m.algebra.is_normalized

    def test_bad_entry_path(self, p_c):
        data = json.loads(formats.emit_rep(p_c))
        data["mats"]["alpha_1_1"][0][0] = "abc"
        with pytest.raises(RepFormatError) as exc:
            formats.parse_rep(json.dumps(data))
        assert exc.value.path == "$.mats.alpha_1_1[0][0]"

    def test_wrong_row_count(self, p_c):
        data = json.loads(formats.emit_rep(p_c))
        data["mats"]["alpha_1_1"] = [["1"]]
        with pytest.raises(RepFormatError) as exc:
            formats.parse_rep(json.dumps(data))
        assert exc.value.path == "$.mats.alpha_1_1"

    def test_missing_vertex(self, p_c):
        data = json.loads(formats.emit_rep(p_c))
        del data["dims"]["vc"]
        with pytest.raises(RepFormatError) as exc:
            formats.parse_rep(json.dumps(data))
        assert exc.value.path == "$.dims"

    def test_schema_error_path(self, p_c):
        data = json.loads(formats.emit_rep(p_c))
        data["dims"]["v0"] = "two"
        with pytest.raises(RepFormatError) as exc:
            formats.parse_rep(json.dumps(data))
        assert exc.value.path == "$.dims.v0"

    def test_invalid_algebra(self, p_c):
        data = json.loads(formats.emit_rep(p_c))
        data["algebra"]["weights"] = [1, 3, 7]
        with pytest.raises(RepFormatError) as exc:
            formats.parse_rep(json.dumps(data))
        assert exc.value.path == "$.algebra"

    def test_format_error_is_value_error(self):
        with pytest.raises(ValueError):
            formats.parse_rep("not json")

    def test_read_missing_file(self, tmp_path):
        with pytest.raises(RepFormatError):
            formats.read_rep(str(tmp_path / "missing.json"))

    def test_write_and_read(self, tmp_path, p_0):
        path = tmp_path / "p0.json"
        formats.write_text(str(path), formats.emit_rep(p_0))
        assert formats.read_rep(str(path)) == p_0


class TestOtherFiles:
    """代数描述、Kronecker 与上闭链文件测试类"""

    def test_algebra_file(self, alg2222):
        assert formats.parse_algebra(formats.emit_algebra(alg2222)) == alg2222

    def test_theta_file(self):
        rep = kronecker.exceptional_preprojective(3, 2)
        assert formats.parse_theta(formats.emit_theta(rep)) == rep

    @hypothesis_settings(max_examples=100, deadline=None)
    @given(theta_reps)
    def test_random_theta_round_trip(self, rep):
        assert formats.parse_theta(formats.emit_theta(rep)) == rep

    def test_theta_arrow_count_checked(self):
        data = json.loads(formats.emit_theta(kronecker.exceptional_preprojective(3, 1)))
        data["n"] = 2
        with pytest.raises(RepFormatError):
            formats.parse_theta(json.dumps(data))

    def test_cocycle_file(self, alg237):
        families = [[Matrix(0, 0) for _ in alg237.arrows]]
        data = json.loads(formats.emit_cocycles(0, 1, alg237, families))
        assert data["ext"] == 1
        assert set(data["cocycles"][0]) == {a.label for a in alg237.arrows}


class TestLatex:
    """LaTeX 输出测试类"""

    def test_scalars(self):
        assert formats.latex_scalar(Fraction(-3, 2)) == "-\\tfrac{3}{2}"
        assert formats.latex_scalar(Fraction(4)) == "4"

    def test_matrices(self):
        assert formats.latex_matrix(Matrix(0, 2)) == "0_{0\\times 2}"
        assert formats.latex_matrix(Matrix.from_rows([[1, 0], [0, 1]])) == (
            "\\begin{pmatrix}\n1 & 0 \\\\\n0 & 1\n\\end{pmatrix}"
        )

    def test_rep_labels(self, p_c):
        text = formats.emit_latex(p_c)
        assert "M_{\\alpha_{1}^{(3)}} = \\begin{pmatrix}" in text
        assert text.count("M_{\\alpha_") == len(p_c.algebra.arrows)

    def test_theta_latex(self):
        text = formats.emit_theta_latex(kronecker.exceptional_preprojective(2, 1))
        assert text.startswith("A_{1} = ")
        assert "A_{2} = " in text
