"""
命令行接口测试
"""

import json

import pytest

from exceptional_modules.api import formats
from exceptional_modules.api.cli import EXIT_FAILED, EXIT_INVALID, EXIT_OK, run
from exceptional_modules.services.small_rank import projective, tube_simple


@pytest.fixture
def pair_files(tmp_path, alg237):
    """X = S(2·x_3)，Y = P(x_3)"""
    x_path = tmp_path / "x.json"
    y_path = tmp_path / "y.json"
    x_path.write_text(formats.emit_rep(tube_simple(alg237, 3, 2)), encoding="utf-8")
    y_path.write_text(
        formats.emit_rep(projective(alg237, alg237.arm_vertex(3, 1))), encoding="utf-8",
    )
    return str(x_path), str(y_path)


class TestAlgebraCommand:
    """algebra 子命令测试类"""

    def test_wild_algebra(self, capsys):
        assert run(["algebra", "--p", "2,3,7"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "chi=-1/42 wild=true" in out
        assert "relations=1" in out

    def test_write_descriptor(self, tmp_path, alg2222):
        path = tmp_path / "alg.json"
        assert run(["algebra", "--p", "2,2,2,2", "--out", str(path)]) == EXIT_OK
        assert formats.parse_algebra(path.read_text(encoding="utf-8")) == alg2222

    @pytest.mark.parametrize("argv", [
        ["algebra", "--p", "1,3"],
        ["algebra", "--p", "2,3,7", "--lambda", "0,0"],
        ["algebra", "--p", "2,x"],
        ["unknown"],
        [],
    ])
    def test_invalid_input(self, argv, capsys):
        assert run(argv) == EXIT_INVALID


class TestModuleCommand:
    """module 子命令测试类"""

    def test_regular_module_file(self, tmp_path, alg237):
        path = tmp_path / "s.json"
        argv = ["module", "regular", "--p", "2,3,7", "--arm", "3", "--a", "2", "--l", "3",
                "--out", str(path)]
        assert run(argv) == EXIT_OK
        m = formats.read_rep(str(path))
        assert [alg237.vertices[v] for v, d in enumerate(m.dims) if d] == ["x_3_2", "x_3_3", "x_3_4"]

    def test_rank_one_latex(self, capsys):
        argv = ["module", "rank1", "--p", "2,3,7", "--r", "1,0,3", "--n", "1", "--emit", "latex"]
        assert run(argv) == EXIT_OK
        assert "\\begin{pmatrix}" in capsys.readouterr().out

    def test_projective(self, capsys):
        assert run(["module", "projective", "--p", "2,3,7", "--vertex", "vc"]) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert data["dims"]["v0"] == 2

    def test_unknown_vertex(self, capsys):
        assert run(["module", "projective", "--p", "2,3,7", "--vertex", "x_9_1"]) == EXIT_INVALID
        assert "x_9_1" in capsys.readouterr().err

    def test_non_exceptional_length(self):
        argv = ["module", "regular", "--p", "2,3,7", "--arm", "1", "--a", "1", "--l", "2"]
        assert run(argv) == EXIT_INVALID


class TestExtCommand:
    """ext 子命令测试类"""

    def test_dims(self, pair_files, capsys):
        x, y = pair_files
        assert run(["ext", "--x", x, "--y", y]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "hom=0 ext=1"

    def test_cocycles(self, pair_files, capsys):
        x, y = pair_files
        assert run(["ext", "--x", x, "--y", y, "--cocycles"]) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert (data["hom"], data["ext"]) == (0, 1)
        assert data["cocycles"][0]["alpha_3_2"] == [["1"]]

    def test_bad_file(self, tmp_path, pair_files, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{}", encoding="utf-8")
        assert run(["ext", "--x", str(bad), "--y", pair_files[1]]) == EXIT_INVALID
        assert "错误" in capsys.readouterr().err


class TestKronCommand:
    """kron 子命令测试类"""

    def test_preprojective(self, capsys):
        assert run(["kron", "--n", "3", "--k", "2"]) == EXIT_OK
        out = capsys.readouterr().out
        assert out.startswith("v=8 u=3")

    def test_preinjective_latex(self, capsys):
        assert run(["kron", "--n", "2", "--side", "preinj", "--k", "1", "--emit", "latex"]) == EXIT_OK
        assert "A_{2}" in capsys.readouterr().out

    def test_invalid_n(self):
        assert run(["kron", "--n", "0", "--k", "1"]) == EXIT_INVALID

    def test_single_arrow_large_k(self, capsys):
        assert run(["kron", "--n", "1", "--k", "5"]) == EXIT_OK
        assert capsys.readouterr().out.startswith("v=0 u=1")


class TestSchofieldCommand:
    """schofield 子命令测试类"""

    def test_induction_step(self, tmp_path, pair_files, capsys, alg237):
        x, y = pair_files
        out = tmp_path / "m.json"
        assert run(["schofield", "--x", x, "--y", y, "--out", str(out), "--json"]) == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert report["subject"] == "induction"
        m = formats.read_rep(str(out))
        assert m.dims == projective(alg237, alg237.arm_vertex(3, 2)).dims

    def test_no_extension(self, pair_files):
        x, y = pair_files
        assert run(["schofield", "--x", y, "--y", x]) == EXIT_INVALID


class TestAuditCommand:
    """audit 子命令测试类"""

    def test_clean_module(self, tmp_path, p_c, capsys):
        path = tmp_path / "pc.json"
        path.write_text(formats.emit_rep(p_c), encoding="utf-8")
        assert run(["audit", "--input", str(path)]) == EXIT_OK
        assert "[audit] 通过" in capsys.readouterr().out

    def test_broken_relation(self, tmp_path, broken_p_c, capsys):
        path = tmp_path / "broken.json"
        path.write_text(formats.emit_rep(broken_p_c), encoding="utf-8")
        assert run(["audit", "--input", str(path), "--json"]) == EXIT_FAILED
        report = json.loads(capsys.readouterr().out)
        failed = [r["name"] for r in report["results"] if not r["is_valid"]]
        assert "relation_3" in failed


class TestLatticeCommand:
    """lattice 子命令测试类"""

    def test_bounds(self, capsys):
        argv = ["lattice", "--p", "2,3,7", "--det", "0;0,0,0", "--det", "-1;0,0,0", "--tau", "1"]
        assert run(argv) == EXIT_OK
        out = capsys.readouterr().out
        assert "bound=3" in out
        assert "sharp_bound=" in out
        assert "tau^1=-2;1,2,6" in out

    def test_tame_has_no_sharp_bound(self, capsys):
        assert run(["lattice", "--p", "3,3,3", "--det", "0;0,0,0"]) == EXIT_OK
        assert "sharp_bound" not in capsys.readouterr().out


class TestSuiteCommands:
    """pairs 与 verify-suite 子命令测试类"""

    def test_pairs(self, capsys):
        assert run(["pairs", "--p", "2,3,7", "--workers", "1"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "X=S(x_3_2) Y=P(x_3_1) n=1" in out

    def test_selected_suites(self, capsys):
        argv = ["verify-suite", "--p", "2,3,7", "--suite", "wildness", "--suite", "kronecker",
                "--json"]
        assert run(argv) == EXIT_OK
        results = json.loads(capsys.readouterr().out)
        assert [r["suite"] for r in results] == ["kronecker", "wildness"]
        assert all(r["passed"] for r in results)

    def test_unknown_suite(self):
        assert run(["verify-suite", "--p", "2,3,7", "--suite", "nope"]) == EXIT_INVALID
