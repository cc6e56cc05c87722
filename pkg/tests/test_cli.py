import json
import subprocess
import sys

import pytest

from cubartin import cli
from cubartin import defining_graph as dg

PATH_46 = "vertex a\nvertex b\nvertex c\nedge a b 4\nedge b c 6\n"
BRAID4 = "vertex a\nvertex b\nvertex c\nedge a b 3\nedge b c 3\nedge a c 2\n"
GAP = (
    "vertex a\nvertex b\nvertex c\nvertex d\n"
    "edge a b 2\nedge b c 3\nedge a c 4\nedge a d 3\n"
)
WALLS_SQUARE = "points 4\nwall 0011\nwall 0101\n"


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture()
def graph_file(tmp_path):
    def write(text, name="graph.txt"):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return write


class TestAnalyze:
    def test_positive(self, capsys, graph_file):
        code, out, _ = run(capsys, "analyze", "--graph", graph_file(PATH_46))
        assert code == 0
        assert f"verdict: {dg.COCOMPACTLY_CUBULATED}" in out
        assert "plan:" in out

    def test_negative_exits_1(self, capsys, graph_file):
        code, out, _ = run(capsys, "analyze", "--graph", graph_file(BRAID4))
        assert code == 1
        assert f"verdict: {dg.NOT_COCOMPACTLY_CUBULATED}" in out
        assert "witness: edge" in out

    def test_outside_warns_exits_0(self, capsys, graph_file):
        code, out, _ = run(capsys, "analyze", "--graph", graph_file(GAP))
        assert code == 0
        assert f"verdict: {dg.OUTSIDE_CLASSIFICATION}" in out
        assert "warning:" in out

    def test_parse_error_exits_2(self, capsys, graph_file):
        code, _, err = run(capsys, "analyze", "--graph", graph_file("nonsense\n"))
        assert code == 2
        assert "error:" in err

    def test_missing_file_exits_2(self, capsys):
        code, _, err = run(capsys, "analyze", "--graph", "/does/not/exist")
        assert code == 2
        assert "error:" in err

    def test_doc_format_is_json(self, capsys, graph_file):
        code, out, _ = run(
            capsys, "--format", "doc", "analyze", "--graph", graph_file(PATH_46)
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["verdict"] == dg.COCOMPACTLY_CUBULATED


class TestBuildVerify:
    def test_pipeline(self, capsys, graph_file, tmp_path):
        cx = str(tmp_path / "out.complex")
        code, out, _ = run(
            capsys, "build", "--graph", graph_file(PATH_46), "-o", cx
        )
        assert code == 0
        assert "npc: true" in out
        assert "abelianization_checked: true" in out
        code, out, _ = run(capsys, "verify", "--complex", cx)
        assert code == 0
        assert "npc: true" in out
        assert "euler_characteristic: 0" in out

    def test_build_times_circle_route(self, capsys, graph_file, tmp_path):
        text = "vertex a\nvertex b\nvertex c\nedge a b 3\nedge b c 2\nedge a c 2\n"
        cx = str(tmp_path / "out.complex")
        code, out, _ = run(capsys, "build", "--graph", graph_file(text), "-o", cx)
        assert code == 0

    def test_build_refuses_negative(self, capsys, graph_file, tmp_path):
        code, out, _ = run(
            capsys,
            "build",
            "--graph",
            graph_file(BRAID4),
            "-o",
            str(tmp_path / "x"),
        )
        assert code == 1
        assert "refused: true" in out

    def test_verify_flags_bad_complex(self, capsys, tmp_path):
        bad = tmp_path / "bad.complex"
        bad.write_text(
            "cubecomplex 1\nvertex v\nedge a v v\nsquare s a+ a+ a- a-\n"
        )
        code, out, _ = run(capsys, "verify", "--complex", str(bad))
        assert code == 1
        assert "npc: false" in out
        assert "violations" in out

    def test_verify_parse_error_exits_2(self, capsys, tmp_path):
        bad = tmp_path / "bad.complex"
        bad.write_text("vertex v\n")
        code, _, err = run(capsys, "verify", "--complex", str(bad))
        assert code == 2
        assert "error:" in err


class TestToolkit:
    @pytest.fixture()
    def square_file(self, tmp_path):
        from cubartin.cube_model import complex_text
        from cubartin.toolkit import grid_complex

        p = tmp_path / "grid.complex"
        p.write_text(complex_text(grid_complex(1, 1)))
        return str(p)

    def test_hyperplanes(self, capsys, square_file):
        code, out, _ = run(capsys, "toolkit", "hyperplanes", "--complex", square_file)
        assert code == 0
        assert "count: 2" in out

    def test_hull(self, capsys, square_file):
        code, out, _ = run(
            capsys,
            "toolkit",
            "hull",
            "--complex",
            square_file,
            "--vertices",
            "v0.0,v1.1",
        )
        assert code == 0
        assert "size: 4" in out

    def test_gates(self, capsys, square_file):
        code, out, _ = run(
            capsys,
            "toolkit",
            "gates",
            "--complex",
            square_file,
            "--y1",
            "v0.0",
            "--y2",
            "v1.1",
        )
        assert code == 0
        assert "separation: 2" in out
        assert "edge_duality: true" in out

    def test_product(self, capsys, square_file):
        code, out, _ = run(capsys, "toolkit", "product", "--complex", square_file)
        assert code == 0
        assert "irreducible: false" in out
        assert "factors: 2" in out

    def test_facing(self, capsys, square_file):
        code, out, _ = run(capsys, "toolkit", "facing", "--complex", square_file)
        assert code == 0
        assert "facing_triple: false" in out

    def test_dual(self, capsys, tmp_path):
        walls = tmp_path / "walls.txt"
        walls.write_text(WALLS_SQUARE)
        out_path = str(tmp_path / "dual.complex")
        code, out, _ = run(
            capsys, "toolkit", "dual", "--wallspace", str(walls), "-o", out_path
        )
        assert code == 0
        assert "vertices: 4" in out
        assert "squares: 1" in out
        assert "median: true" in out
        code, out, _ = run(capsys, "verify", "--complex", out_path)
        assert code == 0

    def test_missing_argument_exits_2(self, capsys, square_file):
        code, _, err = run(capsys, "toolkit", "hull", "--complex", square_file)
        assert code == 2
        assert "error:" in err
        code, _, err = run(capsys, "toolkit", "dual")
        assert code == 2

    def test_non_cat0_complex_exits_2(self, capsys, tmp_path):
        bad = tmp_path / "loop.complex"
        bad.write_text("cubecomplex 1\nvertex v\nedge a v v\n")
        code, _, err = run(capsys, "toolkit", "hyperplanes", "--complex", str(bad))
        assert code == 2
        assert "CAT(0)" in err


class TestAlgebra:
    def test_nf(self, capsys):
        code, out, _ = run(
            capsys, "algebra", "nf", "--dihedral", "3", "--word", "abaB"
        )
        assert code == 0
        assert "normal_form:" in out

    def test_equal_true(self, capsys):
        code, out, _ = run(
            capsys,
            "algebra",
            "equal",
            "--dihedral",
            "3",
            "--word",
            "aba",
            "--word2",
            "bab",
        )
        assert code == 0
        assert "equal: true" in out

    def test_equal_false_exits_1(self, capsys):
        code, out, _ = run(
            capsys,
            "algebra",
            "equal",
            "--type",
            "4",
            "--word",
            "ac",
            "--word2",
            "ca",
        )
        assert code == 1
        assert "equal: false" in out

    def test_phi(self, capsys):
        code, out, _ = run(capsys, "algebra", "phi", "--dihedral", "5")
        assert code == 0
        assert "exp_r_zero: true" in out
        assert "phi_delta_is_b_n: true" in out

    def test_phi_even_exits_2(self, capsys):
        code, _, err = run(capsys, "algebra", "phi", "--dihedral", "4")
        assert code == 2

    def test_commutator(self, capsys):
        code, out, _ = run(
            capsys, "algebra", "commutator", "--dihedral", "3", "--word", "sS"
        )
        assert code == 0
        assert "in_commutator_subgroup: true" in out
        code, out, _ = run(
            capsys, "algebra", "commutator", "--dihedral", "3", "--word", "s"
        )
        assert code == 1

    def test_center(self, capsys):
        code, out, _ = run(capsys, "algebra", "center", "--type", "4")
        assert code == 0
        assert "center_generator: Delta" in out
        assert "central: true" in out

    def test_bounded_checks(self, capsys):
        code, out, _ = run(
            capsys,
            "algebra",
            "bounded-checks",
            "--type",
            "3",
            "--L",
            "4",
            "--K",
            "1",
            "--M",
            "1",
        )
        assert code == 0
        assert "label: bounded verification" in out
        assert "ii_verified: true" in out
        assert "iii_verified: true" in out

    def test_missing_context_exits_2(self, capsys):
        code, _, err = run(capsys, "algebra", "nf", "--word", "ab")
        assert code == 2
        assert "error:" in err

    def test_bad_word_exits_2(self, capsys):
        code, _, err = run(
            capsys, "algebra", "nf", "--dihedral", "3", "--word", "a!b"
        )
        assert code == 2


class TestDeterminism:
    def test_repeated_runs_byte_identical(self, tmp_path):
        graph = tmp_path / "g.txt"
        graph.write_text(PATH_46)
        outputs = set()
        for _ in range(2):
            r = subprocess.run(
                [
                    sys.executable,
                    "-m",
                    "cubartin.cli",
                    "--format",
                    "doc",
                    "analyze",
                    "--graph",
                    str(graph),
                ],
                capture_output=True,
            )
            assert r.returncode == 0
            outputs.add(r.stdout)
        assert len(outputs) == 1

    def test_build_output_file_deterministic(self, tmp_path):
        graph = tmp_path / "g.txt"
        graph.write_text(PATH_46)
        contents = set()
        for name in ("c1", "c2"):
            out = tmp_path / name
            r = subprocess.run(
                [
                    sys.executable,
                    "-m",
                    "cubartin.cli",
                    "build",
                    "--graph",
                    str(graph),
                    "-o",
                    str(out),
                ],
                capture_output=True,
            )
            assert r.returncode == 0
            contents.add(out.read_bytes())
        assert len(contents) == 1

    def test_console_script_installed(self):
        r = subprocess.run(
            ["cubartin", "analyze", "--graph", "/does/not/exist"],
            capture_output=True,
        )
        assert r.returncode == 2
