"""Command line behavior: formats, exit codes, determinism, figure output.

Everything runs in process through cli.main so stdout capture and exit
codes stay cheap to assert on.
"""

import json

import pytest

from neumann.cli import FAILED, INCOMPLETE, OK, USAGE, main


@pytest.fixture()
def spec11(tmp_path):
    p = tmp_path / "w.spec"
    p.write_text("block 1\nblock 1\n")
    return str(p)


@pytest.fixture()
def spec6(tmp_path):
    p = tmp_path / "six.spec"
    p.write_text("".join(f"block {c}\n" for c in (1, 2, 3, 4, 5, 6)))
    return str(p)


def run(capsys, args):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate_ok(capsys, spec11):
    code, out, _ = run(capsys, ["validate", "--spec", spec11])
    lines = out.splitlines()
    assert code == OK
    assert lines[0] == "window -2 1"
    assert lines[-1] == "ok"


def test_validate_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, ["validate", "--spec", str(tmp_path / "nope.spec")])
    assert code == USAGE
    assert err


def test_validate_bad_spec(capsys, tmp_path):
    p = tmp_path / "bad.spec"
    p.write_text("block 9\n")
    code, _, err = run(capsys, ["validate", "--spec", str(p)])
    assert code == USAGE
    assert "9" in err


def test_generators_format(capsys, spec11):
    code, out, _ = run(capsys, ["generators", "--spec", spec11])
    assert code == OK
    rows = [line.split() for line in out.splitlines()]
    assert [r[0] for r in rows] == ["-2", "-1", "0", "1"]
    # n iota delta a b c d
    assert rows[2] == ["0", "0", "1", "0", "-1", "1", "0"]


def test_neumann_check_ok(capsys, spec11):
    code, out, _ = run(capsys, ["neumann-check", "--spec", spec11, "--height", "1"])
    assert code == OK
    assert "verdict ok" in out
    assert "targets 4" in out


def test_neumann_check_out_of_window(capsys, spec11):
    code, out, _ = run(capsys, ["neumann-check", "--spec", spec11, "--height", "2"])
    assert code == INCOMPLETE
    assert "failure 2/1 out-of-window 2" in out
    assert "verdict fail" in out


def test_neumann_check_renders(capsys, spec11, tmp_path):
    png = tmp_path / "report.png"
    code, _, _ = run(
        capsys,
        ["neumann-check", "--spec", spec11, "--height", "1", "--render", str(png)],
    )
    assert code == OK
    assert png.stat().st_size > 1000


def test_coset_check_deterministic(capsys, spec6):
    args = ["coset-check", "--spec", spec6, "--height", "3", "--count", "60", "--seed", "5"]
    code1, out1, _ = run(capsys, args)
    code2, out2, _ = run(capsys, args)
    assert code1 == code2 == OK
    assert out1 == out2
    assert out1.splitlines()[-1] == "verdict ok"


def test_coset_check_lines(capsys, spec6):
    code, out, _ = run(
        capsys,
        ["coset-check", "--spec", spec6, "--height", "2", "--count", "30", "--seed", "1"],
    )
    assert code == OK
    lines = out.splitlines()
    assert any(line.startswith("g ") and " s " in line and " t " in line for line in lines)
    assert lines[-2].startswith("checked ")


def test_structure_output(capsys, spec6):
    code, out, _ = run(capsys, ["structure", "--spec", spec6])
    assert code == OK
    assert "r2 2" in out and "r3 2" in out
    assert "rinf_plus 4" in out and "rinf_minus 3" in out
    assert "constraint2 ok" in out and "constraint3 ok" in out


def test_structure_renders(capsys, spec6, tmp_path):
    png = tmp_path / "structure.png"
    code, _, _ = run(capsys, ["structure", "--spec", spec6, "--render", str(png)])
    assert code == OK
    assert png.exists()


def test_independence(capsys, tmp_path):
    p = tmp_path / "four.spec"
    p.write_text("block 4\n")
    code, out, _ = run(capsys, ["independence", "--spec", str(p), "--max-len", "5"])
    assert code == OK
    assert "block 4 base -1" in out
    assert "generator 0 infinite- expected infinite- ok" in out
    assert "independence max-len 5 ok" in out
    assert out.splitlines()[-1] == "verdict ok"


def test_graph_dot(capsys):
    code, out, _ = run(capsys, ["graph", "--height", "1", "--format", "dot"])
    assert code == OK
    assert out.startswith("graph distant {")
    assert out.rstrip().endswith("}")


def test_graph_adjacency(capsys):
    code, out, _ = run(capsys, ["graph", "--height", "2", "--format", "adj"])
    assert code == OK
    data = json.loads(out)
    assert data["1/0"] == ["-2/1", "-1/1", "0/1", "1/1", "2/1"]


def test_graph_renders(capsys, tmp_path):
    png = tmp_path / "g.png"
    code, _, _ = run(capsys, ["graph", "--height", "2", "--format", "dot", "--render", str(png)])
    assert code == OK
    assert png.exists()


def test_iso_check(capsys, spec6):
    code, out, _ = run(capsys, ["iso-check", "--spec", spec6, "--height", "3"])
    assert code == OK
    assert out.strip() == "cayley-vs-distant ok"


def test_iso_check_small_window_incomplete(capsys, spec11):
    code, out, _ = run(capsys, ["iso-check", "--spec", spec11, "--height", "2"])
    assert code == INCOMPLETE
    assert out.startswith("incomplete out-of-window")


def test_synthesize_round_trip(capsys, tmp_path):
    code, out, _ = run(
        capsys,
        ["synthesize", "--r2", "1", "--r3", "0", "--rinfp", "0", "--rinfm", "1",
         "--blocks", "3"],
    )
    assert code == OK
    lines = out.splitlines()
    assert lines[0].startswith("# targets 1 0 0 1")
    cases = [line.split()[1] for line in lines[1:]]
    assert cases == ["4", "1", "1"]
    # the emitted lines are themselves a valid spec file
    p = tmp_path / "round.spec"
    p.write_text(out)
    code2, out2, _ = run(capsys, ["validate", "--spec", str(p)])
    assert code2 == OK
    assert out2.splitlines()[-1] == "ok"


def test_synthesize_unrealizable(capsys):
    code, out, _ = run(
        capsys,
        ["synthesize", "--r2", "0", "--r3", "0", "--rinfp", "1", "--rinfm", "1",
         "--blocks", "4"],
    )
    assert code == FAILED
    assert out.startswith("# unrealizable")


def test_synthesize_too_few(capsys):
    code, out, _ = run(
        capsys,
        ["synthesize", "--r2", "3", "--r3", "0", "--rinfp", "0", "--rinfm", "0",
         "--blocks", "2"],
    )
    assert code == USAGE
    assert out.startswith("# too few blocks")


def test_no_arguments_is_usage(capsys):
    code, _, err = run(capsys, [])
    assert code == USAGE


def test_help_exits_clean(capsys):
    code, out, _ = run(capsys, ["--help"])
    assert code == OK
    assert "usage" in out.lower()


def test_unknown_command(capsys):
    code, _, err = run(capsys, ["frobnicate"])
    assert code == USAGE
