import io
import json

import pytest

from plabic.cli import run
from plabic.fixtures import builtin
from plabic.graph import format_graph


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_golden_examples():
    assert call("fvector", "--fixture", "g24") == (0, "7,17,18,8\n", "")
    assert call("type", "--fixture", "triv-path") == (0, "(1,2)\n", "")
    assert call("volume", "--fixture", "g36") == (0, "781/181440 (normalized 1562)\n", "")


def test_input_file(tmp_path):
    p = tmp_path / "g.graph"
    p.write_text(format_graph(builtin("g24").graph))
    assert call("hstar", "--input", str(p))[1] == "1,2,1\n"


def test_records_are_json_lines():
    code, out, _ = call("matchings", "--fixture", "g24", "--format", "records")
    assert code == 0
    rows = [json.loads(line) for line in out.splitlines()]
    assert len(rows) == 7
    assert list(rows[0]) == ["edges", "sources"]


def test_evaluate_rationals():
    code, out, _ = call("evaluate", "--fixture", "triv-path", "--orientation", "1",
                        "e1=1/2", "e2=3", "e3=2/3", "--format", "records")
    assert code == 0
    rows = [json.loads(line) for line in out.splitlines()]
    assert [r["value"] for r in rows] == ["1/1", "9/1"]


@pytest.mark.parametrize(
    "argv",
    [
        ["bogus"],
        [],
        ["type"],
        ["type", "--fixture", "nope"],
        ["type", "--input", "/does/not/exist"],
        ["type", "--fixture", "g24", "--input", "x"],
        ["flows", "--fixture", "g24", "--orientation", "1,5"],
        ["evaluate", "--fixture", "g24"],
        ["evaluate", "--fixture", "g24", "--all-ones", "e1=2"],
        ["evaluate", "--fixture", "g24", "e1=-1", "e2=1", "e3=1", "e4=1", "e5=1", "e6=1", "e7=1", "e8=1"],
        ["ehrhart", "--fixture", "g24", "--dilation", "-1"],
        ["fvector", "--fixture", "g24", "--format", "xml"],
    ],
)
def test_input_errors_exit_1(argv):
    code, out, err = call(*argv)
    assert code == 1
    assert err.startswith("error:")


def test_malformed_graph_file(tmp_path):
    p = tmp_path / "bad.graph"
    p.write_text("n 1\nvertex a black\nvertex b black\nedge e0 b1 a\nedge e a b\n")
    code, _, err = call("validate", "--input", str(p))
    assert code == 1 and "same-color edge" in err


def test_every_subcommand_runs():
    for cmd in ("validate", "type", "matchings", "orientations", "flows", "pluecker", "positroid",
                "polytope", "faces", "facets", "fvector", "ehrhart", "hstar", "volume", "matroid", "project"):
        for fmt in ("human", "records"):
            code, out, err = call(cmd, "--fixture", "g24", "--format", fmt)
            assert code == 0, (cmd, err)
            assert out
    assert call("evaluate", "--fixture", "g24", "--all-ones")[0] == 0
    assert call("ehrhart", "--fixture", "g24", "--dilation", "2")[1] == "L(2) = 26\n"
    assert "g2n(n)" in call("fixture")[1]
    assert call("fixture", "--fixture", "g24")[1].startswith("# g24\nn 4\n")


def test_deterministic_output():
    a = call("faces", "--fixture", "g25", "--format", "records")
    b = call("faces", "--fixture", "g25", "--format", "records")
    assert a == b


def test_report_single_fixture():
    code, out, _ = call("report", "--fixture", "g24")
    assert code == 0
    assert out.rstrip().endswith("all checks passed")


def test_report_mismatch_exits_nonzero(monkeypatch):
    from plabic import fixtures

    original = fixtures.builtin("g24")
    bad = dict(original.expected)
    bad["f_vector"] = {"value": [7, 17, 18, 9], "source": "test"}
    monkeypatch.setattr(fixtures, "builtin", lambda name: fixtures.Fixture("g24", original.graph, bad))
    code, out, _ = call("report", "--fixture", "g24")
    assert code == 2
    assert "FAIL g24 f_vector" in out


def test_internal_error_exit_2(monkeypatch):
    from plabic import cli
    from plabic.errors import InvariantError

    def boom(g, args, out):
        raise InvariantError("broken")

    monkeypatch.setitem(cli.COMMANDS, "type", (boom, ""))
    code, _, err = call("type", "--fixture", "g24")
    assert code == 2 and "broken" in err
