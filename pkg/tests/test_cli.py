import io
import json

import pytest

from hardytree.cli import main
from hardytree.scenarios import REGISTRY

ONES = '{"kind": "radial", "q": 2, "values": [1], "extend": "last"}'


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_means_csv():
    code, out, err = run("means", "--input", ONES, "--depth", "4", "--format", "csv")
    assert code == 0 and not err
    assert out.splitlines() == ["n,mean,method"] + [f"{n},1.0,closed-form" for n in range(5)]


def test_means_proper_inclusion_table():
    doc = '{"kind": "path", "q": 2, "values": [0, 1], "extend": "last", "growth": 0.5}'
    for r in (0.5, 1.0):
        code, out, _ = run("means", "--input", doc, "--p", str(r), "--depth", "8")
        rows = json.loads(out)
        for row in rows[1:]:
            size = 3 * 2 ** (row["n"] - 1)
            assert row["mean"] == pytest.approx(size ** (0.5 - 1 / r), rel=1e-10)


def test_means_from_file(tmp_path):
    path = tmp_path / "f.json"
    path.write_text(ONES)
    code, out, _ = run("means", "--input", str(path), "--depth", "1")
    assert code == 0 and len(json.loads(out)) == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["means", "--input", "{bad"],
        ["means"],
        ["means", "--input", ONES, "--p", "-1"],
        ["means", "--input", ONES, "--depth", "-3"],
        ["means", "--input", ONES, "--q", "3"],
        ["frobnicate"],
    ],
)
def test_usage_errors_exit_2(argv):
    code, out, err = run(*argv)
    assert code == 2 and not out and err


def test_level_too_large_exit_3():
    levels = [[1.0]] + [[0.0] * (3 * 2 ** (n - 1)) for n in range(1, 6)]
    doc = json.dumps({"kind": "dense", "q": 2, "levels": levels})
    code, out, err = run("means", "--input", doc, "--cap", "10")
    assert code == 3 and err.startswith("LevelTooLarge")


def test_norm_reports():
    doc = '{"kind": "finite", "q": 3, "entries": [[2, 5, 3.4641016151377544, 0]]}'
    code, out, _ = run("norm", "--input", doc, "--p", "2")
    report = json.loads(out)
    assert report["value"] == pytest.approx(1.0, rel=1e-15) and report["exact"] is True
    code, out, _ = run("norm", "--input", ONES)
    assert json.loads(out)["value"] == 1.0
    code, out, _ = run("norm", "--input", ONES, "--format", "csv")
    assert out.splitlines()[0] == "attained_level,depth_examined,exact,value"


def test_op_analyze():
    doc = '{"kind": "finite", "q": 3, "entries": [[2, 5, 1, 0]]}'
    code, out, _ = run("op-analyze", "--input", doc, "--depth", "4")
    report = json.loads(out)
    assert code == 0
    assert report["operator_norm"]["value"] == 1.0 and report["compact"] == "yes" and report["isometry"] == "no"
    assert sorted(map(tuple, report["spectrum"]["values"])) == [(0.0, 0.0), (1.0, 0.0)]
    unimodular = '{"kind": "radial", "q": 2, "values": [[1, 0], [0, 1], [-1, 0]], "extend": "last"}'
    assert json.loads(run("op-analyze", "--input", unimodular)[1])["isometry"] == "yes"
    divergent = '{"kind": "radial", "q": 2, "values": [0, 1], "extend": "linear", "tail": "divergent"}'
    assert json.loads(run("op-analyze", "--input", divergent)[1])["bounded"] == "no"


def test_inconclusive_is_success():
    # a dense symbol with unimodular values only on stored levels: isometry is decided no, still exit 0
    doc = '{"kind": "dense", "q": 1, "levels": [[1], [1, 1]]}'
    code, out, _ = run("op-analyze", "--input", doc, "--depth", "3")
    assert code == 0 and json.loads(out)["isometry"] == "no"


def test_scenario_commands():
    code, out, _ = run("scenario", "list")
    assert code == 0 and [s["name"] for s in json.loads(out)] == sorted(REGISTRY)
    code, out, _ = run("scenario", "run", "sharp-growth")
    assert code == 0 and json.loads(out)["passed"] is True
    code, out, _ = run("scenario", "run", "separated-family", "--format", "csv")
    assert code == 0 and "120/120 pairs at distance exactly 1" in out
    code, out, err = run("scenario", "run", "no-such")
    assert code == 4 and "no-such" in err and not out


def test_failed_paper_check_exits_1(monkeypatch):
    from hardytree import scenarios

    def broken(params):
        return [scenarios.holds("always false", "PAPER", False)]

    monkeypatch.setitem(REGISTRY, "broken", scenarios.Scenario("broken", "fails", {}, broken))
    code, out, err = run("scenario", "run", "broken")
    assert code == 1 and "always false" in err
