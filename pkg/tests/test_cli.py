import json

import pytest

from conftest import FIGURES, fixture_path
from factorcodes.cli import build_parser, main, run, strip_timing


def call(*argv):
    return run([str(a) for a in argv])


def test_depth_fig1(capsys):
    code, report = call("depth", fixture_path("fig1"), "--word", "abcd")
    assert code == 0
    assert report["results"]["depth"] == 2 and report["results"]["t_depth"] == 1
    assert "2" in capsys.readouterr().out


def test_json_output_parses(capsys):
    code, _ = call("--json", "closing", fixture_path("fig2"))
    data = json.loads(capsys.readouterr().out)
    assert code == 0 and data["exit_code"] == 0
    assert data["results"]["right"]["delay"] == 0
    assert data["results"]["left"]["closing"] is False


def test_flags_after_subcommand():
    code, report = call("ctc", fixture_path("fig5"), "--json", "--budget", 100000)
    assert code == 0 and report["results"]["constant"] is True


@pytest.mark.parametrize("argv", [
    ["depth", "missing.sg", "--word", "a"],
    ["nosuchcommand"],
    ["depth"],
])
def test_input_errors_exit_one(argv):
    assert call(*argv)[0] == 1


def test_broken_fixture_exit_one(capsys):
    assert call("validate", fixture_path("broken"))[0] == 1
    assert "line 3" in capsys.readouterr().err


def test_bad_word_exit_one():
    assert call("depth", fixture_path("fig1"), "--word", "az")[0] == 1


def test_budget_exhaustion_exit_two():
    code, report = call("class-degree", fixture_path("fig5"), "--budget", 1, "--max-len", 3)
    assert code in (0, 2)
    code, report = call("continuing", fixture_path("fig5"), "--budget", 1)
    assert code == 2 and report["status"] == "inconclusive"


def test_check_all_exit_codes():
    for name in FIGURES:
        code, report = call("check-all", fixture_path(name))
        assert code == 0, name
        assert report["results"]["violations"] == []


@pytest.mark.parametrize("name", FIGURES + ["identity", "parallel"])
def test_check_all_deterministic(name, capsys):
    outs = []
    for _ in range(2):
        code, report = call("--json", "check-all", fixture_path(name))
        outs.append(json.dumps(strip_timing(report), sort_keys=True))
    capsys.readouterr()
    assert outs[0] == outs[1]


def test_random_and_export(tmp_path):
    out = tmp_path / "r.sg"
    assert call("random", "--vertices", 3, "--edges", 6, "--labels", 2, "--seed", 5, "--out", out)[0] == 0
    assert call("validate", out)[0] == 0
    dot = tmp_path / "r.dot"
    assert call("export-dot", out, "--out", dot)[0] == 0
    assert dot.read_text().startswith("digraph")
    assert call("random", "--vertices", 3, "--edges", 2, "--labels", 2)[0] == 1


def test_other_subcommands(tmp_path):
    assert call("bridges", fixture_path("fig5"), "--from", "t3 t4 t3", "--position", 2)[0] == 0
    assert call("subset", fixture_path("fig1"), "--dot", tmp_path / "s.dot")[0] == 0
    assert call("image-sft", fixture_path("fig3"))[1]["results"]["status"] == "not_sft"
    assert call("shell", fixture_path("fig2"), "--side", "left")[0] == 0


def test_main_returns_code():
    assert main(["validate", str(fixture_path("fig1"))]) == 0
    assert build_parser().prog == "factorcodes"
