import json

import pytest

from softbitop.cli import CHECKS, TARGETS, main
from softbitop.instance_io import bundled_fixtures

SMALL = ["discrete_indiscrete.json", "strict_union.json", "trivial_group.json"]


def run(capsys, *argv):
    code = main([*argv, "--format", "json", "--no-timing"])
    out = capsys.readouterr().out
    return code, json.loads(out)


@pytest.mark.parametrize("fixture", SMALL)
@pytest.mark.parametrize("check", [c for c in CHECKS if c != "hom"])
def test_every_check_runs_on_small_fixtures(capsys, fixture, check):
    code, rep = run(capsys, "check", fixture, check)
    assert code in (0, 1), rep
    assert rep["verdict"] == ("holds" if code == 0 else "fails")
    assert set(rep) == {"command", "verdict", "summary", "witnesses", "slices", "caps", "details"}


@pytest.mark.parametrize("fixture", bundled_fixtures())
def test_summary_on_every_fixture(capsys, fixture):
    code, rep = run(capsys, "check", fixture)
    # the strict-union fixture carries a non-group topology on purpose
    assert code == (1 if fixture == "strict_union.json" else 0), rep


def test_d8_summary_text(capsys):
    assert main(["check", "examples/d8_example3.json", "--no-timing"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("command: check examples/d8_example3.json\nverdict: holds")
    assert "elapsed" not in out


def test_output_is_deterministic(capsys):
    first = run(capsys, "check", "d8_example3.json", "separation", "--topologies", "tau1,tau1")
    second = run(capsys, "check", "d8_example3.json", "separation", "--topologies", "tau1,tau1")
    assert first == second
    code, rep = first
    assert code == 1
    assert rep["witnesses"][0]["unseparated_pair"] == ["(e, e)", "(e, r)"]


def test_connected_witness(capsys):
    code, rep = run(capsys, "check", "d8_example3.json", "connected")
    assert code == 1
    assert len(rep["witnesses"][0]["clopen"]) == 8


def test_hom_identity(capsys):
    code, rep = run(capsys, "check", "d8_example3.json", "hom", "--map", "identity")
    assert code == 0
    assert rep["details"]["isomorphism"] is True


def test_oracle_cap_is_an_error(capsys):
    code, rep = run(capsys, "check", "d8_example3.json", "sbtg-oracle")
    assert code == 2
    assert rep["verdict"] == "error" and "cap" in rep["error"]
    code, rep = run(capsys, "check", "d8_example3.json", "sbtg-oracle", "--cap-se", "64")
    assert code == 0


@pytest.mark.parametrize("fixture,target,expected", [
    ("strict_union.json", "strict-union", 0),
    ("d8_example3.json", "non-product-open", 0),
    ("d8_example3.json", "noncanonical-gap", 0),
    ("discrete_indiscrete.json", "prop3-converse", 0),
    ("trivial_group.json", "strict-union", 1),
])
def test_witness_targets(capsys, fixture, target, expected):
    code, rep = run(capsys, "witness", fixture, target, "--level", "0")
    assert code == expected, rep
    assert bool(rep["witnesses"]) == (expected == 0)


def test_all_targets_listed():
    assert set(TARGETS) == {"strict-union", "non-product-open", "prop3-converse", "noncanonical-gap"}


def test_enumerate_se(capsys):
    assert main(["enumerate-se", "strict_union.json", "--format", "json"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["soft_elements"] == ["(0, 0)", "(0, 1)", "(1, 0)", "(1, 1)"]
    assert main(["enumerate-se", "d8_example3.json", "--cap-se", "10"]) == 2


def test_bad_inputs_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert main(["check", str(bad)]) == 2
    assert "invalid JSON" in capsys.readouterr().out
    assert main(["check", "nowhere.json"]) == 2
    assert main(["check", "d8_example3.json", "hom", "--map", "nope"]) == 2
    assert main(["check", "d8_example3.json", "--topologies", "a,b,c"]) == 2


def test_theorem_violation_prints_incident(capsys, monkeypatch):
    from softbitop import bitop
    from softbitop.errors import TheoremViolation

    def boom(*a, **k):
        raise TheoremViolation("forced", instance={"universe": ["e"]}, details={"x": 1})

    monkeypatch.setattr(bitop, "is_sbtg_oracle", boom)
    assert main(["check", "trivial_group.json", "sbtg-oracle"]) == 2
    rep = json.loads(capsys.readouterr().out)
    assert rep["verdict"] == "error" and rep["instance"] == {"universe": ["e"]}


def test_plot_dir(capsys, tmp_path):
    code, rep = run(capsys, "check", "strict_union.json", "axioms", "--plot-dir", str(tmp_path))
    assert code == 0
    figures = rep["details"]["figures"]
    assert any(f.endswith("tau_induced.png") for f in figures)
    for f in figures:
        with open(f, "rb") as fh:
            assert fh.read(8) == b"\x89PNG\r\n\x1a\n"
