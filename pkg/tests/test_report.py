import json

from softbitop.core_sets import SEIndex, SESubset, SoftSet, Universe
from softbitop.report import Report, element_label, plain, se_mask_labels

U = Universe(("a", "b"))
F = SoftSet(U, ("p", "q"), (0b11, 0b11))


def test_plain_renders_labels():
    assert plain(F) == {"p": ["a", "b"], "q": ["a", "b"]}
    assert plain(SESubset(F, frozenset({0, 3}))) == ["(a, a)", "(b, b)"]
    assert plain({"k": (1, [True])}) == {"k": [1, [True]]}


def test_labels():
    idx = SEIndex(F)
    assert element_label(idx, 2) == "(b, a)"
    assert se_mask_labels(idx, 0b0110) == ["(a, b)", "(b, a)"]


def test_report_json_and_text():
    r = Report("check x", False, "fails somehow", witnesses=[{"pair": ["(a, a)", "(a, b)"]}],
               details={"n": 1}, elapsed=0.25)
    d = json.loads(r.to_json())
    assert d["verdict"] == "fails" and d["elapsed_seconds"] == 0.25
    assert "elapsed_seconds" not in r.as_dict(timing=False)
    text = r.to_text()
    assert text.splitlines()[1] == "verdict: fails (fails somehow)"
    assert "witnesses:" in text and "elapsed: 0.250s" in text
