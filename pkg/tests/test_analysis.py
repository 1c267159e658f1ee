import json

from choiceaxioms.analysis import analyze, render_text
from choiceaxioms.core import complete
from choiceaxioms.generators import enumerate_all


def test_example1(example1):
    doc = analyze(example1).to_dict()
    v = doc["verdicts"]
    assert v["tau"]["status"] == "satisfied"
    assert v["rho"]["status"] == "violated"
    assert v["rho"]["witnesses"][0] == {"x": "d", "y": "a", "B": ["b", "k"], "direction": "backward"}
    assert doc["preference"]["strict_is_preference"] is True
    assert doc["rationalization"] == {"rationalized": False, "menu": ["a", "b", "k", "d"], "expected": ["a"], "actual": ["a", "d"]}
    assert doc["dataset"]["total"] is False
    assert doc["consistent"]


def test_example2(example2):
    doc = analyze(example2).to_dict()
    assert doc["verdicts"]["tau"]["witnesses"][0] == {"x": "a", "z": "b", "y": "k"}
    assert doc["verdicts"]["rho"]["status"] == "satisfied"
    assert doc["rationalization"]["rationalized"] is True
    assert doc["preference"]["strict_is_preference"] is False
    assert doc["preference"]["negative_transitivity_witness"] == ["a", "k", "b"]
    assert doc["reference_points"] == [{"reference": "a", "x": "k", "y": "b", "clauses": [2]}]


def test_completion_changes_total_checks(example1):
    raw = analyze(example1).to_dict()["verdicts"]
    filled = analyze(example1, completion="full-menu").to_dict()
    assert raw["v-axiom"]["status"] == "undetermined"
    assert filled["verdicts"]["v-axiom"]["status"] == "violated"
    assert filled["dataset"]["completion"] == "full-menu"
    # tau, rho and warp still see only what was observed
    assert filled["verdicts"]["rho"]["violation_count"] == 12


def test_sparse_pairs(fx):
    doc = analyze(fx["set-reference"].dataset).to_dict()
    assert doc["preference"]["pairs_observed"] is False
    assert doc["preference"]["strict_is_preference"] is None
    assert doc["reference_points"] == []


def test_consistency_exhaustive():
    for c in enumerate_all(3):
        assert analyze(c).consistent


def test_json_and_text(example2):
    report = analyze(example2)
    assert json.loads(report.to_json()) == report.to_dict()
    text = report.to_text()
    assert "tau      violated (1 instance; first: x=a, z=b, y=k)" in text
    assert "a helps k over b" in text
    assert render_text(report.to_dict()) == text


def test_total_equivalent_views(example2):
    assert analyze(example2).to_dict()["verdicts"] == analyze(complete(example2, "fail")).to_dict()["verdicts"]


def test_single_observation():
    from choiceaxioms.core import ingest_dataset

    ds = ingest_dataset('{"alternatives": ["a", "b", "k"], "observations": [{"menu": ["a", "b"], "choice": ["a"]}]}')
    statuses = {k: v["status"] for k, v in analyze(ds).to_dict()["verdicts"].items()}
    assert set(statuses.values()) <= {"satisfied", "undetermined"}
    assert statuses["v-axiom"] == "undetermined"


def test_consistency_sampled():
    from choiceaxioms.generators import sample

    for n in (4, 5):
        for c in sample(n, 300, seed=n):
            assert analyze(c).consistent


def test_json_stable(example1):
    text = analyze(example1).to_json()
    assert json.dumps(json.loads(text), indent=2, sort_keys=True) == text
