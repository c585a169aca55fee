import json
import os
from pathlib import Path

import pytest

import neurosynt

DATA = Path(os.environ.get("NEUROSYNT_TEST_DATA", Path(__file__).resolve().parents[2] / "tests" / "data"))


def test_formula_printing():
    assert neurosynt.format_formula("G (r_0 -> F g_0)") == "(G ((r_0) -> (F (g_0))))"
    assert neurosynt.format_formula("G (r_0 -> F g_0)", output="prefix") == "G -> r_0 F g_0"
    assert neurosynt.ast_size("a U !b") == 4
    with pytest.raises(ValueError):
        neurosynt.format_formula("a &")


def test_lasso_semantics():
    assert neurosynt.eval_lasso("G F a", [[]], [["a"], []])
    assert not neurosynt.eval_lasso("F G a", [], [["a"], []])


def test_aiger_round_trip():
    text = (DATA / "arbiter.aag").read_text()
    assert neurosynt.normalize_aag(text) == text
    stats = neurosynt.aag_stats(text)
    assert stats["num_latches"] == 1
    assert stats["num_ands"] == 0
    with pytest.raises(ValueError):
        neurosynt.normalize_aag("aag 1 1 0 0 0\n")


def test_synthesize_and_check():
    spec = (DATA / "arbiter.json").read_text()
    r = neurosynt.synthesize(spec, timeout=20)
    assert r["status"] == "realizable"
    assert neurosynt.model_check(spec, r["circuit"], True)["status"] == "satisfied"

    unreal = (DATA / "unrealizable.json").read_text()
    u = neurosynt.synthesize(unreal, timeout=20)
    assert u["status"] == "unrealizable"
    assert u["realizable"] is False
    assert neurosynt.model_check(unreal, u["circuit"], False)["status"] == "satisfied"


def test_portfolio():
    spec = (DATA / "arbiter.json").read_text()
    r = neurosynt.run_portfolio(spec, str(DATA / "bounded_synth.yaml"), timeout=30)
    assert r["status"] == "realizable"
    assert r["chosen_tool"] == "bounded-synth"
    assert len(r["all_results"]) == 1


def test_generate_dataset():
    lines = neurosynt.generate_dataset(str(DATA / "corpus"), 2, seed=2, max_inputs=2, max_outputs=2,
                                       oracle_timeout=1.0).splitlines()
    assert len(lines) == 2
    for line in lines:
        sample = json.loads(line)
        spec = json.dumps(sample["spec"])
        assert neurosynt.model_check(spec, sample["circuit"], sample["realizable"])["status"] == "satisfied"
