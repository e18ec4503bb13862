import io
import json
import os

import pytest

from fullgroup.cli import main

ROOT = os.path.join(os.path.dirname(__file__), "..")


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run("--format", "json", *argv)
    return code, json.loads(text)


def test_index_phi():
    code, rep = run_json("index", "phi")
    assert code == 0 and rep["values"]["index"] == 1
    assert rep["schema_version"] == "1.0"


def test_sgn_sigma_U():
    code, rep = run_json("sgn", "sigmaU([0.])")
    assert code == 0
    assert rep["values"]["sgn"] == [0, 1]
    assert rep["values"]["basis"] == ["[1_X]", "[1_U]"]


def test_measure_renders_exact_quadratic():
    code, rep = run_json("measure", "[011.]")
    assert rep["values"]["measure"] == "3 - 2*√2"


def test_words_and_class():
    code, rep = run_json("words", "4")
    assert rep["values"]["count"] == 5
    code, rep = run_json("class", "[0.]")
    assert rep["values"]["class"] == [0, 1] and rep["values"]["2-divisible"] is False


def test_order_and_decompose():
    code, rep = run_json("order", "gammaU([0110.])")
    assert rep["values"]["order"] == 3
    code, rep = run_json("order", "phi")
    assert rep["values"]["order"].startswith("infinite")
    code, rep = run_json("decompose", "sigmaU([0.]) sigmaU([011.])")
    assert code == 0 and all(c["verdict"] == "pass" for c in rep["checks"])


def test_examples_1_exit_zero():
    code, rep = run_json("examples", "--which", "1")
    assert code == 0
    verdicts = {c["verdict"] for c in rep["checks"]}
    assert verdicts == {"pass", "erratum-confirmed"}
    assert set(rep["checks"][0]) == {"name", "anchor", "verdict", "witness", "detail"}


def test_examples_2_n2_fails():
    code, rep = run_json("examples", "--which", "2", "--alpha", "sqrt(2)/5")
    assert code == 1
    failed = [c for c in rep["checks"] if c["verdict"] == "fail"]
    assert len(failed) == 1 and failed[0]["witness"]


def test_examples_2_samples_are_reproducible():
    a = run("--seed", "7", "examples", "--which", "2", "--samples", "5")
    b = run("--seed", "7", "examples", "--which", "2", "--samples", "5")
    assert a == b and a[0] == 0


def test_alternating():
    code, _ = run("examples", "--which", "alternating")
    assert code == 0


def test_bratteli_commands():
    code, rep = run_json("bratteli", "--example", "1")
    assert rep["values"]["simple"] is True and rep["values"]["mod2_dimension"] == 0
    code, rep = run_json("bratteli", "--example", "identity")
    assert rep["values"]["mod2_group"] == "Z2 + Z2"


def test_verify_identity_file():
    code, text = run("verify", os.path.join(ROOT, "configs", "sturmian_identities.txt"))
    assert code == 0 and "FAIL" not in text


def test_config_flag():
    code, rep = run_json("--config", os.path.join(ROOT, "configs", "substitution.yaml"), "measure", "[0.0]")
    assert rep["values"]["measure"] == "1/8"


def test_errors_have_codes():
    code, rep = run_json("index", "sigmaU([0.2])")
    assert code == 2 and rep["error"]["code"] == "parse_error" and rep["error"]["position"] == 10
    code, rep = run_json("sgn", "phi")
    assert code == 2 and rep["error"]["code"] == "nonzero_index"
    code, text = run("sgn", "gammaU([1.])")
    assert code == 2 and "disjointness_violated" in text
    code, rep = run_json("--config", "/nonexistent.yaml", "index", "phi")
    assert rep["error"]["code"] == "config_error"


def test_usage_error():
    with pytest.raises(SystemExit):
        main(["frobnicate"])
