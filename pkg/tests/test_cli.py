import json
import subprocess
import sys

import pytest

from conftest import GOLDENS, call, validate

CHAIN = "{0,s2}|{1,inf,s1};{inf,s1}|{0,1,s2}"

# golden file name -> argv
GOLDEN_CASES = {
    "divisor_a_eps_10.json": ["divisor-a", "--eps", "10"],
    "divisor_b_n2.json": ["divisor-b", "--n", "2"],
    "divisors_n2.json": ["divisors", "--n", "2"],
    "check_zeta_2.json": ["check", "--zeta", "2"],
    "check_eps_0.json": ["check", "--eps", "0"],
    "stasheff_n2_codim2.json": ["stasheff", "--n", "2", "--codim", "2"],
    "stasheff_n4_fvector.json": ["stasheff", "--n", "4", "--f-vector"],
    "tree_chain.json": ["tree", "--partitions", CHAIN],
    "tree_chain_planar.json": ["tree", "--partitions", CHAIN, "--order", "0,inf,s1,1,s2"],
    "tree_chain.dot": ["tree", "--partitions", CHAIN, "--dot"],
    "mzv_zeta_2_series.json": ["mzv", "--zeta", "2", "--method", "series", "-K", "1000"],
    "iterint_2_2.json": ["iterint", "--a", "2,2", "-Q", "20"],
    "report_zeta_2.json": ["report", "--zeta", "2", "-K", "100000", "-Q", "40"],
}


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_golden_bytes(name):
    argv = GOLDEN_CASES[name]
    code, out, _ = call(*argv)
    assert out == (GOLDENS / name).read_text()
    assert call(*argv)[1] == out
    if name.endswith(".json"):
        validate(argv[0], out)


def test_check_pentagon():
    code, out, _ = call("check", "--zeta", "2")
    doc = validate("check", out)
    assert code == 0
    assert doc["disjointness"]["disjoint"] is True
    assert doc["A_components"] == 5 and doc["B_components"] == 5
    assert doc["certified"] is True


def test_check_outside_hypotheses():
    code, out, err = call("check", "--eps", "0")
    doc = validate("check", out)
    assert code == 1
    assert doc["disjointness"]["shared"] == ["{0,s1}|{1,inf}"]
    assert "certification failed" in err


def test_mzv_both():
    code, out, _ = call("mzv", "--zeta", "2", "--method", "both")
    doc = validate("mzv", out)
    assert code == 0 and doc["agree"]
    assert abs(doc["series"]["value"] - doc["integral"]["value"]) <= 1e-6


def test_iterint_divergent():
    code, out, err = call("iterint", "--a", "0,1")
    assert code == 1 and out == ""
    assert "divergent: a_1 = 0" in err


def test_iterint_complex():
    code, out, _ = call("iterint", "--a", "1+i,0", "-Q", "20")
    doc = validate("iterint", out)
    assert code == 0
    assert doc["anchors"][0] == {"re": 1.0, "im": 1.0}
    assert set(doc["result"]["value"]) == {"re", "im"}


def test_divisor_a_with_zeta():
    code, out, _ = call("divisor-a", "--zeta", "2")
    assert code == 0
    assert json.loads(out)["components"] == json.loads(call("divisor-a", "--eps", "10")[1])["components"]
    # non-convergent compositions still have an epsilon word and a divisor
    code, out, _ = call("divisor-a", "--zeta", "2,1")
    doc = validate("divisor-a", out)
    assert code == 0 and doc["convergent"] is False and doc["epsilon"] == [1, 0, 1]


def test_tree_not_a_stratum():
    code, out, err = call("tree", "--partitions", "{0,s2}|{1,inf,s1};{s1,s2}|{0,1,inf}")
    doc = validate("tree", out)
    assert code == 1 and doc["delta"] == 2
    assert "not a stratum" in err


def test_divisor_b_order_is_canonicalised():
    a = call("divisor-b", "--n", "2", "--order", "s1,s2,1,inf,0")
    b = call("divisor-b", "--n", "2")
    assert a == b


@pytest.mark.parametrize("argv", [
    ["mzv", "--zeta", "2,1"],
    ["mzv", "--zeta", "x"],
    ["divisor-b", "--n", "2", "--order", "0,1,inf,s1"],
    ["stasheff", "--n", "2", "--codim", "5"],
    ["mzv", "--zeta", "2", "-K", "0"],
    ["divisors"],
    ["frobnicate"],
    ["iterint", "--a", "zz"],
    ["tree", "--partitions", ";"],
])
def test_usage_errors(argv):
    code, out, _ = call(*argv)
    assert code == 2 and out == ""


def test_enumeration_cap(monkeypatch):
    monkeypatch.setenv("MZV_MAX_N", "6")
    assert call("divisors", "--n", "3")[0] == 0
    assert call("divisors", "--n", "4")[0] == 2
    assert call("stasheff", "--n", "4")[0] == 2


@pytest.mark.parametrize("argv", [
    ["divisors", "--n", "3"],
    ["divisor-a", "--eps", "1100"],
    ["divisor-b", "--n", "3", "--order", "0,s2,1,s1,inf,s3"],
    ["check", "--zeta", "1,3"],
    ["stasheff", "--n", "3"],
    ["stasheff", "--n", "3", "--codim", "1", "--f-vector"],
    ["tree", "--partitions", "{0,s1}|{1,inf,s2,s3}", "--order", "0,s1,s2,s3,1,inf"],
    ["mzv", "--zeta", "1,2", "-K", "10000", "-Q", "20"],
    ["iterint", "--a=-1,0", "-Q", "20"],
])
def test_schemas(argv):
    code, out, _ = call(*argv)
    assert code == 0
    validate(argv[0], out)


def test_report_schema():
    code, out, _ = call("report", "--zeta", "3", "-K", "100000")
    doc = validate("report", out)
    assert code == 0 and doc["periods_agree"]
    assert doc["divisor_A"]["count"] == 11 and doc["divisor_B"]["count"] == 9


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "mzvmoduli.cli", "divisors", "--n", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["count"] == 3


def regenerate():
    for name, argv in GOLDEN_CASES.items():
        (GOLDENS / name).write_text(call(*argv)[1])


if __name__ == "__main__":
    regenerate()
