"""End-to-end CLI behaviour: JSON reports, exit codes, determinism."""

import json

import pytest

from sgdsc import cli, finite


@pytest.fixture()
def table_file(tmp_path):
    def write(name, s):
        path = tmp_path / name
        path.write_text(finite.to_json(s))
        return str(path)
    return write


def run(capsys, argv):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_check_left_zero(capsys, table_file):
    path = table_file("lz.json", finite.left_zero(2))
    code, out, _ = run(capsys, ["check", path, "--brute", "--witness"])
    assert code == 0
    report = json.loads(out)
    checks = {c["name"]: c for c in report["checks"]}
    assert checks["dsc"]["pass"] is False
    assert checks["dsc"]["witness"]["pairs"] == [[0, 0], [0, 1], [1, 1]]
    assert checks["dsc_brute"]["pass"] is False
    assert checks["group"]["pass"] is False


def test_check_c2(capsys, table_file):
    path = table_file("c2.json", finite.cyclic_group(2))
    code, out, _ = run(capsys, ["check", path, "--brute", "--strict"])
    assert code == 0
    checks = {c["name"]: c for c in json.loads(out)["checks"]}
    assert checks["dsc"]["pass"] is True and checks["dsc_brute"]["pass"] is True


def test_check_strict_fails_on_non_group(capsys, table_file):
    path = table_file("lz.json", finite.left_zero(2))
    code, _, _ = run(capsys, ["check", path, "--strict"])
    assert code == 1


def test_check_malformed_json(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    code, _, err = run(capsys, ["check", str(path)])
    assert code == 2
    assert "error" in json.loads(err)


def test_check_failed_checks_carry_witnesses(capsys, table_file):
    path = table_file("ms.json", finite.min_semilattice())
    _, out, _ = run(capsys, ["check", path, "--brute"])
    for check in json.loads(out)["checks"]:
        if not check["pass"]:
            assert "witness" in check


def test_check_deterministic(capsys, table_file):
    path = table_file("lz.json", finite.left_zero(2))
    _, out1, _ = run(capsys, ["check", path, "--brute", "--witness"])
    _, out2, _ = run(capsys, ["check", path, "--brute", "--witness"])
    assert out1 == out2


def test_witness_subcommand(capsys, table_file):
    path = table_file("ms.json", finite.min_semilattice())
    code, out, _ = run(capsys, ["witness", path])
    assert code == 0
    doc = json.loads(out)["witness"]
    assert doc["strategy"] == "ideal" and doc["failing_pair"] == [0, 1]


def test_witness_on_group_fails(capsys, table_file):
    path = table_file("c3.json", finite.cyclic_group(3))
    code, out, _ = run(capsys, ["witness", path])
    assert code == 1
    assert "error" in json.loads(out)


def test_enumerate_oracle_small(capsys):
    code, out, _ = run(capsys, ["enumerate", "2", "--oracle"])
    assert code == 0
    doc = json.loads(out)
    # two labeled C2 tables: the identity can sit at either index
    assert doc["oracle"] == "pass" and doc["tables"] == 8 and doc["groups"] == 2


def test_enumerate_count(capsys):
    code, out, _ = run(capsys, ["enumerate", "3", "--count"])
    assert code == 0
    doc = json.loads(out)
    assert doc["labeled"] == 113 and doc["isomorphism_classes"] == 24


def test_enumerate_cap(capsys):
    code, _, err = run(capsys, ["enumerate", "5"])
    assert code == 2
    assert "error" in json.loads(err)


def test_byleen_eval(capsys):
    code, out, _ = run(capsys, ["byleen", "eval", "a(0,s0) b(0,s0)"])
    assert code == 0
    assert json.loads(out) == {"normal_form": "1"}  # untouched cell defaults to 1
    code, out, _ = run(capsys, ["byleen", "eval", "s0"])
    assert json.loads(out) == {"normal_form": "1"}
    code, out, _ = run(capsys, ["byleen", "eval", "b(0,s1) s1 s1 a(2,s0)"])
    assert json.loads(out) == {"normal_form": "b(0,s1) a(2,s0)"}


def test_byleen_mul(capsys):
    code, out, _ = run(capsys, ["byleen", "mul", "b(0,s0)", "a(1,s1)"])
    assert code == 0
    assert json.loads(out) == {"normal_form": "b(0,s0) a(1,s1)"}


def test_byleen_span(capsys):
    code, out, _ = run(capsys, ["byleen", "span", "a(0,s0)", "b(0,s0)",
                                "s1", "a(2,s1)"])
    assert code == 0
    doc = json.loads(out)
    assert doc["verified"] is True and doc["factors"]
    assert doc["case"] == "both-differ"


def test_byleen_inverse(capsys):
    code, out, _ = run(capsys, ["byleen", "inverse", "b(0,s0) s1 a(0,s0)"])
    assert code == 0
    assert json.loads(out)["verified"] is True


def test_byleen_parse_error(capsys):
    code, _, err = run(capsys, ["byleen", "eval", "q(0)"])
    assert code == 2
    assert "error" in json.loads(err)
    code, _, _ = run(capsys, ["byleen", "eval", "s7"])  # base element out of range
    assert code == 2


def test_byleen_trivial_base(capsys):
    code, out, _ = run(capsys, ["byleen", "eval", "s0 s0", "--base", "trivial"])
    assert code == 0
    assert json.loads(out) == {"normal_form": "1"}


def test_byleen_deterministic(capsys):
    argv = ["byleen", "span", "a(0,s0)", "b(0,s0)", "s1", "a(2,s1)"]
    _, out1, _ = run(capsys, argv)
    _, out2, _ = run(capsys, argv)
    assert out1 == out2


@pytest.mark.parametrize("name", ["bicyclic", "bruck-reilly", "baer-levi", "z"])
def test_models_pass(capsys, name):
    code, out, _ = run(capsys, ["models", name])
    assert code == 0
    doc = json.loads(out)
    assert doc["model"] == name
    assert all(c["pass"] for c in doc["checks"])


def test_models_baer_levi_fields(capsys):
    _, out, _ = run(capsys, ["models", "baer-levi"])
    checks = {c["name"]: c for c in json.loads(out)["checks"]}
    assert checks["fg_member"]["witness"]["intersection"] == [4]
    assert checks["fh_non_member"]["witness"]["intersection"] == []
    assert checks["membership_pattern"]["pass"] is True


def test_timing_only_with_flag(capsys, table_file):
    path = table_file("c2.json", finite.cyclic_group(2))
    _, out, _ = run(capsys, ["check", path])
    assert "timing" not in json.loads(out)
    _, out, _ = run(capsys, ["check", path, "--timing"])
    assert "timing" in json.loads(out)
