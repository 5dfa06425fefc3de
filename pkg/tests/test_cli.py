import json
from pathlib import Path

import pytest

from twistk import cli
from twistk.groups import AbelianGroup, GradedGroup
from twistk.twist import s3_presentation, serialize_presentation

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def fixture(name):
    return str(FIXTURES / name)


# -- twist ---------------------------------------------------------------------------------

def test_twist_sphere(capsys):
    code, out, _ = run(capsys, "twist", fixture("s3_n5.json"))
    assert code == 0
    assert out == "parity 0: Z/5, parity 1: 0\n"


def test_twist_eilenberg_maclane(capsys):
    code, out, _ = run(capsys, "twist", fixture("kz3.json"))
    assert (code, out) == (0, "parity 0: 0, parity 1: 0\n")


def test_twist_free(capsys):
    code, out, _ = run(capsys, "twist", fixture("free_rank2.json"))
    assert (code, out) == (0, "parity 0: Z^2, parity 1: 0\n")


def test_twist_json_is_deterministic(capsys):
    outputs = {run(capsys, "twist", fixture("extended.json"), "--json")[1] for _ in range(3)}
    assert len(outputs) == 1
    doc = json.loads(outputs.pop())
    assert GradedGroup.from_json(doc) == GradedGroup(AbelianGroup(1, (3,)), AbelianGroup(1))


@pytest.mark.parametrize("text", ['{"truncation": 8', '{"truncation": 1, "generators": '
                                  '[{"name": "x", "parity": 0}], "relations": [[{"gen": "x", "coeff": "b2"}]]}'])
def test_twist_bad_document(capsys, tmp_path, text):
    path = tmp_path / "bad.json"
    path.write_text(text)
    code, out, err = run(capsys, "twist", path)
    assert code == 2 and out == "" and err.startswith("tk: error:")


def test_twist_missing_file(capsys, tmp_path):
    assert run(capsys, "twist", tmp_path / "nope.json")[0] == 2


def test_twist_consistency_failure(capsys, monkeypatch):
    monkeypatch.setattr(cli, "twisted_k", lambda p: GradedGroup(AbelianGroup(7)))
    code, _, err = run(capsys, "twist", fixture("s3_n5.json"))
    assert code == 3 and "consistency" in err


# -- kk --------------------------------------------------------------------------------------

def test_kk_member_yes(capsys):
    assert run(capsys, "kk", "member", "1/2*v^2 - 1/2*u*v")[:2] == (0, "yes\n")


def test_kk_member_no_with_witness(capsys):
    code, out, _ = run(capsys, "kk", "member", "1/2*v^2")
    assert code == 1
    assert out.startswith("no\nwitness: k=")


def test_kk_member_json(capsys):
    code, out, _ = run(capsys, "kk", "member", "1/2*v^2", "--json")
    doc = json.loads(out)
    assert code == 1 and doc["member"] is False
    assert doc["witness"]["degree"] == 2 and doc["witness"]["value"] == "1/2"


def test_kk_eps(capsys):
    assert run(capsys, "kk", "eps", "v")[:2] == (0, "t\n")


def test_kk_conj(capsys):
    assert run(capsys, "kk", "conj", "u")[:2] == (0, "v\n")


def test_kk_decompose(capsys):
    assert run(capsys, "kk", "decompose", "v^2")[:2] == (0, "(u) * p_1 + (2) * p_2\n")


def test_kk_decompose_non_member(capsys):
    code, out, _ = run(capsys, "kk", "decompose", "1/2*v^2")
    assert code == 1 and out.startswith("not a member")


def test_kk_parse_error(capsys):
    code, _, err = run(capsys, "kk", "member", "u+")
    assert code == 2 and "byte 3" in err


# -- fgl and cp ----------------------------------------------------------------------------------

def test_fgl_nseries(capsys):
    assert run(capsys, "fgl", "nseries", 3, "--order", 4)[:2] == (0, "3s + 3s^2 + s^3\n")
    assert run(capsys, "fgl", "nseries", 1, "--order", 4)[:2] == (0, "s\n")


def test_fgl_identity(capsys):
    code, out, _ = run(capsys, "fgl", "identity", "--m", 2, "--order", 6)
    assert code == 0 and out.rstrip().endswith("coefficients)") and "pass" in out


def test_fgl_identity_json(capsys):
    code, out, _ = run(capsys, "fgl", "identity", "--order", 5, "--json")
    assert code == 0 and json.loads(out)["passed"] is True


@pytest.mark.parametrize("argv", [
    ["fgl", "nseries", "-1", "--order", "3"],
    ["fgl", "nseries", "2", "--order", "0"],
    ["fgl", "identity", "--m", "0", "--order", "3"],
    ["cp", "mult", "-1", "2"],
    ["cp", "mult", "1", "2", "--trunc", "0"],
])
def test_bad_arguments(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_argparse_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(["fgl", "nseries", "x", "--order", "3"])
    assert info.value.code == 2


def test_cp_mult(capsys):
    assert run(capsys, "cp", "mult", 2, 3)[:2] == (0, "10 b5 + 12 b4 + 3 b3\n")
    assert run(capsys, "cp", "mult", 2, 3, "--trunc", 4)[:2] == (0, "12 b4 + 3 b3\n")


def test_cp_mult_json(capsys):
    doc = json.loads(run(capsys, "cp", "mult", 1, 1, "--json")[1])
    assert doc == {"i": 1, "j": 1, "product": "2 b2 + b1", "truncation": None}


# -- tor ---------------------------------------------------------------------------------------------

def test_tor_sphere(capsys):
    code, out, _ = run(capsys, "tor", fixture("s3_n5.json"), "--max-s", 0)
    doc = json.loads(out)
    assert code == 0
    assert doc["tor"][0]["parity0"] == {"free_rank": 0, "torsion": [5]}
    assert doc["metadata"]["caveat"] == "higher Tor computed over truncated ring"


def test_tor_free_module(capsys):
    doc = json.loads(run(capsys, "tor", fixture("free_rank2.json"), "--max-s", 2)[1])
    assert [row["s"] for row in doc["tor"]] == [0, 1, 2]
    assert all(GradedGroup.from_json(row).is_zero() for row in doc["tor"][1:])


def test_tor_extended_relative(capsys):
    code, out, _ = run(capsys, "tor", fixture("extended.json"), "--max-s", 2, "--mode", "relative")
    doc = json.loads(out)
    assert code == 0 and doc["metadata"]["mode"] == "relative"
    assert all(GradedGroup.from_json(row).is_zero() for row in doc["tor"][1:])


def test_tor_truncation_flag(capsys, tmp_path):
    path = tmp_path / "s3.json"
    path.write_text(serialize_presentation(s3_presentation(4)))
    doc = json.loads(run(capsys, "tor", path, "--max-s", 1, "--trunc", 3)[1])
    assert doc["metadata"]["truncation"] == 3
    code, _, err = run(capsys, "tor", fixture("kz3.json"), "--max-s", 1, "--trunc", 2)
    assert code == 2 and "truncation" in err


def test_tor_is_deterministic(capsys):
    outs = {run(capsys, "tor", fixture("extended.json"), "--max-s", 1)[1] for _ in range(2)}
    assert len(outs) == 1


# -- selftest --------------------------------------------------------------------------------------------

def test_selftest_passes(capsys):
    code, out, _ = run(capsys, "selftest")
    assert code == 0 and out.rstrip().endswith("selftest: pass")


def test_selftest_detects_fault(capsys):
    code, out, _ = run(capsys, "selftest", "--inject-fault", "1,1,2")
    assert code == 1
    assert "FAIL  structure constants: b1*b1 disagrees" in out


def test_selftest_bad_fault_argument(capsys):
    assert run(capsys, "selftest", "--inject-fault", "a,b")[0] == 2
