import io
import json
from pathlib import Path

import pytest

from dglakit.cli import run_command
from dglakit.errors import ParseError, ValidationError
from dglakit.examples import EXAMPLE_ACTIONS, EXAMPLES, obstruction_toy, z2_on_obstruction_toy
from dglakit.io import group_to_dict, loads_dgla, parse_dgla, serialize_dgla

FIXTURES = Path(__file__).parent / "fixtures"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_command([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


def test_round_trip_examples():
    for name, make in EXAMPLES.items():
        g = make()
        act = EXAMPLE_ACTIONS[name]() if name in EXAMPLE_ACTIONS else None
        h, act2 = loads_dgla(serialize_dgla(g, act))
        assert h == g, name
        assert serialize_dgla(h, act2) == serialize_dgla(g, act)


def test_parse_fixture_with_group():
    g, act = parse_dgla(FIXTURES / "obstruction-toy.json")
    assert g == obstruction_toy()
    assert group_to_dict(act, g) == group_to_dict(z2_on_obstruction_toy(), g)


def test_parse_without_group():
    g, act = loads_dgla(serialize_dgla(obstruction_toy()))
    assert act is None


def doc():
    return json.loads(serialize_dgla(obstruction_toy()))


def test_unknown_name_in_bracket():
    d = doc()
    d["bracket"][0]["terms"][0]["basis"] = "q"
    with pytest.raises(ParseError, match=r"bracket\[0\]\.terms\[0\]\.basis: unknown basis name 'q'"):
        loads_dgla(json.dumps(d))


def test_bad_coefficient_and_duplicates():
    d = doc()
    d["bracket"][0]["terms"][0]["coeff"] = "2/0"
    with pytest.raises(ParseError, match="coeff"):
        loads_dgla(json.dumps(d))
    d = doc()
    d["basis"][1]["name"] = "x"
    with pytest.raises(ParseError, match="duplicate"):
        loads_dgla(json.dumps(d))
    with pytest.raises(ParseError, match="line 1"):
        loads_dgla("{")


def test_validation_error_names_axiom():
    d = doc()
    d["bracket"].append({"left": "x", "right": "y", "terms": [{"basis": "x", "coeff": "1"}]})
    with pytest.raises(ValidationError, match="DegreeViolation"):
        loads_dgla(json.dumps(d))


def test_bad_group_is_validation_error():
    d = json.loads(serialize_dgla(obstruction_toy(), z2_on_obstruction_toy()))
    d["group"]["generators"][0]["matrices"][1]["rows"] = [["-1"]]
    with pytest.raises(ValidationError, match="BracketViolation"):
        loads_dgla(json.dumps(d))


def test_cli_kuranishi_obstruction_toy():
    code, out, _ = run("kuranishi", FIXTURES / "obstruction-toy.json", "--order", 3)
    assert code == 0
    assert "base: k[ξ1]/(ξ1^2)" in out
    assert "obstruction: ξ1^2·y" in out


def test_cli_prorep_split_toy():
    code, out, _ = run("prorep", FIXTURES / "split-toy.json")
    assert code == 1
    assert "H^0 nonzero: {w}" in out


def test_cli_validate_fixtures():
    for f in sorted(FIXTURES.glob("*.json")):
        if "inclusion" in f.name:
            continue
        assert run("validate", f)[0] == 0, f.name


def test_cli_exit_codes(tmp_path):
    assert run("validate", tmp_path / "missing.json")[0] == 2
    bad = tmp_path / "bad.json"
    d = doc()
    d["bracket"].append({"left": "y", "right": "x", "terms": [{"basis": "x", "coeff": "1"}]})
    bad.write_text(json.dumps(d))
    code, out, err = run("validate", bad)
    assert code == 1 and "valid: false" in out
    code, _, err = run("cohomology", bad)
    assert code == 1 and err.startswith("error: ValidationError")
    assert run("no-such-command")[0] == 2
    assert run("example", "nope")[0] == 2


def test_cli_json_is_single_document():
    code, out, _ = run("--json", "kuranishi", FIXTURES / "permutation-toy.json", "--order", 3)
    data = json.loads(out)
    assert data["command"] == "kuranishi"
    assert data["base_presentation"]["generators"] == ["ξ1", "ξ2"]
    assert data["base_presentation"]["relations"] == [[
        {"exponents": [0, 2], "coeff": "1"}, {"exponents": [1, 1], "coeff": "1"},
        {"exponents": [2, 0], "coeff": "1"}]]


def test_cli_mc_and_lift():
    f = FIXTURES / "obstruction-toy.json"
    code, out, _ = run("mc-check", f, "--algebra", "power:1:2", "--element", '{"x": {"t": 1}}')
    assert code == 1 and "residual: t^2·y" in out
    code, out, _ = run("mc-check", f, "--algebra", "power:1:1", "--element", '{"x": {"t": 1}}')
    assert code == 0
    code, out, _ = run("lift", f, "--extension", "power:1:2", "--element", '{"x": {"t": 1}}')
    assert code == 1 and "obstruction: t^2·y" in out
    code, _, err = run("mc-check", f, "--algebra", "power:1:2", "--element", '{"q": {"t": 1}}')
    assert code == 2 and "unknown basis name 'q'" in err


def test_cli_gauge():
    code, out, _ = run("gauge", FIXTURES / "split-toy.json", "--algebra", "power:1:2",
                       "--element", '{"x2": {"t": 1}}', "--parameter", '{"z": {"t": 1}}')
    assert code == 0
    assert out == "result: -t·x1 + t·x2\nmc: true\n"


def test_cli_cone_free_ce_tangent():
    code, out, _ = run("cone", FIXTURES / "obstruction-toy.json")
    assert code == 0 and json.loads(out)["format_version"] == "1.0"
    code, out, _ = run("free", "--generators", "v:1", "--max-length", 3)
    assert [b["name"] for b in json.loads(out)["basis"]] == ["v", "[v,v]"]
    code, out, _ = run("free", FIXTURES / "obstruction-toy.json", "--window", "0:2", "--max-length", 3)
    assert "Y1 (1): d = v2 - 1/2·[v1,v1], θ = 0" in out
    code, out, _ = run("ce", FIXTURES / "obstruction-toy.json", "--word-length", 2)
    assert code == 0 and "untrusted" in out
    code, out, _ = run("tangent", FIXTURES / "split-toy.json")
    assert out == "dim: 1\nbasis: {x2}\n"


def test_cli_etale():
    code, out, _ = run("etale", FIXTURES / "split-toy-k.json", FIXTURES / "split-toy.json",
                       FIXTURES / "split-toy-inclusion.json")
    assert (code, out) == (0, "etale: true\n")


def test_cli_equivariant():
    code, out, _ = run("semiuniversal", FIXTURES / "split-toy.json", "--equivariant")
    assert code == 0 and "equivariant inclusion: true" in out
    code, out, _ = run("kuranishi", FIXTURES / "permutation-toy.json", "--equivariant", "--order", 4)
    assert code == 0 and "equivariant s1: true" in out
    code, _, err = run("kuranishi", FIXTURES / "adjoint-sl2.json", "--equivariant")
    assert code == 2 and "group" in err


def test_cli_example_matches_fixture():
    code, out, _ = run("example", "permutation-toy")
    assert out == (FIXTURES / "permutation-toy.json").read_text(encoding="utf-8")
