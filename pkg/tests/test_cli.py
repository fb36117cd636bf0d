import io
import json

import pytest

from zardec.cli import (
    bundled_model_path,
    dump_model_file,
    load_model_file,
    model_from_dict,
    model_to_dict,
    parse_divisor,
    resolve_model,
    run,
)
from zardec.errors import InvalidModel, ParseError
from zardec.lattice import DivisorClass
from zardec.surface_models import blowup_model, k3_theorem_a_model, minus_one_curves


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_bundled_k3_file():
    model = load_model_file(str(bundled_model_path("k3a")))
    assert model == k3_theorem_a_model()
    assert resolve_model("k3a") == k3_theorem_a_model()


def test_blowup_file(tmp_path):
    p = tmp_path / "b.json"
    p.write_text(json.dumps({"kind": "blowup", "points": 2, "prox": [[2, 1]]}))
    model = load_model_file(p)
    assert [tuple(c.cls) for c in model.curves] == [(0, 1, -1), (0, 0, 1)]


def test_square_zero_curve_is_invalid(tmp_path):
    p = tmp_path / "z.json"
    p.write_text(json.dumps({"kind": "lattice", "rank": 2, "gram": [[0, 1], [1, 0]],
                             "curves": [{"name": "X", "class": [1, 0]}]}))
    with pytest.raises(InvalidModel, match=r"curves\[0\]"):
        load_model_file(p)


@pytest.mark.parametrize(
    "text, where",
    [
        ('{"kind": "blowup", "points": 2,', "line 1"),
        ('{"kind": "blowup"}', "missing field 'points'"),
        ('{"kind": "torus"}', "unknown kind"),
        ('{"kind": "blowup", "points": 2, "prox": [[2]]}', "prox[0]"),
        ('{"kind": "lattice", "rank": 1, "gram": [[1.5]]}', "gram[0][0]"),
    ],
)
def test_parse_errors_are_located(tmp_path, text, where):
    p = tmp_path / "m.json"
    p.write_text(text)
    with pytest.raises((ParseError, InvalidModel)) as info:
        load_model_file(p)
    assert where in str(info.value)


@pytest.mark.parametrize(
    "model",
    [
        k3_theorem_a_model(),
        blowup_model(2, {(2, 1)}),
        blowup_model(6, (), [("C", (2, -1, -1, -1, -1, -1, -1))]),
        blowup_model(4, (), minus_one_curves(4)),
    ],
)
def test_model_round_trip(tmp_path, model):
    p = tmp_path / "m.json"
    dump_model_file(model, p)
    again = load_model_file(p)
    assert again == model
    assert [c.name for c in again.curves] == [c.name for c in model.curves]
    assert model_from_dict(model_to_dict(model)) == model


def test_explicit_lattice_round_trip(tmp_path):
    doc = {"kind": "lattice", "rank": 2, "gram": [[-2, 4], [4, -2]], "basis": ["C1", "C2"],
           "curves": [{"name": "C1", "class": [1, 0]}, {"name": "C2", "class": [0, 1]}]}
    model = model_from_dict(doc)
    assert model.kind == "lattice"
    assert model_to_dict(model) == doc


def test_parse_divisor():
    assert parse_divisor("3,-3/2,-3/2") == DivisorClass(("3", "-3/2", "-3/2"))
    with pytest.raises(ParseError):
        parse_divisor("1,x")
    with pytest.raises(ParseError):
        parse_divisor("1,2", rank=3)


def test_decompose_text():
    code, out, _ = call("decompose", "--model", "k3a", "--divisor", "5,1")
    assert code == 0
    assert "P = 2·C1 + 1·C2" in out
    assert "N = 3·C1" in out
    assert "denominator 1" in out


def test_decompose_json():
    code, out, _ = call("decompose", "--model", "blowup:s=2,prox=2<1", "--divisor", "3,-1,-2", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["P"] == ["3", "-3/2", "-3/2"]
    assert doc["N"] == ["0", "1/2", "-1/2"]
    assert doc["denominator"] == 2
    assert doc["N_squared"] == "-1/2"
    assert doc["support"] == [{"curve": "E1-E2", "coefficient": "1/2"}]


def test_decompose_failure_is_exit_1():
    code, out, _ = call("decompose", "--model", "k3a", "--divisor", "-1,-1")
    assert code == 1
    assert "not pseudoeffective" in out


def test_verify_theorem_a():
    code, out, _ = call("verify", "theorem-a", "--box", "50")
    assert code == 0
    assert "max denominator 1" in out


def test_verify_theorem_b_case2():
    code, out, _ = call("verify", "theorem-b", "--case", "2", "--points", "4")
    assert code == 0
    assert "denominator 2" in out and "N^2 = -1/2" in out


def test_verify_theorem_b_case1():
    code, out, _ = call("verify", "theorem-b", "--case", "1", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["witness"]["a"] == "1/2"
    assert doc["decomposition"]["denominator"] == 2
    code, out, _ = call("verify", "theorem-b", "--case", "1", "--curve", "1,-1,-1,-1", "--points", "5")
    assert code == 0
    code, _, err = call("verify", "theorem-b", "--case", "1", "--curve", "1,-1,-1")
    assert code == 2 and "k >= 2" in err


def test_verify_proposition():
    code, out, _ = call("verify", "proposition", "--points", "3", "--box", "6", "--format", "json")
    assert code == 0 and json.loads(out)["max_denominator"] == 1
    code, out, _ = call("verify", "proposition", "--points", "5", "--box", "6", "--all-minus-one")
    assert code == 0 and "16 declared" in out


def test_scan_commands():
    code, out, _ = call("scan", "--model", "k3a", "--box", "10", "--format", "json")
    assert code == 0 and json.loads(out)["histogram"] == {"1": 121}
    code, out, _ = call("scan", "--model", "blowup:s=2,prox=2<1", "--family", "multiples:3,-1,-2:10", "--format", "json")
    assert json.loads(out)["histogram"] == {"1": 5, "2": 5}
    code, out, _ = call("scan", "--model", "blowup:s=6", "--family",
                        "affine:4,-1,-1,-1,-1,-1,-1:2,-1,-1,-1,-1,-1,-1:3")
    assert code == 0
    code, _, err = call("scan", "--model", "k3a")
    assert code == 2


def test_bound_and_info():
    code, out, _ = call("bound", "--d", "1", "--delta", "12", "--format", "json")
    assert code == 0 and json.loads(out)["bound"] == 12
    code, out, _ = call("info", "--model", "k3a", "--format", "json")
    doc = json.loads(out)
    assert doc["discriminant"] == "-12" and doc["rank"] == 2
    assert [c["negative_definite"] for c in doc["curves"]] == [True, True]
    assert doc["all_curves_negative_definite"] is False
    code, out, _ = call("info", "--model", "blowup:s=3")
    assert "discriminant -1" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["decompose", "--model", "k3a"],
        ["decompose", "--model", "k3a", "--divisor", "1,1", "--bogus"],
        ["decompose", "--model", "/nonexistent.json", "--divisor", "1,1"],
        ["decompose", "--model", "blowup:s=2,prox=1<2", "--divisor", "1,1,1"],
        ["bound", "--d", "0", "--delta", "1"],
        ["verify", "theorem-b", "--case", "3"],
    ],
)
def test_input_errors_exit_2(argv):
    code, _, err = call(*argv)
    assert code == 2
    assert err.startswith("error:")


def test_json_output_is_stable():
    a = call("verify", "theorem-b", "--case", "2", "--points", "5", "--format", "json")[1]
    b = call("verify", "theorem-b", "--case", "2", "--points", "5", "--format", "json")[1]
    assert a == b
