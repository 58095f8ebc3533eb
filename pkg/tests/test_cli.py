"""Golden-file tests for every CLI command, exit codes, and JSON schemas.

Set GOLDEN_REGEN=1 in the environment to rewrite the golden outputs in
tests/golden/ from the current implementation.
"""

import json
import os
from pathlib import Path

import pytest

from g2heights.arith import PadicApprox
from g2heights.cli import main
from g2heights.jacobian import Genus2Curve
from g2heights.kummer import KummerPoint

GOLDEN = Path(__file__).parent / "golden"

CURVE_B = '{"f": ["2", "1", "2", "-3", "1"]}'
CURVE_A = '{"f": ["1", "-1", "2", "2", "0"]}'
PT_B = '{"points": [["1", "2"]]}'
PT_B2 = '{"points": [["2", "6"]]}'
PT_A = '{"points": [["-1", "1"], ["0", "1"]]}'

CASES = {
    "certify": ["certify", "--curve", CURVE_B, "--point", PT_B, "-p", "3"],
    "hp": ["hp", "--curve", CURVE_B, "--point", PT_B, "-p", "3", "--prec", "6"],
    "hp_naive": [
        "hp-naive", "--curve", CURVE_B, "--point",
        '{"u": ["-2", "1", "1"], "v": ["-8/3", "2/3"]}', "-p", "3", "--prec", "6",
    ],
    "pairing": [
        "pairing", "--curve", CURVE_B, "--point", PT_B, "--point", PT_B2,
        "-p", "3", "--prec", "5",
    ],
    "regulator": [
        "regulator", "--curve", CURVE_B, "--point", PT_B, "-p", "3", "--prec", "5",
    ],
    "nt": ["nt", "--curve", CURVE_A, "--point", PT_A, "--tol", "1e-6"],
    "local": ["local", "--curve", CURVE_A, "--point", PT_A],
    "kummer_map": ["kummer", "map", "--curve", CURVE_B, "--point", PT_B],
    "kummer_double": ["kummer", "double", "--curve", CURVE_B, "--point", PT_B],
    "kummer_mul": ["kummer", "mul", "--m", "3", "--curve", CURVE_B, "--point", PT_B],
    "compact": ["certify", "--curve", CURVE_B, "--point", PT_B, "-p", "3", "--json"],
}


def invoke(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(capsys, name):
    code, out = invoke(capsys, CASES[name])
    assert code == 0
    path = GOLDEN / f"{name}.json"
    if os.environ.get("GOLDEN_REGEN"):
        path.write_text(out)
    assert out == path.read_text()


def test_deterministic(capsys):
    runs = {invoke(capsys, CASES[n]) for n in ("hp", "nt") for _ in range(2)}
    assert len(runs) == 2  # each command yields one byte-identical document


def test_schema_roundtrip(capsys):
    _, out = invoke(capsys, CASES["hp"])
    doc = json.loads(out)
    v = PadicApprox.from_json(doc["value"])
    assert v.p == 3 and doc["certified_prec"] == 6 and doc["n_max"] >= 0

    _, out = invoke(capsys, CASES["kummer_map"])
    k = KummerPoint.from_json(json.loads(out))
    assert k.coords == (0, 1, 1, 1) and k.modulus is None

    curve = Genus2Curve.from_json(json.loads(CURVE_B))
    assert json.dumps(curve.to_json()) == json.dumps(json.loads(CURVE_B))

    _, out = invoke(capsys, CASES["nt"])
    doc = json.loads(out)
    assert set(doc) == {"value", "error_bound", "places"}
    assert doc["error_bound"] <= 1e-6


def test_points_file(capsys, tmp_path):
    pf = tmp_path / "pts.json"
    pf.write_text(json.dumps([json.loads(PT_B), json.loads(PT_B2)]))
    code, out = invoke(
        capsys,
        ["pairing", "--curve", CURVE_B, "--points-file", str(pf), "-p", "3", "--prec", "5"],
    )
    assert code == 0
    assert out == (GOLDEN / "pairing.json").read_text()
    code, _ = invoke(
        capsys,
        ["certify", "--curve", f"@{tmp_path / 'c.json'}", "--point", PT_B, "-p", "3"],
    )
    assert code == 2  # curve file does not exist


def test_usage_errors(capsys):
    for argv in (
        [],
        ["certify", "--curve", CURVE_B, "--point", PT_B],  # missing -p
        ["kummer", "triple", "--curve", CURVE_B, "--point", PT_B],
        ["hp", "--curve", CURVE_B, "--point", PT_B, "-p", "three"],
    ):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 64
        capsys.readouterr()


def test_domain_errors(capsys):
    bad = [
        ["certify", "--curve", '{"f": ["0","0","0","0","0"]}', "--point", PT_B, "-p", "3"],
        ["certify", "--curve", CURVE_B, "--point", PT_B, "-p", "2"],
        ["certify", "--curve", CURVE_B, "-p", "3"],  # no point given
        ["hp-naive", "--curve", CURVE_B, "--point", PT_B, "-p", "3"],  # outside J_3
        ["nt", "--curve", CURVE_B, "--point", '{"points": [["1", "7"]]}'],
        ["certify", "--curve", "not json", "--point", PT_B, "-p", "3"],
    ]
    for argv in bad:
        assert main(argv) == 2
        err = capsys.readouterr().err
        assert json.loads(err)["error"]


def test_resource_errors(capsys):
    code = main(
        ["hp", "--curve", CURVE_B, "--point", PT_B, "-p", "3", "--prec", "6", "--mmax", "2"]
    )
    assert code == 3
    assert "error" in json.loads(capsys.readouterr().err)
