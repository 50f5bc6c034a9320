import json
import os
from pathlib import Path

import jsonschema
import pytest

import metzler_sign as ms

ROOT = Path(__file__).resolve().parents[2]
DATA = Path(os.environ.get("MSIGN_DATA_DIR", ROOT / "data"))
SCHEMA = json.loads(Path(os.environ.get("MSIGN_SCHEMA", ROOT / "schema" / "report.schema.json")).read_text())

COMMANDS = {
    "block": ["block"],
    "hull": ["hull"],
    "mixed": ["mixed"],
    "kerb": ["kerb"],
    "lplus": ["lplus"],
    "schur": ["schur"],
    "delay_ct": ["app", "delay-ct"],
    "delay_dt": ["app", "delay-dt"],
    "ergodic": ["app", "ergodic"],
    "impulsive": ["app", "impulsive"],
    "nonlinear": ["app", "nonlinear"],
}


def command_for(stem):
    for prefix, cmd in COMMANDS.items():
        if stem.startswith(prefix):
            return cmd
    return ["check"]


EXAMPLES = sorted(p for p in DATA.glob("*.txt") if p.stem != "m2")


@pytest.mark.parametrize("path", EXAMPLES, ids=lambda p: p.stem)
def test_report_matches_schema_and_is_stable(path):
    args = command_for(path.stem) + ["--input", str(path), "--json", "--seed", "5", "--samples", "3"]
    code, out, err = ms.run(args)
    assert code in (0, 1, 2), err
    report = json.loads(out)
    jsonschema.validate(report, SCHEMA)
    assert report["version"] == ms.__version__
    assert ms.run(args) == (code, out, err)


def test_non_metzler_file_is_data_error():
    code, out, err = ms.run(["check", "--input", str(DATA / "m2.txt")])
    assert code == 65
    assert "not Metzler" in err


def test_mutual_coupling_has_two_cycle():
    v = ms.sign_stable(["- +", "+ -"], full_check=True)
    assert v["verdict"] is False
    assert v["cycle"] == [0, 1, 0]


def test_chain_is_sign_stable_with_inverse():
    chain = ["- + 0", "0 - +", "0 0 -"]
    assert ms.sign_stable(chain)["verdict"] is True
    assert ms.sign_inverse(chain) == ["- - -", "0 - -", "0 0 -"]


def test_samples_stay_in_class_and_stable():
    chain = ["- + 0", "0 - +", "0 0 -"]
    m = ms.sample(chain, seed=3, scale=10.0)
    assert m[0][0] < 0 < m[0][1] and m[0][2] == 0.0
    assert ms.spectral_abscissa(m) < 0
    assert ms.sample(chain, seed=3, scale=10.0) == m


def test_errors_are_value_errors():
    with pytest.raises(ValueError):
        ms.sign_stable(["- -", "+ -"])
    with pytest.raises(ValueError):
        ms.sign_stable(["- x"])
