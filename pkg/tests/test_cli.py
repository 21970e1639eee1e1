import json
from pathlib import Path

import pytest

from main import main
from src.domain.entities import REPORT_SCHEMA, ComputationLimits
from src.infrastructure.config import AppConfig
from src.infrastructure.container import DIContainer
from src.presentation.cli import run

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture
def small_container():
    limits = ComputationLimits(
        cyclo_pairs=20,
        reciprocity_triples=5,
        basis_perturbations=3,
        quasi_iso_pairs=2,
        isometry_vectors=5,
    )
    return DIContainer(AppConfig(limits=limits))


def _report(capsys, argv, expected_code=0):
    code = main(argv)
    out = capsys.readouterr().out
    assert code == expected_code
    return json.loads(out)


def test_chars_q8(capsys):
    report = _report(capsys, ["chars", "q8"])
    assert report["schema"] == REPORT_SCHEMA
    assert report["passed"]
    item = report["items"][0]
    assert item["order"] == 8
    assert item["frobenius_schur"] == [1, 1, 1, 1, -1]
    assert [g["label"] for g in item["symplectic_generators"]][-1] == "χ4"


def test_json_output_is_reproducible(capsys):
    first = main(["chars", "c4", "s3"])
    out1 = capsys.readouterr().out
    second = main(["chars", "c4", "s3"])
    out2 = capsys.readouterr().out
    assert first == second == 0
    assert out1 == out2
    assert "elapsed" not in out1


def test_field_report_q_zeta5(capsys):
    report = _report(capsys, ["field-report", "q_zeta5"])
    item = report["items"][0]
    theta = {row["label"]: row["theta"] for row in item["theta_tilde"]}
    assert theta["χ2 + χ3"] == [1, 5]
    eps = {row["label"]: row["eps_infinity_tilde"] for row in item["symplectic"]}
    assert eps["χ2 + χ3"] == -1
    assert report["passed"]


def test_class_complex(capsys):
    report = _report(capsys, ["class-complex", "acyclic_s3", "two_term_trivial"])
    names = [c["name"] for c in report["checks"]]
    assert "acyclic-S3.acyclic_identity" in names
    assert "smith-1.smith_normal_form" in names
    assert report["items"][1]["smith"]["determinant"] == 6
    assert report["passed"]


@pytest.mark.parametrize(
    "argv",
    [
        ["chars", str(DATA_DIR / "malformed_group.json")],
        ["class-complex", str(DATA_DIR / "bad_rank.json")],
        ["field-report", str(DATA_DIR / "wild_q_i.json")],
        ["chars"],
        ["chars", "no_such_group"],
        ["verify", "q8"],
        ["corpus", "planets"],
        ["chars", "q8", "--precision-bits", "8"],
        ["nonsense"],
    ],
)
def test_input_errors_exit_with_two(capsys, argv):
    assert main(argv) == 2
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "error" in captured.err


def test_verify_single_suite(capsys, small_container):
    code = run(["verify", "--suite", "cyclo", "--seed", "3"], small_container)
    report = json.loads(capsys.readouterr().out)
    assert code == 0
    assert report["command"]["suite"] == "cyclo"
    assert report["command"]["seed"] == 3
    assert [item["suite"] for item in report["items"]] == ["cyclo"]


def test_verify_text_format(capsys, small_container):
    code = run(["verify", "--suite", "groupchar", "--format", "text"], small_container)
    out = capsys.readouterr().out
    assert code == 0
    assert "結果: 合格" in out


def test_corpus_listing(capsys):
    report = _report(capsys, ["corpus", "fields"])
    assert {item["id"] for item in report["items"]} == {
        "q_zeta5", "q_zeta7", "q_sqrt_m3_sqrt5", "s3_cubic", "rationals",
    }


def test_out_writes_file(capsys, tmp_path):
    path = tmp_path / "reports" / "c2.json"
    assert main(["chars", "c2", "--out", str(path)]) == 0
    assert capsys.readouterr().out == ""
    assert json.loads(path.read_text(encoding="utf-8"))["items"][0]["order"] == 2
