import json

from src.domain.entities import REPORT_SCHEMA, Report
from src.infrastructure.repositories import ReportRepository


def test_json_has_sorted_keys_and_no_timing():
    report = Report({"name": "chars", "inputs": ["c2"]}, items=[{"order": 2}], elapsed_seconds=0.5)
    text = ReportRepository().to_json(report)
    assert text.endswith("\n")
    data = json.loads(text)
    assert list(data) == sorted(data)
    assert data["schema"] == REPORT_SCHEMA
    assert "elapsed_seconds" not in text


def test_write_creates_parent_directories(tmp_path):
    path = tmp_path / "nested" / "out.json"
    repository = ReportRepository()
    repository.write(repository.to_json(Report({"name": "corpus"})), str(path))
    assert json.loads(path.read_text(encoding="utf-8"))["command"] == {"name": "corpus"}


def test_write_to_stdout(capsys):
    ReportRepository().write("本文\n")
    assert capsys.readouterr().out == "本文\n"
