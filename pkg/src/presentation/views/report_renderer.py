"""テキストレポートのレンダリング"""
import json
from pathlib import Path
from typing import Any, Dict, List, Optional

import pandas as pd
from jinja2 import Environment, FileSystemLoader

from ...domain.entities import Report

TEMPLATES = {
    "chars": "chars.txt.j2",
    "class-complex": "class_complex.txt.j2",
    "field-report": "field_report.txt.j2",
    "verify": "verify.txt.j2",
    "corpus": "corpus.txt.j2",
}


def format_value(value: Any) -> str:
    """JSON に符号化した値を人が読む形にする"""
    if isinstance(value, list) and len(value) == 2 and all(isinstance(v, int) for v in value):
        return f"{value[0]}/{value[1]}"
    if isinstance(value, dict) and "coeffs" in value:
        terms = []
        for k, c in enumerate(value["coeffs"]):
            text = format_value(c)
            if text == "0":
                continue
            terms.append(text if k == 0 else f"{text}·ζ{value['n']}^{k}")
        return " + ".join(terms) or "0"
    if isinstance(value, float):
        return f"{value:.12g}"
    if isinstance(value, (list, dict)):
        return json.dumps(value, ensure_ascii=False, sort_keys=True)
    return str(value)


def frame_text(rows: List[Dict[str, Any]], columns: Optional[List[str]] = None) -> str:
    if not rows:
        return "(なし)"
    df = pd.DataFrame([{k: format_value(v) for k, v in row.items()} for row in rows], columns=columns)
    return df.fillna("").to_string(index=False)


class ReportRenderer:
    """jinja2 のテンプレートと pandas の表でレポートを文字列にする"""

    def __init__(self, template_dir: Optional[str] = None):
        if template_dir is None:
            template_dir = str(Path(__file__).parent.parent / "templates")
        self._env = Environment(
            loader=FileSystemLoader(template_dir),
            autoescape=False,
            keep_trailing_newline=True,
            trim_blocks=True,
            lstrip_blocks=True,
        )
        self._env.filters["value"] = format_value

    def render(self, template_name: str, context: Dict[str, Any] = None) -> str:
        if context is None:
            context = {}
        template = self._env.get_template(template_name)
        return template.render(**context)

    def render_report(self, command: str, report: Report) -> str:
        data = report.to_dict()
        context = {
            "report": data,
            "elapsed": report.elapsed_seconds,
            "checks_table": frame_text(
                [{"check": c["name"], "passed": c["passed"]} for c in data["checks"]], ["check", "passed"]
            ),
            "tables": [self._item_tables(command, item) for item in data["items"]],
        }
        if command == "corpus":
            context["corpus_table"] = frame_text(
                [{k: e[k] for k in ("kind", "id", "name", "description")} for e in data["items"]],
                ["kind", "id", "name", "description"],
            )
        return self.render(TEMPLATES[command], context)

    def _item_tables(self, command: str, item: Dict[str, Any]) -> Dict[str, str]:
        if command == "chars":
            reps = [str(c["representative"]) for c in item["classes"]]
            rows = []
            for chi in item["characters"]:
                row = {"χ": chi["label"], "FS": chi["frobenius_schur"]}
                row.update({f"[{r}]": v for r, v in zip(reps, chi["values"])})
                rows.append(row)
            return {"characters": frame_text(rows)}
        if command == "class-complex":
            cls = item["class"]
            rows = []
            for index, arch in sorted(cls["arch"].items(), key=lambda kv: int(kv[0])):
                row = {"χ": f"χ{index}", "arch": arch[0]}
                for p, values in cls["fin"].items():
                    row[f"p={p}"] = values.get(index, 1)
                rows.append(row)
            return {"class": frame_text(rows)}
        if command == "field-report":
            symplectic = frame_text([
                {
                    "ψ": g["label"],
                    "ψ(1)": g["degree"],
                    "ε̃∞": g["eps_infinity_tilde"],
                    "Pf": g["pfaffian_total"],
                    "N(b|ψ)": g["resolvent_norm"][0],
                    "δ_K": g["delta_K"][0],
                }
                for g in item["symplectic"]
            ])
            theta = frame_text([{"ψ": t["label"], "θ∘tilde": t["theta"]} for t in item["theta_tilde"]])
            return {"symplectic": symplectic, "theta": theta}
        return {}
