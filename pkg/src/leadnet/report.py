"""Report directory layout.

``replicate --out DIR`` writes::

    DIR/report.json          full nested report
    DIR/table1_logit.csv     win-loss logit coefficients (Models 1 and 2, per format)
    DIR/table2_linear.csv    run-rate differential coefficients
    DIR/fig2_scores.csv      mean team score per leadership stratum, bootstrap bounds
    DIR/fig3_std_coef.csv    standardized coefficients of the run-rate model
    DIR/bci.csv              binomial intervals per stratum
    DIR/vif.csv              variance inflation factors (Model 2)
    DIR/drop_ledger.csv      units in, used and dropped by reason
    DIR/observations.csv     win-loss logit rows
    DIR/differentials.csv    run-rate differential rows

Every CSV carries a ``config_hash`` column.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

from .leadership import DifferentialRow, ObservationRow, rows_to_csv


def dumps_report(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, allow_nan=False) + "\n"


def _csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow(["" if v is None else (repr(v) if isinstance(v, float) else v) for v in r])
    return buf.getvalue()


def _coef_rows(table: dict, h: str, extra_keys: tuple[str, ...]) -> list[list]:
    rows = []
    for fmt in sorted(table):
        for model in ("model1", "model2"):
            sec = table[fmt].get(model)
            if sec is None:
                continue
            extras = [sec.get(k) for k in extra_keys]
            for c in sec["coefficients"]:
                rows.append([fmt, model, c["name"], c["estimate"], c["se"], c["p"], sec["n_obs"], *extras, h])
    return rows


def report_tables(report: dict) -> dict[str, str]:
    h = report["config_hash"]
    files: dict[str, str] = {}
    files["table1_logit.csv"] = _csv(
        ["format", "model", "term", "estimate", "se", "p", "n_obs", "lr_chi2", "lr_p", "config_hash"],
        _coef_rows(report["logit_table"], h, ("lr_chi2", "lr_p")),
    )
    files["table2_linear.csv"] = _csv(
        ["format", "model", "term", "estimate", "se", "p", "n_obs", "r_squared", "config_hash"],
        _coef_rows(report["differential_table"], h, ("r_squared",)),
    )
    rows = []
    for fmt in sorted(report["std_coef_table"]):
        for term, entry in report["std_coef_table"][fmt].items():
            rows.append([fmt, term, entry.get("std_beta"), entry.get("error"), h])
    files["fig3_std_coef.csv"] = _csv(["format", "term", "std_beta", "error", "config_hash"], rows)

    rows = []
    for fmt in sorted(report["score_averages"]):
        sec = report["score_averages"][fmt]
        for stratum, e in sec["strata"].items():
            rows.append([fmt, stratum, e.get("n"), e.get("mean"), e.get("lower"), e.get("upper"), None, h])
        if "difference" in sec:
            d = sec["difference"]
            rows.append([fmt, "C1-C0", None, d["point"], d["lower"], d["upper"], d["p_value"], h])
    files["fig2_scores.csv"] = _csv(["format", "stratum", "n", "mean", "lower", "upper", "p_value", "config_hash"], rows)

    rows = []
    for fmt in sorted(report["bci_table"]):
        for stratum, e in report["bci_table"][fmt]["strata"].items():
            rows.append([fmt, stratum, e.get("successes"), e.get("trials"), e.get("lower"), e.get("point"), e.get("upper"), h])
    files["bci.csv"] = _csv(["format", "stratum", "successes", "trials", "lower", "point", "upper", "config_hash"], rows)

    rows = []
    for fmt in sorted(report["differential_table"]):
        for term, v in report["differential_table"][fmt].get("model2", {}).get("vif", {}).items():
            rows.append([fmt, term, v, h])
    files["vif.csv"] = _csv(["format", "term", "vif", "config_hash"], rows)

    rows = []
    for section, key in (
        ("logit_model1", ("logit_table", "ledger_model1")),
        ("logit_model2", ("logit_table", "ledger_model2")),
        ("differential", ("differential_table", "ledger")),
        ("bci", ("bci_table", "ledger")),
        ("score_averages", ("score_averages", "ledger")),
    ):
        table = report[key[0]]
        for fmt in sorted(table):
            ledger = table[fmt].get(key[1])
            if ledger is None:
                continue
            rows.append([section, fmt, ledger["unit"], "n_in", ledger["n_in"], h])
            rows.append([section, fmt, ledger["unit"], "n_used", ledger["n_used"], h])
            for reason, n in ledger["drops"].items():
                rows.append([section, fmt, ledger["unit"], f"drop:{reason}", n, h])
    files["drop_ledger.csv"] = _csv(["section", "format", "unit", "entry", "count", "config_hash"], rows)
    return files


def _with_hash(text: str, h: str) -> str:
    if not text:
        return text
    lines = text.splitlines()
    out = [lines[0] + ",config_hash"] + [ln + "," + h for ln in lines[1:]]
    return "\n".join(out) + "\n"


def write_report(
    report: dict,
    out_dir: str | Path,
    observations: list[ObservationRow] | None = None,
    differentials: list[DifferentialRow] | None = None,
) -> list[Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    files = {"report.json": dumps_report(report), **report_tables(report)}
    h = report["config_hash"]
    if observations is not None:
        files["observations.csv"] = _with_hash(rows_to_csv(observations, ObservationRow), h)
    if differentials is not None:
        files["differentials.csv"] = _with_hash(rows_to_csv(differentials, DifferentialRow), h)
    written = []
    for name in sorted(files):
        path = out / name
        path.write_text(files[name], encoding="utf-8")
        written.append(path)
    return written
