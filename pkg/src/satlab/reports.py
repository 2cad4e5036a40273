"""Delimited and JSON serialization of search reports, plus figure output.

Both text formats are versioned and byte-deterministic for a fixed report:
records are already canonically sorted by the search layer, dictionary keys
are sorted on dump, and integers are always written in full decimal.  The
histogram figure is rendered with a pinned Software tag so repeated runs
produce identical files.
"""

from __future__ import annotations

import json
from typing import IO, List, Optional, Sequence, Tuple, Union

from .errors import ShapeMismatch
from .search import SearchRecord, SearchReport, density_report

TSV_HEADER = "# satlab-records v1"
TSV_COLUMNS = "# coords\tomega\theight\tfiber\tparams"
JSON_FORMAT = "satlab-report"
JSON_VERSION = 1


def _join(vals: Sequence[int], sep: str) -> str:
    return sep.join(str(int(v)) for v in vals)


def record_row(rec: SearchRecord) -> str:
    fiber = _join(rec.fiber, ",") if rec.fiber else "-"
    return "\t".join([
        _join(rec.coords, ":"),
        str(rec.omega),
        str(rec.height),
        fiber,
        _join(rec.params, ","),
    ])


def dumps_tsv(records: Sequence[SearchRecord]) -> str:
    lines = [TSV_HEADER, TSV_COLUMNS]
    lines.extend(record_row(r) for r in records)
    return "\n".join(lines) + "\n"


def parse_tsv(text: str) -> List[dict]:
    lines = text.splitlines()
    if not lines or lines[0] != TSV_HEADER:
        raise ShapeMismatch("missing or unknown records header")
    out = []
    for line in lines[1:]:
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 5:
            raise ShapeMismatch(f"expected 5 columns, got {len(parts)}")
        coords = tuple(int(x) for x in parts[0].split(":"))
        fiber = None if parts[3] == "-" else tuple(int(x) for x in parts[3].split(","))
        params = tuple(int(x) for x in parts[4].split(",")) if parts[4] else ()
        out.append({
            "coords": coords,
            "omega": int(parts[1]),
            "height": int(parts[2]),
            "fiber": fiber,
            "params": params,
        })
    return out


def load_records_tsv(path: str) -> List[dict]:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_tsv(fh.read())


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, float):
        return obj
    return str(obj)


def report_to_dict(report: SearchReport) -> dict:
    return {
        "format": JSON_FORMAT,
        "version": JSON_VERSION,
        "kind": report.kind,
        "config": _jsonable(report.config),
        "counters": _jsonable(dict(sorted(report.counters.items()))),
        "summary": _jsonable(report.summary),
        "records": [
            {
                "coords": list(r.coords),
                "omega": r.omega,
                "height": r.height,
                "fiber": list(r.fiber) if r.fiber else None,
                "params": list(r.params),
                "extras": _jsonable(r.extras),
            }
            for r in report.records
        ],
    }


def dumps_json(report: SearchReport) -> str:
    return json.dumps(report_to_dict(report), sort_keys=True, indent=2) + "\n"


def records_report(records: Sequence[SearchRecord], kind: str = "records",
                   config: Optional[dict] = None) -> SearchReport:
    """Wrap bare records (e.g. from a box scan) as a serializable report."""
    recs = tuple(sorted(records, key=SearchRecord.sort_key))
    return SearchReport(kind=kind, records=recs, counters={},
                        summary=density_report(recs), config=config or {})


def render_histogram(report: SearchReport, path: str) -> str:
    """Bar chart of the Omega histogram with reference thresholds marked.

    Uses the Agg backend and pinned metadata so output bytes do not depend
    on the display environment or the wall clock."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    hist = report.summary.get("histogram") or []
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    if hist:
        ks = [row[0] for row in hist]
        cs = [row[1] for row in hist]
        ax.bar(ks, cs, color="#4878a8", width=0.8)
    thresholds = []
    for key in ("omega_threshold", "omega_threshold_stated",
                "omega_threshold_accounted"):
        val = report.summary.get(key)
        if val is not None:
            thresholds.append((key.replace("omega_threshold", "target").strip("_") or "target", val))
    for label, val in thresholds:
        ax.axvline(val, linestyle="--", linewidth=1.0, color="#a84848")
        ax.text(val, ax.get_ylim()[1] * 0.95, f" {label}={val}",
                rotation=90, va="top", fontsize=8, color="#a84848")
    ax.set_xlabel("Omega of the coordinate product")
    ax.set_ylabel("records")
    ax.set_title(f"Omega histogram ({report.kind})")
    fig.tight_layout()
    fig.savefig(path, format="png", dpi=100, metadata={"Software": "satlab"})
    plt.close(fig)
    return path


def write_report(report: SearchReport, base: str,
                 figure: bool = True) -> dict:
    """Write base.tsv and base.json, and base.png when figure is set.
    Returns the paths written."""
    paths = {}
    tsv_path = base + ".tsv"
    with open(tsv_path, "w", encoding="utf-8") as fh:
        fh.write(dumps_tsv(report.records))
    paths["tsv"] = tsv_path
    json_path = base + ".json"
    with open(json_path, "w", encoding="utf-8") as fh:
        fh.write(dumps_json(report))
    paths["json"] = json_path
    if figure:
        paths["png"] = render_histogram(report, base + ".png")
    return paths


def selftest() -> list:
    from .search import BoxSpec, elkies_variety, scan_map

    results = []
    recs, _ = scan_map(elkies_variety(), BoxSpec(((0, 2), (0, 2), (0, 2))))
    text = dumps_tsv(recs)
    results.append(("tsv header", text.startswith(TSV_HEADER + "\n")))
    back = parse_tsv(text)
    results.append(("tsv roundtrip",
                    [tuple(r["coords"]) for r in back] == [r.coords for r in recs]
                    and all(b["omega"] == r.omega for b, r in zip(back, recs))))
    rep = records_report(recs, kind="elkies")
    j = dumps_json(rep)
    results.append(("json stable", j == dumps_json(records_report(recs, kind="elkies"))))
    data = json.loads(j)
    results.append(("json version", data["format"] == JSON_FORMAT
                    and data["version"] == JSON_VERSION))
    return results
