"""
Rendering and export of verification suite reports.

The human-readable report is a Jinja2 template; the export is a zip holding:
- results.csv (one row per check)
- report.json (the SuiteReport)
- instance.json (the canonical instance document)
- README.txt

Export bytes depend only on the report and the instance: entries are
written in a fixed order with a fixed timestamp.
"""

import csv
import io
import json
import logging
import zipfile
from pathlib import Path

from jinja2 import Environment, FileSystemLoader, StrictUndefined

from exceptions import ExportPathError
from instances import print_instance
from schemas import InstanceDocument, SuiteReport

logger = logging.getLogger(__name__)

TEMPLATE_DIR = Path(__file__).resolve().parent / "templates"
EMPTY_SET = "∅"
ZIP_DATE = (1980, 1, 1, 0, 0, 0)


def format_set(names) -> str:
    """`{a b}` for a named subset, `∅` for the empty one."""
    return "{" + " ".join(names) + "}" if names else EMPTY_SET


def format_family(sets) -> str:
    return ", ".join(format_set(s) for s in sets)


def _environment() -> Environment:
    env = Environment(
        loader=FileSystemLoader(str(TEMPLATE_DIR)),
        undefined=StrictUndefined,
        trim_blocks=True,
        lstrip_blocks=True,
        keep_trailing_newline=True,
    )
    env.filters["setfmt"] = format_set
    env.filters["familyfmt"] = format_family
    return env


def render_report(report: SuiteReport) -> str:
    """Human-readable suite report: one line per check plus a summary."""
    template = _environment().get_template("suite_report.txt.j2")
    return template.render(report=report, counts=report.counts())


# ============ EXPORT ============


def _results_csv(report: SuiteReport) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["Check", "Subject", "Status", "Violated", "Witness", "Skipped"])
    for r in report.results:
        writer.writerow(
            [
                r.check,
                r.subject,
                r.status,
                r.violated or "",
                format_family(r.witness) if r.witness else "",
                "|".join(r.skipped),
            ]
        )
    return buffer.getvalue()


def _write(zip_file: zipfile.ZipFile, name: str, text: str) -> None:
    info = zipfile.ZipInfo(name, date_time=ZIP_DATE)
    info.compress_type = zipfile.ZIP_DEFLATED
    info.external_attr = 0o644 << 16
    zip_file.writestr(info, text.encode("utf-8"))


def generate_report_export(report: SuiteReport, doc: InstanceDocument) -> io.BytesIO:
    """
    Build the export zip for one suite run.
    Returns a BytesIO positioned at the start of the archive.
    """
    zip_buffer = io.BytesIO()
    readme = _environment().get_template("export_readme.txt.j2").render(
        report=report, counts=report.counts(), blocks=len(doc.blocks)
    )

    with zipfile.ZipFile(zip_buffer, "w") as zip_file:
        _write(zip_file, "results.csv", _results_csv(report))
        _write(zip_file, "report.json", report.model_dump_json(indent=2) + "\n")
        _write(zip_file, "instance.json", print_instance(doc))
        _write(zip_file, "README.txt", readme)

    logger.info("[Export] %d results for instance %s", len(report.results), report.instance_digest[:12])
    zip_buffer.seek(0)
    return zip_buffer


def write_report_export(report: SuiteReport, doc: InstanceDocument, path) -> None:
    payload = generate_report_export(report, doc).getvalue()
    try:
        Path(path).write_bytes(payload)
    except OSError as exc:
        raise ExportPathError(path, exc.strerror or type(exc).__name__) from exc
    logger.info("[Export] wrote %d bytes to %s", len(payload), path)


def report_as_json(report: SuiteReport) -> str:
    return json.dumps(report.model_dump(), indent=2, ensure_ascii=False) + "\n"
