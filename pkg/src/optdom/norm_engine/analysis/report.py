import io
import logging
from datetime import datetime, timezone
from importlib import metadata
from typing import Any, Dict, Optional

from optdom.norm_engine.analysis.report_utils import (
    format_bracket,
    format_float,
    write_header,
    write_key_value,
    write_line,
    write_table,
)
from optdom.norm_engine.entities.analysis_report import SCHEMA_VERSION, AnalysisReport
from optdom.norm_engine.entities.verify_summary import VerifySummary
from optdom.storage.exporter import ReportExporter

logger = logging.getLogger(__name__)


def report_metadata() -> Dict[str, Any]:
    """Run metadata, kept out of the report body so that reports stay byte-identical."""
    try:
        version = metadata.version("optdom")
    except metadata.PackageNotFoundError:
        version = "unknown"
    return {
        "generated_at": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "optdom_version": version,
    }


def build_payload(report: Any, kind: str, meta: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": kind,
        "report": report,
        "metadata": report_metadata() if meta is None else meta,
    }


def export_analysis(
    report: AnalysisReport,
    json_path: Optional[str] = None,
    md_path: Optional[str] = None,
    exporter: Optional[ReportExporter] = None,
) -> Dict[str, Any]:
    """
    Write the analysis report.

    JSON goes to `json_path` (schema_version 1, report body plus a separate
    metadata block); markdown goes to `md_path`. Returns the payload.
    """
    exporter = exporter or ReportExporter()
    payload = build_payload(report, "analyze")
    if json_path:
        exporter.export_json(payload, json_path)
    if md_path:
        exporter.export_text(render_markdown(report), md_path)
    return payload


def render_markdown(report: AnalysisReport) -> str:
    file = io.StringIO()
    config = report.config
    fact = report.factorability

    write_header(file, f"Analysis of '{config['matrix']['name']}' into {config['codomain']}", level=1)
    write_key_value(file, "p", format_float(config["p"]))
    write_key_value(file, "Schedule", ", ".join(str(n) for n in config["schedule"]))
    write_key_value(file, "Codomain rows (n_E)", config["n_E"])
    write_key_value(file, "Seed", config["seed"])
    write_key_value(file, "Verdict", fact.verdict.value)
    write_key_value(file, "Growth exponent", format_float(fact.growth.exponent, 4))
    write_line(file)

    _write_continuity(file, report)
    _write_constants(file, report)
    _write_conditions(file, report)
    _write_domination(file, report)
    _write_probes(file, report)

    if report.notes:
        write_header(file, "Notes")
        for note in report.notes:
            write_line(file, f"- {note}")
        write_line(file)
    return file.getvalue()


def render_verify_summary(summary: VerifySummary) -> str:
    file = io.StringIO()
    write_header(file, f"Verify suite (scale={summary.scale}, seed={summary.seed})", level=1)
    rows = [
        [r.name, str(r.checked), str(r.failed), "pass" if r.passed else "FAIL", r.first_failure or ""]
        for r in summary.results
    ]
    write_table(file, ["Invariant", "Checked", "Failed", "Status", "First failure"], rows)
    write_line(file, "All invariants pass." if summary.passed else "Some invariants FAILED.")
    return file.getvalue()


# --- sections ---

def _write_continuity(file, report: AnalysisReport) -> None:
    cont = report.continuity
    write_header(file, "Continuity of M: ℓ¹ → E")
    write_key_value(file, "Verdict", cont.verdict.value)
    write_key_value(file, "Running sup of ‖C_j‖", format_float(cont.running_sup[-1]))
    write_line(file)


def _write_constants(file, report: AnalysisReport) -> None:
    write_header(file, "Factorization constants C_p(n)")
    rows = [
        [
            str(step.n),
            format_float(step.constant),
            format_float(step.grid_value),
            format_float(step.column_sup),
            format_float(step.hoelder_partial),
            str(step.iterations),
        ]
        for step in report.steps
    ]
    write_table(file, ["n", "C_p(n)", "grid oracle", "max ‖C_j‖", "Hölder bound", "iterations"], rows)


def _write_conditions(file, report: AnalysisReport) -> None:
    fact = report.factorability
    cond = fact.condition_I
    write_header(file, "Sufficient conditions")
    write_key_value(file, "Condition (I) partial sum",
                    format_float(cond.partial_sums[-1] if cond.partial_sums else None))
    write_key_value(file, "Condition (I) tail bound", format_float(cond.tail_bound))
    write_key_value(file, "Condition (I) verdict", cond.verdict.value + (" (certified)" if cond.certified else ""))
    rows_cond = fact.condition_II
    if rows_cond is not None:
        write_key_value(file, "Rows condition partial sum",
                        format_float(rows_cond.partial_sums[-1] if rows_cond.partial_sums else None))
        write_key_value(file, "Rows condition verdict",
                        rows_cond.verdict.value + (" (certified)" if rows_cond.certified else ""))
        write_key_value(file, "Rows domination bound", format_float(rows_cond.domination_bound))
    write_line(file)


def _write_domination(file, report: AnalysisReport) -> None:
    dom = report.domination
    bound = report.factorization_bound
    if dom is None and bound is None:
        return
    write_header(file, "Power domination")
    if dom is not None:
        write_key_value(file, "n", dom.n)
        write_key_value(file, "D_{1/p}(n)", format_float(dom.D))
        write_key_value(file, "sup ‖x‖_{ℓ^{1/p}(m)} / ‖x‖_{ℓ¹(m)}", format_float(dom.B))
        write_key_value(file, "Inequalities hold", "yes" if dom.first_half_ok and dom.second_half_ok else "no")
    if bound is not None:
        write_key_value(file, "K(n) = max ‖C_j‖", format_float(bound.operator_norm_l1))
        write_key_value(file, "(D·K)^{1/p}", format_float(bound.bound))
    write_line(file)


def _write_probes(file, report: AnalysisReport) -> None:
    if not report.probes:
        return
    write_header(file, "Optimal domain norms of probe vectors")
    rows = []
    for probe in report.probes:
        support = ", ".join(f"{i}:{format_float(v, 6)}" for i, v in probe.vector)
        rows.append([
            support,
            format_bracket(probe.norms.l1),
            format_bracket(probe.norms.l_inv_p),
            format_bracket(probe.norms.intersection),
        ])
    write_table(file, ["f", "ℓ¹(m)", "ℓ^{1/p}(m)", "intersection"], rows)
