from typing import Optional

from optdom.norm_engine.analysis.report import build_payload
from optdom.norm_engine.entities.verify_summary import VerifySummary
from optdom.norm_engine.oracle.suite import run_verify_suite
from optdom.storage.exporter import ReportExporter


def run_verify(seed: int = 0, scale: str = "quick", verbose: bool = False,
               json_path: Optional[str] = None) -> VerifySummary:
    """Run the invariant suite; the JSON summary is written when `json_path` is given."""
    summary = run_verify_suite(seed=seed, scale=scale, verbose=verbose)
    if json_path:
        ReportExporter().export_json(build_payload(summary, "verify"), json_path)
    return summary
