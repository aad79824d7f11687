from typing import Any, Dict

from optdom.norm_engine.analysis.report import export_analysis
from optdom.norm_engine.engine import AnalysisEngine
from optdom.norm_engine.entities.analysis_config import AnalysisConfig


def run_analyze(config: AnalysisConfig, verbose: bool = False, save_results: bool = True) -> Dict[str, Any]:
    """
    Exécute une analyse complète : continuité, constantes C_p(n), conditions
    suffisantes, domination, sondes ; puis écrit les rapports demandés.

    Retourne {"report": AnalysisReport, "payload": dict JSON-ready}.
    """
    engine = AnalysisEngine(verbose=verbose)
    report = engine.run(config)

    json_path = config.json_path if save_results else None
    md_path = config.md_path if save_results else None
    payload = export_analysis(report, json_path=json_path, md_path=md_path)
    return {"report": report, "payload": payload}
