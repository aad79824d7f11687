from optdom.norm_engine.engine import AnalysisEngine

__all__ = ["AnalysisEngine"]
