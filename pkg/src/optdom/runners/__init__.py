from optdom.runners.analyze_runner import run_analyze
from optdom.runners.norm_runner import SELECTORS, run_norm
from optdom.runners.verify_runner import run_verify

__all__ = ["SELECTORS", "run_analyze", "run_norm", "run_verify"]
