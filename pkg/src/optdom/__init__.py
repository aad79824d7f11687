"""
optdom: finite-truncation norms and constants for optimal domains of
matrix operators on sequence spaces.
"""

from optdom.runners.analyze_runner import run_analyze
from optdom.runners.norm_runner import run_norm
from optdom.runners.verify_runner import run_verify

__all__ = ["run_analyze", "run_norm", "run_verify"]
