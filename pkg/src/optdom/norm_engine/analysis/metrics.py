import math
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from optdom.norm_engine.entities.enums import SeriesVerdict, Verdict
from optdom.norm_engine.entities.factorability_report import GrowthFit

BOUNDED_SLOPE = 0.05
UNBOUNDED_SLOPE = 0.2
FIT_WINDOW = 4


def growth_fit(ns: Sequence[int], values: Sequence[float], window: int = FIT_WINDOW) -> GrowthFit:
    """Least-squares slope of log(value) against log(n) over the last `window` usable points.

    Slope < 0.05 gives bounded-evidence, > 0.2 unbounded-evidence, anything
    else (or fewer than two usable points) inconclusive.
    """
    points = _usable_points(ns, values)[-window:]
    if len(points) < 2:
        return GrowthFit(exponent=None, verdict=Verdict.INCONCLUSIVE, window=tuple(n for n, _ in points))

    x = np.log([float(n) for n, _ in points])
    y = np.log([v for _, v in points])
    slope = float(np.polyfit(x, y, 1)[0])

    if slope < BOUNDED_SLOPE:
        verdict = Verdict.BOUNDED
    elif slope > UNBOUNDED_SLOPE:
        verdict = Verdict.UNBOUNDED
    else:
        verdict = Verdict.INCONCLUSIVE
    return GrowthFit(exponent=slope, verdict=verdict, window=tuple(n for n, _ in points))


def series_verdict(fit: GrowthFit) -> SeriesVerdict:
    """Partial sums that stop growing converge; polynomially growing ones diverge."""
    if fit.verdict == Verdict.BOUNDED:
        return SeriesVerdict.CONVERGES
    if fit.verdict == Verdict.UNBOUNDED:
        return SeriesVerdict.DIVERGES
    return SeriesVerdict.INCONCLUSIVE


def doubling_points(n: int) -> List[int]:
    """1, 2, 4, ... up to n, with n itself appended."""
    if n < 1:
        return []
    points = []
    k = 1
    while k <= n:
        points.append(k)
        k *= 2
    if points[-1] != n:
        points.append(n)
    return points


def partial_sums(terms: Iterable[float]) -> List[float]:
    """Running sums with compensated summation."""
    out: List[float] = []
    acc: List[float] = []
    for t in terms:
        acc.append(t)
        out.append(math.fsum(acc))
    return out


def running_max(values: Iterable[float]) -> List[float]:
    out: List[float] = []
    best = -math.inf
    for v in values:
        best = max(best, v)
        out.append(best)
    return out


def is_nondecreasing(values: Sequence[float], rel_tol: float = 1e-9) -> bool:
    return all(b >= a * (1.0 - rel_tol) - rel_tol for a, b in zip(values, values[1:]))


def _usable_points(ns: Sequence[int], values: Sequence[float]) -> List[Tuple[int, float]]:
    return [(int(n), float(v)) for n, v in zip(ns, values) if n > 0 and v > 0 and math.isfinite(v)]
