"""DET curves and decision-threshold calibration at a target false match rate.

A comparison counts as a match iff its distance is strictly below the
threshold.  Consequently fmr(t) is the fraction of non-mated scores < t and
fnmr(t) the fraction of mated scores >= t.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import DataError

DetPoint = tuple[float, float, float]  # (fmr, fnmr, threshold)


@dataclass
class CalibrationResult:
    frs_id: str
    tau: float
    target_fmr: float
    achieved_fmr: float
    fnmr_at_tau: float
    det_points: list[DetPoint]

    def to_json_obj(self) -> dict:
        return {
            "frs_id": self.frs_id,
            "tau": self.tau,
            "target_fmr": self.target_fmr,
            "achieved_fmr": self.achieved_fmr,
            "fnmr_at_tau": self.fnmr_at_tau,
            "det_points": [list(p) for p in self.det_points],
        }


def _as_sorted(scores: Sequence[float], what: str) -> np.ndarray:
    arr = np.asarray(scores, dtype=np.float64)
    if arr.size == 0:
        raise DataError(f"empty {what} score set")
    return np.sort(arr)


def fmr_at_threshold(nonmated: Sequence[float], tau: float) -> float:
    """Fraction of non-mated comparisons that match (distance < tau)."""
    arr = _as_sorted(nonmated, "non-mated")
    return float(np.searchsorted(arr, tau, side="left")) / arr.size


def fnmr_at_threshold(mated: Sequence[float], tau: float) -> float:
    """Fraction of mated comparisons that fail to match (distance >= tau)."""
    arr = _as_sorted(mated, "mated")
    return float(arr.size - np.searchsorted(arr, tau, side="left")) / arr.size


def det_curve(mated: Sequence[float], nonmated: Sequence[float]) -> list[DetPoint]:
    """(fmr, fnmr, threshold) at every distinct observed score plus +-inf sentinels."""
    mated_sorted = _as_sorted(mated, "mated")
    nonmated_sorted = _as_sorted(nonmated, "non-mated")
    thresholds = np.unique(np.concatenate([mated_sorted, nonmated_sorted]))
    thresholds = np.concatenate([[-np.inf], thresholds, [np.inf]])
    fmr = np.searchsorted(nonmated_sorted, thresholds, side="left") / nonmated_sorted.size
    fnmr = (
        mated_sorted.size - np.searchsorted(mated_sorted, thresholds, side="left")
    ) / mated_sorted.size
    return [(float(a), float(r), float(t)) for a, r, t in zip(fmr, fnmr, thresholds)]


def threshold_at_fmr(nonmated: Sequence[float], target: float) -> float:
    """The k-th smallest non-mated score with k = floor(target*N) + 1.

    Under the strict-< match rule the achieved FMR at the returned threshold
    never exceeds ``target``.
    """
    if not 0.0 <= target < 1.0:
        raise DataError("target FMR must lie in [0, 1)")
    arr = _as_sorted(nonmated, "non-mated")
    # exact rational floor of target*N keeps achieved <= target airtight
    k = int(Fraction(target) * arr.size) + 1
    k = min(k, arr.size)
    return float(arr[k - 1])


def calibrate(
    frs_id: str,
    mated: Sequence[float],
    nonmated: Sequence[float],
    target_fmr: float = 0.001,
) -> CalibrationResult:
    """Bundle threshold, achieved error rates, and the full DET for one FRS."""
    tau = threshold_at_fmr(nonmated, target_fmr)
    achieved = fmr_at_threshold(nonmated, tau)
    fnmr = fnmr_at_threshold(mated, tau)
    return CalibrationResult(
        frs_id=frs_id,
        tau=tau,
        target_fmr=float(target_fmr),
        achieved_fmr=achieved,
        fnmr_at_tau=fnmr,
        det_points=det_curve(mated, nonmated),
    )
