"""Attack-potential metrics over mated morph comparison scores.

A morph comparison set holds, per morph and per face recognition system
(FRS), one list of probe distances for each contributing subject.  All
metrics treat a comparison as successful iff its distance is strictly below
the system's decision threshold, and all rates are decimal fractions in
[0, 1].
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import DataError

ANY = "any"
ALL = "all"

# per-FRS morph scores: morph_id -> one probe-score list per contributing subject
MorphScores = Mapping[str, Sequence[Sequence[float]]]


@dataclass
class MorphComparisonSet:
    """Scores for a set of morphs across one or more FRSs.

    ``scores[frs_id][morph_id][n]`` is the probe distance list of
    contributing subject ``n`` (slot order), sorted by probe index.
    """

    scores: dict[str, dict[str, list[list[float]]]] = field(default_factory=dict)

    @property
    def frs_ids(self) -> list[str]:
        return sorted(self.scores)

    @property
    def morph_ids(self) -> list[str]:
        ids: set[str] = set()
        for per_frs in self.scores.values():
            ids.update(per_frs)
        return sorted(ids)

    def for_frs(self, frs_id: str) -> dict[str, list[list[float]]]:
        if frs_id not in self.scores:
            raise DataError(f"no scores for FRS {frs_id!r}")
        return self.scores[frs_id]

    def validate(self) -> None:
        if not self.scores:
            raise DataError("empty morph comparison set")
        for frs_id, per_frs in self.scores.items():
            if not per_frs:
                raise DataError(f"FRS {frs_id!r} has no morphs")
            for morph_id, subjects in per_frs.items():
                if len(subjects) < 2:
                    raise DataError(
                        f"morph {morph_id!r} ({frs_id}) has fewer than 2 contributing subjects"
                    )
                for n, probes in enumerate(subjects, start=1):
                    if len(probes) == 0:
                        raise DataError(
                            f"morph {morph_id!r} ({frs_id}) subject slot {n} has no probe scores"
                        )

    @classmethod
    def from_rows(
        cls, rows: Iterable[tuple[str, str, int, int, float]]
    ) -> "MorphComparisonSet":
        """Build from (morph_id, frs_id, subject_slot, probe_index, distance) tuples."""
        staging: dict[str, dict[str, dict[int, list[tuple[int, float]]]]] = {}
        for morph_id, frs_id, slot, probe_index, distance in rows:
            if slot < 1:
                raise DataError(f"subject_slot must be >= 1, got {slot}")
            staging.setdefault(frs_id, {}).setdefault(morph_id, {}).setdefault(
                slot, []
            ).append((probe_index, float(distance)))
        cset = cls()
        for frs_id, per_frs in staging.items():
            out_frs: dict[str, list[list[float]]] = {}
            for morph_id, slots in per_frs.items():
                expected = list(range(1, len(slots) + 1))
                if sorted(slots) != expected:
                    raise DataError(
                        f"morph {morph_id!r} ({frs_id}) has slots {sorted(slots)}, expected {expected}"
                    )
                out_frs[morph_id] = [
                    [d for _, d in sorted(slots[n])] for n in expected
                ]
            cset.scores[frs_id] = out_frs
        cset.validate()
        return cset


@dataclass
class MapMatrix:
    """K x F morphing attack potential matrix (attempts x systems)."""

    values: np.ndarray
    attempts: int
    frs_ids: list[str]


def mmpmr(morph_scores: MorphScores, tau: float, subject_rule: str = ALL) -> float:
    """Fraction of morphs accepted at threshold ``tau``.

    Each subject is first reduced to its minimum probe distance.  Under
    ``any`` the morph succeeds if the best subject matches; under ``all``
    every contributing subject must match.
    """
    if subject_rule not in (ANY, ALL):
        raise DataError(f"subject_rule must be 'any' or 'all', got {subject_rule!r}")
    if not morph_scores:
        raise DataError("empty morph set")
    hits = 0
    for subjects in morph_scores.values():
        minima = [min(probes) for probes in subjects]
        decisive = min(minima) if subject_rule == ANY else max(minima)
        if decisive < tau:
            hits += 1
    return hits / len(morph_scores)


def prod_avg_mmpmr(morph_scores: MorphScores, tau: float) -> float:
    """Mean over morphs of the product over subjects of their match fractions."""
    if not morph_scores:
        raise DataError("empty morph set")
    total = 0.0
    for subjects in morph_scores.values():
        prod = 1.0
        for probes in subjects:
            prod *= sum(1 for d in probes if d < tau) / len(probes)
        total += prod
    return total / len(morph_scores)


def rmmr(mmpmr_value: float, fnmr_value: float) -> float:
    """Relative morph match rate: match rate plus the system's FNMR."""
    if not (0.0 <= mmpmr_value <= 1.0 and 0.0 <= fnmr_value <= 1.0):
        raise DataError("rmmr inputs must lie in [0, 1]")
    return mmpmr_value + fnmr_value


def _success_counts(
    subjects: Sequence[Sequence[float]], tau: float, attempts: int, paired: bool
) -> int:
    """Successful verification attempts for one morph on one FRS.

    Count-based rule: each subject's successes among its first ``attempts``
    probes are counted independently and the minimum over subjects is taken.
    Paired rule: attempt k succeeds only if every subject's k-th probe matches.
    """
    for probes in subjects:
        if len(probes) < attempts:
            raise DataError(
                f"need at least {attempts} probe scores per subject, got {len(probes)}"
            )
    if paired:
        return sum(
            1
            for k in range(attempts)
            if all(probes[k] < tau for probes in subjects)
        )
    return min(sum(1 for d in probes[:attempts] if d < tau) for probes in subjects)


def map_matrix(
    cset: MorphComparisonSet,
    thresholds: Mapping[str, float],
    attempts: int = 4,
    paired: bool = False,
) -> MapMatrix:
    """Entry (i, j): fraction of morphs with >= i successful attempts on >= j FRSs."""
    cset.validate()
    frs_ids = cset.frs_ids
    morph_ids = cset.morph_ids
    if attempts < 1:
        raise DataError("attempts must be >= 1")
    for frs_id in frs_ids:
        if frs_id not in thresholds:
            raise DataError(f"missing threshold for FRS {frs_id!r}")
        if set(cset.scores[frs_id]) != set(morph_ids):
            raise DataError(f"FRS {frs_id!r} does not score every morph")
    counts = np.empty((len(morph_ids), len(frs_ids)), dtype=np.int64)
    for fi, frs_id in enumerate(frs_ids):
        tau = thresholds[frs_id]
        for mi, morph_id in enumerate(morph_ids):
            counts[mi, fi] = _success_counts(
                cset.scores[frs_id][morph_id], tau, attempts, paired
            )
    values = np.empty((attempts, len(frs_ids)), dtype=np.float64)
    for i in range(1, attempts + 1):
        systems_ok = (counts >= i).sum(axis=1)
        for j in range(1, len(frs_ids) + 1):
            values[i - 1, j - 1] = float(np.mean(systems_ok >= j))
    return MapMatrix(values, attempts, frs_ids)


def default_map_weights(attempts: int, n_systems: int) -> np.ndarray:
    """w(i, j) = i*j: later attempts and broader system coverage weigh more."""
    i = np.arange(1, attempts + 1, dtype=np.float64)[:, None]
    j = np.arange(1, n_systems + 1, dtype=np.float64)[None, :]
    return i * j


def map_avg(map_values: np.ndarray, weights: np.ndarray | None = None) -> float:
    """Weighted average reducing a MAP matrix to one scalar."""
    values = np.asarray(map_values, dtype=np.float64)
    if weights is None:
        weights = default_map_weights(*values.shape)
    weights = np.asarray(weights, dtype=np.float64)
    if weights.shape != values.shape:
        raise DataError(
            f"weight shape {weights.shape} does not match MAP shape {values.shape}"
        )
    if np.any(weights < 0):
        raise DataError("weights must be non-negative")
    total = weights.sum()
    if total <= 0:
        raise DataError("weight sum must be positive")
    return float((weights * values).sum() / total)


def rank_average(table: Sequence[Sequence[float]]) -> list[float]:
    """Convert each row to ranks 1..C (ascending, ties averaged) and average per column."""
    rows = [list(map(float, row)) for row in table]
    if not rows:
        raise DataError("rank_average needs at least one row")
    width = len(rows[0])
    if any(len(row) != width for row in rows):
        raise DataError("rank_average needs a rectangular table")
    sums = [0.0] * width
    for row in rows:
        order = sorted(range(width), key=lambda c: row[c])
        i = 0
        while i < width:
            j = i
            while j + 1 < width and row[order[j + 1]] == row[order[i]]:
                j += 1
            mean_rank = (i + j) / 2.0 + 1.0
            for k in range(i, j + 1):
                sums[order[k]] += mean_rank
            i = j + 1
    return [s / len(rows) for s in sums]


def ecdf_points(scores: Sequence[float]) -> list[tuple[float, float]]:
    """Empirical CDF: distinct sorted scores with the fraction of scores <= each."""
    arr = np.asarray(scores, dtype=np.float64)
    if arr.size == 0:
        raise DataError("empty score set")
    values, counts = np.unique(arr, return_counts=True)
    fractions = np.cumsum(counts) / arr.size
    return [(float(v), float(f)) for v, f in zip(values, fractions)]
