"""Morph pair pre-selection: greedy minimum-distance pairing and a random baseline.

Both variants enforce demographic consistency (equal gender and ethnicity,
bounded age gap) and use each subject at most once.  On a demographic
rejection only the offending pair is excluded; both subjects stay available
for other pairings.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .dataset import EmbeddingRecord, morph_sources
from .errors import DataError
from .similarity import ScoreMatrix

EMBEDDING = "embedding"
RANDOM = "random"


@dataclass(frozen=True)
class SubjectMeta:
    age: int
    gender: str
    ethnicity: str


@dataclass(frozen=True)
class MorphPair:
    subject_a: str
    subject_b: str
    distance: float | None
    selection_method: str


def demographic_ok(a: SubjectMeta, b: SubjectMeta, max_age_gap: int = 5) -> bool:
    """True iff the age gap is within bounds (inclusive) and gender/ethnicity match exactly."""
    return (
        abs(a.age - b.age) <= max_age_gap
        and a.gender == b.gender
        and a.ethnicity == b.ethnicity
    )


def subject_metadata(records: Sequence[EmbeddingRecord]) -> dict[str, SubjectMeta]:
    """Demographics per subject, taken from the sample used for morphing."""
    return {
        rec.subject_id: SubjectMeta(rec.age, rec.gender, rec.ethnicity)
        for rec in morph_sources(records)
    }


def select_pairs(
    matrix: ScoreMatrix,
    metadata: Mapping[str, SubjectMeta],
    max_age_gap: int = 5,
) -> list[MorphPair]:
    """Greedy pairing: repeatedly take the global minimum distance of the live matrix.

    When the argmin pair passes the demographic check, both subjects are
    removed from further pairing (all their cells are masked); otherwise only
    that cell is masked.  Ties resolve to the smallest (row, column) index in
    row-major order.  Stops when no unmasked finite value remains.
    """
    ids = matrix.subject_ids
    missing = [s for s in ids if s not in metadata]
    if missing:
        raise DataError(f"metadata missing for subjects: {missing[:5]}")
    work = matrix.values.copy()
    n = work.shape[0]
    pairs: list[MorphPair] = []
    while not np.all(np.isnan(work)):
        flat = int(np.nanargmin(work))
        i, j = divmod(flat, n)
        if demographic_ok(metadata[ids[i]], metadata[ids[j]], max_age_gap):
            pairs.append(MorphPair(ids[i], ids[j], float(work[i, j]), EMBEDDING))
            work[i, :] = np.nan
            work[:, i] = np.nan
            work[j, :] = np.nan
            work[:, j] = np.nan
        else:
            work[i, j] = np.nan
    return pairs


def random_pairs(
    metadata: Mapping[str, SubjectMeta],
    max_age_gap: int = 5,
    seed: int = 0,
) -> list[MorphPair]:
    """Random baseline: draw candidate pairs uniformly instead of by argmin.

    Mirrors the greedy loop's exclusion rules; iterates over unordered pairs
    of still-unpaired subjects (sorted id order defines the index space) and
    is deterministic for a fixed seed.
    """
    ids = sorted(metadata)
    n = len(ids)
    if n < 2:
        return []
    ia, jb = np.triu_indices(n, k=1)
    alive = np.ones(ia.shape[0], dtype=bool)
    active = np.ones(n, dtype=bool)
    rng = np.random.default_rng(seed)
    pairs: list[MorphPair] = []
    while True:
        candidates = np.flatnonzero(alive & active[ia] & active[jb])
        if candidates.size == 0:
            break
        k = int(candidates[rng.integers(candidates.size)])
        a, b = ids[ia[k]], ids[jb[k]]
        if demographic_ok(metadata[a], metadata[b], max_age_gap):
            pairs.append(MorphPair(a, b, None, RANDOM))
            active[ia[k]] = False
            active[jb[k]] = False
        else:
            alive[k] = False
    return pairs
