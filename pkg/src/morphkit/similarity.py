"""Cosine distances, pairwise score matrices, and comparison score sets.

All distances are computed in 64-bit floating point.  Random sampling uses
numpy's seeded PCG64 generator so results are reproducible bit-for-bit for a
fixed seed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .dataset import EmbeddingRecord, group_by_subject, sample_sort_key
from .errors import DataError

MATED = "mated"
NONMATED = "non-mated"
MATED_MORPH = "mated-morph"


@dataclass(frozen=True)
class ScoreSample:
    """One labeled comparison score between two identified samples."""

    label: str
    score: float
    id_a: str
    id_b: str


@dataclass
class ScoreMatrix:
    """Upper-triangular pairwise distance matrix; diagonal and lower half are NaN."""

    subject_ids: list[str]
    values: np.ndarray

    @property
    def size(self) -> int:
        return len(self.subject_ids)


def cosine_distance(e1: np.ndarray, e2: np.ndarray) -> float:
    """d = 1 - e1.e2 / (|e1||e2|), clipped to [0, 2]."""
    a = np.asarray(e1, dtype=np.float64)
    b = np.asarray(e2, dtype=np.float64)
    if a.shape != b.shape or a.ndim != 1:
        raise DataError(f"dimension mismatch: {a.shape} vs {b.shape}")
    na = float(np.linalg.norm(a))
    nb = float(np.linalg.norm(b))
    if na == 0.0 or nb == 0.0:
        raise DataError("cosine distance undefined for a zero-norm vector")
    d = 1.0 - float(np.dot(a, b)) / (na * nb)
    return min(max(d, 0.0), 2.0)


def _unit_rows(embeddings: np.ndarray, what: str) -> np.ndarray:
    norms = np.linalg.norm(embeddings, axis=1)
    if np.any(norms == 0.0):
        raise DataError(f"zero-norm embedding in {what}")
    return embeddings / norms[:, None]


def build_score_matrix(sources: Sequence[EmbeddingRecord]) -> ScoreMatrix:
    """Pairwise cosine distances between one embedding per subject.

    Only the upper triangle is populated; the diagonal and lower half stay
    masked since the metric is symmetric and self-comparisons are excluded.
    """
    if len(sources) < 2:
        raise DataError("score matrix needs at least 2 subjects")
    ids = [rec.subject_id for rec in sources]
    if len(set(ids)) != len(ids):
        raise DataError("score matrix input must contain one record per subject")
    units = _unit_rows(
        np.stack([rec.embedding for rec in sources]).astype(np.float64), "score matrix"
    )
    values = 1.0 - units @ units.T
    np.clip(values, 0.0, 2.0, out=values)
    values[np.tril_indices(len(ids))] = np.nan
    return ScoreMatrix(ids, values)


def mated_scores(records: Sequence[EmbeddingRecord]) -> list[ScoreSample]:
    """All within-subject sample pair distances; subjects with <2 samples contribute nothing."""
    out: list[ScoreSample] = []
    for subject_id, samples in group_by_subject(records).items():
        ordered = sorted(samples, key=sample_sort_key)
        for i in range(len(ordered)):
            for j in range(i + 1, len(ordered)):
                score = cosine_distance(ordered[i].embedding, ordered[j].embedding)
                out.append(
                    ScoreSample(
                        MATED,
                        score,
                        f"{subject_id}:{ordered[i].sample_id}",
                        f"{subject_id}:{ordered[j].sample_id}",
                    )
                )
    return out


def nonmated_scores(
    records: Sequence[EmbeddingRecord], count: int, seed: int
) -> list[ScoreSample]:
    """Uniform sample, without replacement, of cross-subject sample pair distances."""
    if count < 0:
        raise DataError("count must be non-negative")
    recs = list(records)
    n = len(recs)
    if len({r.subject_id for r in recs}) < 2:
        raise DataError("non-mated sampling needs at least 2 subjects")
    subj_codes = np.asarray(_subject_codes(recs), dtype=np.int64)
    ii, jj = np.triu_indices(n, k=1)
    cross = subj_codes[ii] != subj_codes[jj]
    ii, jj = ii[cross], jj[cross]
    population = ii.shape[0]
    if count > population:
        raise DataError(
            f"requested {count} non-mated pairs but only {population} exist"
        )
    rng = np.random.default_rng(seed)
    picked = rng.choice(population, size=count, replace=False)
    units = _unit_rows(
        np.stack([r.embedding for r in recs]).astype(np.float64), "non-mated sampling"
    )
    scores = 1.0 - np.einsum("ij,ij->i", units[ii[picked]], units[jj[picked]])
    np.clip(scores, 0.0, 2.0, out=scores)
    out = []
    for k, s in zip(picked, scores):
        a, b = recs[ii[k]], recs[jj[k]]
        out.append(
            ScoreSample(
                NONMATED,
                float(s),
                f"{a.subject_id}:{a.sample_id}",
                f"{b.subject_id}:{b.sample_id}",
            )
        )
    return out


def _subject_codes(recs: Sequence[EmbeddingRecord]) -> list[int]:
    codes: dict[str, int] = {}
    out = []
    for r in recs:
        out.append(codes.setdefault(r.subject_id, len(codes)))
    return out


def sample_subjects(
    records: Sequence[EmbeddingRecord], count: int, seed: int
) -> list[EmbeddingRecord]:
    """Keep the records of ``count`` subjects, drawn uniformly over sorted subject ids.

    If ``count`` covers all subjects the input is returned unchanged (no
    sampling), mirroring calibration on the full population.
    """
    subject_ids = sorted({r.subject_id for r in records})
    if count >= len(subject_ids):
        return list(records)
    if count < 1:
        raise DataError("subset size must be >= 1")
    rng = np.random.default_rng(seed)
    chosen = set(rng.choice(np.asarray(subject_ids, dtype=object), size=count, replace=False))
    return [r for r in records if r.subject_id in chosen]
