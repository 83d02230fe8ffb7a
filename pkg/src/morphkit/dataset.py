"""Embedding dataset ingestion, validation, curation, and role splitting.

The on-disk format is UTF-8 JSON Lines: one record per line, each a single
JSON object with the exact field names of :class:`EmbeddingRecord`.  Lines
starting with ``#`` are metadata comments and are skipped on read.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import DataError

RECORD_FIELDS = (
    "subject_id",
    "sample_id",
    "capture_index",
    "age",
    "gender",
    "ethnicity",
    "embedding",
)

MORPH_FIELDS = ("morph_id", "subject_a", "subject_b", "embedding")


@dataclass(frozen=True, eq=False)
class EmbeddingRecord:
    """One face sample: identity, chronology, demographics, embedding vector."""

    subject_id: str
    sample_id: str
    capture_index: int
    age: int
    gender: str
    ethnicity: str
    embedding: np.ndarray

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EmbeddingRecord):
            return NotImplemented
        return (
            self.subject_id == other.subject_id
            and self.sample_id == other.sample_id
            and self.capture_index == other.capture_index
            and self.age == other.age
            and self.gender == other.gender
            and self.ethnicity == other.ethnicity
            and np.array_equal(self.embedding, other.embedding)
        )

    @property
    def dim(self) -> int:
        return int(self.embedding.shape[0])

    def to_json_obj(self) -> dict:
        return {
            "subject_id": self.subject_id,
            "sample_id": self.sample_id,
            "capture_index": self.capture_index,
            "age": self.age,
            "gender": self.gender,
            "ethnicity": self.ethnicity,
            "embedding": [float(x) for x in self.embedding],
        }


@dataclass(frozen=True, eq=False)
class MorphEmbedding:
    """A morphed reference embedding and the two subjects that contributed."""

    morph_id: str
    subject_a: str
    subject_b: str
    embedding: np.ndarray

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MorphEmbedding):
            return NotImplemented
        return (
            self.morph_id == other.morph_id
            and self.subject_a == other.subject_a
            and self.subject_b == other.subject_b
            and np.array_equal(self.embedding, other.embedding)
        )

    def to_json_obj(self) -> dict:
        return {
            "morph_id": self.morph_id,
            "subject_a": self.subject_a,
            "subject_b": self.subject_b,
            "embedding": [float(x) for x in self.embedding],
        }


@dataclass(frozen=True)
class SubjectRoleSplit:
    """Per subject: the single sample reserved for morphing and the probe samples."""

    subject_id: str
    morph_source: EmbeddingRecord
    probes: tuple[EmbeddingRecord, ...]


def _require_str(obj: dict, key: str, where: str) -> str:
    value = obj.get(key)
    if not isinstance(value, str):
        raise DataError(f"{where}: field '{key}' must be a string")
    return value


def _require_int(obj: dict, key: str, where: str, minimum: int | None = None) -> int:
    value = obj.get(key)
    if isinstance(value, bool) or not isinstance(value, int):
        raise DataError(f"{where}: field '{key}' must be an integer")
    if minimum is not None and value < minimum:
        raise DataError(f"{where}: field '{key}' must be >= {minimum}")
    return value


def _parse_embedding(obj: dict, where: str, expected_dim: int | None) -> np.ndarray:
    raw = obj.get("embedding")
    if not isinstance(raw, list) or not raw:
        raise DataError(f"{where}: field 'embedding' must be a non-empty array")
    for x in raw:
        if isinstance(x, bool) or not isinstance(x, (int, float)):
            raise DataError(f"{where}: embedding entries must be numbers")
        if not math.isfinite(x):
            raise DataError(f"{where}: embedding contains a non-finite value")
    if expected_dim is not None and len(raw) != expected_dim:
        raise DataError(
            f"{where}: embedding has dimension {len(raw)}, expected {expected_dim}"
        )
    return np.asarray(raw, dtype=np.float64)


def _iter_json_lines(path: str | Path) -> Iterable[tuple[int, dict]]:
    path = Path(path)
    if not path.exists():
        raise DataError(f"input file not found: {path}")
    with path.open("r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            try:
                obj = json.loads(stripped)
            except json.JSONDecodeError as exc:
                raise DataError(f"{path}:{lineno}: malformed JSON ({exc.msg})") from exc
            if not isinstance(obj, dict):
                raise DataError(f"{path}:{lineno}: record must be a JSON object")
            yield lineno, obj


def load_dataset(path: str | Path, expected_dim: int | None = None) -> list[EmbeddingRecord]:
    """Parse an embedding JSONL file, enforcing all record invariants.

    ``expected_dim`` declares the dataset-wide dimension D; if ``None`` it is
    taken from the first record and then enforced for the rest of the file.
    """
    records: list[EmbeddingRecord] = []
    seen: set[tuple[str, str]] = set()
    dim = expected_dim
    for lineno, obj in _iter_json_lines(path):
        where = f"{path}:{lineno}"
        missing = [k for k in RECORD_FIELDS if k not in obj]
        if missing:
            raise DataError(f"{where}: missing field(s): {', '.join(missing)}")
        subject_id = _require_str(obj, "subject_id", where)
        sample_id = _require_str(obj, "sample_id", where)
        capture_index = _require_int(obj, "capture_index", where, minimum=0)
        age = _require_int(obj, "age", where)
        gender = _require_str(obj, "gender", where)
        ethnicity = _require_str(obj, "ethnicity", where)
        embedding = _parse_embedding(obj, where, dim)
        if dim is None:
            dim = embedding.shape[0]
        key = (subject_id, sample_id)
        if key in seen:
            raise DataError(f"{where}: duplicate (subject_id, sample_id) = {key}")
        seen.add(key)
        records.append(
            EmbeddingRecord(
                subject_id, sample_id, capture_index, age, gender, ethnicity, embedding
            )
        )
    return records


def save_dataset(
    records: Iterable[EmbeddingRecord],
    path: str | Path,
    header_comment: str | None = None,
) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as fh:
        if header_comment is not None:
            fh.write(f"# {header_comment}\n")
        for rec in records:
            fh.write(json.dumps(rec.to_json_obj()) + "\n")


def load_morphs(path: str | Path, expected_dim: int | None = None) -> list[MorphEmbedding]:
    """Parse a morph-embedding JSONL file (morph_id, subject_a, subject_b, embedding)."""
    morphs: list[MorphEmbedding] = []
    seen: set[str] = set()
    dim = expected_dim
    for lineno, obj in _iter_json_lines(path):
        where = f"{path}:{lineno}"
        missing = [k for k in MORPH_FIELDS if k not in obj]
        if missing:
            raise DataError(f"{where}: missing field(s): {', '.join(missing)}")
        morph_id = _require_str(obj, "morph_id", where)
        subject_a = _require_str(obj, "subject_a", where)
        subject_b = _require_str(obj, "subject_b", where)
        embedding = _parse_embedding(obj, where, dim)
        if dim is None:
            dim = embedding.shape[0]
        if morph_id in seen:
            raise DataError(f"{where}: duplicate morph_id {morph_id!r}")
        seen.add(morph_id)
        morphs.append(MorphEmbedding(morph_id, subject_a, subject_b, embedding))
    return morphs


def save_morphs(
    morphs: Iterable[MorphEmbedding],
    path: str | Path,
    header_comment: str | None = None,
) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as fh:
        if header_comment is not None:
            fh.write(f"# {header_comment}\n")
        for morph in morphs:
            fh.write(json.dumps(morph.to_json_obj()) + "\n")


def group_by_subject(records: Iterable[EmbeddingRecord]) -> dict[str, list[EmbeddingRecord]]:
    """Group records by subject, preserving first-appearance subject order."""
    groups: dict[str, list[EmbeddingRecord]] = {}
    for rec in records:
        groups.setdefault(rec.subject_id, []).append(rec)
    return groups


def filter_min_samples(
    records: Sequence[EmbeddingRecord], min_samples: int = 5
) -> list[EmbeddingRecord]:
    """Drop every subject with fewer than ``min_samples`` samples."""
    if min_samples < 1:
        raise DataError("min_samples must be >= 1")
    counts: dict[str, int] = {}
    for rec in records:
        counts[rec.subject_id] = counts.get(rec.subject_id, 0) + 1
    return [rec for rec in records if counts[rec.subject_id] >= min_samples]


def sample_sort_key(rec: EmbeddingRecord) -> tuple[int, str]:
    # chronological order; capture_index ties broken by sample_id
    return (rec.capture_index, rec.sample_id)


def split_roles(records: Sequence[EmbeddingRecord]) -> list[SubjectRoleSplit]:
    """Assign per subject the first capture to morphing and the rest to probing."""
    splits: list[SubjectRoleSplit] = []
    for subject_id, samples in group_by_subject(records).items():
        if len(samples) < 2:
            raise DataError(
                f"subject {subject_id!r} has a single sample; cannot split roles"
            )
        ordered = sorted(samples, key=sample_sort_key)
        splits.append(SubjectRoleSplit(subject_id, ordered[0], tuple(ordered[1:])))
    return splits


def morph_sources(records: Sequence[EmbeddingRecord]) -> list[EmbeddingRecord]:
    """One record per subject: the sample that would be used for morphing."""
    sources: list[EmbeddingRecord] = []
    for samples in group_by_subject(records).values():
        sources.append(min(samples, key=sample_sort_key))
    return sources
