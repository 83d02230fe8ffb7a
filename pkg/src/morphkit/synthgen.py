"""Deterministic synthetic embedding populations for desk-scale pipeline runs.

Subjects are class centers drawn uniformly on the unit hypersphere; samples
scatter around their center with a configurable angular-noise proxy.  Sample
magnitude encodes a quality score linearly, emulating recognition models
whose embedding norm grows with image quality.  Everything is reproducible
bit-for-bit from the seed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .dataset import EmbeddingRecord
from .errors import DataError


@dataclass(frozen=True)
class SynthConfig:
    n_subjects: int = 200
    samples_per_subject: int = 5
    dim: int = 64
    intra_class_noise: float = 0.05
    quality_min: float = 0.8
    quality_max: float = 1.2
    n_genders: int = 2
    n_ethnicities: int = 3
    age_min: int = 20
    age_max: int = 59
    seed: int = 0

    def validate(self) -> None:
        if self.n_subjects < 2:
            raise DataError("n_subjects must be >= 2")
        if self.samples_per_subject < 1:
            raise DataError("samples_per_subject must be >= 1")
        if self.dim < 2:
            raise DataError("dim must be >= 2")
        if self.intra_class_noise < 0:
            raise DataError("intra_class_noise must be >= 0")
        if self.quality_min > self.quality_max or self.quality_min <= 0:
            raise DataError("quality range must satisfy 0 < quality_min <= quality_max")
        if self.n_genders < 1 or self.n_ethnicities < 1:
            raise DataError("demographic alphabet sizes must be >= 1")
        if self.age_min > self.age_max:
            raise DataError("age range must satisfy age_min <= age_max")


def _unit(v: np.ndarray) -> np.ndarray:
    norm = np.linalg.norm(v)
    if norm == 0.0:
        raise DataError("cannot normalize a zero vector")
    return v / norm


def generate_population(config: SynthConfig) -> list[EmbeddingRecord]:
    """Draw the full synthetic population from one seeded generator stream."""
    config.validate()
    rng = np.random.default_rng(config.seed)
    records: list[EmbeddingRecord] = []
    width = len(str(config.n_subjects - 1))
    for s in range(config.n_subjects):
        center = _unit(rng.standard_normal(config.dim))
        gender = f"g{int(rng.integers(config.n_genders))}"
        ethnicity = f"e{int(rng.integers(config.n_ethnicities))}"
        age = int(rng.integers(config.age_min, config.age_max + 1))
        subject_id = f"s{s:0{width}d}"
        for c in range(config.samples_per_subject):
            quality = float(rng.uniform())
            direction = _unit(
                center + config.intra_class_noise * rng.standard_normal(config.dim)
            )
            magnitude = config.quality_min + (config.quality_max - config.quality_min) * quality
            records.append(
                EmbeddingRecord(
                    subject_id=subject_id,
                    sample_id=f"{subject_id}_c{c:02d}",
                    capture_index=c,
                    age=age,
                    gender=gender,
                    ethnicity=ethnicity,
                    embedding=magnitude * direction,
                )
            )
    return records


def generate_morph_embedding(
    e_a: np.ndarray,
    e_b: np.ndarray,
    noise: float = 0.0,
    seed: int = 0,
) -> np.ndarray:
    """Spherical midpoint of two embeddings, optionally perturbed.

    The result points along the normalized sum of the parents' directions
    (plus optional seeded Gaussian noise, renormalized) and carries the mean
    of the parents' magnitudes.
    """
    a = np.asarray(e_a, dtype=np.float64)
    b = np.asarray(e_b, dtype=np.float64)
    if a.shape != b.shape or a.ndim != 1:
        raise DataError(f"dimension mismatch: {a.shape} vs {b.shape}")
    na, nb = np.linalg.norm(a), np.linalg.norm(b)
    if na == 0.0 or nb == 0.0:
        raise DataError("cannot morph a zero-norm embedding")
    midpoint = a / na + b / nb
    if np.linalg.norm(midpoint) < 1e-9:
        raise DataError("antipodal parents have no defined midpoint direction")
    direction = _unit(midpoint)
    if noise > 0.0:
        rng = np.random.default_rng(seed)
        direction = _unit(direction + noise * rng.standard_normal(a.shape[0]))
    return ((na + nb) / 2.0) * direction
