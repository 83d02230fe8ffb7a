"""Differential morphing attack detection.

Classifies the difference between a suspect (document) embedding and a
trusted probe embedding.  Differential features are standardized per
dimension and fed to a soft-margin SVM with an RBF kernel, trained from
scratch with sequential minimal optimization.  Decision scores are oriented
so that larger means more morph-like.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .dataset import EmbeddingRecord, MorphEmbedding, group_by_subject, sample_sort_key
from .errors import DataError

BONA_FIDE_LABEL = -1
MORPH_LABEL = 1

MODEL_FORMAT = "morphkit-dmad-model"
MODEL_VERSION = 1


def differential(document_embedding: np.ndarray, probe_embedding: np.ndarray) -> np.ndarray:
    """Element-wise document minus probe."""
    doc = np.asarray(document_embedding, dtype=np.float64)
    probe = np.asarray(probe_embedding, dtype=np.float64)
    if doc.shape != probe.shape:
        raise DataError(f"dimension mismatch: {doc.shape} vs {probe.shape}")
    return doc - probe


@dataclass
class Standardizer:
    """Per-dimension shift/scale fitted on training data.

    Dimensions with zero variance get a unit scale and are flagged in
    ``degenerate`` so they map to exactly zero after transformation.
    """

    mean: np.ndarray
    std: np.ndarray
    degenerate: np.ndarray

    @property
    def dim(self) -> int:
        return int(self.mean.shape[0])


def fit_standardizer(features: np.ndarray) -> Standardizer:
    x = np.asarray(features, dtype=np.float64)
    if x.ndim != 2 or x.shape[0] < 2:
        raise DataError("standardizer needs a 2-D array with at least 2 rows")
    mean = x.mean(axis=0)
    std = x.std(axis=0)  # population std
    degenerate = std == 0.0
    std = np.where(degenerate, 1.0, std)
    return Standardizer(mean, std, degenerate)


def apply_standardizer(standardizer: Standardizer, features: np.ndarray) -> np.ndarray:
    x = np.atleast_2d(np.asarray(features, dtype=np.float64))
    if x.shape[1] != standardizer.dim:
        raise DataError(
            f"feature dimension {x.shape[1]} does not match fitted dimension {standardizer.dim}"
        )
    return (x - standardizer.mean) / standardizer.std


def _identity_standardizer(dim: int) -> Standardizer:
    return Standardizer(
        np.zeros(dim), np.ones(dim), np.zeros(dim, dtype=bool)
    )


def rbf_kernel(x: np.ndarray, z: np.ndarray, gamma: float) -> np.ndarray:
    """k(x, z) = exp(-gamma * ||x - z||^2), row-wise between two 2-D arrays."""
    x = np.atleast_2d(np.asarray(x, dtype=np.float64))
    z = np.atleast_2d(np.asarray(z, dtype=np.float64))
    sq = (
        np.sum(x * x, axis=1)[:, None]
        + np.sum(z * z, axis=1)[None, :]
        - 2.0 * (x @ z.T)
    )
    np.maximum(sq, 0.0, out=sq)
    return np.exp(-gamma * sq)


@dataclass
class DmadModel:
    """Fitted detector: standardizer plus the dual SVM solution."""

    standardizer: Standardizer
    support_vectors: np.ndarray
    dual_coef: np.ndarray  # alpha_i * y_i per support vector
    bias: float
    gamma: float
    c: float
    tol: float
    converged: bool
    kkt_max_violation: float
    n_sweeps: int

    @property
    def dim(self) -> int:
        return int(self.support_vectors.shape[1])


def decision_function(model: DmadModel, features: np.ndarray) -> np.ndarray:
    """Raw decision scores for unstandardized differential features."""
    x = apply_standardizer(model.standardizer, features)
    k = rbf_kernel(x, model.support_vectors, model.gamma)
    return k @ model.dual_coef + model.bias


def default_gamma(features: np.ndarray) -> float:
    """1 / (D * mean per-dimension variance); falls back to 1/D for constant data."""
    x = np.asarray(features, dtype=np.float64)
    mean_var = float(x.var(axis=0).mean())
    d = x.shape[1]
    if mean_var <= 0.0:
        return 1.0 / d
    return 1.0 / (d * mean_var)


def kkt_violation(
    alphas: np.ndarray, labels: np.ndarray, decisions: np.ndarray, c: float
) -> float:
    """Largest violation of the dual box/margin conditions over all points.

    For alpha < C the margin y*f(x) must reach at least 1; for alpha > 0 it
    must not exceed 1.  Free vectors are checked on both sides.
    """
    margins = labels * decisions
    eps = 1e-10 * max(1.0, c)
    below = np.where(alphas < c - eps, 1.0 - margins, -np.inf)
    above = np.where(alphas > eps, margins - 1.0, -np.inf)
    return max(0.0, float(np.maximum(below, above).max()))


class _SmoState:
    """Working state for Platt's SMO over a precomputed kernel matrix."""

    def __init__(self, kernel: np.ndarray, labels: np.ndarray, c: float, tol: float):
        self.k = kernel
        self.y = labels.astype(np.float64)
        self.c = c
        self.tol = tol
        self.n = labels.shape[0]
        self.alphas = np.zeros(self.n)
        self.bias = 0.0
        self.errors = -self.y.copy()  # f(x) = 0 initially

    def decisions(self) -> np.ndarray:
        return self.k @ (self.alphas * self.y) + self.bias

    def refresh_errors(self) -> None:
        self.errors = self.decisions() - self.y

    def take_step(self, i1: int, i2: int) -> bool:
        if i1 == i2:
            return False
        a1_old, a2_old = self.alphas[i1], self.alphas[i2]
        y1, y2 = self.y[i1], self.y[i2]
        e1, e2 = self.errors[i1], self.errors[i2]
        s = y1 * y2
        if s < 0:
            low = max(0.0, a2_old - a1_old)
            high = min(self.c, self.c + a2_old - a1_old)
        else:
            low = max(0.0, a1_old + a2_old - self.c)
            high = min(self.c, a1_old + a2_old)
        if low >= high:
            return False
        k11, k12, k22 = self.k[i1, i1], self.k[i1, i2], self.k[i2, i2]
        eta = k11 + k22 - 2.0 * k12
        if eta > 0.0:
            a2 = a2_old + y2 * (e1 - e2) / eta
            a2 = min(max(a2, low), high)
        else:
            # flat direction (duplicate points): evaluate the dual objective at both clip ends
            v1 = e1 + y1 - self.bias - y1 * a1_old * k11 - y2 * a2_old * k12
            v2 = e2 + y2 - self.bias - y1 * a1_old * k12 - y2 * a2_old * k22

            def _objective(a2c: float) -> float:
                a1c = a1_old + s * (a2_old - a2c)
                return (
                    0.5 * k11 * a1c * a1c
                    + 0.5 * k22 * a2c * a2c
                    + s * k12 * a1c * a2c
                    + y1 * a1c * v1
                    + y2 * a2c * v2
                    - a1c
                    - a2c
                )

            obj_low, obj_high = _objective(low), _objective(high)
            if obj_low < obj_high - 1e-12:
                a2 = low
            elif obj_high < obj_low - 1e-12:
                a2 = high
            else:
                return False
        if abs(a2 - a2_old) < 1e-12 * (a2 + a2_old + 1e-12):
            return False
        a1 = a1_old + s * (a2_old - a2)
        d1 = y1 * (a1 - a1_old)
        d2 = y2 * (a2 - a2_old)
        b1 = self.bias - e1 - d1 * k11 - d2 * k12
        b2 = self.bias - e2 - d1 * k12 - d2 * k22
        if 0.0 < a1 < self.c:
            new_bias = b1
        elif 0.0 < a2 < self.c:
            new_bias = b2
        else:
            new_bias = 0.5 * (b1 + b2)
        self.errors += d1 * self.k[i1] + d2 * self.k[i2] + (new_bias - self.bias)
        self.alphas[i1] = a1
        self.alphas[i2] = a2
        self.bias = new_bias
        return True

    def examine(self, i2: int, rng: np.random.Generator) -> int:
        y2 = self.y[i2]
        a2 = self.alphas[i2]
        r2 = self.errors[i2] * y2
        if not ((r2 < -self.tol and a2 < self.c) or (r2 > self.tol and a2 > 0.0)):
            return 0
        non_bound = np.flatnonzero((self.alphas > 0.0) & (self.alphas < self.c))
        if non_bound.size > 1:
            i1 = int(non_bound[np.argmax(np.abs(self.errors[non_bound] - self.errors[i2]))])
            if self.take_step(i1, i2):
                return 1
        if non_bound.size > 0:
            start = int(rng.integers(non_bound.size))
            for offset in range(non_bound.size):
                i1 = int(non_bound[(start + offset) % non_bound.size])
                if self.take_step(i1, i2):
                    return 1
        start = int(rng.integers(self.n))
        for offset in range(self.n):
            i1 = (start + offset) % self.n
            if self.take_step(i1, i2):
                return 1
        return 0


def train_svm(
    features: np.ndarray,
    labels: Sequence[int],
    c: float = 1.0,
    gamma: float | None = None,
    tol: float = 1e-3,
    max_iterations: int = 1000,
    seed: int = 0,
    standardizer: Standardizer | None = None,
) -> DmadModel:
    """Train the soft-margin RBF SVM with SMO.

    ``features`` are assumed to be standardized already; pass the fitted
    ``standardizer`` so the resulting model can score raw inputs (an identity
    standardizer is stored otherwise).  ``max_iterations`` bounds the number
    of optimization sweeps; a non-convergent run is returned with
    ``converged=False`` and a warning.
    """
    x = np.asarray(features, dtype=np.float64)
    y = np.asarray(labels, dtype=np.int64)
    if x.ndim != 2 or x.shape[0] != y.shape[0]:
        raise DataError("features must be 2-D and aligned with labels")
    classes = set(np.unique(y).tolist())
    if classes != {BONA_FIDE_LABEL, MORPH_LABEL}:
        raise DataError(f"labels must contain both classes -1 and +1, got {sorted(classes)}")
    if c <= 0:
        raise DataError("C must be positive")
    if gamma is None:
        gamma = default_gamma(x)
    if gamma <= 0:
        raise DataError("gamma must be positive")

    kernel = rbf_kernel(x, x, gamma)
    state = _SmoState(kernel, y, c, tol)
    rng = np.random.default_rng(seed)

    examine_all = True
    num_changed = 0
    sweeps = 0
    while (num_changed > 0 or examine_all) and sweeps < max_iterations:
        sweeps += 1
        num_changed = 0
        if examine_all:
            state.refresh_errors()  # incremental cache drifts; resync each full pass
            for i in range(state.n):
                num_changed += state.examine(i, rng)
        else:
            for i in np.flatnonzero((state.alphas > 0.0) & (state.alphas < c)):
                num_changed += state.examine(int(i), rng)
        if examine_all:
            examine_all = False
        elif num_changed == 0:
            examine_all = True

    decisions = state.decisions()
    violation = kkt_violation(state.alphas, state.y, decisions, c)
    converged = violation <= tol
    if not converged:
        warnings.warn(
            f"SMO stopped after {sweeps} sweeps with KKT violation {violation:.3g} > tol {tol:g}",
            RuntimeWarning,
        )

    support = state.alphas > 1e-12
    if not np.any(support):
        # degenerate but legal: decision is the constant bias
        support_vectors = np.zeros((0, x.shape[1]))
        dual_coef = np.zeros(0)
    else:
        support_vectors = x[support].copy()
        dual_coef = (state.alphas * state.y)[support]
    if standardizer is None:
        standardizer = _identity_standardizer(x.shape[1])
    return DmadModel(
        standardizer=standardizer,
        support_vectors=support_vectors,
        dual_coef=dual_coef,
        bias=float(state.bias),
        gamma=float(gamma),
        c=float(c),
        tol=float(tol),
        converged=converged,
        kkt_max_violation=float(violation),
        n_sweeps=sweeps,
    )


def macer(attack_scores: Sequence[float], threshold: float) -> float:
    """Fraction of attacks classified bona fide (score below the threshold)."""
    arr = np.asarray(attack_scores, dtype=np.float64)
    if arr.size == 0:
        raise DataError("empty attack score set")
    return float(np.mean(arr < threshold))


def bpcer(bona_fide_scores: Sequence[float], threshold: float) -> float:
    """Fraction of bona fide presentations classified as attacks (score >= threshold)."""
    arr = np.asarray(bona_fide_scores, dtype=np.float64)
    if arr.size == 0:
        raise DataError("empty bona fide score set")
    return float(np.mean(arr >= threshold))


def bpcer_at_macer(
    bona_fide_scores: Sequence[float],
    attack_scores: Sequence[float],
    macer_target: float,
) -> float:
    """BPCER at the highest threshold whose empirical MACER stays within target."""
    if not 0.0 < macer_target < 1.0:
        raise DataError("macer target must lie in (0, 1)")
    attacks = np.sort(np.asarray(attack_scores, dtype=np.float64))
    if attacks.size == 0:
        raise DataError("empty attack score set")
    # exact rational floor, so the empirical MACER never exceeds the target
    k = int(Fraction(macer_target) * attacks.size) + 1
    k = min(k, attacks.size)
    threshold = float(attacks[k - 1])
    return bpcer(bona_fide_scores, threshold)


def dmad_det(
    bona_fide_scores: Sequence[float], attack_scores: Sequence[float]
) -> list[tuple[float, float, float]]:
    """(macer, bpcer, threshold) swept over all distinct scores plus sentinels."""
    bona = np.sort(np.asarray(bona_fide_scores, dtype=np.float64))
    attacks = np.sort(np.asarray(attack_scores, dtype=np.float64))
    if bona.size == 0 or attacks.size == 0:
        raise DataError("empty score set")
    thresholds = np.unique(np.concatenate([bona, attacks]))
    thresholds = np.concatenate([[-np.inf], thresholds, [np.inf]])
    macer_vals = np.searchsorted(attacks, thresholds, side="left") / attacks.size
    bpcer_vals = (bona.size - np.searchsorted(bona, thresholds, side="left")) / bona.size
    return [
        (float(m), float(b), float(t))
        for m, b, t in zip(macer_vals, bpcer_vals, thresholds)
    ]


@dataclass
class TrainingSplit:
    """Differential features and labels, split subject-disjointly."""

    x_train: np.ndarray
    y_train: np.ndarray
    x_test: np.ndarray
    y_test: np.ndarray
    train_subjects: list[str]
    test_subjects: list[str]
    counts: dict[str, int] = field(default_factory=dict)


def _probe_record(samples: list[EmbeddingRecord]) -> EmbeddingRecord:
    ordered = sorted(samples, key=sample_sort_key)
    return ordered[1]


def _pair_components(
    morphs: Sequence[MorphEmbedding],
) -> list[list[str]]:
    """Connected components of subjects linked by shared morphs."""
    parent: dict[str, str] = {}

    def find(a: str) -> str:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for morph in morphs:
        for s in (morph.subject_a, morph.subject_b):
            parent.setdefault(s, s)
        ra, rb = find(morph.subject_a), find(morph.subject_b)
        if ra != rb:
            parent[ra] = rb
    groups: dict[str, list[str]] = {}
    for s in sorted(parent):
        groups.setdefault(find(s), []).append(s)
    return [groups[root] for root in sorted(groups)]


def build_training_sets(
    records: Sequence[EmbeddingRecord],
    morphs: Sequence[MorphEmbedding],
    split_fraction: float = 0.8,
    seed: int = 0,
    bona_fide_pairs_per_subject: int = 1,
) -> TrainingSplit:
    """Assemble differential features with a subject-disjoint train/test split.

    Morph differentials subtract one trusted probe embedding per contributing
    subject from the morph embedding (two attack samples per morph).  Bona
    fide differentials subtract consecutive captures of the same subject.
    Subjects linked by a morph always land on the same side of the split.
    """
    if not 0.0 < split_fraction < 1.0:
        raise DataError("split fraction must lie in (0, 1)")
    if bona_fide_pairs_per_subject < 1:
        raise DataError("bona_fide_pairs_per_subject must be >= 1")
    by_subject = {
        sid: sorted(samples, key=sample_sort_key)
        for sid, samples in group_by_subject(records).items()
    }
    eligible = [sid for sid, samples in by_subject.items() if len(samples) >= 2]
    if not eligible:
        raise DataError("no subject has the >= 2 samples needed for differentials")
    for morph in morphs:
        for sid in (morph.subject_a, morph.subject_b):
            if sid not in by_subject:
                raise DataError(f"morph {morph.morph_id!r} references unknown subject {sid!r}")
            if len(by_subject[sid]) < 2:
                raise DataError(
                    f"morph subject {sid!r} needs >= 2 samples (one must stay a trusted probe)"
                )

    rng = np.random.default_rng(seed)
    components = _pair_components(morphs)
    paired_subjects = {s for comp in components for s in comp}
    unpaired = [sid for sid in sorted(set(eligible) | paired_subjects) if sid not in paired_subjects]
    universe_size = len(paired_subjects) + len(unpaired)
    n_train_target = int(round(split_fraction * universe_size))

    # split the morph pairs themselves ~fraction/1-fraction (components stay
    # whole), then top up with unpaired subjects to hit the overall fraction
    train_subjects: set[str] = set()
    paired_train_target = int(round(split_fraction * len(paired_subjects)))
    order = rng.permutation(len(components))
    for idx in order:
        comp = components[int(idx)]
        if len(train_subjects) + len(comp) <= paired_train_target:
            train_subjects.update(comp)
    unpaired_order = rng.permutation(len(unpaired))
    for idx in unpaired_order:
        if len(train_subjects) >= n_train_target:
            break
        train_subjects.add(unpaired[int(idx)])
    all_subjects = sorted(paired_subjects | set(unpaired))
    test_subjects = [s for s in all_subjects if s not in train_subjects]

    def side(sid: str) -> str:
        return "train" if sid in train_subjects else "test"

    feats: dict[str, list[np.ndarray]] = {"train": [], "test": []}
    labels: dict[str, list[int]] = {"train": [], "test": []}
    counts = {"train_bona_fide": 0, "train_morph": 0, "test_bona_fide": 0, "test_morph": 0}

    for sid in sorted(eligible):
        samples = by_subject[sid]
        n_pairs = min(bona_fide_pairs_per_subject, len(samples) - 1)
        for i in range(n_pairs):
            diff = differential(samples[i].embedding, samples[i + 1].embedding)
            feats[side(sid)].append(diff)
            labels[side(sid)].append(BONA_FIDE_LABEL)
            counts[f"{side(sid)}_bona_fide"] += 1

    for morph in morphs:
        morph_side = side(morph.subject_a)
        if side(morph.subject_b) != morph_side:
            raise DataError(
                f"morph {morph.morph_id!r} straddles the subject split; components must be intact"
            )
        for sid in (morph.subject_a, morph.subject_b):
            probe = _probe_record(by_subject[sid])
            diff = differential(morph.embedding, probe.embedding)
            feats[morph_side].append(diff)
            labels[morph_side].append(MORPH_LABEL)
            counts[f"{morph_side}_morph"] += 1

    def stack(side_name: str) -> tuple[np.ndarray, np.ndarray]:
        if feats[side_name]:
            return np.stack(feats[side_name]), np.asarray(labels[side_name], dtype=np.int64)
        dim = next(iter(by_subject.values()))[0].embedding.shape[0]
        return np.zeros((0, dim)), np.zeros(0, dtype=np.int64)

    x_train, y_train = stack("train")
    x_test, y_test = stack("test")
    return TrainingSplit(
        x_train=x_train,
        y_train=y_train,
        x_test=x_test,
        y_test=y_test,
        train_subjects=sorted(train_subjects),
        test_subjects=test_subjects,
        counts=counts,
    )


def evaluation_features(
    records: Sequence[EmbeddingRecord],
    morphs: Sequence[MorphEmbedding],
    bona_fide_pairs_per_subject: int = 1,
) -> tuple[np.ndarray, np.ndarray, list[str]]:
    """Differential features for scoring (no split); returns (X, y, source ids)."""
    if bona_fide_pairs_per_subject < 1:
        raise DataError("bona_fide_pairs_per_subject must be >= 1")
    by_subject = {
        sid: sorted(samples, key=sample_sort_key)
        for sid, samples in group_by_subject(records).items()
    }
    feats: list[np.ndarray] = []
    labels: list[int] = []
    sources: list[str] = []
    for sid in sorted(by_subject):
        samples = by_subject[sid]
        if len(samples) < 2:
            continue
        n_pairs = min(bona_fide_pairs_per_subject, len(samples) - 1)
        for i in range(n_pairs):
            feats.append(differential(samples[i].embedding, samples[i + 1].embedding))
            labels.append(BONA_FIDE_LABEL)
            sources.append(f"bona-fide:{sid}:{i}")
    for morph in morphs:
        for slot, sid in ((1, morph.subject_a), (2, morph.subject_b)):
            if sid not in by_subject or len(by_subject[sid]) < 2:
                raise DataError(
                    f"morph {morph.morph_id!r} subject {sid!r} lacks a trusted probe sample"
                )
            probe = _probe_record(by_subject[sid])
            feats.append(differential(morph.embedding, probe.embedding))
            labels.append(MORPH_LABEL)
            sources.append(f"morph:{morph.morph_id}:{slot}")
    if not feats:
        raise DataError("no differential features could be built")
    return np.stack(feats), np.asarray(labels, dtype=np.int64), sources


def train_dmad(
    records: Sequence[EmbeddingRecord],
    morphs: Sequence[MorphEmbedding],
    c: float = 1.0,
    gamma: float | None = None,
    tol: float = 1e-3,
    max_iterations: int = 1000,
    seed: int = 0,
    split_fraction: float = 0.8,
    bona_fide_pairs_per_subject: int = 1,
) -> tuple[DmadModel, TrainingSplit]:
    """Full detector training: split, fit standardizer on train, run SMO."""
    split = build_training_sets(
        records,
        morphs,
        split_fraction=split_fraction,
        seed=seed,
        bona_fide_pairs_per_subject=bona_fide_pairs_per_subject,
    )
    if split.x_train.shape[0] < 2:
        raise DataError("insufficient training data after the split")
    standardizer = fit_standardizer(split.x_train)
    x_std = apply_standardizer(standardizer, split.x_train)
    model = train_svm(
        x_std,
        split.y_train,
        c=c,
        gamma=gamma,
        tol=tol,
        max_iterations=max_iterations,
        seed=seed,
        standardizer=standardizer,
    )
    return model, split


def save_model(model: DmadModel, path: str | Path, config: dict | None = None) -> None:
    """Persist the model as versioned, self-describing JSON."""
    payload = {
        "format": MODEL_FORMAT,
        "version": MODEL_VERSION,
        "dim": model.dim,
        "gamma": model.gamma,
        "C": model.c,
        "tol": model.tol,
        "bias": model.bias,
        "converged": model.converged,
        "kkt_max_violation": model.kkt_max_violation,
        "n_sweeps": model.n_sweeps,
        "standardizer": {
            "mean": model.standardizer.mean.tolist(),
            "std": model.standardizer.std.tolist(),
            "degenerate": model.standardizer.degenerate.astype(int).tolist(),
        },
        "support_vectors": model.support_vectors.tolist(),
        "dual_coef": model.dual_coef.tolist(),
    }
    if config is not None:
        payload["config"] = config
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def load_model(path: str | Path) -> DmadModel:
    path = Path(path)
    if not path.exists():
        raise DataError(f"model file not found: {path}")
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise DataError(f"{path}: not valid JSON ({exc.msg})") from exc
    if payload.get("format") != MODEL_FORMAT:
        raise DataError(f"{path}: unrecognized model format")
    if payload.get("version") != MODEL_VERSION:
        raise DataError(f"{path}: unsupported model version {payload.get('version')}")
    std = payload["standardizer"]
    standardizer = Standardizer(
        mean=np.asarray(std["mean"], dtype=np.float64),
        std=np.asarray(std["std"], dtype=np.float64),
        degenerate=np.asarray(std["degenerate"], dtype=bool),
    )
    support = np.asarray(payload["support_vectors"], dtype=np.float64)
    if support.size == 0:
        support = support.reshape(0, payload["dim"])
    return DmadModel(
        standardizer=standardizer,
        support_vectors=support,
        dual_coef=np.asarray(payload["dual_coef"], dtype=np.float64),
        bias=float(payload["bias"]),
        gamma=float(payload["gamma"]),
        c=float(payload["C"]),
        tol=float(payload["tol"]),
        converged=bool(payload["converged"]),
        kkt_max_violation=float(payload["kkt_max_violation"]),
        n_sweeps=int(payload["n_sweeps"]),
    )
