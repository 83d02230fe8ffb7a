"""Embedding-space toolkit for face-morphing attack experiments.

Operates purely on pre-extracted embedding vectors: greedy morph-pair
pre-selection, decision-threshold calibration, vulnerability metrics
(match-rate family and the attack-potential matrix), and a differential
morph detector trained from scratch.
"""

__version__ = "0.1.0"

from .calibration import (
    CalibrationResult,
    calibrate,
    det_curve,
    fmr_at_threshold,
    fnmr_at_threshold,
    threshold_at_fmr,
)
from .dataset import (
    EmbeddingRecord,
    MorphEmbedding,
    SubjectRoleSplit,
    filter_min_samples,
    load_dataset,
    load_morphs,
    morph_sources,
    save_dataset,
    save_morphs,
    split_roles,
)
from .dmad import (
    DmadModel,
    Standardizer,
    TrainingSplit,
    apply_standardizer,
    bpcer,
    bpcer_at_macer,
    build_training_sets,
    decision_function,
    differential,
    dmad_det,
    fit_standardizer,
    load_model,
    macer,
    save_model,
    train_dmad,
    train_svm,
)
from .errors import DataError, MorphkitError
from .pairing import (
    MorphPair,
    SubjectMeta,
    demographic_ok,
    random_pairs,
    select_pairs,
    subject_metadata,
)
from .similarity import (
    ScoreMatrix,
    ScoreSample,
    build_score_matrix,
    cosine_distance,
    mated_scores,
    nonmated_scores,
    sample_subjects,
)
from .synthgen import SynthConfig, generate_morph_embedding, generate_population
from .vulnerability import (
    MapMatrix,
    MorphComparisonSet,
    default_map_weights,
    ecdf_points,
    map_avg,
    map_matrix,
    mmpmr,
    prod_avg_mmpmr,
    rank_average,
    rmmr,
)
