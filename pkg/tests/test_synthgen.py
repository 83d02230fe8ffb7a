import numpy as np
import pytest

from morphkit import (
    DataError,
    SynthConfig,
    cosine_distance,
    generate_morph_embedding,
    generate_population,
    mated_scores,
    nonmated_scores,
)


def test_config_validation():
    with pytest.raises(DataError):
        SynthConfig(n_subjects=1).validate()
    with pytest.raises(DataError):
        SynthConfig(dim=1).validate()
    with pytest.raises(DataError):
        SynthConfig(quality_min=1.5, quality_max=1.0).validate()
    with pytest.raises(DataError):
        SynthConfig(age_min=50, age_max=40).validate()
    SynthConfig().validate()


def test_minimal_population():
    records = generate_population(SynthConfig(n_subjects=2, samples_per_subject=1, dim=4, seed=0))
    assert len(records) == 2
    assert len({r.subject_id for r in records}) == 2


def test_zero_noise_collapses_subjects():
    cfg = SynthConfig(n_subjects=3, samples_per_subject=4, dim=8,
                      intra_class_noise=0.0, seed=2)
    records = generate_population(cfg)
    for score in mated_scores(records):
        assert score.score <= 1e-12


def test_magnitudes_span_quality_range():
    cfg = SynthConfig(n_subjects=20, samples_per_subject=5, dim=8,
                      quality_min=0.5, quality_max=2.0, seed=3)
    norms = [np.linalg.norm(r.embedding) for r in generate_population(cfg)]
    assert min(norms) >= 0.5 and max(norms) <= 2.0
    # degenerate range pins the norm exactly (the q=1 boundary made exact)
    flat = SynthConfig(n_subjects=3, samples_per_subject=2, dim=4,
                       quality_min=1.3, quality_max=1.3, seed=1)
    for r in generate_population(flat):
        assert np.linalg.norm(r.embedding) == pytest.approx(1.3)


def test_bit_identical_per_seed():
    cfg = SynthConfig(n_subjects=5, samples_per_subject=3, dim=8, seed=7)
    assert generate_population(cfg) == generate_population(cfg)
    other = generate_population(SynthConfig(n_subjects=5, samples_per_subject=3, dim=8, seed=8))
    assert generate_population(cfg) != other


def test_within_subject_tighter_than_cross():
    cfg = SynthConfig(n_subjects=40, samples_per_subject=4, dim=32, seed=5)
    records = generate_population(cfg)
    within = np.median([s.score for s in mated_scores(records)])
    cross = np.median([s.score for s in nonmated_scores(records, 500, seed=1)])
    assert within < cross


def test_morph_identical_parents():
    e = np.array([0.0, 2.0, 0.0])
    morph = generate_morph_embedding(e, e, noise=0.0)
    assert cosine_distance(morph, e) == 0.0
    assert np.linalg.norm(morph) == pytest.approx(2.0)


def test_morph_orthogonal_parents():
    a = np.array([1.0, 0.0])
    b = np.array([0.0, 1.0])
    morph = generate_morph_embedding(a, b, noise=0.0)
    expected = 1.0 - 1.0 / np.sqrt(2.0)
    assert cosine_distance(morph, a) == pytest.approx(expected, abs=1e-12)
    assert cosine_distance(morph, b) == pytest.approx(expected, abs=1e-12)


def test_morph_antipodal_parents_rejected():
    with pytest.raises(DataError, match="antipodal"):
        generate_morph_embedding(np.array([1.0, 0.0]), np.array([-1.0, 0.0]))


def test_morph_magnitude_is_parent_mean():
    rng = np.random.default_rng(0)
    a = 0.9 * _unit(rng.normal(size=6))
    b = 1.5 * _unit(rng.normal(size=6))
    morph = generate_morph_embedding(a, b, noise=0.0)
    assert np.linalg.norm(morph) == pytest.approx(1.2)


def test_morph_closer_to_parents_than_strangers():
    rng = np.random.default_rng(9)
    for seed in range(5):
        a = _unit(rng.normal(size=16))
        b = _unit(rng.normal(size=16))
        stranger = _unit(rng.normal(size=16))
        morph = generate_morph_embedding(a, b, noise=0.0)
        d_parents = max(cosine_distance(morph, a), cosine_distance(morph, b))
        assert d_parents <= cosine_distance(a, b) + 1e-12
        assert d_parents < cosine_distance(stranger, a) or d_parents < cosine_distance(
            stranger, b
        )


def test_morph_noise_deterministic():
    a = np.array([1.0, 0.0, 0.0])
    b = np.array([0.0, 1.0, 0.0])
    m1 = generate_morph_embedding(a, b, noise=0.2, seed=4)
    m2 = generate_morph_embedding(a, b, noise=0.2, seed=4)
    assert np.array_equal(m1, m2)
    m3 = generate_morph_embedding(a, b, noise=0.2, seed=5)
    assert not np.array_equal(m1, m3)


def _unit(v):
    return v / np.linalg.norm(v)
