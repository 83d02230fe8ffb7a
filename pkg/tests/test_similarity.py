import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from morphkit import (
    DataError,
    EmbeddingRecord,
    build_score_matrix,
    cosine_distance,
    mated_scores,
    nonmated_scores,
    sample_subjects,
)
from morphkit.similarity import MATED, NONMATED

from oracles import score_matrix_oracle


def rec(subject, sample, emb, capture=0):
    return EmbeddingRecord(subject, sample, capture, 30, "g0", "e0",
                           np.asarray(emb, dtype=np.float64))


def test_cosine_identity():
    assert cosine_distance(np.array([1.0, 0.0]), np.array([1.0, 0.0])) == 0.0


def test_cosine_orthogonal():
    assert cosine_distance(np.array([1.0, 0.0]), np.array([0.0, 1.0])) == 1.0


def test_cosine_antipodal():
    assert cosine_distance(np.array([1.0, 0.0]), np.array([-1.0, 0.0])) == 2.0


def test_cosine_errors():
    with pytest.raises(DataError, match="zero-norm"):
        cosine_distance(np.zeros(3), np.ones(3))
    with pytest.raises(DataError, match="dimension mismatch"):
        cosine_distance(np.ones(3), np.ones(4))


finite_vec = st.lists(
    st.floats(min_value=-1e6, max_value=1e6, allow_nan=False), min_size=2, max_size=8
).filter(lambda v: sum(abs(x) for x in v) > 1e-3)


@given(finite_vec, st.floats(min_value=1e-3, max_value=1e3))
def test_cosine_scale_invariance(vec, c):
    x = np.asarray(vec)
    assert cosine_distance(x, c * x) <= 1e-9


@given(finite_vec, st.floats(min_value=1e-3, max_value=1e3))
def test_cosine_symmetry_and_range(vec, c):
    x = np.asarray(vec)
    y = np.roll(x, 1) + c
    if np.linalg.norm(y) < 1e-6:
        return
    d_xy = cosine_distance(x, y)
    assert d_xy == cosine_distance(y, x)
    assert 0.0 <= d_xy <= 2.0


def test_matrix_two_subjects():
    m = build_score_matrix([rec("a", "a0", [1, 0]), rec("b", "b0", [0, 1])])
    assert np.count_nonzero(~np.isnan(m.values)) == 1
    assert m.values[0, 1] == 1.0


def test_matrix_three_subjects_values():
    m = build_score_matrix(
        [rec("a", "a0", [1, 0]), rec("b", "b0", [0, 1]), rec("c", "c0", [1, 0])]
    )
    got = sorted(m.values[~np.isnan(m.values)])
    assert got == [0.0, 1.0, 1.0]


def test_matrix_masking_and_count():
    rng = np.random.default_rng(0)
    n = 7
    sources = [rec(f"s{i}", f"s{i}_0", rng.normal(size=5)) for i in range(n)]
    m = build_score_matrix(sources)
    assert np.count_nonzero(~np.isnan(m.values)) == n * (n - 1) // 2
    assert np.all(np.isnan(m.values[np.tril_indices(n)]))


def test_matrix_matches_double_loop_oracle():
    rng = np.random.default_rng(3)
    embeddings = [rng.normal(size=6) for _ in range(9)]
    sources = [rec(f"s{i}", f"s{i}_0", e) for i, e in enumerate(embeddings)]
    m = build_score_matrix(sources)
    for (i, j), expected in score_matrix_oracle(embeddings).items():
        assert m.values[i, j] == pytest.approx(expected, abs=1e-12)


def test_matrix_rejects_duplicate_subject_and_small_input():
    with pytest.raises(DataError, match="one record per subject"):
        build_score_matrix([rec("a", "a0", [1, 0]), rec("a", "a1", [0, 1])])
    with pytest.raises(DataError, match="at least 2"):
        build_score_matrix([rec("a", "a0", [1, 0])])


def test_mated_scores_counts():
    records = [rec("a", f"a{i}", [1, i], capture=i) for i in range(3)]
    scores = mated_scores(records)
    assert len(scores) == 3
    assert all(s.label == MATED for s in scores)

    two_by_two = [rec(s, f"{s}{i}", [1, i + 1], capture=i) for s in "ab" for i in range(2)]
    assert len(mated_scores(two_by_two)) == 2


def test_mated_scores_duplicate_embeddings_zero():
    records = [rec("a", "a0", [3, 4], 0), rec("a", "a1", [3, 4], 1)]
    (score,) = mated_scores(records)
    assert score.score == 0.0


def test_nonmated_single_cross_pair():
    records = [rec("a", "a0", [1, 0]), rec("b", "b0", [0, 1])]
    (score,) = nonmated_scores(records, 1, seed=5)
    assert score.label == NONMATED
    assert score.score == 1.0


def test_nonmated_deterministic():
    rng = np.random.default_rng(1)
    records = [
        rec(f"s{i}", f"s{i}_{j}", rng.normal(size=4), capture=j)
        for i in range(6)
        for j in range(3)
    ]
    a = nonmated_scores(records, 10, seed=42)
    b = nonmated_scores(records, 10, seed=42)
    assert a == b
    c = nonmated_scores(records, 10, seed=43)
    assert {(s.id_a, s.id_b) for s in a} != {(s.id_a, s.id_b) for s in c}


def test_nonmated_full_population():
    rng = np.random.default_rng(2)
    records = [
        rec(f"s{i}", f"s{i}_{j}", rng.normal(size=3), capture=j)
        for i in range(4)
        for j in range(2)
    ]
    all_ids = [(f"{r.subject_id}:{r.sample_id}", r.subject_id) for r in records]
    expected = {
        frozenset((a[0], b[0]))
        for a, b in itertools.combinations(all_ids, 2)
        if a[1] != b[1]
    }
    scores = nonmated_scores(records, len(expected), seed=0)
    assert {frozenset((s.id_a, s.id_b)) for s in scores} == expected


def test_nonmated_never_within_subject():
    rng = np.random.default_rng(7)
    records = [
        rec(f"s{i}", f"s{i}_{j}", rng.normal(size=4), capture=j)
        for i in range(5)
        for j in range(4)
    ]
    for seed in range(5):
        for score in nonmated_scores(records, 25, seed=seed):
            assert score.id_a.split(":")[0] != score.id_b.split(":")[0]


def test_nonmated_count_exceeds_population():
    records = [rec("a", "a0", [1, 0]), rec("b", "b0", [0, 1])]
    with pytest.raises(DataError, match="only 1 exist"):
        nonmated_scores(records, 2, seed=0)


def test_sample_subjects():
    rng = np.random.default_rng(4)
    records = [
        rec(f"s{i}", f"s{i}_{j}", rng.normal(size=3), capture=j)
        for i in range(10)
        for j in range(2)
    ]
    subset = sample_subjects(records, 4, seed=11)
    assert len({r.subject_id for r in subset}) == 4
    assert sample_subjects(records, 4, seed=11) == subset
    assert sample_subjects(records, 10, seed=0) == records
    assert sample_subjects(records, 99, seed=0) == records
