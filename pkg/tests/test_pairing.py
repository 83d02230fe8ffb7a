import numpy as np
import pytest

from morphkit import (
    DataError,
    EmbeddingRecord,
    SubjectMeta,
    build_score_matrix,
    demographic_ok,
    random_pairs,
    select_pairs,
    subject_metadata,
)
from morphkit.similarity import ScoreMatrix

from oracles import greedy_pair_oracle


def meta(age=30, gender="g0", ethnicity="e0"):
    return SubjectMeta(age, gender, ethnicity)


def matrix_from(ids, cells):
    n = len(ids)
    values = np.full((n, n), np.nan)
    for (i, j), d in cells.items():
        values[i, j] = d
    return ScoreMatrix(list(ids), values)


def test_demographic_ok_boundaries():
    assert demographic_ok(meta(30), meta(34), 5)
    assert demographic_ok(meta(30), meta(35), 5)  # inclusive gap
    assert not demographic_ok(meta(30), meta(36), 5)
    assert not demographic_ok(meta(30, gender="g1"), meta(30), 5)
    assert not demographic_ok(meta(30, ethnicity="e1"), meta(30), 5)


def test_select_pairs_all_compatible():
    ids = ["s1", "s2", "s3", "s4"]
    cells = {(0, 1): 0.1, (0, 2): 0.2, (0, 3): 0.3, (1, 2): 0.4, (1, 3): 0.5, (2, 3): 0.6}
    pairs = select_pairs(matrix_from(ids, cells), {s: meta() for s in ids})
    assert [(p.subject_a, p.subject_b) for p in pairs] == [("s1", "s2"), ("s3", "s4")]
    assert pairs[0].distance == 0.1
    assert pairs[1].distance == 0.6


def test_select_pairs_demographic_rejection_keeps_subjects():
    ids = ["s1", "s2", "s3", "s4"]
    cells = {(0, 1): 0.1, (0, 2): 0.2, (0, 3): 0.3, (1, 2): 0.4, (1, 3): 0.5, (2, 3): 0.6}
    # s2 is demographically incompatible with s1 only (age gap)
    metadata = {"s1": meta(30), "s2": meta(40), "s3": meta(30), "s4": meta(38)}
    pairs = select_pairs(matrix_from(ids, cells), metadata)
    assert [(p.subject_a, p.subject_b) for p in pairs] == [("s1", "s3"), ("s2", "s4")]
    assert pairs[1].distance == 0.5


def test_select_pairs_two_subjects():
    pairs = select_pairs(matrix_from(["a", "b"], {(0, 1): 0.4}), {"a": meta(), "b": meta()})
    assert len(pairs) == 1
    assert pairs[0].selection_method == "embedding"


def test_select_pairs_empty_when_nothing_valid():
    metadata = {"a": meta(gender="g0"), "b": meta(gender="g1")}
    assert select_pairs(matrix_from(["a", "b"], {(0, 1): 0.4}), metadata) == []


def test_select_pairs_requires_metadata():
    with pytest.raises(DataError, match="metadata missing"):
        select_pairs(matrix_from(["a", "b"], {(0, 1): 0.4}), {"a": meta()})


def _random_instance(rng, n):
    ids = [f"s{i}" for i in range(n)]
    cells = {
        (i, j): float(rng.uniform(0, 2)) for i in range(n) for j in range(i + 1, n)
    }
    metadata = {
        s: SubjectMeta(
            int(rng.integers(20, 40)),
            f"g{rng.integers(2)}",
            f"e{rng.integers(2)}",
        )
        for s in ids
    }
    return ids, cells, metadata


def test_select_pairs_matches_step_simulator():
    rng = np.random.default_rng(123)
    for _ in range(30):
        n = int(rng.integers(2, 11))
        ids, cells, metadata = _random_instance(rng, n)
        got = select_pairs(matrix_from(ids, cells), metadata, max_age_gap=5)
        oracle_meta = {s: (m.age, m.gender, m.ethnicity) for s, m in metadata.items()}
        expected = greedy_pair_oracle(ids, cells, oracle_meta, 5)
        assert [(p.subject_a, p.subject_b) for p in got] == [(a, b) for a, b, _ in expected]
        # invariants: no reuse, demographics hold, first pair is the global valid min
        used = [s for p in got for s in (p.subject_a, p.subject_b)]
        assert len(used) == len(set(used))
        for p in got:
            assert demographic_ok(metadata[p.subject_a], metadata[p.subject_b], 5)
        valid = [
            d
            for (i, j), d in cells.items()
            if demographic_ok(metadata[ids[i]], metadata[ids[j]], 5)
        ]
        if valid:
            assert got and got[0].distance == pytest.approx(min(valid))
        else:
            assert got == []


def test_pairing_invariant_under_embedding_rescale():
    rng = np.random.default_rng(5)
    records = [
        EmbeddingRecord(f"s{i}", f"s{i}_0", 0, 30, "g0", "e0", rng.normal(size=6))
        for i in range(8)
    ]
    metadata = subject_metadata(records)
    base = select_pairs(build_score_matrix(records), metadata)
    scales = rng.uniform(0.1, 10.0, size=len(records))
    scaled = [
        EmbeddingRecord(r.subject_id, r.sample_id, 0, 30, "g0", "e0", c * r.embedding)
        for r, c in zip(records, scales)
    ]
    rescaled = select_pairs(build_score_matrix(scaled), metadata)
    assert [(p.subject_a, p.subject_b) for p in base] == [
        (p.subject_a, p.subject_b) for p in rescaled
    ]


def test_random_pairs_two_compatible():
    metadata = {"a": meta(), "b": meta()}
    (pair,) = random_pairs(metadata, seed=1)
    assert {pair.subject_a, pair.subject_b} == {"a", "b"}
    assert pair.distance is None
    assert pair.selection_method == "random"


def test_random_pairs_incompatible_empty():
    metadata = {"a": meta(gender="g0"), "b": meta(gender="g1")}
    assert random_pairs(metadata, seed=1) == []


def test_random_pairs_deterministic():
    rng = np.random.default_rng(9)
    metadata = {
        f"s{i}": SubjectMeta(int(rng.integers(25, 35)), "g0", "e0") for i in range(20)
    }
    assert random_pairs(metadata, seed=7) == random_pairs(metadata, seed=7)
    assert random_pairs(metadata, seed=7) != random_pairs(metadata, seed=8)


def test_random_pairs_invariants():
    rng = np.random.default_rng(17)
    for seed in range(10):
        n = int(rng.integers(2, 15))
        _, _, metadata = _random_instance(rng, n)
        pairs = random_pairs(metadata, max_age_gap=5, seed=seed)
        used = [s for p in pairs for s in (p.subject_a, p.subject_b)]
        assert len(used) == len(set(used))
        for p in pairs:
            assert demographic_ok(metadata[p.subject_a], metadata[p.subject_b], 5)
