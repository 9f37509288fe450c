"""Rating aggregation, reliability, PCA axis, scoring, labels, and t-tests."""
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import stats

from gaitdom.errors import DegenerateSampleError, MappingError, ScoreRangeError
from gaitdom.mapping import (ADJECTIVES, DEFAULT_COEFFICIENTS, AdjectiveMeans,
                             DominanceMapper, Label3, Label5,
                             RatingRecord, adjective_correlations, aggregate_responses,
                             collapse_label, label_corpus, paired_t_test,
                             pca_dominance_axis, raw_dominance_score,
                             read_labels_csv, read_responses_csv, score_to_label,
                             split_half_error, write_labels_csv, write_responses_csv)

from .oracles import oracle_pca_axis


def _record(gait, participant, adjective, value):
    return RatingRecord(gait_id=gait, participant_id=participant,
                        adjective=adjective, value=value, timestamp="2020-01-01T00:00:00")


def _full_means(gait_id, sub, wit, dom, conf, n=1):
    return AdjectiveMeans(gait_id=gait_id,
                          means={"submissive": sub, "withdrawn": wit,
                                 "dominant": dom, "confident": conf},
                          counts={adj: n for adj in ADJECTIVES})


class TestAggregate:
    def test_mean_of_two(self):
        records = [_record("g1", "p1", "dominant", 2), _record("g1", "p2", "dominant", 4)]
        means = aggregate_responses(records)
        assert len(means) == 1
        assert means[0].means["dominant"] == 3.0
        assert means[0].counts["dominant"] == 2

    def test_single_record_identity(self):
        means = aggregate_responses([_record("g1", "p1", "confident", 5)])
        assert means[0].means["confident"] == 5.0

    def test_incomplete_gait_flagged(self):
        records = [_record("g1", "p1", adj, 3) for adj in ADJECTIVES[:3]]
        means = aggregate_responses(records)
        assert not means[0].is_complete
        assert means[0].missing == ("confident",)

    def test_empty_input_empty_output(self):
        assert aggregate_responses([]) == []

    def test_invalid_value_rejected(self):
        with pytest.raises(MappingError):
            _record("g", "p", "dominant", 6)
        with pytest.raises(MappingError):
            _record("g", "p", "bossy", 3)


class TestSplitHalf:
    def test_identical_halves_zero_error(self):
        records = []
        for participant in ("p1", "p2", "p3", "p4"):
            for gait in ("g1", "g2"):
                for adj in ADJECTIVES:
                    records.append(_record(gait, participant, adj, 3))
        report = split_half_error(records, seed=1)
        assert all(v == 0.0 for v in report.errors.values())

    def test_one_point_gap_is_25_percent(self):
        # two participants per gait whose answers differ by exactly 1
        records = []
        for gait in ("g1", "g2", "g3"):
            for adj in ADJECTIVES:
                records.append(_record(gait, "p1", adj, 3))
                records.append(_record(gait, "p2", adj, 4))
        report = split_half_error(records, seed=0)
        assert all(v == pytest.approx(25.0) for v in report.errors.values())

    def test_matches_independent_computation(self, rng):
        participants = [f"p{i}" for i in range(12)]
        gaits = [f"g{i}" for i in range(6)]
        truth = {(g, adj): rng.uniform(1.5, 4.5) for g in gaits for adj in ADJECTIVES}
        records = []
        for p in participants:
            for g in gaits:
                for adj in ADJECTIVES:
                    value = int(np.clip(round(truth[(g, adj)] + rng.normal(0, 0.5)), 1, 5))
                    records.append(_record(g, p, adj, value))
        seed = 99
        report = split_half_error(records, seed=seed)

        # independent scripted computation of the same split
        shuffled = sorted({r.participant_id for r in records})
        np.random.default_rng(seed).shuffle(shuffled)
        half = (len(shuffled) + 1) // 2
        set1, set2 = set(shuffled[:half]), set(shuffled[half:])
        for adj in ADJECTIVES:
            diffs = []
            for g in gaits:
                v1 = [r.value for r in records
                      if r.gait_id == g and r.adjective == adj and r.participant_id in set1]
                v2 = [r.value for r in records
                      if r.gait_id == g and r.adjective == adj and r.participant_id in set2]
                diffs.append(abs(sum(v1) / len(v1) - sum(v2) / len(v2)))
            expected = sum(diffs) / len(diffs) / 4.0 * 100.0
            assert report.errors[adj] == pytest.approx(expected, abs=1e-12)

    def test_gait_with_raters_in_one_half_excluded(self):
        records = [_record("lonely", "p1", adj, 4) for adj in ADJECTIVES]
        for g in ("g1", "g2"):
            for p in ("p1", "p2"):
                for adj in ADJECTIVES:
                    records.append(_record(g, p, adj, 3))
        report = split_half_error(records, seed=3)
        for adj in ADJECTIVES:
            assert "lonely" in report.excluded[adj]


class TestCorrelations:
    def test_diagonal_is_one_and_symmetry(self, rng):
        means = [_full_means(f"g{i}", *rng.uniform(1, 5, size=4)) for i in range(40)]
        matrix, undefined = adjective_correlations(means)
        assert undefined == []
        assert np.allclose(np.diag(matrix), 1.0)
        assert np.allclose(matrix, matrix.T)

    def test_negated_column_perfect_anticorrelation(self):
        means = []
        for i, value in enumerate((1.0, 2.0, 3.0, 4.0)):
            means.append(_full_means(f"g{i}", value, 6.0 - value, value, value))
        matrix, _ = adjective_correlations(means)
        assert matrix[0, 1] == pytest.approx(-1.0)

    def test_sign_pattern_dominant_vs_submissive(self, rng):
        means = []
        for i in range(60):
            dom = rng.uniform(1, 5)
            sub = 6.0 - dom + rng.normal(0, 0.2)
            means.append(_full_means(f"g{i}", sub, rng.uniform(1, 5), dom, rng.uniform(1, 5)))
        matrix, _ = adjective_correlations(means)
        dom_idx = ADJECTIVES.index("dominant")
        sub_idx = ADJECTIVES.index("submissive")
        assert matrix[dom_idx, sub_idx] < -0.8

    def test_constant_column_reported(self):
        means = [_full_means(f"g{i}", 3.0, v, v, v) for i, v in enumerate((1.0, 2.0, 3.0))]
        matrix, undefined = adjective_correlations(means)
        assert ("submissive", "submissive") in undefined
        assert math.isnan(matrix[0, 1])


class TestPcaAxis:
    def test_collinear_explains_everything(self):
        means = [_full_means(f"g{i}", -v, -0.5 * v, v, 2.0 * v)
                 for i, v in enumerate((1.0, 2.0, 3.0, 4.0, 5.0))]
        axis = pca_dominance_axis(means)
        assert axis.explained_variance == pytest.approx(1.0)

    def test_matches_eigendecomposition_oracle(self, rng):
        for _ in range(30):
            X = rng.uniform(1, 5, size=(rng.integers(6, 40), 4))
            means = [_full_means(f"g{i}", *row) for i, row in enumerate(X)]
            axis = pca_dominance_axis(means)
            expected_axis, expected_fraction = oracle_pca_axis(X)
            dot = abs(float(np.dot(axis.coefficients, expected_axis)))
            assert dot == pytest.approx(1.0, abs=1e-8)
            assert axis.explained_variance == pytest.approx(expected_fraction, abs=1e-8)

    def test_recovers_planted_factor(self, rng):
        loadings = np.array(DEFAULT_COEFFICIENTS)
        scores = rng.normal(0, 1.2, size=300)
        X = 3.0 + np.outer(scores, loadings) + rng.normal(0, 0.05, size=(300, 4))
        means = [_full_means(f"g{i}", *row) for i, row in enumerate(X)]
        axis = pca_dominance_axis(means)
        unit = loadings / np.linalg.norm(loadings)
        corr = float(np.dot(axis.coefficients, unit))
        assert corr > 0.99

    def test_unit_norm_and_positive_dominant(self, rng):
        X = rng.uniform(1, 5, size=(12, 4))
        axis = pca_dominance_axis([_full_means(f"g{i}", *row) for i, row in enumerate(X)])
        assert np.linalg.norm(axis.coefficients) == pytest.approx(1.0)
        assert axis.coefficients[ADJECTIVES.index("dominant")] > 0

    def test_rank_zero_rejected(self):
        means = [_full_means(f"g{i}", 3.0, 3.0, 3.0, 3.0) for i in range(5)]
        with pytest.raises(MappingError):
            pca_dominance_axis(means)

    def test_needs_four_gaits(self):
        with pytest.raises(MappingError):
            pca_dominance_axis([_full_means("g", 1, 2, 3, 4)] * 3)


class TestDominanceScore:
    def test_published_coefficients_exact(self):
        assert DEFAULT_COEFFICIENTS == (-0.44, -0.57, 0.43, 0.54)

    def test_centered_unit_means(self):
        means = _full_means("g", -1.0, -1.0, 1.0, 1.0)
        raw = raw_dominance_score(means)
        assert raw == pytest.approx(0.43 + 0.54 + 0.44 + 0.57)
        assert raw == pytest.approx(1.98)

    def test_zero_means_zero_score(self):
        assert raw_dominance_score(_full_means("g", 0, 0, 0, 0)) == 0.0

    def test_linearity(self, rng):
        a = rng.uniform(-2, 2, size=4)
        b = rng.uniform(-2, 2, size=4)
        alpha, beta = 0.7, -1.3
        combo = alpha * a + beta * b
        raw = raw_dominance_score(_full_means("g", *combo))
        expected = (alpha * raw_dominance_score(_full_means("g", *a))
                    + beta * raw_dominance_score(_full_means("g", *b)))
        assert raw == pytest.approx(expected, abs=1e-12)

    def test_corpus_max_normalizes_to_one(self, rng):
        means = [_full_means(f"g{i}", *rng.uniform(1, 5, size=4)) for i in range(20)]
        mapper = DominanceMapper()
        mapper.register(means)
        raws = [raw_dominance_score(m) for m in means]
        best = means[int(np.argmax(raws))]
        assert mapper.score(best).normalized == 1.0
        worst = means[int(np.argmin(raws))]
        assert mapper.score(worst).normalized == -1.0

    def test_normalization_before_register_errors(self):
        mapper = DominanceMapper()
        with pytest.raises(MappingError):
            mapper.score(_full_means("g", 1, 2, 3, 4))


class TestScoreToLabel:
    @pytest.mark.parametrize("r,expected", [
        (-1.0, Label5.HS), (-0.9, Label5.HS),
        (-0.8, Label5.S), (-0.5, Label5.N),
        (0.0, Label5.N), (0.5, Label5.N),
        (0.65, Label5.D), (0.8, Label5.D),
        (0.9, Label5.HD), (1.0, Label5.HD),
    ])
    def test_boundaries_exact(self, r, expected):
        assert score_to_label(r) == expected

    def test_out_of_range_rejected(self):
        with pytest.raises(ScoreRangeError):
            score_to_label(1.0000001)
        with pytest.raises(ScoreRangeError):
            score_to_label(-1.1)

    @given(st.lists(st.floats(min_value=-1.0, max_value=1.0), min_size=2, max_size=50))
    def test_monotone_in_score(self, scores):
        order = [Label5.HS, Label5.S, Label5.N, Label5.D, Label5.HD]
        ranks = [order.index(score_to_label(r)) for r in sorted(scores)]
        assert all(a <= b for a, b in zip(ranks, ranks[1:]))

    def test_collapse_mapping(self):
        assert collapse_label(Label5.HS) == Label3.S3
        assert collapse_label(Label5.S) == Label3.S3
        assert collapse_label(Label5.N) == Label3.N3
        assert collapse_label(Label5.D) == Label3.D3
        assert collapse_label(Label5.HD) == Label3.D3

    def test_collapse_never_decreases_accuracy(self, rng):
        levels = list(Label5)
        for _ in range(200):
            n = int(rng.integers(1, 40))
            truth = [levels[i] for i in rng.integers(0, 5, size=n)]
            pred = [levels[i] for i in rng.integers(0, 5, size=n)]
            acc5 = sum(t == p for t, p in zip(truth, pred)) / n
            acc3 = sum(collapse_label(t) == collapse_label(p)
                       for t, p in zip(truth, pred)) / n
            assert acc3 >= acc5


class TestPairedTTest:
    def test_textbook_point(self):
        # five pairs engineered so t sits at the 5% two-tailed critical value
        t0 = float(stats.t.ppf(0.975, df=4))
        mu = t0 / math.sqrt(2.0)
        x = np.array([mu - 2, mu - 1, mu, mu + 1, mu + 2])
        y = np.zeros(5)
        t, p = paired_t_test(x, y)
        assert t == pytest.approx(t0, abs=1e-9)
        assert t == pytest.approx(2.776, abs=2e-3)
        assert p == pytest.approx(0.05, abs=1e-9)

    def test_near_constant_shift_tiny_p(self):
        x = np.array([1.0, 2.0, 3.0, 4.0, 5.0])
        y = x + 1.0 + np.array([1e-10, -1e-10, 1e-10, -1e-10, 1e-10])
        t, p = paired_t_test(y, x)
        assert p < 1e-12

    def test_agrees_with_scipy(self, rng):
        for _ in range(20):
            n = int(rng.integers(3, 30))
            x = rng.normal(size=n)
            y = x + rng.normal(scale=0.7, size=n)
            t, p = paired_t_test(x, y)
            expected = stats.ttest_rel(x, y)
            assert t == pytest.approx(float(expected.statistic), abs=1e-12)
            assert p == pytest.approx(float(expected.pvalue), abs=1e-12)

    def test_single_pair_rejected(self):
        with pytest.raises(MappingError):
            paired_t_test([1.0], [2.0])

    def test_zero_variance_rejected(self):
        with pytest.raises(DegenerateSampleError):
            paired_t_test([1.0, 2.0, 3.0], [2.0, 3.0, 4.0])


class TestCsvInterfaces:
    def test_responses_roundtrip(self, tmp_path):
        records = [_record("g1", "p1", adj, i + 1) for i, adj in enumerate(ADJECTIVES)]
        path = tmp_path / "responses.csv"
        write_responses_csv(records, path)
        assert read_responses_csv(path) == records

    def test_labels_roundtrip(self, tmp_path, rng):
        means = [_full_means(f"g{i}", *rng.uniform(1, 5, size=4)) for i in range(8)]
        labeled = label_corpus(means)
        path = tmp_path / "labels.csv"
        write_labels_csv(labeled, path)
        assert read_labels_csv(path) == labeled

    def test_label_corpus_consistency(self, rng):
        means = [_full_means(f"g{i}", *rng.uniform(1, 5, size=4)) for i in range(30)]
        labeled = label_corpus(means)
        for item in labeled:
            assert item.label5 == score_to_label(item.normalized_score)
            assert item.label3 == collapse_label(item.label5)
            assert -1.0 <= item.normalized_score <= 1.0
