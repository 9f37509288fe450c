"""Data-driven dominance mapping from Likert ratings.

Raw participant responses to the four adjectives (submissive, withdrawn,
dominant, confident) are aggregated per gait, combined into a scalar
dominance score with fixed coefficients (or a recomputed principal axis),
normalized over the ingested corpus, and bucketed into the five dominance
levels. Also provides the study statistics: split-half reliability,
adjective correlations, and paired t-tests.
"""
from __future__ import annotations

import csv
import logging
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy import stats

from .errors import DegenerateSampleError, MappingError, ScoreRangeError

log = logging.getLogger(__name__)

ADJECTIVES = ("submissive", "withdrawn", "dominant", "confident")
LIKERT_MIN = 1
LIKERT_MAX = 5
LIKERT_SPAN = LIKERT_MAX - LIKERT_MIN  # the 4-point span used for percentages

# Fixed scoring coefficients in ADJECTIVES order; the dominant and confident
# responses add, the submissive and withdrawn responses subtract.
DEFAULT_COEFFICIENTS = (-0.44, -0.57, 0.43, 0.54)


class Label5(str, Enum):
    HS = "HS"
    S = "S"
    N = "N"
    D = "D"
    HD = "HD"


class Label3(str, Enum):
    S3 = "S3"
    N3 = "N3"
    D3 = "D3"


FIVE_LEVELS = (Label5.HS, Label5.S, Label5.N, Label5.D, Label5.HD)
THREE_LEVELS = (Label3.S3, Label3.N3, Label3.D3)

_COLLAPSE = {Label5.HS: Label3.S3, Label5.S: Label3.S3, Label5.N: Label3.N3,
             Label5.D: Label3.D3, Label5.HD: Label3.D3}


def collapse_label(label: Label5) -> Label3:
    """HS and S merge into S3, D and HD into D3, N stays N3."""
    return _COLLAPSE[label]


@dataclass(frozen=True)
class RatingRecord:
    """One participant's Likert response to one adjective for one gait."""

    gait_id: str
    participant_id: str
    adjective: str
    value: int
    timestamp: str = ""

    def __post_init__(self):
        if self.adjective not in ADJECTIVES:
            raise MappingError(f"unknown adjective {self.adjective!r}")
        if not isinstance(self.value, int) or not LIKERT_MIN <= self.value <= LIKERT_MAX:
            raise MappingError(f"Likert value must be an integer in 1..5, got {self.value!r}")


@dataclass(frozen=True)
class AdjectiveMeans:
    """Mean response per adjective for one gait, with per-adjective counts."""

    gait_id: str
    means: dict[str, float]
    counts: dict[str, int]

    @property
    def n_p(self) -> int:
        return max(self.counts.values(), default=0)

    @property
    def is_complete(self) -> bool:
        return all(adj in self.means for adj in ADJECTIVES)

    @property
    def missing(self) -> tuple[str, ...]:
        return tuple(adj for adj in ADJECTIVES if adj not in self.means)

    def vector(self) -> np.ndarray:
        """Means in canonical adjective order; requires completeness."""
        if not self.is_complete:
            raise MappingError(
                f"gait {self.gait_id!r} missing adjectives: {', '.join(self.missing)}")
        return np.array([self.means[adj] for adj in ADJECTIVES])


def aggregate_responses(records) -> list[AdjectiveMeans]:
    """Arithmetic mean per (gait, adjective). Gaits missing an adjective are
    kept and logged, never dropped."""
    sums: dict[str, dict[str, float]] = {}
    counts: dict[str, dict[str, int]] = {}
    for rec in records:
        sums.setdefault(rec.gait_id, {}).setdefault(rec.adjective, 0.0)
        counts.setdefault(rec.gait_id, {}).setdefault(rec.adjective, 0)
        sums[rec.gait_id][rec.adjective] += rec.value
        counts[rec.gait_id][rec.adjective] += 1
    out = []
    for gait_id in sorted(sums):
        means = {adj: sums[gait_id][adj] / counts[gait_id][adj] for adj in sums[gait_id]}
        am = AdjectiveMeans(gait_id=gait_id, means=means, counts=dict(counts[gait_id]))
        if not am.is_complete:
            log.warning("gait %s rated on %d of 4 adjectives (missing: %s)",
                        gait_id, len(means), ", ".join(am.missing))
        out.append(am)
    return out


@dataclass(frozen=True)
class SplitHalfReport:
    """Per-adjective split-half error as a percentage of the 4-point span."""

    errors: dict[str, float]
    set1: tuple[str, ...]
    set2: tuple[str, ...]
    excluded: dict[str, tuple[str, ...]]  # adjective -> gaits with all raters in one half
    seed: int


def split_half_error(records, seed: int) -> SplitHalfReport:
    """Reliability check: split raters in two, compare per-gait means.

    Participants are shuffled with the seeded RNG and split into two equal
    sets (an odd participant goes to set 1). Per adjective, the error is the
    mean over gaits of |mean_half1 - mean_half2|, reported as a percentage of
    the 4-point Likert span. Gaits whose raters all land in one half are
    excluded from that adjective's mean.
    """
    records = list(records)
    participants = sorted({r.participant_id for r in records})
    if len(participants) < 2:
        raise MappingError("split-half reliability needs at least 2 participants")
    rng = np.random.default_rng(seed)
    shuffled = list(participants)
    rng.shuffle(shuffled)
    half = (len(shuffled) + 1) // 2
    set1 = set(shuffled[:half])
    set2 = set(shuffled[half:])

    by_key: dict[tuple[str, str], tuple[list[int], list[int]]] = {}
    for rec in records:
        bucket = by_key.setdefault((rec.gait_id, rec.adjective), ([], []))
        (bucket[0] if rec.participant_id in set1 else bucket[1]).append(rec.value)

    errors = {}
    excluded: dict[str, list[str]] = {adj: [] for adj in ADJECTIVES}
    for adj in ADJECTIVES:
        diffs = []
        for (gait_id, a), (v1, v2) in sorted(by_key.items()):
            if a != adj:
                continue
            if not v1 or not v2:
                excluded[adj].append(gait_id)
                log.warning("split-half: gait %s has all %r raters in one half; excluded",
                            gait_id, adj)
                continue
            diffs.append(abs(np.mean(v1) - np.mean(v2)))
        if diffs:
            errors[adj] = float(np.mean(diffs)) / LIKERT_SPAN * 100.0
    return SplitHalfReport(errors=errors,
                           set1=tuple(sorted(set1)), set2=tuple(sorted(set2)),
                           excluded={k: tuple(v) for k, v in excluded.items()},
                           seed=seed)


def adjective_correlations(means: list[AdjectiveMeans]) -> tuple[np.ndarray, list[tuple[str, str]]]:
    """4x4 Pearson matrix in canonical adjective order.

    Returns (matrix, undefined_pairs). Pairs involving a constant column are
    NaN and listed in undefined_pairs rather than silently fabricated.
    """
    if len(means) < 2:
        raise MappingError("correlations need at least 2 gaits")
    X = np.stack([m.vector() for m in means])
    centered = X - X.mean(axis=0)
    sd = np.sqrt((centered ** 2).sum(axis=0))
    matrix = np.full((4, 4), np.nan)
    undefined = []
    for i in range(4):
        for j in range(4):
            if sd[i] == 0 or sd[j] == 0:
                if i <= j:
                    undefined.append((ADJECTIVES[i], ADJECTIVES[j]))
                continue
            if i == j:
                matrix[i, j] = 1.0
            else:
                matrix[i, j] = float(centered[:, i] @ centered[:, j] / (sd[i] * sd[j]))
    return matrix, undefined


@dataclass(frozen=True)
class PcaAxis:
    """First principal axis over the four adjective means.

    coefficients are in canonical adjective order. The fixed default axis
    reproduces the published scoring weights and keeps its printed (slightly
    non-unit) norm; recomputed axes are unit norm with the dominant
    coefficient oriented positive.
    """

    coefficients: tuple[float, float, float, float]
    explained_variance: float


DEFAULT_AXIS = PcaAxis(coefficients=DEFAULT_COEFFICIENTS, explained_variance=0.9378)

_DOMINANT_IDX = ADJECTIVES.index("dominant")


def pca_dominance_axis(means: list[AdjectiveMeans]) -> PcaAxis:
    """First principal component of the mean-centered gait x adjective matrix."""
    if len(means) < 4:
        raise MappingError(f"PCA needs at least 4 gaits, got {len(means)}")
    X = np.stack([m.vector() for m in means])
    centered = X - X.mean(axis=0)
    if not np.any(centered):
        raise MappingError("rank-0 input: all gaits have identical adjective means")
    _, s, vt = np.linalg.svd(centered, full_matrices=False)
    axis = vt[0]
    if axis[_DOMINANT_IDX] < 0:
        axis = -axis
    fraction = float(s[0] ** 2 / np.sum(s ** 2))
    return PcaAxis(coefficients=tuple(float(c) for c in axis), explained_variance=fraction)


def raw_dominance_score(means: AdjectiveMeans, axis: PcaAxis | None = None) -> float:
    """Weighted sum of the four adjective means; linear in the means."""
    coeffs = (axis or DEFAULT_AXIS).coefficients
    return float(np.dot(coeffs, means.vector()))


@dataclass(frozen=True)
class DominanceScore:
    raw: float
    normalized: float


@dataclass(frozen=True)
class ScoreScale:
    """Corpus-level normalization: observed min -> -1, observed max -> +1."""

    raw_min: float
    raw_max: float

    def normalize(self, raw: float) -> float:
        span = self.raw_max - self.raw_min
        if span == 0:
            return 0.0
        return -1.0 + 2.0 * (raw - self.raw_min) / span


class DominanceMapper:
    """Scores and labels gaits against a registered corpus.

    register() fits the min/max normalization over the corpus raw scores;
    score() and label() then work for any gait (normalization must come
    first, mirroring the study pipeline).
    """

    def __init__(self, axis: PcaAxis | None = None):
        self.axis = axis or DEFAULT_AXIS
        self.scale: ScoreScale | None = None

    def register(self, means: list[AdjectiveMeans]) -> ScoreScale:
        if not means:
            raise MappingError("cannot register an empty corpus")
        raws = [raw_dominance_score(m, self.axis) for m in means]
        self.scale = ScoreScale(raw_min=min(raws), raw_max=max(raws))
        return self.scale

    def score(self, means: AdjectiveMeans) -> DominanceScore:
        if self.scale is None:
            raise MappingError("normalization requested before any dataset is registered")
        raw = raw_dominance_score(means, self.axis)
        return DominanceScore(raw=raw, normalized=self.scale.normalize(raw))

    def label(self, means: AdjectiveMeans) -> Label5:
        return score_to_label(self.score(means).normalized)


def score_to_label(r: float) -> Label5:
    """Five-level bucketing of a normalized score; boundaries are exact."""
    if not -1.0 <= r <= 1.0:
        raise ScoreRangeError(f"normalized score must be in [-1, 1], got {r}")
    if r < -0.8:
        return Label5.HS
    if r < -0.5:
        return Label5.S
    if r <= 0.5:
        return Label5.N
    if r <= 0.8:
        return Label5.D
    return Label5.HD


def paired_t_test(x, y) -> tuple[float, float]:
    """Paired t statistic (on x - y) and the two-tailed p-value at n-1 df."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise MappingError(f"paired samples must be equal-length vectors, got {x.shape} vs {y.shape}")
    n = x.shape[0]
    if n < 2:
        raise MappingError(f"paired t-test needs at least 2 pairs, got {n}")
    d = x - y
    sd = float(d.std(ddof=1))
    if sd == 0:
        raise DegenerateSampleError("differences have zero variance")
    t = float(d.mean() / (sd / math.sqrt(n)))
    p = 2.0 * float(stats.t.sf(abs(t), df=n - 1))
    return t, p


# ---------------------------------------------------------------------------
# CSV interfaces

RESPONSES_HEADER = ("gait_id", "participant_id", "adjective", "value", "timestamp")
LABELS_HEADER = ("gait_id", "raw_score", "normalized_score", "label5", "label3")


def write_responses_csv(records: list[RatingRecord], path_or_file) -> None:
    own = isinstance(path_or_file, (str, bytes)) or hasattr(path_or_file, "__fspath__")
    fh = open(path_or_file, "w", newline="", encoding="utf-8") if own else path_or_file
    try:
        writer = csv.writer(fh)
        writer.writerow(RESPONSES_HEADER)
        for r in records:
            writer.writerow([r.gait_id, r.participant_id, r.adjective, r.value, r.timestamp])
    finally:
        if own:
            fh.close()


def read_responses_csv(path) -> list[RatingRecord]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = tuple(next(reader))
        if header != RESPONSES_HEADER:
            raise MappingError(f"unexpected responses header {header}")
        return [RatingRecord(gait_id=row[0], participant_id=row[1], adjective=row[2],
                             value=int(row[3]), timestamp=row[4]) for row in reader]


@dataclass(frozen=True)
class LabeledGait:
    gait_id: str
    raw_score: float
    normalized_score: float
    label5: Label5
    label3: Label3


def label_corpus(means: list[AdjectiveMeans], axis: PcaAxis | None = None) -> list[LabeledGait]:
    """Score, normalize, and label a whole corpus of complete adjective means."""
    mapper = DominanceMapper(axis=axis)
    mapper.register(means)
    out = []
    for m in means:
        score = mapper.score(m)
        l5 = score_to_label(score.normalized)
        out.append(LabeledGait(gait_id=m.gait_id, raw_score=score.raw,
                               normalized_score=score.normalized,
                               label5=l5, label3=collapse_label(l5)))
    return out


def write_labels_csv(labels: list[LabeledGait], path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(LABELS_HEADER)
        for item in labels:
            writer.writerow([item.gait_id, repr(item.raw_score), repr(item.normalized_score),
                             item.label5.value, item.label3.value])


def read_labels_csv(path) -> list[LabeledGait]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = tuple(next(reader))
        if header != LABELS_HEADER:
            raise MappingError(f"unexpected labels header {header}")
        return [LabeledGait(gait_id=row[0], raw_score=float(row[1]),
                            normalized_score=float(row[2]),
                            label5=Label5(row[3]), label3=Label3(row[4]))
                for row in reader]
