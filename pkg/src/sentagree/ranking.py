"""Nonparametric comparison of classifiers over multiple datasets.

Implements the Friedman rank test with the chi-square approximation
(the Iman-Davenport F refinement is available behind a flag) and the
Nemenyi post-hoc critical distance for all-pairs comparison at the
0.05 and 0.10 levels.

The embedded critical values ``q_alpha(k)`` for k = 2..10 are the
standard two-tailed Studentized-range quantiles at infinite degrees of
freedom divided by sqrt(2), as tabulated in the classical references
below.

References
----------
.. [1] M. Friedman, "The use of ranks to avoid the assumption of
       normality implicit in the analysis of variance", Journal of the
       American Statistical Association 32(200), 1937.
.. [2] R. L. Iman and J. M. Davenport, "Approximations of the critical
       region of the Friedman statistic", Communications in Statistics
       A7(6), 1980.
.. [3] P. Nemenyi, "Distribution-free multiple comparisons", PhD
       thesis, Princeton University, 1963.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import stats as sps

__all__ = [
    "ScoreTable",
    "RankSummary",
    "RankReport",
    "friedman",
    "nemenyi_cd",
    "compare_ranks",
]

#: q_alpha(k) for the Nemenyi test, k = 2..10, infinite df.
_Q_TABLE: dict[float, tuple[float, ...]] = {
    0.05: (1.960, 2.343, 2.569, 2.728, 2.850, 2.949, 3.031, 3.102, 3.164),
    0.10: (1.645, 2.052, 2.291, 2.459, 2.589, 2.693, 2.780, 2.855, 2.920),
}


@dataclass(frozen=True)
class ScoreTable:
    """A complete datasets-by-classifiers score matrix.

    Parameters
    ----------
    scores:
        ``(n_datasets, n_classifiers)`` array; every cell must be
        finite (the tests require a complete table).
    dataset_names, classifier_names:
        Row and column labels, matching the array shape.
    """

    scores: np.ndarray
    dataset_names: tuple[str, ...]
    classifier_names: tuple[str, ...]

    def __post_init__(self) -> None:
        scores = np.asarray(self.scores, dtype=np.float64)
        if scores.ndim != 2:
            raise ValueError(f"scores must be 2-D, got shape {scores.shape}")
        if not np.all(np.isfinite(scores)):
            raise ValueError("score table is incomplete: non-finite cells present")
        n, k = scores.shape
        if k < 2:
            raise ValueError(f"need at least 2 classifiers, got {k}")
        if n < 1:
            raise ValueError("need at least 1 dataset row")
        if len(self.dataset_names) != n or len(self.classifier_names) != k:
            raise ValueError("name tuples do not match the score shape")
        object.__setattr__(self, "scores", scores)

    @property
    def n_datasets(self) -> int:
        return int(self.scores.shape[0])

    @property
    def n_classifiers(self) -> int:
        return int(self.scores.shape[1])


@dataclass(frozen=True)
class RankSummary:
    """Result of the Friedman test.

    ``statistic`` is always the chi-square-form Friedman statistic;
    when the Iman-Davenport refinement is requested, ``f_statistic``
    carries the derived F value and ``p_value`` comes from the F
    distribution instead of chi-square.
    """

    statistic: float
    p_value: float
    method: str
    avg_ranks: np.ndarray
    classifier_names: tuple[str, ...]
    n_datasets: int
    f_statistic: float | None = None

    @property
    def k(self) -> int:
        return len(self.classifier_names)


def friedman(
    table: ScoreTable,
    higher_is_better: bool = True,
    iman_davenport: bool = False,
) -> RankSummary:
    """Friedman rank test over a complete score table.

    Parameters
    ----------
    table:
        Complete ``(N, k)`` score table.
    higher_is_better:
        Rank 1 goes to the highest score per row when true (the
        default), to the lowest otherwise.  Ties share average ranks.
    iman_davenport:
        Use the less conservative F-distribution refinement
        ``F = (N - 1) * chi2 / (N * (k - 1) - chi2)`` with
        ``(k - 1, (k - 1) * (N - 1))`` degrees of freedom for the
        p-value.

    Returns
    -------
    RankSummary
        Statistic, p-value, and average rank per classifier.  Identical
        scores in every row give statistic 0 (no evidence of any
        difference).
    """
    oriented = -table.scores if higher_is_better else table.scores
    ranks = sps.rankdata(oriented, axis=1)
    avg_ranks = ranks.mean(axis=0)
    n, k = table.scores.shape
    statistic = 12.0 * n / (k * (k + 1)) * (float((avg_ranks**2).sum()) - k * (k + 1) ** 2 / 4.0)
    statistic = max(statistic, 0.0)
    if iman_davenport:
        denominator = n * (k - 1) - statistic
        if denominator <= 0.0:
            f_stat = float("inf")
            p_value = 0.0
        else:
            f_stat = (n - 1) * statistic / denominator
            p_value = float(sps.f.sf(f_stat, k - 1, (k - 1) * (n - 1)))
        return RankSummary(
            statistic=statistic,
            p_value=p_value,
            method="iman_davenport",
            avg_ranks=avg_ranks,
            classifier_names=table.classifier_names,
            n_datasets=n,
            f_statistic=f_stat,
        )
    return RankSummary(
        statistic=statistic,
        p_value=float(sps.chi2.sf(statistic, k - 1)),
        method="chi2",
        avg_ranks=avg_ranks,
        classifier_names=table.classifier_names,
        n_datasets=n,
    )


def nemenyi_cd(k: int, n_datasets: int, level: float = 0.05) -> float:
    """Nemenyi critical distance ``q_alpha(k) * sqrt(k * (k+1) / (6 * N))``.

    Two classifiers differ significantly when their average ranks
    differ by at least this much.  Supported: ``2 <= k <= 10`` and
    levels 0.05 / 0.10 (the embedded table); ``n_datasets >= 2``.
    """
    if level not in _Q_TABLE:
        raise ValueError(f"unsupported level {level}; embedded table has 0.05 and 0.10")
    if not 2 <= k <= 10:
        raise ValueError(f"k must be between 2 and 10, got {k}")
    if n_datasets < 2:
        raise ValueError(f"need at least 2 datasets, got {n_datasets}")
    q = _Q_TABLE[level][k - 2]
    return q * float(np.sqrt(k * (k + 1) / (6.0 * n_datasets)))


@dataclass(frozen=True)
class RankReport:
    """Average-rank diagram description: ranks, CD, groups, pair matrix.

    ``significant[i][j]`` is true when classifiers i and j differ by at
    least the critical distance (boundary inclusive); the relation is
    symmetric and irreflexive.  ``groups`` are the maximal rank-ordered
    runs of classifiers whose rank span stays below the CD (the bars of
    a critical-difference diagram).
    """

    summary: RankSummary
    cd: float
    level: float
    significant: np.ndarray
    groups: tuple[tuple[str, ...], ...]

    def to_dict(self) -> dict:
        order = np.argsort(self.summary.avg_ranks, kind="stable")
        return {
            "method": self.summary.method,
            "statistic": self.summary.statistic,
            "f_statistic": self.summary.f_statistic,
            "p_value": self.summary.p_value,
            "n_datasets": self.summary.n_datasets,
            "level": self.level,
            "cd": self.cd,
            "ranks": {
                self.summary.classifier_names[j]: float(self.summary.avg_ranks[j])
                for j in order
            },
            "groups": [list(group) for group in self.groups],
            "significant_pairs": [
                [self.summary.classifier_names[i], self.summary.classifier_names[j]]
                for i in range(self.summary.k)
                for j in range(i + 1, self.summary.k)
                if self.significant[i, j]
            ],
        }


def compare_ranks(summary: RankSummary, level: float = 0.05) -> RankReport:
    """All-pairs Nemenyi comparison at the given level."""
    cd = nemenyi_cd(summary.k, summary.n_datasets, level)
    diffs = np.abs(summary.avg_ranks[:, None] - summary.avg_ranks[None, :])
    significant = diffs >= cd
    np.fill_diagonal(significant, False)

    order = np.argsort(summary.avg_ranks, kind="stable")
    ranks = summary.avg_ranks[order]
    names = [summary.classifier_names[j] for j in order]
    intervals: list[tuple[int, int]] = []
    for start in range(len(order)):
        end = start
        while end + 1 < len(order) and ranks[end + 1] - ranks[start] < cd:
            end += 1
        intervals.append((start, end))
    maximal = [
        (s, e) for s, e in intervals
        if not any((s2 <= s and e <= e2) and (s2, e2) != (s, e) for s2, e2 in intervals)
    ]
    groups = tuple(tuple(names[s : e + 1]) for s, e in dict.fromkeys(maximal))
    return RankReport(
        summary=summary, cd=cd, level=level, significant=significant, groups=groups
    )
