"""Linear-SVM sentiment classifiers over three ordinal classes.

The shared building block is a binary L1-hinge SVM trained in the dual
by coordinate descent.  The primal problem is

    min_w  1/2 ||w||^2 + C * sum_i max(0, 1 - y_i * (w . x_i + b))

with the bias handled as an appended constant feature of value 1 (and
therefore regularized).  The dual has one box-constrained variable per
example; a coordinate step on example ``i`` computes the projected
gradient of ``G = y_i * (w . x_i + b) - 1``, clips
``alpha_i - G / ||x~_i||^2`` into ``[0, C_i]``, and updates ``w``
incrementally.  Examples are visited in a freshly seeded random
permutation each epoch; training stops when the largest projected
gradient magnitude of an epoch falls below ``tol`` or after
``max_epochs``.  The dual objective ``sum(alpha) - ||w||^2 / 2`` is
recorded per epoch and never decreases.

Six multiclass architectures combine such planes.  Input vectors are
raw term counts; every plane reweights them with class-ratio weights
computed from its own binary training split, and the learned plane
weights returned to the caller absorb that reweighting, so prediction
consumes raw count vectors directly.

``NeutralZoneSVM``    one negative-vs-positive plane; decision values
                      within a neutral zone around 0 predict neutral.
                      The zone half-width is fixed or tuned on a held-
                      out 10% validation split by maximizing interval
                      alpha against the gold labels.
``TwoPlaneSVM``       plane A separates negative from {neutral,
                      positive}, plane B separates {negative, neutral}
                      from positive; the side picked by both planes
                      wins and a contradiction is resolved by the
                      larger decision magnitude.
``TwoPlaneSVMbin``    the two planes index a (grid+2)^2 histogram over
                      their training decision values (one overflow bin
                      past each edge); a cell predicts its training
                      majority label with the cell's label share as
                      confidence, and empty cells fall back to the
                      geometric TwoPlaneSVM rule.
``CascadingSVM``      plane 1 separates neutral ("objective") from the
                      polar classes; only inputs it sends to the polar
                      side reach plane 2, so neutral is predicted
                      exactly when plane 1 says objective.
``ThreePlaneSVM``     all three one-vs-one planes; the sign triple of
                      the decision values indexes one of 8 subspaces
                      labeled by training majority, and an empty
                      subspace falls back to one-vs-one voting with
                      ties broken by summed decision magnitudes.
``NaiveBayes``        multinomial baseline on the raw counts with
                      add-1 smoothing and training-frequency priors.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

import numpy as np

from .agreement import alpha, build_coincidence
from .corpus import SentimentLabel
from .errors import EvaluationError, ModelFormatError, UndefinedMeasureError
from .features import SparseVector, Vocabulary, class_sides, delta_weights, vocabulary_hash

__all__ = [
    "Variant",
    "TrainConfig",
    "LinearModel",
    "BinTable",
    "SubspaceTable",
    "NaiveBayesTable",
    "SentimentModel",
    "train_binary",
    "decision",
    "train_sentiment",
    "predict",
    "predict_batch",
    "save_model",
    "load_model",
]

_EMPTY_CELL = 127  # sentinel label code for cells with no training mass


class Variant(str, Enum):
    """The six classifier architectures."""

    NEUTRAL_ZONE = "NeutralZoneSVM"
    TWO_PLANE = "TwoPlaneSVM"
    TWO_PLANE_BIN = "TwoPlaneSVMbin"
    CASCADING = "CascadingSVM"
    THREE_PLANE = "ThreePlaneSVM"
    NAIVE_BAYES = "NaiveBayes"

    def __str__(self) -> str:  # pragma: no cover - cosmetic
        return self.value


@dataclass(frozen=True)
class TrainConfig:
    """Training hyperparameters shared by all variants.

    ``neutral_zone`` is either the string ``"tuned"`` (default: pick the
    half-width on a 10% validation split) or a fixed non-negative float;
    it only affects ``NeutralZoneSVM``.  ``bin_grid`` is the per-axis
    cell count of ``TwoPlaneSVMbin``.  ``class_weighting`` scales each
    example's box constraint by ``n / (2 * n_side)`` of its binary side.
    """

    cost: float = 1.0
    tol: float = 1e-3
    max_epochs: int = 50
    seed: int = 0
    bin_grid: int = 10
    neutral_zone: float | str = "tuned"
    class_weighting: bool = False

    def __post_init__(self) -> None:
        if self.cost <= 0:
            raise ValueError(f"cost must be positive, got {self.cost}")
        if self.tol <= 0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        if self.max_epochs < 1:
            raise ValueError(f"max_epochs must be >= 1, got {self.max_epochs}")
        if self.bin_grid < 1:
            raise ValueError(f"bin_grid must be >= 1, got {self.bin_grid}")
        if isinstance(self.neutral_zone, str):
            if self.neutral_zone != "tuned":
                raise ValueError(f"neutral_zone must be a float or 'tuned', got {self.neutral_zone!r}")
        elif self.neutral_zone < 0:
            raise ValueError(f"neutral_zone must be non-negative, got {self.neutral_zone}")


@dataclass(frozen=True)
class LinearModel:
    """A trained hyperplane: dense weights over the vocabulary plus bias.

    ``dual_objectives`` holds the dual objective after every epoch run;
    it is nondecreasing by construction of the coordinate steps.
    """

    weights: np.ndarray
    bias: float
    dual_objectives: tuple[float, ...] = ()
    epochs_run: int = 0

    @property
    def dim(self) -> int:
        return int(self.weights.shape[0])


def decision(model: LinearModel, x: SparseVector) -> float:
    """Signed decision value ``w . x + b``."""
    if x.dim != model.dim:
        raise EvaluationError(f"vector dimension {x.dim} != model dimension {model.dim}")
    return x.dot(model.weights) + model.bias


def train_binary(
    vectors: Sequence[SparseVector],
    y: Sequence[int],
    config: TrainConfig = TrainConfig(),
    upper_bounds: np.ndarray | None = None,
) -> LinearModel:
    """Train one binary plane by dual coordinate descent.

    ``y`` holds +1/-1 side labels; both sides must be present.
    ``upper_bounds`` optionally overrides the per-example box constraint
    (defaults to ``config.cost`` everywhere).  Training is a pure
    function of (data, config): the per-epoch visiting order comes from
    a generator seeded with ``config.seed``.
    """
    n = len(vectors)
    if n == 0:
        raise EvaluationError("cannot train on an empty example set")
    y_arr = np.asarray(y, dtype=np.float64)
    if y_arr.shape != (n,) or not np.all(np.isin(y_arr, (-1.0, 1.0))):
        raise EvaluationError("side labels must be +1/-1, one per example")
    if np.all(y_arr == y_arr[0]):
        raise EvaluationError("cannot train a plane with a single class")
    dim = vectors[0].dim
    if any(v.dim != dim for v in vectors):
        raise EvaluationError("examples disagree on vector dimension")
    if upper_bounds is None:
        bounds = np.full(n, config.cost)
    else:
        bounds = np.asarray(upper_bounds, dtype=np.float64)

    rows = [(v.indices, v.values) for v in vectors]
    q_diag = np.array([float(v.values @ v.values) + 1.0 for v in vectors])
    w = np.zeros(dim)
    b = 0.0
    alphas = np.zeros(n)
    objectives: list[float] = []
    epochs_run = 0
    rng = np.random.default_rng(config.seed)

    for _ in range(config.max_epochs):
        worst = 0.0
        for i in rng.permutation(n):
            idx, vals = rows[i]
            yi = y_arr[i]
            grad = yi * (float(vals @ w[idx]) + b) - 1.0
            ai = alphas[i]
            if ai <= 0.0:
                projected = min(grad, 0.0)
            elif ai >= bounds[i]:
                projected = max(grad, 0.0)
            else:
                projected = grad
            if projected != 0.0:
                worst = max(worst, abs(projected))
                new_ai = min(max(ai - grad / q_diag[i], 0.0), bounds[i])
                step = (new_ai - ai) * yi
                if step != 0.0:
                    w[idx] += step * vals
                    b += step
                    alphas[i] = new_ai
        epochs_run += 1
        objectives.append(float(alphas.sum() - 0.5 * (w @ w + b * b)))
        if worst < config.tol:
            break

    return LinearModel(
        weights=w,
        bias=float(b),
        dual_objectives=tuple(objectives),
        epochs_run=epochs_run,
    )


@dataclass(frozen=True)
class BinTable:
    """Decision-value histogram of ``TwoPlaneSVMbin``.

    Each axis has ``grid`` equal-width cells spanning the training
    range plus one overflow cell on each side, indexed 0 (below) to
    ``grid + 1`` (above).  ``counts[i, j, c]`` is the number of
    training examples of label code ``c - 1`` that landed in cell
    ``(i, j)``.
    """

    grid: int
    edges_a: np.ndarray
    edges_b: np.ndarray
    counts: np.ndarray

    def cell(self, d_a: float, d_b: float) -> tuple[int, int]:
        return _bin_index(d_a, self.edges_a, self.grid), _bin_index(d_b, self.edges_b, self.grid)


def _bin_index(value: float, edges: np.ndarray, grid: int) -> int:
    if edges[0] == edges[-1]:  # degenerate axis: all training mass at one value
        if value < edges[0]:
            return 0
        return 1 if value == edges[0] else grid + 1
    return int(np.searchsorted(edges, value, side="right")) if value < edges[-1] else (
        grid if value == edges[-1] else grid + 1
    )


@dataclass(frozen=True)
class SubspaceTable:
    """Sign-triple lookup of ``ThreePlaneSVM``.

    ``counts[s, c]`` counts training examples of label code ``c - 1``
    whose decision signs index subspace ``s`` (bit order: neg_vs_neu,
    neu_vs_pos, neg_vs_pos; a non-negative decision sets the bit).
    """

    counts: np.ndarray


@dataclass(frozen=True)
class NaiveBayesTable:
    """Sufficient statistics of the multinomial baseline (raw counts)."""

    doc_counts: np.ndarray
    term_counts: np.ndarray

    @property
    def totals(self) -> np.ndarray:
        return self.term_counts.sum(axis=1)


@dataclass(frozen=True)
class SentimentModel:
    """A trained three-class sentiment classifier.

    ``planes`` maps plane names to hyperplanes whose weights already
    absorb the per-plane term reweighting, so prediction takes raw
    count vectors.  ``vocab_hash`` ties the model to the vocabulary it
    was trained against ("" when trained without one).
    """

    variant: Variant
    dim: int
    vocab_hash: str = ""
    planes: dict[str, LinearModel] = field(default_factory=dict)
    neutral_zone: float | None = None
    bins: BinTable | None = None
    subspaces: SubspaceTable | None = None
    nb: NaiveBayesTable | None = None


_PLANE_SIDES: dict[Variant, dict[str, tuple[tuple[int, ...], tuple[int, ...]]]] = {
    Variant.NEUTRAL_ZONE: {"polarity": ((-1,), (1,))},
    Variant.TWO_PLANE: {"neg_vs_rest": ((-1,), (0, 1)), "rest_vs_pos": ((-1, 0), (1,))},
    Variant.TWO_PLANE_BIN: {"neg_vs_rest": ((-1,), (0, 1)), "rest_vs_pos": ((-1, 0), (1,))},
    Variant.CASCADING: {"subjectivity": ((0,), (-1, 1)), "polarity": ((-1,), (1,))},
    Variant.THREE_PLANE: {
        "neg_vs_neu": ((-1,), (0,)),
        "neu_vs_pos": ((0,), (1,)),
        "neg_vs_pos": ((-1,), (1,)),
    },
}


def _train_plane(
    vectors: Sequence[SparseVector],
    labels: np.ndarray,
    neg_side: tuple[int, ...],
    pos_side: tuple[int, ...],
    config: TrainConfig,
    subset: np.ndarray | None = None,
) -> LinearModel:
    """Train one binary plane on its label subset with its own weights.

    The raw count vectors of the plane's examples are scaled by the
    class-ratio weights computed from this plane's split; the returned
    plane folds those weights back into ``weights`` so its decision
    function applies to raw count vectors.
    """
    member = np.isin(labels, neg_side + pos_side)
    if subset is not None:
        member &= subset
    rows = np.flatnonzero(member)
    if rows.size == 0:
        raise EvaluationError(f"no examples for plane {neg_side} vs {pos_side}")
    plane_vectors = [vectors[i] for i in rows]
    positive = np.isin(labels[rows], pos_side)
    dim = plane_vectors[0].dim
    sides = class_sides(plane_vectors, positive, dim)
    gamma = delta_weights(sides)
    scaled = []
    for vec in plane_vectors:
        values = vec.values * gamma[vec.indices]
        keep = values != 0.0
        scaled.append(SparseVector(vec.indices[keep], values[keep], dim))
    y = np.where(positive, 1.0, -1.0)
    bounds = None
    if config.class_weighting:
        n = y.size
        n_pos = int(positive.sum())
        per_side = {1.0: config.cost * n / (2.0 * n_pos), -1.0: config.cost * n / (2.0 * (n - n_pos))}
        bounds = np.array([per_side[v] for v in y])
    model = train_binary(scaled, y, config, upper_bounds=bounds)
    return LinearModel(
        weights=model.weights * gamma,
        bias=model.bias,
        dual_objectives=model.dual_objectives,
        epochs_run=model.epochs_run,
    )


def _validation_split(labels: np.ndarray, seed: int) -> tuple[np.ndarray, np.ndarray]:
    """Seeded stratified 10% split; classes with one example stay in training."""
    rng = np.random.default_rng((seed, len(labels)))
    val: list[np.ndarray] = []
    for code in (-1, 0, 1):
        members = np.flatnonzero(labels == code)
        if members.size < 2:
            continue
        take = max(1, int(round(0.1 * members.size)))
        take = min(take, members.size - 1)
        val.append(rng.permutation(members)[:take])
    val_idx = np.sort(np.concatenate(val)) if val else np.empty(0, dtype=np.intp)
    mask = np.ones(labels.size, dtype=bool)
    mask[val_idx] = False
    return np.flatnonzero(mask), val_idx


def _tune_neutral_zone(
    vectors: Sequence[SparseVector],
    labels: np.ndarray,
    config: TrainConfig,
) -> tuple[float, LinearModel]:
    """Pick the neutral-zone half-width maximizing interval alpha on a
    held-out split; ties prefer the narrower zone."""
    train_idx, val_idx = _validation_split(labels, config.seed)
    if val_idx.size == 0:
        plane = _train_plane(vectors, labels, (-1,), (1,), config)
        return 0.0, plane
    subset = np.zeros(labels.size, dtype=bool)
    subset[train_idx] = True
    plane = _train_plane(vectors, labels, (-1,), (1,), config, subset=subset)
    values = np.array([decision(plane, vectors[i]) for i in val_idx])
    gold = labels[val_idx]
    candidates = np.unique(np.concatenate(([0.0], np.abs(values))))
    if candidates.size > 200:
        candidates = np.unique(np.quantile(candidates, np.linspace(0.0, 1.0, 201)))
    best_zone = 0.0
    best_score = -np.inf
    for zone in candidates:
        pred = np.where(np.abs(values) <= zone, 0, np.where(values > 0, 1, -1))
        try:
            score = alpha(build_coincidence(list(zip(pred.tolist(), gold.tolist()))), "interval")
        except UndefinedMeasureError:
            continue
        if score > best_score:
            best_score = score
            best_zone = float(zone)
    return best_zone, plane


def train_sentiment(
    vectors: Sequence[SparseVector],
    labels: Sequence[SentimentLabel | int],
    variant: Variant | str = Variant.TWO_PLANE,
    config: TrainConfig = TrainConfig(),
    vocab: Vocabulary | None = None,
) -> SentimentModel:
    """Train one classifier variant on raw count vectors.

    All three classes must appear in ``labels``.  ``vocab`` is only
    consulted for the vocabulary hash recorded on the model; passing
    ``None`` records an empty hash.
    """
    variant = Variant(variant)
    if not vectors:
        raise EvaluationError("cannot train on an empty corpus")
    label_arr = np.array([int(l) for l in labels], dtype=np.int64)
    if label_arr.shape[0] != len(vectors):
        raise EvaluationError("vectors and labels differ in length")
    missing = [c for c in (-1, 0, 1) if not np.any(label_arr == c)]
    if missing:
        raise EvaluationError(f"training data is missing class(es) {missing}")
    dim = vectors[0].dim
    base = dict(
        variant=variant,
        dim=dim,
        vocab_hash=vocabulary_hash(vocab) if vocab is not None else "",
    )

    if variant is Variant.NAIVE_BAYES:
        doc_counts = np.zeros(3, dtype=np.int64)
        term_counts = np.zeros((3, dim), dtype=np.float64)
        for vec, code in zip(vectors, label_arr):
            doc_counts[code + 1] += 1
            term_counts[code + 1, vec.indices] += vec.values
        return SentimentModel(nb=NaiveBayesTable(doc_counts, term_counts), **base)

    if variant is Variant.NEUTRAL_ZONE:
        if config.neutral_zone == "tuned":
            zone, plane = _tune_neutral_zone(vectors, label_arr, config)
        else:
            zone = float(config.neutral_zone)
            plane = _train_plane(vectors, label_arr, (-1,), (1,), config)
        return SentimentModel(planes={"polarity": plane}, neutral_zone=zone, **base)

    planes = {
        name: _train_plane(vectors, label_arr, neg, pos, config)
        for name, (neg, pos) in _PLANE_SIDES[variant].items()
    }

    if variant is Variant.TWO_PLANE_BIN:
        d_a = np.array([decision(planes["neg_vs_rest"], v) for v in vectors])
        d_b = np.array([decision(planes["rest_vs_pos"], v) for v in vectors])
        grid = config.bin_grid
        edges_a = np.linspace(d_a.min(), d_a.max(), grid + 1)
        edges_b = np.linspace(d_b.min(), d_b.max(), grid + 1)
        counts = np.zeros((grid + 2, grid + 2, 3), dtype=np.int64)
        for va, vb, code in zip(d_a, d_b, label_arr):
            i = _bin_index(float(va), edges_a, grid)
            j = _bin_index(float(vb), edges_b, grid)
            counts[i, j, code + 1] += 1
        bins = BinTable(grid=grid, edges_a=edges_a, edges_b=edges_b, counts=counts)
        return SentimentModel(planes=planes, bins=bins, **base)

    if variant is Variant.THREE_PLANE:
        counts = np.zeros((8, 3), dtype=np.int64)
        order = ("neg_vs_neu", "neu_vs_pos", "neg_vs_pos")
        for vec, code in zip(vectors, label_arr):
            signs = [decision(planes[name], vec) >= 0.0 for name in order]
            idx = signs[0] * 4 + signs[1] * 2 + signs[2]
            counts[idx, code + 1] += 1
        return SentimentModel(planes=planes, subspaces=SubspaceTable(counts), **base)

    return SentimentModel(planes=planes, **base)


def _two_plane_rule(d_a: float, d_b: float) -> int:
    """Combine the two plane decisions geometrically.

    Negative side of plane A predicts negative, positive side of plane
    B predicts positive, agreement on the middle region predicts
    neutral, and the contradictory corner (A says negative, B says
    positive) goes to the plane with the larger decision magnitude.
    """
    says_neg = d_a < 0.0
    says_pos = d_b > 0.0
    if says_neg and says_pos:
        return -1 if abs(d_a) >= abs(d_b) else 1
    if says_neg:
        return -1
    if says_pos:
        return 1
    return 0


def _majority(counts: np.ndarray) -> int:
    """Majority label code of a count triple; ties pick the smaller code."""
    if counts.sum() == 0:
        return _EMPTY_CELL
    return int(np.argmax(counts)) - 1


def predict(model: SentimentModel, x: SparseVector) -> tuple[SentimentLabel, float | None]:
    """Predict one label; the second element is a confidence when the
    variant defines one (bin label share, posterior probability)."""
    if x.dim != model.dim:
        raise EvaluationError(f"vector dimension {x.dim} != model dimension {model.dim}")
    variant = model.variant

    if variant is Variant.NAIVE_BAYES:
        probs = _nb_posterior(model, x)
        code = int(np.argmax(probs)) - 1
        return SentimentLabel(code), float(probs[code + 1])

    if variant is Variant.NEUTRAL_ZONE:
        value = decision(model.planes["polarity"], x)
        zone = model.neutral_zone or 0.0
        if abs(value) <= zone:
            return SentimentLabel.NEUTRAL, None
        return (SentimentLabel.POSITIVE if value > 0 else SentimentLabel.NEGATIVE), None

    if variant is Variant.CASCADING:
        if decision(model.planes["subjectivity"], x) <= 0.0:
            return SentimentLabel.NEUTRAL, None
        polar = decision(model.planes["polarity"], x)
        return (SentimentLabel.POSITIVE if polar >= 0.0 else SentimentLabel.NEGATIVE), None

    if variant is Variant.THREE_PLANE:
        order = ("neg_vs_neu", "neu_vs_pos", "neg_vs_pos")
        values = [decision(model.planes[name], x) for name in order]
        idx = (values[0] >= 0.0) * 4 + (values[1] >= 0.0) * 2 + (values[2] >= 0.0)
        assert model.subspaces is not None
        code = _majority(model.subspaces.counts[idx])
        if code != _EMPTY_CELL:
            return SentimentLabel(code), None
        # one-vs-one voting: each plane backs one class with its magnitude
        votes = {-1: [0, 0.0], 0: [0, 0.0], 1: [0, 0.0]}
        backing = (
            (0 if values[0] >= 0.0 else -1, values[0]),
            (1 if values[1] >= 0.0 else 0, values[1]),
            (1 if values[2] >= 0.0 else -1, values[2]),
        )
        for label, value in backing:
            votes[label][0] += 1
            votes[label][1] += abs(value)
        code = max(votes, key=lambda c: (votes[c][0], votes[c][1], -c))
        return SentimentLabel(code), None

    d_a = decision(model.planes["neg_vs_rest"], x)
    d_b = decision(model.planes["rest_vs_pos"], x)

    if variant is Variant.TWO_PLANE_BIN:
        assert model.bins is not None
        i, j = model.bins.cell(d_a, d_b)
        cell = model.bins.counts[i, j]
        code = _majority(cell)
        if code != _EMPTY_CELL:
            return SentimentLabel(code), float(cell.max() / cell.sum())
        return SentimentLabel(_two_plane_rule(d_a, d_b)), None

    return SentimentLabel(_two_plane_rule(d_a, d_b)), None


def _nb_posterior(model: SentimentModel, x: SparseVector) -> np.ndarray:
    nb = model.nb
    assert nb is not None
    n_docs = nb.doc_counts.sum()
    if n_docs == 0:
        raise EvaluationError("NaiveBayes model has no training mass")
    log_post = np.log(nb.doc_counts / n_docs)
    totals = nb.totals
    for c in range(3):
        theta = (nb.term_counts[c, x.indices] + 1.0) / (totals[c] + model.dim)
        log_post[c] += float(x.values @ np.log(theta))
    log_post -= log_post.max()
    probs = np.exp(log_post)
    return probs / probs.sum()


def predict_batch(model: SentimentModel, vectors: Sequence[SparseVector]) -> np.ndarray:
    """Predicted label codes for a sequence of vectors."""
    return np.array([int(predict(model, v)[0]) for v in vectors], dtype=np.int64)


# --- serialization ----------------------------------------------------------

_MODEL_MAGIC = "sentagree-model"
_MODEL_VERSION = 1


def _fmt_floats(values: np.ndarray) -> str:
    return " ".join(repr(float(v)) for v in values)


def save_model(model: SentimentModel, path: str | Path) -> None:
    """Write a model as versioned flat text.

    The format stores the variant, dimension, vocabulary hash, every
    plane (bias plus dense weights), and the variant's calibration
    table (neutral zone, bin histogram, subspace counts, or the
    multinomial sufficient statistics).  Floats are written with
    ``repr`` and reload bit-exactly.
    """
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(f"{_MODEL_MAGIC} {_MODEL_VERSION}\n")
        handle.write(f"variant {model.variant.value}\n")
        handle.write(f"dim {model.dim}\n")
        handle.write(f"vocab_hash {model.vocab_hash or '-'}\n")
        handle.write(f"planes {len(model.planes)}\n")
        for name in sorted(model.planes):
            plane = model.planes[name]
            handle.write(f"plane {name}\n")
            handle.write(f"bias {float(plane.bias)!r}\n")
            handle.write("weights " + _fmt_floats(plane.weights) + "\n")
        if model.neutral_zone is not None:
            handle.write(f"neutral_zone {float(model.neutral_zone)!r}\n")
        if model.bins is not None:
            bins = model.bins
            handle.write(f"bin_grid {bins.grid}\n")
            handle.write("edges_a " + _fmt_floats(bins.edges_a) + "\n")
            handle.write("edges_b " + _fmt_floats(bins.edges_b) + "\n")
            filled = np.argwhere(bins.counts.sum(axis=2) > 0)
            handle.write(f"bins {len(filled)}\n")
            for i, j in filled:
                c = bins.counts[i, j]
                handle.write(f"bin {i} {j} {c[0]} {c[1]} {c[2]}\n")
        if model.subspaces is not None:
            handle.write("subspaces 8\n")
            for idx in range(8):
                c = model.subspaces.counts[idx]
                handle.write(f"subspace {idx} {c[0]} {c[1]} {c[2]}\n")
        if model.nb is not None:
            nb = model.nb
            handle.write("nb_docs " + " ".join(str(int(c)) for c in nb.doc_counts) + "\n")
            for c in range(3):
                handle.write(f"nb_counts {c} " + _fmt_floats(nb.term_counts[c]) + "\n")


def load_model(path: str | Path, vocab: Vocabulary | None) -> SentimentModel:
    """Read a model written by :func:`save_model`.

    ``vocab`` must be the vocabulary the model was trained against;
    a hash mismatch (or a missing vocabulary for a model that recorded
    one) raises :class:`ModelFormatError`.
    """
    with open(path, encoding="utf-8") as handle:
        lines = handle.read().splitlines()
    if not lines or not lines[0].startswith(_MODEL_MAGIC):
        raise ModelFormatError(f"{path}: not a model file")
    version = lines[0].removeprefix(_MODEL_MAGIC).strip()
    if version != str(_MODEL_VERSION):
        raise ModelFormatError(f"{path}: unsupported model version {version!r}")
    try:
        variant = Variant(lines[1].split(" ", 1)[1])
        dim = int(lines[2].split()[1])
        stored_hash = lines[3].split()[1]
        n_planes = int(lines[4].split()[1])
        cursor = 5
        planes: dict[str, LinearModel] = {}
        for _ in range(n_planes):
            name = lines[cursor].split(" ", 1)[1]
            bias = float(lines[cursor + 1].split()[1])
            weights = np.array([float(v) for v in lines[cursor + 2].split()[1:]])
            if weights.shape[0] != dim:
                raise ModelFormatError(f"{path}: plane {name} has {weights.shape[0]} weights, expected {dim}")
            planes[name] = LinearModel(weights=weights, bias=bias)
            cursor += 3
        neutral_zone = None
        bins = None
        subspaces = None
        nb = None
        while cursor < len(lines):
            key = lines[cursor].split(" ", 1)[0]
            if key == "neutral_zone":
                neutral_zone = float(lines[cursor].split()[1])
                cursor += 1
            elif key == "bin_grid":
                grid = int(lines[cursor].split()[1])
                edges_a = np.array([float(v) for v in lines[cursor + 1].split()[1:]])
                edges_b = np.array([float(v) for v in lines[cursor + 2].split()[1:]])
                n_filled = int(lines[cursor + 3].split()[1])
                counts = np.zeros((grid + 2, grid + 2, 3), dtype=np.int64)
                for row in lines[cursor + 4 : cursor + 4 + n_filled]:
                    _, i, j, c0, c1, c2 = row.split()
                    counts[int(i), int(j)] = (int(c0), int(c1), int(c2))
                bins = BinTable(grid=grid, edges_a=edges_a, edges_b=edges_b, counts=counts)
                cursor += 4 + n_filled
            elif key == "subspaces":
                counts = np.zeros((8, 3), dtype=np.int64)
                for row in lines[cursor + 1 : cursor + 9]:
                    _, idx, c0, c1, c2 = row.split()
                    counts[int(idx)] = (int(c0), int(c1), int(c2))
                subspaces = SubspaceTable(counts)
                cursor += 9
            elif key == "nb_docs":
                doc_counts = np.array([int(v) for v in lines[cursor].split()[1:]], dtype=np.int64)
                term_counts = np.zeros((3, dim), dtype=np.float64)
                for offset in range(3):
                    fields = lines[cursor + 1 + offset].split()
                    term_counts[int(fields[1])] = [float(v) for v in fields[2:]]
                nb = NaiveBayesTable(doc_counts, term_counts)
                cursor += 4
            else:
                raise ModelFormatError(f"{path}: unexpected line {lines[cursor]!r}")
    except (IndexError, ValueError) as exc:
        raise ModelFormatError(f"{path}: malformed model file ({exc})") from None

    recorded = "" if stored_hash == "-" else stored_hash
    if recorded:
        if vocab is None:
            raise ModelFormatError(f"{path}: model requires its training vocabulary to load")
        actual = vocabulary_hash(vocab)
        if actual != recorded:
            raise ModelFormatError(
                f"{path}: vocabulary hash mismatch (model {recorded[:12]}..., given {actual[:12]}...)"
            )
    return SentimentModel(
        variant=variant,
        dim=dim,
        vocab_hash=recorded,
        planes=planes,
        neutral_zone=neutral_zone,
        bins=bins,
        subspaces=subspaces,
        nb=nb,
    )
