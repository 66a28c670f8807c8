"""sentagree: agreement measurement and ordinal sentiment classification.

The package covers the full pipeline for multiply-annotated short
texts: corpus ingestion and pair extraction, chance-corrected agreement
measures with bootstrap intervals, gold-standard merging, tweet-aware
text features, six linear-SVM/Bayes classifier variants over the
three-point sentiment scale, blocked stratified cross-validation with
learning curves, and Friedman/Nemenyi ranking of classifiers across
datasets.
"""

from .agreement import (
    CoincidenceMatrix,
    ConfidenceInterval,
    Measure,
    OrderingDiagnostics,
    acc_within_1,
    accuracy,
    alpha,
    bootstrap_ci,
    build_coincidence,
    compute_measure,
    f1_bar,
    ordering_diagnostics,
    sentiment_score,
)
from .classify import (
    LinearModel,
    SentimentModel,
    TrainConfig,
    Variant,
    decision,
    load_model,
    predict,
    predict_batch,
    save_model,
    train_binary,
    train_sentiment,
)
from .corpus import (
    AnnotationRecord,
    GoldPost,
    LabelPair,
    PairKind,
    SentimentLabel,
    extract_pairs,
    load_annotations,
    load_gold,
    merge_gold,
    save_gold,
    time_ordered_chunks,
)
from .errors import (
    CorpusFormatError,
    EvaluationError,
    FoldPlanError,
    ModelFormatError,
    SentagreeError,
    UndefinedMeasureError,
    VocabularyError,
)
from .evaluation import (
    DEFAULT_MEASURES,
    CrossValResult,
    CurvePoint,
    FoldPlan,
    LearningCurve,
    cross_validate,
    learning_curve,
    plan_folds,
    score_predictions,
)
from .features import (
    SparseVector,
    Vocabulary,
    build_vocabulary,
    count_vector,
    delta_weights,
    english_suffix_stem,
    load_vocabulary,
    normalize,
    save_vocabulary,
    vectorize,
    vocabulary_hash,
    with_sides,
)
from .ranking import (
    RankReport,
    RankSummary,
    ScoreTable,
    compare_ranks,
    friedman,
    nemenyi_cd,
)

__version__ = "0.1.0"

__all__ = [
    "AnnotationRecord",
    "CoincidenceMatrix",
    "ConfidenceInterval",
    "CorpusFormatError",
    "CrossValResult",
    "CurvePoint",
    "DEFAULT_MEASURES",
    "EvaluationError",
    "FoldPlan",
    "FoldPlanError",
    "GoldPost",
    "LabelPair",
    "LearningCurve",
    "LinearModel",
    "Measure",
    "ModelFormatError",
    "OrderingDiagnostics",
    "PairKind",
    "RankReport",
    "RankSummary",
    "ScoreTable",
    "SentagreeError",
    "SentimentLabel",
    "SentimentModel",
    "SparseVector",
    "TrainConfig",
    "UndefinedMeasureError",
    "Variant",
    "Vocabulary",
    "VocabularyError",
    "acc_within_1",
    "accuracy",
    "alpha",
    "bootstrap_ci",
    "build_coincidence",
    "build_vocabulary",
    "compare_ranks",
    "compute_measure",
    "count_vector",
    "cross_validate",
    "decision",
    "delta_weights",
    "english_suffix_stem",
    "extract_pairs",
    "f1_bar",
    "friedman",
    "learning_curve",
    "load_annotations",
    "load_gold",
    "load_model",
    "load_vocabulary",
    "merge_gold",
    "nemenyi_cd",
    "normalize",
    "ordering_diagnostics",
    "plan_folds",
    "predict",
    "predict_batch",
    "save_gold",
    "save_model",
    "save_vocabulary",
    "score_predictions",
    "sentiment_score",
    "time_ordered_chunks",
    "train_binary",
    "train_sentiment",
    "vectorize",
    "vocabulary_hash",
    "with_sides",
]
