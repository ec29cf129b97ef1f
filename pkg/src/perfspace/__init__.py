"""Performance-space analytics for recommender-system dataset selection.

Datasets become points in a space whose axes are per-algorithm scores;
two principal components make that space plottable, quintiles of the
normalized positions grade dataset difficulty, and variance-normalized
distances rank datasets by behavioral similarity. Metadata risk bands,
a persistent HTTP API, and an ingestion CLI round out the system.
"""

from .analysis import (
    ComparisonRegion,
    DifficultyLabel,
    SimilarityScore,
    classify_region,
    comparison_report,
    difficulty_labels,
    difficulty_scores,
    rank_by_similarity,
    similarity,
    vn_distance,
)
from .config import Config, DEFAULT_BOOTSTRAP, DEFAULT_SEED
from .metadata import (
    DatasetMeta,
    Feedback,
    Interaction,
    InteractionLog,
    RiskBand,
    RiskDimension,
    RiskProfile,
    classify_risk,
    compute_metadata,
    k_core_prune,
    load_appendix_corpus,
    parse_interaction_log,
)
from .metrics import (
    EvaluationRun,
    UserRun,
    dcg_at_k,
    evaluate,
    hit_at_k,
    hit_ratio_at_k,
    ndcg_at_k,
    recall_at_k,
)
from .model import (
    AlgorithmRef,
    DatasetRef,
    K_VALUES,
    MetricKind,
    PerformanceMatrix,
    PerformanceRecord,
    assemble_matrix,
)
from .pca import (
    ApsPoint,
    PcaModel,
    compute_aps_points,
    estimate_position_variance,
    fit,
    project,
)
from .quintiles import (
    QuintileBoundaries,
    QuintileGroup,
    classify,
    percentile,
    quintile_boundaries,
    relative_position,
)
from .rng import SplitMix64
from .service import create_app
from .storage import PcaResultRow, Store

__all__ = [
    "AlgorithmRef",
    "ApsPoint",
    "ComparisonRegion",
    "Config",
    "DatasetMeta",
    "DatasetRef",
    "DEFAULT_BOOTSTRAP",
    "DEFAULT_SEED",
    "DifficultyLabel",
    "EvaluationRun",
    "Feedback",
    "Interaction",
    "InteractionLog",
    "K_VALUES",
    "MetricKind",
    "PcaModel",
    "PcaResultRow",
    "PerformanceMatrix",
    "PerformanceRecord",
    "QuintileBoundaries",
    "QuintileGroup",
    "RiskBand",
    "RiskDimension",
    "RiskProfile",
    "SimilarityScore",
    "SplitMix64",
    "Store",
    "UserRun",
    "assemble_matrix",
    "classify",
    "classify_region",
    "classify_risk",
    "comparison_report",
    "compute_aps_points",
    "compute_metadata",
    "create_app",
    "dcg_at_k",
    "difficulty_labels",
    "difficulty_scores",
    "estimate_position_variance",
    "evaluate",
    "fit",
    "hit_at_k",
    "hit_ratio_at_k",
    "k_core_prune",
    "load_appendix_corpus",
    "ndcg_at_k",
    "parse_interaction_log",
    "percentile",
    "project",
    "quintile_boundaries",
    "rank_by_similarity",
    "recall_at_k",
    "relative_position",
    "similarity",
    "vn_distance",
]
