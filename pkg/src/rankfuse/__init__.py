"""Weighted rank aggregation, classical baselines, a noise benchmark and a crowd-label pipeline."""

__version__ = "0.1.0"

from .baselines import (BaselineKind, Mc4Config, borda, geometric_rank, mc4, mean_rank,
                        order_statistic_scores, robust_rank_aggregation, run_baseline, simple_voting, stuart)
from .bench import SweepConfig, SweepResult, auc_trapezoid, perturb_ranking, run_algorithm, run_sweep
from .crowd import (LabelMatrix, PipelineConfig, annotator_features, evaluate_accuracy, feature_rankings,
                    majority_vote, rank_to_weight, run_pipeline, weighted_label_aggregate)
from .errors import RankFuseError
from .merge import AggregationResult, MergeConfig, aggregate, merge_pair, update_weight
from .metrics import (DistanceKind, footrule_distance, kendall_distance, normalized_similarity,
                      similarity_matrix, weighted_mean_similarity, weighted_total_distance)
from .rankings import Ranking, RankingList, WeightedRanking, positions_of, validate_ranking
from .scores import ScoreVector, gain_score, merge_scores, overall_score, penalty_score, score_vector

__all__ = [
    "AggregationResult", "BaselineKind", "DistanceKind", "LabelMatrix", "Mc4Config", "MergeConfig",
    "PipelineConfig", "RankFuseError", "Ranking", "RankingList", "ScoreVector", "SweepConfig", "SweepResult",
    "WeightedRanking", "aggregate", "annotator_features", "auc_trapezoid", "borda", "evaluate_accuracy",
    "feature_rankings", "footrule_distance", "gain_score", "geometric_rank", "kendall_distance",
    "majority_vote", "mc4", "mean_rank", "merge_pair", "merge_scores", "normalized_similarity",
    "order_statistic_scores", "overall_score", "penalty_score", "perturb_ranking", "positions_of",
    "rank_to_weight", "robust_rank_aggregation", "run_algorithm", "run_baseline", "run_pipeline",
    "run_sweep", "score_vector", "similarity_matrix", "simple_voting", "stuart", "update_weight",
    "validate_ranking", "weighted_label_aggregate", "weighted_mean_similarity", "weighted_total_distance",
]
