"""Signed PageRank over explicit and implicit votes for estimating user proficiency."""

from .baselines import cefr_score, load_cefr_profiles, votes_baseline
from .config import PRESETS, RankConfig, get_preset
from .estimator import ProficiencyRank
from .evaluation import spearman, theta_sweep
from .graph import VoteDataset, load_dataset, load_dataset_dir
from .rank import proficiency_rank
from .search import grid_search
from .synth import GenParams, generate_network

__version__ = "0.1.0"

__all__ = [
    "PRESETS",
    "GenParams",
    "ProficiencyRank",
    "RankConfig",
    "VoteDataset",
    "cefr_score",
    "generate_network",
    "get_preset",
    "grid_search",
    "load_cefr_profiles",
    "load_dataset",
    "load_dataset_dir",
    "proficiency_rank",
    "spearman",
    "theta_sweep",
    "votes_baseline",
]
