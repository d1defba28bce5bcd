"""Batting-partnership networks, captain centrality and team performance."""

from .centrality import CentralityReport, centrality_report, degree_centralization, edge_distance, weighted_betweenness
from .graph import PartnershipNetwork, build_network, export_graph
from .ingest import (
    Corpus,
    Format,
    MatchRecord,
    Outcome,
    StatsIndex,
    load_player_stats,
    parse_match_record,
    parse_overs,
    read_corpus,
    read_player_stats,
)
from .leadership import (
    build_differentials,
    build_observations,
    centralized_indicator,
    coefficient_of_variation,
    median_split,
    team_outcome_score,
)
from .simulate import SimConfig, simulate
from .study import StudyConfig, run_replicate

__version__ = "0.1.0"
