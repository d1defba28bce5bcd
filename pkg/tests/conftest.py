import copy
import json

import pytest


def partnership(a, b, runs):
    return {"batsman_a": a, "batsman_b": b, "runs": runs}


def team(name, captain, innings, runs_total=None, overs="20.0", **extra):
    if runs_total is None:
        runs_total = sum(p["runs"] for inn in innings for p in inn)
    d = {
        "team": name,
        "captain": captain,
        "innings": [{"partnerships": inn} for inn in innings],
        "runs_total": runs_total,
        "overs": overs,
    }
    d.update(extra)
    return d


def match_doc(match_id="m1", fmt="ODI", year=2005, ground="Lord's", outcome="TEAM1_WIN", teams=None):
    if teams is None:
        teams = [
            team("England", "E1", [[partnership("E1", "E2", 30)]]),
            team("Australia", "A1", [[partnership("A1", "A2", 20)]]),
        ]
    return {
        "v": 1,
        "match_id": match_id,
        "format": fmt,
        "year": year,
        "ground": ground,
        "outcome": outcome,
        "teams": teams,
    }


def dumps(doc):
    return json.dumps(doc)


@pytest.fixture
def minimal_doc():
    return copy.deepcopy(match_doc())


def make_net(edges, team="T", match_id="m"):
    from leadnet.graph import PartnershipNetwork

    norm = {}
    nodes = set()
    for (a, b), w in edges.items():
        key = tuple(sorted((a, b)))
        norm[key] = w
        nodes.update(key)
    return PartnershipNetwork(team, match_id, tuple(sorted(nodes)), dict(sorted(norm.items())))


@pytest.fixture(scope="session")
def planted_sweep():
    from sweep import planted_and_null

    return planted_and_null()
