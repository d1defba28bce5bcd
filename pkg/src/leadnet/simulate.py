"""Synthetic corpora with planted leadership effects.

Each simulated match builds two batting chains, computes the realized
captain-centrality indicators ``C1, C2`` and centralization ``ω1, ω2``, then

* draws the result from ``P(team 1 wins) = expit(beta_c * (C1 - C2))`` (after
  an optional draw/tie draw), so a row-level logit of W on C recovers
  ``beta_c``;
* sets run-rates so that ``r1 - r2 = a1·δω + a2·δCv + a3·δB + noise``.

Run totals and results are drawn independently, so a simulated side can win
while scoring fewer runs. The analysis never cross-checks the two.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np
from scipy.special import expit

from .centrality import centrality_report
from .errors import ConfigError
from .graph import network_from_partnerships
from .ingest import (
    FIRST_YEAR,
    Corpus,
    Format,
    Innings,
    MatchRecord,
    Outcome,
    Partnership,
    PlayerSeasonStats,
    StatsIndex,
    TeamInningsSet,
)
from .leadership import centralized_indicator, coefficient_of_variation

DEFAULT_TEAMS = (
    "Australia",
    "Bangladesh",
    "England",
    "India",
    "New Zealand",
    "Pakistan",
    "South Africa",
    "Sri Lanka",
    "West Indies",
    "Zimbabwe",
)


@dataclass(frozen=True)
class SimConfig:
    n_matches: int = 1000
    odi_fraction: float = 1.0
    beta_c: float = 0.0
    a1: float = 0.0
    a2: float = 0.0
    a3: float = 0.0
    teams: tuple[str, ...] = DEFAULT_TEAMS
    n_grounds: int = 12
    first_year: int = 2000
    last_year: int = 2013
    squad_size: int = 15
    rate_noise: float = 0.3
    partnership_mean: float = 25.0
    draw_prob: float = 0.3
    tie_prob: float = 0.005
    captain_anchor: float = 0.8
    missing_stats_prob: float = 0.0
    seed: int = 0

    def validate(self) -> None:
        if self.n_matches < 1:
            raise ConfigError("n_matches must be at least 1")
        if len(set(self.teams)) < 2:
            raise ConfigError("need at least two distinct teams")
        if self.n_grounds < 1:
            raise ConfigError("n_grounds must be at least 1")
        if self.squad_size < 11:
            raise ConfigError("squad_size must be at least 11")
        for name in ("odi_fraction", "draw_prob", "tie_prob", "captain_anchor", "missing_stats_prob"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ConfigError(f"{name} must lie in [0, 1], got {v}")
        for name in ("rate_noise", "partnership_mean"):
            if getattr(self, name) < 0:
                raise ConfigError(f"{name} must be non-negative")
        if self.odi_fraction < 1.0 and self.first_year < FIRST_YEAR[Format.TEST]:
            raise ConfigError("years precede Test cricket")
        if self.odi_fraction > 0.0 and self.first_year < FIRST_YEAR[Format.ODI]:
            raise ConfigError("years precede ODI cricket")
        if self.last_year < self.first_year:
            raise ConfigError("last_year before first_year")
        for name in ("beta_c", "a1", "a2", "a3"):
            if not math.isfinite(getattr(self, name)):
                raise ConfigError(f"{name} must be finite")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["teams"] = list(self.teams)
        return d


def _code(team: str) -> str:
    return "".join(w[0] for w in team.split()).upper() if " " in team else team[:3].upper()


def _player_ids(cfg: SimConfig) -> dict[str, list[str]]:
    codes: dict[str, str] = {}
    for t in cfg.teams:
        c = _code(t)
        while c in codes.values():
            c += "X"
        codes[t] = c
    return {t: [f"{codes[t]}-{k:02d}" for k in range(1, cfg.squad_size + 1)] for t in cfg.teams}


def _simulate_stats(cfg: SimConfig, rng: np.random.Generator, squads) -> StatsIndex:
    skill = {}
    rows = []
    for team in cfg.teams:
        for p in squads[team]:
            skill[p] = float(rng.normal())
    for year in range(cfg.first_year, cfg.last_year + 1):
        for team in cfg.teams:
            for p in squads[team]:
                icc = int(np.clip(round(rng.normal(500 + 150 * skill[p], 80)), 0, 1000))
                avg = round(max(0.0, rng.normal(32 + 9 * skill[p], 5)), 2)
                if rng.random() < cfg.missing_stats_prob:
                    continue
                rows.append(PlayerSeasonStats(p, year, icc, avg))
    return StatsIndex(rows)


def _innings(order: list[str], captain: str, cfg: SimConfig, rng: np.random.Generator) -> Innings:
    wickets = int(rng.integers(2, 11))
    n_parts = wickets if wickets == 10 else wickets + 1
    crease = [order[0], order[1]]
    nxt = 2
    parts = []
    for k in range(n_parts):
        runs = int(round(rng.gamma(1.2, cfg.partnership_mean / 1.2)))
        parts.append(Partnership(crease[0], crease[1], runs))
        if k == n_parts - 1:
            break
        if captain in crease:
            other = crease[1 - crease.index(captain)]
            out = other if rng.random() < cfg.captain_anchor else captain
        else:
            out = crease[int(rng.integers(0, 2))]
        crease[crease.index(out)] = order[nxt]
        nxt += 1
    return Innings(tuple(parts))


def _team_side(team: str, captain: str, squad: list[str], fmt: Format, cfg: SimConfig, rng: np.random.Generator):
    others = [p for p in squad if p != captain]
    xi = list(rng.choice(others, size=10, replace=False))
    order = [str(p) for p in rng.permutation(xi)]
    order.insert(int(rng.integers(0, 4)), captain)
    n_innings = 1 if fmt is Format.ODI else (2 if rng.random() < 0.8 else 1)
    innings = tuple(_innings(order, captain, cfg, rng) for _ in range(n_innings))
    return innings, tuple(sorted(order))


def simulate(cfg: SimConfig) -> tuple[Corpus, StatsIndex]:
    """Corpus and matching player statistics; a pure function of ``cfg``."""
    cfg.validate()
    rng = np.random.default_rng(cfg.seed)
    squads = _player_ids(cfg)
    stats = _simulate_stats(cfg, rng, squads)
    grounds = [f"Ground {g:02d}" for g in range(1, cfg.n_grounds + 1)]
    years = list(range(cfg.first_year, cfg.last_year + 1))
    captains = {
        (t, y): squads[t][int(rng.integers(0, 6))] for t in cfg.teams for y in years
    }
    base_rate = {Format.ODI: 5.0, Format.TEST: 3.2}
    matches = []
    for i in range(cfg.n_matches):
        fmt = Format.ODI if rng.random() < cfg.odi_fraction else Format.TEST
        a, b = (cfg.teams[j] for j in rng.choice(len(cfg.teams), size=2, replace=False))
        ground = grounds[int(rng.integers(0, len(grounds)))]
        year = years[int(rng.integers(0, len(years)))]
        sides = []
        for team in (a, b):
            captain = captains[(team, year)]
            innings, squad = _team_side(team, captain, squads[team], fmt, cfg, rng)
            parts = [p for inn in innings for p in inn.partnerships]
            report = centrality_report(network_from_partnerships(parts, team))
            c = centralized_indicator(report, captain) if captain in report.betweenness else 0
            points = [float(s.icc_points) for p in squad if (s := stats.get(p, year)) is not None]
            cap_stats = stats.get(captain, year)
            cv = coefficient_of_variation(points) if len(points) >= 2 else 0.0
            bavg = cap_stats.batting_average if cap_stats else 0.0
            runs = sum(p.runs for p in parts) + int(rng.integers(0, 21)) * len(innings)
            sides.append(dict(team=team, captain=captain, innings=innings, squad=squad, c=c,
                              omega=report.omega or 0.0, cv=cv, bavg=bavg, runs=runs))
        s1, s2 = sides
        base = rng.normal(base_rate[fmt], 0.3)
        dr = (
            cfg.a1 * (s1["omega"] - s2["omega"])
            + cfg.a2 * (s1["cv"] - s2["cv"])
            + cfg.a3 * (s1["bavg"] - s2["bavg"])
            + rng.normal(0.0, cfg.rate_noise)
        )
        rates = (max(0.5, base + dr / 2), max(0.5, base - dr / 2))
        u = rng.random()
        if fmt is Format.TEST and u < cfg.draw_prob:
            outcome = Outcome.DRAW
        elif fmt is Format.ODI and u < cfg.tie_prob:
            outcome = Outcome.TIE
        else:
            p1 = expit(cfg.beta_c * (s1["c"] - s2["c"]))
            outcome = Outcome.TEAM1_WIN if rng.random() < p1 else Outcome.TEAM2_WIN
        teams = []
        for s, r in zip(sides, rates):
            balls = max(1, int(round(6 * s["runs"] / r)))
            dnb = not any(s["captain"] in (p.batsman_a, p.batsman_b) for inn in s["innings"] for p in inn.partnerships)
            teams.append(TeamInningsSet(s["team"], s["captain"], s["innings"], s["runs"], balls, dnb, s["squad"]))
        matches.append(MatchRecord(f"{fmt.value.lower()}-{i:06d}", fmt, year, ground, tuple(teams), outcome))
    return Corpus(matches), stats
