"""Per-match leadership features, outcome scores and regression rows."""

from __future__ import annotations

import csv
import io
import math
import statistics
from collections import Counter
from dataclasses import asdict, dataclass, field, fields, replace
from typing import Iterable, Mapping, Sequence

from .centrality import CentralityReport, centrality_report
from .errors import (
    CaptainAbsentError,
    EmptyInningsError,
    EmptyListError,
    TooSmallError,
    ZeroMeanError,
)
from .graph import build_network
from .ingest import Format, MatchRecord, Outcome, StatsIndex, TeamInningsSet

TOP_MARGIN = 1e-9


def centralized_indicator(report: CentralityReport, captain: str, margin: float = TOP_MARGIN) -> int:
    """1 when the captain is the unique highest-betweenness batsman, by more than ``margin``."""
    bc = report.betweenness
    if captain not in bc:
        raise CaptainAbsentError(f"captain {captain} is not in the network")
    mine = bc[captain]
    return int(all(mine - v > margin for p, v in bc.items() if p != captain))


def team_outcome_score(outcome: Outcome, side: int) -> int:
    """2 for a win, 1 for a draw or tie, 0 for a loss, from ``side``'s (1 or 2) point of view."""
    if side not in (1, 2):
        raise ValueError(f"side must be 1 or 2, got {side}")
    if not outcome.decisive:
        return 1
    winner = 1 if outcome is Outcome.TEAM1_WIN else 2
    return 2 if winner == side else 0


def median_split(values: Sequence[float], pivot: float) -> int:
    if not values:
        raise EmptyListError("median of an empty list")
    return int(pivot > statistics.median(values))


def coefficient_of_variation(points: Sequence[float]) -> float:
    """Sample standard deviation over the mean."""
    if not points:
        raise EmptyListError("coefficient of variation of an empty list")
    if len(points) < 2:
        raise TooSmallError("coefficient of variation needs at least two values")
    n = len(points)
    mean = math.fsum(points) / n
    if mean <= 0:
        raise ZeroMeanError(f"mean {mean} is not positive")
    return math.sqrt(math.fsum((x - mean) ** 2 for x in points) / (n - 1)) / mean


# ---------------------------------------------------------------------------
# drop bookkeeping


@dataclass
class DropLedger:
    """``n_in`` units entered, ``drops`` counts units removed by reason."""

    unit: str
    n_in: int = 0
    drops: Counter = field(default_factory=Counter)
    notes: Counter = field(default_factory=Counter)

    @property
    def n_used(self) -> int:
        return self.n_in - sum(self.drops.values())

    def to_dict(self) -> dict:
        return {
            "unit": self.unit,
            "n_in": self.n_in,
            "n_used": self.n_used,
            "drops": dict(sorted(self.drops.items())),
            "notes": dict(sorted(self.notes.items())),
        }


# ---------------------------------------------------------------------------
# per team-match leadership rows


@dataclass(frozen=True)
class LeadershipRow:
    """One team in one match, before any covariate lookups."""

    match_id: str
    format: str
    year: int
    ground: str
    side: int
    team: str
    captain: str
    outcome: str
    score: int
    C: int
    batting_position: int
    omega: float | None

    @property
    def decisive(self) -> bool:
        return Outcome(self.outcome).decisive

    @property
    def W(self) -> int:
        return int(self.score == 2)


@dataclass(frozen=True)
class ObservationRow:
    match_id: str
    side: int
    W: int
    C: int
    S_b: int
    S_p: int
    team: str
    year: int
    batting_position: int
    format: str


@dataclass(frozen=True)
class DifferentialRow:
    match_id: str
    format: str
    dr: float
    domega: float
    dcv: float
    dbavg: float
    ground: str
    year: int
    r1: float
    r2: float
    omega1: float
    omega2: float


def team_report(tis: TeamInningsSet, match_id: str = "", per_innings: bool = False) -> CentralityReport:
    net = build_network(tis, match_id, innings=0 if per_innings else None)
    return centrality_report(net)


def _leadership_row(m: MatchRecord, side: int, per_innings: bool) -> LeadershipRow:
    tis = m.teams[side - 1]
    if tis.did_not_bat:
        raise CaptainAbsentError("captain_did_not_bat")
    report = team_report(tis, m.match_id, per_innings)
    c = centralized_indicator(report, tis.captain)
    chosen = replace(tis, innings=tis.innings[:1]) if per_innings else tis
    pos = chosen.batting_position(tis.captain)
    return LeadershipRow(
        m.match_id,
        m.format.value,
        m.year,
        m.ground,
        side,
        tis.team,
        tis.captain,
        m.outcome.value,
        team_outcome_score(m.outcome, side),
        c,
        pos,
        report.omega,
    )


def leadership_rows(corpus: Iterable[MatchRecord], per_innings: bool = False) -> tuple[list[LeadershipRow], DropLedger]:
    """Captain-centrality rows for every team-match whose captain sits in the network."""
    ledger = DropLedger("team-match")
    rows = []
    for m in corpus:
        for side in (1, 2):
            ledger.n_in += 1
            tis = m.teams[side - 1]
            if tis.did_not_bat:
                ledger.drops["captain_did_not_bat"] += 1
                continue
            try:
                rows.append(_leadership_row(m, side, per_innings))
            except EmptyInningsError:
                ledger.drops["empty_network"] += 1
            except CaptainAbsentError:
                ledger.drops["captain_absent"] += 1
    return rows, ledger


def logit_sample(rows: Iterable[LeadershipRow], include_draws_as_loss: bool = False) -> tuple[list[LeadershipRow], int]:
    """Rows entering the win-loss logit, and how many non-decisive rows were set aside."""
    kept, skipped = [], 0
    for r in rows:
        if r.decisive or include_draws_as_loss:
            kept.append(r)
        else:
            skipped += 1
    return kept, skipped


def _roster_values(tis: TeamInningsSet, year: int, stats: StatsIndex, ledger: DropLedger):
    avgs, points = [], []
    for p in tis.roster:
        s = stats.get(p, year)
        if s is None:
            ledger.notes["roster_player_missing_stats"] += 1
            continue
        avgs.append(s.batting_average)
        points.append(float(s.icc_points))
    return avgs, points


def build_observations(
    corpus: Iterable[MatchRecord],
    stats: StatsIndex,
    include_draws_as_loss: bool = False,
    per_innings: bool = False,
    known: Mapping[tuple[str, int], LeadershipRow] | None = None,
) -> tuple[list[ObservationRow], DropLedger]:
    """Rows for the full win-loss logit: two per decisive match, minus drops.

    Draws and ties are dropped as ``not_decisive`` unless
    ``include_draws_as_loss`` turns them into losses for both sides.
    ``known`` holds leadership rows already computed for the same
    ``per_innings`` setting, keyed by ``(match_id, side)``.
    """
    known = known or {}
    ledger = DropLedger("team-match")
    out: list[ObservationRow] = []
    for m in corpus:
        for side in (1, 2):
            ledger.n_in += 1
            tis = m.teams[side - 1]
            if not m.outcome.decisive and not include_draws_as_loss:
                ledger.drops["not_decisive"] += 1
                continue
            if tis.did_not_bat:
                ledger.drops["captain_did_not_bat"] += 1
                continue
            try:
                lr = known.get((m.match_id, side)) or _leadership_row(m, side, per_innings)
            except EmptyInningsError:
                ledger.drops["empty_network"] += 1
                continue
            except CaptainAbsentError:
                ledger.drops["captain_absent"] += 1
                continue
            cap = stats.get(tis.captain, m.year)
            if cap is None:
                ledger.drops["captain_missing_stats"] += 1
                continue
            avgs, points = _roster_values(tis, m.year, stats, ledger)
            out.append(
                ObservationRow(
                    m.match_id,
                    side,
                    lr.W,
                    lr.C,
                    median_split(avgs, cap.batting_average),
                    median_split(points, float(cap.icc_points)),
                    tis.team,
                    m.year,
                    lr.batting_position,
                    m.format.value,
                )
            )
    return out, ledger


def build_differentials(
    corpus: Iterable[MatchRecord], stats: StatsIndex, per_innings: bool = False
) -> tuple[list[DifferentialRow], DropLedger]:
    """One run-rate differential row per match; side 1 batted first."""
    ledger = DropLedger("match")
    out: list[DifferentialRow] = []
    for m in corpus:
        ledger.n_in += 1
        reason = None
        vals = []
        for tis in m.teams:
            if tis.balls_faced == 0:
                reason = "zero_overs"
                break
            try:
                report = team_report(tis, m.match_id, per_innings)
            except EmptyInningsError:
                reason = "empty_network"
                break
            if report.omega is None:
                reason = "network_too_small"
                break
            cap = stats.get(tis.captain, m.year)
            if cap is None:
                reason = "captain_missing_stats"
                break
            _, points = _roster_values(tis, m.year, stats, ledger)
            try:
                cv = coefficient_of_variation(points)
            except (EmptyListError, TooSmallError):
                reason = "team_missing_stats"
                break
            except ZeroMeanError:
                reason = "zero_mean_icc"
                break
            vals.append((tis.run_rate, report.omega, cv, cap.batting_average))
        if reason is not None:
            ledger.drops[reason] += 1
            continue
        (r1, w1, cv1, b1), (r2, w2, cv2, b2) = vals
        out.append(DifferentialRow(m.match_id, m.format.value, r1 - r2, w1 - w2, cv1 - cv2, b1 - b2, m.ground, m.year, r1, r2, w1, w2))
    return out, ledger


def rows_to_csv(rows: Sequence, row_type=None) -> str:
    """CSV with the dataclass field order as the fixed column order."""
    row_type = row_type or (type(rows[0]) if rows else None)
    if row_type is None:
        return ""
    cols = [f.name for f in fields(row_type)]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for r in rows:
        d = asdict(r)
        w.writerow([repr(d[c]) if isinstance(d[c], float) else d[c] for c in cols])
    return buf.getvalue()


def filter_format(rows: Iterable, fmt: Format | str) -> list:
    value = fmt.value if isinstance(fmt, Format) else fmt
    return [r for r in rows if r.format == value]


__all__ = [
    "DifferentialRow",
    "DropLedger",
    "LeadershipRow",
    "ObservationRow",
    "build_differentials",
    "build_observations",
    "centralized_indicator",
    "coefficient_of_variation",
    "filter_format",
    "leadership_rows",
    "logit_sample",
    "median_split",
    "rows_to_csv",
    "team_outcome_score",
]
