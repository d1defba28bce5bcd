"""Scorecard ingestion: canonical data model, validation and normalization.

Corpus files are UTF-8 JSON Lines, one match per line::

    {"v": 1, "match_id": "odi-0001", "format": "ODI", "year": 2005,
     "ground": "Lord's", "outcome": "TEAM1_WIN",
     "teams": [
        {"team": "England", "captain": "ENG-01", "runs_total": 250, "overs": "49.3",
         "innings": [{"partnerships": [
             {"batsman_a": "ENG-01", "batsman_b": "ENG-02", "runs": 40}, ...]}]},
        {...}]}

``teams[0]`` is the side that batted first. Each team object may also carry
``did_not_bat`` (bool, captain never batted) and ``squad`` (player ids of the
XI, used for team-level covariates). Any other key is a schema error.

Player statistics are a CSV file with header
``player,year,icc_points,batting_average``.
"""

from __future__ import annotations

import csv
import datetime as _dt
import json
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Iterator, Mapping

from .errors import (
    DuplicateIdError,
    DuplicateKeyError,
    FormatError,
    InvariantError,
    MissingStatsError,
    RangeError,
    SchemaError,
)

SCHEMA_VERSION = 1
MAX_PLAYERS = 11
MAX_DISMISSALS = 10


class Format(str, Enum):
    TEST = "TEST"
    ODI = "ODI"


class Outcome(str, Enum):
    TEAM1_WIN = "TEAM1_WIN"
    TEAM2_WIN = "TEAM2_WIN"
    DRAW = "DRAW"
    TIE = "TIE"

    @property
    def decisive(self) -> bool:
        return self in (Outcome.TEAM1_WIN, Outcome.TEAM2_WIN)


FIRST_YEAR = {Format.TEST: 1877, Format.ODI: 1971}


@dataclass(frozen=True)
class Partnership:
    batsman_a: str
    batsman_b: str
    runs: int

    @property
    def pair(self) -> tuple[str, str]:
        return tuple(sorted((self.batsman_a, self.batsman_b)))  # type: ignore[return-value]


@dataclass(frozen=True)
class Innings:
    partnerships: tuple[Partnership, ...]

    @property
    def batting_order(self) -> tuple[str, ...]:
        """Players in order of first appearance (opener ``batsman_a`` is position 1)."""
        order: list[str] = []
        for p in self.partnerships:
            for player in (p.batsman_a, p.batsman_b):
                if player not in order:
                    order.append(player)
        return tuple(order)

    @property
    def players(self) -> frozenset[str]:
        return frozenset(self.batting_order)


@dataclass(frozen=True)
class TeamInningsSet:
    team: str
    captain: str
    innings: tuple[Innings, ...]
    runs_total: int
    balls_faced: int
    did_not_bat: bool = False
    squad: tuple[str, ...] = ()

    @property
    def overs_faced(self) -> Fraction:
        return Fraction(self.balls_faced, 6)

    @property
    def batsmen(self) -> frozenset[str]:
        out: frozenset[str] = frozenset()
        for inn in self.innings:
            out |= inn.players
        return out

    @property
    def roster(self) -> tuple[str, ...]:
        """Squad if given, otherwise every batsman plus the captain; sorted."""
        members = set(self.squad) | set(self.batsmen) | {self.captain}
        return tuple(sorted(members))

    @property
    def run_rate(self) -> float:
        if self.balls_faced == 0:
            raise InvariantError(f"{self.team}: run-rate undefined for zero overs")
        return float(Fraction(self.runs_total) / self.overs_faced)

    def batting_position(self, player: str) -> int | None:
        """1-based position of the player's first appearance across the match's innings."""
        for inn in self.innings:
            order = inn.batting_order
            if player in order:
                return order.index(player) + 1
        return None


@dataclass(frozen=True)
class MatchRecord:
    match_id: str
    format: Format
    year: int
    ground: str
    teams: tuple[TeamInningsSet, TeamInningsSet]
    outcome: Outcome


# ---------------------------------------------------------------------------
# overs


_OVERS_RE = re.compile(r"^(\d+)(?:\.(\d))?$")


def overs_to_balls(text: str) -> int:
    """Balls represented by overs notation ``<int>`` or ``<int>.<ball>``."""
    if not isinstance(text, str):
        raise FormatError(f"overs must be a string, got {type(text).__name__}")
    m = _OVERS_RE.match(text.strip())
    if m is None:
        raise FormatError(f"malformed overs notation: {text!r}")
    whole = int(m.group(1))
    ball = int(m.group(2) or 0)
    if ball >= 6:
        raise FormatError(f"ball digit must be 0-5 in {text!r}")
    return 6 * whole + ball


def parse_overs(text: str) -> Fraction:
    """``"49.3"`` -> ``Fraction(99, 2)``; six balls make an over."""
    return Fraction(overs_to_balls(text), 6)


def format_overs(balls: int) -> str:
    if balls < 0:
        raise FormatError(f"negative ball count {balls}")
    return f"{balls // 6}.{balls % 6}"


# ---------------------------------------------------------------------------
# schema checks

_MATCH_KEYS = {"v", "match_id", "format", "year", "ground", "outcome", "teams"}
_TEAM_REQUIRED = {"team", "captain", "innings", "runs_total", "overs"}
_TEAM_OPTIONAL = {"did_not_bat", "squad"}
_INNINGS_KEYS = {"partnerships"}
_PARTNERSHIP_KEYS = {"batsman_a", "batsman_b", "runs"}


def _check_keys(obj, required, where, optional=frozenset()):
    if not isinstance(obj, Mapping):
        raise SchemaError(f"{where}: expected an object, got {type(obj).__name__}")
    keys = set(obj)
    missing = required - keys
    extra = keys - required - optional
    if missing:
        raise SchemaError(f"{where}: missing field(s) {sorted(missing)}")
    if extra:
        raise SchemaError(f"{where}: unexpected field(s) {sorted(extra)}")


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _nonempty_str(x, where) -> str:
    if not isinstance(x, str) or not x.strip():
        raise SchemaError(f"{where}: expected a non-empty string")
    return x


def _parse_partnership(obj, where) -> Partnership:
    _check_keys(obj, _PARTNERSHIP_KEYS, where)
    a = _nonempty_str(obj["batsman_a"], f"{where}.batsman_a")
    b = _nonempty_str(obj["batsman_b"], f"{where}.batsman_b")
    runs = obj["runs"]
    if not _is_int(runs):
        raise SchemaError(f"{where}.runs: expected an integer")
    if runs < 0:
        raise InvariantError(f"{where}: negative partnership runs")
    if a == b:
        raise InvariantError(f"{where}: batsman paired with himself ({a})")
    return Partnership(a, b, runs)


def check_chain(partnerships: Iterable[Partnership], where: str = "innings") -> None:
    """Enforce the partnership chain: each partnership keeps exactly one batsman
    from the previous one and brings in a batsman not seen earlier in the innings."""
    seen: set[str] = set()
    prev: Partnership | None = None
    count = 0
    for i, p in enumerate(partnerships):
        count += 1
        pair = {p.batsman_a, p.batsman_b}
        if prev is not None:
            shared = pair & {prev.batsman_a, prev.batsman_b}
            if len(shared) != 1:
                raise InvariantError(
                    f"{where}: partnership {i} shares {len(shared)} batsmen with the previous one"
                )
            (incoming,) = pair - shared
            if incoming in seen:
                raise InvariantError(f"{where}: {incoming} returns after dismissal at partnership {i}")
        seen |= pair
        prev = p
    if count - 1 > MAX_DISMISSALS:
        raise InvariantError(f"{where}: {count - 1} dismissals implied (max {MAX_DISMISSALS})")
    if len(seen) > MAX_PLAYERS:
        raise InvariantError(f"{where}: {len(seen)} batsmen (max {MAX_PLAYERS})")


def _parse_team(obj, fmt: Format, where: str) -> TeamInningsSet:
    _check_keys(obj, _TEAM_REQUIRED, where, _TEAM_OPTIONAL)
    team = _nonempty_str(obj["team"], f"{where}.team")
    captain = _nonempty_str(obj["captain"], f"{where}.captain")
    innings_raw = obj["innings"]
    if not isinstance(innings_raw, list):
        raise SchemaError(f"{where}.innings: expected a list")
    limit = 1 if fmt is Format.ODI else 2
    if not 1 <= len(innings_raw) <= limit:
        raise InvariantError(f"{where}: {fmt.value} team has {len(innings_raw)} innings (allowed 1..{limit})")
    innings = []
    for k, inn in enumerate(innings_raw):
        iw = f"{where}.innings[{k}]"
        _check_keys(inn, _INNINGS_KEYS, iw)
        if not isinstance(inn["partnerships"], list):
            raise SchemaError(f"{iw}.partnerships: expected a list")
        parts = tuple(_parse_partnership(p, f"{iw}.partnerships[{j}]") for j, p in enumerate(inn["partnerships"]))
        check_chain(parts, iw)
        innings.append(Innings(parts))

    runs_total = obj["runs_total"]
    if not _is_int(runs_total):
        raise SchemaError(f"{where}.runs_total: expected an integer")
    if runs_total < 0:
        raise InvariantError(f"{where}: negative runs_total")
    balls = overs_to_balls(obj["overs"])
    if runs_total > 0 and balls == 0:
        raise InvariantError(f"{where}: runs scored in zero overs")

    did_not_bat = obj.get("did_not_bat", False)
    if not isinstance(did_not_bat, bool):
        raise SchemaError(f"{where}.did_not_bat: expected a boolean")
    squad_raw = obj.get("squad", [])
    if not isinstance(squad_raw, list):
        raise SchemaError(f"{where}.squad: expected a list")
    squad = tuple(sorted({_nonempty_str(s, f"{where}.squad[]") for s in squad_raw}))

    tis = TeamInningsSet(team, captain, tuple(innings), runs_total, balls, did_not_bat, squad)
    batted = captain in tis.batsmen
    if did_not_bat and batted:
        raise InvariantError(f"{where}: captain {captain} flagged did_not_bat but appears in a partnership")
    if not did_not_bat and not batted:
        raise InvariantError(f"{where}: captain {captain} absent from every partnership and not flagged did_not_bat")
    if squad and not tis.batsmen <= set(squad):
        raise InvariantError(f"{where}: batsmen outside the declared squad")
    return tis


def match_from_dict(obj) -> MatchRecord:
    _check_keys(obj, _MATCH_KEYS, "match")
    if obj["v"] != SCHEMA_VERSION or not _is_int(obj["v"]):
        raise SchemaError(f"unsupported schema version {obj['v']!r}")
    match_id = _nonempty_str(obj["match_id"], "match_id")
    where = f"match {match_id}"
    try:
        fmt = Format(obj["format"])
    except ValueError:
        raise SchemaError(f"{where}: unknown format {obj['format']!r}") from None
    try:
        outcome = Outcome(obj["outcome"])
    except ValueError:
        raise SchemaError(f"{where}: unknown outcome {obj['outcome']!r}") from None
    year = obj["year"]
    if not _is_int(year):
        raise SchemaError(f"{where}: year must be an integer")
    if not FIRST_YEAR[fmt] <= year <= _dt.date.today().year:
        raise InvariantError(f"{where}: year {year} outside the {fmt.value} era")
    if fmt is Format.ODI and outcome is Outcome.DRAW:
        raise InvariantError(f"{where}: an ODI cannot be drawn")
    ground = _nonempty_str(obj["ground"], f"{where}.ground")
    teams_raw = obj["teams"]
    if not isinstance(teams_raw, list) or len(teams_raw) != 2:
        raise InvariantError(f"{where}: exactly two teams required")
    t1 = _parse_team(teams_raw[0], fmt, f"{where}.teams[0]")
    t2 = _parse_team(teams_raw[1], fmt, f"{where}.teams[1]")
    if t1.team == t2.team:
        raise InvariantError(f"{where}: team names must differ")
    return MatchRecord(match_id, fmt, year, ground, (t1, t2), outcome)


def parse_match_record(text: str) -> MatchRecord:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from None
    return match_from_dict(obj)


# ---------------------------------------------------------------------------
# serialization


def match_to_dict(m: MatchRecord) -> dict:
    teams = []
    for t in m.teams:
        d = {
            "team": t.team,
            "captain": t.captain,
            "innings": [
                {"partnerships": [{"batsman_a": p.batsman_a, "batsman_b": p.batsman_b, "runs": p.runs} for p in inn.partnerships]}
                for inn in t.innings
            ],
            "runs_total": t.runs_total,
            "overs": format_overs(t.balls_faced),
        }
        if t.did_not_bat:
            d["did_not_bat"] = True
        if t.squad:
            d["squad"] = list(t.squad)
        teams.append(d)
    return {
        "v": SCHEMA_VERSION,
        "match_id": m.match_id,
        "format": m.format.value,
        "year": m.year,
        "ground": m.ground,
        "outcome": m.outcome.value,
        "teams": teams,
    }


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def serialize_match(m: MatchRecord) -> str:
    return _dumps(match_to_dict(m))


def normalize_document(obj: Mapping) -> str:
    """Canonical text for a schema-valid document, computed without building a MatchRecord."""
    doc = json.loads(json.dumps(obj))
    for t in doc["teams"]:
        t["overs"] = format_overs(overs_to_balls(t["overs"]))
        if not t.get("did_not_bat", False):
            t.pop("did_not_bat", None)
        if "squad" in t:
            squad = sorted(set(t["squad"]))
            if squad:
                t["squad"] = squad
            else:
                del t["squad"]
    return _dumps(doc)


# ---------------------------------------------------------------------------
# corpus


class Corpus:
    """Matches indexed by id and iterated in ``match_id`` order."""

    def __init__(self, matches: Iterable[MatchRecord] = ()):
        self._by_id: dict[str, MatchRecord] = {}
        for m in matches:
            self.add(m)

    def add(self, m: MatchRecord) -> None:
        if m.match_id in self._by_id:
            raise DuplicateIdError(f"duplicate match_id {m.match_id!r}")
        self._by_id[m.match_id] = m

    def __len__(self) -> int:
        return len(self._by_id)

    def __iter__(self) -> Iterator[MatchRecord]:
        for key in sorted(self._by_id):
            yield self._by_id[key]

    def __getitem__(self, match_id: str) -> MatchRecord:
        return self._by_id[match_id]

    def __contains__(self, match_id: object) -> bool:
        return match_id in self._by_id

    def filter(self, fmt: Format | None) -> "Corpus":
        if fmt is None:
            return self
        return Corpus(m for m in self if m.format is fmt)

    def dumps(self) -> str:
        return "".join(serialize_match(m) + "\n" for m in self)


def parse_corpus(lines: Iterable[str]) -> Corpus:
    corpus = Corpus()
    for lineno, line in enumerate(lines, 1):
        if not line.strip():
            continue
        try:
            corpus.add(parse_match_record(line))
        except (SchemaError, InvariantError, FormatError, DuplicateIdError) as exc:
            raise type(exc)(f"line {lineno}: {exc}") from None
    return corpus


def read_corpus(path: str | Path) -> Corpus:
    with open(path, encoding="utf-8") as fh:
        return parse_corpus(fh)


# ---------------------------------------------------------------------------
# player statistics


@dataclass(frozen=True)
class PlayerSeasonStats:
    player: str
    year: int
    icc_points: int
    batting_average: float


STATS_HEADER = ("player", "year", "icc_points", "batting_average")


class StatsIndex:
    """Lookup of player-season statistics keyed by ``(player, year)``.

    ``get`` returns ``None`` for absent keys; ``lookup`` raises
    ``MissingStatsError``. Nothing is imputed.
    """

    def __init__(self, rows: Iterable[PlayerSeasonStats] = ()):
        self._rows: dict[tuple[str, int], PlayerSeasonStats] = {}
        for r in rows:
            key = (r.player, r.year)
            if key in self._rows:
                raise DuplicateKeyError(f"duplicate stats row for {r.player} in {r.year}")
            self._rows[key] = r

    def __len__(self) -> int:
        return len(self._rows)

    def __contains__(self, key: object) -> bool:
        return key in self._rows

    def get(self, player: str, year: int) -> PlayerSeasonStats | None:
        return self._rows.get((player, year))

    def lookup(self, player: str, year: int) -> PlayerSeasonStats:
        try:
            return self._rows[(player, year)]
        except KeyError:
            raise MissingStatsError(f"no stats for {player} in {year}") from None

    def rows(self) -> list[PlayerSeasonStats]:
        return [self._rows[k] for k in sorted(self._rows)]

    def dumps(self) -> str:
        lines = [",".join(STATS_HEADER)]
        for r in self.rows():
            lines.append(f"{r.player},{r.year},{r.icc_points},{r.batting_average!r}")
        return "\n".join(lines) + "\n"


def _stats_row(row) -> PlayerSeasonStats:
    if isinstance(row, Mapping):
        player, year, icc, avg = (row[k] for k in STATS_HEADER)
    else:
        player, year, icc, avg = row
    try:
        year = int(year)
        icc_f = float(icc)
        avg = float(avg)
    except (TypeError, ValueError):
        raise FormatError(f"unparseable stats row {row!r}") from None
    if icc_f != int(icc_f):
        raise FormatError(f"icc_points must be an integer in {row!r}")
    icc = int(icc_f)
    if not 0 <= icc <= 1000:
        raise RangeError(f"icc_points {icc} outside [0, 1000] for {player}")
    if not avg >= 0 or avg == float("inf"):
        raise RangeError(f"batting_average {avg} must be finite and non-negative for {player}")
    return PlayerSeasonStats(str(player), year, icc, avg)


def load_player_stats(table: Iterable) -> StatsIndex:
    """Build a ``StatsIndex`` from ``(player, year, icc_points, batting_average)`` rows."""
    return StatsIndex(_stats_row(r) for r in table)


def read_player_stats(path: str | Path) -> StatsIndex:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != STATS_HEADER:
            raise SchemaError(f"stats header must be {','.join(STATS_HEADER)}")
        return load_player_stats(reader)
