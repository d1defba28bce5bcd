"""Study sections: captain-centrality logits, run-rate regressions, binomial
intervals and bootstrap score averages, assembled into one report."""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import asdict, dataclass, replace
from typing import Iterable, Sequence

import numpy as np

from .centrality import centrality_report
from .errors import (
    ConfigError,
    EmptyCorpusError,
    EmptyInningsError,
    FitError,
    PerfectCollinearityError,
    StudyError,
    ZeroVarianceError,
)
from .graph import build_network, network_to_dict
from .ingest import Corpus, Format, MatchRecord, StatsIndex, format_overs
from .leadership import (
    DifferentialRow,
    DropLedger,
    LeadershipRow,
    ObservationRow,
    build_differentials,
    build_observations,
    centralized_indicator,
    leadership_rows,
    logit_sample,
    team_outcome_score,
)
from .stats import (
    INTERCEPT,
    DesignMatrix,
    binomial_ci,
    bootstrap_difference,
    bootstrap_mean_ci,
    derive_seed,
    encode_fixed_effects,
    fit_logistic,
    fit_ols,
    intercept_only,
    likelihood_ratio_test,
    lr_statistic,
    odds_ratio,
    standardized_coefficients,
    vif,
)

FORMAT_CHOICES = {"odi": (Format.ODI,), "test": (Format.TEST,), "both": (Format.ODI, Format.TEST)}
DIFF_COVARIATES = ("domega", "dcv", "dbavg")
REPORT_VERSION = 1


@dataclass(frozen=True)
class StudyConfig:
    formats: str = "both"
    seed: int = 0
    bootstrap: int = 2000
    include_draws_as_loss: bool = False
    per_innings_networks: bool = False

    def validate(self) -> None:
        if self.formats not in FORMAT_CHOICES:
            raise ConfigError(f"format must be one of {sorted(FORMAT_CHOICES)}")
        if self.bootstrap < 1000:
            raise ConfigError("bootstrap replicates must be at least 1000")
        if not 0 <= self.seed < 2**64:
            raise ConfigError("seed must be a non-negative 64-bit integer")

    @property
    def format_list(self) -> tuple[Format, ...]:
        return FORMAT_CHOICES[self.formats]


def _finite(x):
    if x is None:
        return None
    x = float(x)
    if math.isnan(x):
        return None
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return x


def _fit_summary(fit) -> dict:
    d = {
        "n_obs": fit.n_obs,
        "coefficients": [{k: (_finite(v) if k != "name" else v) for k, v in row.items()} for row in fit.table()],
        "llf": _finite(fit.llf),
        "converged": fit.converged,
        "iterations": fit.iterations,
    }
    if fit.r_squared is not None:
        d["r_squared"] = _finite(fit.r_squared)
    return d


def _rows_as_dicts(rows: Iterable) -> list[dict]:
    # flat dataclasses: a shallow copy of the instance dict is enough
    return [dict(vars(r)) for r in rows]


# ---------------------------------------------------------------------------
# centralized leadership: win-loss logits


def _logit_pair(X: DesignMatrix, y: np.ndarray, context: str) -> dict:
    try:
        full = fit_logistic(X, y)
        null = fit_logistic(intercept_only(len(y)), y)
        df = full.k - 1
        p = likelihood_ratio_test(full, null, df) if df >= 1 else 1.0
    except FitError as exc:
        raise StudyError(f"{context}: {exc}") from exc
    d = _fit_summary(full)
    d["lr_chi2"] = lr_statistic(full, null)
    d["lr_df"] = df
    d["lr_p"] = p
    d["reference_levels"] = {k: v for k, v in X.reference_levels.items()}
    d["pruned"] = list(X.pruned)
    if "C" in full.names:
        d["beta_C"] = full.estimate("C")
        d["se_C"] = full.se("C")
        d["odds_ratio_C"] = odds_ratio(full.estimate("C"))
    return d


def crosstab(rows: Sequence[LeadershipRow]) -> dict:
    out = {}
    for c in (1, 0):
        sub = [r for r in rows if r.C == c]
        out[f"C{c}"] = {"wins": sum(r.W for r in sub), "n": len(sub)}
    return out


def run_centralized_study(
    corpus: Corpus,
    stats: StatsIndex,
    formats: Sequence[Format] = (Format.ODI, Format.TEST),
    include_draws_as_loss: bool = False,
    per_innings: bool = False,
) -> dict:
    """Model 1 (W ~ C) and Model 2 (W ~ C + S_b + S_p + team/year/position effects) per format."""
    if len(corpus) == 0:
        raise EmptyCorpusError("empty corpus")
    out: dict = {}
    for fmt in formats:
        sub = corpus.filter(fmt)
        if len(sub) == 0:
            out[fmt.value] = {"note": "no matches"}
            continue
        lrows, l1 = leadership_rows(sub, per_innings)
        sample, skipped = logit_sample(lrows, include_draws_as_loss)
        l1.drops["not_decisive"] += skipped
        section: dict = {"ledger_model1": l1.to_dict(), "crosstab_model1": crosstab(sample)}
        y1 = np.array([r.W for r in sample], dtype=float)
        if len(sample) < 3:
            raise StudyError(f"{fmt.value} model 1: only {len(sample)} observations")
        X1 = encode_fixed_effects([{"C": r.C} for r in sample], numeric=["C"], outcome=y1)
        if "C" not in X1.names:
            raise StudyError(f"{fmt.value} model 1: captain-centrality indicator has no variation")
        section["model1"] = _logit_pair(X1, y1, f"{fmt.value} model 1")

        known = {(r.match_id, r.side): r for r in lrows}
        obs, l2 = build_observations(sub, stats, include_draws_as_loss, per_innings, known)
        section["ledger_model2"] = l2.to_dict()
        y2 = np.array([r.W for r in obs], dtype=float)
        if len(obs) < 3:
            raise StudyError(f"{fmt.value} model 2: only {len(obs)} observations")
        X2 = encode_fixed_effects(
            _rows_as_dicts(obs),
            numeric=["C", "S_b", "S_p"],
            categorical=["team", "year", "batting_position"],
            outcome=y2,
        )
        if X2.n_rows <= len(X2.names):
            raise StudyError(f"{fmt.value} model 2: {X2.n_rows} observations for {len(X2.names)} columns")
        section["model2"] = _logit_pair(X2, y2, f"{fmt.value} model 2")
        out[fmt.value] = section
    return out


# ---------------------------------------------------------------------------
# distributed leadership: run-rate differentials


def _std_coef_entry(fit, X: DesignMatrix, rows: Sequence[DifferentialRow], y: np.ndarray, name: str) -> dict:
    raw = np.array([getattr(r, name) for r in rows], dtype=float)
    try:
        if np.std(raw, ddof=1) == 0.0:
            raise ZeroVarianceError(f"column {name} has zero variance")
        if name not in X.names:
            return {"error": "pruned"}
        value = standardized_coefficients(fit, X, y, [name])[name]
    except ZeroVarianceError as exc:
        return {"error": f"ZeroVarianceError: {exc}"}
    return {"std_beta": value}


def _ols_section(X: DesignMatrix, y: np.ndarray, rows, covariates, context: str, with_vif: bool) -> dict:
    try:
        fit = fit_ols(X, y)
    except FitError as exc:
        raise StudyError(f"{context}: {exc}") from exc
    d = _fit_summary(fit)
    d["reference_levels"] = dict(X.reference_levels)
    d["pruned"] = list(X.pruned)
    d["standardized"] = {name: _std_coef_entry(fit, X, rows, y, name) for name in covariates}
    if with_vif:
        if sum(1 for n in X.names if n != INTERCEPT) >= 2:
            try:
                d["vif"] = {k: _finite(v) for k, v in vif(X).items()}
            except PerfectCollinearityError as exc:
                d["vif"] = {k: _finite(v) for k, v in exc.values.items()}
                d["vif_error"] = str(exc)
        else:
            d["vif"] = {}
    return d


def run_distributed_study(
    corpus: Corpus,
    stats: StatsIndex,
    formats: Sequence[Format] = (Format.ODI, Format.TEST),
    per_innings: bool = False,
) -> dict:
    """Model 1 (δr ~ δω) and Model 2 (δr ~ δω + δCv + δB + ground/year effects) per format."""
    if len(corpus) == 0:
        raise EmptyCorpusError("empty corpus")
    out: dict = {}
    for fmt in formats:
        sub = corpus.filter(fmt)
        if len(sub) == 0:
            out[fmt.value] = {"note": "no matches"}
            continue
        rows, ledger = build_differentials(sub, stats, per_innings)
        if len(rows) < 5:
            raise StudyError(f"{fmt.value}: only {len(rows)} differential rows")
        y = np.array([r.dr for r in rows])
        dicts = _rows_as_dicts(rows)
        X1 = encode_fixed_effects(dicts, numeric=["domega"])
        X2 = encode_fixed_effects(dicts, numeric=list(DIFF_COVARIATES), categorical=["ground", "year"])
        if X2.n_rows <= len(X2.names):
            raise StudyError(f"{fmt.value} model 2: {X2.n_rows} observations for {len(X2.names)} columns")
        out[fmt.value] = {
            "ledger": ledger.to_dict(),
            "model1": _ols_section(X1, y, rows, ("domega",), f"{fmt.value} model 1", with_vif=False),
            "model2": _ols_section(X2, y, rows, DIFF_COVARIATES, f"{fmt.value} model 2", with_vif=True),
        }
    return out


# ---------------------------------------------------------------------------
# binomial intervals and score averages


def _success(row: LeadershipRow) -> int:
    # ODI: wins; Test: wins and draws
    return int(row.score >= 2) if row.format == Format.ODI.value else int(row.score >= 1)


def run_bci_study(
    corpus: Corpus,
    formats: Sequence[Format] = (Format.ODI, Format.TEST),
    include_draws_as_loss: bool = False,
    per_innings: bool = False,
) -> dict:
    """Normal-approximation intervals of the success rate with and without a central captain.

    ODI strata use the same rows as the win-loss Model 1; Test strata keep
    draws and count them as successes.
    """
    out: dict = {}
    for fmt in formats:
        sub = corpus.filter(fmt)
        rows, ledger = leadership_rows(sub, per_innings)
        if fmt is Format.ODI:
            rows, skipped = logit_sample(rows, include_draws_as_loss)
            ledger.drops["not_decisive"] += skipped
        section: dict = {"ledger": ledger.to_dict(), "success": "win" if fmt is Format.ODI else "win_or_draw"}
        strata = {}
        for c in (1, 0):
            s = [r for r in rows if r.C == c]
            if not s:
                strata[f"C{c}"] = {"note": "no matches in stratum"}
                continue
            m = sum(_success(r) for r in s)
            ci = binomial_ci(m, len(s))
            strata[f"C{c}"] = {"successes": m, "trials": len(s), **ci.to_dict()}
        section["strata"] = strata
        out[fmt.value] = section
    return out


def run_score_averages(
    corpus: Corpus,
    B: int = 2000,
    seed: int = 0,
    formats: Sequence[Format] = (Format.ODI, Format.TEST),
    per_innings: bool = False,
) -> dict:
    """Mean 0/1/2 team score per leadership stratum with percentile bootstrap intervals.

    Stream ``2*f + s`` of ``seed`` (``f`` = position of the format in
    ``(ODI, TEST)``, ``s`` = 0 for C=1, 1 for C=0) seeds each stratum; the same
    resamples feed the difference test.
    """
    out: dict = {}
    for fmt in formats:
        f_idx = (Format.ODI, Format.TEST).index(fmt)
        rows, ledger = leadership_rows(corpus.filter(fmt), per_innings)
        section: dict = {"ledger": ledger.to_dict(), "strata": {}}
        groups = {}
        for s_idx, c in enumerate((1, 0)):
            scores = [float(r.score) for r in rows if r.C == c]
            key = f"C{c}"
            if not scores:
                section["strata"][key] = {"note": "no matches in stratum"}
                continue
            stream_seed = derive_seed(seed, 2 * f_idx + s_idx)
            ci = bootstrap_mean_ci(scores, B, stream_seed)
            section["strata"][key] = {"n": len(scores), "mean": ci.point, "lower": ci.lower, "upper": ci.upper}
            groups[key] = (scores, stream_seed)
        if len(groups) == 2:
            (a, sa), (b, sb) = groups["C1"], groups["C0"]
            diff = bootstrap_difference(a, b, B, sa, sb)
            section["difference"] = {**diff.estimate.to_dict(), "p_value": diff.p_value}
        out[fmt.value] = section
    return out


# ---------------------------------------------------------------------------
# whole study


def _digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def config_hash(cfg: StudyConfig, corpus: Corpus, stats: StatsIndex) -> str:
    payload = json.dumps(
        {"config": asdict(cfg), "corpus": _digest(corpus.dumps()), "stats": _digest(stats.dumps())},
        sort_keys=True,
    )
    return _digest(payload)[:16]


def run_replicate(corpus: Corpus, stats: StatsIndex, cfg: StudyConfig) -> dict:
    """Every study section plus the config echo, seed and hash."""
    cfg.validate()
    if len(corpus) == 0:
        raise EmptyCorpusError("empty corpus")
    fmts = cfg.format_list
    report = {
        "report_version": REPORT_VERSION,
        "config": asdict(cfg),
        "config_hash": config_hash(cfg, corpus, stats),
        "seed": cfg.seed,
        "n_matches": {f.value: len(corpus.filter(f)) for f in fmts},
        "logit_table": run_centralized_study(corpus, stats, fmts, cfg.include_draws_as_loss, cfg.per_innings_networks),
        "differential_table": run_distributed_study(corpus, stats, fmts, cfg.per_innings_networks),
        "bci_table": run_bci_study(corpus, fmts, cfg.include_draws_as_loss, cfg.per_innings_networks),
        "score_averages": run_score_averages(corpus, cfg.bootstrap, cfg.seed, fmts, cfg.per_innings_networks),
    }
    report["std_coef_table"] = {
        f: sec["model2"]["standardized"] for f, sec in report["differential_table"].items() if "model2" in sec
    }
    return report


def analyze_match(m: MatchRecord, stats: StatsIndex | None = None, per_innings: bool = False) -> dict:
    """Networks, centrality and leadership features for a single match."""
    teams = []
    for side, tis in enumerate(m.teams, 1):
        entry: dict = {
            "side": side,
            "team": tis.team,
            "captain": tis.captain,
            "did_not_bat": tis.did_not_bat,
            "score": team_outcome_score(m.outcome, side),
            "runs_total": tis.runs_total,
            "overs": format_overs(tis.balls_faced),
            "run_rate": tis.run_rate if tis.balls_faced else None,
        }
        try:
            net = build_network(tis, m.match_id, innings=0 if per_innings else None)
        except EmptyInningsError as exc:
            entry["error"] = str(exc)
        else:
            rep = centrality_report(net)
            entry["network"] = network_to_dict(net, rep.betweenness)
            entry["omega"] = rep.omega
            entry["C"] = centralized_indicator(rep, tis.captain) if tis.captain in rep.betweenness else None
            chosen = replace(tis, innings=tis.innings[:1]) if per_innings else tis
            entry["batting_position"] = chosen.batting_position(tis.captain)
        if stats is not None:
            cap = stats.get(tis.captain, m.year)
            entry["captain_stats"] = None if cap is None else {"icc_points": cap.icc_points, "batting_average": cap.batting_average}
        teams.append(entry)
    return {
        "match_id": m.match_id,
        "format": m.format.value,
        "year": m.year,
        "ground": m.ground,
        "outcome": m.outcome.value,
        "teams": teams,
    }


def observation_tables(corpus: Corpus, stats: StatsIndex, cfg: StudyConfig) -> tuple[list[ObservationRow], list[DifferentialRow], list[DropLedger]]:
    sub = Corpus(m for m in corpus if m.format in cfg.format_list)
    obs, l1 = build_observations(sub, stats, cfg.include_draws_as_loss, cfg.per_innings_networks)
    diffs, l2 = build_differentials(sub, stats, cfg.per_innings_networks)
    return obs, diffs, [l1, l2]
