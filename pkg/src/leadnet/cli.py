"""Command-line driver.

Exit codes: 0 success, 1 data error, 2 fit error, 3 config/usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .errors import ConfigError, LeadnetError
from .graph import build_network, export_graph
from .centrality import weighted_betweenness
from .ingest import Format, read_corpus, read_player_stats
from .report import write_report
from .simulate import SimConfig, simulate
from .study import StudyConfig, analyze_match, observation_tables, run_replicate

log = logging.getLogger("leadnet")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(ConfigError.exit_code, f"{self.prog}: error: {message}\n")


def _print_json(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")


def cmd_ingest(args) -> int:
    corpus = read_corpus(args.corpus)
    summary = {
        "matches": len(corpus),
        "by_format": {f.value: len(corpus.filter(f)) for f in Format},
        "outcomes": {},
        "captains_did_not_bat": sum(t.did_not_bat for m in corpus for t in m.teams),
    }
    for m in corpus:
        key = f"{m.format.value}:{m.outcome.value}"
        summary["outcomes"][key] = summary["outcomes"].get(key, 0) + 1
    if args.stats:
        stats = read_player_stats(args.stats)
        missing = sum(stats.get(t.captain, m.year) is None for m in corpus for t in m.teams)
        summary["stats_rows"] = len(stats)
        summary["captains_missing_stats"] = missing
    _print_json(summary)
    return 0


def _match(corpus, match_id):
    if match_id not in corpus:
        raise ConfigError(f"no match {match_id!r} in corpus")
    return corpus[match_id]


def cmd_network(args) -> int:
    m = _match(read_corpus(args.corpus), args.match_id)
    tis = m.teams[args.side - 1]
    net = build_network(tis, m.match_id, innings=0 if args.per_innings_networks else None)
    text = export_graph(net, args.export, weighted_betweenness(net, allow_disconnected=True))
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def cmd_analyze(args) -> int:
    m = _match(read_corpus(args.corpus), args.match_id)
    stats = read_player_stats(args.stats) if args.stats else None
    _print_json(analyze_match(m, stats, args.per_innings_networks))
    return 0


def cmd_replicate(args) -> int:
    cfg = StudyConfig(
        formats=args.format,
        seed=args.seed,
        bootstrap=args.bootstrap,
        include_draws_as_loss=args.include_draws_as_loss,
        per_innings_networks=args.per_innings_networks,
    )
    cfg.validate()
    corpus = read_corpus(args.corpus)
    stats = read_player_stats(args.stats)
    report = run_replicate(corpus, stats, cfg)
    obs, diffs, _ = observation_tables(corpus, stats, cfg)
    for path in write_report(report, args.out, obs, diffs):
        log.info("wrote %s", path)
    return 0


def cmd_simulate(args) -> int:
    overrides = {}
    if args.config:
        overrides.update(json.loads(Path(args.config).read_text(encoding="utf-8")))
    for name in ("n_matches", "odi_fraction", "beta_c", "a1", "rate_noise", "draw_prob", "missing_stats_prob", "seed"):
        value = getattr(args, name)
        if value is not None:
            overrides[name] = value
    if "teams" in overrides:
        overrides["teams"] = tuple(overrides["teams"])
    try:
        cfg = SimConfig(**overrides)
    except TypeError as exc:
        raise ConfigError(str(exc)) from None
    corpus, stats = simulate(cfg)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "corpus.jsonl").write_text(corpus.dumps(), encoding="utf-8")
    (out / "stats.csv").write_text(stats.dumps(), encoding="utf-8")
    (out / "sim_config.json").write_text(json.dumps(cfg.to_dict(), sort_keys=True, indent=2) + "\n", encoding="utf-8")
    log.info("wrote %d matches to %s", len(corpus), out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    p = _Parser(prog="leadnet", description="Batting-partnership leadership networks and team performance.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("ingest", parents=[common], help="validate a corpus (and stats) and print a summary")
    s.add_argument("corpus")
    s.add_argument("--stats")
    s.set_defaults(func=cmd_ingest)

    s = sub.add_parser("network", parents=[common], help="export one team's partnership network")
    s.add_argument("corpus")
    s.add_argument("match_id")
    s.add_argument("--side", type=int, choices=(1, 2), default=1)
    s.add_argument("--export", default="dot", help="dot, graphml or json")
    s.add_argument("--per-innings-networks", action="store_true")
    s.add_argument("--out")
    s.set_defaults(func=cmd_network)

    s = sub.add_parser("analyze", parents=[common], help="leadership report for a single match")
    s.add_argument("corpus")
    s.add_argument("match_id")
    s.add_argument("--stats")
    s.add_argument("--per-innings-networks", action="store_true")
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("replicate", parents=[common], help="run the full study and write a report directory")
    s.add_argument("corpus")
    s.add_argument("--stats", required=True)
    s.add_argument("--format", choices=("test", "odi", "both"), default="both")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--bootstrap", type=int, default=2000)
    s.add_argument("--include-draws-as-loss", action="store_true")
    s.add_argument("--per-innings-networks", action="store_true")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_replicate)

    s = sub.add_parser("simulate", parents=[common], help="write a synthetic corpus and stats table")
    s.add_argument("--out", required=True)
    s.add_argument("--config", help="JSON file of SimConfig fields")
    s.add_argument("--seed", type=int)
    s.add_argument("--n-matches", type=int)
    s.add_argument("--odi-fraction", type=float)
    s.add_argument("--beta-c", type=float)
    s.add_argument("--a1", type=float)
    s.add_argument("--rate-noise", type=float)
    s.add_argument("--draw-prob", type=float)
    s.add_argument("--missing-stats-prob", type=float)
    s.set_defaults(func=cmd_simulate)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except LeadnetError as exc:
        print(f"leadnet: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"leadnet: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
