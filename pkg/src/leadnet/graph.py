"""Weighted undirected batting-partnership networks."""

from __future__ import annotations

import json
import xml.etree.ElementTree as ET
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping

from .errors import EmptyInningsError, UnsupportedFormatError
from .ingest import Partnership, TeamInningsSet

Pair = tuple[str, str]


@dataclass(frozen=True)
class PartnershipNetwork:
    """Nodes are batsmen; an edge carries the total runs the pair added in the match.

    ``edges`` maps sorted player pairs to weights and must not be mutated.
    """

    team: str
    match_id: str
    nodes: tuple[str, ...]
    edges: Mapping[Pair, int] = field(hash=False)

    def __post_init__(self):
        for (a, b), w in self.edges.items():
            if a == b:
                raise ValueError(f"self-loop on {a}")
            if a > b:
                raise ValueError(f"edge key ({a}, {b}) is not sorted")
            if w < 0:
                raise ValueError(f"negative weight on ({a}, {b})")
            if a not in self.nodes or b not in self.nodes:
                raise ValueError(f"edge ({a}, {b}) references an unknown node")

    @property
    def n_players(self) -> int:
        return len(self.nodes)

    def weight(self, a: str, b: str) -> int | None:
        return self.edges.get((a, b) if a < b else (b, a))

    def adjacency(self) -> dict[str, dict[str, int]]:
        adj: dict[str, dict[str, int]] = {n: {} for n in self.nodes}
        for (a, b), w in self.edges.items():
            adj[a][b] = w
            adj[b][a] = w
        return adj

    def degree(self) -> dict[str, int]:
        return {n: len(nbrs) for n, nbrs in self.adjacency().items()}

    def components(self) -> list[tuple[str, ...]]:
        adj = self.adjacency()
        seen: set[str] = set()
        comps = []
        for start in self.nodes:
            if start in seen:
                continue
            stack, comp = [start], []
            seen.add(start)
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in adj[v]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            comps.append(tuple(sorted(comp)))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def total_weight(self) -> int:
        return sum(self.edges.values())


def network_from_partnerships(
    partnerships: Iterable[Partnership], team: str = "", match_id: str = ""
) -> PartnershipNetwork:
    weights: dict[Pair, int] = defaultdict(int)
    nodes: set[str] = set()
    for p in partnerships:
        weights[p.pair] += p.runs
        nodes.update(p.pair)
    if not nodes:
        raise EmptyInningsError(f"{team or 'team'}: no partnerships")
    edges = {k: weights[k] for k in sorted(weights)}
    return PartnershipNetwork(team, match_id, tuple(sorted(nodes)), edges)


def build_network(
    innings_set: TeamInningsSet, match_id: str = "", innings: int | None = None
) -> PartnershipNetwork:
    """Network for one team in one match.

    Both innings of a Test side are merged by summing pair weights; pass
    ``innings`` (0-based) to build from a single innings instead.
    """
    chosen = innings_set.innings if innings is None else innings_set.innings[innings : innings + 1]
    parts = [p for inn in chosen for p in inn.partnerships]
    return network_from_partnerships(parts, innings_set.team, match_id)


# ---------------------------------------------------------------------------
# export


class ExportFormat(str, Enum):
    DOT = "DOT"
    GRAPHML = "GRAPHML"
    JSON = "JSON"


def _coerce_format(fmt) -> ExportFormat:
    if isinstance(fmt, ExportFormat):
        return fmt
    try:
        return ExportFormat(str(fmt).upper())
    except ValueError:
        raise UnsupportedFormatError(f"unsupported export format {fmt!r}") from None


def _dot_id(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _to_dot(net: PartnershipNetwork, betweenness: Mapping[str, float] | None) -> str:
    name = f"{net.match_id}:{net.team}" if net.match_id else net.team
    lines = [f"graph {_dot_id(name)} {{"]
    for n in net.nodes:
        if betweenness is not None:
            lines.append(f"  {_dot_id(n)} [betweenness={float(betweenness[n])!r}];")
        else:
            lines.append(f"  {_dot_id(n)};")
    for (a, b), w in net.edges.items():
        lines.append(f"  {_dot_id(a)} -- {_dot_id(b)} [weight={w}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


_GRAPHML_NS = "http://graphml.graphdrawing.org/xmlns"


def _to_graphml(net: PartnershipNetwork, betweenness: Mapping[str, float] | None) -> str:
    root = ET.Element("graphml", xmlns=_GRAPHML_NS)
    ET.SubElement(root, "key", {"id": "weight", "for": "edge", "attr.name": "weight", "attr.type": "int"})
    if betweenness is not None:
        ET.SubElement(
            root, "key", {"id": "betweenness", "for": "node", "attr.name": "betweenness", "attr.type": "double"}
        )
    g = ET.SubElement(root, "graph", {"id": net.match_id or "G", "edgedefault": "undirected"})
    for n in net.nodes:
        node = ET.SubElement(g, "node", id=n)
        if betweenness is not None:
            ET.SubElement(node, "data", key="betweenness").text = repr(float(betweenness[n]))
    for (a, b), w in net.edges.items():
        edge = ET.SubElement(g, "edge", source=a, target=b)
        ET.SubElement(edge, "data", key="weight").text = str(w)
    ET.indent(root)
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(root, encoding="unicode") + "\n"


def network_to_dict(net: PartnershipNetwork, betweenness: Mapping[str, float] | None = None) -> dict:
    nodes = []
    for n in net.nodes:
        entry: dict = {"id": n}
        if betweenness is not None:
            entry["betweenness"] = float(betweenness[n])
        nodes.append(entry)
    return {
        "match_id": net.match_id,
        "team": net.team,
        "nodes": nodes,
        "edges": [{"source": a, "target": b, "weight": w} for (a, b), w in net.edges.items()],
    }


def network_from_dict(d: Mapping) -> PartnershipNetwork:
    edges = {}
    for e in d["edges"]:
        a, b = sorted((e["source"], e["target"]))
        edges[(a, b)] = int(e["weight"])
    nodes = tuple(sorted(n["id"] for n in d["nodes"]))
    return PartnershipNetwork(d.get("team", ""), d.get("match_id", ""), nodes, dict(sorted(edges.items())))


def export_graph(net: PartnershipNetwork, fmt, betweenness: Mapping[str, float] | None = None) -> str:
    """Render as DOT, GraphML or JSON; node annotations are added when ``betweenness`` is given."""
    fmt = _coerce_format(fmt)
    if fmt is ExportFormat.DOT:
        return _to_dot(net, betweenness)
    if fmt is ExportFormat.GRAPHML:
        return _to_graphml(net, betweenness)
    return json.dumps(network_to_dict(net, betweenness), sort_keys=True, indent=2) + "\n"
