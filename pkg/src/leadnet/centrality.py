"""Weighted betweenness and degree centralization of partnership networks."""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .errors import DisconnectedError, TooSmallError
from .graph import PartnershipNetwork

PATH_REL_TOL = 1e-9


def edge_distance(weight: float) -> float:
    """Shortest-path length of an edge; big partnerships are short hops."""
    return 1.0 / (weight + 1.0)


def _brandes(adj: Mapping[str, Mapping[str, float]], rel_tol: float) -> dict[str, float]:
    """Brandes dependency accumulation over Dijkstra trees.

    ``adj`` maps node -> {neighbour: length}. Lengths must be positive. Unreachable
    pairs contribute nothing, so on a disconnected graph this equals the
    per-component computation.
    """
    names = list(adj)
    index = {v: i for i, v in enumerate(names)}
    nbrs = [[(index[w], length) for w, length in adj[v].items()] for v in names]
    n = len(names)
    bc = [0.0] * n
    inf = float("inf")
    for s in range(n):
        order: list[int] = []
        preds: list[list[int]] = [[] for _ in range(n)]
        sigma = [0] * n
        dist = [inf] * n
        settled = [False] * n
        sigma[s] = 1
        dist[s] = 0.0
        heap = [(0.0, s)]
        while heap:
            d, v = heapq.heappop(heap)
            if settled[v]:
                continue
            settled[v] = True
            order.append(v)
            for w, length in nbrs[v]:
                if settled[w]:
                    continue
                alt = d + length
                old = dist[w]
                if old != inf and abs(alt - old) <= rel_tol * max(alt, old):
                    sigma[w] += sigma[v]
                    preds[w].append(v)
                elif alt < old:
                    dist[w] = alt
                    sigma[w] = sigma[v]
                    preds[w] = [v]
                    heapq.heappush(heap, (alt, w))
        delta = [0.0] * n
        for w in reversed(order):
            coeff = (1.0 + delta[w]) / sigma[w]
            for v in preds[w]:
                delta[v] += sigma[v] * coeff
            if w != s:
                bc[w] += delta[w]
    # each unordered pair was visited from both ends
    return {v: bc[i] / 2.0 for i, v in enumerate(names)}


def weighted_betweenness(
    net: PartnershipNetwork, *, allow_disconnected: bool = False, rel_tol: float = PATH_REL_TOL
) -> dict[str, float]:
    """Unnormalized betweenness under the ``1/(runs+1)`` edge metric.

    For every node i, sums over unordered pairs {j, l} not containing i the
    fraction of shortest j-l paths passing through i. Path lengths within
    ``rel_tol`` (relative) of each other count as equally short.
    """
    if not allow_disconnected and not net.is_connected():
        raise DisconnectedError(f"{net.team or 'network'} has {len(net.components())} components")
    adj = {v: {w: edge_distance(wt) for w, wt in nbrs.items()} for v, nbrs in net.adjacency().items()}
    scores = _brandes(adj, rel_tol)
    return {v: scores[v] for v in net.nodes}


def centralization_fraction(degrees: list[int]) -> Fraction:
    n = len(degrees)
    if n < 3:
        raise TooSmallError(f"centralization needs at least 3 players, got {n}")
    k_max = max(degrees)
    return Fraction(sum(k_max - k for k in degrees), (n - 1) * (n - 2))


def degree_centralization(net: PartnershipNetwork) -> float:
    """Freeman-style degree centralization: 1 for a star, 0 for a regular graph.

    Degree is the number of distinct batting partners, so edge weights play
    no part.
    """
    return float(centralization_fraction(list(net.degree().values())))


@dataclass(frozen=True)
class CentralityReport:
    betweenness: dict[str, float]
    omega: float | None
    n_players: int

    def to_dict(self) -> dict:
        return {
            "betweenness": {k: self.betweenness[k] for k in sorted(self.betweenness)},
            "omega": self.omega,
            "n_players": self.n_players,
        }


def centrality_report(net: PartnershipNetwork) -> CentralityReport:
    """Betweenness (per component) and ω; ω is ``None`` below three players."""
    bc = weighted_betweenness(net, allow_disconnected=True)
    omega = degree_centralization(net) if net.n_players >= 3 else None
    return CentralityReport(dict(sorted(bc.items())), omega, net.n_players)
