"""Independent reference computations used only by the tests."""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np


def simple_paths(adj, s, t):
    stack = [(s, [s])]
    while stack:
        v, path = stack.pop()
        if v == t:
            yield path
            continue
        for w in adj[v]:
            if w not in path:
                stack.append((w, path + [w]))


def enumerated_betweenness(nodes, edges):
    """Betweenness by listing every simple path between every pair.

    ``edges`` maps (a, b) -> runs. Path lengths are exact rationals, so ties
    are exact.
    """
    adj = {n: {} for n in nodes}
    for (a, b), w in edges.items():
        d = Fraction(1, w + 1)
        adj[a][b] = d
        adj[b][a] = d
    score = {n: Fraction(0) for n in nodes}
    for j, l in itertools.combinations(sorted(nodes), 2):
        paths = [(sum(adj[p[i]][p[i + 1]] for i in range(len(p) - 1)), p) for p in simple_paths(adj, j, l)]
        if not paths:
            continue
        best = min(length for length, _ in paths)
        shortest = [p for length, p in paths if length == best]
        for i in nodes:
            if i in (j, l):
                continue
            through = sum(1 for p in shortest if i in p)
            score[i] += Fraction(through, len(shortest))
    return {n: float(v) for n, v in score.items()}


def tree_pair_counts(nodes, edges):
    """On a tree, the number of node pairs whose path runs through each node."""
    adj = {n: set() for n in nodes}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    out = {}
    for i in nodes:
        sizes = []
        seen = {i}
        for nb in adj[i]:
            stack, size = [nb], 0
            seen.add(nb)
            while stack:
                v = stack.pop()
                size += 1
                for w in adj[v]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            sizes.append(size)
        total = sum(sizes)
        out[i] = (total * total - sum(s * s for s in sizes)) // 2
    return out


def random_connected_edges(rng, n, extra_p, max_w):
    nodes = [f"p{k:02d}" for k in range(n)]
    edges = {}
    for k in range(1, n):
        parent = nodes[int(rng.integers(0, k))]
        a, b = sorted((parent, nodes[k]))
        edges[(a, b)] = int(rng.integers(0, max_w + 1))
    for a, b in itertools.combinations(nodes, 2):
        if (a, b) not in edges and rng.random() < extra_p:
            edges[(a, b)] = int(rng.integers(0, max_w + 1))
    return nodes, dict(sorted(edges.items()))


def normal_equations(X, y):
    """OLS coefficients through an explicit inverse of X'X."""
    XtX = X.T @ X
    return np.linalg.inv(XtX) @ (X.T @ y)


def chi2_sf_df1(x):
    """Upper tail of chi-square(1) via the complementary error function."""
    from math import erfc, sqrt

    return erfc(sqrt(x / 2.0))
