"""Design matrices with dummy-coded fixed effects."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from ..errors import DegenerateError

log = logging.getLogger(__name__)

INTERCEPT = "const"
_PRUNE_TOL = 1e-9


@dataclass
class DesignMatrix:
    names: list[str]
    X: np.ndarray
    reference_levels: dict[str, object] = field(default_factory=dict)
    pruned: list[str] = field(default_factory=list)

    def __post_init__(self):
        self.X = np.asarray(self.X, dtype=float)
        if self.X.ndim != 2 or self.X.shape[1] != len(self.names):
            raise ValueError(f"matrix shape {self.X.shape} does not match {len(self.names)} names")
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate column names")

    @property
    def n_rows(self) -> int:
        return self.X.shape[0]

    @property
    def columns(self) -> dict[str, np.ndarray]:
        return {name: self.X[:, j] for j, name in enumerate(self.names)}

    def column(self, name: str) -> np.ndarray:
        return self.X[:, self.names.index(name)]

    @property
    def has_intercept(self) -> bool:
        return INTERCEPT in self.names

    @classmethod
    def from_columns(cls, columns: Mapping[str, Sequence[float]]) -> "DesignMatrix":
        names = list(columns)
        return cls(names, np.column_stack([np.asarray(columns[k], dtype=float) for k in names]))


def intercept_only(n: int) -> DesignMatrix:
    return DesignMatrix([INTERCEPT], np.ones((n, 1)))


def _level_key(v):
    return (0, v, "") if isinstance(v, (int, float)) and not isinstance(v, bool) else (1, 0, str(v))


def dummy_name(field_name: str, level) -> str:
    return f"{field_name}[{level}]"


def prune_collinear(names: list[str], X: np.ndarray, tol: float = _PRUNE_TOL) -> tuple[list[str], np.ndarray, list[str]]:
    """Drop, left to right, every column lying in the span of the columns kept before it.

    Incremental Gram-Schmidt with one re-orthogonalization pass; a column is
    dropped when its residual norm is at most ``tol`` times its own norm.
    """
    n = X.shape[0]
    store = np.empty((n, X.shape[1]))
    keep: list[int] = []
    dropped: list[str] = []
    for j in range(X.shape[1]):
        col = X[:, j]
        norm = np.linalg.norm(col)
        if norm == 0.0:
            dropped.append(names[j])
            continue
        basis = store[:, : len(keep)]
        r = col - basis @ (basis.T @ col)
        r = r - basis @ (basis.T @ r)
        rn = np.linalg.norm(r)
        if rn <= tol * norm:
            dropped.append(names[j])
            continue
        store[:, len(keep)] = r / rn
        keep.append(j)
    return [names[j] for j in keep], X[:, keep], dropped


def encode_fixed_effects(
    rows: Sequence[Mapping],
    numeric: Sequence[str] = (),
    categorical: Sequence[str] = (),
    *,
    intercept: bool = True,
    outcome: Sequence[float] | None = None,
) -> DesignMatrix:
    """Intercept, numeric columns, then one indicator per non-reference level.

    The reference level of each categorical is its smallest level (numbers
    numerically, strings lexicographically). Exactly collinear columns are
    pruned and logged. ``outcome``, when given, is checked for constancy.
    """
    if outcome is not None:
        y = np.asarray(outcome, dtype=float)
        if y.size == 0 or np.all(y == y[0]):
            raise DegenerateError("outcome is constant")
    n = len(rows)
    names: list[str] = []
    cols: list[np.ndarray] = []
    if intercept:
        names.append(INTERCEPT)
        cols.append(np.ones(n))
    for f in numeric:
        names.append(f)
        cols.append(np.array([float(r[f]) for r in rows]))
    refs: dict[str, object] = {}
    for f in categorical:
        values = [r[f] for r in rows]
        levels = sorted(set(values), key=_level_key)
        if not levels:
            raise DegenerateError(f"categorical {f!r} has no levels")
        refs[f] = levels[0]
        for lvl in levels[1:]:
            names.append(dummy_name(f, lvl))
            cols.append(np.array([1.0 if v == lvl else 0.0 for v in values]))
    X = np.column_stack(cols) if cols else np.empty((n, 0))
    kept, Xk, dropped = prune_collinear(names, X)
    if dropped:
        log.warning("pruned %d collinear column(s): %s", len(dropped), ", ".join(dropped))
    return DesignMatrix(kept, Xk, refs, dropped)
