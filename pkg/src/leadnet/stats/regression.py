"""Maximum-likelihood logit (IRLS), least squares, and fit diagnostics."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy import linalg, special
from scipy import stats as sps

from ..errors import (
    DegenerateError,
    NestingError,
    NonConvergenceError,
    PerfectCollinearityError,
    RankError,
    SeparationError,
    ZeroVarianceError,
)
from .design import INTERCEPT, DesignMatrix

MAX_ITER = 50
COEF_TOL = 1e-10
SEPARATION_LIMIT = 30.0
_MAX_HALVINGS = 40


@dataclass
class FitResult:
    kind: str
    names: list[str]
    params: np.ndarray
    bse: np.ndarray
    n_obs: int
    converged: bool
    iterations: int
    llf: float
    r_squared: float | None = None
    df_resid: int = 0
    score: np.ndarray | None = field(default=None, repr=False)
    resid: np.ndarray | None = field(default=None, repr=False)

    @property
    def k(self) -> int:
        return len(self.names)

    @property
    def coefficients(self) -> dict[str, tuple[float, float]]:
        return {n: (float(b), float(s)) for n, b, s in zip(self.names, self.params, self.bse)}

    def estimate(self, name: str) -> float:
        return float(self.params[self.names.index(name)])

    def se(self, name: str) -> float:
        return float(self.bse[self.names.index(name)])

    @property
    def p_values(self) -> np.ndarray:
        with np.errstate(divide="ignore", invalid="ignore"):
            stat = np.abs(self.params / self.bse)
        if self.kind == "logit":
            return 2.0 * sps.norm.sf(stat)
        return 2.0 * sps.t.sf(stat, self.df_resid)

    def table(self) -> list[dict]:
        return [
            {"name": n, "estimate": float(b), "se": float(s), "p": float(p)}
            for n, b, s, p in zip(self.names, self.params, self.bse, self.p_values)
        ]


def _as_arrays(X, y):
    names = list(X.names) if isinstance(X, DesignMatrix) else [f"x{j}" for j in range(np.shape(X)[1])]
    A = X.X if isinstance(X, DesignMatrix) else np.asarray(X, dtype=float)
    yv = np.asarray(y, dtype=float)
    if A.shape[0] != yv.shape[0]:
        raise ValueError(f"{A.shape[0]} design rows but {yv.shape[0]} outcomes")
    if A.shape[0] <= A.shape[1]:
        raise RankError(f"{A.shape[0]} observations for {A.shape[1]} columns")
    return names, A, yv


def _logit_llf(eta: np.ndarray, y: np.ndarray) -> float:
    return float(np.sum(y * eta - np.logaddexp(0.0, eta)))


def fit_logistic(X: DesignMatrix, y: Sequence[float], *, max_iter: int = MAX_ITER, tol: float = COEF_TOL) -> FitResult:
    """Logistic regression by iteratively reweighted least squares.

    Newton steps with step-halving whenever the log-likelihood would drop.
    Stops once the largest coefficient change is below ``tol``. Standard
    errors come from the inverse information matrix at the optimum.
    """
    names, A, yv = _as_arrays(X, y)
    if not np.all((yv == 0) | (yv == 1)):
        raise ValueError("logit outcome must be 0/1")
    if np.all(yv == yv[0]):
        raise DegenerateError("logit outcome is constant")
    beta = np.zeros(A.shape[1])
    eta = A @ beta
    llf = _logit_llf(eta, yv)
    converged = False
    it = 0
    for it in range(1, max_iter + 1):
        p = special.expit(eta)
        w = p * (1.0 - p)
        score = A.T @ (yv - p)
        info = A.T @ (w[:, None] * A)
        try:
            step = linalg.solve(info, score, assume_a="pos")
        except (linalg.LinAlgError, ValueError):
            raise SeparationError("information matrix is singular; fitted probabilities have collapsed") from None
        for _ in range(_MAX_HALVINGS):
            cand = beta + step
            eta_c = A @ cand
            llf_c = _logit_llf(eta_c, yv)
            if llf_c >= llf - 1e-12 * abs(llf):
                break
            step = step / 2.0
        change = float(np.max(np.abs(cand - beta)))
        beta, eta, llf = cand, eta_c, llf_c
        if np.max(np.abs(beta)) > SEPARATION_LIMIT:
            worst = names[int(np.argmax(np.abs(beta)))]
            raise SeparationError(f"coefficient on {worst} diverged beyond {SEPARATION_LIMIT:g}")
        if change < tol:
            converged = True
            break
    if not converged:
        raise NonConvergenceError(f"IRLS did not converge in {max_iter} iterations")
    p = special.expit(eta)
    w = p * (1.0 - p)
    info = A.T @ (w[:, None] * A)
    cov = linalg.inv(info)
    return FitResult(
        kind="logit",
        names=names,
        params=beta,
        bse=np.sqrt(np.diag(cov)),
        n_obs=A.shape[0],
        converged=True,
        iterations=it,
        llf=llf,
        df_resid=A.shape[0] - A.shape[1],
        score=A.T @ (yv - p),
    )


def fit_ols(X: DesignMatrix, y: Sequence[float]) -> FitResult:
    """Least squares through a QR factorization of the design."""
    names, A, yv = _as_arrays(X, y)
    n, k = A.shape
    Q, R = np.linalg.qr(A)
    diag = np.abs(np.diag(R))
    if diag.min() <= 1e-10 * max(diag.max(), 1.0):
        raise RankError("design is rank deficient")
    beta = linalg.solve_triangular(R, Q.T @ yv)
    resid = yv - A @ beta
    rss = float(resid @ resid)
    df = n - k
    sigma2 = rss / df
    R_inv = linalg.solve_triangular(R, np.eye(k))
    cov = sigma2 * (R_inv @ R_inv.T)
    has_const = INTERCEPT in names
    tss = float(np.sum((yv - yv.mean()) ** 2)) if has_const else float(yv @ yv)
    r2 = 1.0 - rss / tss if tss > 0 else float("nan")
    llf = -0.5 * n * (np.log(2 * np.pi * rss / n) + 1.0) if rss > 0 else float("inf")
    return FitResult(
        kind="ols",
        names=names,
        params=beta,
        bse=np.sqrt(np.diag(cov)),
        n_obs=n,
        converged=True,
        iterations=1,
        llf=float(llf),
        r_squared=r2,
        df_resid=df,
        resid=resid,
    )


def standardized_coefficients(
    fit: FitResult, X: DesignMatrix, y: Sequence[float], names: Sequence[str] | None = None
) -> dict[str, float]:
    """``beta_j * sd(x_j) / sd(y)`` with n-1 standard deviations."""
    if not fit.converged:
        raise ValueError("fit did not converge")
    yv = np.asarray(y, dtype=float)
    sd_y = float(np.std(yv, ddof=1))
    if sd_y == 0.0:
        raise ZeroVarianceError("outcome has zero variance")
    wanted = [n for n in fit.names if n != INTERCEPT] if names is None else list(names)
    out = {}
    for name in wanted:
        sd_x = float(np.std(X.column(name), ddof=1))
        if sd_x == 0.0:
            raise ZeroVarianceError(f"column {name} has zero variance")
        out[name] = fit.estimate(name) * sd_x / sd_y
    return out


def vif(X: DesignMatrix, columns: Sequence[str] | None = None) -> dict[str, float]:
    """Variance inflation ``1/(1 - R²_j)``, regressing column j on the others plus an intercept.

    Raises ``PerfectCollinearityError`` (carrying the full map, with ``inf``
    entries) if any column is an exact combination of the rest.
    """
    predictors = [n for n in X.names if n != INTERCEPT]
    if len(predictors) < 2:
        raise ValueError("VIF needs at least two non-intercept columns")
    wanted = predictors if columns is None else list(columns)
    n = X.n_rows
    out: dict[str, float] = {}
    bad: list[str] = []
    for name in wanted:
        xj = X.column(name)
        others = np.column_stack([np.ones(n)] + [X.column(o) for o in predictors if o != name])
        coef, *_ = np.linalg.lstsq(others, xj, rcond=None)
        resid = xj - others @ coef
        tss = float(np.sum((xj - xj.mean()) ** 2))
        rss = float(resid @ resid)
        if tss == 0.0 or rss <= 1e-10 * tss:
            out[name] = float("inf")
            bad.append(name)
        else:
            out[name] = tss / rss
    if bad:
        raise PerfectCollinearityError(bad, out)
    return out


def likelihood_ratio_test(full: FitResult, null: FitResult, df: int) -> float:
    """Upper chi-square tail at ``2·(llf_full - llf_null)``."""
    if df < 1:
        raise ValueError("df must be positive")
    diff = full.llf - null.llf
    if diff < -1e-8:
        raise NestingError(f"full model log-likelihood below null by {-diff:.3g}")
    return float(sps.chi2.sf(max(0.0, 2.0 * diff), df))


def lr_statistic(full: FitResult, null: FitResult) -> float:
    return max(0.0, 2.0 * (full.llf - null.llf))
