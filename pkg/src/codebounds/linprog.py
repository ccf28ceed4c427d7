"""Dense two-phase simplex solver for desk-scale linear programs.

Minimizes ``objective @ x`` subject to row constraints (<=, >=, =) and
per-variable bounds. The core works on a full tableau with artificial
variables on every row, Dantzig pricing, and a switch to Bland's rule
after a streak of degenerate pivots. Grid-discretized bound LPs have
thousands of constraints but only a few variables; for that shape the
solver transparently solves the dual (same core, tiny tableau) and
recovers the primal solution from the simplex multipliers. Either path
ends with an independent feasibility check of the reported solution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

FEAS_TOL = 1e-9
OPT_TOL = 1e-9
PIVOT_TOL = 1e-10
DEGENERATE_STREAK_LIMIT = 20

LE, GE, EQ = "<=", ">=", "="
_RELATIONS = (LE, GE, EQ)

__all__ = ["LinearProgram", "LPSolution", "solve_lp", "LE", "GE", "EQ"]


@dataclass
class LinearProgram:
    """Dense LP: minimize ``objective @ x`` under rows and variable bounds.

    ``constraints`` is a list of (row, relation, rhs) with relation one of
    "<=", ">=", "=". Bounds default to x >= 0 with no upper limit.
    """

    objective: np.ndarray
    constraints: list = field(default_factory=list)
    lower: np.ndarray | None = None
    upper: np.ndarray | None = None

    def __post_init__(self):
        self.objective = np.asarray(self.objective, dtype=float)
        if self.objective.ndim != 1 or self.objective.size == 0:
            raise ValueError("objective must be a non-empty vector")
        if not np.all(np.isfinite(self.objective)):
            raise ValueError("objective entries must be finite")
        n = self.n_vars
        rows = []
        for item in self.constraints:
            row, rel, rhs = item
            row = np.asarray(row, dtype=float)
            if row.shape != (n,):
                raise ValueError(
                    f"constraint row has length {row.shape}, expected ({n},)"
                )
            if rel not in _RELATIONS:
                raise ValueError(f"unknown relation {rel!r}")
            rhs = float(rhs)
            if not (np.all(np.isfinite(row)) and math.isfinite(rhs)):
                raise ValueError("constraint entries must be finite")
            rows.append((row, rel, rhs))
        self.constraints = rows
        self.lower = (
            np.zeros(n) if self.lower is None else np.asarray(self.lower, dtype=float)
        )
        self.upper = (
            np.full(n, np.inf)
            if self.upper is None
            else np.asarray(self.upper, dtype=float)
        )
        if self.lower.shape != (n,) or self.upper.shape != (n,):
            raise ValueError("bound vectors must match the variable count")
        if np.any(self.lower > self.upper):
            raise ValueError("lower bound exceeds upper bound")

    @property
    def n_vars(self) -> int:
        return len(self.objective)


@dataclass
class LPSolution:
    status: str  # "optimal" | "infeasible" | "unbounded" | "numerical_failure"
    x: np.ndarray | None = None
    objective_value: float = float("nan")
    max_constraint_violation: float = float("nan")
    iterations: int = 0


def _violation(lp: LinearProgram, x: np.ndarray) -> float:
    worst = 0.0
    for row, rel, rhs in lp.constraints:
        value = float(row @ x)
        if rel == LE:
            worst = max(worst, value - rhs)
        elif rel == GE:
            worst = max(worst, rhs - value)
        else:
            worst = max(worst, abs(value - rhs))
    finite_lo = np.isfinite(lp.lower)
    finite_hi = np.isfinite(lp.upper)
    if finite_lo.any():
        worst = max(worst, float(np.max(lp.lower[finite_lo] - x[finite_lo])))
    if finite_hi.any():
        worst = max(worst, float(np.max(x[finite_hi] - lp.upper[finite_hi])))
    return max(worst, 0.0)


class _Core:
    """Tableau simplex for min c @ z, A z (rel) b, z >= 0."""

    def __init__(self, c, A, relations, b, maxiter):
        m, n = A.shape
        self.m, self.n = m, n
        self.maxiter = maxiter
        A = A.copy()
        b = np.asarray(b, dtype=float).copy()
        relations = list(relations)
        flip = b < 0
        A[flip] *= -1.0
        b[flip] = -b[flip]
        for i in np.where(flip)[0]:
            if relations[i] == LE:
                relations[i] = GE
            elif relations[i] == GE:
                relations[i] = LE
        self.row_sign = np.where(flip, -1.0, 1.0)
        n_slack = sum(1 for rel in relations if rel != EQ)
        ncols = n + n_slack + m
        T = np.zeros((m, ncols + 1))
        T[:, :n] = A
        T[:, -1] = b
        si = n
        for i, rel in enumerate(relations):
            if rel == LE:
                T[i, si] = 1.0
                si += 1
            elif rel == GE:
                T[i, si] = -1.0
                si += 1
        self.art0 = n + n_slack
        for i in range(m):
            T[i, self.art0 + i] = 1.0
        self.T = T
        self.ncols = ncols
        self.basis = list(range(self.art0, self.art0 + m))
        self.iterations = 0

    def _pivot(self, row: int, col: int) -> None:
        T = self.T
        T[row] /= T[row, col]
        factors = T[:, col].copy()
        factors[row] = 0.0
        T -= np.outer(factors, T[row])
        self.basis[row] = col

    def _run(self, cost: np.ndarray, allowed: np.ndarray) -> str:
        T = self.T
        degenerate_streak = 0
        basis_arr = np.array(self.basis)
        while self.iterations < self.maxiter:
            cb = cost[basis_arr]
            reduced = cost - cb @ T[:, :-1]
            reduced[~allowed] = np.inf
            reduced[basis_arr] = np.inf
            if degenerate_streak >= DEGENERATE_STREAK_LIMIT:
                candidates = np.where(reduced < -OPT_TOL)[0]
                if len(candidates) == 0:
                    return "optimal"
                enter = int(candidates[0])  # Bland: lowest index
            else:
                enter = int(np.argmin(reduced))
                if reduced[enter] >= -OPT_TOL:
                    return "optimal"
            col = T[:, enter]
            positive = col > PIVOT_TOL
            if not positive.any():
                return "unbounded"
            ratios = np.full(self.m, np.inf)
            ratios[positive] = T[positive, -1] / col[positive]
            best = float(ratios.min())
            ties = np.where(ratios <= best + 1e-12 * (1.0 + abs(best)))[0]
            leave = int(ties[np.argmin(basis_arr[ties])])  # Bland tie-break
            degenerate_streak = degenerate_streak + 1 if best <= 1e-10 else 0
            self._pivot(leave, enter)
            basis_arr[leave] = enter
            self.iterations += 1
        return "stalled"

    def solve(self, c: np.ndarray):
        cost1 = np.zeros(self.ncols)
        cost1[self.art0 :] = 1.0
        allowed = np.ones(self.ncols, dtype=bool)
        status = self._run(cost1, allowed)
        if status == "stalled":
            return "numerical_failure", None, None
        rhs_scale = 1.0 + float(np.max(np.abs(self.T[:, -1]))) if self.m else 1.0
        phase1 = float(cost1[self.basis] @ self.T[:, -1])
        if phase1 > 1e-8 * rhs_scale:
            return "infeasible", None, None
        self._evict_artificials()
        cost2 = np.zeros(self.ncols)
        cost2[: self.n] = c
        allowed = np.ones(self.ncols, dtype=bool)
        allowed[self.art0 :] = False
        status = self._run(cost2, allowed)
        if status == "stalled":
            return "numerical_failure", None, None
        if status == "unbounded":
            return "unbounded", None, None
        z = np.zeros(self.ncols)
        z[np.array(self.basis)] = self.T[:, -1]
        # simplex multipliers through the artificial tracker columns (B^-1)
        pi = cost2[self.basis] @ self.T[:, self.art0 : self.art0 + self.m]
        pi = pi * self.row_sign
        return "optimal", z[: self.n], pi

    def _evict_artificials(self) -> None:
        # pivot zero-level artificials out of the basis where possible
        for row in range(self.m):
            if self.basis[row] < self.art0:
                continue
            entries = np.abs(self.T[row, : self.art0])
            col = int(np.argmax(entries))
            if entries[col] > 1e-7:
                self._pivot(row, col)
                self.iterations += 1
            else:
                # redundant row: neutralize so it can never pivot again
                self.T[row, : self.art0] = 0.0
                self.T[row, -1] = 0.0


def _solve_via_core(c, A, relations, b, maxiter):
    if A.shape[0] == 0:
        # no rows: minimum of c @ z over z >= 0
        if np.any(c < -OPT_TOL):
            return "unbounded", None, None, 0
        return "optimal", np.zeros(len(c)), np.zeros(0), 0
    core = _Core(c, A, relations, b, maxiter)
    status, z, pi = core.solve(c)
    return status, z, pi, core.iterations


def _solve_direct(lp: LinearProgram, maxiter: int):
    """General path: shift/mirror/split variables to z >= 0 form."""
    n = lp.n_vars
    lo, hi = lp.lower, lp.upper
    # column transforms: x_j = offset_j + sign_j * z_col (+ optional split col)
    offsets = np.zeros(n)
    signs = np.ones(n)
    split = np.zeros(n, dtype=bool)
    for j in range(n):
        if np.isfinite(lo[j]):
            offsets[j] = lo[j]
        elif np.isfinite(hi[j]):
            offsets[j], signs[j] = hi[j], -1.0
        else:
            split[j] = True
    n_cols = n + int(split.sum())
    split_col = {}
    next_col = n
    for j in np.where(split)[0]:
        split_col[j] = next_col
        next_col += 1

    def transform_row(row):
        out = np.zeros(n_cols)
        out[:n] = row * signs
        for j, col in split_col.items():
            out[col] = -row[j]
        return out

    rows, relations, rhs = [], [], []
    for row, rel, b in lp.constraints:
        rows.append(transform_row(row))
        relations.append(rel)
        rhs.append(b - float(row @ offsets))
    for j in range(n):
        if np.isfinite(lo[j]) and np.isfinite(hi[j]):
            row = np.zeros(n)
            row[j] = 1.0
            rows.append(transform_row(row))
            relations.append(LE)
            rhs.append(hi[j] - lo[j])
    A = np.array(rows) if rows else np.zeros((0, n_cols))
    b_vec = np.array(rhs)
    c = transform_row(lp.objective)
    status, z, _, iters = _solve_via_core(c, A, relations, b_vec, maxiter)
    if status != "optimal":
        return status, None, iters
    x = offsets + signs * z[:n]
    for j, col in split_col.items():
        x[j] -= z[col]
    return status, x, iters


def _dual_fast_path_applies(lp: LinearProgram) -> bool:
    if not (np.all(lp.lower == 0.0) and np.all(np.isinf(lp.upper))):
        return False
    if any(rel == EQ for _, rel, _ in lp.constraints):
        return False
    return len(lp.constraints) >= max(64, 4 * lp.n_vars)


def _refine_primal(lp, A, b, x, y):
    """Active-set least-squares polish of a multiplier-recovered solution.

    Late cutting-plane rounds can cluster nearly identical tight rows;
    the accumulated tableau then amplifies roundoff in the multipliers.
    Complementary slackness identifies the tight rows (positive duals)
    and the support of x, and re-solving that small system against the
    original data typically cuts the residual by orders of magnitude.
    """
    if x.size == 0 or y.size == 0:
        return x
    tight = np.where(y > 1e-11 * max(1.0, float(np.max(y))))[0]
    support = np.where(x > 1e-11 * max(1.0, float(np.max(x))))[0]
    if len(tight) == 0 or len(support) == 0:
        return x
    try:
        solution, *_ = np.linalg.lstsq(
            A[np.ix_(tight, support)], b[tight], rcond=None
        )
    except np.linalg.LinAlgError:
        return x
    candidate = np.zeros_like(x)
    candidate[support] = solution
    np.clip(candidate, 0.0, None, out=candidate)
    objective_gap = abs(float(lp.objective @ (candidate - x)))
    if objective_gap > 1e-7 * (1.0 + abs(float(lp.objective @ x))):
        return x
    if _violation(lp, candidate) < _violation(lp, x):
        return candidate
    return x


def _solve_dual(lp: LinearProgram, maxiter: int):
    """Solve min c@x, A x <= b, x >= 0 through its dual (few rows, many columns).

    Dual pair: max -b@y s.t. -A^T y <= c, y >= 0; the optimal primal x is
    the negated vector of simplex multipliers of the dual solve.
    """
    n = lp.n_vars
    A = np.empty((len(lp.constraints), n))
    b = np.empty(len(lp.constraints))
    for i, (row, rel, rhs) in enumerate(lp.constraints):
        if rel == LE:
            A[i], b[i] = row, rhs
        else:
            A[i], b[i] = -row, -rhs
    relations = [LE] * n
    status, z, pi, iters = _solve_via_core(
        b, -A.T, relations, lp.objective, maxiter
    )
    if status == "unbounded":
        return "infeasible", None, iters
    if status == "infeasible":
        return "ambiguous", None, iters
    if status != "optimal":
        return status, None, iters
    x = -pi
    np.clip(x, 0.0, None, out=x)
    x = _refine_primal(lp, A, b, x, z[: len(b)])
    return "optimal", x, iters


def solve_lp(lp: LinearProgram, maxiter: int | None = None) -> LPSolution:
    """Solve the LP; deterministic for a fixed input.

    Optimal solutions are re-checked against the original constraints: a
    result that violates them beyond tolerance is downgraded to
    ``numerical_failure`` rather than reported as optimal.
    """
    if maxiter is None:
        maxiter = 50 * (len(lp.constraints) + lp.n_vars) + 2000
    rhs_scale = 1.0 + max((abs(rhs) for _, _, rhs in lp.constraints), default=0.0)

    used_fallback = False
    if _dual_fast_path_applies(lp):
        status, x, iters = _solve_dual(lp, maxiter)
        if status == "optimal":
            if _violation(lp, x) > FEAS_TOL * rhs_scale:
                used_fallback = True  # rare: recover through the direct path
        elif status == "ambiguous":
            used_fallback = True
        if not used_fallback and status in ("optimal", "infeasible", "unbounded"):
            return _finish(lp, status, x, iters, rhs_scale)
    status, x, iters = _solve_direct(lp, maxiter)
    return _finish(lp, status, x, iters, rhs_scale)


def _finish(lp, status, x, iterations, rhs_scale) -> LPSolution:
    if status != "optimal":
        return LPSolution(status=status, iterations=iterations)
    violation = _violation(lp, x)
    if violation > FEAS_TOL * rhs_scale:
        return LPSolution(status="numerical_failure", iterations=iterations)
    return LPSolution(
        status="optimal",
        x=x,
        objective_value=float(lp.objective @ x),
        max_constraint_violation=violation,
        iterations=iterations,
    )
