"""Dense two-phase simplex for small linear programs.

Maximizes ``objective . x`` subject to row constraints with mixed senses and
per-variable bounds.  Bland's rule on both the entering and leaving choice
prevents cycling; suited to dense problems up to a few hundred rows/columns.
"""

from __future__ import annotations

import numpy as np

from .errors import InfeasibleProblem, SimplexError, UnboundedProblem

_PIVOT_TOL = 1e-9
_FEAS_TOL = 1e-9


def simplex_solve(objective, constraints, senses, rhs, bounds=None):
    """Solve: maximize objective . x subject to constraints[i] . x <sense_i> rhs[i].

    senses entries are "<=", ">=", or "=".  bounds is one (lo, hi) pair per
    variable, with None for an infinite end; the default is (0, None).
    Returns (optimal value, x).  Raises InfeasibleProblem or UnboundedProblem.
    """
    c = np.asarray(objective, dtype=np.float64)
    a = np.atleast_2d(np.asarray(constraints, dtype=np.float64))
    b = np.asarray(rhs, dtype=np.float64)
    n = c.size
    if a.shape != (b.size, n):
        raise ValueError(f"constraint matrix shape {a.shape} does not match "
                         f"{b.size} rhs entries and {n} variables")
    senses = list(senses)
    if len(senses) != b.size:
        raise ValueError("one sense per constraint row required")
    for s in senses:
        if s not in ("<=", ">=", "="):
            raise ValueError(f"unknown sense {s!r}")
    if bounds is None:
        bounds = [(0.0, None)] * n
    if len(bounds) != n:
        raise ValueError("one (lo, hi) pair per variable required")

    # Finite upper bounds become explicit rows (in original variable space).
    extra_rows = []
    extra_rhs = []
    for j, (lo, hi) in enumerate(bounds):
        if hi is not None:
            if lo is not None and lo > hi:
                raise ValueError(f"variable {j} has lo > hi")
            row = np.zeros(n)
            row[j] = 1.0
            extra_rows.append(row)
            extra_rhs.append(float(hi))
    if extra_rows:
        a = np.vstack([a, np.array(extra_rows)])
        b = np.concatenate([b, np.array(extra_rhs)])
        senses = senses + ["<="] * len(extra_rows)

    # Lower bounds: shift finite ones to zero, split free variables.
    # columns[j] -> list of (std_column, sign); offsets[j] added back at the end.
    offsets = np.zeros(n)
    col_of: list[list[tuple[int, float]]] = []
    std_cols: list[np.ndarray] = []
    std_costs: list[float] = []
    for j, (lo, hi) in enumerate(bounds):
        if lo is None:
            col_of.append([(len(std_cols), 1.0), (len(std_cols) + 1, -1.0)])
            std_cols.append(a[:, j].copy())
            std_costs.append(float(c[j]))
            std_cols.append(-a[:, j])
            std_costs.append(float(-c[j]))
        else:
            offsets[j] = float(lo)
            col_of.append([(len(std_cols), 1.0)])
            std_cols.append(a[:, j].copy())
            std_costs.append(float(c[j]))
    a_std = np.column_stack(std_cols)
    b_std = b - a @ offsets
    c_std = np.array(std_costs)

    x_std = _solve_standard(a_std, np.array(senses, dtype=object), b_std, c_std)

    x = np.array(offsets)
    for j in range(n):
        for col, sign in col_of[j]:
            x[j] += sign * x_std[col]

    residual = a @ x - b
    for i, s in enumerate(senses):
        bad = (s == "<=" and residual[i] > _FEAS_TOL) or \
              (s == ">=" and residual[i] < -_FEAS_TOL) or \
              (s == "=" and abs(residual[i]) > _FEAS_TOL)
        if bad:
            raise SimplexError(f"solution violates constraint {i} by {residual[i]:.3e}")
    return float(c @ x), x


def _solve_standard(a, senses, b, c):
    """Maximize c.z for A z <sense> b, z >= 0 via two-phase tableau simplex."""
    m, n = a.shape
    a = a.copy()
    b = b.copy()
    flip = b < 0
    a[flip] *= -1.0
    b[flip] = -b[flip]
    senses = senses.copy()
    for i in np.nonzero(flip)[0]:
        if senses[i] == "<=":
            senses[i] = ">="
        elif senses[i] == ">=":
            senses[i] = "<="

    # slack (+1) for <=, surplus (-1) plus artificial for >=, artificial for =
    slack_cols = []
    art_rows = []
    for i, s in enumerate(senses):
        col = np.zeros(m)
        if s == "<=":
            col[i] = 1.0
            slack_cols.append((i, col))
        elif s == ">=":
            col[i] = -1.0
            slack_cols.append((None, col))
            art_rows.append(i)
        else:
            art_rows.append(i)
    n_slack = len(slack_cols)
    n_art = len(art_rows)
    width = n + n_slack + n_art

    table = np.zeros((m + 1, width + 1))
    table[:m, :n] = a
    table[:m, -1] = b
    basis = np.full(m, -1, dtype=np.int64)
    for k, (row, col) in enumerate(slack_cols):
        table[:m, n + k] = col
        if row is not None:
            basis[row] = n + k
    for k, i in enumerate(art_rows):
        table[i, n + n_slack + k] = 1.0
        basis[i] = n + n_slack + k

    if n_art:
        # Phase 1: minimize the sum of artificials.
        table[-1, :] = 0.0
        table[-1, n + n_slack:width] = 1.0
        for i in range(m):
            if basis[i] >= n + n_slack:
                table[-1, :] -= table[i, :]
        _iterate(table, basis, width)
        if -table[-1, -1] > _FEAS_TOL:
            raise InfeasibleProblem(f"phase-1 residual {-table[-1, -1]:.3e}")
        # Pivot artificials out of the basis; drop redundant rows.
        keep = np.ones(m, dtype=bool)
        for i in range(m):
            if basis[i] >= n + n_slack:
                pivot_col = -1
                for j in range(n + n_slack):
                    if abs(table[i, j]) > _PIVOT_TOL:
                        pivot_col = j
                        break
                if pivot_col < 0:
                    keep[i] = False
                else:
                    _pivot(table, i, pivot_col)
                    basis[i] = pivot_col
        rows = np.concatenate([np.nonzero(keep)[0], [m]])
        table = table[rows][:, np.concatenate([np.arange(n + n_slack), [width]])]
        basis = basis[keep]
        m = basis.size
        width = n + n_slack

    # Phase 2: minimize -c.
    table[-1, :] = 0.0
    table[-1, :n] = -c
    for i in range(m):
        if table[-1, basis[i]] != 0.0:
            table[-1, :] -= table[-1, basis[i]] * table[i, :]
    status = _iterate(table, basis, width)
    if status == "unbounded":
        raise UnboundedProblem("objective unbounded above")

    z = np.zeros(width)
    z[basis] = table[:m, -1]
    return z[:n]


def _iterate(table, basis, width):
    m = basis.size
    while True:
        enter = -1
        for j in range(width):
            if table[-1, j] < -_PIVOT_TOL:
                enter = j
                break
        if enter < 0:
            return "optimal"
        leave = -1
        best = np.inf
        for i in range(m):
            coeff = table[i, enter]
            if coeff > _PIVOT_TOL:
                ratio = table[i, -1] / coeff
                if ratio < best - 1e-12 or (
                    ratio <= best + 1e-12 and (leave < 0 or basis[i] < basis[leave])
                ):
                    best = ratio
                    leave = i
        if leave < 0:
            return "unbounded"
        _pivot(table, leave, enter)
        basis[leave] = enter


def _pivot(table, row, col):
    table[row, :] /= table[row, col]
    for i in range(table.shape[0]):
        if i != row and table[i, col] != 0.0:
            table[i, :] -= table[i, col] * table[row, :]
