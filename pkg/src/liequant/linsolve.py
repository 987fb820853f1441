"""Deterministic sparse Gaussian elimination over the rationals.

The solver processes pivot columns in ascending variable order; among the
active rows containing the column it picks the shortest one (ties broken by
row id), eliminates forward, and back-substitutes.  Variables that never
acquire a pivot are pinned to zero.  Inconsistent systems yield a left null
vector ``y`` of the matrix with ``y·b != 0`` instead of raising.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence


@dataclass
class LinSystem:
    """Sparse rational system ``A x = b``."""

    nvars: int
    rows: list[dict[int, Fraction]] = field(default_factory=list)
    rhs: list[Fraction] = field(default_factory=list)
    var_labels: list[str] | None = None

    def add_row(self, row: dict[int, Fraction], rhs: Fraction):
        self.rows.append({c: v for c, v in row.items() if v})
        self.rhs.append(rhs)

    @property
    def nrows(self) -> int:
        return len(self.rows)


@dataclass
class Certificate:
    """Left null vector proving inconsistency: y·A = 0 and y·b != 0."""

    combination: dict[int, Fraction]
    residual: Fraction


@dataclass
class Solution:
    values: list[Fraction]
    pivot_columns: list[int]

    @property
    def free_columns(self):
        pivots = set(self.pivot_columns)
        return [c for c in range(len(self.values)) if c not in pivots]


def lin_solve(system: LinSystem, track_certificate: bool = True) -> Solution | Certificate:
    nvars = system.nvars
    rows = [dict(r) for r in system.rows]
    rhs = list(system.rhs)
    nrows = len(rows)
    comb: list[dict[int, Fraction]] = [{i: Fraction(1)} for i in range(nrows)] if track_certificate else [{} for _ in range(nrows)]

    # column -> set of active (non-pivot) row ids that mention it
    col_rows: dict[int, set[int]] = {}
    for rid, row in enumerate(rows):
        for c in row:
            col_rows.setdefault(c, set()).add(rid)

    pivot_of_col: dict[int, int] = {}
    is_pivot_row = [False] * nrows

    for col in range(nvars):
        cands = col_rows.get(col)
        if not cands:
            continue
        piv = min(cands, key=lambda rid: (len(rows[rid]), rid))
        pivot_of_col[col] = piv
        is_pivot_row[piv] = True
        piv_row = rows[piv]
        piv_val = piv_row[col]
        for rid in sorted(cands):
            if rid == piv:
                continue
            row = rows[rid]
            factor = row[col] / piv_val
            for c, v in piv_row.items():
                acc = row.get(c, Fraction(0)) - factor * v
                if acc:
                    row[c] = acc
                    if c != col:
                        col_rows.setdefault(c, set()).add(rid)
                else:
                    row.pop(c, None)
                    if c != col:
                        s = col_rows.get(c)
                        if s is not None:
                            s.discard(rid)
            rhs[rid] -= factor * rhs[piv]
            if track_certificate:
                crow = comb[rid]
                for orig, cv in comb[piv].items():
                    acc = crow.get(orig, Fraction(0)) - factor * cv
                    if acc:
                        crow[orig] = acc
                    else:
                        crow.pop(orig, None)
        # retire the pivot column and row from the active index
        for c in list(piv_row):
            s = col_rows.get(c)
            if s is not None:
                s.discard(piv)
        col_rows.pop(col, None)

    for rid in range(nrows):
        if not is_pivot_row[rid] and not rows[rid] and rhs[rid]:
            return Certificate(combination=comb[rid], residual=rhs[rid])

    values = [Fraction(0)] * nvars
    for col in sorted(pivot_of_col, reverse=True):
        rid = pivot_of_col[col]
        row = rows[rid]
        acc = rhs[rid]
        for c, v in row.items():
            if c != col:
                acc -= v * values[c]
        values[col] = acc / row[col]
    return Solution(values=values, pivot_columns=sorted(pivot_of_col))


def verify_certificate(system: LinSystem, cert: Certificate) -> bool:
    """Check y·A = 0 and y·b != 0 for a returned certificate."""
    acc_cols: dict[int, Fraction] = {}
    acc_rhs = Fraction(0)
    for rid, y in cert.combination.items():
        for c, v in system.rows[rid].items():
            acc = acc_cols.get(c, Fraction(0)) + y * v
            if acc:
                acc_cols[c] = acc
            else:
                acc_cols.pop(c, None)
        acc_rhs += y * system.rhs[rid]
    return not acc_cols and acc_rhs != 0


def solve_dense(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> Solution | Certificate:
    """Convenience wrapper for small dense systems."""
    nvars = len(matrix[0]) if matrix else 0
    sys = LinSystem(nvars=nvars)
    for row, b in zip(matrix, rhs):
        sys.add_row({j: Fraction(v) for j, v in enumerate(row) if v}, Fraction(b))
    return lin_solve(sys)
