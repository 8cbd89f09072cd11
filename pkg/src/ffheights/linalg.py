"""Gaussian elimination over an exact field.

Entries may be any field elements supporting ``+ - * /`` and truthiness for
the nonzero test (``Fraction`` and ``RationalFunc`` both qualify).  Matrices
are lists of rows; inputs are never modified.
"""

from __future__ import annotations

from typing import Callable, Optional, Sequence


def _pick(rows, col, start, cost):
    best = None
    for r in range(start, len(rows)):
        v = rows[r][col]
        if v:
            if cost is None:
                return r
            c = cost(v)
            if best is None or c < best[0]:
                best = (c, r)
    return None if best is None else best[1]


def solve(
    matrix: Sequence[Sequence],
    rhs: Sequence[Sequence],
    cost: Optional[Callable] = None,
) -> list[Optional[list]]:
    """Solve ``matrix @ x = b`` for each column vector ``b`` in ``rhs``.

    Returns one particular solution per right-hand side (free unknowns set to
    zero), or ``None`` where that system is inconsistent.
    """
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    nb = len(rhs)
    rows = [list(matrix[i]) + [b[i] for b in rhs] for i in range(m)]
    pivots: list[int] = []
    r = 0
    for col in range(n):
        if r == m:
            break
        p = _pick(rows, col, r, cost)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][col]
        inv = 1 / piv
        rows[r] = [v * inv if v else v for v in rows[r]]
        rows[r][col] = 1
        for i in range(m):
            if i != r and rows[i][col]:
                f = rows[i][col]
                ri = rows[i]
                rr = rows[r]
                for j in range(col, n + nb):
                    if rr[j]:
                        ri[j] = ri[j] - f * rr[j]
        pivots.append(col)
        r += 1
    out: list[Optional[list]] = []
    for b in range(nb):
        if any(rows[i][n + b] for i in range(r, m)):
            out.append(None)
            continue
        x = [0] * n
        for i, col in enumerate(pivots):
            x[col] = rows[i][n + b]
        out.append(x)
    return out


def rank(matrix: Sequence[Sequence], cost: Optional[Callable] = None) -> int:
    rows = [list(row) for row in matrix]
    m = len(rows)
    n = len(rows[0]) if m else 0
    r = 0
    for col in range(n):
        if r == m:
            break
        p = _pick(rows, col, r, cost)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][col]
        for i in range(r + 1, m):
            if rows[i][col]:
                f = rows[i][col] * inv
                for j in range(col, n):
                    if rows[r][j]:
                        rows[i][j] = rows[i][j] - f * rows[r][j]
        r += 1
    return r


def det(matrix: Sequence[Sequence], cost: Optional[Callable] = None):
    """Determinant by elimination; the empty matrix has determinant 1."""
    rows = [list(row) for row in matrix]
    n = len(rows)
    result = 1
    for col in range(n):
        p = _pick(rows, col, col, cost)
        if p is None:
            return 0 * result
        if p != col:
            rows[col], rows[p] = rows[p], rows[col]
            result = -result
        piv = rows[col][col]
        result = result * piv
        inv = 1 / piv
        for i in range(col + 1, n):
            if rows[i][col]:
                f = rows[i][col] * inv
                for j in range(col, n):
                    if rows[col][j]:
                        rows[i][j] = rows[i][j] - f * rows[col][j]
    return result


def leibniz_det(matrix: Sequence[Sequence]):
    """Division-free determinant by cofactor expansion (for tiny ring matrices)."""
    n = len(matrix)
    if n == 0:
        return 1
    if n == 1:
        return matrix[0][0]
    total = 0
    for j in range(n):
        if not matrix[0][j]:
            continue
        minor = [row[:j] + row[j + 1 :] for row in matrix[1:]]
        term = matrix[0][j] * leibniz_det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def adjugate(matrix: Sequence[Sequence]) -> list[list]:
    """Transpose of the cofactor matrix, division-free."""
    n = len(matrix)
    if n == 1:
        return [[1]]
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1 :] for k, row in enumerate(matrix) if k != i]
            c = leibniz_det(minor)
            adj[j][i] = c if (i + j) % 2 == 0 else -c
    return adj
