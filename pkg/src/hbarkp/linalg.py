"""Generic exact linear algebra on small matrices.

``det`` works over any commutative ring whose elements support ``+`` and
``*`` (rationals, hbar-Laurent scalars, XSeries, TPoly, differential
operators...).  Matrices here are tiny (size <= 6 or so), so a direct
permutation expansion is both simple and fast enough.
"""

from __future__ import annotations

from itertools import permutations

from .rational import Rational


def _parity(perm) -> int:
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def det(rows):
    """Determinant by signed permutation expansion; 0x0 gives 1."""
    n = len(rows)
    if n == 0:
        return Rational(1)
    for r in rows:
        if len(r) != n:
            raise ValueError("matrix is not square")
    total = None
    for perm in permutations(range(n)):
        entries = [rows[i][perm[i]] for i in range(n)]
        if any(isinstance(e, int) and e == 0 for e in entries):
            continue
        prod = entries[0]
        for e in entries[1:]:
            prod = prod * e
        if _parity(perm) < 0:
            prod = -prod
        total = prod if total is None else total + prod
    if total is None:
        return Rational(0)
    return total


def minor(rows, drop_rows, drop_cols):
    """Submatrix with the given (0-based) rows and columns removed."""
    dr = set(drop_rows)
    dc = set(drop_cols)
    return [
        [e for j, e in enumerate(row) if j not in dc]
        for i, row in enumerate(rows)
        if i not in dr
    ]


def invert_rational_matrix(rows):
    """Exact inverse of a square matrix over Q (Gauss-Jordan)."""
    n = len(rows)
    a = [[Rational(x) for x in row] for row in rows]
    inv = [[Rational(1) if i == j else Rational(0) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        scale = Rational(1) / a[col][col]
        a[col] = [x * scale for x in a[col]]
        inv[col] = [x * scale for x in inv[col]]
        for r in range(n):
            if r == col or a[r][col] == 0:
                continue
            f = a[r][col]
            a[r] = [x - f * y for x, y in zip(a[r], a[col])]
            inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
    return inv
