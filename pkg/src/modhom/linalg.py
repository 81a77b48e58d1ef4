"""Dense linear algebra over Z_p for small matrices (plain lists of ints)."""
from __future__ import annotations

from typing import Optional, Sequence

from .errors import SolveFailure


def inv_mod(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError(f"0 has no inverse mod {p}")
    return pow(a, p - 2, p)


def echelon(mat: Sequence[Sequence[int]], p: int):
    """Row-reduce a copy of ``mat`` mod p.

    Returns (reduced matrix, pivot columns).  Pivots are the first nonzero
    residue in each column scanned left to right.
    """
    a = [[x % p for x in row] for row in mat]
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = inv_mod(a[r][c], p)
        a[r] = [(x * inv) % p for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return a, pivots


def rank(mat, p: int) -> int:
    return len(echelon(mat, p)[1])


def det(mat: Sequence[Sequence[int]], p: int) -> int:
    """Determinant mod p by elimination."""
    a = [[x % p for x in row] for row in mat]
    n = len(a)
    d = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            d = -d
        d = (d * a[c][c]) % p
        inv = inv_mod(a[c][c], p)
        for i in range(c + 1, n):
            if a[i][c]:
                f = (a[i][c] * inv) % p
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[c])]
    return d % p


def solve(mat: Sequence[Sequence[int]], b: Sequence[int], p: int) -> list:
    """One solution x of mat · x ≡ b (mod p); free variables set to 0."""
    nrows = len(mat)
    ncols = len(mat[0]) if nrows else 0
    if len(b) != nrows:
        raise ValueError("dimension mismatch")
    aug = [list(row) + [bi] for row, bi in zip(mat, b)]
    red, pivots = echelon(aug, p)
    if ncols in pivots:
        raise SolveFailure("system is inconsistent mod p")
    x = [0] * ncols
    for r, c in enumerate(pivots):
        x[c] = red[r][ncols]
    return x


def solve_left(mat: Sequence[Sequence[int]], v: Sequence[int], p: int) -> list:
    """One solution x of x · mat ≡ v (mod p)."""
    if not mat:
        if any(x % p for x in v):
            raise SolveFailure("empty system with nonzero right-hand side")
        return []
    t = [list(col) for col in zip(*mat)]
    return solve(t, v, p)


def inverse(mat: Sequence[Sequence[int]], p: int) -> list:
    n = len(mat)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(mat)]
    red, pivots = echelon(aug, p)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise SolveFailure("matrix is singular mod p")
    return [row[n:] for row in red]


def matmul(a, b, p: Optional[int] = None) -> list:
    out = [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]
    if p is not None:
        out = [[x % p for x in row] for row in out]
    return out
