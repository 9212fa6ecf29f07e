"""Dense exact linear algebra over F_p on lists of int rows."""

from __future__ import annotations

from .ff import inv_mod


def rref(rows, p, ncols=None):
    """Reduced row echelon form. Returns ``(matrix, pivot_columns)``.

    The input is not modified.
    """
    m = [[x % p for x in row] for row in rows]
    if not m:
        return [], []
    ncols = len(m[0]) if ncols is None else ncols
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        row = m[r]
        s = inv_mod(row[c], p)
        if s != 1:
            row = m[r] = [x * s % p for x in row]
        for i in range(len(m)):
            if i != r:
                f = m[i][c]
                if f:
                    m[i] = [(a - f * b) % p for a, b in zip(m[i], row)]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(rows, p) -> int:
    if not rows:
        return 0
    m = [[x % p for x in row] for row in rows]
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        s = inv_mod(m[r][c], p)
        row = [x * s % p for x in m[r]]
        m[r] = row
        for i in range(r + 1, len(m)):
            f = m[i][c]
            if f:
                m[i] = [(a - f * b) % p for a, b in zip(m[i], row)]
        r += 1
        if r == len(m):
            break
    return r


def det(rows, p) -> int:
    m = [[x % p for x in row] for row in rows]
    n = len(m)
    out = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            out = -out
        out = out * m[c][c] % p
        s = inv_mod(m[c][c], p)
        for i in range(c + 1, n):
            f = m[i][c] * s % p
            if f:
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[c])]
    return out % p


def inverse(rows, p):
    n = len(rows)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(rows)]
    red, piv = rref(aug, p, ncols=n)
    if piv != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in red]


def matmul(a, b, p):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) % p for col in bt] for row in a]


def matvec(a, v, p):
    return [sum(x * y for x, y in zip(row, v)) % p for row in a]


def nullspace(rows, p, ncols=None):
    """Basis of ``{x : rows @ x = 0}``."""
    if ncols is None:
        ncols = len(rows[0])
    red, pivots = rref(rows, p, ncols=ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, pc in zip(red, pivots):
            v[pc] = -row[f] % p
        basis.append(v)
    return basis


def random_invertible(n, p, rng):
    while True:
        m = [[rng.randrange(p) for _ in range(n)] for _ in range(n)]
        if det(m, p):
            return m
