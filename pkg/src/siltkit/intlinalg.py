"""Integer linear algebra: membership in a Z-span via Smith reduction.

Used for the Grothendieck-group test: does the unit vector sum lie in
the integer span of the summand classes?  Everything here is small
(matrices have one row per simple module), so a straightforward
row/column reduction with a tracked row transform is plenty.
"""

from __future__ import annotations


def xgcd(a: int, b: int):
    """Extended gcd: returns (g, x, y) with a*x + b*y == g >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _smith_with_row_transform(B):
    """Diagonalize B by unimodular row and column ops, tracking rows only.

    Returns (D, U) with U @ B ~ D up to the untracked column operations;
    column ops do not change the column span, so U and the diagonal of D
    suffice for span-membership tests.
    """
    m = len(B)
    n = len(B[0]) if B else 0
    D = [row[:] for row in B]
    U = [[int(i == j) for j in range(m)] for i in range(m)]

    def row_elim(t, i):
        # zero D[i][t]; True when the pivot row itself had to change
        a, b = D[t][t], D[i][t]
        if b % a == 0:
            q = b // a
            for M in (D, U):
                rt, ri = M[t], M[i]
                for k in range(len(ri)):
                    ri[k] -= q * rt[k]
            return False
        g, x, y = xgcd(a, b)
        bi, bj = b // g, a // g
        for M in (D, U):
            rt, ri = M[t], M[i]
            for k in range(len(rt)):
                rt[k], ri[k] = x * rt[k] + y * ri[k], -bi * rt[k] + bj * ri[k]
        return True

    def col_elim(t, j):
        a, b = D[t][t], D[t][j]
        if b % a == 0:
            q = b // a
            for row in D:
                row[j] -= q * row[t]
            return False
        g, x, y = xgcd(a, b)
        bi, bj = b // g, a // g
        for row in D:
            row[t], row[j] = x * row[t] + y * row[j], -bi * row[t] + bj * row[j]
        return True

    t = 0
    while t < m and t < n:
        # move a nonzero entry to (t, t)
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                if D[i][j]:
                    pivot = (i, j)
                    break
            if pivot:
                break
        if pivot is None:
            break
        pi, pj = pivot
        if pi != t:
            D[t], D[pi] = D[pi], D[t]
            U[t], U[pi] = U[pi], U[t]
        if pj != t:
            for row in D:
                row[t], row[pj] = row[pj], row[t]
        # a plain elimination leaves the pivot row (or column) alone, so
        # clearing cannot cycle; the general transform shrinks |D[t][t]|
        # strictly, so it fires only finitely often
        changed = True
        while changed:
            changed = False
            for i in range(t + 1, m):
                if D[i][t] and row_elim(t, i):
                    changed = True
            for j in range(t + 1, n):
                if D[t][j] and col_elim(t, j):
                    changed = True
        t += 1
    return D, U


def in_integer_span(columns, v) -> bool:
    """Whether integer vector v is an integer combination of the columns."""
    if not columns:
        return all(c == 0 for c in v)
    m = len(v)
    B = [[col[i] for col in columns] for i in range(m)]
    D, U = _smith_with_row_transform(B)
    w = [sum(U[i][k] * v[k] for k in range(m)) for i in range(m)]
    n = len(columns)
    for i in range(m):
        d = D[i][i] if i < n else 0
        if d:
            if w[i] % d:
                return False
        elif w[i]:
            return False
    return True
