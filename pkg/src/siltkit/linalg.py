"""Dense exact linear algebra over a Field.

Matrices are lists of row lists, vectors are lists.  All routines are
deterministic: elimination always picks the leftmost pivot column and the
first nonzero row, pivots are normalized to 1, and free variables are
ordered by ascending column index.  Over F_2 the echelon routines switch
to a bitset representation (one int per row), which keeps the big chain
map systems tractable; the output is identical to the generic path.
"""

from __future__ import annotations

from .fields import Field


def zeros(field: Field, m: int, n: int):
    z = field.zero
    return [[z] * n for _ in range(m)]


def identity(field: Field, n: int):
    M = zeros(field, n, n)
    one = field.one
    for i in range(n):
        M[i][i] = one
    return M


def mat_add(field: Field, A, B):
    return [[field.add(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_sub(field: Field, A, B):
    return [[field.sub(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_neg(field: Field, A):
    return [[field.neg(a) for a in row] for row in A]


def mat_scale(field: Field, c, A):
    return [[field.mul(c, a) for a in row] for row in A]


def mat_mul(field: Field, A, B):
    if A and B and len(A[0]) != len(B):
        raise ValueError(f"shape mismatch: {len(A)}x{len(A[0])} times {len(B)}x{len(B[0])}")
    if not B:
        return [[] for _ in A]
    n = len(B[0])
    zero = field.zero
    out = []
    for row in A:
        acc = [zero] * n
        for a, brow in zip(row, B):
            if a == zero:
                continue
            for j, b in enumerate(brow):
                if b != zero:
                    acc[j] = field.add(acc[j], field.mul(a, b))
        out.append(acc)
    return out


def mat_vec(field: Field, A, v):
    if not v:
        return [field.zero] * len(A)
    return [x[0] for x in mat_mul(field, A, [[c] for c in v])]


def transpose(A):
    if not A:
        return []
    return [list(col) for col in zip(*A)]


def copy_matrix(A):
    return [row[:] for row in A]


def _rref_generic(field: Field, M):
    """In-place reduced row echelon; returns pivot column list."""
    rows = len(M)
    cols = len(M[0]) if rows else 0
    zero = field.zero
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        src = None
        for i in range(r, rows):
            if M[i][c] != zero:
                src = i
                break
        if src is None:
            continue
        M[r], M[src] = M[src], M[r]
        pv = M[r][c]
        if pv != field.one:
            inv = field.inv(pv)
            M[r] = [field.mul(inv, x) for x in M[r]]
        rowr = M[r]
        for i in range(rows):
            if i != r and M[i][c] != zero:
                f = M[i][c]
                M[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(M[i], rowr)]
        pivots.append(c)
        r += 1
    return pivots


def _rref_gf2(M):
    """Bitset rref for F_2; same pivot choices as the generic path."""
    rows = len(M)
    cols = len(M[0]) if rows else 0
    packed = []
    for row in M:
        acc = 0
        for j, x in enumerate(row):
            if x:
                acc |= 1 << j
        packed.append(acc)
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        bit = 1 << c
        src = None
        for i in range(r, rows):
            if packed[i] & bit:
                src = i
                break
        if src is None:
            continue
        packed[r], packed[src] = packed[src], packed[r]
        prow = packed[r]
        for i in range(rows):
            if i != r and (packed[i] & bit):
                packed[i] ^= prow
        pivots.append(c)
        r += 1
    for i in range(rows):
        acc = packed[i]
        M[i] = [(acc >> j) & 1 for j in range(cols)]
    return pivots


def rref(field: Field, A):
    """Reduced row echelon form.  Returns (R, pivot_columns)."""
    M = copy_matrix(A)
    if not M or not M[0]:
        return M, []
    if field.p == 2:
        pivots = _rref_gf2(M)
    else:
        pivots = _rref_generic(field, M)
    return M, pivots


def rank(field: Field, A) -> int:
    return len(rref(field, A)[1])


def kernel_basis(field: Field, A):
    """Basis of {x : A x = 0}; one vector per free column, ascending."""
    if not A or not A[0]:
        n = len(A[0]) if A else 0
        return [unit_vector(field, n, j) for j in range(n)]
    R, pivots = rref(field, A)
    n = len(A[0])
    pivset = set(pivots)
    basis = []
    for f in range(n):
        if f in pivset:
            continue
        v = [field.zero] * n
        v[f] = field.one
        for r, c in enumerate(pivots):
            v[c] = field.neg(R[r][f])
        basis.append(v)
    return basis


def unit_vector(field: Field, n: int, j: int):
    v = [field.zero] * n
    v[j] = field.one
    return v


def solve(field: Field, A, b):
    """One solution of A x = b with free variables set to 0, or None."""
    m = len(A)
    n = len(A[0]) if A else 0
    aug = [A[i][:] + [b[i]] for i in range(m)]
    R, pivots = rref(field, aug)
    if n in pivots:
        return None
    x = [field.zero] * n
    for r, c in enumerate(pivots):
        x[c] = R[r][n]
    return x


def column_space_pivot_rows(field: Field, A):
    """Row indices forming a basis of the column space (pivot rows of A^T echelon)."""
    return rref(field, transpose(A))[1]


def in_span(field: Field, vectors, v) -> bool:
    """Whether v lies in the span of the given vectors."""
    if not vectors:
        return all(x == field.zero for x in v)
    A = transpose(vectors)
    return solve(field, A, list(v)) is not None


def is_zero_matrix(field: Field, A) -> bool:
    z = field.zero
    return all(x == z for row in A for x in row)


def invert(field: Field, A):
    """Inverse of a square matrix, or None if singular."""
    n = len(A)
    if any(len(row) != n for row in A):
        raise ValueError("invert expects a square matrix")
    aug = [A[i][:] + identity(field, n)[i] for i in range(n)]
    R, pivots = rref(field, aug)
    if pivots[:n] != list(range(n)):
        return None
    return [R[i][n:] for i in range(n)]


class Echelon:
    """Incremental row echelon over a field, for span-membership tests.

    Rows are kept reduced; ``add`` returns True when the vector enlarged
    the span.  Deterministic: pivot is the leftmost nonzero coordinate.
    """

    def __init__(self, field: Field, n: int):
        self.field = field
        self.n = n
        self.rows = {}  # pivot column -> reduced row

    def _reduce(self, v):
        field = self.field
        v = list(v)
        zero = field.zero
        for c in sorted(self.rows):
            if v[c] != zero:
                f = v[c]
                row = self.rows[c]
                v = [field.sub(x, field.mul(f, y)) for x, y in zip(v, row)]
        return v

    def residue(self, v):
        return self._reduce(v)

    def contains(self, v) -> bool:
        zero = self.field.zero
        return all(x == zero for x in self._reduce(v))

    def add(self, v) -> bool:
        field = self.field
        red = self._reduce(v)
        zero = field.zero
        piv = next((c for c, x in enumerate(red) if x != zero), None)
        if piv is None:
            return False
        inv = field.inv(red[piv])
        red = [field.mul(inv, x) for x in red]
        for c, row in self.rows.items():
            if row[piv] != zero:
                f = row[piv]
                self.rows[c] = [field.sub(x, field.mul(f, y)) for x, y in zip(row, red)]
        self.rows[piv] = red
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)
