"""Independent oracles the test suite checks the package against.

Everything here recomputes an answer by a different route than the
package: chain maps and homotopies by exhaustive enumeration of F_2
coefficient vectors, Euler pairings by class arithmetic on multiplicity
vectors, integer span membership by bounded coefficient search, modules
by raw generation of action matrices.  Oracles are slow and tiny on
purpose; the package is the fast path under test.
"""

from itertools import product

from siltkit.algebra import InputError
from siltkit.complexes import ProjComplex, shift
from siltkit.modules import FDModule


# -- exhaustive Hom enumeration over F_2 --------------------------------------


def _map_slots(A, row_copies, col_copies):
    """(row, col, path basis index) triples spanning the map space."""
    slots = []
    for r, vr in enumerate(row_copies):
        for c, uc in enumerate(col_copies):
            for b in A.block_paths(vr, uc):
                slots.append((r, c, b))
    return slots


def _degree_slots(A, X, Z, offset):
    """Map-space slots for every degree, target degree k + offset."""
    out = []
    for k in range(X.lo, X.hi + 1):
        rows = Z.copies(k + offset)
        cols = X.copies(k)
        for (r, c, b) in _map_slots(A, rows, cols):
            out.append((k, r, c, b))
    return out


def _as_matrices(A, X, Z, offset, slots, active):
    comps = {}
    nb = len(A.basis)
    for (k, r, c, b), on in zip(slots, active):
        if not on:
            continue
        if k not in comps:
            comps[k] = [[[A.field.zero] * nb
                         for _ in range(X.n_copies(k))]
                        for _ in range(Z.n_copies(k + offset))]
        comps[k][r][c][b] = A.field.one
    return comps


def _safe_mul(A, M, N, rows, cols, inner):
    """M @ N as rows x cols entries, tolerating empty factors."""
    from siltkit.complexes import alg_mat_mul, alg_zeros

    if rows == 0 or cols == 0 or inner == 0:
        return alg_zeros(A, rows, cols)
    return alg_mat_mul(A, M, N)


def brute_hom_dim(X: ProjComplex, Y: ProjComplex, i: int = 0,
                  cap: int = 14) -> int:
    """dim Hom_{K(proj)}(X, Y[i]) by exhaustive F_2 enumeration.

    Enumerates every degreewise map, keeps the ones commuting with the
    differentials, then enumerates every homotopy and collects the
    distinct boundaries; both counts are powers of two and the answer
    is the difference of exponents.  Returns None when either search
    space exceeds 2**cap.
    """
    A = X.algebra
    if A.field.p != 2:
        raise InputError("the brute oracle only enumerates over F_2")
    Z = shift(Y, i)

    f_slots = _degree_slots(A, X, Z, 0)
    s_slots = _degree_slots(A, X, Z, -1)
    if len(f_slots) > cap or len(s_slots) > cap:
        return None

    # value slots: coefficients of d_Z f (degree k -> k+1 of Z) per path
    value_slots = {}
    for k in range(min(X.lo, Z.lo) - 1, max(X.hi, Z.hi) + 1):
        for r, vr in enumerate(Z.copies(k + 1)):
            for c, uc in enumerate(X.copies(k)):
                for b in A.block_paths(vr, uc):
                    value_slots[(k, r, c, b)] = len(value_slots)

    def defect_of(active):
        comps = _as_matrices(A, X, Z, 0, f_slots, active)

        def comp(kk):
            if kk in comps:
                return comps[kk]
            return [[[A.field.zero] * len(A.basis)
                     for _ in range(X.n_copies(kk))]
                    for _ in range(Z.n_copies(kk))]

        bits = 0
        for k in range(min(X.lo, Z.lo) - 1, max(X.hi, Z.hi) + 1):
            rows, cols = Z.n_copies(k + 1), X.n_copies(k)
            lhs = _safe_mul(A, Z.d(k), comp(k), rows, cols, Z.n_copies(k))
            rhs = _safe_mul(A, comp(k + 1), X.d(k), rows, cols,
                            X.n_copies(k + 1))
            for r in range(rows):
                for c in range(cols):
                    for b in range(len(A.basis)):
                        if lhs[r][c][b] != rhs[r][c][b]:
                            key = (k, r, c, b)
                            bits |= 1 << value_slots[key]
        return bits

    # defect is linear, so per-slot defects xor together
    unit_defects = []
    for j in range(len(f_slots)):
        active = [0] * len(f_slots)
        active[j] = 1
        unit_defects.append(defect_of(active))

    cycles = 0
    for combo in product((0, 1), repeat=len(f_slots)):
        acc = 0
        for on, d in zip(combo, unit_defects):
            if on:
                acc ^= d
        if acc == 0:
            cycles += 1

    # boundary of a homotopy s is d_Z s + s d_X, flattened over f-slots
    f_index = {slot: j for j, slot in enumerate(f_slots)}

    def boundary_bits(active):
        comps = _as_matrices(A, X, Z, -1, s_slots, active)

        def scomp(kk):
            if kk in comps:
                return comps[kk]
            return [[[A.field.zero] * len(A.basis)
                     for _ in range(X.n_copies(kk))]
                    for _ in range(Z.n_copies(kk - 1))]

        bits = 0
        for k in range(X.lo, X.hi + 1):
            rows, cols = Z.n_copies(k), X.n_copies(k)
            term1 = _safe_mul(A, Z.d(k - 1), scomp(k), rows, cols,
                              Z.n_copies(k - 1))
            term2 = _safe_mul(A, scomp(k + 1), X.d(k), rows, cols,
                              X.n_copies(k + 1))
            for r in range(rows):
                for c in range(cols):
                    for b in range(len(A.basis)):
                        v = A.field.add(term1[r][c][b], term2[r][c][b])
                        if v != A.field.zero:
                            bits |= 1 << f_index[(k, r, c, b)]
        return bits

    unit_bounds = []
    for j in range(len(s_slots)):
        active = [0] * len(s_slots)
        active[j] = 1
        unit_bounds.append(boundary_bits(active))
    boundaries = {0}
    for d in unit_bounds:
        boundaries |= {x ^ d for x in boundaries}

    c_exp = cycles.bit_length() - 1
    assert cycles == 1 << c_exp
    b_exp = len(boundaries).bit_length() - 1
    assert len(boundaries) == 1 << b_exp
    return c_exp - b_exp


# -- Euler pairing from multiplicity vectors ----------------------------------


def ktheory_class_oracle(X: ProjComplex):
    A = X.algebra
    cls = [0] * A.n_vertices
    for k in range(X.lo, X.hi + 1):
        sgn = -1 if k % 2 else 1
        for v, m in enumerate(X.mult(k)):
            cls[v] += sgn * m
    return tuple(cls)


def euler_pairing_oracle(X: ProjComplex, Y: ProjComplex) -> int:
    """Sum of (-1)^i dim Hom(X, Y[i]) predicted by class arithmetic."""
    A = X.algebra
    x = ktheory_class_oracle(X)
    y = ktheory_class_oracle(Y)
    total = 0
    for u in range(A.n_vertices):
        for v in range(A.n_vertices):
            h = len(A.paths_by_st.get((v, u), ()))
            total += x[u] * y[v] * h
    return total


# -- integer span membership by bounded search --------------------------------


def brute_in_span(columns, v, bound: int) -> bool:
    nb = len(columns)
    m = len(v)
    for coeffs in product(range(-bound, bound + 1), repeat=nb):
        if all(sum(c * col[i] for c, col in zip(coeffs, columns)) == v[i]
               for i in range(m)):
            return True
    return False


# -- exhaustive module generation over F_2 ------------------------------------


def _all_matrices(rows, cols):
    if rows * cols == 0:
        return [[[0] * cols for _ in range(rows)]]
    out = []
    for bits in range(1 << (rows * cols)):
        m = [[(bits >> (r * cols + c)) & 1 for c in range(cols)]
             for r in range(rows)]
        out.append(m)
    return out


def _dim_vectors(n, total):
    if n == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _dim_vectors(n - 1, total - first):
            yield (first,) + rest


def all_modules(A, max_total):
    """Every F_2 module structure with 1 <= dim <= max_total, raw count too.

    Yields one representative per isomorphism class; the second return
    value counts every raw action-matrix tuple that satisfied the
    relations, before deduplication.
    """
    from siltkit.decompose import modules_isomorphic

    raw = 0
    classes = []
    for total in range(1, max_total + 1):
        for dims in _dim_vectors(A.n_vertices, total):
            shapes = [(dims[a.target], dims[a.source]) for a in A.arrows]
            pools = [_all_matrices(r, c) for (r, c) in shapes]
            for acts in product(*pools):
                try:
                    M = FDModule(A, dims, list(acts))
                except InputError:
                    continue
                raw += 1
                key = (dims, tuple(_f2_rank(m) for m in acts))
                hit = False
                for (k2, rep) in classes:
                    if k2 != key:
                        continue
                    if modules_isomorphic(M, rep)[0]:
                        hit = True
                        break
                if not hit:
                    classes.append((key, M))
    return [rep for (_, rep) in classes], raw


def _f2_rank(mat):
    rows = [int("".join(str(int(x) & 1) for x in row), 2) if row else 0
            for row in mat]
    rank = 0
    for i in range(len(rows)):
        pivot = max(rows[i:], default=0)
        if pivot == 0:
            break
        j = rows.index(pivot, i)
        rows[i], rows[j] = rows[j], rows[i]
        top = rows[i].bit_length() - 1
        for k in range(len(rows)):
            if k != i and rows[k] >> top & 1:
                rows[k] ^= rows[i]
        rank += 1
    return rank
