"""Bounded complexes of finitely generated projectives, with windows.

A ProjComplex stores terms on degrees [lo, hi]; each term is a direct
sum of indecomposable projectives P(v) recorded as a multiplicity vector,
and the differential d^k: X^k -> X^{k+1} is a matrix whose (r, c) entry
is an algebra element supported on paths v_r -> u_c (the hom space
P(u_c) -> P(v_r)).

``genuine`` complexes are complete objects.  A truncated complex is the
brutal slice sigma_{>= lo} of an unstored full object, together with the
promise ``vlo``: the full object has no cohomology below degree vlo.
Queries that would need unstored data raise WindowError instead of
returning silently wrong answers.  The window bookkeeping rules for
shifts, sums and cones are implemented here; the Hom-validity margins
they feed live in homs.py.
"""

from __future__ import annotations

from .algebra import Algebra, InputError
from .modules import ProjSum
from . import linalg


class WindowError(Exception):
    """A query needs data outside a truncated complex's stored window."""


class ProjComplex:
    def __init__(self, algebra: Algebra, lo: int, mults, diffs,
                 genuine: bool, vlo=None, check: bool = True):
        self.algebra = algebra
        self.lo = int(lo)
        self.mults = [tuple(int(x) for x in m) for m in mults]
        self.hi = self.lo + len(self.mults) - 1
        self.diffs = [linalg.copy_matrix(d) for d in diffs]
        self.genuine = bool(genuine)
        self.vlo = None if genuine else int(vlo)
        self._cache = {}
        if check:
            self.validate()

    # -- basic geometry ----------------------------------------------------

    def degrees(self):
        return range(self.lo, self.hi + 1)

    def mult(self, k: int):
        """Multiplicity vector at degree k; zero above hi, WindowError below lo."""
        if k < self.lo:
            if self.genuine:
                return (0,) * self.algebra.n_vertices
            raise WindowError(f"degree {k} is below the stored window [{self.lo}, {self.hi}]")
        if k > self.hi:
            return (0,) * self.algebra.n_vertices
        return self.mults[k - self.lo]

    def copies(self, k: int):
        """Vertex index of each indecomposable summand of X^k, in order."""
        m = self.mult(k)
        out = []
        for v, c in enumerate(m):
            out.extend([v] * c)
        return out

    def n_copies(self, k: int) -> int:
        return sum(self.mult(k))

    def term_dim(self, k: int) -> int:
        A = self.algebra
        cart = self._cache.get("pdims")
        if cart is None:
            cart = [sum(len(A.block_paths(v, w)) for w in range(A.n_vertices))
                    for v in range(A.n_vertices)]
            self._cache["pdims"] = cart
        return sum(c * cart[v] for v, c in enumerate(self.mult(k)))

    def d(self, k: int):
        """Differential X^k -> X^{k+1} as an algebra-entry matrix."""
        if self.lo <= k < self.hi:
            return self.diffs[k - self.lo]
        if k == self.hi or k > self.hi:
            return [[self.algebra.zero()] * self.n_copies(k)
                    for _ in range(self.n_copies(k + 1))]
        if self.genuine:
            return [[self.algebra.zero()] * self.n_copies(k)
                    for _ in range(self.n_copies(k + 1))]
        raise WindowError(f"differential at degree {k} is outside the stored window")

    @property
    def window_ok(self) -> bool:
        """Whether homology of the full object is determined by stored data."""
        return self.genuine or self.vlo >= self.lo + 1

    def effective_vlo(self) -> int:
        """A degree below which the full object has no cohomology."""
        return self.lo if self.genuine else self.vlo

    def is_structurally_zero(self) -> bool:
        return all(c == 0 for m in self.mults for c in m)

    # -- validation ----------------------------------------------------------

    def validate(self):
        A = self.algebra
        f = A.field
        if len(self.mults) < 1:
            raise InputError("complex needs at least one degree")
        for m in self.mults:
            if len(m) != A.n_vertices:
                raise InputError("multiplicity vector length mismatch")
            if any(c < 0 for c in m):
                raise InputError("negative multiplicity")
        if len(self.diffs) != len(self.mults) - 1:
            raise InputError("need exactly one differential per adjacent pair")
        if not self.genuine and self.vlo is None:
            raise InputError("truncated complex needs vlo")
        for k in range(self.lo, self.hi):
            mat = self.diffs[k - self.lo]
            rows = self.copies(k + 1)
            cols = self.copies(k)
            if len(mat) != len(rows) or any(len(r) != len(cols) for r in mat):
                raise InputError(f"differential at degree {k} has wrong shape")
            for r, vr in enumerate(rows):
                for c, uc in enumerate(cols):
                    z = mat[r][c]
                    if len(z) != A.dim:
                        raise InputError("differential entry is not an algebra element")
                    block = set(A.block_paths(vr, uc))
                    for b, coeff in enumerate(z):
                        if coeff != f.zero and b not in block:
                            raise InputError(
                                f"entry ({r},{c}) of d^{k} not supported on "
                                f"paths {vr} -> {uc}")
        for k in range(self.lo, self.hi - 1):
            prod = alg_mat_mul(A, self.diffs[k + 1 - self.lo], self.diffs[k - self.lo])
            if not alg_mat_is_zero(A, prod):
                raise InputError(f"d^2 != 0 between degrees {k} and {k + 2}")

    # -- k-linear realization ----------------------------------------------

    def term_sum(self, k: int) -> ProjSum:
        key = ("psum", k)
        if key not in self._cache:
            self._cache[key] = ProjSum(self.algebra, self.copies(k))
        return self._cache[key]

    def vertex_differential(self, k: int, w: int):
        """The k-linear matrix of d^k on the vertex-w graded piece."""
        key = ("vd", k, w)
        if key not in self._cache:
            A = self.algebra
            f = A.field
            src = self.term_sum(k)
            dst = self.term_sum(k + 1)
            mat = linalg.zeros(f, dst.module.dims[w], src.module.dims[w])
            dk = self.d(k)
            for j, (c, b) in enumerate(src.layout[w]):
                x = A.unit(b)
                for r in range(len(dst.copies)):
                    z = dk[r][c]
                    if A.is_zero(z):
                        continue
                    prod = A.mul(z, x)
                    for b2, coeff in enumerate(prod):
                        if coeff != f.zero:
                            mat[dst.flat[w][(r, b2)]][j] = coeff
            self._cache[key] = mat
        return self._cache[key]

    # -- homology -----------------------------------------------------------

    def homology(self, k: int):
        """Dimension vector of H^k of the full object, per vertex.

        For a truncated complex this is defined for k >= lo + 1 (computed)
        and, when the window is sound, for k <= effective vlo - 1 (zero);
        anything else raises WindowError.
        """
        if not self.genuine and k <= self.lo:
            if k < self.effective_vlo():
                return (0,) * self.algebra.n_vertices
            raise WindowError(
                f"H^{k} not determined: window [{self.lo}, {self.hi}], vlo {self.vlo}")
        if k < self.lo or k > self.hi:
            return (0,) * self.algebra.n_vertices
        key = ("h", k)
        if key not in self._cache:
            A = self.algebra
            f = A.field
            dims = []
            for w in range(A.n_vertices):
                dk = self.vertex_differential(k, w)
                n = self.term_sum(k).module.dims[w]
                r_out = linalg.rank(f, dk) if dk else 0
                if k - 1 >= self.lo:
                    dprev = self.vertex_differential(k - 1, w)
                    r_in = linalg.rank(f, dprev) if dprev else 0
                else:
                    r_in = 0
                dims.append(n - r_out - r_in)
            self._cache[key] = tuple(dims)
        return self._cache[key]

    def homology_total(self, k: int) -> int:
        return sum(self.homology(k))

    def computable_homology_degrees(self):
        start = self.lo if self.genuine else self.lo + 1
        return range(start, self.hi + 1)

    def is_exact_object(self) -> bool:
        """Whether the full object is acyclic (isomorphic to zero)."""
        if not self.window_ok:
            raise WindowError("cannot decide acyclicity: window is not sound")
        return all(self.homology_total(k) == 0
                   for k in self.computable_homology_degrees())

    def min_homology_degree(self):
        """Lowest degree with nonzero cohomology, or None if acyclic."""
        if not self.window_ok:
            raise WindowError("cannot locate lowest cohomology: window is not sound")
        for k in self.computable_homology_degrees():
            if self.homology_total(k):
                return k
        return None

    def max_homology_degree(self):
        for k in reversed(self.computable_homology_degrees()):
            if self.homology_total(k):
                return k
        return None

    def __repr__(self):
        kind = "genuine" if self.genuine else f"truncated(vlo={self.vlo})"
        return f"ProjComplex([{self.lo},{self.hi}], {kind}, mults={self.mults})"


# -- algebra-entry matrix helpers -------------------------------------------


def alg_mat_mul(A: Algebra, M, N):
    if M and N and len(M[0]) != len(N):
        raise InputError("algebra matrix shape mismatch")
    if not N:
        return [[] for _ in M]
    ncols = len(N[0])
    out = []
    for row in M:
        acc = [A.zero()] * ncols
        for x, nrow in zip(row, N):
            if A.is_zero(x):
                continue
            for j, y in enumerate(nrow):
                if not A.is_zero(y):
                    acc[j] = A.add(acc[j], A.mul(x, y))
        out.append(acc)
    return out


def alg_mat_is_zero(A: Algebra, M) -> bool:
    return all(A.is_zero(x) for row in M for x in row)


def alg_mat_neg(A: Algebra, M):
    return [[A.neg(x) for x in row] for row in M]


def alg_mat_add(A: Algebra, M, N):
    return [[A.add(x, y) for x, y in zip(r, s)] for r, s in zip(M, N)]


def alg_mat_sub(A: Algebra, M, N):
    return [[A.sub(x, y) for x, y in zip(r, s)] for r, s in zip(M, N)]


def alg_zeros(A: Algebra, m: int, n: int):
    return [[A.zero()] * n for _ in range(m)]


def alg_identity(A: Algebra, copies):
    n = len(copies)
    M = alg_zeros(A, n, n)
    for i, v in enumerate(copies):
        M[i][i] = A.e(v)
    return M


# -- constructors ------------------------------------------------------------


def zero_complex(A: Algebra) -> ProjComplex:
    return ProjComplex(A, 0, [(0,) * A.n_vertices], [], genuine=True, check=False)


def stalk_complex(A: Algebra, v_mults, degree: int = 0) -> ProjComplex:
    """A projective sum placed in a single degree."""
    return ProjComplex(A, degree, [tuple(v_mults)], [], genuine=True, check=False)


def free_stalk(A: Algebra, degree: int = 0) -> ProjComplex:
    """The regular module as a one-term complex."""
    return stalk_complex(A, (1,) * A.n_vertices, degree)


def shift(X: ProjComplex, n: int) -> ProjComplex:
    """X[n], with X[n]^k = X^{n+k} and differential (-1)^n d."""
    if n == 0:
        return X
    A = X.algebra
    diffs = X.diffs
    if n % 2:
        diffs = [alg_mat_neg(A, d) for d in diffs]
    return ProjComplex(A, X.lo - n, X.mults, diffs, X.genuine,
                       None if X.genuine else X.vlo - n, check=False)


def direct_sum(parts) -> ProjComplex:
    """Direct sum; windows are intersected as dictated by truncation."""
    parts = [p for p in parts]
    if not parts:
        raise InputError("direct sum of no complexes")
    A = parts[0].algebra
    genuine = all(p.genuine for p in parts)
    if genuine:
        lo = min(p.lo for p in parts)
    else:
        lo = max(p.lo for p in parts if not p.genuine)
    hi = max(p.hi for p in parts)
    if hi < lo:
        raise WindowError("direct sum has empty stored window")
    vlo = None if genuine else min(p.effective_vlo() for p in parts)
    mults = []
    for k in range(lo, hi + 1):
        m = [0] * A.n_vertices
        for p in parts:
            for v, c in enumerate(p.mult(k)):
                m[v] += c
        mults.append(tuple(m))
    diffs = []
    for k in range(lo, hi):
        rows = sum(p.n_copies(k + 1) for p in parts)
        cols = sum(p.n_copies(k) for p in parts)
        mat = alg_zeros(A, rows, cols)
        # copy order must match copies(): vertex-major across the whole sum
        row_pos = _sum_positions(parts, k + 1)
        col_pos = _sum_positions(parts, k)
        for pi, p in enumerate(parts):
            dk = p.d(k)
            for r in range(p.n_copies(k + 1)):
                for c in range(p.n_copies(k)):
                    mat[row_pos[pi][r]][col_pos[pi][c]] = dk[r][c]
        diffs.append(mat)
    return ProjComplex(A, lo, mults, diffs, genuine, vlo, check=False)


def _sum_positions(parts, k):
    """Flat position of each part's copies inside the vertex-major sum order."""
    return _part_positions(parts[0].algebra, [p.mult(k) for p in parts])


def _part_positions(A: Algebra, mult_list):
    totals = [0] * A.n_vertices
    for m in mult_list:
        for v, c in enumerate(m):
            totals[v] += c
    starts = [sum(totals[:v]) for v in range(A.n_vertices)]
    off = [0] * A.n_vertices
    positions = []
    for m in mult_list:
        pos = []
        for v, c in enumerate(m):
            for _ in range(c):
                pos.append(starts[v] + off[v])
                off[v] += 1
        # pos is built vertex-major, matching copies()
        positions.append(pos)
    return positions


def sum_inclusion_maps(parts, total: ProjComplex):
    """Inclusion and projection chain maps for a direct_sum result."""
    from .homs import ChainMap
    A = total.algebra
    incls, projs = [], []
    for pi, p in enumerate(parts):
        comp_i, comp_p = {}, {}
        for k in range(max(p.lo, total.lo), min(p.hi, total.hi) + 1):
            pos = _sum_positions(parts, k)[pi]
            inc = alg_zeros(A, total.n_copies(k), p.n_copies(k))
            prj = alg_zeros(A, p.n_copies(k), total.n_copies(k))
            cps = p.copies(k)
            for j, flat in enumerate(pos):
                inc[flat][j] = A.e(cps[j])
                prj[j][flat] = A.e(cps[j])
            comp_i[k] = inc
            comp_p[k] = prj
        incls.append(ChainMap(p, total, comp_i, check=False))
        projs.append(ChainMap(total, p, comp_p, check=False))
    return incls, projs


def cone(f) -> ProjComplex:
    """Mapping cone of a chain map f: U -> V.

    C^k = U^{k+1} (+) V^k with differential [[-d_U, 0], [f, d_V]], the
    summands interleaved vertex-major like every other term here.  The
    stored window is the largest one the inputs can certify: degree k of
    C needs U in degree k+1, so a truncated U pushes the floor up to
    lo_U - 1.  The homology promise comes from the long exact sequence:
    H^j(C) = 0 once H^j(V) and H^{j+1}(U) both vanish.
    """
    U, V = f.src, f.dst
    A = U.algebra
    genuine = U.genuine and V.genuine
    if genuine:
        lo = min(U.lo - 1, V.lo)
        vlo = None
    else:
        floors = []
        if not U.genuine:
            floors.append(U.lo - 1)
        if not V.genuine:
            floors.append(V.lo)
        lo = max(floors)
        vlo = min(V.effective_vlo(), U.effective_vlo() - 1)
    hi = max(U.hi - 1, V.hi)
    if hi < lo:
        raise WindowError("cone has empty stored window")
    mults = [tuple(a + b for a, b in zip(U.mult(k + 1), V.mult(k)))
             for k in range(lo, hi + 1)]
    diffs = []
    for k in range(lo, hi):
        rows_U, rows_V = _part_positions(A, [U.mult(k + 2), V.mult(k + 1)])
        cols_U, cols_V = _part_positions(A, [U.mult(k + 1), V.mult(k)])
        mat = alg_zeros(A, len(rows_U) + len(rows_V), len(cols_U) + len(cols_V))
        dU = U.d(k + 1)
        for r, fr in enumerate(rows_U):
            for c, fc in enumerate(cols_U):
                mat[fr][fc] = A.neg(dU[r][c])
        fk = f.component(k + 1)
        for r, fr in enumerate(rows_V):
            for c, fc in enumerate(cols_U):
                mat[fr][fc] = fk[r][c]
        dV = V.d(k)
        for r, fr in enumerate(rows_V):
            for c, fc in enumerate(cols_V):
                mat[fr][fc] = dV[r][c]
        diffs.append(mat)
    return ProjComplex(A, lo, mults, diffs, genuine, vlo, check=False)


def cone_triangle(f):
    """The cone with its triangle maps: returns (C, iota, pi) where
    iota: V -> C includes the target and pi: C -> U[1] projects."""
    from .homs import ChainMap
    C = cone(f)
    U, V = f.src, f.dst
    A = U.algebra
    U1 = shift(U, 1)
    comp_i, comp_p = {}, {}
    for k in range(C.lo, C.hi + 1):
        pos_U, pos_V = _part_positions(A, [U.mult(k + 1), V.mult(k)])
        inc = alg_zeros(A, C.n_copies(k), V.n_copies(k))
        for j, flat in enumerate(pos_V):
            inc[flat][j] = A.e(V.copies(k)[j])
        comp_i[k] = inc
        prj = alg_zeros(A, U.n_copies(k + 1), C.n_copies(k))
        for j, flat in enumerate(pos_U):
            prj[j][flat] = A.e(U.copies(k + 1)[j])
        comp_p[k] = prj
    iota = ChainMap(V, C, comp_i, check=False)
    pi = ChainMap(C, U1, comp_p, check=False)
    return C, iota, pi


def power(X: ProjComplex, n: int) -> ProjComplex:
    if n < 0:
        raise InputError("negative power")
    if n == 0:
        return zero_complex(X.algebra)
    return direct_sum([X] * n)
