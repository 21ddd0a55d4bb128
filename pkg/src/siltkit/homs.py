"""Chain maps and homotopy-category Hom spaces between ProjComplexes.

Hom(X, Y[i]) is computed from the stored windows.  When either side is
truncated, the computed number equals the Hom of the full objects only
under margin conditions derived from the truncation triangle
sigma_{>=a} X -> X -> (error) with the error quasi-isomorphic to a
single stalk in degree a - 1 (this uses vlo >= lo + 1):

  (A) X truncated: need lo_X <= vlo(Y[i]) - 1, so that maps and
      homotopies out of the invisible stalk cannot reach Y[i] in the
      t-structure sense;
  (B) Y truncated: need lo_X >= lo(Y[i]) + 1, so that the visible part
      of X has no terms in the degrees where Y[i] is blind.

Violations raise WindowError; nothing is ever silently extrapolated.
"""

from __future__ import annotations

from .algebra import InputError
from .complexes import (ProjComplex, WindowError, alg_mat_mul, alg_mat_is_zero,
                        alg_zeros, alg_identity, alg_mat_sub, alg_mat_add,
                        alg_mat_neg, shift)
from . import linalg


class ChainMap:
    """Degreewise map with algebra-entry matrices; missing degrees are zero."""

    def __init__(self, src: ProjComplex, dst: ProjComplex, comps: dict,
                 check: bool = True):
        self.src = src
        self.dst = dst
        self.comps = {int(k): linalg.copy_matrix(m) for k, m in comps.items()
                      if m and any(
                          not src.algebra.is_zero(x) for row in m for x in row)}
        if check:
            self.validate()

    def component(self, k: int):
        if k in self.comps:
            return self.comps[k]
        return alg_zeros(self.src.algebra, self.dst.n_copies(k), self.src.n_copies(k))

    def validate(self):
        A = self.src.algebra
        f = A.field
        if self.dst.algebra is not A:
            raise InputError("chain map between different algebras")
        for k, m in self.comps.items():
            rows = self.dst.copies(k)
            cols = self.src.copies(k)
            if len(m) != len(rows) or any(len(r) != len(cols) for r in m):
                raise InputError(f"component at degree {k} has wrong shape")
            for r, vr in enumerate(rows):
                for c, uc in enumerate(cols):
                    block = set(A.block_paths(vr, uc))
                    for b, coeff in enumerate(m[r][c]):
                        if coeff != f.zero and b not in block:
                            raise InputError(
                                f"component {k} entry ({r},{c}) not supported "
                                f"on paths {vr} -> {uc}")
        for k in self._checkable_degrees():
            lhs = alg_mat_mul(A, self.dst.d(k), self.component(k))
            rhs = alg_mat_mul(A, self.component(k + 1), self.src.d(k))
            if lhs != rhs:
                raise InputError(f"not a chain map at degree {k}")

    def _checkable_degrees(self):
        src, dst = self.src, self.dst
        lo = max(src.lo if not src.genuine else min(src.lo, dst.lo),
                 dst.lo if not dst.genuine else min(src.lo, dst.lo))
        hi = max(src.hi, dst.hi)
        return range(lo, hi)

    def is_zero(self) -> bool:
        return not self.comps

    def __repr__(self):
        return f"ChainMap(degrees {sorted(self.comps)})"


def zero_map(X: ProjComplex, Y: ProjComplex) -> ChainMap:
    return ChainMap(X, Y, {}, check=False)


def identity_map(X: ProjComplex) -> ChainMap:
    comps = {k: alg_identity(X.algebra, X.copies(k)) for k in X.degrees()}
    return ChainMap(X, X, comps, check=False)


def compose_maps(g: ChainMap, f: ChainMap) -> ChainMap:
    """g after f."""
    A = f.src.algebra
    comps = {}
    for k in set(f.comps) & set(g.comps):
        comps[k] = alg_mat_mul(A, g.comps[k], f.comps[k])
    return ChainMap(f.src, g.dst, comps, check=False)


def map_add(f: ChainMap, g: ChainMap) -> ChainMap:
    A = f.src.algebra
    comps = {}
    for k in set(f.comps) | set(g.comps):
        comps[k] = alg_mat_add(A, f.component(k), g.component(k))
    return ChainMap(f.src, f.dst, comps, check=False)


def map_sub(f: ChainMap, g: ChainMap) -> ChainMap:
    A = f.src.algebra
    comps = {}
    for k in set(f.comps) | set(g.comps):
        comps[k] = alg_mat_sub(A, f.component(k), g.component(k))
    return ChainMap(f.src, f.dst, comps, check=False)


def map_scale(c, f: ChainMap) -> ChainMap:
    A = f.src.algebra
    comps = {k: [[A.scale(c, x) for x in row] for row in m]
             for k, m in f.comps.items()}
    return ChainMap(f.src, f.dst, comps, check=False)


def shift_map(f: ChainMap, n: int) -> ChainMap:
    return ChainMap(shift(f.src, n), shift(f.dst, n),
                    {k - n: m for k, m in f.comps.items()}, check=False)


# -- window margins ----------------------------------------------------------


def _target_vlo(Y: ProjComplex, i: int):
    """A degree below which Y[i]'s full object has no cohomology, or None
    when the full object is acyclic (Hom into it is zero anyway)."""
    if Y.genuine:
        m = Y.min_homology_degree()
        if m is None:
            return None
        return m - i
    return Y.vlo - i


def check_hom_window(X: ProjComplex, Y: ProjComplex, i: int):
    """Raise WindowError unless Hom(X, Y[i]) is determined by stored data."""
    if X.genuine and Y.genuine:
        return
    if not X.genuine:
        if not X.window_ok:
            raise WindowError("source window is not sound (vlo < lo + 1)")
        v = _target_vlo(Y, i)
        if v is not None and not (X.lo <= v - 1):
            raise WindowError(
                f"margin (A) fails: source truncated at {X.lo}, target "
                f"acyclic only below {v}; need lo_X <= {v - 1}")
    if not Y.genuine:
        if not Y.window_ok:
            raise WindowError("target window is not sound (vlo < lo + 1)")
        lo_z = Y.lo - i
        if not (X.lo >= lo_z + 1):
            raise WindowError(
                f"margin (B) fails: target stored from {lo_z}, source "
                f"starts at {X.lo}; need lo_X >= {lo_z + 1}")


# -- the Hom solver ----------------------------------------------------------


class _Layout:
    """Flat coordinates for block matrices indexed by (degree, row, col, path)."""

    def __init__(self, A, degrees, row_copies, col_copies):
        self.algebra = A
        self.blocks = {}
        self.total = 0
        for k in degrees:
            for r, vr in enumerate(row_copies(k)):
                for c, uc in enumerate(col_copies(k)):
                    paths = A.block_paths(vr, uc)
                    if paths:
                        self.blocks[(k, r, c)] = (self.total, paths)
                        self.total += len(paths)

    def scatter(self, row_vec, key, z, factor_side=None):
        """Add the coordinates of algebra element z into block ``key``."""
        if key not in self.blocks:
            A = self.algebra
            if not A.is_zero(z):
                raise AssertionError("nonzero entry outside layout block")
            return
        off, paths = self.blocks[key]
        f = self.algebra.field
        for j, b in enumerate(paths):
            if z[b] != f.zero:
                row_vec[off + j] = f.add(row_vec[off + j], z[b])

    def matrices(self, vec, degrees, row_copies, col_copies):
        """Reassemble a flat vector into per-degree algebra matrices."""
        A = self.algebra
        f = A.field
        out = {}
        for k in degrees:
            rows = row_copies(k)
            cols = col_copies(k)
            mat = alg_zeros(A, len(rows), len(cols))
            nonzero = False
            for r in range(len(rows)):
                for c in range(len(cols)):
                    info = self.blocks.get((k, r, c))
                    if not info:
                        continue
                    off, paths = info
                    z = list(A.zero())
                    for j, b in enumerate(paths):
                        if vec[off + j] != f.zero:
                            z[b] = vec[off + j]
                            nonzero = True
                    mat[r][c] = tuple(z)
            if nonzero:
                out[k] = mat
        return out


class HomSystem:
    """Hom(X, Z) in the homotopy category, Z already shifted."""

    def __init__(self, X: ProjComplex, Z: ProjComplex):
        self.X = X
        self.Z = Z
        A = X.algebra
        self.algebra = A
        f = A.field
        kmin = max(X.lo, Z.lo)
        kmax = min(X.hi, Z.hi)
        self.map_degrees = list(range(kmin, kmax + 1))
        self.phi = _Layout(A, self.map_degrees, Z.copies, X.copies)

        h_lo = max(X.lo, Z.lo + 1)
        h_hi = min(X.hi, Z.hi + 1)
        self.h_degrees = list(range(h_lo, h_hi + 1))
        self.h = _Layout(A, self.h_degrees,
                         lambda k: Z.copies(k - 1), X.copies)

        self._build_conditions()
        self._build_boundaries()
        self._kernel = None
        self._brank = None

    def _d_available(self, C: ProjComplex, k: int) -> bool:
        return C.genuine or k >= C.lo

    def _build_conditions(self):
        X, Z, A = self.X, self.Z, self.algebra
        f = A.field
        rows = []
        if not self.phi.total:
            self.cond_rows = []
            return
        lo = min(X.lo, Z.lo) - 1
        hi = max(X.hi, Z.hi)
        for k in range(lo, hi + 1):
            t1 = (k in self.phi_degrees_set and self._d_available(Z, k))
            t2 = ((k + 1) in self.phi_degrees_set and self._d_available(X, k))
            if not (t1 or t2):
                continue
            # condition lives in blocks (Z^{k+1} row, X^k col)
            coords = {}
            if t1:
                dz = Z.d(k)
                for (kk, m, c), (off, paths) in self.phi.blocks.items():
                    if kk != k:
                        continue
                    for r in range(Z.n_copies(k + 1)):
                        z = dz[r][m]
                        if A.is_zero(z):
                            continue
                        for j, b in enumerate(paths):
                            prod = A.mul(z, A.unit(b))
                            self._accumulate(coords, (r, c), prod, off + j, +1)
            if t2:
                dx = X.d(k)
                for (kk, r, m), (off, paths) in self.phi.blocks.items():
                    if kk != k + 1:
                        continue
                    for c in range(X.n_copies(k)):
                        w = dx[m][c]
                        if A.is_zero(w):
                            continue
                        for j, b in enumerate(paths):
                            prod = A.mul(A.unit(b), w)
                            self._accumulate(coords, (r, c), prod, off + j, -1)
            rows.extend(self._rows_from_coords(k, coords))
        self.cond_rows = rows

    @property
    def phi_degrees_set(self):
        s = getattr(self, "_pds", None)
        if s is None:
            s = set(self.map_degrees)
            self._pds = s
        return s

    def _accumulate(self, coords, rc, prod, unknown, sign):
        """Record prod (an algebra element) as the coefficient of one unknown."""
        f = self.algebra.field
        cell = coords.setdefault(rc, {})
        vec = cell.setdefault(unknown, list(self.algebra.zero()))
        for b, x in enumerate(prod):
            if x != f.zero:
                vec[b] = f.add(vec[b], x) if sign > 0 else f.sub(vec[b], x)

    def _rows_from_coords(self, k, coords):
        """One linear row per (target block, path) with any nonzero entry."""
        A = self.algebra
        f = A.field
        rows = []
        for (r, c), cell in sorted(coords.items()):
            vr = self.Z.copies(k + 1)[r]
            uc = self.X.copies(k)[c]
            paths = A.block_paths(vr, uc)
            for b in paths:
                row = [f.zero] * self.phi.total
                any_nz = False
                for unknown, vec in cell.items():
                    if vec[b] != f.zero:
                        row[unknown] = f.add(row[unknown], vec[b])
                        any_nz = True
                if any_nz:
                    rows.append(row)
            # entries outside the block would mean a typing bug
            for unknown, vec in cell.items():
                for b, x in enumerate(vec):
                    if x != f.zero and b not in set(paths):
                        raise AssertionError("hom condition escapes its block")
        return rows

    def _build_boundaries(self):
        X, Z, A = self.X, self.Z, self.algebra
        f = A.field
        cols = []
        for (k, m, c), (hoff, hpaths) in sorted(self.h.blocks.items()):
            for j, b in enumerate(hpaths):
                col = [f.zero] * self.phi.total
                # d_Z^{k-1} h^k lands in phi^k blocks (r, c)
                if self._d_available(Z, k - 1):
                    dz = Z.d(k - 1)
                    for r in range(Z.n_copies(k)):
                        z = dz[r][m]
                        if A.is_zero(z):
                            continue
                        prod = A.mul(z, A.unit(b))
                        self._scatter_col(col, (k, r, c), prod)
                # h^k d_X^{k-1} lands in phi^{k-1} blocks (m, c')
                if (k - 1) in self.phi_degrees_set and self._d_available(X, k - 1):
                    dx = X.d(k - 1)
                    for cp in range(X.n_copies(k - 1)):
                        w = dx[c][cp]
                        if A.is_zero(w):
                            continue
                        prod = A.mul(A.unit(b), w)
                        self._scatter_col(col, (k - 1, m, cp), prod)
                cols.append(col)
        self.boundary_cols = cols

    def _scatter_col(self, col, key, prod):
        A = self.algebra
        f = A.field
        info = self.phi.blocks.get(key)
        if info is None:
            if not A.is_zero(prod):
                raise AssertionError("homotopy boundary escapes the layout")
            return
        off, paths = info
        pmap = {b: j for j, b in enumerate(paths)}
        for b, x in enumerate(prod):
            if x != f.zero:
                col[off + pmap[b]] = f.add(col[off + pmap[b]], x)

    # -- results -------------------------------------------------------------

    def cycle_vectors(self):
        if self._kernel is None:
            f = self.algebra.field
            if not self.phi.total:
                self._kernel = []
            elif not self.cond_rows:
                self._kernel = [linalg.unit_vector(f, self.phi.total, j)
                                for j in range(self.phi.total)]
            else:
                self._kernel = linalg.kernel_basis(f, self.cond_rows)
        return self._kernel

    def boundary_rank(self):
        if self._brank is None:
            f = self.algebra.field
            if not self.boundary_cols or not self.phi.total:
                self._brank = 0
            else:
                self._brank = linalg.rank(f, self.boundary_cols)
        return self._brank

    def dim(self) -> int:
        return len(self.cycle_vectors()) - self.boundary_rank()

    def basis_vectors(self):
        """Cycle vectors spanning Hom modulo boundaries, reduced greedily."""
        f = self.algebra.field
        ech = linalg.Echelon(f, self.phi.total)
        for col in self.boundary_cols:
            ech.add(col)
        out = []
        for v in self.cycle_vectors():
            if ech.add(v):
                out.append(v)
        return out

    def vector_to_map(self, vec) -> ChainMap:
        comps = self.phi.matrices(vec, self.map_degrees,
                                  self.Z.copies, self.X.copies)
        return ChainMap(self.X, self.Z, comps, check=False)

    def map_to_vector(self, fmap: ChainMap):
        f = self.algebra.field
        vec = [f.zero] * self.phi.total
        for k, mat in fmap.comps.items():
            for r, row in enumerate(mat):
                for c, z in enumerate(row):
                    if not self.algebra.is_zero(z):
                        self.phi.scatter(vec, (k, r, c), z)
        return vec

    def is_boundary(self, fmap: ChainMap) -> bool:
        vec = self.map_to_vector(fmap)
        f = self.algebra.field
        if all(x == f.zero for x in vec):
            return True
        if not self.boundary_cols:
            return False
        sol = linalg.solve(f, linalg.transpose(self.boundary_cols), vec)
        return sol is not None


def hom_system(X: ProjComplex, Y: ProjComplex, i: int = 0) -> HomSystem:
    check_hom_window(X, Y, i)
    return HomSystem(X, shift(Y, i))


def hom_dim(X: ProjComplex, Y: ProjComplex, i: int = 0) -> int:
    """dim Hom_{K(proj)}(X, Y[i]); WindowError when margins fail."""
    return hom_system(X, Y, i).dim()


def hom_basis(X: ProjComplex, Y: ProjComplex, i: int = 0):
    sys = hom_system(X, Y, i)
    return [sys.vector_to_map(v) for v in sys.basis_vectors()]


def is_null_homotopic(f: ChainMap) -> bool:
    check_hom_window(f.src, f.dst, 0)
    sys = HomSystem(f.src, f.dst)
    return sys.is_boundary(f)


def strict_chain_maps(X: ProjComplex, Z: ProjComplex):
    """Basis of degreewise chain maps X -> Z (no homotopy quotient)."""
    sys = HomSystem(X, Z)
    return [sys.vector_to_map(v) for v in sys.cycle_vectors()], sys
