"""Minimal projective resolutions, extended lazily and sliced on demand.

A ResolvedModule owns one minimal resolution of a module and grows it
as deeper slices are requested, so every slice of the same module is a
brutal truncation of the same full object.  Slices come out as
ProjComplexes: genuine when the resolution terminates inside the window,
truncated with vlo = 0 otherwise (the full resolution is exact except
for the module itself in degree 0).
"""

from __future__ import annotations

from .algebra import InputError
from .complexes import ProjComplex
from .modules import (FDModule, ModuleMap, ProjSum, compose, kernel_module,
                      projective_cover, proj_sum_map_to_alg, hom_dim_modules)
from . import linalg


class ResolvedModule:
    def __init__(self, module: FDModule):
        self.module = module
        self.psums = []        # P_0, P_1, ... as ProjSum
        self.covers = []       # cover maps P_s.module -> K_s
        self.alg_diffs = []    # algebra-entry matrices of P_s -> P_{s-1}, s >= 1
        self.kernels = [module]
        self._incls = []       # kernel inclusions K_{s+1} -> P_s.module
        self.finite_len = None  # set when the resolution stops

    def extend_to(self, steps: int):
        """Ensure P_0 .. P_steps exist (or the resolution has terminated)."""
        while self.finite_len is None and len(self.psums) <= steps:
            K = self.kernels[-1]
            if K.total_dim == 0 and self.psums:
                self.finite_len = len(self.psums) - 1
                return
            P, cover = projective_cover(K)
            if self.psums:
                prev = self.psums[-1]
                incl = self._incls[-1]
                d = compose(incl, cover)
                self.alg_diffs.append(proj_sum_map_to_alg(P, prev, d))
            self.psums.append(P)
            self.covers.append(cover)
            ker, incl = kernel_module(cover)
            self._incls.append(incl)
            self.kernels.append(ker)
            if ker.total_dim == 0:
                self.finite_len = len(self.psums) - 1

    @property
    def known_length(self):
        return self.finite_len

    def projective_dimension(self, probe_to: int):
        """pd(M) if it is <= probe_to, else None."""
        self.extend_to(probe_to)
        return self.finite_len

    def complex(self, depth: int) -> ProjComplex:
        """Slice sigma_{>= -depth} of the resolution, placed on [-depth, 0]."""
        if depth < 1:
            raise InputError("resolution slices need depth >= 1")
        self.extend_to(depth)
        A = self.module.algebra
        if self.finite_len is not None and self.finite_len <= depth:
            length = self.finite_len
            genuine = True
        else:
            length = depth
            genuine = False
        mults = []
        for s in range(length, -1, -1):
            m = [0] * A.n_vertices
            for v in self.psums[s].copies:
                m[v] += 1
            mults.append(tuple(m))
        diffs = []
        for s in range(length, 0, -1):
            # degree k = -s: d^k : P_s -> P_{s-1}
            diffs.append(self.alg_diffs[s - 1])
        return ProjComplex(A, -length, mults, diffs, genuine,
                           None if genuine else 0, check=False)


def ext_dim(M: FDModule, N: FDModule, k: int, rm: ResolvedModule = None) -> int:
    """dim Ext^k(M, N), computed from a minimal resolution of M."""
    if k < 0:
        return 0
    if M.total_dim == 0 or N.total_dim == 0:
        return 0
    rm = rm or ResolvedModule(M)
    rm.extend_to(k + 1)
    L = rm.finite_len
    if L is not None and k > L:
        return 0

    def cochain_matrix(s):
        # Hom(P_s, N) -> Hom(P_{s+1}, N), phi -> phi . d_{s+1}
        if L is not None and s + 1 > L:
            return None
        src_ps = rm.psums[s]
        dst_ps = rm.psums[s + 1]
        d = rm.alg_diffs[s]  # entries[r over P_s][c over P_{s+1}]
        rows = []
        col_off = []
        run = 0
        for r, vr in enumerate(src_ps.copies):
            col_off.append(run)
            run += N.dims[vr]
        width = run
        for c, uc in enumerate(dst_ps.copies):
            blocks = []
            for r, vr in enumerate(src_ps.copies):
                blocks.append(N.element_action(d[r][c], vr, uc))
            for i in range(N.dims[uc]):
                row = [N.algebra.field.zero] * width
                for r, vr in enumerate(src_ps.copies):
                    for j in range(N.dims[vr]):
                        row[col_off[r] + j] = blocks[r][i][j]
                rows.append(row)
        return rows, width

    f = M.algebra.field
    out_data = cochain_matrix(k)
    if out_data is None:
        r_out = 0
        dim_k = sum(N.dims[v] for v in rm.psums[k].copies) if k < len(rm.psums) else 0
    else:
        rows, width = out_data
        dim_k = width
        r_out = linalg.rank(f, rows) if rows else 0
    if k == 0:
        r_in = 0
    else:
        in_data = cochain_matrix(k - 1)
        rows_in, _ = in_data
        r_in = linalg.rank(f, rows_in) if rows_in else 0
    return dim_k - r_out - r_in


def ext_vanishing_range(M: FDModule, N: FDModule, depth: int, rm=None):
    """First k in [1, depth] with Ext^k(M, N) != 0, or None."""
    rm = rm or ResolvedModule(M)
    for k in range(1, depth + 1):
        if ext_dim(M, N, k, rm=rm):
            return k
    return None
