"""Finite-dimensional right modules presented as quiver representations.

A module assigns to each vertex a space k^{dims[v]} and to each arrow
a: u -> w a matrix acting on column vectors, dims[w] x dims[u].  A path
p = a1*...*al acts by act(al) ... act(a1), matching the diagrammatic
composition used in the algebra layer.

Projective sums carry an explicit path-indexed basis (ProjSum) so maps
between them can be moved back and forth between module matrices and
matrices with algebra entries; the complex layer relies on that.
"""

from __future__ import annotations

from .algebra import Algebra, InputError
from . import linalg
from .linalg import Echelon


class FDModule:
    def __init__(self, algebra: Algebra, dims, acts, check: bool = True):
        self.algebra = algebra
        self.dims = tuple(int(d) for d in dims)
        self.acts = [linalg.copy_matrix(m) for m in acts]
        if check:
            self.validate()

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def validate(self):
        A = self.algebra
        if len(self.dims) != A.n_vertices:
            raise InputError("dimension vector length does not match vertex count")
        if any(d < 0 for d in self.dims):
            raise InputError("negative dimension")
        if len(self.acts) != len(A.arrows):
            raise InputError("need one action matrix per arrow")
        for ai, arr in enumerate(A.arrows):
            m = self.acts[ai]
            if len(m) != self.dims[arr.target] or any(
                    len(row) != self.dims[arr.source] for row in m):
                raise InputError(
                    f"action of arrow {arr.name!r} has wrong shape")
        for rel in A.presentation.relations:
            src = A.arrows[rel[0][1][0]].source
            tgt = A.arrows[rel[0][1][-1]].target
            acc = linalg.zeros(A.field, self.dims[tgt], self.dims[src])
            for coeff, arrs in rel:
                term = self.path_action_arrows(arrs)
                acc = linalg.mat_add(A.field, acc,
                                     linalg.mat_scale(A.field, A.field.of(coeff), term))
            if not linalg.is_zero_matrix(A.field, acc):
                raise InputError("module does not satisfy a defining relation")

    def path_action_arrows(self, arrows):
        """Matrix of the action of a path given by arrow indices."""
        A = self.algebra
        u = A.arrows[arrows[0]].source
        w = A.arrows[arrows[-1]].target
        # A zero-dimensional space anywhere along the path kills the
        # composite; bail out early so empty matrices never lose their
        # column counts inside mat_mul.
        if self.dims[u] == 0 or any(
                self.dims[A.arrows[ai].target] == 0 for ai in arrows):
            return linalg.zeros(A.field, self.dims[w], self.dims[u])
        m = linalg.identity(A.field, self.dims[u])
        for ai in arrows:
            m = linalg.mat_mul(A.field, self.acts[ai], m)
        return m

    def element_action(self, z, u: int, w: int):
        """Matrix M_u -> M_w of acting by z restricted to e_u A e_w paths.

        z is an algebra element; only its components along paths u -> w
        contribute (an element of e_u A e_w maps M_u into M_w).
        """
        A = self.algebra
        f = A.field
        out = linalg.zeros(f, self.dims[w], self.dims[u])
        for b in A.block_paths(u, w):
            c = z[b]
            if c == f.zero:
                continue
            p = A.basis[b]
            if p.arrows:
                term = self.path_action_arrows(p.arrows)
            else:
                term = linalg.identity(f, self.dims[u])
            out = linalg.mat_add(f, out, linalg.mat_scale(f, c, term))
        return out

    def __repr__(self):
        return f"FDModule(dims={self.dims})"


def zero_module(A: Algebra) -> FDModule:
    return FDModule(A, [0] * A.n_vertices,
                    [linalg.zeros(A.field, 0, 0) for _ in A.arrows], check=False)


def modules_equal(M: FDModule, N: FDModule) -> bool:
    return M.dims == N.dims and M.acts == N.acts


class ModuleMap:
    """A homomorphism, one matrix per vertex (dst rows, src cols)."""

    def __init__(self, src: FDModule, dst: FDModule, mats, check: bool = True):
        self.src = src
        self.dst = dst
        self.mats = [linalg.copy_matrix(m) for m in mats]
        if check:
            self.validate()

    def validate(self):
        A = self.src.algebra
        f = A.field
        for v in range(A.n_vertices):
            m = self.mats[v]
            if len(m) != self.dst.dims[v] or any(
                    len(row) != self.src.dims[v] for row in m):
                raise InputError(f"map matrix at vertex {v} has wrong shape")
        for ai, arr in enumerate(A.arrows):
            u, w = arr.source, arr.target
            lhs = _mul_shaped(f, self.mats[w], self.src.acts[ai],
                              self.dst.dims[w], self.src.dims[u])
            rhs = _mul_shaped(f, self.dst.acts[ai], self.mats[u],
                              self.dst.dims[w], self.src.dims[u])
            if lhs != rhs:
                raise InputError(
                    f"matrices do not intertwine arrow {arr.name!r}")

    def is_zero(self) -> bool:
        f = self.src.algebra.field
        return all(linalg.is_zero_matrix(f, m) for m in self.mats)

    def is_mono(self) -> bool:
        f = self.src.algebra.field
        return all(linalg.rank(f, m) == self.src.dims[v]
                   for v, m in enumerate(self.mats))

    def is_epi(self) -> bool:
        f = self.src.algebra.field
        return all(linalg.rank(f, m) == self.dst.dims[v]
                   for v, m in enumerate(self.mats))

    def is_iso(self) -> bool:
        return self.src.dims == self.dst.dims and self.is_mono()

    def __repr__(self):
        return f"ModuleMap({self.src.dims} -> {self.dst.dims})"


def _mul_shaped(field, Amat, Bmat, rows: int, cols: int):
    # mat_mul cannot recover the column count of an empty factor, so a
    # vanishing inner dimension must fall back to an explicit zero block
    if not Amat or not Bmat:
        return linalg.zeros(field, rows, cols)
    return linalg.mat_mul(field, Amat, Bmat)


def compose(g: ModuleMap, f: ModuleMap) -> ModuleMap:
    """g after f."""
    field = f.src.algebra.field
    mats = [_mul_shaped(field, gm, fm, g.dst.dims[v], f.src.dims[v])
            for v, (gm, fm) in enumerate(zip(g.mats, f.mats))]
    return ModuleMap(f.src, g.dst, mats, check=False)


def map_add(f: ModuleMap, g: ModuleMap) -> ModuleMap:
    field = f.src.algebra.field
    return ModuleMap(f.src, f.dst,
                     [linalg.mat_add(field, a, b) for a, b in zip(f.mats, g.mats)],
                     check=False)


def map_scale(c, f: ModuleMap) -> ModuleMap:
    field = f.src.algebra.field
    return ModuleMap(f.src, f.dst,
                     [linalg.mat_scale(field, c, m) for m in f.mats], check=False)


def zero_map(M: FDModule, N: FDModule) -> ModuleMap:
    f = M.algebra.field
    return ModuleMap(M, N, [linalg.zeros(f, N.dims[v], M.dims[v])
                            for v in range(M.algebra.n_vertices)], check=False)


def identity_map(M: FDModule) -> ModuleMap:
    f = M.algebra.field
    return ModuleMap(M, M, [linalg.identity(f, d) for d in M.dims], check=False)


def hom_modules(M: FDModule, N: FDModule):
    """Deterministic basis of Hom(M, N) as a list of ModuleMaps."""
    A = M.algebra
    f = A.field
    nv = A.n_vertices
    offsets = []
    total = 0
    for v in range(nv):
        offsets.append(total)
        total += N.dims[v] * M.dims[v]
    if total == 0:
        return []

    rows = []
    for ai, arr in enumerate(A.arrows):
        u, w = arr.source, arr.target
        aM, aN = M.acts[ai], N.acts[ai]
        for i in range(N.dims[w]):
            for j in range(M.dims[u]):
                row = [f.zero] * total
                for k in range(M.dims[w]):
                    row[offsets[w] + i * M.dims[w] + k] = f.add(
                        row[offsets[w] + i * M.dims[w] + k], aM[k][j])
                for k in range(N.dims[u]):
                    row[offsets[u] + k * M.dims[u] + j] = f.sub(
                        row[offsets[u] + k * M.dims[u] + j], aN[i][k])
                rows.append(row)

    if rows:
        basis = linalg.kernel_basis(f, rows)
    else:
        basis = [linalg.unit_vector(f, total, j) for j in range(total)]

    out = []
    for vec in basis:
        mats = []
        for v in range(nv):
            m = [[vec[offsets[v] + i * M.dims[v] + j] for j in range(M.dims[v])]
                 for i in range(N.dims[v])]
            mats.append(m)
        out.append(ModuleMap(M, N, mats, check=False))
    return out


def hom_dim_modules(M: FDModule, N: FDModule) -> int:
    return len(hom_modules(M, N))


def direct_sum_modules(parts):
    """Direct sum with inclusion and projection maps."""
    if not parts:
        raise InputError("direct sum of nothing; pass the zero module instead")
    A = parts[0].algebra
    f = A.field
    nv = A.n_vertices
    dims = [sum(p.dims[v] for p in parts) for v in range(nv)]
    offsets = []
    run = [0] * nv
    for p in parts:
        offsets.append(list(run))
        for v in range(nv):
            run[v] += p.dims[v]
    acts = []
    for ai, arr in enumerate(A.arrows):
        m = linalg.zeros(f, dims[arr.target], dims[arr.source])
        for pi, p in enumerate(parts):
            po_t, po_s = offsets[pi][arr.target], offsets[pi][arr.source]
            sub = p.acts[ai]
            for i in range(p.dims[arr.target]):
                for j in range(p.dims[arr.source]):
                    m[po_t + i][po_s + j] = sub[i][j]
        acts.append(m)
    S = FDModule(A, dims, acts, check=False)
    incls, projs = [], []
    for pi, p in enumerate(parts):
        inc = [linalg.zeros(f, dims[v], p.dims[v]) for v in range(nv)]
        prj = [linalg.zeros(f, p.dims[v], dims[v]) for v in range(nv)]
        for v in range(nv):
            for j in range(p.dims[v]):
                inc[v][offsets[pi][v] + j][j] = f.one
                prj[v][j][offsets[pi][v] + j] = f.one
        incls.append(ModuleMap(p, S, inc, check=False))
        projs.append(ModuleMap(S, p, prj, check=False))
    return S, incls, projs


def kernel_module(f: ModuleMap):
    """(K, incl) with K = ker f as a submodule."""
    A = f.src.algebra
    fd = A.field
    nv = A.n_vertices
    bases = []
    for v in range(nv):
        m = f.mats[v]
        if not m:
            # zero target: everything is in the kernel
            bases.append([linalg.unit_vector(fd, f.src.dims[v], j)
                          for j in range(f.src.dims[v])])
        else:
            bases.append(linalg.kernel_basis(fd, m))
    dims = [len(b) for b in bases]
    incl_mats = []
    for v in range(nv):
        cols = bases[v]
        incl_mats.append([[cols[j][i] for j in range(dims[v])]
                          for i in range(f.src.dims[v])])
    acts = _induced_sub_acts(f.src, dims, incl_mats)
    K = FDModule(A, dims, acts, check=False)
    return K, ModuleMap(K, f.src, incl_mats, check=False)


def _induced_sub_acts(M: FDModule, dims, incl_mats):
    """Arrow actions on a submodule given by full-column-rank inclusions."""
    A = M.algebra
    fd = A.field
    acts = []
    for ai, arr in enumerate(A.arrows):
        u, w = arr.source, arr.target
        img = linalg.mat_mul(fd, M.acts[ai], incl_mats[u])
        act = linalg.zeros(fd, dims[w], dims[u])
        for j in range(dims[u]):
            col = [img[i][j] for i in range(M.dims[w])]
            sol = linalg.solve(fd, incl_mats[w], col) if M.dims[w] else []
            if sol is None:
                raise InputError("subspace is not closed under the action")
            for i in range(dims[w]):
                act[i][j] = sol[i]
        acts.append(act)
    return acts


def image_module(f: ModuleMap):
    """(I, incl into f.dst) for the image of f."""
    A = f.src.algebra
    fd = A.field
    nv = A.n_vertices
    incl_mats = []
    dims = []
    for v in range(nv):
        cols = linalg.transpose(f.mats[v])
        ech = Echelon(fd, f.dst.dims[v])
        chosen = []
        for c in cols:
            if ech.add(c):
                chosen.append(c)
        dims.append(len(chosen))
        incl_mats.append([[chosen[j][i] for j in range(len(chosen))]
                          for i in range(f.dst.dims[v])])
    acts = _induced_sub_acts(f.dst, dims, incl_mats)
    I = FDModule(A, dims, acts, check=False)
    return I, ModuleMap(I, f.dst, incl_mats, check=False)


def cokernel_module(f: ModuleMap):
    """(C, proj) with C = coker f = dst / im f."""
    A = f.dst.algebra
    fd = A.field
    nv = A.n_vertices
    proj_mats = []
    sect_mats = []
    dims = []
    for v in range(nv):
        d = f.dst.dims[v]
        ech = Echelon(fd, d)
        im_basis = []
        for col in linalg.transpose(f.mats[v]):
            if ech.add(col):
                im_basis.append(col)
        comp = []
        for j in range(d):
            u = linalg.unit_vector(fd, d, j)
            if ech.add(u):
                comp.append(u)
        dims.append(len(comp))
        # change of basis [im | comp]; projection reads the comp coordinates
        B = linalg.transpose(im_basis + comp)
        if d:
            Binv = linalg.invert(fd, B)
            proj_mats.append(Binv[len(im_basis):])
        else:
            proj_mats.append([])
        sect_mats.append([[c[i] for c in comp] for i in range(d)])
    acts = []
    for ai, arr in enumerate(A.arrows):
        u, w = arr.source, arr.target
        m = linalg.mat_mul(fd, proj_mats[w],
                           linalg.mat_mul(fd, f.dst.acts[ai], sect_mats[u]))
        acts.append(m)
    C = FDModule(A, dims, acts, check=False)
    return C, ModuleMap(f.dst, C, proj_mats, check=False)


# -- structure modules ---------------------------------------------------


def simple_module(A: Algebra, v: int) -> FDModule:
    dims = [1 if u == v else 0 for u in range(A.n_vertices)]
    acts = [linalg.zeros(A.field, dims[a.target], dims[a.source]) for a in A.arrows]
    return FDModule(A, dims, acts, check=False)


class ProjSum:
    """An explicit direct sum of indecomposable projectives P(v).

    ``copies`` lists one vertex per summand.  The underlying module has,
    at each vertex w, the basis {(copy c, path p: copies[c] -> w)} in
    copy-major order; ``layout[w]`` records that list, ``flat[w]`` maps
    (copy, path basis index) back to a coordinate.
    """

    def __init__(self, A: Algebra, copies):
        self.algebra = A
        self.copies = tuple(copies)
        f = A.field
        nv = A.n_vertices
        layout = [[] for _ in range(nv)]
        for c, vc in enumerate(self.copies):
            for w in range(nv):
                for b in A.block_paths(vc, w):
                    layout[w].append((c, b))
        self.layout = layout
        self.flat = [
            {pair: i for i, pair in enumerate(lay)} for lay in layout
        ]
        dims = [len(lay) for lay in layout]
        acts = []
        for arr_i, arr in enumerate(A.arrows):
            u, w = arr.source, arr.target
            arrow_elem = A.unit(A.arrow_index[arr_i])
            m = linalg.zeros(f, dims[w], dims[u])
            for j, (c, b) in enumerate(layout[u]):
                prod = A.mul(A.unit(b), arrow_elem)
                for b2, coeff in enumerate(prod):
                    if coeff != f.zero:
                        m[self.flat[w][(c, b2)]][j] = coeff
            acts.append(m)
        self.module = FDModule(A, dims, acts, check=False)

    def generator_coord(self, c: int):
        """(vertex, flat index) of the generator e_{copies[c]} of copy c."""
        v = self.copies[c]
        return v, self.flat[v][(c, self.algebra.e_index[v])]


def projective_module(A: Algebra, v: int) -> ProjSum:
    return ProjSum(A, [v])


def proj_sum_map_from_alg(src: ProjSum, dst: ProjSum, entries) -> ModuleMap:
    """ModuleMap of an algebra-entry matrix (dst copies x src copies)."""
    A = src.algebra
    f = A.field
    nv = A.n_vertices
    mats = [linalg.zeros(f, dst.module.dims[w], src.module.dims[w])
            for w in range(nv)]
    for w in range(nv):
        for j, (c, b) in enumerate(src.layout[w]):
            x = A.unit(b)
            for r in range(len(dst.copies)):
                z = entries[r][c]
                if all(t == f.zero for t in z):
                    continue
                prod = A.mul(z, x)
                for b2, coeff in enumerate(prod):
                    if coeff != f.zero:
                        mats[w][dst.flat[w][(r, b2)]][j] = coeff
    return ModuleMap(src.module, dst.module, mats, check=False)


def proj_sum_map_to_alg(src: ProjSum, dst: ProjSum, fmap: ModuleMap):
    """Algebra-entry matrix of a module map between projective sums."""
    A = src.algebra
    f = A.field
    entries = [[A.zero() for _ in src.copies] for _ in dst.copies]
    for c in range(len(src.copies)):
        u, gidx = src.generator_coord(c)
        col = [fmap.mats[u][i][gidx] for i in range(dst.module.dims[u])]
        for i, coeff in enumerate(col):
            if coeff == f.zero:
                continue
            r, b = dst.layout[u][i]
            z = list(entries[r][c])
            z[b] = f.add(z[b], coeff)
            entries[r][c] = tuple(z)
    return entries


def top_generators(M: FDModule):
    """Deterministic generators of M/rad M: list of (vertex, unit coordinate)."""
    A = M.algebra
    f = A.field
    gens = []
    for w in range(A.n_vertices):
        ech = Echelon(f, M.dims[w])
        for ai, arr in enumerate(A.arrows):
            if arr.target != w:
                continue
            for col in linalg.transpose(M.acts[ai]):
                ech.add(col)
        for j in range(M.dims[w]):
            if ech.add(linalg.unit_vector(f, M.dims[w], j)):
                gens.append((w, j))
    return gens


def projective_cover(M: FDModule):
    """(ProjSum P, epi P.module -> M) covering the top of M."""
    A = M.algebra
    f = A.field
    gens = top_generators(M)
    P = ProjSum(A, [w for w, _ in gens])
    nv = A.n_vertices
    mats = [linalg.zeros(f, M.dims[w], P.module.dims[w]) for w in range(nv)]
    for w in range(nv):
        for col_i, (c, b) in enumerate(P.layout[w]):
            gv, gj = gens[c]
            vec = linalg.unit_vector(f, M.dims[gv], gj)
            p = A.basis[b]
            if p.arrows:
                act = M.path_action_arrows(p.arrows)
                vec = linalg.mat_vec(f, act, vec)
            for i in range(M.dims[w]):
                mats[w][i][col_i] = vec[i]
    cover = ModuleMap(P.module, M, mats, check=False)
    if not cover.is_epi():
        raise AssertionError("projective cover failed to surject")
    return P, cover


def dualize_module(M: FDModule, op: Algebra) -> FDModule:
    """The k-dual as a module over the opposite algebra."""
    acts = []
    for ai, m in enumerate(M.acts):
        src = M.algebra.arrows[ai].source
        acts.append(linalg.transpose(m) if m else
                    [[] for _ in range(M.dims[src])])
    return FDModule(op, M.dims, acts, check=False)
