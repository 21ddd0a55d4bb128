"""Splitting complexes and modules into indecomposable direct summands.

The engine is Fitting's lemma applied to strict endomorphisms.  A strict
endo x whose minimal polynomial factors into two coprime nonconstant
parts yields a polynomial in x that is a strictly idempotent chain map,
and a strict idempotent on a minimal complex can be diagonalized away
entirely: after a scalar change of basis per degree and vertex its
residues become coordinate projections, and one further conjugation by
the unit u = pe + (1-p)(1-e) makes it equal to a coordinate projection
on the nose.  The complex then falls apart as stored data.

Indecomposability certificates come in two strengths.  Over a finite
field with at most EXHAUSTIVE_LIMIT endomorphism combinations the whole
endo space is enumerated and the absence of a nontrivial strict
idempotent is conclusive (idempotents of the homotopy category lift to
strict ones on a minimal complex).  Otherwise a budget of structured
and seeded random candidates is tried and a miss is only reported as
uncertified.
"""

from __future__ import annotations

import itertools
import random

from . import linalg, polys
from . import modules as mods
from .complexes import (ProjComplex, WindowError, alg_zeros, alg_identity,
                        alg_mat_mul, alg_mat_add, alg_mat_sub)
from .homs import (ChainMap, HomSystem, identity_map, zero_map, compose_maps,
                   map_add, map_sub, map_scale)
from .minimize import minimize, is_isomorphic, residue_matrices

EXHAUSTIVE_LIMIT = 4096
TRIAL_BUDGET = 300


# -- minimal polynomials -------------------------------------------------


def matrix_min_poly(f, M):
    """Minimal polynomial of a square matrix, low coefficients first."""
    n = len(M)
    if n == 0:
        return [f.one]
    flats = []
    P = linalg.identity(f, n)
    while True:
        v = [P[i][j] for i in range(n) for j in range(n)]
        if flats:
            sol = linalg.solve(f, linalg.transpose(flats), v)
        else:
            sol = [] if all(c == f.zero for c in v) else None
        if sol is not None:
            return [f.neg(c) for c in sol] + [f.one]
        flats.append(v)
        P = linalg.mat_mul(f, M, P)


def _block_diag(f, blocks):
    n = sum(len(b) for b in blocks)
    M = linalg.zeros(f, n, n)
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, val in enumerate(row):
                M[off + i][off + j] = val
        off += len(b)
    return M


def _endo_total_matrix(x: ChainMap):
    X = x.src
    A = X.algebra
    blocks = []
    for k in X.degrees():
        term = X.term_sum(k)
        mm = mods.proj_sum_map_from_alg(term, term, x.component(k))
        blocks.extend(mm.mats)
    return _block_diag(A.field, blocks)


# -- Fitting idempotents --------------------------------------------------


def _eval_poly_at_endo(X: ProjComplex, x: ChainMap, coeffs) -> ChainMap:
    f = X.algebra.field
    acc = zero_map(X, X)
    ident = identity_map(X)
    for c in reversed(coeffs):
        acc = compose_maps(acc, x)
        if c != f.zero:
            acc = map_add(acc, map_scale(c, ident))
    return acc


def _maps_equal(a: ChainMap, b: ChainMap) -> bool:
    return map_sub(a, b).is_zero()


def _fitting_idempotent(X: ProjComplex, x: ChainMap, rng):
    """A proper strict idempotent in k[x], or None if x yields none."""
    f = X.algebra.field
    m = matrix_min_poly(f, _endo_total_matrix(x))
    sp = polys.coprime_split(f, m, rng)
    if sp is None:
        return None
    f1, f2 = sp
    g, _, beta = polys.xgcd(f, f1, f2)
    if polys.deg(g) != 0:
        return None
    e_poly = polys.divmod_poly(f, polys.mul(f, beta, f2), m)[1]
    pi = _eval_poly_at_endo(X, x, e_poly)
    if not _maps_equal(compose_maps(pi, pi), pi):
        raise AssertionError("Fitting construction broke strict idempotency")
    if pi.is_zero() or _maps_equal(pi, identity_map(X)):
        return None
    return pi


# -- realizing a strict idempotent as a coordinate projection -------------


def _scalar_block_matrix(A, copies, per_vertex):
    """Algebra-entry matrix acting by a scalar matrix inside each vertex."""
    n = len(copies)
    out = alg_zeros(A, n, n)
    pos = {v: [i for i, w in enumerate(copies) if w == v]
           for v in range(A.n_vertices)}
    for v, S in per_vertex.items():
        for i, fi in enumerate(pos[v]):
            for j, fj in enumerate(pos[v]):
                if S[i][j] != A.field.zero:
                    out[fi][fj] = A.scale(S[i][j], A.e(v))
    return out


def _invert_term_automorphism(X: ProjComplex, k: int, u):
    term = X.term_sum(k)
    mm = mods.proj_sum_map_from_alg(term, term, u)
    inv_mats = [linalg.invert(X.algebra.field, m) for m in mm.mats]
    winv = mods.ModuleMap(term.module, term.module, inv_mats, check=False)
    return mods.proj_sum_map_to_alg(term, term, winv)


def split_by_idempotent(X: ProjComplex, pi: ChainMap):
    """(Y, Z) with X = Y (+) Z strictly, pi projecting onto the Y part."""
    A = X.algebra
    f = A.field
    degs = list(X.degrees())
    sel, C, Cinv = {}, {}, {}
    for k in degs:
        copies = X.copies(k)
        res = residue_matrices(pi, k)
        per_vertex, ranks = {}, {}
        for v in range(A.n_vertices):
            R = res[v]
            n = len(R)
            if n == 0:
                per_vertex[v] = []
                ranks[v] = 0
                continue
            cols = linalg.transpose(R)
            ech = linalg.Echelon(f, n)
            im = [c for c in cols if ech.add(c)]
            ker = linalg.kernel_basis(f, R)
            if len(im) + len(ker) != n:
                raise AssertionError("residue of idempotent did not split")
            S = linalg.transpose(im + ker)
            per_vertex[v] = S
            ranks[v] = len(im)
        sigma = _scalar_block_matrix(A, copies, per_vertex)
        sigma_inv = _scalar_block_matrix(
            A, copies,
            {v: linalg.invert(f, S) for v, S in per_vertex.items() if S})
        pi_k = alg_mat_mul(A, sigma_inv, alg_mat_mul(A, pi.component(k), sigma))
        # coordinate idempotent: first rank(v) copies inside each vertex
        pos = {v: [i for i, w in enumerate(copies) if w == v]
               for v in range(A.n_vertices)}
        chosen = []
        for v in range(A.n_vertices):
            chosen.extend(pos[v][:ranks[v]])
        chosen.sort()
        sel[k] = chosen
        eps = alg_zeros(A, len(copies), len(copies))
        for i in chosen:
            eps[i][i] = A.e(copies[i])
        ident = alg_identity(A, copies)
        pe = alg_mat_mul(A, pi_k, eps)
        u = alg_mat_add(A, alg_mat_sub(A, alg_mat_add(A, pe, pe),
                                       alg_mat_add(A, pi_k, eps)), ident)
        u_inv = _invert_term_automorphism(X, k, u)
        C[k] = alg_mat_mul(A, sigma, u)
        Cinv[k] = alg_mat_mul(A, u_inv, sigma_inv)
        check = alg_mat_mul(A, Cinv[k], alg_mat_mul(A, pi.component(k), C[k]))
        if check != eps:
            raise AssertionError("idempotent did not reduce to a projection")
    diffs = {k: alg_mat_mul(A, Cinv[k + 1], alg_mat_mul(A, X.d(k), C[k]))
             for k in degs[:-1]}
    rest = {k: [i for i in range(len(X.copies(k))) if i not in set(sel[k])]
            for k in degs}
    return (_subcomplex_on_positions(X, diffs, sel),
            _subcomplex_on_positions(X, diffs, rest))


def _subcomplex_on_positions(X: ProjComplex, diffs, pos):
    """Extract the summand supported on the given flat positions, checking
    that the differential never crosses the partition."""
    A = X.algebra
    degs = list(X.degrees())
    mults = []
    for k in degs:
        copies = X.copies(k)
        m = [0] * A.n_vertices
        for i in pos[k]:
            m[copies[i]] += 1
        mults.append(tuple(m))
    sub = []
    for k in degs[:-1]:
        d = diffs[k]
        inside = set(pos[k + 1])
        for r in range(len(d)):
            for c in pos[k]:
                if r not in inside and not A.is_zero(d[r][c]):
                    raise AssertionError("differential crosses the splitting")
        sub.append([[d[r][c] for c in pos[k]] for r in pos[k + 1]])
    return ProjComplex(A, X.lo, mults, sub, genuine=X.genuine,
                       vlo=None if X.genuine else X.vlo, check=False)


# -- connected components -------------------------------------------------


def _connected_pieces(X: ProjComplex):
    """Split along the support graph of the differentials; cheap and exact."""
    A = X.algebra
    degs = list(X.degrees())
    nodes = [(k, i) for k in degs for i in range(X.n_copies(k))]
    parent = {n: n for n in nodes}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for k in degs[:-1]:
        d = X.d(k)
        for r in range(len(d)):
            for c in range(len(d[r]) if d else 0):
                if not A.is_zero(d[r][c]):
                    union((k + 1, r), (k, c))
    groups = {}
    for n in nodes:
        groups.setdefault(find(n), []).append(n)
    if len(groups) <= 1:
        return [X]
    diffs = {k: X.d(k) for k in degs[:-1]}
    pieces = []
    for root in sorted(groups, key=lambda r: min(groups[r])):
        pos = {k: [] for k in degs}
        for (k, i) in sorted(groups[root]):
            pos[k].append(i)
        pieces.append(_subcomplex_on_positions(X, diffs, pos))
    return pieces


# -- the search -----------------------------------------------------------


def _find_strict_idempotent(X: ProjComplex, seed: int = 0):
    """(pi, certified): a proper strict idempotent endo if one is found.

    certified only matters on a miss: True means the miss proves X
    indecomposable, False means the budget ran out.
    """
    A = X.algebra
    f = A.field
    if sum(c for m in X.mults for c in m) <= 1:
        return None, True
    sys = HomSystem(X, X)
    vecs = sys.cycle_vectors()
    D = len(vecs)
    if D == 1:
        # the endo space is spanned by the identity alone
        return None, True
    rng = random.Random(("decompose", seed))
    if f.p and f.p ** D <= EXHAUSTIVE_LIMIT:
        ident = identity_map(X)
        for coeffs in itertools.product(range(f.p), repeat=D):
            if not any(coeffs):
                continue
            vec = [f.zero] * len(vecs[0])
            for c, bv in zip(coeffs, vecs):
                if c:
                    for j, val in enumerate(bv):
                        vec[j] = f.add(vec[j], f.mul(f.of(c), val))
            x = sys.vector_to_map(vec)
            if not _maps_equal(compose_maps(x, x), x):
                continue
            if x.is_zero() or _maps_equal(x, ident):
                continue
            return x, True
        return None, True
    candidates = [sys.vector_to_map(v) for v in vecs]
    structured = list(candidates)
    for i in range(len(candidates)):
        for j in range(len(candidates)):
            if len(structured) >= TRIAL_BUDGET // 2:
                break
            if i < j:
                structured.append(map_add(candidates[i], candidates[j]))
            if i != j:
                structured.append(compose_maps(candidates[i], candidates[j]))
    tried = 0
    for x in structured:
        tried += 1
        pi = _fitting_idempotent(X, x, rng)
        if pi is not None:
            return pi, True
    while tried < TRIAL_BUDGET:
        tried += 1
        if f.p:
            coeffs = [f.of(rng.randrange(f.p)) for _ in range(D)]
        else:
            coeffs = [f.of(rng.randint(-3, 3)) for _ in range(D)]
        vec = [f.zero] * len(vecs[0])
        for c, bv in zip(coeffs, vecs):
            if c != f.zero:
                for j, val in enumerate(bv):
                    vec[j] = f.add(vec[j], f.mul(c, val))
        x = sys.vector_to_map(vec)
        pi = _fitting_idempotent(X, x, rng)
        if pi is not None:
            return pi, True
    return None, False


def indecomposable_summands(X: ProjComplex, seed: int = 0):
    """([(summand, count)], certified) up to isomorphism.

    The input is minimized first, so contractible summands never show
    up.  certified is False when some leaf could not be proved
    indecomposable within the search budget.
    """
    if not X.genuine:
        raise WindowError("decomposition is only defined on genuine complexes")
    X = minimize(X)
    if X.is_structurally_zero():
        return [], True
    certified = True
    leaves = []
    stack = [X]
    while stack:
        W = stack.pop()
        pieces = _connected_pieces(W)
        if len(pieces) > 1:
            stack.extend(pieces)
            continue
        pi, cert = _find_strict_idempotent(W, seed)
        if pi is None:
            leaves.append(minimize(W))
            certified = certified and cert
        else:
            Y, Z = split_by_idempotent(W, pi)
            stack.append(minimize(Y))
            stack.append(minimize(Z))
    groups = []
    for L in leaves:
        for g in groups:
            ok, _ = is_isomorphic(g[0], L, seed=seed)
            if ok:
                g[1] += 1
                break
        else:
            groups.append([L, 1])
    groups.sort(key=lambda g: (g[0].lo, g[0].mults))
    return [(g[0], g[1]) for g in groups], certified


# -- the module-level analogue --------------------------------------------


def _module_total_matrix(x: mods.ModuleMap):
    return _block_diag(x.src.algebra.field, x.mats)


def _module_poly_eval(M: mods.FDModule, x: mods.ModuleMap, coeffs):
    f = M.algebra.field
    acc = mods.zero_map(M, M)
    ident = mods.identity_map(M)
    for c in reversed(coeffs):
        acc = mods.compose(acc, x)
        if c != f.zero:
            acc = mods.map_add(acc, mods.map_scale(c, ident))
    return acc


def _module_fitting(M: mods.FDModule, x: mods.ModuleMap, rng):
    f = M.algebra.field
    m = matrix_min_poly(f, _module_total_matrix(x))
    sp = polys.coprime_split(f, m, rng)
    if sp is None:
        return None
    f1, f2 = sp
    g, _, beta = polys.xgcd(f, f1, f2)
    if polys.deg(g) != 0:
        return None
    e_poly = polys.divmod_poly(f, polys.mul(f, beta, f2), m)[1]
    pi = _module_poly_eval(M, x, e_poly)
    if not mods.compose(pi, pi).mats == pi.mats:
        raise AssertionError("Fitting construction broke module idempotency")
    if pi.is_zero() or pi.mats == mods.identity_map(M).mats:
        return None
    return pi


def _find_module_idempotent(M: mods.FDModule, seed: int = 0):
    A = M.algebra
    f = A.field
    basis = mods.hom_modules(M, M)
    D = len(basis)
    if D <= 1:
        return None, True
    rng = random.Random(("decompose-module", seed))
    if f.p and f.p ** D <= EXHAUSTIVE_LIMIT:
        ident = mods.identity_map(M)
        for coeffs in itertools.product(range(f.p), repeat=D):
            if not any(coeffs):
                continue
            x = _combine_module_maps(M, basis, [f.of(c) for c in coeffs])
            if mods.compose(x, x).mats != x.mats:
                continue
            if x.is_zero() or x.mats == ident.mats:
                continue
            return x, True
        return None, True
    structured = list(basis)
    for i in range(D):
        for j in range(D):
            if len(structured) >= TRIAL_BUDGET // 2:
                break
            if i < j:
                structured.append(mods.map_add(basis[i], basis[j]))
            if i != j:
                structured.append(mods.compose(basis[i], basis[j]))
    tried = 0
    for x in structured:
        tried += 1
        pi = _module_fitting(M, x, rng)
        if pi is not None:
            return pi, True
    while tried < TRIAL_BUDGET:
        tried += 1
        if f.p:
            coeffs = [f.of(rng.randrange(f.p)) for _ in range(D)]
        else:
            coeffs = [f.of(rng.randint(-3, 3)) for _ in range(D)]
        x = _combine_module_maps(M, basis, coeffs)
        pi = _module_fitting(M, x, rng)
        if pi is not None:
            return pi, True
    return None, False


def _combine_module_maps(M, basis, coeffs):
    f = M.algebra.field
    mats = [linalg.zeros(f, M.dims[v], M.dims[v])
            for v in range(M.algebra.n_vertices)]
    for c, b in zip(coeffs, basis):
        if c == f.zero:
            continue
        for v in range(M.algebra.n_vertices):
            for i in range(M.dims[v]):
                for j in range(M.dims[v]):
                    mats[v][i][j] = f.add(mats[v][i][j],
                                          f.mul(c, b.mats[v][i][j]))
    return mods.ModuleMap(M, M, mats, check=False)


def indecomposable_module_summands(M: mods.FDModule, seed: int = 0):
    """([(summand, count)], certified) for a finite-dimensional module."""
    if sum(M.dims) == 0:
        return [], True
    certified = True
    leaves = []
    stack = [M]
    while stack:
        W = stack.pop()
        pi, cert = _find_module_idempotent(W, seed)
        if pi is None:
            leaves.append(W)
            certified = certified and cert
        else:
            Y, _ = mods.image_module(pi)
            Z, _ = mods.kernel_module(pi)
            stack.append(Y)
            stack.append(Z)
    groups = []
    for L in leaves:
        for g in groups:
            if modules_isomorphic(g[0], L, seed=seed)[0]:
                g[1] += 1
                break
        else:
            groups.append([L, 1])
    groups.sort(key=lambda g: (sorted(g[0].dims), g[0].dims))
    return [(g[0], g[1]) for g in groups], certified


def modules_isomorphic(M: mods.FDModule, N: mods.FDModule, seed: int = 0):
    """(bool, certified): search Hom(M, N) for an invertible map."""
    f = M.algebra.field
    if M.dims != N.dims:
        return False, True
    if sum(M.dims) == 0:
        return True, True
    basis = mods.hom_modules(M, N)
    if not basis:
        return False, True
    D = len(basis)

    def invertible(x):
        return all(len(m) == 0 or linalg.rank(f, m) == len(m)
                   for m in x.mats)

    if f.p and f.p ** D <= EXHAUSTIVE_LIMIT:
        for coeffs in itertools.product(range(f.p), repeat=D):
            if not any(coeffs):
                continue
            mats = [linalg.zeros(f, N.dims[v], M.dims[v])
                    for v in range(M.algebra.n_vertices)]
            for c, b in zip(coeffs, basis):
                if not c:
                    continue
                for v in range(M.algebra.n_vertices):
                    for i in range(N.dims[v]):
                        for j in range(M.dims[v]):
                            mats[v][i][j] = f.add(
                                mats[v][i][j], f.mul(f.of(c), b.mats[v][i][j]))
            x = mods.ModuleMap(M, N, mats, check=False)
            if invertible(x):
                return True, True
        return False, True
    rng = random.Random(("module-iso", seed))
    for _ in range(TRIAL_BUDGET):
        if f.p:
            coeffs = [f.of(rng.randrange(f.p)) for _ in range(D)]
        else:
            coeffs = [f.of(rng.randint(-3, 3)) for _ in range(D)]
        mats = [linalg.zeros(f, N.dims[v], M.dims[v])
                for v in range(M.algebra.n_vertices)]
        for c, b in zip(coeffs, basis):
            if c == f.zero:
                continue
            for v in range(M.algebra.n_vertices):
                for i in range(N.dims[v]):
                    for j in range(M.dims[v]):
                        mats[v][i][j] = f.add(mats[v][i][j],
                                              f.mul(c, b.mats[v][i][j]))
        x = mods.ModuleMap(M, N, mats, check=False)
        if invertible(x):
            return True, True
    return False, False
