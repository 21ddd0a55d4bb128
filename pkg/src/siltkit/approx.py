"""add(T)-approximations, in the homotopy category and for modules.

A left approximation of X is a map f: X -> M with M a finite sum of
summands of T such that every map X -> M' with M' in add(T) factors
through f up to homotopy.  Stacking a basis of Hom(X, T_j) over all
summands T_j always works; we then greedily drop components whose
factoring job the remaining ones still do, which keeps cones small
without chasing literal minimality.

Right approximations are the mirror (maps M -> X, factoring on the
other side).  The module-level version is the same construction in
mod R, with plain linear algebra instead of homotopy classes.
"""

from __future__ import annotations

from . import linalg
from . import modules as mods
from .algebra import InputError
from .complexes import (ProjComplex, direct_sum, sum_inclusion_maps,
                        zero_complex)
from .decompose import indecomposable_summands
from .homs import ChainMap, compose_maps, hom_basis, hom_system, map_add, zero_map
from .minimize import minimize


class HomQuotient:
    """Hom_K(X, Y[i]) with explicit coordinates modulo homotopy."""

    def __init__(self, X: ProjComplex, Y: ProjComplex, i: int = 0):
        self.sys = hom_system(X, Y, i)
        self.reps = self.sys.basis_vectors()

    @property
    def dim(self) -> int:
        return len(self.reps)

    def maps(self):
        return [self.sys.vector_to_map(v) for v in self.reps]

    def coords(self, fmap: ChainMap):
        """Coordinates of a strict chain map in the rep basis.

        Well defined because the reps are independent modulo the
        boundary columns; the boundary part of the solution is junk and
        is dropped.
        """
        f = self.sys.algebra.field
        vec = self.sys.map_to_vector(fmap)
        if not self.reps:
            if any(x != f.zero for x in vec) and not self.sys.is_boundary(fmap):
                raise InputError("map lies outside the computed hom space")
            return []
        cols = list(self.sys.boundary_cols) + list(self.reps)
        sol = linalg.solve(f, linalg.transpose(cols), vec)
        if sol is None:
            raise InputError("map lies outside the computed hom space")
        return sol[len(self.sys.boundary_cols):]


class AddTarget:
    """T presented through parts whose finite sums exhaust add(T).

    For a genuine T the parts are its indecomposable summands (one per
    isomorphism class, via a minimized decomposition).  A truncated T
    is kept whole: approximating against the single part T is still a
    valid, just bulkier, choice.  ``certified`` records whether the
    splitting into parts was proved complete.
    """

    def __init__(self, total: ProjComplex, parts, certified: bool):
        self.algebra = total.algebra
        self.total = total
        self.parts = tuple(parts)
        self.certified = certified
        self._end = {}

    def end_basis(self, i: int, j: int):
        """Basis of Hom_K(parts[i], parts[j]), cached."""
        if (i, j) not in self._end:
            self._end[(i, j)] = hom_basis(self.parts[i], self.parts[j])
        return self._end[(i, j)]

    def is_empty(self) -> bool:
        return not self.parts


def add_target(T: ProjComplex, seed: int = 0) -> AddTarget:
    if T.genuine:
        m = minimize(T)
        if m.is_structurally_zero():
            return AddTarget(m, [], True)
        groups, certified = indecomposable_summands(m, seed=seed)
        return AddTarget(m, [g for g, _ in groups], certified)
    return AddTarget(T, [T], True)


def add_target_from_parts(total: ProjComplex, parts,
                          certified: bool) -> AddTarget:
    return AddTarget(total, list(parts), certified)


def _assemble_sum(A, parts_used):
    if not parts_used:
        return zero_complex(A), None, None
    M = direct_sum(parts_used)
    incls, projs = sum_inclusion_maps(parts_used, M)
    return M, incls, projs


def _spans(field, total_dims, vecs_by_cand, kept):
    """Do the kept candidates' composite classes span every Hom(.., T_j)?"""
    for j, want in total_dims.items():
        if want == 0:
            continue
        ech = linalg.Echelon(field, want)
        got = 0
        for ci in kept:
            for v in vecs_by_cand[ci].get(j, ()):
                if ech.add(v):
                    got += 1
            if got == want:
                break
        if got < want:
            return False
    return True


def _prune(field, total_dims, vecs_by_cand, n_cands):
    kept = list(range(n_cands))
    for drop in range(n_cands - 1, -1, -1):
        if len(kept) == 1:
            break
        trial = [c for c in kept if c != drop]
        if _spans(field, total_dims, vecs_by_cand, trial):
            kept = trial
    return kept


def left_approximation(X: ProjComplex, target: AddTarget):
    """(M, f: X -> M, used part indices); M in add(T), f a left approximation."""
    A = target.algebra
    field = A.field
    if target.is_empty() or X.is_structurally_zero():
        M = zero_complex(A)
        return M, zero_map(X, M), []

    quotients = [HomQuotient(X, P) for P in target.parts]
    cands = []
    for pi, q in enumerate(quotients):
        for fmap in q.maps():
            cands.append((pi, fmap))
    if not cands:
        M = zero_complex(A)
        return M, zero_map(X, M), []

    total_dims = {j: q.dim for j, q in enumerate(quotients)}
    vecs_by_cand = []
    for pi, fmap in cands:
        per_target = {}
        for j, q in enumerate(quotients):
            if q.dim == 0:
                continue
            per_target[j] = [q.coords(compose_maps(g, fmap))
                             for g in target.end_basis(pi, j)]
        vecs_by_cand.append(per_target)
    kept = _prune(field, total_dims, vecs_by_cand, len(cands))

    used = [cands[ci][0] for ci in kept]
    parts_used = [target.parts[p] for p in used]
    M, incls, _ = _assemble_sum(A, parts_used)
    f = zero_map(X, M)
    for slot, ci in enumerate(kept):
        f = map_add(f, compose_maps(incls[slot], cands[ci][1]))
    return M, f, used


def right_approximation(X: ProjComplex, target: AddTarget):
    """(M, f: M -> X, used part indices); the mirror construction."""
    A = target.algebra
    field = A.field
    if target.is_empty() or X.is_structurally_zero():
        M = zero_complex(A)
        return M, zero_map(M, X), []

    quotients = [HomQuotient(P, X) for P in target.parts]
    cands = []
    for pi, q in enumerate(quotients):
        for fmap in q.maps():
            cands.append((pi, fmap))
    if not cands:
        M = zero_complex(A)
        return M, zero_map(M, X), []

    total_dims = {j: q.dim for j, q in enumerate(quotients)}
    vecs_by_cand = []
    for pi, fmap in cands:
        per_source = {}
        for j, q in enumerate(quotients):
            if q.dim == 0:
                continue
            # factor maps T_j -> X through f by precomposition
            per_source[j] = [q.coords(compose_maps(fmap, g))
                             for g in target.end_basis(j, pi)]
        vecs_by_cand.append(per_source)
    kept = _prune(field, total_dims, vecs_by_cand, len(cands))

    used = [cands[ci][0] for ci in kept]
    parts_used = [target.parts[p] for p in used]
    M, _, projs = _assemble_sum(A, parts_used)
    f = zero_map(M, X)
    for slot, ci in enumerate(kept):
        f = map_add(f, compose_maps(cands[ci][1], projs[slot]))
    return M, f, used


# -- module level ----------------------------------------------------------


def _flat_module_map(fmap: mods.ModuleMap):
    out = []
    for m in fmap.mats:
        for row in m:
            out.extend(row)
    return out


def module_left_approximation(X: mods.FDModule, parts):
    """(M, f: X -> M, used) with M a sum of the given modules.

    Every map X -> N with N in add(sum of parts) factors through f.
    """
    A = X.algebra
    field = A.field
    bases = [mods.hom_modules(X, P) for P in parts]
    cands = []
    for pi, basis in enumerate(bases):
        for fmap in basis:
            cands.append((pi, fmap))
    if not cands:
        M = mods.zero_module(A)
        return M, mods.zero_map(X, M), []

    end = {}
    for pi in set(p for p, _ in cands):
        for j in range(len(parts)):
            end[(pi, j)] = mods.hom_modules(parts[pi], parts[j])
    total_dims = {j: len(b) for j, b in enumerate(bases)}
    flat_basis = {j: [_flat_module_map(b) for b in bases[j]]
                  for j in range(len(parts)) if bases[j]}

    def coords(j, fmap):
        vec = _flat_module_map(fmap)
        sol = linalg.solve(field, linalg.transpose(flat_basis[j]), vec)
        if sol is None:
            raise InputError("module map outside its hom space")
        return sol

    vecs_by_cand = []
    for pi, fmap in cands:
        per_target = {}
        for j in range(len(parts)):
            if total_dims[j] == 0:
                continue
            per_target[j] = [coords(j, mods.compose(g, fmap))
                             for g in end[(pi, j)]]
        vecs_by_cand.append(per_target)
    kept = _prune(field, total_dims, vecs_by_cand, len(cands))

    used = [cands[ci][0] for ci in kept]
    M, incls, _ = mods.direct_sum_modules([parts[p] for p in used])
    f = mods.zero_map(X, M)
    for slot, ci in enumerate(kept):
        f = mods.map_add(f, mods.compose(incls[slot], cands[ci][1]))
    return M, f, used
