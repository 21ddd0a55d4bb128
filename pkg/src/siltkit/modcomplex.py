"""Bounded complexes of modules, dualization, and resolution back into
complexes of projectives.

Dualizing a complex of projectives over A gives a complex of
(usually nonprojective) modules over the opposite algebra, so the
k-dual lands here rather than in a ProjComplex.  resolve_modcomplex
turns such a complex back into a quasi-isomorphic ProjComplex by
induction on the bottom stalk: a complex M with bottom term M^b is the
cone of the chain map w: M^b[-(b+1)] -> sigma_{>b} M induced by d^b,
so a projective resolution of the whole complex is the cone of a lift
g of w through the comparison map of the already-resolved upper part.
Because the stalk resolution lives in degrees <= b+1 and the upper
part in degrees >= b+1, the homotopy correction in the lift vanishes
identically and g is found by solving a strict linear system.
"""

from __future__ import annotations

from .algebra import Algebra, InputError
from .complexes import (ProjComplex, WindowError, cone, shift, zero_complex,
                        _part_positions)
from .homs import HomSystem, ChainMap, zero_map
from .modules import (FDModule, ModuleMap, compose, dualize_module,
                      proj_sum_map_from_alg, zero_module)
from .resolved import ResolvedModule
from . import linalg


class ModComplex:
    """A bounded complex of finite-dimensional modules over one algebra."""

    def __init__(self, algebra: Algebra, lo: int, terms, maps, check=True):
        self.algebra = algebra
        self.lo = lo
        self.terms = list(terms)
        self.maps = list(maps)
        if check:
            self.validate()

    @property
    def hi(self) -> int:
        return self.lo + len(self.terms) - 1

    def degrees(self):
        return range(self.lo, self.hi + 1)

    def term(self, k: int) -> FDModule:
        if self.lo <= k <= self.hi:
            return self.terms[k - self.lo]
        return zero_module(self.algebra)

    def dmap(self, k: int):
        """The differential term(k) -> term(k+1), or None outside."""
        if self.lo <= k < self.hi:
            return self.maps[k - self.lo]
        return None

    def validate(self):
        if len(self.maps) != max(0, len(self.terms) - 1):
            raise InputError("differential count does not match terms")
        for i, m in enumerate(self.maps):
            if m.src.dims != self.terms[i].dims \
                    or m.dst.dims != self.terms[i + 1].dims:
                raise InputError(f"differential {i} has mismatched terms")
            m.validate()
        for i in range(len(self.maps) - 1):
            if not compose(self.maps[i + 1], self.maps[i]).is_zero():
                raise InputError(
                    f"d^2 != 0 at degree {self.lo + i}")

    def total_dim(self) -> int:
        return sum(t.total_dim for t in self.terms)

    def homology(self, k: int):
        """Per-vertex homology dimensions at degree k."""
        A = self.algebra
        f = A.field
        T = self.term(k)
        din, dout = self.dmap(k - 1), self.dmap(k)
        out = []
        for v in range(A.n_vertices):
            n = T.dims[v]
            rk_out = linalg.rank(f, dout.mats[v]) if dout is not None else 0
            rk_in = linalg.rank(f, din.mats[v]) if din is not None else 0
            out.append(n - rk_out - rk_in)
        return tuple(out)

    def min_homology_degree(self):
        for k in self.degrees():
            if any(self.homology(k)):
                return k
        return None

    def is_exact(self) -> bool:
        return self.min_homology_degree() is None

    def __repr__(self):
        dims = {k: tuple(self.term(k).dims) for k in self.degrees()}
        return f"ModComplex({dims})"


def mod_stalk(M: FDModule, degree: int = 0) -> ModComplex:
    return ModComplex(M.algebra, degree, [M], [], check=False)


def trim_modcomplex(MC: ModComplex) -> ModComplex:
    lo, hi = MC.lo, MC.hi
    while lo <= hi and MC.term(lo).total_dim == 0:
        lo += 1
    while hi >= lo and MC.term(hi).total_dim == 0:
        hi -= 1
    if hi < lo:
        return ModComplex(MC.algebra, 0, [zero_module(MC.algebra)], [],
                          check=False)
    return ModComplex(MC.algebra, lo,
                      [MC.term(k) for k in range(lo, hi + 1)],
                      [MC.dmap(k) for k in range(lo, hi)], check=False)


def from_proj_complex(X: ProjComplex) -> ModComplex:
    """The underlying complex of modules of a stored window."""
    terms = []
    maps = []
    degs = list(X.degrees())
    for k in degs:
        terms.append(X.term_sum(k).module)
    for k in degs[:-1]:
        maps.append(proj_sum_map_from_alg(X.term_sum(k), X.term_sum(k + 1),
                                          X.d(k)))
    return ModComplex(X.algebra, X.lo, terms, maps, check=False)


def dualize_complex(T: ProjComplex, op: Algebra) -> ModComplex:
    """The k-dual D(T) as a complex of modules over the opposite algebra.

    D(T)^k = D(T^{-k}) and the differential at k is the transpose of
    T's differential into degree -k.  No signs are introduced; the
    result is isomorphic to any of the signed conventions.
    """
    if not T.genuine:
        raise WindowError("dualizing needs the full object")
    A = T.algebra
    lo, hi = -T.hi, -T.lo
    terms = []
    for k in range(lo, hi + 1):
        terms.append(dualize_module(T.term_sum(-k).module, op))
    maps = []
    for k in range(lo, hi):
        lin = proj_sum_map_from_alg(T.term_sum(-k - 1), T.term_sum(-k),
                                    T.d(-k - 1))
        # transpose of an empty matrix loses the row count, so rebuild
        # the 0-column blocks from the source dimensions explicitly
        mats = [linalg.transpose(m) if m else
                [[] for _ in range(lin.src.dims[v])]
                for v, m in enumerate(lin.mats)]
        maps.append(ModuleMap(terms[k - lo], terms[k - lo + 1], mats,
                              check=False))
    return trim_modcomplex(ModComplex(op, lo, terms, maps, check=True))


# -- resolving a module complex by projectives -----------------------------


def _rebased_cover(E: ProjComplex, k: int, rm: ResolvedModule) -> ModuleMap:
    """The augmentation of the stalk resolution, on E's own term module."""
    term = E.term_sum(k)
    if list(term.copies) != list(rm.psums[0].copies):
        raise AssertionError("resolution slice reordered its copies")
    cov = rm.covers[0]
    return ModuleMap(term.module, cov.dst,
                     [linalg.copy_matrix(m) for m in cov.mats], check=False)


def _cone_part_map(A: Algebra, cone_sum, part_sum, positions, mm: ModuleMap,
                   target: FDModule) -> ModuleMap:
    """Transport a map off one cone summand to the whole cone term."""
    f = A.field
    mats = [linalg.zeros(f, target.dims[w], cone_sum.module.dims[w])
            for w in range(A.n_vertices)]
    where = {flat: i for i, flat in enumerate(positions)}
    for w in range(A.n_vertices):
        for j, (c, b) in enumerate(cone_sum.layout[w]):
            i = where.get(c)
            if i is None:
                continue
            src_col = part_sum.flat[w][(i, b)]
            for r in range(target.dims[w]):
                mats[w][r][j] = mm.mats[w][r][src_col]
    return ModuleMap(cone_sum.module, target, mats, check=False)


def _add_module_maps(a: ModuleMap, b: ModuleMap) -> ModuleMap:
    f = a.src.algebra.field
    mats = [[[f.add(x, y) for x, y in zip(ra, rb)]
             for ra, rb in zip(ma, mb)] for ma, mb in zip(a.mats, b.mats)]
    return ModuleMap(a.src, a.dst, mats, check=False)


def _solve_lift(E: ProjComplex, P: ProjComplex, q_top: ModuleMap,
                target: ModuleMap, k_top: int) -> ChainMap:
    """A strict chain map g: E -> P with q_top . g^{k_top} = target."""
    if E.is_structurally_zero():
        return zero_map(E, P)
    sys = HomSystem(E, P)
    vecs = sys.cycle_vectors()
    f = E.algebra.field
    cols = []
    for v in vecs:
        g = sys.vector_to_map(v)
        lin = proj_sum_map_from_alg(E.term_sum(k_top), P.term_sum(k_top),
                                    g.component(k_top))
        comp = compose(q_top, lin)
        cols.append([x for m in comp.mats for row in m for x in row])
    rhs = [x for m in target.mats for row in m for x in row]
    if not cols:
        if any(x != f.zero for x in rhs):
            raise WindowError("no strict lift exists in the stored window")
        return zero_map(E, P)
    sol = linalg.solve(f, linalg.transpose(cols), rhs)
    if sol is None:
        raise WindowError("no strict lift exists in the stored window")
    vec = [f.zero] * len(vecs[0])
    for c, bv in zip(sol, vecs):
        if c != f.zero:
            for j, val in enumerate(bv):
                vec[j] = f.add(vec[j], f.mul(c, val))
    return sys.vector_to_map(vec)


def resolve_modcomplex(MC: ModComplex, depth: int) -> ProjComplex:
    """A complex of projectives quasi-isomorphic to MC.

    Genuine when every term has finite projective dimension inside the
    working window; otherwise truncated, with the homology promise set
    to MC's lowest homology degree.  Homology agreement over the whole
    certified window is asserted before returning.
    """
    if depth < 1:
        raise InputError("resolution depth must be >= 1")
    A = MC.algebra
    MC = trim_modcomplex(MC)
    if MC.total_dim() == 0:
        return zero_complex(A)
    inner = (MC.hi - MC.lo) + depth + 2

    rm = ResolvedModule(MC.term(MC.hi))
    P = shift(rm.complex(inner), -MC.hi)
    q = {MC.hi: _rebased_cover(P, MC.hi, rm)}

    for k in range(MC.hi - 1, MC.lo - 1, -1):
        Mk = MC.term(k)
        rm = ResolvedModule(Mk)
        E = shift(rm.complex(inner), -(k + 1))
        eps = _rebased_cover(E, k + 1, rm)
        w_eps = compose(MC.dmap(k), eps)
        g = _solve_lift(E, P, q[k + 1], w_eps, k + 1)
        C = cone(g)
        q_new = {}
        for j in C.degrees():
            if not (MC.lo <= j <= MC.hi):
                continue
            cs = C.term_sum(j)
            pos_E, pos_P = _part_positions(A, [E.mult(j + 1), P.mult(j)])
            tgt = MC.term(j)
            part = None
            if j == k:
                part = _cone_part_map(A, cs, E.term_sum(j + 1), pos_E, eps, tgt)
            if j in q:
                qj = _cone_part_map(A, cs, P.term_sum(j), pos_P, q[j], tgt)
                part = qj if part is None else _add_module_maps(part, qj)
            if part is not None:
                q_new[j] = part
        P, q = C, q_new

    if not P.genuine:
        vlo = MC.min_homology_degree()
        if vlo is None:
            vlo = P.hi + 1
        P = ProjComplex(A, P.lo, P.mults, P.diffs, genuine=False, vlo=vlo,
                        check=False)
        if not P.window_ok:
            raise WindowError("resolution window too shallow for its promise")
    lo_check = P.lo if P.genuine else P.lo + 1
    for j in range(max(lo_check, MC.lo - depth), MC.hi + 1):
        if P.homology(j) != MC.homology(j):
            raise AssertionError(f"homology mismatch at degree {j}")
    return P


def resolve_dual(T: ProjComplex, op: Algebra, depth: int) -> ProjComplex:
    """Projective presentation of D(T) over the opposite algebra."""
    return resolve_modcomplex(dualize_complex(T, op), depth)
