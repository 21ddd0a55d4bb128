"""Gaussian elimination of unit differential entries, and isomorphism.

A complex of projectives is minimal when every differential entry lies
in the radical (no unit component).  Cancelling a unit entry between a
degree-k summand and a degree-(k+1) summand of the same vertex is a
homotopy equivalence; iterating yields the minimal model.  On a
truncated complex only entries of d^k with k >= lo + 1 may be cancelled
(the move edits d^{k-1}, which must be stored), so minimality there is
relative to that floor.

Isomorphism testing minimizes both sides, compares multiplicities, then
searches for a strict chain map whose degreewise residue matrices are
invertible; on minimal complexes that is exactly an isomorphism.
"""

from __future__ import annotations

import itertools
import random

from .algebra import InputError
from .complexes import ProjComplex, WindowError
from .homs import strict_chain_maps, compose_maps
from . import linalg


def local_inverse(A, z, v):
    """Inverse of a unit z in the local algebra e_v A e_v."""
    paths = A.block_paths(v, v)
    f = A.field
    L = [[A.mul(z, A.unit(b))[pb] for b in paths] for pb in paths]
    target = [A.e(v)[pb] for pb in paths]
    x = linalg.solve(f, L, target)
    if x is None:
        raise InputError("entry is not invertible in its local algebra")
    out = list(A.zero())
    for c, b in zip(x, paths):
        out[b] = c
    return tuple(out)


def _find_unit(A, copies_k, copies_k1, mat):
    f = A.field
    for c, uc in enumerate(copies_k):
        for r, vr in enumerate(copies_k1):
            if uc == vr:
                z = mat[r][c]
                if A.coeff_of_idempotent(z, uc) != f.zero:
                    return r, c
    return None


def minimize(X: ProjComplex) -> ProjComplex:
    """The minimal model (relative to the truncation floor)."""
    A = X.algebra
    copies = {k: list(X.copies(k)) for k in X.degrees()}
    diffs = {k: [row[:] for row in X.d(k)] for k in range(X.lo, X.hi)}
    floor = X.lo if X.genuine else X.lo + 1

    changed = True
    while changed:
        changed = False
        for k in range(floor, X.hi):
            if k not in diffs:
                continue
            hit = _find_unit(A, copies[k], copies[k + 1], diffs[k])
            if hit is None:
                continue
            r, c = hit
            u = diffs[k][r][c]
            v = copies[k][c]
            uinv = local_inverse(A, u, v)
            old = diffs[k]
            gamma = [old[r][cc] for cc in range(len(copies[k])) if cc != c]
            beta = [old[rr][c] for rr in range(len(copies[k + 1])) if rr != r]
            new = []
            ri = 0
            for rr in range(len(copies[k + 1])):
                if rr == r:
                    continue
                row = []
                ci = 0
                for cc in range(len(copies[k])):
                    if cc == c:
                        continue
                    corr = A.mul(A.mul(beta[ri], uinv), gamma[ci])
                    row.append(A.sub(old[rr][cc], corr))
                    ci += 1
                new.append(row)
                ri += 1
            diffs[k] = new
            if k - 1 in diffs:
                diffs[k - 1] = [row for i, row in enumerate(diffs[k - 1]) if i != c]
            if k + 1 in diffs:
                diffs[k + 1] = [[row[i] for i in range(len(copies[k + 1]))
                                 if i != r] for row in diffs[k + 1]]
            copies[k].pop(c)
            copies[k + 1].pop(r)
            changed = True

    # restore vertex-major copy order inside each degree
    for k in X.degrees():
        order = sorted(range(len(copies[k])), key=lambda i: (copies[k][i], i))
        if order == list(range(len(copies[k]))):
            continue
        copies[k] = [copies[k][i] for i in order]
        if k in diffs:
            diffs[k] = [[row[i] for i in order] for row in diffs[k]]
        if k - 1 in diffs:
            diffs[k - 1] = [diffs[k - 1][i] for i in order]

    lo, hi = X.lo, X.hi
    if X.genuine:
        while lo < hi and not copies[lo]:
            lo += 1
        # keep one degree even if everything cancelled
    while hi > lo and not copies[hi]:
        hi -= 1
    nv = A.n_vertices
    mults = []
    for k in range(lo, hi + 1):
        m = [0] * nv
        for v in copies[k]:
            m[v] += 1
        mults.append(tuple(m))
    dlist = [diffs[k] for k in range(lo, hi)]
    return ProjComplex(A, lo, mults, dlist, X.genuine,
                       None if X.genuine else X.vlo, check=True)


def is_minimal(X: ProjComplex) -> bool:
    A = X.algebra
    floor = X.lo if X.genuine else X.lo + 1
    for k in range(floor, X.hi):
        if _find_unit(A, X.copies(k), X.copies(k + 1), X.d(k)) is not None:
            return False
    return True


def position_support(X: ProjComplex):
    """(lo, hi) of the minimal model's nonzero terms, or None if zero."""
    m = minimize(X)
    degs = [k for k in m.degrees() if sum(m.mult(k))]
    if not degs:
        return None
    return degs[0], degs[-1]


def ktheory_class(X: ProjComplex):
    """Alternating sum of multiplicity vectors: the class in K_0(proj)."""
    nv = X.algebra.n_vertices
    out = [0] * nv
    for k in X.degrees():
        s = 1 if k % 2 == 0 else -1
        for v, c in enumerate(X.mult(k)):
            out[v] += s * c
    return tuple(out)


# -- isomorphism -------------------------------------------------------------


def residue_matrices(fmap, k: int):
    """Per-vertex scalar residues of a chain map component at degree k."""
    src, dst = fmap.src, fmap.dst
    A = src.algebra
    f = A.field
    mat = fmap.component(k)
    out = {}
    for v in range(A.n_vertices):
        rows = [i for i, w in enumerate(dst.copies(k)) if w == v]
        cols = [j for j, w in enumerate(src.copies(k)) if w == v]
        out[v] = [[A.coeff_of_idempotent(mat[i][j], v) for j in cols] for i in rows]
    return out


def _residues_invertible(fmap, degrees) -> bool:
    f = fmap.src.algebra.field
    for k in degrees:
        for v, m in residue_matrices(fmap, k).items():
            n = len(m)
            if n == 0:
                continue
            if len(m[0]) != n or linalg.rank(f, m) != n:
                return False
    return True


def _combo_vector(f, coeffs, vectors):
    n = len(vectors[0])
    out = [f.zero] * n
    for c, vec in zip(coeffs, vectors):
        if c == f.zero:
            continue
        for i, x in enumerate(vec):
            if x != f.zero:
                out[i] = f.add(out[i], f.mul(c, x))
    return out


EXHAUSTIVE_LIMIT = 4096


def is_isomorphic(X: ProjComplex, Y: ProjComplex, seed: int = 0):
    """(verdict, info): whether X and Y are isomorphic in K(proj).

    Both complexes must be genuine.  verdict True comes with a chain map
    certificate; verdict False is definitive when info["exhaustive"] is
    True (multiplicity mismatch, or a full search of the map space) and
    a budget-limited non-answer otherwise.
    """
    if not (X.genuine and Y.genuine):
        raise WindowError("isomorphism testing needs genuine complexes")
    mx, my = minimize(X), minimize(Y)
    degs_x = {k: mx.mult(k) for k in mx.degrees() if sum(mx.mult(k))}
    degs_y = {k: my.mult(k) for k in my.degrees() if sum(my.mult(k))}
    if degs_x != degs_y:
        return False, {"exhaustive": True, "reason": "multiplicity mismatch",
                       "mults": [sorted(degs_x.items()), sorted(degs_y.items())]}
    if not degs_x:
        return True, {"reason": "both zero"}

    maps, sys = strict_chain_maps(mx, my)
    vectors = [sys.map_to_vector(m) for m in maps]
    if not vectors:
        return False, {"exhaustive": True, "reason": "no chain maps at all"}
    f = X.algebra.field
    degrees = sorted(degs_x)

    def test(coeffs):
        vec = _combo_vector(f, coeffs, vectors)
        cand = sys.vector_to_map(vec)
        if _residues_invertible(cand, degrees):
            return cand
        return None

    d = len(vectors)
    if f.p and f.p ** d <= EXHAUSTIVE_LIMIT:
        for coeffs in itertools.product(f.elements(), repeat=d):
            cand = test(coeffs)
            if cand is not None:
                return True, {"certificate": cand, "minimized": (mx, my)}
        return False, {"exhaustive": True, "reason": "no invertible combination"}

    rng = random.Random(("iso", seed))
    for _ in range(300):
        if f.p:
            coeffs = [rng.randrange(f.p) for _ in range(d)]
        else:
            coeffs = [f.of(rng.randint(-3, 3)) for _ in range(d)]
        cand = test(coeffs)
        if cand is not None:
            return True, {"certificate": cand, "minimized": (mx, my)}
    small = list(range(1, f.p)) if f.p else [1, -1, 2, -2]
    for i in range(d):
        for j in range(i, d):
            for ci in small:
                for cj in small if j != i else [0]:
                    coeffs = [f.zero] * d
                    coeffs[i] = f.of(ci)
                    if j != i:
                        coeffs[j] = f.of(cj)
                    cand = test(coeffs)
                    if cand is not None:
                        return True, {"certificate": cand, "minimized": (mx, my)}
    return False, {"exhaustive": False,
                   "reason": "no invertible combination found within budget"}
