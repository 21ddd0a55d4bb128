"""Bound quiver algebras kQ/I with exact arithmetic over a Field.

A presentation lists vertices, arrows, relations (integer combinations of
parallel paths, every term of length >= 2), and a length cap.  The basis
of the algebra consists of the path normal forms of length < cap; the
constructor verifies that every path of length cap reduces to zero, i.e.
that the ideal is admissible at the stated cap, and raises otherwise.

Composition is diagrammatic throughout the package: ``p * q`` means
"first p, then q", so a path p: u -> v lives in e_u A e_v and composes
with q: v -> w to a path u -> w.  For homogeneous relations the ideal
span below the cap is computed exactly; for mixed-length relations only
sandwiches whose terms all fit under the cap are used, which can reject
(never silently mangle) presentations that push mixed terms past it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fields import Field
from .linalg import rref


class InputError(ValueError):
    """Malformed presentation or spec file input."""


class AdmissibilityError(ValueError):
    """The relation ideal is not admissible at the stated cap."""


@dataclass(frozen=True)
class Arrow:
    name: str
    source: int
    target: int


@dataclass(frozen=True)
class Presentation:
    """Immutable quiver-with-relations data, vertices/arrows by index."""

    vertices: tuple
    arrows: tuple
    relations: tuple  # each: tuple of (int coeff, tuple of arrow indices)
    cap: int


def presentation(vertices, arrows, relations, cap) -> Presentation:
    """Validate and normalize raw presentation data.

    ``vertices``: iterable of names; ``arrows``: (name, source, target)
    name triples; ``relations``: iterable of [(coeff, [arrow names])].
    """
    vnames = tuple(vertices)
    if len(set(vnames)) != len(vnames):
        raise InputError("duplicate vertex name")
    if not vnames:
        raise InputError("quiver needs at least one vertex")
    vidx = {v: i for i, v in enumerate(vnames)}
    arrs = []
    anames = {}
    for name, s, t in arrows:
        if name in anames or name in vidx:
            raise InputError(f"duplicate or clashing arrow name {name!r}")
        if s not in vidx or t not in vidx:
            raise InputError(f"arrow {name!r} references unknown vertex")
        anames[name] = len(arrs)
        arrs.append(Arrow(name, vidx[s], vidx[t]))
    if cap < 2:
        raise InputError(f"cap must be at least 2, got {cap}")
    rels = []
    for rel in relations:
        terms = []
        ends = None
        for coeff, apath in rel:
            idxs = []
            for a in apath:
                if a not in anames:
                    raise InputError(f"relation uses unknown arrow {a!r}")
                idxs.append(anames[a])
            if len(idxs) < 2:
                raise InputError("relation term shorter than two arrows")
            for x, y in zip(idxs, idxs[1:]):
                if arrs[x].target != arrs[y].source:
                    raise InputError(f"relation term {'*'.join(apath)} is not a path")
            st = (arrs[idxs[0]].source, arrs[idxs[-1]].target)
            if ends is None:
                ends = st
            elif ends != st:
                raise InputError("relation mixes paths with different endpoints")
            if int(coeff) == 0:
                raise InputError("relation term with zero coefficient")
            terms.append((int(coeff), tuple(idxs)))
        if not terms:
            raise InputError("empty relation")
        rels.append(tuple(terms))
    return Presentation(vnames, tuple(arrs), tuple(rels), cap)


class _Path:
    __slots__ = ("source", "target", "arrows")

    def __init__(self, source, target, arrows):
        self.source = source
        self.target = target
        self.arrows = arrows


class Algebra:
    """A bound quiver algebra with a fixed path normal form basis.

    Elements are coefficient tuples over ``basis``; index 0..n_vertices-1
    of the vertex idempotents is exposed through ``e_index``.  The basis
    order is deterministic: by path length, then lexicographically by the
    arrow index sequence (trivial paths by vertex index).
    """

    def __init__(self, field: Field, pres: Presentation):
        self.field = field
        self.presentation = pres
        self.vertices = pres.vertices
        self.arrows = pres.arrows
        self.cap = pres.cap
        self._build()

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    def _enumerate_paths(self):
        arrows = self.arrows
        paths = [_Path(v, v, ()) for v in range(len(self.vertices))]
        frontier = list(paths)
        for _ in range(self.cap):
            nxt = []
            for p in frontier:
                for ai, a in enumerate(arrows):
                    if a.source == p.target:
                        nxt.append(_Path(p.source, a.target, p.arrows + (ai,)))
            nxt.sort(key=lambda q: q.arrows)
            paths.extend(nxt)
            frontier = nxt
        return paths

    def _build(self):
        field = self.field
        pres = self.presentation
        work = self._enumerate_paths()  # all paths of length <= cap
        index = {}
        for i, p in enumerate(work):
            key = p.arrows if p.arrows else ("e", p.source)
            index[key] = i
        n_work = len(work)

        # ideal span: sandwiches p * rel * q whose terms all stay under the cap
        rows = []
        for rel in pres.relations:
            rlen = {len(arrs) for _, arrs in rel}
            src = self.arrows[rel[0][1][0]].source
            tgt = self.arrows[rel[0][1][-1]].target
            for p in work:
                if p.target != src:
                    continue
                for q in work:
                    if q.source != tgt:
                        continue
                    outer = len(p.arrows) + len(q.arrows)
                    if outer + max(rlen) > self.cap:
                        continue
                    vec = [field.zero] * n_work
                    for coeff, arrs in rel:
                        full = p.arrows + arrs + q.arrows
                        j = index[full]
                        vec[j] = field.add(vec[j], field.of(coeff))
                    rows.append(vec)

        # echelon with longest paths first, so pivots rewrite long into short
        order = sorted(range(n_work), key=lambda i: (-len(work[i].arrows), work[i].arrows))
        pos_of = {w: c for c, w in enumerate(order)}
        perm_rows = [[row[order[c]] for c in range(n_work)] for row in rows]
        R, pivcols = rref(field, perm_rows) if perm_rows else ([], [])
        pivot_of = {order[c]: r for r, c in enumerate(pivcols)}
        pivset = set(order[c] for c in pivcols)

        def normal_form_work(i):
            # residue of work path i in W-coordinates
            if i not in pivot_of:
                v = [field.zero] * n_work
                v[i] = field.one
                return v
            row = R[pivot_of[i]]
            v = [field.zero] * n_work
            c0 = pos_of[i]
            for c in range(c0 + 1, n_work):
                if row[c] != field.zero:
                    v[order[c]] = field.neg(row[c])
            return v

        nf_work = [normal_form_work(i) for i in range(n_work)]

        for i, p in enumerate(work):
            if len(p.arrows) == self.cap:
                if any(x != field.zero for x in nf_work[i]):
                    label = "*".join(self.arrows[a].name for a in p.arrows)
                    raise AdmissibilityError(
                        f"ideal not admissible at cap {self.cap}: "
                        f"path {label} has nonzero normal form"
                    )

        basis_work = [i for i in range(n_work)
                      if i not in pivset and len(work[i].arrows) < self.cap]
        self.basis = [work[i] for i in basis_work]
        self.dim = len(self.basis)
        compress = {w: b for b, w in enumerate(basis_work)}

        def to_basis(vec):
            out = [field.zero] * self.dim
            for w, x in enumerate(vec):
                if x != field.zero:
                    if w not in compress:
                        raise AdmissibilityError(
                            "normal form escapes the basis; presentation rejected")
                    out[compress[w]] = x
            return tuple(out)

        nf = [to_basis(v) for v in nf_work]

        self.e_index = [compress[index[("e", v)]] for v in range(self.n_vertices)]
        self.arrow_index = [compress[index[(ai,)]] for ai in range(len(self.arrows))]

        # multiplication table on basis paths
        zero_elem = tuple([field.zero] * self.dim)
        table = []
        for bi, p in enumerate(self.basis):
            row = []
            for bj, q in enumerate(self.basis):
                if p.target != q.source:
                    row.append(zero_elem)
                    continue
                total = len(p.arrows) + len(q.arrows)
                if total > self.cap:
                    # cap paths reduce to zero, so longer concatenations do too
                    row.append(zero_elem)
                    continue
                key = p.arrows + q.arrows
                if not key:
                    key = ("e", p.source)
                row.append(nf[index[key]])
            table.append(row)
        self.table = table
        self.zero_elem = zero_elem

        by_st = {}
        for b, p in enumerate(self.basis):
            by_st.setdefault((p.source, p.target), []).append(b)
        self.paths_by_st = by_st

        self._assert_associative()

    def _assert_associative(self):
        units = [self.unit(b) for b in range(self.dim)]
        for i in range(self.dim):
            for j in range(self.dim):
                ij = self.table[i][j]
                for k in range(self.dim):
                    left = self.mul(ij, units[k])
                    right = self.mul(units[i], self.table[j][k])
                    if left != right:
                        raise AssertionError(
                            f"multiplication table not associative at {(i, j, k)}")

    # -- element helpers ---------------------------------------------------

    def unit(self, b: int):
        """Basis path b as an element."""
        v = [self.field.zero] * self.dim
        v[b] = self.field.one
        return tuple(v)

    def e(self, v: int):
        return self.unit(self.e_index[v])

    def zero(self):
        return self.zero_elem

    def add(self, x, y):
        f = self.field
        return tuple(f.add(a, b) for a, b in zip(x, y))

    def sub(self, x, y):
        f = self.field
        return tuple(f.sub(a, b) for a, b in zip(x, y))

    def neg(self, x):
        f = self.field
        return tuple(f.neg(a) for a in x)

    def scale(self, c, x):
        f = self.field
        return tuple(f.mul(c, a) for a in x)

    def mul(self, x, y):
        f = self.field
        acc = [f.zero] * self.dim
        for i, xi in enumerate(x):
            if xi == f.zero:
                continue
            row = self.table[i]
            for j, yj in enumerate(y):
                if yj == f.zero:
                    continue
                c = f.mul(xi, yj)
                for k, t in enumerate(row[j]):
                    if t != f.zero:
                        acc[k] = f.add(acc[k], f.mul(c, t))
        return tuple(acc)

    def is_zero(self, x) -> bool:
        z = self.field.zero
        return all(a == z for a in x)

    def path_label(self, b: int) -> str:
        p = self.basis[b]
        if not p.arrows:
            return f"e_{self.vertices[p.source]}"
        return "*".join(self.arrows[a].name for a in p.arrows)

    def elem_label(self, x) -> str:
        f = self.field
        parts = []
        for b, c in enumerate(x):
            if c == f.zero:
                continue
            if c == f.one:
                parts.append(self.path_label(b))
            else:
                parts.append(f"{c}*{self.path_label(b)}")
        return " + ".join(parts) if parts else "0"

    def coeff_of_idempotent(self, x, v: int):
        """Coefficient of e_v in x (the 'scalar part' at vertex v)."""
        return x[self.e_index[v]]

    # -- derived structure -------------------------------------------------

    def cartan_matrix(self):
        """C[i][j] = dim Hom(P(i), P(j)) = number of basis paths j -> i."""
        n = self.n_vertices
        C = [[0] * n for _ in range(n)]
        for p in self.basis:
            C[p.target][p.source] += 1
        return C

    def opposite(self) -> "Algebra":
        """The opposite algebra, sharing basis labels with arrows reversed."""
        pres = self.presentation
        arrows = tuple(Arrow(a.name, a.target, a.source) for a in pres.arrows)
        rels = tuple(
            tuple((c, tuple(reversed(arrs))) for c, arrs in rel)
            for rel in pres.relations
        )
        op_pres = Presentation(pres.vertices, arrows, rels, pres.cap)
        op = Algebra.__new__(Algebra)
        op.field = self.field
        op.presentation = op_pres
        op.vertices = pres.vertices
        op.arrows = arrows
        op.cap = pres.cap
        op.basis = [_Path(p.target, p.source, tuple(reversed(p.arrows)))
                    for p in self.basis]
        op.dim = self.dim
        op.e_index = list(self.e_index)
        op.arrow_index = list(self.arrow_index)
        op.table = [[self.table[j][i] for j in range(self.dim)]
                    for i in range(self.dim)]
        op.zero_elem = self.zero_elem
        by_st = {}
        for b, p in enumerate(op.basis):
            by_st.setdefault((p.source, p.target), []).append(b)
        op.paths_by_st = by_st
        op._assert_associative()
        return op

    def block_paths(self, u: int, v: int):
        """Basis indices of e_u A e_v, i.e. paths u -> v."""
        return self.paths_by_st.get((u, v), [])

    def __repr__(self):
        return (f"Algebra({len(self.vertices)} vertices, {len(self.arrows)} arrows, "
                f"dim {self.dim} over {self.field!r})")
