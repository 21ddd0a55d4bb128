"""Seeded generators shared by the test modules."""

from siltkit.algebra import InputError
from siltkit.complexes import ProjComplex, zero_complex


def random_complex(A, rng, max_len=2, max_copies=2, lo_range=(-2, 0),
                   radical_only=True):
    """A random genuine complex; retries until the differential squares.

    Entries are random combinations of radical paths (idempotents too
    when radical_only is off, so non-minimal complexes appear as well).
    """
    nb = len(A.basis)
    for _ in range(200):
        lo = rng.randint(*lo_range)
        n_terms = rng.randint(1, max_len + 1)
        mults = []
        for _ in range(n_terms):
            mults.append(tuple(rng.randint(0, max_copies)
                               for _ in range(A.n_vertices)))
        while mults and sum(mults[0]) == 0:
            mults.pop(0)
        while mults and sum(mults[-1]) == 0:
            mults.pop()
        if not mults:
            return zero_complex(A)

        def copies(m):
            out = []
            for v, c in enumerate(m):
                out.extend([v] * c)
            return out

        diffs = []
        for j in range(len(mults) - 1):
            rows = copies(mults[j + 1])
            cols = copies(mults[j])
            mat = []
            for vr in rows:
                row = []
                for uc in cols:
                    entry = [A.field.zero] * nb
                    for b in A.block_paths(vr, uc):
                        if not radical_only or A.basis[b].arrows:
                            if rng.random() < 0.5:
                                entry[b] = A.field.of(rng.randrange(1, A.field.p))
                    row.append(entry)
                mat.append(row)
            diffs.append(mat)
        try:
            return ProjComplex(A, lo, mults, diffs, genuine=True)
        except InputError:
            continue
    raise RuntimeError("no valid random complex after 200 tries")


def complex_kdim(X) -> int:
    """Total dimension over the base field."""
    A = X.algebra
    total = 0
    for k in range(X.lo, X.hi + 1):
        for v, c in enumerate(X.mult(k)):
            pv = sum(len(ps) for (s, t), ps in A.paths_by_st.items() if s == v)
            total += c * pv
    return total
