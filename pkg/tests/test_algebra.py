"""Path algebra construction on the bundled presentations.

The dimension and Cartan fixtures below are hand counts of reduced
paths: for the linear quivers every path u -> v with u <= v survives,
for the bounded cyclic ones the relations cut the list off.
"""

import pytest

from siltkit.algebra import AdmissibilityError, Arrow, InputError, presentation
from siltkit.corpus import NAMES, load
from siltkit.fields import GF2

DIMS = {
    "a2": 3,           # e1, e2, a
    "a3": 6,           # three idempotents, two arrows, one length-2 path
    "dualnumbers": 2,  # e, x
    "commsquare": 9,   # four idempotents, four arrows, ac identified with bd
    "nakayama2": 6,    # e1, e2, a, b, ab, ba
}


def test_basis_dimensions():
    for name in NAMES:
        assert load(name).dim == DIMS[name]


def test_a2_structure():
    A = load("a2")
    assert A.n_vertices == 2
    assert [a.name for a in A.arrows] == ["a"]
    assert A.arrows[0].source == 0 and A.arrows[0].target == 1
    # paths 0 -> 1 is exactly the arrow, no path runs 1 -> 0
    assert len(A.block_paths(0, 1)) == 1
    assert A.block_paths(1, 0) == []


def test_cartan_matrices():
    assert load("a2").cartan_matrix() == [[1, 0], [1, 1]]
    assert load("dualnumbers").cartan_matrix() == [[2]]
    assert load("nakayama2").cartan_matrix() == [[2, 1], [1, 2]]
    assert load("a3").cartan_matrix() == [[1, 0, 0], [1, 1, 0], [1, 1, 1]]


def test_unit_multiplication():
    A = load("nakayama2")
    ab = A.mul(A.unit(A.arrow_index[0]), A.unit(A.arrow_index[1]))
    assert not A.is_zero(ab)
    # aba is killed by the defining relation
    aba = A.mul(ab, A.unit(A.arrow_index[0]))
    assert A.is_zero(aba)


def test_idempotents_decompose_one():
    for name in NAMES:
        A = load(name)
        one = A.zero()
        for v in range(A.n_vertices):
            one = A.add(one, A.e(v))
        for b in range(A.dim):
            x = A.unit(b)
            assert A.mul(one, x) == x
            assert A.mul(x, one) == x


def test_opposite_is_an_involution():
    for name in NAMES:
        A = load(name)
        op = A.opposite()
        assert op.dim == A.dim
        assert [(a.source, a.target) for a in op.arrows] == \
               [(a.target, a.source) for a in A.arrows]
        back = op.opposite()
        assert back.table == A.table
        opC = op.cartan_matrix()
        C = A.cartan_matrix()
        assert opC == [list(row) for row in zip(*C)]


def test_multiplication_reverses_in_opposite():
    A = load("nakayama2")
    op = A.opposite()
    a, b = A.arrow_index[0], A.arrow_index[1]
    assert op.mul(op.unit(b), op.unit(a)) == A.mul(A.unit(a), A.unit(b))


def test_admissibility_guard():
    # a loop with no bounding relation has unbounded powers
    with pytest.raises(AdmissibilityError):
        presentation(("v",), (Arrow("x", 0, 0),), (), cap=None)


def test_bad_arrow_endpoints_rejected():
    with pytest.raises(InputError):
        presentation(("u",), (Arrow("x", 0, 1),), (), cap=2)


def test_cap_truncates_path_lengths():
    pres = presentation(("v",), (Arrow("x", 0, 0),),
                        (((1, (0, 0)),),), cap=4)
    A_alg = pres and None
    from siltkit.algebra import Algebra
    A = Algebra(GF2, pres)
    assert A.dim == 2
    x = A.unit(A.arrow_index[0])
    assert A.is_zero(A.mul(x, x))
