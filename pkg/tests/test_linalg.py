import random

from siltkit import linalg
from siltkit.fields import GF2, QQ, Field

F3 = Field(3)


def test_mat_mul_hand_cases():
    A = [[1, 1], [0, 1]]
    B = [[1, 0], [1, 1]]
    assert linalg.mat_mul(GF2, A, B) == [[0, 1], [1, 1]]
    assert linalg.mat_mul(F3, [[2, 2]], [[2], [2]]) == [[2]]


def test_mat_mul_empty_shapes():
    # 0xN times NxM and the inner-zero case both stay well behaved
    assert linalg.mat_mul(GF2, [], [[1, 0]]) == []
    assert linalg.mat_mul(GF2, [[1], [0]], [[]]) == [[], []]


def test_rank_and_solve_over_f2():
    A = [[1, 0, 1], [0, 1, 1], [1, 1, 0]]
    assert linalg.rank(GF2, A) == 2
    assert linalg.solve(GF2, A, [1, 1, 0]) is not None
    assert linalg.solve(GF2, A, [1, 0, 0]) is None


def test_solve_reproduces_rhs():
    rng = random.Random(7)
    for field in (GF2, F3, QQ):
        for _ in range(40):
            m, n = rng.randrange(1, 5), rng.randrange(1, 5)
            A = [[field.of(rng.randrange(-2, 3)) for _ in range(n)]
                 for _ in range(m)]
            x = [field.of(rng.randrange(-2, 3)) for _ in range(n)]
            b = linalg.mat_vec(field, A, x)
            sol = linalg.solve(field, A, b)
            assert sol is not None
            assert linalg.mat_vec(field, A, sol) == b


def test_invert_round_trip():
    rng = random.Random(11)
    for field in (GF2, F3):
        made = 0
        while made < 25:
            n = rng.randrange(1, 5)
            A = [[field.of(rng.randrange(field.p)) for _ in range(n)]
                 for _ in range(n)]
            if linalg.rank(field, A) < n:
                continue
            made += 1
            B = linalg.invert(field, A)
            assert linalg.mat_mul(field, A, B) == linalg.identity(field, n)
            assert linalg.mat_mul(field, B, A) == linalg.identity(field, n)


def test_echelon_membership():
    ech = linalg.Echelon(GF2, 3)
    assert ech.add([1, 1, 0])
    assert ech.add([0, 1, 1])
    assert not ech.add([1, 0, 1])  # the sum of the first two
    assert ech.add([0, 0, 1])


def test_kernel_basis_spans_kernel():
    A = [[1, 1, 0], [0, 0, 1]]
    ker = linalg.kernel_basis(GF2, A)
    assert len(ker) == 1
    assert ker[0] == [1, 1, 0]
    for v in ker:
        assert linalg.mat_vec(GF2, A, v) == [0, 0]
