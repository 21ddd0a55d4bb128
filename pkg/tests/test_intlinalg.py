import math
import random

from oracles import brute_in_span
from siltkit.intlinalg import in_integer_span, xgcd


def test_xgcd_agrees_with_math_gcd():
    rng = random.Random(3)
    for _ in range(300):
        a = rng.randrange(-40, 41)
        b = rng.randrange(-40, 41)
        g, x, y = xgcd(a, b)
        assert g == math.gcd(a, b)
        assert x * a + y * b == g


def test_span_hand_cases():
    assert in_integer_span([(2, 0), (0, 2)], (2, 2))
    assert not in_integer_span([(2, 0), (0, 2)], (1, 0))
    assert in_integer_span([(1, 1)], (3, 3))
    assert not in_integer_span([(1, 1)], (1, 2))
    assert in_integer_span([(2,), (3,)], (1,))
    assert not in_integer_span([], (1, 0))
    assert in_integer_span([], (0, 0))


def test_span_reduction_terminates_on_mixed_signs():
    # the 2x2 lattice below used to trap the Smith reduction in a
    # two-cycle of transforms that never shrank the pivot
    assert in_integer_span([(0, -1), (1, -1)], (1, 1))
    assert in_integer_span([(0, -1), (1, -1)], (5, -3))
    assert in_integer_span([(1, -1), (-1, 2)], (0, 1))


def test_span_matches_bounded_enumeration():
    rng = random.Random(19)
    for _ in range(250):
        dim = rng.randrange(1, 4)
        k = rng.randrange(0, 4)
        cols = [tuple(rng.randrange(-3, 4) for _ in range(dim))
                for _ in range(k)]
        v = tuple(rng.randrange(-3, 4) for _ in range(dim))
        want = brute_in_span(cols, v, bound=6)
        got = in_integer_span(cols, v)
        if want:
            assert got
        elif not got:
            pass
        else:
            # the oracle only enumerates small coefficients, so a lone
            # positive answer needs an explicit certificate check
            assert brute_in_span(cols, v, bound=25)
