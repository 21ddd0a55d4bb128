import pytest

from siltkit.fields import GF2, QQ, Field


def test_gf2_arithmetic():
    f = GF2
    assert f.p == 2
    assert f.zero == 0 and f.one == 1
    assert f.add(1, 1) == 0
    assert f.sub(0, 1) == 1
    assert f.mul(1, 1) == 1
    assert f.neg(1) == 1
    assert f.inv(1) == 1
    assert f.of(7) == 1
    assert f.of(-4) == 0


def test_gf3_arithmetic():
    f = Field(3)
    assert f.add(2, 2) == 1
    assert f.sub(0, 2) == 1
    assert f.mul(2, 2) == 1
    assert f.neg(1) == 2
    assert f.inv(2) == 2
    assert f.of(-1) == 2


def test_gf5_inverses():
    f = Field(5)
    for a in range(1, 5):
        assert f.mul(a, f.inv(a)) == 1


def test_rationals():
    f = QQ
    assert f.p == 0
    half = f.div(f.one, f.of(2))
    assert f.add(half, half) == f.one
    assert f.mul(f.of(3), f.inv(f.of(3))) == f.one
    assert f.neg(f.of(2)) == f.of(-2)
    assert f.sub(f.of(1), f.of(3)) == f.of(-2)


def test_nonprime_order_rejected():
    with pytest.raises(ValueError):
        Field(4)
    with pytest.raises(ValueError):
        Field(1)


def test_field_equality_and_repr():
    assert Field(2) == GF2
    assert Field(3) != GF2
    assert "2" in repr(GF2)
