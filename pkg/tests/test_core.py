import pytest
from hypothesis import given, strategies as st

from sirtp.core import (
    MAX_SIDE,
    Dims,
    InputRangeError,
    IrtpInstance,
    Partition,
    PartitionPair,
    SirtpInstance,
    area,
    ceil_log2,
    isqrt,
)


@pytest.mark.parametrize("n, expected", [(0, 0), (8, 2), (10**6 * 10**6, 10**6), (1, 1), (15, 3), (16, 4)])
def test_isqrt_examples(n, expected):
    assert isqrt(n) == expected


@given(st.integers(min_value=0, max_value=2**130))
def test_isqrt_brackets_root(n):
    r = isqrt(n)
    assert r * r <= n < (r + 1) * (r + 1)


def test_isqrt_rejects_negative():
    with pytest.raises(ValueError):
        isqrt(-1)


@pytest.mark.parametrize("d, expected", [((2, 3), 6), ((1, 1), 1), ((10**9, 10**9), 10**18)])
def test_area(d, expected):
    assert area(Dims(*d)) == expected


def test_area_at_the_range_limit():
    assert area(Dims(MAX_SIDE, MAX_SIDE)) == MAX_SIDE**2


def test_dims_orientation_matters():
    assert Dims(2, 3) != Dims(3, 2)
    assert Dims(2, 3).transposed() == Dims(3, 2)
    assert Dims(4, 4) == Dims(4, 4).transposed()


@pytest.mark.parametrize("w, h", [(0, 1), (1, 0), (-2, 3)])
def test_dims_rejects_nonpositive(w, h):
    with pytest.raises(ValueError):
        Dims(w, h)


def test_dims_rejects_out_of_range():
    with pytest.raises(InputRangeError):
        Dims(MAX_SIDE + 1, 1)
    with pytest.raises(TypeError):
        Dims(1.5, 2)


@pytest.mark.parametrize("n, expected", [(1, 0), (2, 1), (3, 2), (4, 2), (5, 3), (1024, 10), (1025, 11)])
def test_ceil_log2(n, expected):
    assert ceil_log2(n) == expected


def test_partition_ids_follow_positions():
    part = Partition.from_tuples((3, 2), [(0, 0, 2, 2), (2, 0, 1, 2)])
    assert [m.id for m in part.modules] == [0, 1]
    assert part.as_tuples() == [(0, 0, 2, 2), (2, 0, 1, 2)]


def test_pair_swap_inverts_pairing():
    a = Partition.from_tuples((1, 2), [(0, 0, 1, 1), (0, 1, 1, 1)])
    b = Partition.from_tuples((2, 1), [(0, 0, 1, 1), (1, 0, 1, 1)])
    pair = PartitionPair(a, b, (1, 0))
    back = pair.swapped()
    assert back.a is b and back.b is a
    assert back.pairing == (1, 0)
    assert back.swapped().pairing == pair.pairing


def test_instance_normalization():
    assert SirtpInstance(5, 3).normalized() == SirtpInstance(3, 5)
    assert SirtpInstance(4, 6).reduced() == SirtpInstance(2, 3)


def test_irtp_instance_validation():
    IrtpInstance(12, 2, 6, 4)
    with pytest.raises(ValueError):
        IrtpInstance(12, 2, 6, 5)
    with pytest.raises(ValueError):
        IrtpInstance(4, 6, 6, 4)  # b > d breaks the ordering


def test_from_tuples_rejects_float_after_int():
    with pytest.raises(TypeError):
        Partition.from_tuples((2, 1), [(0, 0, 1, 1), (1, 0, 1.0, 1)])
