import pytest

from dglakit.artin import (dual_numbers, power_series_extension, small_extension,
                           square_zero_extension, truncated_power_series)
from dglakit.errors import NotSmallExtension


def test_square_zero():
    A = square_zero_extension(2)
    assert A.labels == ("1", "ε") and A.degrees == (0, -2)
    assert A.check() == []
    assert A.mul({1: 1}, {1: 1}) == {}
    assert A.nilpotency_index() == 2


def test_dual_numbers():
    A = dual_numbers()
    assert A.degrees == (0, 0)
    assert A.augmentation({0: 3, 1: 5}) == 3


def test_power_series_one_variable():
    A = truncated_power_series(1, 3)
    assert A.labels == ("1", "t", "t^2", "t^3")
    assert A.check() == []
    t = {1: 1}
    assert A.mul(t, A.mul(t, t)) == {3: 1}
    assert A.mul(t, {3: 1}) == {}
    assert A.nilpotency_index() == 4


def test_power_series_two_variables():
    A = truncated_power_series(2, 2)
    assert A.dim == 6
    assert A.check() == []
    assert A.format_element(A.mul({A.index("t1"): 1}, {A.index("t2"): 2})) == "2·t1·t2"


def test_power_series_extension():
    ext = power_series_extension(1, 3)
    assert ext.quotient.labels == ("1", "t", "t^2")
    assert ext.project({3: 1, 1: 2}) == {1: 2}
    assert ext.lift({2: 1}) == {2: 1}


def test_not_small():
    A = truncated_power_series(1, 3)
    with pytest.raises(NotSmallExtension):
        small_extension(A, ["t^2", "t^3"])
    with pytest.raises(NotSmallExtension):
        small_extension(A, ["1"])
