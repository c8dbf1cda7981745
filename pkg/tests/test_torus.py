import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from abtorus import (
    DigitWord,
    TorusPoint,
    apply_times,
    cylinder_of,
    digits_of,
    make_point,
    orbit_grid,
    point_of_word,
)

points = st.builds(
    make_point,
    st.integers(min_value=0, max_value=10**6),
    st.integers(min_value=1, max_value=10**6),
)


def test_make_point_normalizes():
    assert make_point(1, 3) == TorusPoint(1, 3)
    assert make_point(7, 3) == TorusPoint(1, 3)
    assert make_point(0, 5) == TorusPoint(0, 1)
    assert make_point(-1, 3) == TorusPoint(2, 3)


def test_zero_denominator_rejected():
    with pytest.raises(ValueError):
        make_point(1, 0)


def test_apply_times_examples():
    assert apply_times(make_point(1, 3), 2) == make_point(2, 3)
    assert apply_times(make_point(2, 5), 3) == make_point(1, 5)
    assert apply_times(make_point(1, 7), 6) == make_point(6, 7)


def test_orbit_grid_examples():
    grid = orbit_grid(make_point(1, 5), 2, 3, 2)
    assert grid == [
        [make_point(1, 5), make_point(3, 5)],
        [make_point(2, 5), make_point(1, 5)],
    ]
    zero = orbit_grid(make_point(0, 1), 2, 3, 3)
    assert all(p == make_point(0, 1) for row in zero for p in row)
    grid = orbit_grid(make_point(1, 3), 2, 3, 2)
    assert grid == [
        [make_point(1, 3), make_point(0, 1)],
        [make_point(2, 3), make_point(0, 1)],
    ]


def test_orbit_grid_matches_iterated_maps():
    rng = random.Random(7)
    for _ in range(20):
        x = make_point(rng.randrange(10**6), rng.randrange(1, 10**6))
        a, b = rng.choice([2, 3, 5, 6]), rng.choice([2, 3, 5, 6])
        grid = orbit_grid(x, a, b, 6)
        ym = x
        for m in range(6):
            y = ym
            for n in range(6):
                assert grid[m][n] == y
                y = apply_times(y, b)
            ym = apply_times(ym, a)


@settings(max_examples=60)
@given(points, st.integers(2, 9), st.integers(2, 9))
def test_commutativity(x, a, b):
    assert apply_times(apply_times(x, a), b) == apply_times(apply_times(x, b), a)


def test_denominator_stability():
    x = make_point(17, 360)
    for row in orbit_grid(x, 2, 3, 5):
        for p in row:
            assert 360 % p.den == 0


def test_digits_of_examples():
    assert digits_of(make_point(1, 3), 6, 3).digits == (2, 0, 0)
    assert digits_of(make_point(1, 7), 6, 4).digits == (0, 5, 0, 5)
    assert digits_of(make_point(0, 1), 6, 2).digits == (0, 0)


def test_digits_of_long_division_oracle():
    # brute long division on 1/7 base 6
    num, den, expect = 1, 7, []
    for _ in range(8):
        num *= 6
        expect.append(num // den)
        num %= den
    assert digits_of(make_point(1, 7), 6, 8).digits == tuple(expect)


def test_point_of_word_examples():
    assert point_of_word(DigitWord(6, (2, 0, 0))) == make_point(1, 3)
    assert point_of_word(DigitWord(6, (0, 5))) == make_point(5, 36)
    assert point_of_word(DigitWord(6, ())) == make_point(0, 1)


@settings(max_examples=60)
@given(points, st.integers(2, 12), st.integers(1, 20))
def test_digit_round_trip(x, base, L):
    w = digits_of(x, base, L)
    y = point_of_word(w)
    assert abs(x.as_fraction() - y.as_fraction()) < 1 / base**L
    assert digits_of(y, base, L) == w


def test_cylinder_of_examples():
    assert cylinder_of(make_point(1, 3), 6).index == 2
    assert cylinder_of(make_point(0, 1), 10).index == 0
    assert cylinder_of(make_point(5, 36), 6).index == 0


@settings(max_examples=40)
@given(points, st.integers(1, 50))
def test_cylinder_contains_point(x, d):
    cyl = cylinder_of(x, d)
    assert cyl.left() <= x.as_fraction() < cyl.right()


def test_serialization_round_trip():
    x = make_point(5, 36)
    assert TorusPoint.parse(str(x)) == x
    w = DigitWord(6, (2, 0, 5))
    assert str(w) == "b6:205"
    assert DigitWord.parse(str(w)) == w
    big = DigitWord(12, (11, 0, 3))
    assert DigitWord.parse(str(big)) == big
