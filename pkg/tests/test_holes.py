import pytest

from punctpoly.holes import fixed_size_series, hole_windows
from punctpoly.oracle import oracle_punctured_staircase
from punctpoly.transfer import tm_enumerate


def test_hole_shape_counts_are_catalan():
    # staircase holes of half-perimeter s: 1, 2, 5, 14 shapes for s = 2..5
    assert [len(hole_windows(s)) for s in range(2, 6)] == [1, 2, 5, 14]


def test_unit_hole_matches_transfer_matrix():
    fs = fixed_size_series(22, 2, k_max=2)
    tm = tm_enumerate(22, 1, k_max=2)
    assert fs.counts() == tm.counts(1)
    for j in (1, 2):
        assert fs.factorial_moment(j) == tm.factorial_moment(1, j)


@pytest.mark.parametrize("s", [3, 4, 5])
def test_matches_oracle(s):
    fs = fixed_size_series(12, s, k_max=2)
    biv = oracle_punctured_staircase(12, 1, "fixed_total_s", s)
    assert fs.counts() == biv.eval_q1()
    for k in (1, 2):
        assert fs.moment(k) == biv.moment(k)


def test_smallest_polygons():
    # the smallest once-punctured polygon with an s-hole is a square frame
    fs = fixed_size_series(16, 3, k_max=0)
    counts = fs.counts().coefficients
    assert counts[:10] == [0] * 10
    assert counts[10] > 0


def test_bad_arguments_rejected():
    with pytest.raises(ValueError):
        hole_windows(1)
    with pytest.raises(ValueError):
        fixed_size_series(6, 2)
    with pytest.raises(ValueError):
        fixed_size_series(20, 2, k_max=1).moment(2)
