import os

from fractions import Fraction

from schmidtools.parallel import fan_out, resolve_jobs


def square(x):
    return x * x


def test_resolve_jobs():
    assert resolve_jobs() == 1
    assert resolve_jobs(0) == 1
    assert resolve_jobs(3) == 3
    assert resolve_jobs(-1) == (os.cpu_count() or 1)


def test_fan_out_keeps_order():
    tasks = [Fraction(i, 7) for i in range(20)]

    assert fan_out(square, tasks) == [t * t for t in tasks]
    assert fan_out(square, tasks, n_jobs=2, chunksize=3) == [t * t for t in tasks]


def test_fan_out_empty():
    assert fan_out(square, [], n_jobs=4) == []
