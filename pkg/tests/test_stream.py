from math import factorial
import random

import pytest

from tporder.distance import IncompatiblePermutations
from tporder.factoradic import Permutation
from tporder.stream import (
    InvalidRange,
    NotAdjacent,
    SeedRange,
    Transposition,
    delta,
    drain,
    drain_chunks,
    open_stream,
    partition,
    stream_chunks,
)


@pytest.mark.parametrize(
    'p, q, expected',
    (
        ((1, 4, 2, 3), (1, 4, 3, 2), (3, 4)),
        ((3, 2, 5, 6, 1, 4), (3, 2, 5, 1, 6, 4), (4, 5)),
        ((1, 4, 3, 2), (2, 4, 3, 1), (1, 4)),
    ),
)
def test_delta(p, q, expected):
    t = delta(Permutation(p), Permutation(q))
    assert (t.pos_a, t.pos_b) == expected
    assert t.apply(Permutation(p)) == Permutation(q)


def test_delta_edge_cases():
    p = Permutation((1, 2, 3))
    assert delta(p, p) is None
    with pytest.raises(NotAdjacent):
        delta(p, Permutation((2, 3, 1)))
    with pytest.raises(IncompatiblePermutations):
        delta(p, Permutation((1, 2)))


def test_transposition():
    t = Transposition(2, 5)
    assert str(t) == '(2,5)'
    assert t.as_list() == [2, 5]
    with pytest.raises(ValueError):
        Transposition(3, 3)
    with pytest.raises(ValueError):
        Transposition(0, 2)


def test_golden_stream():
    steps = list(open_stream(SeedRange(319, 323, 6)))
    assert [s.seed for s in steps] == [319, 320, 321, 322]
    assert [s.perm.entries for s in steps] == [
        (3, 2, 5, 6, 1, 4),
        (3, 2, 5, 1, 6, 4),
        (3, 2, 5, 1, 4, 6),
        (3, 2, 5, 4, 1, 6),
    ]
    assert [s.code.msd() for s in steps] == [
        (2, 1, 2, 2, 0, 0),
        (2, 1, 2, 0, 1, 0),
        (2, 1, 2, 0, 0, 0),
        (2, 1, 2, 1, 0, 0),
    ]
    assert [s.delta.as_list() if s.delta else None for s in steps] == [None, [4, 5], [5, 6], [4, 5]]


def test_golden_stream_width_four():
    steps = list(open_stream(SeedRange(4, 8, 4)))
    assert [str(s.perm) for s in steps] == ['1 4 2 3', '1 4 3 2', '2 4 3 1', '2 4 1 3']
    assert [str(s.delta) for s in steps[1:]] == ['(3,4)', '(1,4)', '(3,4)']


def test_single_seed_and_empty_streams():
    steps = list(open_stream(SeedRange(0, 1, 3)))
    assert len(steps) == 1
    assert steps[0].perm == Permutation.identity(3)
    assert steps[0].delta is None
    assert list(open_stream(SeedRange(5, 5, 3))) == []


def test_continue_from_previous():
    steps = list(open_stream(SeedRange(320, 322, 6), continue_from_previous=True))
    assert steps[0].delta == Transposition(4, 5)
    first = next(open_stream(SeedRange(0, 3, 3), continue_from_previous=True))
    assert first.delta is None


@pytest.mark.parametrize('n', range(1, 8))
def test_full_stream_visits_everything_once(n):
    seen = set()
    deltas = 0
    for step in open_stream(SeedRange.full(n)):
        seen.add(step.perm)
        if step.delta is not None:
            deltas += 1
    assert len(seen) == factorial(n)
    assert deltas == factorial(n) - 1


@pytest.mark.parametrize('n', (12, 20))
def test_sampled_windows_stay_adjacent(n):
    rng = random.Random(n)
    for _ in range(20):
        start = rng.randrange(factorial(n) - 50)
        steps = list(open_stream(SeedRange(start, start + 50, n), continue_from_previous=True))
        assert all(step.delta is not None for step in steps)


def test_seed_range_validation():
    with pytest.raises(InvalidRange):
        SeedRange(0, 25, 4)
    with pytest.raises(InvalidRange):
        SeedRange(5, 4, 4)
    with pytest.raises(InvalidRange):
        SeedRange(0, 1, 0)
    assert SeedRange.full(4).size == 24
    assert str(SeedRange(1, 3, 4)) == '[1, 3) n=4'


@pytest.mark.parametrize(
    'seed_range, chunks, sizes',
    (
        (SeedRange(0, 24, 4), 4, [6, 6, 6, 6]),
        (SeedRange(0, 7, 4), 3, [3, 2, 2]),
        (SeedRange(10, 12, 4), 4, [1, 1, 0, 0]),
        (SeedRange(0, 120, 5), 1, [120]),
    ),
)
def test_partition(seed_range, chunks, sizes):
    parts = partition(seed_range, chunks)
    assert [p.size for p in parts] == sizes
    assert parts[0].start == seed_range.start
    assert parts[-1].end == seed_range.end
    for left, right in zip(parts, parts[1:]):
        assert left.end == right.start


def test_partition_rejects_bad_chunk_counts():
    with pytest.raises(ValueError):
        partition(SeedRange(0, 6, 3), 0)


@pytest.mark.parametrize('chunks', range(1, 8))
def test_chunked_stream_equals_whole_stream(chunks):
    whole = list(open_stream(SeedRange.full(5)))
    assert list(stream_chunks(SeedRange.full(5), chunks, workers=1)) == whole


def test_chunked_stream_in_worker_processes():
    seed_range = SeedRange(100, 700, 6)
    assert list(stream_chunks(seed_range, 3, workers=2)) == list(open_stream(seed_range))


def test_drain():
    assert drain(SeedRange.full(5)) == (120, 119)
    assert drain(SeedRange(10, 20, 5), continue_from_previous=True) == (10, 10)
    assert drain_chunks(SeedRange.full(5), 3, workers=1) == (120, 119)


@pytest.mark.slow
def test_drain_chunks_in_worker_processes():
    assert drain_chunks(SeedRange.full(8), 4, workers=2) == (40320, 40319)


@pytest.mark.parametrize(
    'seed_range',
    (SeedRange.full(6), SeedRange(319, 700, 6), SeedRange(1000, 3000, 7), SeedRange(9, 10, 4)),
)
def test_drain_counts_what_open_stream_yields(seed_range):
    for lead in (False, True):
        steps = list(open_stream(seed_range, continue_from_previous=lead))
        expected = (len(steps), sum(step.delta is not None for step in steps))
        assert drain(seed_range, continue_from_previous=lead) == expected


def test_drain_full_width_eight():
    assert drain(SeedRange.full(8)) == (40320, 40319)
