from math import factorial

from hypothesis import (
    given,
    strategies as st,
)
import pytest

from tporder.factoradic import (
    FactoradicCode,
    InvalidCode,
    InvalidPermutation,
    InvalidSeed,
    Permutation,
    WidthTooSmall,
    code_from_integer,
    decode_permutation,
    encode_permutation,
    integer_from_code,
)


@st.composite
def codes(draw, min_width=1, max_width=40):
    n = draw(st.integers(min_value=min_width, max_value=max_width))
    return FactoradicCode(tuple(draw(st.integers(min_value=0, max_value=i)) for i in range(n)))


@st.composite
def perms(draw, max_width=90):
    n = draw(st.integers(min_value=1, max_value=max_width))
    return Permutation(tuple(draw(st.permutations(range(1, n + 1)))))


@pytest.mark.parametrize(
    'msd, expected',
    (
        ([0, 2, 0, 0], 4),
        ([0, 0, 0, 0], 0),
        ([1, 2, 1, 0], 11),
        ([0], 0),
    ),
)
def test_integer_from_code(msd, expected):
    assert integer_from_code(FactoradicCode.from_msd(msd)) == expected


@pytest.mark.parametrize(
    's, width, msd',
    (
        (4, 4, (0, 2, 0, 0)),
        (0, 5, (0, 0, 0, 0, 0)),
        (6, 4, (1, 0, 0, 0)),
        (23, 4, (3, 2, 1, 0)),
    ),
)
def test_code_from_integer(s, width, msd):
    assert code_from_integer(s, width).msd() == msd


def test_code_from_integer_width_too_small():
    with pytest.raises(WidthTooSmall):
        code_from_integer(24, 4)
    with pytest.raises(InvalidSeed):
        code_from_integer(-1, 4)


def test_digit_bound_violation_names_position():
    with pytest.raises(InvalidCode, match='position 2'):
        FactoradicCode.from_msd([0, 3, 0, 0])
    with pytest.raises(InvalidCode, match='position 0'):
        FactoradicCode((1,))
    with pytest.raises(InvalidCode):
        FactoradicCode(())


@pytest.mark.parametrize(
    'msd, expected',
    (
        ([0, 2, 0, 0], (1, 4, 2, 3)),
        ([0, 0, 0, 0, 0], (1, 2, 3, 4, 5)),
        ([2, 1, 2, 2, 0, 0], (3, 2, 5, 6, 1, 4)),
        ([2, 1, 2, 0, 1, 0], (3, 2, 5, 1, 6, 4)),
    ),
)
def test_decode_permutation(msd, expected):
    assert decode_permutation(FactoradicCode.from_msd(msd)).entries == expected


@pytest.mark.parametrize(
    'entries, msd',
    (
        ((1, 4, 2, 3), (0, 2, 0, 0)),
        ((1, 2, 3, 4, 5, 6), (0, 0, 0, 0, 0, 0)),
        ((3, 2, 5, 1, 6, 4), (2, 1, 2, 0, 1, 0)),
    ),
)
def test_encode_permutation(entries, msd):
    assert encode_permutation(Permutation(entries)).msd() == msd


@pytest.mark.parametrize('entries', ((1, 1, 2), (0, 1, 2), (1, 2, 4), ()))
def test_invalid_permutation(entries):
    with pytest.raises(InvalidPermutation):
        encode_permutation(entries)


@pytest.mark.parametrize('n', range(1, 8))
def test_exhaustive_round_trips_and_bijection(n):
    seen = set()
    for s in range(factorial(n)):
        code = code_from_integer(s, n)
        assert integer_from_code(code) == s
        assert code.digits[0] == 0
        perm = decode_permutation(code)
        assert encode_permutation(perm) == code
        seen.add(perm)
    assert len(seen) == factorial(n)


@given(codes())
def test_code_integer_round_trip(code):
    assert code_from_integer(integer_from_code(code), code.width) == code
    assert integer_from_code(code) < factorial(code.width)


@given(codes(max_width=120))
def test_fenwick_decode_matches_list_decode(code):
    assert decode_permutation(code, fenwick=True) == decode_permutation(code, fenwick=False)


@given(perms())
def test_fenwick_encode_matches_list_encode(perm):
    by_tree = encode_permutation(perm, fenwick=True)
    assert by_tree == encode_permutation(perm, fenwick=False)
    assert decode_permutation(by_tree) == perm


def test_code_renderings():
    code = FactoradicCode.from_msd([2, 1, 2, 2, 0, 0])
    assert str(code) == '2 1 2 2 0 0'
    assert code.notation() == '2_5 1_4 2_3 2_2 0_1 0_0'
    assert code.width == 6
    assert FactoradicCode.from_msd([0, 2, 0, 0]).padded(6).msd() == (0, 0, 0, 2, 0, 0)
    with pytest.raises(WidthTooSmall):
        code.padded(5)


def test_permutation_helpers():
    p = Permutation((1, 4, 2, 3))
    assert str(p) == '1 4 2 3'
    assert p.swap(3, 4) == Permutation((1, 4, 3, 2))
    assert p.inverse() == Permutation((1, 3, 4, 2))
    assert Permutation.identity(3).entries == (1, 2, 3)
    with pytest.raises(InvalidPermutation):
        p.swap(0, 2)
