import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bvis.arith import factorize
from bvis.errors import PreconditionError, ResourceLimitError, UsageError
from bvis.visibility import (
    ExponentVector,
    RationalExponentVector,
    base_from_expanded,
    find_parametric_witness,
    gcd_is_one_rational,
    is_visible_int,
    is_visible_rat,
    is_visible_signed,
    oracle_visible_parametric,
    reduce_b,
    witness_prime_int,
    witness_prime_signed,
)


# ---------------------------------------------------------------- vectors


def test_reduce_b_examples():
    assert reduce_b((2, 4)).entries == (1, 2)
    assert reduce_b((1, 1, 1)).entries == (1, 1, 1)
    assert reduce_b((6, 9, 15)).entries == (2, 3, 5)


@given(st.lists(st.integers(min_value=1, max_value=50), min_size=1, max_size=5))
def test_reduce_b_has_gcd_one(entries):
    assert reduce_b(entries).g == 1


def test_exponent_vector_validation():
    with pytest.raises(UsageError):
        ExponentVector(())
    with pytest.raises(UsageError):
        ExponentVector((0, 1))
    with pytest.raises(UsageError):
        ExponentVector((1, -2))


def test_rational_vector_validation():
    with pytest.raises(UsageError):
        RationalExponentVector((1, 0), (2, 3))
    with pytest.raises(UsageError):
        RationalExponentVector((2,), (4,))  # not lowest terms
    with pytest.raises(UsageError):
        RationalExponentVector((1,), (-2,))
    vec = RationalExponentVector.from_fractions(["2/3", "1/2"])
    assert vec.numerators == (2, 1)
    assert vec.denominators == (3, 2)
    assert vec.denominator_lcm == 6
    assert vec.negative_indices == frozenset()
    assert vec.fractions == (Fraction(2, 3), Fraction(1, 2))


def test_negative_indices():
    vec = RationalExponentVector.from_fractions([3, -2, -3])
    assert vec.negative_indices == frozenset({1, 2})


def test_gcd_is_one_rational():
    assert gcd_is_one_rational(["1/2", "1/2"])
    assert not gcd_is_one_rational([2, 4])
    assert gcd_is_one_rational(["2/3", "1/2"])
    assert not gcd_is_one_rational(["2/3", "2/3"])
    assert gcd_is_one_rational([1, -2])
    assert not gcd_is_one_rational([-2, -4])


def test_gcd_is_one_matches_coefficient_search():
    # 1 is an integer combination of the entries iff the divisibility
    # criterion holds; brute-force the coefficients as an oracle
    candidates = [
        ["1/2", "1/2"],
        ["2/3", "1/2"],
        ["2/3", "2/3"],
        ["3/4", "1/2"],
        ["2/1", "4/1"],
        ["2/1", "3/1"],
        ["5/6", "1/4"],
        ["-2/3", "1/2"],
        ["-2/3", "-2/3"],
    ]
    for spec in candidates:
        fracs = [Fraction(x) for x in spec]
        found = any(
            m1 * fracs[0] + m2 * fracs[1] == 1
            for m1 in range(-12, 13)
            for m2 in range(-12, 13)
        )
        assert gcd_is_one_rational(spec) == found


# ---------------------------------------------------------------- integer case


def test_worked_example():
    assert not is_visible_int((4, 16, 40, 128), (2, 4, 3, 7))
    assert witness_prime_int((4, 16, 40, 128), (2, 4, 3, 7)) == 2
    assert is_visible_int((1, 1, 5, 1), (2, 4, 3, 7))


def test_visible_int_basics():
    assert not is_visible_int((2, 4), (2, 4))
    assert is_visible_int((3, 5), (1, 1))
    assert is_visible_int((1, 1, 1), (5, 9, 2))
    assert not is_visible_int((4, 8), (2, 3))
    assert not is_visible_int((8, 8), (2, 3))


def test_visible_int_k1():
    # for b=(1) only n=1 is visible: every n>1 has a prime divisor
    assert is_visible_int((1,), (1,))
    for n in range(2, 40):
        assert not is_visible_int((n,), (1,))
    # b=(3) reduces to (1), same verdicts
    assert not is_visible_int((5,), (3,))


def test_witness_prime_is_smallest():
    assert witness_prime_int((36, 36), (1, 1)) == 2
    assert witness_prime_int((9, 27), (1, 1)) == 3


def test_int_input_validation():
    with pytest.raises(UsageError):
        is_visible_int((1, 2, 3), (1, 1))
    with pytest.raises(UsageError):
        is_visible_int((0, 2), (1, 1))
    with pytest.raises(UsageError):
        is_visible_int((-3, 2), (1, 1))


def test_is_visible_int_vs_gcd_for_ones():
    for pt in itertools.product(range(1, 30), repeat=2):
        assert is_visible_int(pt, (1, 1)) == (math.gcd(*pt) == 1)


# ---------------------------------------------------------------- oracle


def test_oracle_paper_examples():
    assert not oracle_visible_parametric((2, 4), (2, 4))
    assert find_parametric_witness((2, 4), (2, 4)) == (1, 1)
    assert not oracle_visible_parametric((4, 16, 40, 128), (2, 4, 3, 7))
    assert find_parametric_witness((4, 16, 40, 128), (2, 4, 3, 7)) == (1, 1, 5, 1)
    assert oracle_visible_parametric((3, 5), (1, 1))
    assert oracle_visible_parametric((1, 1, 5, 1), (2, 4, 3, 7))


def test_oracle_resource_limit():
    with pytest.raises(ResourceLimitError):
        oracle_visible_parametric((10**5, 10**4), (1, 1))
    # explicit limit override
    assert oracle_visible_parametric((3, 5), (1, 1), box_limit=15)
    with pytest.raises(ResourceLimitError):
        oracle_visible_parametric((4, 5), (1, 1), box_limit=15)


@settings(max_examples=200, deadline=None)
@given(
    st.lists(st.integers(min_value=1, max_value=30), min_size=1, max_size=3),
    st.data(),
)
def test_oracle_agrees_with_characterization(point, data):
    b = data.draw(
        st.lists(
            st.integers(min_value=1, max_value=4),
            min_size=len(point),
            max_size=len(point),
        )
    )
    assert oracle_visible_parametric(point, b) == is_visible_int(point, b)


@settings(max_examples=100, deadline=None)
@given(
    st.lists(st.integers(min_value=2, max_value=25), min_size=2, max_size=3),
    st.data(),
)
def test_witness_image_is_consistent(point, data):
    b = data.draw(
        st.lists(
            st.integers(min_value=1, max_value=4),
            min_size=len(point),
            max_size=len(point),
        )
    )
    witness = find_parametric_witness(point, b)
    if witness is None:
        return
    assert all(1 <= w < n for w, n in zip(witness, point))
    lcm_b = math.lcm(*b)
    exps = [lcm_b // e for e in b]
    for i in range(len(point)):
        for j in range(i + 1, len(point)):
            left = witness[i] ** exps[i] * point[j] ** exps[j]
            right = witness[j] ** exps[j] * point[i] ** exps[i]
            assert left == right


def _scaled_constrained_witness(point, b, scale):
    """Witness search on the scaled representation m_i = n_i * scale**b_i.

    Candidate images are capped at the original point (that is exactly the
    image set of t in (0, 1/scale]); the original point itself corresponds
    to t = 1/scale and is excluded as in the unscaled search.
    """
    scaled = tuple(c * scale**e for c, e in zip(point, b))
    lcm_b = math.lcm(*b)
    exps = [lcm_b // e for e in b]
    scaled_pows = [c**x for c, x in zip(scaled, exps)]
    for image in itertools.product(*(range(1, c + 1) for c in point)):
        if image == point:
            continue
        pows = [c**x for c, x in zip(image, exps)]
        if all(
            pows[i] * scaled_pows[j] == pows[j] * scaled_pows[i]
            for i in range(len(point))
            for j in range(i + 1, len(point))
        ):
            return image
    return None


def test_function_independence_under_scaling():
    # witness existence is invariant under m_i = n_i * s**b_i with the
    # search restricted to images of t <= 1/s
    b = (1, 2)
    for scale in (2, 3):
        for point in itertools.product(range(1, 21), repeat=2):
            scaled_witness = _scaled_constrained_witness(point, b, scale)
            assert (scaled_witness is None) == oracle_visible_parametric(point, b)


# ---------------------------------------------------------------- rational case


def test_visible_rat_examples():
    assert not is_visible_rat((2, 4), ["1/2", "1/2"])
    assert is_visible_rat((2, 3), ["1/2", "1/2"])
    assert is_visible_rat((1, 1), ["2/3", "1/2"])


def test_rat_reduction_consistency():
    for pt in itertools.product(range(1, 31), repeat=2):
        assert is_visible_rat(pt, ["1/2", "1/2"]) == is_visible_int(pt, (1, 1))


def test_rat_gcd_precondition():
    with pytest.raises(PreconditionError):
        is_visible_rat((2, 3), ["2/3", "2/3"])


def test_rat_rejects_negative_exponents():
    with pytest.raises(UsageError):
        is_visible_rat((2, 3), ["1/2", "-1/2"])


def test_base_from_expanded():
    # b=(2/3,1/2): alpha=6, lattice exponents (2,3)
    assert base_from_expanded((4, 8), ["2/3", "1/2"]) == (2, 2)
    assert base_from_expanded((1, 27), ["2/3", "1/2"]) == (1, 3)
    with pytest.raises(UsageError):
        base_from_expanded((4, 7), ["2/3", "1/2"])
    # alpha/a_i = 1: every point is on the lattice and is its own base
    assert base_from_expanded((4, 9), ["1/2", "1/2"]) == (4, 9)


# ---------------------------------------------------------------- signed case


def test_visible_signed_examples():
    assert not is_visible_signed((5, 4), [1, -2])
    assert witness_prime_signed((5, 4), [1, -2]) == 2
    assert is_visible_signed((5, 6), [1, -2])
    assert is_visible_signed((1, 1), [1, -2])


def test_signed_empty_j_is_vacuously_visible():
    for pt in [(1, 1), (4, 8), (100, 100)]:
        assert is_visible_signed(pt, ["1/2", "1/2"])


def test_signed_matches_int_when_all_negative():
    for pt in itertools.product(range(1, 21), repeat=2):
        assert is_visible_signed(pt, [-1, -1]) == is_visible_int(pt, (1, 1))


def test_signed_ignores_non_j_coordinates():
    for b in ([1, -2], [-2, 1]):
        j = 0 if b[0] < 0 else 1
        for fixed in range(1, 31):
            point = [0, 0]
            point[j] = fixed
            verdicts = set()
            for other in range(1, 31):
                point[1 - j] = other
                verdicts.add(is_visible_signed(tuple(point), b))
            assert len(verdicts) == 1


def test_signed_matches_squarefree():
    def squarefree(n):
        return all(m == 1 for _, m in factorize(n).factors)

    for ell in range(1, 101):
        assert is_visible_signed((7, ell), [1, -2]) == squarefree(ell)


def test_signed_gcd_precondition():
    with pytest.raises(PreconditionError):
        is_visible_signed((2, 3), [-2, -4])
