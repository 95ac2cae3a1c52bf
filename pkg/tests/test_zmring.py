import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cycloscheme.binfield import build_tower
from cycloscheme.cycpart import CyclotomicPartition, get_partition
from cycloscheme.zmring import (GroupRingElement, GroupRingError, convolve,
                                delta_square_check, doubling_check, from_set,
                                involute, verify_lemma2, verify_remark_eqs)

PART_S1 = CyclotomicPartition(1, 7, (1, 2, 4), (3, 5, 6), (0,))


def test_from_set_indicator():
    assert from_set(7, {1, 2, 4}).coeffs == (0, 1, 1, 0, 1, 0, 0)
    assert from_set(7, set()).coeffs == (0,) * 7
    assert from_set(7, range(7)) == GroupRingElement.all_ones(7)


def test_from_set_out_of_range():
    with pytest.raises(GroupRingError):
        from_set(7, {7})


def test_singer_identity_m7():
    T1 = from_set(7, {1, 2, 4})
    # T1 * T1^(-1) = 2*[id] + Z_7: nine pairwise differences, each nonzero
    # residue hit once
    assert convolve(T1, involute(T1)).coeffs == (3, 1, 1, 1, 1, 1, 1)


def test_t1_square_m7():
    T1 = from_set(7, {1, 2, 4})
    assert convolve(T1, T1).coeffs == (0, 1, 1, 2, 1, 2, 2)  # T1 + 2*T2


def test_involution_negates_support():
    assert involute(from_set(7, {1, 2, 4})) == from_set(7, {3, 5, 6})
    e = GroupRingElement.identity(7)
    assert involute(e) == e


def test_modulus_mismatch():
    with pytest.raises(GroupRingError):
        convolve(from_set(7, {1}), from_set(21, {1}))


def test_lemma2_s1_passes():
    assert verify_lemma2(PART_S1, 1).passed


def test_lemma2_eq3_value_s1():
    T1, T2, T3 = (from_set(7, s) for s in ((1, 2, 4), (3, 5, 6), (0,)))
    lhs = convolve(T2 - T3, involute(T2))
    assert lhs.coeffs == (3, 0, 0, 1, 0, 1, 1)


def test_lemma2_corrupted_partition_fails():
    bad = CyclotomicPartition.__new__(CyclotomicPartition)
    object.__setattr__(bad, "s", 1)
    object.__setattr__(bad, "M", 7)
    object.__setattr__(bad, "T1", (1, 2, 3))
    object.__setattr__(bad, "T2", (4, 5, 6))
    object.__setattr__(bad, "T3", (0,))
    report = verify_lemma2(bad, 1)
    assert not report.passed
    assert any("index" in c.detail for c in report.failures())


def test_remark_eqs_s1():
    report = verify_remark_eqs(PART_S1, 1)
    assert report.passed, str(report)


def test_remark_eq8_value_s1():
    T1 = from_set(7, {1, 2, 4})
    lhs = convolve(convolve(T1, T1), involute(T1))
    rhs = T1.scale(2) + GroupRingElement.all_ones(7).scale(3)
    assert lhs == rhs


def test_remark_eqs_s2_and_s3():
    for s in (2, 3):
        part = get_partition(build_tower(s))
        assert verify_lemma2(part, s).passed
        assert verify_remark_eqs(part, s).passed
        assert delta_square_check(part, s).passed


def test_delta_square_s1():
    report = delta_square_check(PART_S1, 1)
    assert report.passed
    T2, T3 = from_set(7, {3, 5, 6}), from_set(7, {0})
    d = T2 - T3
    assert convolve(d, involute(d)) == GroupRingElement.identity(7).scale(4)


def test_delta_square_degenerate_modulus():
    tiny = CyclotomicPartition.__new__(CyclotomicPartition)
    object.__setattr__(tiny, "s", 0)
    object.__setattr__(tiny, "M", 1)
    object.__setattr__(tiny, "T1", (0,))
    object.__setattr__(tiny, "T2", ())
    object.__setattr__(tiny, "T3", ())
    with pytest.raises(GroupRingError):
        delta_square_check(tiny, 0)


def test_doubling_map_fixes_t1():
    assert doubling_check(PART_S1).passed
    assert doubling_check(get_partition(build_tower(2))).passed


def test_json_round_trip():
    a = from_set(7, {1, 2, 4}).scale(10 ** 20)
    assert GroupRingElement.from_json(a.to_json()) == a


small_elements = st.builds(
    lambda coeffs: GroupRingElement(7, tuple(coeffs)),
    st.lists(st.integers(min_value=-50, max_value=50), min_size=7, max_size=7))


@settings(max_examples=60, deadline=None)
@given(small_elements, small_elements)
def test_convolution_commutative(a, b):
    assert convolve(a, b) == convolve(b, a)


@settings(max_examples=60, deadline=None)
@given(small_elements, small_elements, small_elements)
def test_convolution_associative(a, b, c):
    assert convolve(convolve(a, b), c) == convolve(a, convolve(b, c))


@settings(max_examples=60, deadline=None)
@given(small_elements, small_elements)
def test_involute_is_multiplicative(a, b):
    assert involute(convolve(a, b)) == convolve(involute(a), involute(b))


@settings(max_examples=60, deadline=None)
@given(small_elements, small_elements)
def test_augmentation_homomorphism(a, b):
    assert convolve(a, b).augmentation() == a.augmentation() * b.augmentation()
