import pytest

from cycloscheme.binfield import InternalCheckError, build_tower
from cycloscheme.charsum import (CyclotomicInteger, conjugation_symmetry_check,
                                 cyclotomic_polynomial, eta_prime_law_check,
                                 gauss_period_from_sums, gauss_periods, gauss_sum,
                                 gauss_sum_modulus_check, gauss_sum_power_vector,
                                 period_expansion_check, recover_period_from_sums,
                                 verify_hasse_davenport, verify_t1_gauss_identity)


def test_cyclotomic_polynomial_small():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(7) == (1, 1, 1, 1, 1, 1, 1)
    # Phi_21 = x^12 - x^11 + x^9 - x^8 + x^6 - x^4 + x^3 - x + 1
    assert cyclotomic_polynomial(21) == (1, -1, 0, 1, -1, 0, 1, 0, -1, 1, 0, -1, 1)


def test_cyclotomic_polynomials_multiply_back():
    for M in (7, 21, 73):
        prod = [1]
        for d in range(1, M + 1):
            if M % d == 0:
                phi = cyclotomic_polynomial(d)
                new = [0] * (len(prod) + len(phi) - 1)
                for i, a in enumerate(prod):
                    for j, b in enumerate(phi):
                        new[i + j] += a * b
                prod = new
        expected = [0] * (M + 1)
        expected[0], expected[M] = -1, 1
        assert prod == expected


def test_zeta_arithmetic_basics():
    z = CyclotomicInteger.zeta_power(7, 1)
    total = sum((CyclotomicInteger.zeta_power(7, k) for k in range(1, 7)),
                CyclotomicInteger.from_int(7, 1))
    assert total == CyclotomicInteger.from_int(7, 0)
    assert (z ** 7) == CyclotomicInteger.from_int(7, 1)
    assert z.conj() == CyclotomicInteger.zeta_power(7, 6)


def test_gauss_periods_f_s1():
    tower = build_tower(1)
    eta = gauss_periods(tower, "F")
    # eta_a = q-1 on T1, -1 elsewhere for the base field
    assert eta == [-1, 1, 1, -1, 1, -1, -1]
    assert sum(eta) == -1


def test_gauss_periods_g_s1_three_values():
    tower = build_tower(1)
    eta = gauss_periods(tower, "G")
    part = {a: v for a, v in enumerate(eta)}
    assert {part[a] for a in (1, 2, 4)} == {1}
    assert {part[a] for a in (3, 5, 6)} == {-3}
    assert part[0] == 5


def test_gauss_periods_h_s1_frozen_values():
    tower = build_tower(1)
    eta = gauss_periods(tower, "H")
    assert sum(eta) == -1
    assert eta[0] == 17
    assert sorted(eta) == [-7, -7, -7, 1, 1, 1, 17]


def test_gauss_sum_f_s1_value():
    tower = build_tower(1)
    g = gauss_sum(tower, "F", 1)
    expected = (CyclotomicInteger.zeta_power(7, 1) +
                CyclotomicInteger.zeta_power(7, 2) +
                CyclotomicInteger.zeta_power(7, 4)) * 2
    assert g == expected


def test_gauss_sum_principal_character():
    tower = build_tower(1)
    assert gauss_sum(tower, "F", 0) == CyclotomicInteger.from_int(7, -1)


@pytest.mark.parametrize("s", [1, 2])
def test_t1_identity(s):
    assert verify_t1_gauss_identity(build_tower(s)).passed


@pytest.mark.parametrize("s", [1, 2])
def test_gauss_sum_modulus(s):
    assert gauss_sum_modulus_check(build_tower(s), "F").passed


@pytest.mark.parametrize("s", [1, 2])
def test_hasse_davenport_square_and_cube(s):
    tower = build_tower(s)
    assert verify_hasse_davenport(tower, 2).passed
    assert verify_hasse_davenport(tower, 3).passed


def test_eta_prime_law():
    for s in (1, 2):
        assert eta_prime_law_check(build_tower(s)).passed


def test_conjugation_symmetry():
    assert conjugation_symmetry_check(build_tower(1), "F").passed


@pytest.mark.parametrize("label", ["F", "G"])
def test_period_expansion_round_trip(label):
    tower = build_tower(1)
    eta = gauss_periods(tower, label)
    for a in (0, 1, 3):
        assert gauss_period_from_sums(tower, label, a) == eta[a]


def test_period_expansion_all_s2():
    assert period_expansion_check(build_tower(2), "F").passed


def test_perturbed_gauss_sums_rejected():
    # negative control: corrupt one sum vector and the expansion no longer
    # collapses to a rational multiple of M
    tower = build_tower(1)
    vectors = [gauss_sum_power_vector(tower, "F", ell) for ell in range(7)]
    vectors[3][2] += 1
    with pytest.raises(InternalCheckError):
        for a in range(7):
            recover_period_from_sums(7, vectors, a)


def test_mixed_cyclotomic_orders_rejected():
    with pytest.raises(ValueError):
        CyclotomicInteger.from_int(7, 1) + CyclotomicInteger.from_int(21, 1)
