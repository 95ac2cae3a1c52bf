import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cycloscheme import binfield
from cycloscheme.binfield import (BinaryField, FieldError, NonPrimitiveModulusError,
                                  ReducibleModulusError, build_field, build_tower,
                                  irreducibility_certificate, modulus_from_hex,
                                  modulus_to_hex)

from gf_oracle import gf_mul, gf_pow, gf_trace


def test_default_moduli_are_lexicographically_first():
    # frozen expected values, found by independent scan with the naive oracle
    assert build_field(1).modulus == 0b11
    assert build_field(2).modulus == 0b111
    assert build_field(3).modulus == 0b1011  # x^3 + x + 1
    assert build_field(4).modulus == 0b10011
    assert build_field(6).modulus == 0b1000011  # x^6 + x + 1


def test_gf8_multiplication_table_entry():
    K = build_field(3)
    # x * x^2 = x^3 = x + 1 under x^3 + x + 1
    assert K.mul(0b010, 0b100) == 0b011


def test_mul_matches_naive_oracle_gf64():
    K = build_field(6)
    for a in range(0, 64, 5):
        for b in range(0, 64, 7):
            assert K.mul(a, b) == gf_mul(a, b, K.modulus)


def test_pow_and_inverse():
    K = build_field(4)
    for a in range(1, 16):
        assert K.mul(a, K.inv(a)) == 1
        assert K.pow(a, K.order) == 1
        assert K.pow(a, 3) == gf_pow(a, 3, K.modulus)


def test_generator_is_primitive():
    K = build_field(6)
    seen = set()
    u = 1
    for _ in range(K.order):
        seen.add(u)
        u = K.mul(u, K.generator)
    assert len(seen) == K.order


def test_abs_trace_matches_oracle():
    for m in (3, 4, 6):
        K = build_field(m)
        for u in range(K.size):
            assert K.abs_trace(u) == gf_trace(u, K.modulus, m)


def test_trace_mask_consistent_with_psi():
    K = build_field(9)
    for u in (0, 1, 5, 100, 300, 511):
        assert K.psi(u) == 1 - 2 * K.abs_trace(u)


def test_rel_trace_lands_in_subfield_and_is_linear():
    K = build_field(9)
    for u in range(0, 512, 17):
        for v in range(0, 512, 23):
            t = K.rel_trace(3, u ^ v)
            assert t == K.rel_trace(3, u) ^ K.rel_trace(3, v)


def test_rel_trace_is_zero_agrees_with_rel_trace():
    K = build_field(9)
    zeros = [u for u in range(512) if K.rel_trace(3, u) == 0]
    fast = [u for u in range(512) if K.rel_trace_is_zero(3, u)]
    assert zeros == fast
    assert len(zeros) == 64  # kernel is a GF(8)-hyperplane


def test_reducible_modulus_rejected_with_certificate():
    with pytest.raises(ReducibleModulusError) as exc:
        build_field(4, modulus=0b10101)  # x^4+x^2+1 = (x^2+x+1)^2
    assert exc.value.divisor_degree >= 1


def test_irreducibility_certificate_on_known_factor():
    # x^2 + 1 = (x + 1)^2
    assert irreducibility_certificate(0b101) is not None
    assert irreducibility_certificate(0b1011) is None


def test_nonprimitive_modulus_rejected():
    # x^6+x^3+1 is irreducible but x has order 9, not 63
    with pytest.raises(NonPrimitiveModulusError) as exc:
        build_field(6, modulus=0b1001001)
    assert exc.value.proper_order == 9


def test_modulus_hex_round_trip():
    assert modulus_from_hex(modulus_to_hex(0b1011)) == 0b1011
    assert modulus_to_hex(0b1011) == "b"
    with pytest.raises(ValueError):
        modulus_from_hex("zz")


def test_tower_shape_s1():
    tower = build_tower(1)
    assert (tower.E.degree, tower.F.degree, tower.G.degree, tower.H.degree) == (1, 3, 6, 9)
    assert tower.M == 7


def test_tower_norm_normalization():
    for s in (1, 2):
        tower = build_tower(s)
        w_g = tower.embed_F_G(tower.omega)
        assert tower.G.norm_to(tower.F.degree, tower.gamma) == w_g
        w_h = tower.embed_F_H(tower.omega)
        assert tower.H.norm_to(tower.F.degree, tower.beta) == w_h


def test_embedding_is_a_field_homomorphism():
    tower = build_tower(2)
    F, G = tower.F, tower.G
    for a in (1, 7, 33, 60):
        for b in (2, 9, 41):
            assert tower.embed_F_G(F.mul(a, b)) == G.mul(tower.embed_F_G(a),
                                                         tower.embed_F_G(b))
            assert tower.embed_F_G(a ^ b) == tower.embed_F_G(a) ^ tower.embed_F_G(b)


def test_class_step_consistency():
    tower = build_tower(1)
    for label in ("F", "G", "H"):
        K = tower.field(label)
        step = tower.class_step(label)
        # the class (w.r.t. omega/gamma/beta) of g^k is k*step mod M
        g = K.generator
        u = g
        for k in range(1, 12):
            assert tower.class_index(label, u) == (k * step) % tower.M
            u = K.mul(u, g)


def test_invalid_s_rejected():
    with pytest.raises(FieldError):
        build_tower(0)


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=63), st.integers(min_value=0, max_value=63),
       st.integers(min_value=0, max_value=63))
def test_field_axioms_gf64(a, b, c):
    K = build_field(6)
    assert K.mul(a, b) == K.mul(b, a)
    assert K.mul(K.mul(a, b), c) == K.mul(a, K.mul(b, c))
    assert K.mul(a, b ^ c) == K.mul(a, b) ^ K.mul(a, c)


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=1, max_value=511))
def test_frobenius_fixes_trace_gf512(u):
    K = build_field(9)
    assert K.abs_trace(K.sqr(u)) == K.abs_trace(u)
