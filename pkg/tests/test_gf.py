import random

import pytest

from cuckooprf.gf import (
    DEFAULT_REDUCTION,
    SUPPORTED_WIDTHS,
    FieldElem,
    FieldSpec,
    default_spec,
    gf_add,
    gf_mul,
    gf_poly_eval,
)


def _mul_schoolbook(a, b, width, reduction):
    """Bitwise carryless multiply followed by long division, used as the
    independent oracle for every table-driven strategy."""
    acc = 0
    aa, bb = a, b
    while bb:
        if bb & 1:
            acc ^= aa
        aa <<= 1
        bb >>= 1
    for shift in range(acc.bit_length() - 1, width - 1, -1):
        if (acc >> shift) & 1:
            acc ^= reduction << (shift - width)
    return acc


def test_mul_matches_schoolbook_all_widths():
    rng = random.Random(201)
    for w in SUPPORTED_WIDTHS:
        spec = default_spec(w)
        red = DEFAULT_REDUCTION[w]
        for _ in range(1000):
            a = rng.getrandbits(w)
            b = rng.getrandbits(w)
            assert spec.mul_int(a, b) == _mul_schoolbook(a, b, w, red)


def test_mul_gf256_published_vectors():
    # 0x53 * 0xCA = 0x01 and 0x57 * 0x83 = 0xC1 in the AES field,
    # which uses the same reduction polynomial 0x11B
    spec = default_spec(8)
    assert spec.mul_int(0x53, 0xCA) == 0x01
    assert spec.mul_int(0x57, 0x83) == 0xC1
    assert spec.mul_int(0x57, 0x13) == 0xFE


def test_field_axioms_exhaustive_width4():
    spec = default_spec(4)
    elems = range(16)
    for a in elems:
        for b in elems:
            ab = spec.mul_int(a, b)
            assert ab == spec.mul_int(b, a)
            for c in elems:
                assert spec.mul_int(ab, c) == spec.mul_int(a, spec.mul_int(b, c))
                assert spec.mul_int(a, b ^ c) == ab ^ spec.mul_int(a, c)


def test_identity_and_zero_all_widths():
    rng = random.Random(202)
    for w in SUPPORTED_WIDTHS:
        spec = default_spec(w)
        for _ in range(50):
            a = rng.getrandbits(w)
            assert spec.mul_int(a, 1) == a
            assert spec.mul_int(1, a) == a
            assert spec.mul_int(a, 0) == 0


def test_every_nonzero_width4_element_has_inverse():
    spec = default_spec(4)
    for a in range(1, 16):
        inverses = [b for b in range(1, 16) if spec.mul_int(a, b) == 1]
        assert len(inverses) == 1


def test_nonzero_product_of_nonzero_elements():
    # no zero divisors in a field
    rng = random.Random(203)
    for w in SUPPORTED_WIDTHS:
        spec = default_spec(w)
        for _ in range(200):
            a = rng.getrandbits(w) | 1
            b = rng.getrandbits(w) | 1
            assert spec.mul_int(a, b) != 0


def test_gf_add_is_xor():
    a = FieldElem(0b1100, 4)
    b = FieldElem(0b1010, 4)
    assert gf_add(a, b) == FieldElem(0b0110, 4)
    with pytest.raises(ValueError):
        gf_add(a, FieldElem(3, 8))


def test_gf_mul_width_mismatch_rejected():
    with pytest.raises(ValueError):
        gf_mul(FieldElem(3, 4), FieldElem(3, 8))


def test_poly_eval_matches_power_sum():
    rng = random.Random(204)
    for w in SUPPORTED_WIDTHS:
        spec = default_spec(w)
        for _ in range(200):
            k = rng.randrange(1, 6)
            coeffs = [FieldElem(rng.getrandbits(w), w) for _ in range(k)]
            x = FieldElem(rng.getrandbits(w), w)
            # naive sum of a_i * x^i, with powers built by repeated multiply
            acc, xp = 0, 1
            for c in coeffs:
                acc ^= spec.mul_int(c.value, xp)
                xp = spec.mul_int(xp, x.value)
            assert gf_poly_eval(coeffs, x, spec).value == acc


def test_poly_eval_degenerate_cases():
    spec = default_spec(8)
    c0 = FieldElem(0xAB, 8)
    assert gf_poly_eval([c0], FieldElem(0x55, 8), spec) == c0
    zero = [FieldElem(0, 8), FieldElem(0, 8)]
    assert gf_poly_eval(zero, FieldElem(0xFF, 8), spec).value == 0


def test_fieldspec_rejects_reducible_polynomial():
    # x^16 + x^5 + x^3 + x + 1 is the shipped irreducible for width 16
    FieldSpec(16, 0x1002B)
    with pytest.raises(ValueError):
        FieldSpec(16, 0x1002A)
    with pytest.raises(ValueError):
        FieldSpec(8, 0x100)
    # x^4 + x^2 + 1 = (x^2 + x + 1)^2
    with pytest.raises(ValueError):
        FieldSpec(4, 0b10101)


def test_fieldspec_rejects_unsupported_width():
    with pytest.raises(ValueError):
        FieldSpec(5, 0x3F)
    with pytest.raises(ValueError):
        FieldElem(0, 12)


def test_fieldspec_equality_and_default_cache():
    assert default_spec(8) is default_spec(8)
    assert FieldSpec(8, 0x11B) == default_spec(8)
    assert hash(FieldSpec(8, 0x11B)) == hash(default_spec(8))


def test_alternate_irreducible_gives_different_field():
    # x^4 + x^3 + 1 is also irreducible over GF(2)
    alt = FieldSpec(4, 0b11001)
    std = default_spec(4)
    products_alt = [alt.mul_int(a, b) for a in range(16) for b in range(16)]
    products_std = [std.mul_int(a, b) for a in range(16) for b in range(16)]
    assert products_alt != products_std
    for a in range(1, 16):
        assert len([b for b in range(1, 16) if alt.mul_int(a, b) == 1]) == 1


def test_elem_value_range_checked():
    with pytest.raises(ValueError):
        FieldElem(16, 4)
    with pytest.raises(ValueError):
        FieldElem(-1, 8)
