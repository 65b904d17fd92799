import random

import pytest

from cuckooprf.bits import BitString
from cuckooprf.combine import (
    ADWKey,
    ADWOracle,
    PPKey,
    PPOracle,
    adw_eval,
    adw_inner_eval,
    count_underlying_calls,
    pp_eval,
)
from cuckooprf.hashfam import RandomTable, sample_kwise, sample_table
from cuckooprf.prfcore import FunctionOracle, LazyRandomOracle


def _bit_low(x):
    return x.truncate_low(1)


def _bit_high(x):
    return x.take(1)


def _tiny_pp_key():
    # 2-bit inputs, 1-bit hash positions, 2-bit outputs, all slots explicit
    h1 = FunctionOracle(_bit_low, 2, 1)
    h2 = FunctionOracle(_bit_high, 2, 1)
    g = FunctionOracle(lambda x: x, 2, 2)
    f1 = FunctionOracle(lambda p: BitString.from01("01" if p.value == 0 else "10"), 1, 2)
    f2 = FunctionOracle(lambda p: BitString.from01("11" if p.value == 0 else "00"), 1, 2)
    return PPKey(h1, h2, g, f1, f2)


def test_pp_hand_vector():
    key = _tiny_pp_key()
    # x = 10: f1(low bit 0) = 01, f2(high bit 1) = 00, g = 10, XOR = 11
    assert pp_eval(key, BitString.from01("10")).to01() == "11"


def test_pp_full_truth_table():
    key = _tiny_pp_key()
    expected = {"00": "10", "01": "00", "10": "11", "11": "01"}
    for x, y in expected.items():
        assert pp_eval(key, BitString.from01(x)).to01() == y


def test_pp_matching_halves_cancel_to_g():
    # h1 == h2 and f1 == f2 make the two oracle terms cancel
    rng = random.Random(401)
    h = sample_kwise(3, 6, 4, rng)
    g = sample_kwise(3, 6, 5, rng)
    f = LazyRandomOracle(9, 4, 5)
    key = PPKey(h, h, g, f, f)
    for v in range(64):
        x = BitString(v, 6)
        assert pp_eval(key, x) == g(x)


def test_pp_zero_oracles_leave_g():
    zero = FunctionOracle(lambda p: BitString(0, 5), 4, 5)
    rng = random.Random(402)
    h1 = sample_kwise(2, 6, 4, rng)
    h2 = sample_kwise(2, 6, 4, rng)
    g = sample_kwise(2, 6, 5, rng)
    key = PPKey(h1, h2, g, zero, zero)
    for v in range(64):
        x = BitString(v, 6)
        assert pp_eval(key, x) == g(x)


def test_pp_oracle_wraps_eval():
    key = _tiny_pp_key()
    o = PPOracle(key)
    assert o.kind == "pp"
    assert o.domain_bits == 2 and o.range_bits == 2
    for v in range(4):
        x = BitString(v, 2)
        assert o.query(x) == pp_eval(key, x)


def test_pp_key_shape_validation():
    rng = random.Random(403)
    h1 = sample_kwise(2, 6, 4, rng)
    h2 = sample_kwise(2, 6, 4, rng)
    g = sample_kwise(2, 6, 5, rng)
    f_good = LazyRandomOracle(1, 4, 5)
    with pytest.raises(ValueError):
        PPKey(h1, h2, g, LazyRandomOracle(1, 3, 5), f_good)
    with pytest.raises(ValueError):
        PPKey(h1, h2, g, f_good, LazyRandomOracle(1, 4, 6))
    with pytest.raises(ValueError):
        PPKey(h1, sample_kwise(2, 5, 4, rng), g, f_good, f_good)


def test_pp_exactly_two_underlying_calls():
    rng = random.Random(404)
    h1 = sample_kwise(2, 8, 4, rng)
    h2 = sample_kwise(2, 8, 4, rng)
    g = sample_kwise(2, 8, 6, rng)
    key = PPKey(h1, h2, g, LazyRandomOracle(2, 4, 6), LazyRandomOracle(3, 4, 6))
    for v in (0, 17, 255):
        f_calls, hash_calls = count_underlying_calls(key, BitString(v, 8))
        assert f_calls == 2
        assert hash_calls == 3


def _small_adw_key(z, seed, table_maps=True):
    """d=6 inputs, s=4 positions, r=5 outputs, u=2 inner domain."""
    rng = random.Random(seed)
    d, s, r, u = 6, 4, 5, 2
    h1 = sample_kwise(2, d, s, rng)
    h2 = sample_kwise(2, d, s, rng)
    ell = sample_kwise(2, d, r, rng)
    gbar = tuple(sample_kwise(2, d, u, rng) for _ in range(z))
    if table_maps:
        m1bar = tuple(sample_table(1 << u, s, rng) for _ in range(z))
        m2bar = tuple(sample_table(1 << u, s, rng) for _ in range(z))
        ybar = tuple(sample_table(1 << u, r, rng) for _ in range(z))
    else:
        m1bar = tuple(LazyRandomOracle(rng.getrandbits(64), u, s) for _ in range(z))
        m2bar = tuple(LazyRandomOracle(rng.getrandbits(64), u, s) for _ in range(z))
        ybar = tuple(LazyRandomOracle(rng.getrandbits(64), u, r) for _ in range(z))
    f1 = LazyRandomOracle(rng.getrandbits(64), s, r)
    f2 = LazyRandomOracle(rng.getrandbits(64), s, r)
    return ADWKey(h1, h2, ell, gbar, m1bar, m2bar, ybar, f1, f2)


def test_adw_z_property():
    assert _small_adw_key(0, 1).z == 0
    assert _small_adw_key(3, 1).z == 3


def test_adw_zero_z_degenerates_to_pp():
    key = _small_adw_key(0, 405)
    pp = PPKey(key.h1, key.h2, key.ell, key.f1, key.f2)
    for v in range(64):
        x = BitString(v, 6)
        assert adw_eval(key, x) == pp_eval(pp, x)


def test_adw_zero_tables_reduce_to_ell():
    key = _small_adw_key(2, 406)
    zeroed = ADWKey(
        key.h1, key.h2, key.ell, key.gbar,
        tuple(RandomTable((0,) * 4, 4) for _ in range(2)),
        tuple(RandomTable((0,) * 4, 4) for _ in range(2)),
        tuple(RandomTable((0,) * 4, 5) for _ in range(2)),
        key.f1, key.f2,
    )
    pp = PPKey(key.h1, key.h2, key.ell, key.f1, key.f2)
    for v in range(64):
        x = BitString(v, 6)
        assert adw_eval(zeroed, x) == pp_eval(pp, x)


def test_adw_single_map_straight_line():
    """z = 1 recomputed with no library plumbing at all."""
    key = _small_adw_key(1, 407)
    g1, t1, t2, ty = key.gbar[0], key.m1bar[0], key.m2bar[0], key.ybar[0]
    for v in range(64):
        x = BitString(v, 6)
        i = g1(x).value
        p1 = key.h1(x) ^ BitString(t1.entries[i], 4)
        p2 = key.h2(x) ^ BitString(t2.entries[i], 4)
        want = key.f1.query(p1) ^ key.f2.query(p2) ^ key.ell(x) ^ BitString(ty.entries[i], 5)
        assert adw_eval(key, x) == want


def test_adw_inner_eval_accepts_precomputed_gvals():
    key = _small_adw_key(2, 408)
    x = BitString(33, 6)
    gvals = [g(x) for g in key.gbar]
    direct = adw_inner_eval(key.h1, key.gbar, key.m1bar, x)
    assert adw_inner_eval(key.h1, key.gbar, key.m1bar, x, gvals) == direct


def test_adw_oracle_wraps_eval():
    key = _small_adw_key(2, 409)
    o = ADWOracle(key)
    assert o.kind == "adw"
    for v in (0, 11, 63):
        x = BitString(v, 6)
        assert o.query(x) == adw_eval(key, x)


def test_adw_table_maps_cost_two_calls():
    key = _small_adw_key(3, 410, table_maps=True)
    f_calls, hash_calls = count_underlying_calls(key, BitString(21, 6))
    assert f_calls == 2
    # h1, h2, ell, and each g_i exactly once
    assert hash_calls == 3 + 3


def test_adw_prf_maps_cost_three_z_plus_two_calls():
    for z in (1, 2, 4):
        key = _small_adw_key(z, 411, table_maps=False)
        f_calls, hash_calls = count_underlying_calls(key, BitString(5, 6))
        assert f_calls == 3 * z + 2
        assert hash_calls == 3 + z


def test_adw_key_shape_validation():
    key = _small_adw_key(2, 412)
    with pytest.raises(ValueError):
        ADWKey(key.h1, key.h2, key.ell, key.gbar, key.m1bar[:1], key.m2bar, key.ybar,
               key.f1, key.f2)
    bad_map = RandomTable((0, 0, 0, 0), 3)  # wrong entry width for f1's domain
    with pytest.raises(ValueError):
        ADWKey(key.h1, key.h2, key.ell, key.gbar, (key.m1bar[0], bad_map), key.m2bar,
               key.ybar, key.f1, key.f2)
    with pytest.raises(ValueError):
        ADWKey(key.h1, key.h2, sample_kwise(2, 5, 5, random.Random(0)), key.gbar,
               key.m1bar, key.m2bar, key.ybar, key.f1, key.f2)


def test_count_underlying_calls_rejects_other_keys():
    with pytest.raises(ValueError):
        count_underlying_calls(object(), BitString(0, 4))


def test_counting_does_not_disturb_the_answer():
    key = _small_adw_key(2, 413)
    x = BitString(44, 6)
    before = adw_eval(key, x)
    count_underlying_calls(key, x)
    assert adw_eval(key, x) == before
