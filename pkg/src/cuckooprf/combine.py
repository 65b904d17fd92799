"""The two hash-and-XOR combiners used by every transformation.

Both evaluate a small number of underlying oracles at hashed positions
and XOR the results, in the style of cuckoo hashing's two-table layout:

  pp:   f1(h1(x)) ^ f2(h2(x)) ^ g(x)

  adw:  f1(inner1(x)) ^ f2(inner2(x)) ^ inner_y(x), where
        inner(h, mbar, x) = h(x) ^ XOR_i m_i(g_i(x))

The adw inner maps m_i and y_i range over a vector of z functions on a
small domain of u-bit values; the g-vector is shared between the two
halves and the y-part. With z = 0 the adw combiner degenerates to pp
with g = ell, which the tests pin down pointwise.

Inner maps are either RandomTable (table-backed: lookups, no oracle
calls) or Oracle instances (prf-backed: each lookup is an underlying
call). Hash slots are duck-typed: anything callable on a BitString
with domain_bits/range_bits attributes works, which admits plain
k-wise keys as well as range-restricted ones.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bits import BitString
from .hashfam import RandomTable, table_lookup
from .prfcore import InstrumentedOracle, Oracle


def _map_range_bits(m) -> int:
    return m.entry_bits if isinstance(m, RandomTable) else m.range_bits


def _map_domain_bits(m) -> int:
    if isinstance(m, RandomTable):
        return len(m.entries).bit_length() - 1
    return m.domain_bits


def _map_eval(m, v: BitString) -> BitString:
    if isinstance(m, RandomTable):
        return table_lookup(m, v.value)
    return m.query(v)


@dataclass(frozen=True)
class PPKey:
    h1: object
    h2: object
    g: object
    f1: Oracle
    f2: Oracle

    def __post_init__(self):
        d = self.h1.domain_bits
        if self.h2.domain_bits != d or self.g.domain_bits != d:
            raise ValueError("h1, h2, g must share one domain")
        if self.h1.range_bits != self.f1.domain_bits:
            raise ValueError("h1 range does not match f1 domain")
        if self.h2.range_bits != self.f2.domain_bits:
            raise ValueError("h2 range does not match f2 domain")
        if not (self.f1.range_bits == self.f2.range_bits == self.g.range_bits):
            raise ValueError("f1, f2, g must share one range")

    @property
    def domain_bits(self) -> int:
        return self.h1.domain_bits

    @property
    def range_bits(self) -> int:
        return self.f1.range_bits


def pp_eval(key: PPKey, x: BitString) -> BitString:
    return key.f1.query(key.h1(x)) ^ key.f2.query(key.h2(x)) ^ key.g(x)


class PPOracle(Oracle):
    def __init__(self, key: PPKey):
        super().__init__(key.domain_bits, key.range_bits, "pp")
        self.key = key

    def _answer(self, x: BitString) -> BitString:
        return pp_eval(self.key, x)


@dataclass(frozen=True)
class ADWKey:
    h1: object
    h2: object
    ell: object
    gbar: tuple
    m1bar: tuple
    m2bar: tuple
    ybar: tuple
    f1: Oracle
    f2: Oracle

    def __post_init__(self):
        z = len(self.gbar)
        if not (len(self.m1bar) == len(self.m2bar) == len(self.ybar) == z):
            raise ValueError("gbar, m1bar, m2bar, ybar must have equal length")
        d = self.h1.domain_bits
        if self.h2.domain_bits != d or self.ell.domain_bits != d:
            raise ValueError("h1, h2, ell must share one domain")
        for g in self.gbar:
            if g.domain_bits != d:
                raise ValueError("every g_i must share the extended domain")
        if self.h1.range_bits != self.f1.domain_bits:
            raise ValueError("h1 range does not match f1 domain")
        if self.h2.range_bits != self.f2.domain_bits:
            raise ValueError("h2 range does not match f2 domain")
        if self.f1.range_bits != self.f2.range_bits or self.ell.range_bits != self.f1.range_bits:
            raise ValueError("f1, f2, ell must share one range")
        for g, m1, m2, y in zip(self.gbar, self.m1bar, self.m2bar, self.ybar):
            u = g.range_bits
            for m, bits in ((m1, self.f1.domain_bits), (m2, self.f2.domain_bits),
                            (y, self.f1.range_bits)):
                if _map_domain_bits(m) != u:
                    raise ValueError(f"inner map domain is not {u} bits")
                if _map_range_bits(m) != bits:
                    raise ValueError(f"inner map range is not {bits} bits")

    @property
    def z(self) -> int:
        return len(self.gbar)

    @property
    def domain_bits(self) -> int:
        return self.h1.domain_bits

    @property
    def range_bits(self) -> int:
        return self.f1.range_bits


def adw_inner_eval(h, gbar, mbar, x: BitString, gvals=None) -> BitString:
    """h(x) ^ XOR_i m_i(g_i(x)). Pass gvals to reuse shared g evaluations."""
    if gvals is None:
        gvals = [g(x) for g in gbar]
    acc = h(x)
    for m, gv in zip(mbar, gvals):
        acc ^= _map_eval(m, gv)
    return acc


def adw_eval(key: ADWKey, x: BitString) -> BitString:
    gvals = [g(x) for g in key.gbar]  # shared between both halves and the y part
    a = key.f1.query(adw_inner_eval(key.h1, key.gbar, key.m1bar, x, gvals))
    b = key.f2.query(adw_inner_eval(key.h2, key.gbar, key.m2bar, x, gvals))
    c = adw_inner_eval(key.ell, key.gbar, key.ybar, x, gvals)
    return a ^ b ^ c


class ADWOracle(Oracle):
    def __init__(self, key: ADWKey):
        super().__init__(key.domain_bits, key.range_bits, "adw")
        self.key = key

    def _answer(self, x: BitString) -> BitString:
        return adw_eval(self.key, x)


class _CountingHash:
    def __init__(self, h):
        self.inner = h
        self.calls = 0
        self.domain_bits = h.domain_bits
        self.range_bits = h.range_bits

    def __call__(self, x: BitString) -> BitString:
        self.calls += 1
        return self.inner(x)


def count_underlying_calls(key, x: BitString) -> tuple[int, int]:
    """Evaluate once at x and report (f_calls, hash_calls).

    f_calls counts queries to underlying oracles: the two outer f's
    plus, for prf-backed inner maps, every inner lookup. Table-backed
    inner maps contribute nothing. hash_calls counts k-wise hash
    evaluations; the shared g-vector is evaluated once per g_i.
    """
    if isinstance(key, PPKey):
        h1, h2, g = _CountingHash(key.h1), _CountingHash(key.h2), _CountingHash(key.g)
        f1, f2 = InstrumentedOracle(key.f1), InstrumentedOracle(key.f2)
        pp_eval(PPKey(h1, h2, g, f1, f2), x)
        return f1.calls + f2.calls, h1.calls + h2.calls + g.calls
    if isinstance(key, ADWKey):
        hashes = [_CountingHash(h) for h in (key.h1, key.h2, key.ell)]
        gbar = tuple(_CountingHash(g) for g in key.gbar)
        wrap = lambda m: m if isinstance(m, RandomTable) else InstrumentedOracle(m)
        m1bar = tuple(wrap(m) for m in key.m1bar)
        m2bar = tuple(wrap(m) for m in key.m2bar)
        ybar = tuple(wrap(m) for m in key.ybar)
        f1, f2 = InstrumentedOracle(key.f1), InstrumentedOracle(key.f2)
        counted = ADWKey(hashes[0], hashes[1], hashes[2], gbar, m1bar, m2bar, ybar, f1, f2)
        adw_eval(counted, x)
        f_calls = f1.calls + f2.calls
        for m in (*m1bar, *m2bar, *ybar):
            if isinstance(m, InstrumentedOracle):
                f_calls += m.calls
        hash_calls = sum(h.calls for h in hashes) + sum(g.calls for g in gbar)
        return f_calls, hash_calls
    raise ValueError(f"not a combiner key: {type(key).__name__}")
