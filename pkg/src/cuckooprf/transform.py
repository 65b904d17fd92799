"""Builders for the PRF transformations.

Each builder samples fresh key material from a caller-supplied rng,
validates the parameter constraints it relies on, and returns a ready
oracle. Underlying PRF instances come from an f_sampler callable
(rng, domain_bits, range_bits) -> Oracle; the default is lazy-random,
which makes experiments exact: the combiner is then measured against
a genuinely random backing function, so any distinguishing advantage
is attributable to the combiner itself.

The four transformations:

  build_pp_domain_extension      s-bit-domain PRF -> d-bit-domain PRF,
                                 two calls per query, q <= 2^(s-2)
  build_adaptive_from_nonadaptive
                                 nonadaptively-secure PRF -> adaptively
                                 secure PRF; every underlying query
                                 lands in the first 4q strings
  build_adw_domain_extension     like pp but with z inner maps; the
                                 "prf" variant spends 3z+2 calls, the
                                 "table" variant 2 calls plus lookups
  build_prg_prf                  length-doubling generator -> PRF via
                                 hashed tree evaluation, 2m generator
                                 calls per query

A table-backed adaptive-security variant (build_adw_adaptive_from_
nonadaptive) mirrors the second builder with tabulated inner maps
whose entries stay inside the first 4q strings, preserving locality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .bits import BitString
from .combine import ADWKey, ADWOracle, PPKey, PPOracle
from .errors import ConfigurationError
from .hashfam import (
    RandomTable,
    RangeRestriction,
    restrict_to_table,
    sample_kwise,
)
from .prfcore import GgmKey, GgmOracle, LazyRandomOracle, Oracle, PrgSpec


@dataclass(frozen=True)
class ExtensionParams:
    """Shared shape of a domain extension: d-bit inputs, an underlying
    PRF from s bits to r bits, independence k, query budget q, and the
    polynomial hardness exponent c used by the adw variants."""

    d: int
    s: int
    r: int
    k: int
    q: int
    c: int = 1

    def __post_init__(self):
        if self.s < 1 or self.r < 1:
            raise ConfigurationError("s and r must be positive")
        if self.d < self.s:
            raise ConfigurationError(f"extended domain d={self.d} below underlying s={self.s}")
        if self.k < 2:
            raise ConfigurationError(f"independence k must be at least 2, got {self.k}")
        if self.q < 1:
            raise ConfigurationError("query budget q must be positive")
        if self.c < 1:
            raise ConfigurationError("hardness exponent c must be at least 1")


def default_independence(q: int) -> int:
    """Default k = Theta(log q) for the pp-style builders."""
    return math.ceil(2 * math.log2(max(q, 2))) + 4


def default_ggm_input_bits(q: int) -> int:
    """Hashed-tree input length covering a budget of q queries."""
    if q < 1:
        raise ConfigurationError("query budget q must be positive")
    return math.ceil(math.log2(q)) + 2


def lazy_random_sampler(rng, domain_bits: int, range_bits: int) -> LazyRandomOracle:
    return LazyRandomOracle(rng.getrandbits(64), domain_bits, range_bits)


def _check_query_budget(q: int, s: int):
    if q > 1 << (s - 2):
        raise ConfigurationError(f"query budget q={q} exceeds 2^(s-2)={1 << (s - 2)}")


def build_pp_domain_extension(p: ExtensionParams, rng, f_sampler=None) -> PPOracle:
    """pp combiner over two fresh underlying PRFs: d-bit domain from
    s-bit domain at exactly two underlying calls per query."""
    f_sampler = f_sampler or lazy_random_sampler
    _check_query_budget(p.q, p.s)
    h1 = sample_kwise(p.k, p.d, p.s, rng)
    h2 = sample_kwise(p.k, p.d, p.s, rng)
    g = sample_kwise(p.k, p.d, p.r, rng)
    f1 = f_sampler(rng, p.s, p.r)
    f2 = f_sampler(rng, p.s, p.r)
    return PPOracle(PPKey(h1, h2, g, f1, f2))


def build_adaptive_from_nonadaptive(n: int, q: int, k: int, rng, f_sampler=None) -> PPOracle:
    """pp combiner with both hash ranges restricted to the first 4q
    strings of {0,1}^n, so the underlying PRFs are only ever evaluated
    inside that prefix; a nonadaptively secure f suffices there because
    the full query set is fixed in advance.
    """
    f_sampler = f_sampler or lazy_random_sampler
    if k < 2:
        raise ConfigurationError(f"independence k must be at least 2, got {k}")
    if q < 1 or q & (q - 1):
        raise ConfigurationError(f"query budget q={q} must be a power of two")
    if 4 * q > 1 << n:
        raise ConfigurationError(f"4q={4 * q} exceeds the domain of {n} bits")
    restriction = RangeRestriction(4 * q, n)
    h1 = restrict_to_table(sample_kwise(k, n, n, rng), restriction)
    h2 = restrict_to_table(sample_kwise(k, n, n, rng), restriction)
    g = sample_kwise(k, n, n, rng)
    f1 = f_sampler(rng, n, n)
    f2 = f_sampler(rng, n, n)
    return PPOracle(PPKey(h1, h2, g, f1, f2))


def adw_z(p: ExtensionParams, variant: str) -> int:
    if variant == "prf":
        return 2 * (p.c + 2)
    if variant == "table":
        return 2 * (p.c + 2) * math.ceil(math.log2(p.q))
    raise ConfigurationError(f"unknown adw variant {variant!r}")


class PaddedPrfMap(Oracle):
    """A u-bit to r'-bit view of a wider oracle: zero-extend the input
    to the oracle's domain, truncate the output. How one underlying PRF
    shape serves every inner-map shape the adw combiner needs."""

    def __init__(self, f: Oracle, domain_bits: int, range_bits: int):
        if domain_bits > f.domain_bits or range_bits > f.range_bits:
            raise ConfigurationError(
                f"{domain_bits}->{range_bits} view does not embed in "
                f"{f.domain_bits}->{f.range_bits}"
            )
        super().__init__(domain_bits, range_bits, "composite")
        self.f = f

    def _answer(self, x: BitString) -> BitString:
        return self.f.query(x.zero_extend(self.f.domain_bits)).truncate_low(self.range_bits)


def build_adw_domain_extension(p: ExtensionParams, variant: str, rng, f_sampler=None) -> ADWOracle:
    """adw combiner in one of two shapes.

    variant "prf": z = 2(c+2) inner maps on u = log2(q) bits, each
    realized through a fresh underlying PRF instance with zero-padded
    input (and truncated output for the m maps), so one query spends
    3z+2 underlying calls. Requires u <= s <= r.

    variant "table": z = 2(c+2)*ceil(log2 q) inner maps on one bit,
    each a 2-entry random table, so one query spends exactly two
    underlying calls.
    """
    f_sampler = f_sampler or lazy_random_sampler
    z = adw_z(p, variant)
    _check_query_budget(p.q, p.s)
    h1 = sample_kwise(2, p.d, p.s, rng)
    h2 = sample_kwise(2, p.d, p.s, rng)
    ell = sample_kwise(2, p.d, p.r, rng)
    if variant == "prf":
        if p.q < 2:
            raise ConfigurationError("prf-backed adw needs q >= 2")
        u = math.ceil(math.log2(p.q))
        if not u <= p.s <= p.r:
            raise ConfigurationError(f"need u <= s <= r, got u={u}, s={p.s}, r={p.r}")
        gbar = tuple(sample_kwise(2, p.d, u, rng) for _ in range(z))

        def prf_map(range_bits: int) -> PaddedPrfMap:
            return PaddedPrfMap(f_sampler(rng, p.s, p.r), u, range_bits)

        m1bar = tuple(prf_map(p.s) for _ in range(z))
        m2bar = tuple(prf_map(p.s) for _ in range(z))
        ybar = tuple(prf_map(p.r) for _ in range(z))
    else:
        gbar = tuple(sample_kwise(2, p.d, 1, rng) for _ in range(z))
        m1bar = tuple(RandomTable((rng.getrandbits(p.s), rng.getrandbits(p.s)), p.s) for _ in range(z))
        m2bar = tuple(RandomTable((rng.getrandbits(p.s), rng.getrandbits(p.s)), p.s) for _ in range(z))
        ybar = tuple(RandomTable((rng.getrandbits(p.r), rng.getrandbits(p.r)), p.r) for _ in range(z))
    f1 = f_sampler(rng, p.s, p.r)
    f2 = f_sampler(rng, p.s, p.r)
    return ADWOracle(ADWKey(h1, h2, ell, gbar, m1bar, m2bar, ybar, f1, f2))


def build_adw_adaptive_from_nonadaptive(n: int, q: int, c: int, rng, f_sampler=None) -> ADWOracle:
    """Table-backed adw analogue of build_adaptive_from_nonadaptive.

    Hash ranges and m-table entries all live in the first 4q strings
    of {0,1}^n; XOR cannot leave that prefix (4q is a power of two),
    so underlying queries stay inside it.
    """
    f_sampler = f_sampler or lazy_random_sampler
    if q < 2 or q & (q - 1):
        raise ConfigurationError(f"query budget q={q} must be a power of two, at least 2")
    if 4 * q > 1 << n:
        raise ConfigurationError(f"4q={4 * q} exceeds the domain of {n} bits")
    if c < 1:
        raise ConfigurationError("hardness exponent c must be at least 1")
    z = 2 * (c + 2) * math.ceil(math.log2(q))
    restriction = RangeRestriction(4 * q, n)
    j = restriction.index_bits
    h1 = restrict_to_table(sample_kwise(2, n, n, rng), restriction)
    h2 = restrict_to_table(sample_kwise(2, n, n, rng), restriction)
    ell = sample_kwise(2, n, n, rng)
    gbar = tuple(sample_kwise(2, n, 1, rng) for _ in range(z))
    m1bar = tuple(RandomTable((rng.getrandbits(j), rng.getrandbits(j)), n) for _ in range(z))
    m2bar = tuple(RandomTable((rng.getrandbits(j), rng.getrandbits(j)), n) for _ in range(z))
    ybar = tuple(RandomTable((rng.getrandbits(n), rng.getrandbits(n)), n) for _ in range(z))
    f1 = f_sampler(rng, n, n)
    f2 = f_sampler(rng, n, n)
    return ADWOracle(ADWKey(h1, h2, ell, gbar, m1bar, m2bar, ybar, f1, f2))


def build_prg_prf(prg: PrgSpec, m: int, n: int, k: int, q: int, rng) -> PPOracle:
    """PRF from a length-doubling generator: pp over two tree PRFs with
    hashed m-bit inputs. One query costs two tree walks, hence exactly
    2m generator calls. Requires q <= 2^(m-2).
    """
    if prg.seed_bits != n:
        raise ConfigurationError(f"prg seed of {prg.seed_bits} bits, output domain needs {n}")
    if k < 2:
        raise ConfigurationError(f"independence k must be at least 2, got {k}")
    if m < 2 or q > 1 << (m - 2):
        raise ConfigurationError(f"query budget q={q} exceeds 2^(m-2) for m={m}")
    h1 = sample_kwise(k, n, m, rng)
    h2 = sample_kwise(k, n, m, rng)
    g = sample_kwise(k, n, n, rng)
    f1 = GgmOracle(GgmKey(BitString(rng.getrandbits(n), n), m, prg))
    f2 = GgmOracle(GgmKey(BitString(rng.getrandbits(n), n), m, prg))
    return PPOracle(PPKey(h1, h2, g, f1, f2))
