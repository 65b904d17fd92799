"""k-wise independent hash families and small random tables.

The family for a given (k, domain_bits, range_bits) is all polynomials
of degree at most k-1 over GF(2^w), where w is the smallest supported
width covering both the domain and the range. Inputs are zero-extended
to w bits, the polynomial is evaluated, and the output is truncated to
the low range_bits bits. Truncation preserves exact k-wise independence
because every r-bit value has exactly 2^(w-r) preimages under it.

Range restriction to a table of size t (a power of two) keeps the low
log2(t) bits and zero-extends to the ambient length, so outputs range
over exactly the first t strings of the ambient domain in lexicographic
order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .bits import BitString, truncate
from .errors import ConfigurationError
from .gf import SUPPORTED_WIDTHS, FieldSpec, default_spec


def width_for(domain_bits: int, range_bits: int) -> int:
    """Smallest supported field width covering domain and range."""
    need = max(domain_bits, range_bits)
    for w in SUPPORTED_WIDTHS:
        if w >= need:
            return w
    raise ValueError(f"no supported width covers {need} bits")


@dataclass(frozen=True)
class KWiseHashKey:
    """Coefficients a0..a_{k-1} of a degree-(k-1) polynomial over GF(2^w)."""

    coeffs: tuple[int, ...]
    domain_bits: int
    range_bits: int
    width: int

    def __post_init__(self):
        if len(self.coeffs) < 1:
            raise ValueError("at least one coefficient required")
        if self.domain_bits < 1 or self.range_bits < 1:
            raise ValueError("domain_bits and range_bits must be positive")
        if self.width not in SUPPORTED_WIDTHS or self.width < max(self.domain_bits, self.range_bits):
            raise ValueError(f"width {self.width} cannot host {self.domain_bits}->{self.range_bits}")
        for c in self.coeffs:
            if not 0 <= c < (1 << self.width):
                raise ValueError(f"coefficient {c:#x} out of range for width {self.width}")

    @property
    def k(self) -> int:
        return len(self.coeffs)

    @property
    def spec(self) -> FieldSpec:
        return default_spec(self.width)

    def coeffs_hex(self) -> list[str]:
        """Coefficients as fixed-width hex, a0 first. For experiment logs."""
        digits = self.width // 4
        return [format(c, f"0{digits}x") for c in self.coeffs]

    def __call__(self, x: BitString) -> BitString:
        return eval_kwise(self, x)


def sample_kwise(k: int, domain_bits: int, range_bits: int, rng) -> KWiseHashKey:
    """Draw a uniform family member. Consumes exactly k*w random bits."""
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    w = width_for(domain_bits, range_bits)
    coeffs = tuple(rng.getrandbits(w) for _ in range(k))
    return KWiseHashKey(coeffs, domain_bits, range_bits, w)


def eval_kwise(key: KWiseHashKey, x: BitString) -> BitString:
    if x.length != key.domain_bits:
        raise ValueError(f"input length {x.length}, expected {key.domain_bits}")
    spec = key.spec
    coeffs = key.coeffs
    acc = coeffs[-1]
    xv = x.value
    for c in reversed(coeffs[:-1]):
        acc = spec.mul_int(acc, xv) ^ c
    return BitString(truncate(acc, key.range_bits), key.range_bits)


@dataclass(frozen=True)
class RangeRestriction:
    """Restriction of outputs to the first table_size strings of {0,1}^ambient_bits."""

    table_size: int
    ambient_bits: int

    def __post_init__(self):
        if self.table_size < 1 or self.table_size & (self.table_size - 1):
            raise ConfigurationError(f"table_size {self.table_size} is not a power of two")
        if self.index_bits > self.ambient_bits:
            raise ConfigurationError(
                f"table_size {self.table_size} exceeds ambient domain of {self.ambient_bits} bits"
            )

    @property
    def index_bits(self) -> int:
        return self.table_size.bit_length() - 1


@dataclass(frozen=True)
class RestrictedHash:
    """A k-wise key post-composed with a range restriction.

    Keeps the low index bits of the key's output and zero-extends to
    the ambient length, so values always land below table_size.
    """

    key: KWiseHashKey
    restriction: RangeRestriction

    @property
    def domain_bits(self) -> int:
        return self.key.domain_bits

    @property
    def range_bits(self) -> int:
        return self.restriction.ambient_bits

    def __call__(self, x: BitString) -> BitString:
        j = self.restriction.index_bits
        return eval_kwise(self.key, x).truncate_low(j).zero_extend(self.restriction.ambient_bits)


def restrict_to_table(key: KWiseHashKey, restriction: RangeRestriction) -> RestrictedHash:
    if key.range_bits < restriction.index_bits:
        raise ValueError(
            f"key range of {key.range_bits} bits cannot index a table of {restriction.table_size}"
        )
    return RestrictedHash(key, restriction)


@dataclass(frozen=True)
class RandomTable:
    """A table of uniform entries; the oracle-free stand-in for inner PRF calls."""

    entries: tuple[int, ...]
    entry_bits: int

    def __post_init__(self):
        if not self.entries:
            raise ValueError("empty table")
        if self.entry_bits < 1:
            raise ValueError("entry_bits must be positive")
        for e in self.entries:
            if not 0 <= e < (1 << self.entry_bits):
                raise ValueError(f"entry {e:#x} out of range for {self.entry_bits} bits")

    def __len__(self):
        return len(self.entries)


def sample_table(count: int, entry_bits: int, rng) -> RandomTable:
    if count < 1:
        raise ValueError(f"count must be positive, got {count}")
    return RandomTable(tuple(rng.getrandbits(entry_bits) for _ in range(count)), entry_bits)


def table_lookup(table: RandomTable, index: int) -> BitString:
    if not 0 <= index < len(table.entries):
        raise ValueError(f"index {index} out of range for table of {len(table.entries)}")
    return BitString(table.entries[index], table.entry_bits)


@dataclass(frozen=True)
class IndependenceReport:
    ok: bool
    keys_enumerated: int
    tuples_checked: int
    expected_count: int


def exhaustive_independence_check(k: int, width: int = 4, range_bits: int | None = None) -> IndependenceReport:
    """Verify exact k-wise independence by enumerating every key.

    For every ordered k-tuple of distinct inputs, every output k-tuple
    must occur for exactly keys / 2^(range_bits*k) keys. Only w=4 with
    k <= 3 is within policy; larger fields make full enumeration
    pointless rather than merely slow.
    """
    if width != 4 or not 1 <= k <= 3:
        raise ConfigurationError(
            f"exhaustive check is limited to width 4 with k <= 3; got width {width}, k {k}. "
            "Use the sampled experiments (uniformity, birthday) for larger parameters."
        )
    r = width if range_bits is None else range_bits
    if not 1 <= r <= width:
        raise ConfigurationError(f"range_bits {r} must be in 1..{width}")

    spec = default_spec(width)
    n = 1 << width
    mul = np.array([[spec.mul_int(a, b) for b in range(n)] for a in range(n)], dtype=np.uint8)

    n_keys = n**k
    # coefficient j of key i is digit j of i in base 2^width, a0 first
    idx = np.arange(n_keys, dtype=np.uint32)
    coeff = [(idx >> np.uint32(width * j)).astype(np.uint8) & np.uint8(n - 1) for j in range(k)]

    rmask = np.uint8((1 << r) - 1)
    evals = np.empty((n_keys, n), dtype=np.uint8)
    for x in range(n):
        acc = coeff[k - 1].copy()
        for j in range(k - 2, -1, -1):
            acc = mul[acc, x] ^ coeff[j]
        evals[:, x] = acc & rmask

    expected, rem = divmod(n_keys, (1 << r) ** k)
    if rem:
        raise ConfigurationError("key count is not a multiple of the output tuple count")

    ok = True
    tuples_checked = 0
    n_codes = (1 << r) ** k
    for xs in itertools.permutations(range(n), k):
        code = evals[:, xs[0]].astype(np.uint32)
        for x in xs[1:]:
            code = (code << np.uint32(r)) | evals[:, x]
        counts = np.bincount(code, minlength=n_codes)
        tuples_checked += 1
        if not (counts == expected).all():
            ok = False
            break
    return IndependenceReport(ok, n_keys, tuples_checked, expected)
