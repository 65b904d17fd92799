"""Oracles: lazy-random functions, length-doubling generators, the GGM
tree, and the hash-then-query baseline.

An Oracle is a deterministic keyed function on bit strings with
explicit domain and range lengths. Determinism is the load-bearing
property: a distinguisher may interleave queries in any order and must
see one consistent function, which the game harness relies on.

A lazy-random oracle is the experiment stand-in for a truly random
function. Answers are derived per query as

    answer(seed, x) = truncate(mix64(seed ^ mix64(x ^ C1)), range_bits)

so two oracles with equal seeds are pointwise equal and no table of
size 2^domain ever materializes.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bits import C1, C2, BitString, mix64, truncate
from .errors import ConfigurationError

ORACLE_KINDS = ("lazy-random", "ggm", "pp", "adw", "levin", "involution", "composite")


class Oracle:
    """Base class: length-checked querying plus kind/shape metadata."""

    def __init__(self, domain_bits: int, range_bits: int, kind: str):
        if domain_bits < 0 or range_bits < 1:
            raise ValueError(f"bad oracle shape {domain_bits}->{range_bits}")
        if kind not in ORACLE_KINDS:
            raise ValueError(f"unknown oracle kind {kind!r}")
        self.domain_bits = domain_bits
        self.range_bits = range_bits
        self.kind = kind

    def query(self, x: BitString) -> BitString:
        if x.length != self.domain_bits:
            raise ValueError(f"query length {x.length}, oracle domain is {self.domain_bits} bits")
        return self._answer(x)

    __call__ = query

    def _answer(self, x: BitString) -> BitString:
        raise NotImplementedError


def lazy_answer(seed: int, x_as_64: int, range_bits: int) -> int:
    """The raw derivation rule; shared with the batched engine."""
    return truncate(mix64(seed ^ mix64(x_as_64 ^ C1)), range_bits)


class LazyRandomOracle(Oracle):
    def __init__(self, seed: int, domain_bits: int, range_bits: int):
        super().__init__(domain_bits, range_bits, "lazy-random")
        if domain_bits > 64:
            raise ConfigurationError(f"lazy-random domain capped at 64 bits, got {domain_bits}")
        if range_bits > 64:
            raise ConfigurationError(f"lazy-random range capped at 64 bits, got {range_bits}")
        self.seed = seed & ((1 << 64) - 1)
        self.memo: dict[int, int] = {}

    def _answer(self, x: BitString) -> BitString:
        v = self.memo.get(x.value)
        if v is None:
            v = lazy_answer(self.seed, x.value, self.range_bits)
            self.memo[x.value] = v
        return BitString(v, self.range_bits)


class FunctionOracle(Oracle):
    """Wrap an arbitrary function as an oracle. The function must be pure."""

    def __init__(self, fn, domain_bits: int, range_bits: int, kind: str = "composite"):
        super().__init__(domain_bits, range_bits, kind)
        self._fn = fn

    def _answer(self, x: BitString) -> BitString:
        y = self._fn(x)
        if y.length != self.range_bits:
            raise ValueError(f"wrapped function returned {y.length} bits, expected {self.range_bits}")
        return y


class InstrumentedOracle(Oracle):
    """Forwarding wrapper that records call count and the query sequence."""

    def __init__(self, inner: Oracle):
        super().__init__(inner.domain_bits, inner.range_bits, inner.kind)
        self.inner = inner
        self.calls = 0
        self.queries: list[BitString] = []

    def _answer(self, x: BitString) -> BitString:
        self.calls += 1
        self.queries.append(x)
        return self.inner._answer(x)


@dataclass(frozen=True)
class PrgSpec:
    """A length-doubling generator {0,1}^n -> {0,1}^2n.

    kind "stub-complement" returns s || complement(s): trivially not
    pseudorandom, but its transparent structure makes tree evaluations
    checkable by hand. kind "mix64" returns
    truncate(mix64(s ^ C1), n) || truncate(mix64(s ^ C2), n).
    """

    kind: str
    seed_bits: int

    def __post_init__(self):
        if self.kind not in ("stub-complement", "mix64"):
            raise ValueError(f"unknown prg kind {self.kind!r}")
        if self.seed_bits < 1:
            raise ValueError("seed_bits must be positive")
        if self.kind == "mix64" and self.seed_bits > 64:
            raise ConfigurationError("mix64 prg is limited to 64-bit seeds")


def prg_expand(spec: PrgSpec, s: BitString) -> BitString:
    """Expand an n-bit seed to exactly 2n bits."""
    if s.length != spec.seed_bits:
        raise ValueError(f"seed length {s.length}, spec says {spec.seed_bits}")
    n = spec.seed_bits
    if spec.kind == "stub-complement":
        comp = s.value ^ ((1 << n) - 1)
        return s.concat(BitString(comp, n))
    left = truncate(mix64(s.value ^ C1), n)
    right = truncate(mix64(s.value ^ C2), n)
    return BitString(left, n).concat(BitString(right, n))


@dataclass(frozen=True)
class GgmKey:
    """Root seed and input length of a tree-expansion PRF.

    The value at input x is the leaf reached by walking x's bits
    left to right from the root seed: the seed at node w expands to
    the seeds of w||0 (left half) and w||1 (right half).
    """

    root_seed: BitString
    input_bits: int
    prg: PrgSpec

    def __post_init__(self):
        if self.root_seed.length != self.prg.seed_bits:
            raise ValueError(
                f"root seed has {self.root_seed.length} bits, prg expects {self.prg.seed_bits}"
            )
        if self.input_bits < 0:
            raise ValueError("input_bits must be nonnegative")


def ggm_eval(key: GgmKey, x: BitString, expand=None, on_node=None) -> BitString:
    """Evaluate the tree PRF at x with exactly x.length expansions.

    expand defaults to prg_expand; pass a wrapper to count calls.
    on_node(i, seed) is invoked with the intermediate seed after
    consuming i bits, i = 0..input_bits; useful for checking that
    inputs with a common prefix share the corresponding path.
    """
    if x.length != key.input_bits:
        raise ValueError(f"input length {x.length}, key expects {key.input_bits}")
    if expand is None:
        expand = prg_expand
    n = key.prg.seed_bits
    seed = key.root_seed
    if on_node is not None:
        on_node(0, seed)
    for i in range(x.length):
        both = expand(key.prg, seed)
        seed = both.take(n) if x.bit(i) == 0 else both.drop(n)
        if on_node is not None:
            on_node(i + 1, seed)
    return seed


class GgmOracle(Oracle):
    def __init__(self, key: GgmKey):
        super().__init__(key.input_bits, key.prg.seed_bits, "ggm")
        self.key = key
        self.prg_calls = 0

    def _counting_expand(self, spec: PrgSpec, s: BitString) -> BitString:
        self.prg_calls += 1
        return prg_expand(spec, s)

    def _answer(self, x: BitString) -> BitString:
        return ggm_eval(self.key, x, expand=self._counting_expand)


def levin_eval(h, f: Oracle, x: BitString) -> BitString:
    """Hash-then-query: f(h(x)). The domain-extension baseline that the
    birthday experiment breaks at roughly 2^(s/2) queries."""
    return f.query(h(x))


class LevinOracle(Oracle):
    def __init__(self, h, f: Oracle):
        if h.range_bits != f.domain_bits:
            raise ValueError(
                f"hash range {h.range_bits} does not match oracle domain {f.domain_bits}"
            )
        super().__init__(h.domain_bits, f.range_bits, "levin")
        self.h = h
        self.f = f

    def _answer(self, x: BitString) -> BitString:
        return levin_eval(self.h, self.f, x)
