"""Experiment drivers behind the CLI.

Each driver returns (rows, problems). Rows are flat dicts over the
fixed CSV columns; fields that do not apply to an experiment stay None
(empty in CSV, null in JSON). Problems is a list of hard-invariant
failures: exact-count mismatches, known-answer mismatches, locality or
call-count violations. Stochastic quantities (advantages, distances)
are reported, never asserted here; the acceptance suite pins their
bands.

Column use by experiment, where it is not the obvious game mapping:
kwise-verify reports keys enumerated as trials and an all-counts-equal
flag as p_real against an expected 1.0; uniformity reports the
estimated statistical distance as p_real and the same estimator's
value on truly uniform samples as p_ideal; ggm-kat and the adaptive
transform report the fraction of checks passed as p_real and failures
as violations.
"""

from __future__ import annotations

import json
import math
import random

from .batch import PPTupleSampler, run_nonadaptive_game_batched
from .bits import BitString, derive_seed, mix64, truncate
from .combine import count_underlying_calls
from .errors import ConfigurationError
from .games import (
    GameResult,
    birthday_distinguisher,
    involution_distinguisher,
    involution_nonadaptive_distinguisher,
    involution_samplers,
    run_game,
    tuple_uniformity_sd,
)
from .hashfam import exhaustive_independence_check, sample_kwise
from .prfcore import GgmKey, GgmOracle, InstrumentedOracle, LevinOracle, PrgSpec, ggm_eval
from .transform import (
    ExtensionParams,
    adw_z,
    build_adaptive_from_nonadaptive,
    build_adw_adaptive_from_nonadaptive,
    build_adw_domain_extension,
    build_pp_domain_extension,
    lazy_random_sampler,
)

CSV_COLUMNS = ("experiment", "n", "d", "s", "r", "k", "q", "z", "trials",
               "p_real", "p_ideal", "advantage", "stderr", "seed", "violations")

_PROBE_TAG = 0x50524F42
_PAIR_TAG = 0x47474D50
_CALL_TAG = 0x43414C4C


def _row(experiment: str, **cols) -> dict:
    unknown = set(cols) - set(CSV_COLUMNS)
    if unknown:
        raise ValueError(f"unknown columns {sorted(unknown)}")
    row = dict.fromkeys(CSV_COLUMNS)
    row["experiment"] = experiment
    row.update(cols)
    return row


def _game_row(experiment: str, res: GameResult, **dims) -> dict:
    return _row(experiment, trials=res.trials, p_real=res.p_real, p_ideal=res.p_ideal,
                advantage=res.advantage, stderr=res.stderr, seed=res.seed,
                violations=res.violations, **dims)


def levin_sampler(d: int, s: int, r: int, k: int):
    """Hash-then-query sampler: fresh k-wise h and lazy-random f per trial."""

    def sample(rng):
        h = sample_kwise(k, d, s, rng)
        return LevinOracle(h, lazy_random_sampler(rng, s, r))

    return sample


def kwise_verify(width: int, ks, seed: int):
    rows, problems = [], []
    for k in ks:
        report = exhaustive_independence_check(k, width)
        if not report.ok:
            problems.append(f"k={k}: some output tuple count differs from {report.expected_count}")
        rows.append(_row("kwise-verify", n=width, d=width, r=width, k=k,
                         trials=report.keys_enumerated,
                         p_real=1.0 if report.ok else 0.0, p_ideal=1.0,
                         advantage=0.0 if report.ok else 1.0, stderr=0.0,
                         seed=seed, violations=0 if report.ok else 1))
    return rows, problems


def birthday(d: int, s: int, r: int, q: int, k: int, c: int, trials: int, seed: int):
    """Collision attack against the three domain extensions, one row each."""
    params = ExtensionParams(d=d, s=s, r=r, k=k, q=q, c=c)
    dist = birthday_distinguisher(q, d)
    ideal = lambda rng: lazy_random_sampler(rng, d, r)
    targets = (
        ("birthday-levin", levin_sampler(d, s, r, k), k, None),
        ("birthday-pp", lambda rng: build_pp_domain_extension(params, rng), k, None),
        ("birthday-adw", lambda rng: build_adw_domain_extension(params, "table", rng),
         2, adw_z(params, "table")),
    )
    rows = []
    for name, sampler, kcol, zcol in targets:
        res = run_nonadaptive_game_batched(sampler, ideal, dist, trials, seed)
        rows.append(_game_row(name, res, n=d, d=d, s=s, r=r, k=kcol, q=q, z=zcol))
    return rows, []


def uniformity(d: int, s: int, r: int, k: int, queries: int, samples: int, seed: int):
    if queries < 1 or queries > 1 << d:
        raise ConfigurationError(f"{queries} distinct queries do not fit in {d} bits")
    sampler = PPTupleSampler(d, s, r, k)
    qs = tuple(BitString(i, d) for i in range(queries))
    res = tuple_uniformity_sd(sampler, qs, samples, seed)
    row = _row("uniformity", n=d, d=d, s=s, r=r, k=k, q=queries, trials=samples,
               p_real=res.sd_estimate, p_ideal=res.baseline_sd,
               advantage=abs(res.sd_estimate - res.baseline_sd),
               seed=seed, violations=0)
    return [row], []


def ggm_kat(pairs: int, seed: int):
    """Known-answer vectors, call-count exactness, and prefix sharing."""
    if pairs < 1:
        raise ConfigurationError("pairs must be positive")
    problems: list[str] = []
    checks = 0

    def check(ok: bool, label: str):
        nonlocal checks
        checks += 1
        if not ok:
            problems.append(label)

    stub = PrgSpec("stub-complement", 4)
    root = BitString.from01("0101")
    check(ggm_eval(GgmKey(root, 0, stub), BitString(0, 0)) == root,
          "empty input did not return the root seed")
    check(ggm_eval(GgmKey(root, 3, stub), BitString.from01("000")) == root,
          "all-zero input did not keep the root under the stub generator")
    check(ggm_eval(GgmKey(root, 2, stub), BitString.from01("10")) == BitString.from01("1010"),
          "vector root=0101, x=10 did not give 1010")

    rng = random.Random(derive_seed(seed, _PAIR_TAG))
    prg = PrgSpec("mix64", 16)
    oracle = GgmOracle(GgmKey(BitString(rng.getrandbits(16), 16), 16, prg))
    oracle.query(BitString(rng.getrandbits(16), 16))
    check(oracle.prg_calls == 16, f"one query cost {oracle.prg_calls} expansions, expected 16")

    for _ in range(pairs):
        key = GgmKey(BitString(rng.getrandbits(16), 16), 16, prg)
        p = rng.randrange(17)
        shared = BitString(rng.getrandbits(p), p)
        paths = []
        for _ in range(2):
            x = shared.concat(BitString(rng.getrandbits(16 - p), 16 - p))
            nodes: list[BitString] = []
            ggm_eval(key, x, on_node=lambda i, s, acc=nodes: acc.append(s))
            paths.append(nodes)
        check(paths[0][:p + 1] == paths[1][:p + 1],
              f"inputs sharing a {p}-bit prefix took different seed paths")

    row = _row("ggm-kat", n=16, d=16, r=16, trials=checks,
               p_real=(checks - len(problems)) / checks, p_ideal=1.0,
               advantage=len(problems) / checks,
               seed=seed, violations=len(problems))
    return [row], problems


def involution(n: int, trials: int, seed: int):
    """Adaptive vs nonadaptive distinguishers against a random involution."""
    real, ideal = involution_samplers(n)
    rows = []
    for name, dist in (("involution-adaptive", involution_distinguisher(n)),
                       ("involution-nonadaptive", involution_nonadaptive_distinguisher(n))):
        res = run_game(real, ideal, dist, trials, seed)
        rows.append(_game_row(name, res, n=n, d=n, r=n, q=2))
    return rows, []


def adaptive_transform(n: int, q: int, k: int, probes: int, seed: int):
    """Drive the adaptive-security builders with an answer-chained prober
    and verify that no underlying query ever leaves the first 4q strings."""
    if probes < 1:
        raise ConfigurationError("probes must be positive")
    z_adw = 2 * (1 + 2) * math.ceil(math.log2(q))
    targets = (
        ("adaptive-transform-pp", "pp", k, None),
        ("adaptive-transform-adw", "adw", 2, z_adw),
    )
    rows, problems = [], []
    for idx, (name, flavor, kcol, zcol) in enumerate(targets):
        collected: list[InstrumentedOracle] = []

        def f_sampler(rng, db, rb, acc=collected):
            o = InstrumentedOracle(lazy_random_sampler(rng, db, rb))
            acc.append(o)
            return o

        rng = random.Random(derive_seed(seed, _PROBE_TAG, idx))
        if flavor == "pp":
            handle = build_adaptive_from_nonadaptive(n, q, k, rng, f_sampler=f_sampler)
        else:
            handle = build_adw_adaptive_from_nonadaptive(n, q, 1, rng, f_sampler=f_sampler)
        x = BitString(0, n)
        for i in range(probes):
            y = handle.query(x)
            x = BitString(truncate(mix64(y.value ^ derive_seed(seed, _PROBE_TAG, i)), n), n)
        total = sum(o.calls for o in collected)
        outside = sum(1 for o in collected for xv in o.queries if xv.value >= 4 * q)
        if outside:
            problems.append(f"{name}: {outside} of {total} underlying queries left the 4q prefix")
        rows.append(_row(name, n=n, d=n, s=n, r=n, k=kcol, q=q, z=zcol, trials=probes,
                         p_real=(total - outside) / total, p_ideal=1.0,
                         advantage=outside / total,
                         seed=seed, violations=outside))
    return rows, problems


def adw_compare(d: int, s: int, r: int, q: int, k: int, c: int, trials: int, seed: int):
    """Birthday advantage and per-query call cost of pp next to both adw
    variants at identical shape parameters."""
    params = ExtensionParams(d=d, s=s, r=r, k=k, q=q, c=c)
    dist = birthday_distinguisher(q, d)
    ideal = lambda rng: lazy_random_sampler(rng, d, r)
    z_prf, z_table = adw_z(params, "prf"), adw_z(params, "table")
    targets = (
        ("adw-compare-pp", lambda rng: build_pp_domain_extension(params, rng),
         k, 0, 2),
        ("adw-compare-prf", lambda rng: build_adw_domain_extension(params, "prf", rng),
         2, z_prf, 3 * z_prf + 2),
        ("adw-compare-table", lambda rng: build_adw_domain_extension(params, "table", rng),
         2, z_table, 2),
    )
    rows, problems = [], []
    for idx, (name, sampler, kcol, zcol, expected_calls) in enumerate(targets):
        probe = sampler(random.Random(derive_seed(seed, _CALL_TAG, idx)))
        for i in range(3):
            f_calls, _ = count_underlying_calls(probe.key, BitString(i, d))
            if f_calls != expected_calls:
                problems.append(
                    f"{name}: {f_calls} underlying calls per query, expected {expected_calls}"
                )
                break
        res = run_nonadaptive_game_batched(sampler, ideal, dist, trials, seed)
        rows.append(_game_row(name, res, n=d, d=d, s=s, r=r, k=kcol, q=q, z=zcol))
    return rows, problems


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def rows_to_csv(rows) -> str:
    lines = [",".join(CSV_COLUMNS)]
    lines.extend(",".join(_fmt(row[c]) for c in CSV_COLUMNS) for row in rows)
    return "\n".join(lines) + "\n"


def rows_to_json(rows) -> str:
    return json.dumps(list(rows), indent=2) + "\n"
