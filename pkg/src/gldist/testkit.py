"""Exhaustive small-instance enumeration and the property suites.

A suite walks a finite case space and records every case on which a property
fails. Reports are deterministic: failures are ordered by case key and the
smallest failing case is reported as the reproducer.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from math import comb
from typing import Callable, Iterator

from . import basechange as bc
from .core import (
    HalfLike,
    HalfInt,
    LineSpec,
    MultiSegment,
    RepSpec,
    Segment,
    Universe,
    chi_twist,
    conj_dual,
    is_rigid,
)
from .distinction import (
    BOTH_EXPONENTS,
    ONLY_EXPONENT,
    check_witness,
    induced_distinction,
    is_ladder,
    is_proper_ladder,
    ladder_distinction,
    mutually_unlinked,
    rf_case,
)
from .dsl import format_multisegment, parse_multisegment
from .errors import BoundExceeded, GldistError
from .involution import zelevinsky_dual

LATTICES = {"int": (0,), "half": (1,), "both": (0, 1), "mixed": (0, 1)}
DEFAULT_BOUND = 10 ** 7
MAX_REPORTED = 20


@dataclass(frozen=True)
class EnumSpec:
    """Bounds of an exhaustive enumeration.

    ``lo2``/``hi2`` are the doubled exponent bounds. Except in ``"mixed"``
    mode every enumerated multisegment lives on one line id and one lattice;
    ``"both"`` takes the union of the integral and half-integral families.
    """

    universe: Universe
    lines: tuple[str, ...]
    lo2: int
    hi2: int
    max_segments: int
    lattice: str = "both"
    bound: int = DEFAULT_BOUND

    @classmethod
    def make(cls, universe: Universe, lines, lo: HalfLike, hi: HalfLike, max_segments: int,
             lattice: str = "both", bound: int = DEFAULT_BOUND) -> "EnumSpec":
        if lattice not in LATTICES:
            raise ValueError(f"lattice mode must be one of {sorted(LATTICES)}")
        lines = tuple(lines)
        for line in lines:
            universe.line(line)
        return cls(universe, lines, HalfInt.of(lo).doubled, HalfInt.of(hi).doubled,
                   max_segments, lattice, bound)

    def families(self) -> list[tuple[Segment, ...]]:
        """Segment pools, each sorted canonically."""
        pools = []
        for line in self.lines:
            for lat in LATTICES[self.lattice]:
                pts = [x for x in range(self.lo2, self.hi2 + 1) if x % 2 == lat]
                pools.append([Segment(line, b, e) for b in pts for e in pts if b <= e])
        if self.lattice == "mixed":
            pools = [[s for pool in pools for s in pool]]
        key = lambda s: (s.line, -s.b2, -s.e2)  # noqa: E731
        return [tuple(sorted(p, key=key)) for p in pools if p]

    def count(self) -> int:
        total = 1
        for pool in self.families():
            total += sum(comb(len(pool) + j - 1, j) for j in range(1, self.max_segments + 1))
        return total

    def describe(self) -> dict:
        return {"lines": list(self.lines), "range": [HalfInt(self.lo2).__str__(), HalfInt(self.hi2).__str__()],
                "max_segments": self.max_segments, "lattice": self.lattice}


def enumerate_multisegments(spec: EnumSpec) -> Iterator[MultiSegment]:
    """Every canonical multisegment within ``spec`` exactly once, empty first."""
    n = spec.count()
    if n > spec.bound:
        raise BoundExceeded(f"{n} cases exceed the bound {spec.bound}")
    yield MultiSegment()
    for pool in spec.families():
        for j in range(1, spec.max_segments + 1):
            for combo in combinations_with_replacement(pool, j):
                yield MultiSegment._trusted(combo)


# ---------------------------------------------------------------------------
# per-case checks; each returns a failure message or None


def _same_coverage(m: MultiSegment, d: MultiSegment) -> bool:
    """Equal point multiplicities, compared through boundary multisets:
    coverage has jumps +1 at each ``b`` and -1 just after each ``e``."""
    left = [(s[0], s[1]) for s in m._segs] + [(s[0], s[2] + 2) for s in d._segs]
    right = [(s[0], s[1]) for s in d._segs] + [(s[0], s[2] + 2) for s in m._segs]
    left.sort()
    right.sort()
    return left == right


def _check_involution(m: MultiSegment, u: Universe, d=None, dc=None):
    if d is None:
        d = zelevinsky_dual(m)
    dd = zelevinsky_dual(d)
    if dd != m:
        return f"(m^t)^t = {dd} with m^t = {d}"
    if not _same_coverage(m, d):
        return f"support multiplicities differ: m^t = {d}"
    return _check_commutation(m, u, d, dc)


def _check_commutation(m: MultiSegment, u: Universe, d=None, dc=None):
    if d is None:
        d = zelevinsky_dual(m)
    if dc is None:
        dc = zelevinsky_dual(conj_dual(m, u))
    if dc != conj_dual(d, u):
        return "mw_dual does not commute with conj_dual"
    if zelevinsky_dual(chi_twist(m)) != chi_twist(d):
        return "mw_dual does not commute with chi_twist"
    return None


def _in_space(m: MultiSegment, spec: EnumSpec) -> bool:
    if len(m) > spec.max_segments:
        return False
    lats = LATTICES[spec.lattice]
    if spec.lattice != "mixed" and len(m.by_eff_line()) > 1:
        return False
    return all(s.line in spec.lines and spec.lo2 <= s.b2 and s.e2 <= spec.hi2
               and s.b2 % 2 in lats for s in m)


def _orbit_checks(check, m: MultiSegment, spec: EnumSpec):
    """Check ``m`` together with its conjugate dual, sharing the MW runs.

    Returns ``[(case, message)]``; empty when the orbit was already handled
    from its smaller member.
    """
    u = spec.universe
    c = conj_dual(m, u)
    if c == m or not _in_space(c, spec):
        return [(m, check(m, u))]
    if c.key() < m.key():
        return []
    dm, dc = zelevinsky_dual(m), zelevinsky_dual(c)
    return [(m, check(m, u, dm, dc)), (c, check(c, u, dc, dm))]


_SINGLE = (bc.BOTH, bc.STABLE_ONLY, bc.UNSTABLE_ONLY)
_SWAP = {bc.STABLE_ONLY: bc.UNSTABLE_ONLY, bc.UNSTABLE_ONLY: bc.STABLE_ONLY,
         bc.BOTH: bc.BOTH, bc.NOT_CSD: bc.NOT_CSD, bc.NO_PARITY: bc.NO_PARITY}


def _check_parity(m: MultiSegment, u: Universe):
    if not m:
        return None
    cls = bc.bc_class(m, u)
    csd = conj_dual(m, u) == m
    if not csd and cls.tag != bc.NOT_CSD:
        return f"not conjugate self-dual but classified {cls.tag}"
    if csd and is_rigid(m) and cls.tag not in _SINGLE:
        return f"rigid conjugate self-dual but classified {cls.tag}"
    if csd and cls.tag == bc.NOT_CSD:
        return "conjugate self-dual but classified NotConjSelfDual"
    return None


def _check_chi_swap(m: MultiSegment, u: Universe):
    if not m:
        return None
    before, after = bc.bc_class(m, u).tag, bc.bc_class(chi_twist(m), u).tag
    if after != _SWAP[before]:
        return f"{before} became {after} under chi_twist"
    return None


def _check_zi(m: MultiSegment, u: Universe):
    if not m or not is_rigid(m) or conj_dual(m, u) != m:
        return None
    d = zelevinsky_dual(m)
    if conj_dual(d, u) != d:
        return f"m^t = {d} is not conjugate self-dual"
    before, after = bc.bc_class(m, u).tag, bc.bc_class(d, u).tag
    if after == bc.NOT_CSD:
        return "m^t left the union of the images"
    # a single image must survive; landing in both images still contains it
    if before in (bc.STABLE_ONLY, bc.UNSTABLE_ONLY) and after not in (before, bc.BOTH):
        return f"class {before} became {after} under mw_dual"
    return None


def _check_t_even(m: MultiSegment, u: Universe):
    if not is_ladder(m) or conj_dual(m, u) != m:
        return None
    both = bc.bc_class(m, u).tag == bc.BOTH
    if both != (len(m) % 2 == 0):
        return f"|m| = {len(m)} but class is {bc.bc_class(m, u).tag}"
    return None


def _check_rf(m: MultiSegment, u: Universe):
    if not is_ladder(m):
        return None
    try:
        rf_case(m, u)
    except GldistError as exc:
        return f"{type(exc).__name__}: {exc}"
    v = ladder_distinction(m, u)
    if v.tag in (BOTH_EXPONENTS, ONLY_EXPONENT):
        w = ladder_distinction(chi_twist(m), u)
        if v.tag == BOTH_EXPONENTS and w.tag != BOTH_EXPONENTS:
            return f"BothExponents became {w} under chi_twist"
        if v.tag == ONLY_EXPONENT and (w.tag != ONLY_EXPONENT or w.exponent != 1 - v.exponent):
            return f"{v} became {w} under chi_twist"
    return None


def _check_roundtrip(m: MultiSegment, u: Universe):
    text = format_multisegment(m)
    back = parse_multisegment(text, u)
    if back != m:
        return f"parse(format(m)) = {back}"
    if format_multisegment(back) != text:
        return "format is not idempotent"
    return None


CHECKS: dict[str, Callable] = {
    "involution": _check_involution,
    "commutation": _check_commutation,
    "parity": _check_parity,
    "chi-swap": _check_chi_swap,
    "zi-preserve": _check_zi,
    "t-even": _check_t_even,
    "rf-cases": _check_rf,
    "roundtrip": _check_roundtrip,
}
SUITES = tuple(CHECKS) + ("induced-hereditary",)
ROUNDTRIP_SAMPLE = 10 ** 5


# ---------------------------------------------------------------------------
# randomized construction for the hereditary direction


def random_proper_ladder(rng: random.Random, line: str, lattice: int, lo2: int, hi2: int,
                         max_len: int = 3) -> MultiSegment | None:
    pts = [x for x in range(lo2, hi2 + 1) if x % 2 == lattice]
    if not pts:
        return None
    b = rng.choice(pts)
    e = rng.choice([x for x in pts if x >= b])
    segs = [Segment(line, b, e)]
    for _ in range(rng.randrange(max_len)):
        pb, pe = segs[-1].b2, segs[-1].e2
        nb = [x for x in pts if x < pb]
        if not nb:
            break
        b = rng.choice(nb)
        ne = [x for x in pts if max(b, pb - 2) <= x < pe]
        if not ne:
            break
        segs.append(Segment(line, b, rng.choice(ne)))
    return MultiSegment(segs)


def _fixed_candidates(spec: EnumSpec) -> list[MultiSegment]:
    u = spec.universe
    small = EnumSpec(u, tuple(l for l in spec.lines if u.line(l).is_self),
                     spec.lo2, spec.hi2, 3, "both", spec.bound)
    out = []
    for m in enumerate_multisegments(small):
        if m and is_proper_ladder(m) and conj_dual(m, u) == m \
                and ladder_distinction(m, u).distinguished_by(0):
            out.append(m)
    return out


def hereditary_cases(spec: EnumSpec, n_cases: int, seed: int) -> Iterator[tuple[int, RepSpec]]:
    """Seeded products built from conjugate-dual pairs plus ``H``-distinguished
    self-dual factors, all mutually unlinked."""
    rng = random.Random(seed)
    u = spec.universe
    fixed_pool = _fixed_candidates(spec)
    made = 0
    while made < n_cases:
        n_pairs = rng.randrange(3)
        n_fixed = rng.randrange(3) if fixed_pool else 0
        if n_pairs + n_fixed == 0:
            continue
        factors: list[MultiSegment] = []
        for _ in range(n_pairs):
            m = random_proper_ladder(rng, rng.choice(spec.lines), rng.choice(LATTICES[spec.lattice]),
                                     spec.lo2, spec.hi2)
            if m is None:
                continue
            factors += [m, conj_dual(m, u)]
        factors += [rng.choice(fixed_pool) for _ in range(n_fixed)]
        if not factors or not mutually_unlinked(factors):
            continue
        rng.shuffle(factors)
        yield made, RepSpec(tuple(factors))
        made += 1


def _check_hereditary(case: tuple[int, RepSpec], u: Universe, rng: random.Random):
    _, r = case
    v = induced_distinction(r, u, 0)
    if not v.distinguished:
        return f"{v.obstruction}: {v.detail}"
    if not check_witness(r, u, v.witness, 0):
        return f"invalid witness {v.witness}"
    if conj_dual(r.concatenation(), u) != r.concatenation():
        return "distinguished but the product is not conjugate self-dual"
    perm = list(r.factors)
    rng.shuffle(perm)
    pv = induced_distinction(RepSpec(tuple(perm)), u, 0)
    if pv.distinguished != v.distinguished:
        return "verdict changed under a permutation of factors"
    twisted = RepSpec(tuple(chi_twist(f) for f in r.factors))
    if induced_distinction(r, u, 1) != induced_distinction(twisted, u, 0):
        return "twist=1 differs from twist=0 on the chi-twisted product"
    for f in r.factors:
        if conj_dual(f, u) == f:
            a, b = ladder_distinction(f, u), ladder_distinction(chi_twist(f), u)
            if a.tag == ONLY_EXPONENT and b.exponent != 1 - a.exponent:
                return f"factor {f}: {a} became {b} under chi_twist"
    if len(r.factors) > 1:
        dropped = RepSpec(r.factors[1:])
        d1 = induced_distinction(dropped, u, 0)
        d2 = induced_distinction(RepSpec(tuple(reversed(dropped.factors))), u, 0)
        if (d1.distinguished, d1.obstruction) != (d2.distinguished, d2.obstruction):
            return "sub-product verdict changed under reversal"
    return None


# ---------------------------------------------------------------------------
# running suites


@dataclass
class Report:
    suite: str
    spec: dict
    cases: int
    failure_count: int
    failures: list[dict] = field(default_factory=list)
    seed: int | None = None
    wall_time: float = 0.0

    @property
    def ok(self) -> bool:
        return self.failure_count == 0

    @property
    def minimal_failure(self) -> dict | None:
        return self.failures[0] if self.failures else None

    def to_json(self, timing: bool = True) -> dict:
        out = {"suite": self.suite, "spec": self.spec, "cases": self.cases,
               "failure_count": self.failure_count, "minimal_failure": self.minimal_failure,
               "failures": self.failures, "seed": self.seed}
        if timing:
            out["wall_time"] = round(self.wall_time, 3)
        return out


def _run_shard(name: str, spec: EnumSpec, shard: int, shards: int, seed: int, n_random: int):
    u = spec.universe
    failures: list[tuple] = []
    count = 0
    n_fail = 0
    if name == "induced-hereditary":
        for case in hereditary_cases(spec, n_random, seed):
            if case[0] % shards != shard:
                continue
            count += 1
            msg = _check_hereditary(case, u, random.Random(seed * 7919 + case[0]))
            if msg:
                n_fail += 1
                failures.append(((case[0],), {"case": case[0], "input": _rep_text(case[1]), "message": msg}))
    else:
        check = CHECKS[name]
        cases = enumerate_multisegments(spec)
        sample = None
        if name == "roundtrip" and spec.count() > ROUNDTRIP_SAMPLE:
            sample = set(random.Random(seed).sample(range(spec.count()), ROUNDTRIP_SAMPLE))
        paired = name in ("involution", "commutation")
        for i, m in enumerate(cases):
            if i % shards != shard or (sample is not None and i not in sample):
                continue
            try:
                results = _orbit_checks(check, m, spec) if paired else [(m, check(m, u))]
            except GldistError as exc:
                results = [(m, f"{type(exc).__name__}: {exc}")]
            for case, msg in results:
                count += 1
                if msg:
                    n_fail += 1
                    failures.append((case.key(), {"input": str(case), "message": msg}))
            if len(failures) > 4 * MAX_REPORTED:
                failures.sort(key=lambda f: f[0])
                del failures[MAX_REPORTED:]
    failures.sort(key=lambda f: f[0])
    return count, n_fail, failures[:MAX_REPORTED]


def _rep_text(r: RepSpec) -> str:
    return "*".join(f"({f})" for f in r.factors)


def run_suite(name: str, spec: EnumSpec, *, jobs: int = 1, seed: int = 0,
              n_random: int = 1000) -> Report:
    """Run suite ``name`` over ``spec``; failures are data, never raised."""
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    t0 = time.perf_counter()
    if jobs <= 1:
        results = [_run_shard(name, spec, 0, 1, seed, n_random)]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futs = [pool.submit(_run_shard, name, spec, s, jobs, seed, n_random) for s in range(jobs)]
            results = [f.result() for f in futs]
    cases = sum(r[0] for r in results)
    n_fail = sum(r[1] for r in results)
    merged = sorted((f for r in results for f in r[2]), key=lambda f: f[0])[:MAX_REPORTED]
    uses_seed = name in ("induced-hereditary",) or (name == "roundtrip" and spec.count() > ROUNDTRIP_SAMPLE)
    return Report(name, spec.describe(), cases, n_fail, [f[1] for f in merged],
                  seed if uses_seed else None, time.perf_counter() - t0)


def default_universe() -> Universe:
    """Lines used by ``check`` when no universe file is given.

    ``one`` and ``alt`` with their χ₋₁-twists realise all four combinations
    of ``eta0`` and ``dist_a``; ``p``/``pb`` is a conjugate-dual pair.
    """
    return Universe.of(
        LineSpec("one", 1, None, 1, 0),
        LineSpec("alt", 2, None, 1, 1),
        LineSpec("p", 2, "pb"),
        LineSpec("pb", 2, "p"),
    )
