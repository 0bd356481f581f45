"""Acceptance criteria, one PASS/FAIL line each.

Runs under pytest (the lines are repeated in the terminal summary) or as a
script: ``python3 tests/test_acceptance.py``. All comparisons are exact; the
only numeric tolerance is the wall-time target of criterion 1.
"""

from __future__ import annotations

import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from conftest import U, M  # noqa: E402
from test_dsl import MALFORMED, MALFORMED_REP  # noqa: E402

from gldist import (  # noqa: E402
    LineSpec,
    RepSpec,
    Universe,
    bc_class,
    chi_twist,
    conj_dual,
    format_rep,
    induced_distinction,
    is_ladder,
    ladder_distinction,
    mutually_unlinked,
    parse_multisegment,
    parse_rep,
    zelevinsky_dual,
)
from gldist.catalog import catalog, evaluate, verify  # noqa: E402
from gldist.errors import DslSyntaxError  # noqa: E402
from gldist.testkit import (  # noqa: E402
    EnumSpec,
    enumerate_multisegments,
    random_proper_ladder,
    run_suite,
)

TIME_LIMIT_S = 30.0
HEREDITARY_CASES = 1000
HEREDITARY_SEED = 0
PERMUTATION_CASES = 1000

# the lines the criteria quantify over: all four (eta0, dist_a) combinations
# through "one", "alt" and their chi-twists, plus a conjugate-dual pair
UA = Universe.of(
    LineSpec("one", 1, None, 1, 0),
    LineSpec("alt", 2, None, 1, 1),
    LineSpec("p", 2, "pb"),
    LineSpec("pb", 2, "p"),
)
ALL_LINES = ["one", "alt", "one!chi", "alt!chi", "p", "pb"]

MAIN = EnumSpec.make(UA, ["one"], -3, 3, 5, "both")
WIDE = EnumSpec.make(UA, ALL_LINES, -3, 3, 4, "both")
MIXED = EnumSpec.make(UA, ["one", "p", "pb"], -2, 2, 4, "mixed")
LADDER_SPECS = [EnumSpec.make(UA, [line], -3, 3, 5, "both") for line in ("one", "alt", "one!chi", "alt!chi")]

RESULTS: dict[int, str] = {}


def record(n: int, ok: bool, detail: str) -> bool:
    line = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[n] = line
    print(line, flush=True)
    return ok


def suites(name: str, specs) -> tuple[int, int, list]:
    cases = fails = 0
    minimal = []
    for spec in specs:
        rep = run_suite(name, spec)
        cases += rep.cases
        fails += rep.failure_count
        if rep.minimal_failure:
            minimal.append(rep.minimal_failure)
    return cases, fails, minimal


def test_criterion_01_involution():
    rep = run_suite("involution", MAIN)
    ok = rep.failure_count == 0 and rep.wall_time < TIME_LIMIT_S
    detail = (f"{rep.cases} cases, {rep.failure_count} failures, "
              f"{rep.wall_time:.1f}s (target < {TIME_LIMIT_S:.0f}s)")
    if rep.minimal_failure:
        detail += f"; first: {rep.minimal_failure}"
    assert record(1, ok, detail)


def test_criterion_02_mw_ground_truth():
    cases = [
        ("[0,2]@one", "[0]@one + [1]@one + [2]@one"),
        ("[0,1]@one + [1,2]@one", "[0,1]@one + [1,2]@one"),
        ("[0,2]@one + [1,1]@one", "[0]@one + [1]@one + [1]@one + [2]@one"),
    ]
    bad = [g for g, e in cases if zelevinsky_dual(M(g)) != M(e)]
    assert record(2, not bad, f"3 hand traces, mismatches: {bad or 'none'}")


def test_criterion_03_parity():
    cases, fails, first = suites("parity", [MAIN, WIDE, MIXED])
    assert record(3, fails == 0, f"{cases} cases, {fails} failures {first[:1] or ''}")


def test_criterion_04_chi_swap():
    cases, fails, first = suites("chi-swap", [MAIN, WIDE, MIXED])
    assert record(4, fails == 0, f"{cases} cases, {fails} failures {first[:1] or ''}")


def test_criterion_05_zi():
    cases, fails, first = suites("zi-preserve", [MAIN, WIDE])
    pair = (bc_class(M("[-1/2]@one + [1/2]@one"), U).tag, bc_class(M("[-1/2,1/2]@one"), U).tag)
    ok = fails == 0 and pair == ("Both", "StableOnly")
    assert record(5, ok, f"{cases} cases, {fails} failures {first[:1] or ''}; two-point vs Steinberg-shaped pair -> {pair}")


def test_criterion_06_t_even():
    ladders = sum(1 for spec in [MAIN, WIDE] for m in enumerate_multisegments(spec)
                  if is_ladder(m) and conj_dual(m, spec.universe) == m)
    cases, fails, first = suites("t-even", [MAIN, WIDE])
    assert record(6, fails == 0, f"{ladders} csd ladders among {cases} cases, {fails} failures {first[:1] or ''}")


def test_criterion_07_rf_coherence():
    cases, fails, first = suites("rf-cases", LADDER_SPECS + [WIDE])
    assert record(7, fails == 0, f"{cases} cases over eta0 x dist_a in {{+1,-1}} x {{0,1}}, "
                                 f"{fails} failures {first[:1] or ''}")


def _random_unlinked_product(rng: random.Random, spec: EnumSpec) -> RepSpec | None:
    factors = []
    for _ in range(rng.randrange(1, 5)):
        f = random_proper_ladder(rng, rng.choice(spec.lines), rng.randrange(2), spec.lo2, spec.hi2)
        if f is not None:
            factors.append(f)
    if not factors or not mutually_unlinked(factors):
        return None
    return RepSpec(tuple(factors))


def test_criterion_08_induced():
    spec = EnumSpec.make(UA, ["one", "alt", "p", "pb"], -3, 3, 4)
    her = run_suite("induced-hereditary", spec, seed=HEREDITARY_SEED, n_random=HEREDITARY_CASES)

    # (b) permutation invariance on arbitrary admissible products, verdict and obstruction
    rng = random.Random(HEREDITARY_SEED)
    perm_cases = perm_fail = 0
    while perm_cases < PERMUTATION_CASES:
        r = _random_unlinked_product(rng, spec)
        if r is None:
            continue
        perm_cases += 1
        shuffled = list(r.factors)
        rng.shuffle(shuffled)
        for twist in (0, 1):
            a = induced_distinction(r, UA, twist)
            b = induced_distinction(RepSpec(tuple(shuffled)), UA, twist)
            if (a.distinguished, a.obstruction) != (b.distinguished, b.obstruction):
                perm_fail += 1

    # (c) exponent flip under chi_twist on every enumerated csd ladder
    flips = flip_fail = 0
    for m in enumerate_multisegments(MAIN):
        if not is_ladder(m) or conj_dual(m, UA) != m:
            continue
        flips += 1
        v, w = ladder_distinction(m, UA), ladder_distinction(chi_twist(m), UA)
        if v.tag == "OnlyExponent":
            flip_fail += not (w.tag == "OnlyExponent" and w.exponent == 1 - v.exponent)
        else:
            flip_fail += w.tag != v.tag

    ok = her.cases == HEREDITARY_CASES and her.failure_count == 0 and perm_fail == 0 and flip_fail == 0
    assert record(8, ok, f"(a) {her.cases} seeded hereditary cases (seed {her.seed}), {her.failure_count} failures; "
                         f"(b) {perm_cases} permuted products, {perm_fail} failures; "
                         f"(c) {flips} csd ladders, {flip_fail} failures")


def test_criterion_09_catalog():
    rows = verify()
    by_id = {e.id: evaluate(e) for e in catalog()}
    e3 = by_id["E3-mutually-unlinked"]
    e4 = by_id["E4-theta-imprimitive"]
    ok = (len(rows) == 4 and all(r["pass"] for r in rows)
          and e3["csd"] and e3["distinguished"] == {"H": False, "H,omega": False}
          and e4["csd"] and not e4["ladder"] and e4["bc_class"] in ("StableOnly", "UnstableOnly"))
    summary = ", ".join(f"{r['id']} {'ok' if r['pass'] else 'MISMATCH'}" for r in rows)
    assert record(9, ok, summary)


def test_criterion_10_dsl():
    rep = run_suite("roundtrip", MAIN, seed=0)
    cat_fail = 0
    for e in catalog():
        u = Universe.of(*(LineSpec(x["id"], x["deg"], None, x["eta0"], x["dist_a"])
                          for x in e.universe["lines"]))
        if e.kind == "rep":
            r = parse_rep(e.input, u)
            cat_fail += parse_rep(format_rep(r), u) != r
        else:
            m = parse_multisegment(e.input, u)
            cat_fail += parse_multisegment(str(m), u) != m
    span_fail = 0
    for text, span in MALFORMED:
        try:
            parse_multisegment(text, U)
            span_fail += 1
        except DslSyntaxError as exc:
            span_fail += exc.span != span
    for text, span in MALFORMED_REP:
        try:
            parse_rep(text, U)
            span_fail += 1
        except DslSyntaxError as exc:
            span_fail += exc.span != span
    n_bad = len(MALFORMED) + len(MALFORMED_REP)
    ok = rep.failure_count == 0 and cat_fail == 0 and span_fail == 0
    assert record(10, ok, f"round-trip {rep.cases} sampled of {MAIN.count()} (seed {rep.seed}), "
                          f"{rep.failure_count} failures; catalog {cat_fail} failures; "
                          f"{n_bad} malformed inputs, {span_fail} wrong spans")


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
