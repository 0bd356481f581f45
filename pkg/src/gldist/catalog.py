"""Built-in catalog of worked examples with their expected verdicts.

Each entry carries its own universe so that the choice of cuspidal data is
explicit. ``verify`` recomputes every expected field from scratch.
"""

from __future__ import annotations

from dataclasses import dataclass

from .basechange import bc_class
from .core import chi_twist, conj_dual, is_rigid
from .distinction import induced_distinction, is_ladder, is_proper_ladder, ladder_distinction
from .dsl import parse_multisegment, parse_rep, universe_from_json

_ONE = {"id": "one", "deg": 1, "conj_dual": "self", "eta0": 1, "dist_a": 0}
_SIGMA = {"id": "sigma", "deg": 2, "conj_dual": "self", "eta0": 1, "dist_a": 0}
_RHO2 = {"id": "rho2", "deg": 2, "conj_dual": "self", "eta0": 1, "dist_a": 0}

THETA = ("[1/2,3/2]@sigma + [-1/2,7/2]@sigma + [-3/2,-1/2]@sigma"
         " + [-5/2,5/2]@sigma + [-7/2,1/2]@sigma")


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    universe: dict
    kind: str  # "rep" or "mseg"
    input: str
    expected: dict
    provenance: str


def catalog() -> list[CatalogEntry]:
    return [
        CatalogEntry(
            "E1-gl3-product",
            {"lines": [_ONE, _RHO2]},
            "rep",
            "([0]@one)*([0]@rho2!chi)",
            {"csd": True, "rigid": False, "n": 3,
             "factor_verdicts": ["OnlyExponent(0)", "OnlyExponent(1)"],
             "distinguished": {"H": False, "H,omega": False}},
            "Induced representation 1 x chi_{-1}sigma of GL_3(E) with sigma a "
            "GL_2(F)-distinguished cuspidal of GL_2(E): conjugate self-dual, yet "
            "neither it nor its chi_{-1}-twist is GL_3(F)-distinguished.",
        ),
        CatalogEntry(
            "E2-ladder-unstable",
            {"lines": [_SIGMA]},
            "mseg",
            "[-1,0]@sigma + [0,1]@sigma",
            {"csd": True, "ladder": True, "proper_ladder": True, "k": 1, "t": 2,
             "verdict": "OnlyExponent(1)", "twisted_verdict": "OnlyExponent(0)",
             "bc_class": "Both"},
            "L([nu^-1 sigma, sigma][sigma, nu sigma]) for sigma with a_sigma = 0: in "
            "the unstable base-change image but not H-distinguished, while its "
            "chi_{-1}-twist is.",
        ),
        CatalogEntry(
            "E3-mutually-unlinked",
            {"lines": [_ONE]},
            "rep",
            "([-1/2]@one + [1/2]@one)*([-1/2,1/2]@one)",
            {"csd": True, "rigid": True, "n": 4,
             "factor_verdicts": ["OnlyExponent(0)", "OnlyExponent(1)"],
             "distinguished": {"H": False, "H,omega": False}},
            "L([nu^-1/2],[nu^1/2]) x L([nu^-1/2, nu^1/2]): rigid, conjugate self-dual, "
            "distinguished for neither character.",
        ),
        CatalogEntry(
            "E4-theta-imprimitive",
            {"lines": [_SIGMA]},
            "mseg",
            THETA,
            {"csd": True, "ladder": False, "bc_class": "StableOnly", "single_image": True,
             "n": 40},
            "theta = L(m) with five segments on a conjugate self-dual sigma. "
            "Imprimitive and neither H- nor (H,omega)-distinguished; both facts "
            "are recorded here, not recomputed (they rest on irreducibility "
            "criteria and derivatives outside this library).",
        ),
    ]


def evaluate(entry: CatalogEntry) -> dict:
    """Compute the fields named in ``entry.expected``."""
    u = universe_from_json(entry.universe)
    actual: dict = {}
    if entry.kind == "rep":
        r = parse_rep(entry.input, u)
        whole = r.concatenation()
        actual["csd"] = conj_dual(whole, u) == whole
        actual["rigid"] = is_rigid(whole)
        actual["n"] = bc_class(whole, u).n
        actual["factor_verdicts"] = [str(ladder_distinction(f, u)) for f in r.factors]
        actual["distinguished"] = {
            "H": induced_distinction(r, u, 0).distinguished,
            "H,omega": induced_distinction(r, u, 1).distinguished,
        }
    else:
        m = parse_multisegment(entry.input, u)
        actual["csd"] = conj_dual(m, u) == m
        actual["ladder"] = is_ladder(m)
        cls = bc_class(m, u)
        actual["bc_class"] = cls.tag
        actual["single_image"] = cls.single_image
        actual["n"] = cls.n
        if actual["ladder"]:
            v = ladder_distinction(m, u)
            actual.update(proper_ladder=is_proper_ladder(m), k=v.k, t=v.t, verdict=str(v),
                          twisted_verdict=str(ladder_distinction(chi_twist(m), u)))
    return {k: actual.get(k) for k in entry.expected}


def verify(entries: list[CatalogEntry] | None = None) -> list[dict]:
    rows = []
    for entry in entries if entries is not None else catalog():
        actual = evaluate(entry)
        rows.append({"id": entry.id, "pass": actual == entry.expected,
                     "expected": entry.expected, "actual": actual,
                     "provenance": entry.provenance})
    return rows
