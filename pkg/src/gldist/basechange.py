"""Weil–Deligne shadow of ``rec(π)`` and membership in the base-change images.

A segment ``[b, e]`` on a line contributes the summand
``rec(ν^c σ′) ⊗ Sp(e - b + 1)`` with centre ``c = (b + e)/2``. The summand is
conjugate self-dual exactly when the line is a self line and ``c = 0``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .core import HalfInt, LineSpec, MultiSegment, Universe, conj_dual
from .errors import EmptyInput, NotSelfDualLine

NOT_CSD = "NotConjSelfDual"
STABLE_ONLY = "StableOnly"
UNSTABLE_ONLY = "UnstableOnly"
BOTH = "Both"
NO_PARITY = "ConjSelfDualNoParity"


@dataclass(frozen=True, order=True)
class ParamFactor:
    line: str
    center: HalfInt
    sp: int
    mult: int = 1

    def to_json(self) -> dict:
        return {"line": self.line, "center": str(self.center), "sp": self.sp, "mult": self.mult}


@dataclass(frozen=True)
class BaseChangeClass:
    tag: str
    n: int
    parity_set: frozenset[int]
    s: int

    @property
    def single_image(self) -> bool:
        return self.tag in (STABLE_ONLY, UNSTABLE_ONLY)

    def to_json(self) -> dict:
        return {"tag": self.tag, "n": self.n, "parity_set": sorted(self.parity_set), "s": self.s}


def _factor_counts(m: MultiSegment) -> Counter:
    # key: (line, doubled centre, sp)
    return Counter((s.line, (s.b2 + s.e2) // 2, (s.e2 - s.b2) // 2 + 1) for s in m)


def param_factors(m: MultiSegment) -> list[ParamFactor]:
    out = [ParamFactor(line, HalfInt(c2), sp, k)
           for (line, c2, sp), k in _factor_counts(m).items()]
    return sorted(out, key=lambda f: (f.line, -f.center.doubled, -f.sp))


def total_degree(m: MultiSegment, universe: Universe) -> int:
    if not m:
        raise EmptyInput("total degree of the empty multisegment is undefined")
    deg = {line: universe.line(line).deg for line in m.lines}
    return sum(deg[s.line] * s.length for s in m)


def factor_parity(line: LineSpec, sp: int) -> int:
    """Parity of ``rec(σ′) ⊗ Sp(sp)``: ``eta0 · (-1)^(sp-1)``."""
    if not line.is_self:
        raise NotSelfDualLine(f"line {line.id!r} has no conjugate self-dual point")
    return line.eta0 * (1 if sp % 2 else -1)


def bc_class(m: MultiSegment, universe: Universe) -> BaseChangeClass:
    n = total_degree(m, universe)
    if conj_dual(m, universe) != m:
        return BaseChangeClass(NOT_CSD, n, frozenset(), 0)
    odd = [(line, sp) for (line, c2, sp), k in _factor_counts(m).items()
           if c2 == 0 and k % 2 == 1 and universe.line(line).is_self]
    parities = frozenset(factor_parity(universe.line(line), sp) for line, sp in odd)
    if not parities:
        tag = BOTH
    elif len(parities) == 2:
        tag = NO_PARITY
    else:
        (eta,) = parities
        tag = STABLE_ONLY if eta == (-1) ** (n - 1) else UNSTABLE_ONLY
    return BaseChangeClass(tag, n, parities, len(odd))
