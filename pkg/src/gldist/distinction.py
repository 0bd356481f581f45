"""GL_n(F)-distinction for ladders and for products of mutually unlinked
proper ladders.

Every verdict is computed from the multisegment combinatorics plus the two
per-line inputs ``eta0`` and ``dist_a``; nothing here evaluates an invariant
functional. ``(H, ω)``-distinction of ``π`` is decided as ``H``-distinction of
the χ₋₁-twist of ``π``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .basechange import BOTH, BaseChangeClass, bc_class
from .core import MultiSegment, RepSpec, Universe, chi_twist, conj_dual, is_linked, is_rigid, precedes
from .errors import ConsistencyViolation, EmptyInput, HypothesisViolated, NotALadder, NotRigid, NotSelfDualLine

NOT_CSD = "NotConjSelfDual"
BOTH_EXPONENTS = "BothExponents"
ONLY_EXPONENT = "OnlyExponent"

UNPAIRED_FIXED = "UnpairedFixedFactorNotHDistinguished"


@dataclass(frozen=True)
class DistinctionVerdict:
    tag: str
    k: int
    t: int
    gamma: int | None
    exponent: int | None = None

    def distinguished_by(self, a: int) -> bool:
        """Whether the representation is ``(H, ω^a)``-distinguished."""
        if self.tag == BOTH_EXPONENTS:
            return True
        return self.tag == ONLY_EXPONENT and self.exponent == a % 2

    def __str__(self):
        return f"{self.tag}({self.exponent})" if self.tag == ONLY_EXPONENT else self.tag

    def to_json(self) -> dict:
        out = {"tag": self.tag, "k": self.k, "t": self.t, "gamma": self.gamma}
        if self.exponent is not None:
            out["exponent"] = self.exponent
        return out


def gamma_of(m: MultiSegment, universe: Universe) -> int:
    if not m:
        raise EmptyInput("gamma needs a nonempty multisegment")
    if not is_rigid(m):
        raise NotRigid(f"{m} is not supported on a single cuspidal line")
    first = m.segments[0]
    spec = universe.line(first.line)
    if not spec.is_self:
        raise NotSelfDualLine(f"line {spec.id!r} carries no conjugate self-dual point")
    return spec.dist_a if first.b2 % 2 == 0 else 1 - spec.dist_a


def is_ladder(m: MultiSegment) -> bool:
    if not m or not is_rigid(m):
        return False
    segs = m.segments
    return all(a.b2 > b.b2 and a.e2 > b.e2 for a, b in zip(segs, segs[1:]))


def is_proper_ladder(m: MultiSegment) -> bool:
    return is_ladder(m) and len(proper_ladder_factors(m)) == 1


def proper_ladder_factors(m: MultiSegment) -> list[MultiSegment]:
    """Split a ladder into its maximal runs with ``Δ_{i+1} ≺ Δ_i``."""
    if not is_ladder(m):
        raise NotALadder(f"{m} is not a ladder")
    runs = [[m.segments[0]]]
    for seg in m.segments[1:]:
        if precedes(seg, runs[-1][-1]):
            runs[-1].append(seg)
        else:
            runs.append([seg])
    return [MultiSegment._trusted(tuple(run)) for run in runs]


def ladder_distinction(m: MultiSegment, universe: Universe) -> DistinctionVerdict:
    if not m:
        raise EmptyInput("ladder distinction needs a nonempty multisegment")
    if not is_rigid(m):
        raise NotRigid(f"{m} is not supported on a single cuspidal line")
    k = len(proper_ladder_factors(m))
    t = len(m)
    try:
        gamma = gamma_of(m, universe)
    except NotSelfDualLine:
        gamma = None
    if conj_dual(m, universe) != m:
        return DistinctionVerdict(NOT_CSD, k, t, gamma)
    if k % 2 == 0:
        return DistinctionVerdict(BOTH_EXPONENTS, k, t, gamma)
    return DistinctionVerdict(ONLY_EXPONENT, k, t, gamma, (gamma + t + 1) % 2)


@dataclass(frozen=True)
class RfCase:
    k_even: bool
    t_even: bool
    verdict: DistinctionVerdict
    bc: BaseChangeClass


def rf_case(m: MultiSegment, universe: Universe) -> RfCase:
    """Cross-check the ladder verdict against the base-change class.

    Raises :class:`ConsistencyViolation` when the two disagree.
    """
    verdict = ladder_distinction(m, universe)
    bc = bc_class(m, universe)
    k_even, t_even = verdict.k % 2 == 0, verdict.t % 2 == 0
    if verdict.tag == NOT_CSD or bc.tag == NOT_CSD:
        if verdict.tag != bc.tag:
            raise ConsistencyViolation(f"{m}: verdict {verdict} vs class {bc.tag}")
        return RfCase(k_even, t_even, verdict, bc)
    g = verdict.gamma
    if k_even:
        ok = t_even and verdict.tag == BOTH_EXPONENTS and bc.tag == BOTH
    elif t_even:
        ok = verdict.tag == ONLY_EXPONENT and verdict.exponent == (g + 1) % 2 and bc.tag == BOTH
    else:
        ok = verdict.tag == ONLY_EXPONENT and verdict.exponent == g and bc.single_image
    if not ok:
        raise ConsistencyViolation(
            f"{m}: k={verdict.k} t={verdict.t} verdict {verdict} vs class {bc.tag}")
    return RfCase(k_even, t_even, verdict, bc)


def mutually_unlinked(factors) -> bool:
    factors = list(factors)
    for i, fi in enumerate(factors):
        for fj in factors[i + 1:]:
            for d in fi:
                for d2 in fj:
                    if is_linked(d, d2):
                        return False
    return True


@dataclass(frozen=True)
class InducedVerdict:
    distinguished: bool
    witness: tuple[int, ...] | None = None
    obstruction: str | None = None
    detail: str | None = None

    def to_json(self) -> dict:
        out: dict = {"distinguished": self.distinguished}
        if self.witness is not None:
            out["witness"] = list(self.witness)
        if self.obstruction is not None:
            out["obstruction"] = self.obstruction
        if self.detail is not None:
            out["detail"] = self.detail
        return out


def _check_hypotheses(factors: list[MultiSegment]):
    for i, f in enumerate(factors):
        if not is_proper_ladder(f):
            raise HypothesisViolated("NotProperLadder", f"factor {i} = {f}")
    if not mutually_unlinked(factors):
        raise HypothesisViolated("NotMutuallyUnlinked")


def induced_distinction(r: RepSpec, universe: Universe, twist: int = 0) -> InducedVerdict:
    """Decide ``(H, ω^twist)``-distinction of ``π₁ × ⋯ × π_k``.

    The witness is an involution ``w`` on 0-based factor indices with
    ``π_{w(i)} = (π_i^∨)^τ`` and ``H``-distinguished fixed points. Pairs are
    formed between the lowest available indices first.
    """
    factors = list(r.factors)
    _check_hypotheses(factors)
    if twist % 2:
        factors = [chi_twist(f) for f in factors]

    classes: dict[MultiSegment, list[int]] = {}
    for i, f in enumerate(factors):
        classes.setdefault(f, []).append(i)

    # conditions are checked in a fixed order over classes in canonical
    # order, so the reported obstruction does not depend on factor order
    order = sorted(classes, key=MultiSegment.key)
    w = list(range(len(factors)))
    for cls in order:
        dual = conj_dual(cls, universe)
        if dual == cls:
            continue
        idx, other = classes[cls], classes.get(dual, [])
        if len(other) != len(idx):
            return InducedVerdict(False, obstruction=NOT_CSD,
                                  detail=f"{cls} occurs {len(idx)} times, its conjugate dual {len(other)} times")
        for i, j in zip(idx, other):
            w[i], w[j] = j, i
    for cls in order:
        idx = classes[cls]
        if conj_dual(cls, universe) != cls:
            continue
        for i, j in zip(idx[0::2], idx[1::2]):
            w[i], w[j] = j, i
        if len(idx) % 2:
            verdict = ladder_distinction(cls, universe)
            if not verdict.distinguished_by(0):
                return InducedVerdict(False, obstruction=UNPAIRED_FIXED,
                                      detail=f"factor {idx[-1]} is {verdict}")
    return InducedVerdict(True, witness=tuple(w))


def check_witness(r: RepSpec, universe: Universe, w, twist: int = 0) -> bool:
    """Independent check that ``w`` satisfies both conditions of the criterion."""
    factors = [chi_twist(f) if twist % 2 else f for f in r.factors]
    k = len(factors)
    if sorted(w) != list(range(k)) or any(w[w[i]] != i for i in range(k)):
        return False
    for i in range(k):
        if factors[w[i]] != conj_dual(factors[i], universe):
            return False
        if w[i] == i and not ladder_distinction(factors[i], universe).distinguished_by(0):
            return False
    return True
