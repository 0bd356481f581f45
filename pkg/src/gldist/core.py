"""Cuspidal lines, segments and multisegments.

Exponents live in the half-integers and are stored doubled, so ``[-1/2, 1/2]``
is kept as ``(-1, 1)``. A line id together with the lattice class of the
exponents (integral or half-integral) is an *effective* line: segments on
different effective lines never interact.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import total_ordering
from itertools import repeat
from operator import itemgetter
from typing import Iterable, Iterator, NamedTuple, Union

from .errors import (
    EmptySegment,
    InconsistentPartners,
    LatticeMismatch,
    NotSelfDualLine,
    UnknownLine,
    ValidationError,
)

CHI_SUFFIX = "!chi"


@total_ordering
class HalfInt:
    """An exact element of ½ℤ, stored as twice its value."""

    __slots__ = ("doubled",)

    def __init__(self, doubled: int):
        if not isinstance(doubled, int) or isinstance(doubled, bool):
            raise TypeError(f"doubled value must be an int, got {doubled!r}")
        self.doubled = doubled

    @classmethod
    def of(cls, value: "HalfLike") -> "HalfInt":
        """Coerce an int, Fraction, HalfInt or string like ``"-3/2"``."""
        if isinstance(value, HalfInt):
            return value
        if isinstance(value, str):
            value = Fraction(value.replace(" ", ""))
        if isinstance(value, bool):
            raise TypeError("bool is not a half-integer")
        if isinstance(value, int):
            return cls(2 * value)
        if isinstance(value, Fraction):
            twice = 2 * value
            if twice.denominator != 1:
                raise ValueError(f"{value} is not a half-integer")
            return cls(int(twice))
        raise TypeError(f"cannot convert {value!r} to HalfInt")

    @property
    def is_integral(self) -> bool:
        return self.doubled % 2 == 0

    def to_fraction(self) -> Fraction:
        return Fraction(self.doubled, 2)

    def __add__(self, other):
        other = HalfInt.of(other)
        return HalfInt(self.doubled + other.doubled)

    __radd__ = __add__

    def __sub__(self, other):
        other = HalfInt.of(other)
        return HalfInt(self.doubled - other.doubled)

    def __rsub__(self, other):
        return HalfInt.of(other) - self

    def __neg__(self):
        return HalfInt(-self.doubled)

    def __eq__(self, other):
        if isinstance(other, HalfInt):
            return self.doubled == other.doubled
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Fraction(self.doubled, 2) == other
        return NotImplemented

    def __lt__(self, other):
        if isinstance(other, HalfInt):
            return self.doubled < other.doubled
        if isinstance(other, (int, Fraction)):
            return Fraction(self.doubled, 2) < other
        return NotImplemented

    def __hash__(self):
        return hash(Fraction(self.doubled, 2))

    def __str__(self):
        return format_half(self.doubled)

    def __repr__(self):
        return f"HalfInt({str(self)!r})"


HalfLike = Union[HalfInt, int, Fraction, str]


def format_half(doubled: int) -> str:
    if doubled % 2 == 0:
        return str(doubled // 2)
    return f"{doubled}/2"


# ---------------------------------------------------------------------------
# lines and universes


@dataclass(frozen=True)
class LineSpec:
    """An abstract cuspidal line.

    ``partner`` is ``None`` for a conjugate self-dual line, in which case the
    exponent origin is the normalized conjugate self-dual point, ``eta0`` is
    its parity and ``dist_a`` the exponent ``a`` for which it is
    ``(H, omega^a)``-distinguished.
    """

    id: str
    deg: int
    partner: str | None = None
    eta0: int | None = None
    dist_a: int | None = None

    def __post_init__(self):
        if not isinstance(self.deg, int) or self.deg < 1:
            raise ValidationError(f"line {self.id!r}: deg must be a positive integer")
        if self.partner is None:
            if self.eta0 not in (1, -1):
                raise ValidationError(f"line {self.id!r}: self line needs eta0 = ±1")
            if self.dist_a not in (0, 1):
                raise ValidationError(f"line {self.id!r}: self line needs dist_a in {{0,1}}")
        elif self.eta0 is not None or self.dist_a is not None:
            raise ValidationError(f"line {self.id!r}: eta0/dist_a only allowed on self lines")

    @property
    def is_self(self) -> bool:
        return self.partner is None

    @property
    def dual_id(self) -> str:
        return self.id if self.partner is None else self.partner


def chi_twist_line(line_id: str) -> str:
    """Id of the χ₋₁-twisted line; applying it twice gives back ``line_id``."""
    if line_id.endswith(CHI_SUFFIX):
        return line_id[: -len(CHI_SUFFIX)]
    return line_id + CHI_SUFFIX


def _twisted_spec(base: LineSpec) -> LineSpec:
    if base.is_self:
        return LineSpec(chi_twist_line(base.id), base.deg, None, -base.eta0, 1 - base.dist_a)
    return LineSpec(chi_twist_line(base.id), base.deg, chi_twist_line(base.partner))


@dataclass(frozen=True)
class Universe:
    """The declared lines; χ₋₁-twists ``<id>!chi`` are derived on demand."""

    lines: dict[str, LineSpec] = field(default_factory=dict)

    def __post_init__(self):
        for key, spec in self.lines.items():
            if key != spec.id:
                raise ValidationError(f"line stored under {key!r} has id {spec.id!r}")
            if "!" in key:
                raise ValidationError(f"declared id {key!r} may not contain '!'")
        for spec in self.lines.values():
            if spec.is_self:
                continue
            if spec.partner == spec.id:
                raise InconsistentPartners(f"line {spec.id!r} is declared its own partner")
            other = self.lines.get(spec.partner)
            if other is None:
                raise InconsistentPartners(f"partner {spec.partner!r} of {spec.id!r} is not declared")
            if other.partner != spec.id:
                raise InconsistentPartners(f"{spec.id!r} -> {spec.partner!r} is not reciprocated")
            if other.deg != spec.deg:
                raise InconsistentPartners(f"partners {spec.id!r}/{other.id!r} differ in deg")
        object.__setattr__(self, "_duals", {})

    @classmethod
    def of(cls, *specs: LineSpec) -> "Universe":
        lines: dict[str, LineSpec] = {}
        for s in specs:
            if s.id in lines:
                raise ValidationError(f"duplicate line id {s.id!r}")
            lines[s.id] = s
        return cls(lines)

    def __contains__(self, line_id: str) -> bool:
        try:
            self.line(line_id)
        except UnknownLine:
            return False
        return True

    def line(self, line_id: str) -> LineSpec:
        spec = self.lines.get(line_id)
        if spec is not None:
            return spec
        if line_id.endswith(CHI_SUFFIX):
            base = self.lines.get(chi_twist_line(line_id))
            if base is not None:
                return _twisted_spec(base)
        raise UnknownLine(f"unknown line {line_id!r}")

    def dual_line(self, line_id: str) -> str:
        d = self._duals.get(line_id)
        if d is None:
            d = self._duals[line_id] = self.line(line_id).dual_id
        return d

    def to_json(self) -> dict:
        out = []
        for spec in self.lines.values():
            if spec.is_self:
                out.append({"id": spec.id, "deg": spec.deg, "conj_dual": "self",
                            "eta0": spec.eta0, "dist_a": spec.dist_a})
            else:
                out.append({"id": spec.id, "deg": spec.deg,
                            "conj_dual": {"partner": spec.partner}})
        return {"lines": out}


# ---------------------------------------------------------------------------
# segments


class Segment(NamedTuple):
    """``[b, e]`` on ``line``; ``b2``/``e2`` are the doubled endpoints.

    Build validated segments with :func:`make_segment`.
    """

    line: str
    b2: int
    e2: int

    @property
    def b(self) -> HalfInt:
        return HalfInt(self.b2)

    @property
    def e(self) -> HalfInt:
        return HalfInt(self.e2)

    @property
    def length(self) -> int:
        return (self.e2 - self.b2) // 2 + 1

    @property
    def lattice(self) -> str:
        return "int" if self.b2 % 2 == 0 else "half"

    @property
    def eff_line(self) -> tuple[str, int]:
        return (self.line, self.b2 & 1)

    def __str__(self):
        if self.b2 == self.e2:
            return f"[{format_half(self.b2)}]@{self.line}"
        return f"[{format_half(self.b2)},{format_half(self.e2)}]@{self.line}"


def make_segment(line: str, b: HalfLike, e: HalfLike, universe: Universe | None = None) -> Segment:
    b_, e_ = HalfInt.of(b), HalfInt.of(e)
    if universe is not None and line not in universe:
        raise UnknownLine(f"unknown line {line!r}")
    if (e_.doubled - b_.doubled) % 2:
        raise LatticeMismatch(f"[{b_},{e_}]: endpoints lie on different lattices")
    if b_.doubled > e_.doubled:
        raise EmptySegment(f"[{b_},{e_}] is empty")
    return Segment(line, b_.doubled, e_.doubled)


def is_linked(d1: Segment, d2: Segment) -> bool:
    if d1.line != d2.line or (d1.b2 - d2.b2) % 2:
        return False
    if d1.b2 <= d2.b2 and d2.e2 <= d1.e2:
        return False
    if d2.b2 <= d1.b2 and d1.e2 <= d2.e2:
        return False
    return d2.b2 <= d1.e2 + 2 and d1.b2 <= d2.e2 + 2


def precedes(d1: Segment, d2: Segment) -> bool:
    """``d1 ≺ d2``: linked, and the union begins where ``d1`` begins."""
    return is_linked(d1, d2) and d1.b2 < d2.b2


# ---------------------------------------------------------------------------
# multisegments


def _canon_key(s: Segment):
    return (s.line, -s.b2, -s.e2)


class MultiSegment:
    """Immutable finite multiset of segments, kept in canonical order
    (line id, then ``b`` descending, then ``e`` descending)."""

    __slots__ = ("_segs", "_hash")

    def __init__(self, segments: Iterable[Segment] = ()):
        segs = sorted(segments, reverse=True)
        if segs and segs[0].line != segs[-1].line:
            # stable: keeps (b, e) descending inside each line
            segs.sort(key=itemgetter(0))
        for s in segs:
            if s.b2 > s.e2:
                raise EmptySegment(f"{s} is empty")
        self._segs = tuple(segs)
        self._hash = None

    @classmethod
    def _trusted(cls, segs: tuple) -> "MultiSegment":
        # caller guarantees canonical order and nonempty segments
        obj = cls.__new__(cls)
        obj._segs = segs
        obj._hash = None
        return obj

    @property
    def segments(self) -> tuple[Segment, ...]:
        return self._segs

    def __iter__(self) -> Iterator[Segment]:
        return iter(self._segs)

    def __len__(self):
        return len(self._segs)

    def __bool__(self):
        return bool(self._segs)

    def __eq__(self, other):
        if not isinstance(other, MultiSegment):
            return NotImplemented
        return self._segs == other._segs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._segs)
        return self._hash

    def __add__(self, other: "MultiSegment") -> "MultiSegment":
        return MultiSegment(self._segs + other._segs)

    def __repr__(self):
        return f"MultiSegment({self})"

    def __str__(self):
        return "+".join(map(str, self._segs)) if self._segs else "empty"

    def key(self) -> tuple:
        """Total order used to pick the lexicographically smallest case."""
        return (len(self._segs), self._segs)

    @property
    def lines(self) -> set[str]:
        return {s.line for s in self._segs}

    def by_eff_line(self) -> dict[tuple[str, int], list[Segment]]:
        groups: dict[tuple[str, int], list[Segment]] = {}
        for s in self._segs:
            groups.setdefault((s.line, s.b2 & 1), []).append(s)
        return groups


@dataclass(frozen=True)
class RepSpec:
    """A product ``π₁ × ⋯ × π_k`` given by one multisegment per factor."""

    factors: tuple[MultiSegment, ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        for i, f in enumerate(self.factors):
            if not f:
                raise ValidationError(f"factor {i} is empty")

    def __len__(self):
        return len(self.factors)

    def concatenation(self) -> MultiSegment:
        return MultiSegment(s for f in self.factors for s in f)


def standard_order(m: MultiSegment) -> list[Segment]:
    """Order of standard form: no earlier segment precedes a later one."""
    order = list(m.segments)
    for i, a in enumerate(order):
        for b in order[i + 1:]:
            assert not precedes(a, b), (a, b)
    return order


def supp(m: MultiSegment) -> set[tuple[str, HalfInt]]:
    return {(line, HalfInt(x2)) for (line, x2) in coverage(m)}


def coverage(m: MultiSegment) -> Counter:
    """Multiplicity with which each cuspidal point ``(line, 2x)`` is covered."""
    c: Counter = Counter()
    for s in m:
        c.update(zip(repeat(s.line), range(s.b2, s.e2 + 1, 2)))
    return c


def is_rigid(m: MultiSegment) -> bool:
    return len(m.by_eff_line()) <= 1


def conj_dual(m: MultiSegment, universe: Universe) -> MultiSegment:
    """``(m^∨)^τ``: ``[b, e]@L ↦ [-e, -b]@L̄`` segmentwise."""
    segs = m._segs
    new = tuple.__new__
    if segs and segs[0][0] == segs[-1][0]:
        d = universe.dual_line(segs[0][0])
        out = [new(Segment, (d, -e2, -b2)) for _, b2, e2 in segs]
        out.sort(reverse=True)
        return MultiSegment._trusted(tuple(out))
    duals: dict[str, str] = {}
    out = []
    for line, b2, e2 in segs:
        d = duals.get(line)
        if d is None:
            d = duals[line] = universe.dual_line(line)
        out.append(new(Segment, (d, -e2, -b2)))
    out.sort(reverse=True)
    if len(duals) > 1:
        out.sort(key=itemgetter(0))
    return MultiSegment._trusted(tuple(out))


def _self_lines_only(m: MultiSegment, universe: Universe, what: str):
    for line in m.lines:
        if not universe.line(line).is_self:
            raise NotSelfDualLine(f"{what} is only exposed on self lines, not {line!r}")


def contragredient(m: MultiSegment, universe: Universe) -> MultiSegment:
    """Exponent negation ``[b, e] ↦ [-e, -b]``, for self lines only."""
    _self_lines_only(m, universe, "contragredient")
    return MultiSegment(Segment(s.line, -s.e2, -s.b2) for s in m)


def tau_conj(m: MultiSegment, universe: Universe) -> MultiSegment:
    """Galois conjugation; fixes exponents and self lines."""
    _self_lines_only(m, universe, "tau_conj")
    return m


def is_conj_self_dual(m: MultiSegment, universe: Universe) -> bool:
    return conj_dual(m, universe) == m


_chi_names: dict[str, str] = {}


def chi_twist(m: MultiSegment) -> MultiSegment:
    segs = m._segs
    new = tuple.__new__
    if segs and segs[0][0] == segs[-1][0]:
        t = _chi_names.get(segs[0][0])
        if t is None:
            t = _chi_names[segs[0][0]] = chi_twist_line(segs[0][0])
        return MultiSegment._trusted(tuple([new(Segment, (t, b2, e2)) for _, b2, e2 in segs]))
    names: dict[str, str] = {}
    out = []
    for line, b2, e2 in segs:
        t = names.get(line)
        if t is None:
            t = names[line] = chi_twist_line(line)
        out.append(new(Segment, (t, b2, e2)))
    if len(names) == 1:
        return MultiSegment._trusted(tuple(out))
    return MultiSegment(out)
