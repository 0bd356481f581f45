"""Zelevinsky involution via the Mœglin–Waldspurger algorithm."""

from __future__ import annotations

from bisect import bisect_left, insort
from dataclasses import dataclass

from .core import MultiSegment, Segment


@dataclass(frozen=True)
class MwRound:
    chain: tuple[Segment, ...]
    produced: Segment
    residue: MultiSegment


@dataclass(frozen=True)
class MwTrace:
    rounds: tuple[MwRound, ...]

    def produced(self) -> MultiSegment:
        return MultiSegment(r.produced for r in self.rounds)

    def to_json(self) -> dict:
        return {"rounds": [{"chain": [str(s) for s in r.chain],
                            "produced": str(r.produced),
                            "residue": str(r.residue)} for r in self.rounds]}


def _next_link(bucket: list[int], b: int) -> int:
    """Index in ``bucket`` (ascending beginnings, all with end one below the
    current link) of the next chain link, or -1.

    The link must precede the current one, so its beginning is strictly
    smaller; among those the largest beginning wins.
    """
    return bisect_left(bucket, b) - 1


def _run_line(pairs, record: list | None = None) -> list[tuple[int, int]]:
    """MW on one effective line, on doubled ``(b, e)`` pairs.

    Returns the produced pairs. When ``record`` is a list, one
    ``(chain, produced, residue)`` triple per round is appended to it.
    """
    if not pairs:
        return []
    lo = min([b for b, _ in pairs])
    top = (max([e for _, e in pairs]) - lo) // 2
    # levels[j]: ascending beginnings of the segments ending at lo + 2j
    levels: list[list[int]] = [[] for _ in range(top + 1)]
    for b, e in pairs:
        insort(levels[(e - lo) // 2], b)
    next_link = _next_link
    out = []
    while True:
        while top >= 0 and not levels[top]:
            top -= 1
        if top < 0:
            return out
        cur_b = levels[top].pop()
        links = [(top, cur_b)] if record is not None else None
        j = top
        while j > 0:
            lower = levels[j - 1]
            i = next_link(lower, cur_b) if lower else -1
            if i < 0:
                break
            nb = lower.pop(i)
            # the chain only looks further down, so the shortened link can
            # go back right away
            if cur_b < lo + 2 * j:
                insort(lower, cur_b)
            cur_b = nb
            j -= 1
            if links is not None:
                links.append((j, cur_b))
        if cur_b < lo + 2 * j:
            insort(levels[j - 1], cur_b)
        produced = (lo + 2 * j, lo + 2 * top)
        out.append(produced)
        if record is not None:
            residue = [(b, lo + 2 * x) for x, lst in enumerate(levels) for b in lst]
            record.append(([(bb, lo + 2 * jj) for jj, bb in links], produced, residue))


def mw_dual(m: MultiSegment) -> tuple[MultiSegment, MwTrace]:
    """Return ``(m^t, trace)``.

    Effective lines are processed one after another in canonical order; the
    residue recorded in each round is the whole remaining multisegment.
    """
    groups = m.by_eff_line()
    remaining = {k: [(s.b2, s.e2) for s in v] for k, v in groups.items()}
    produced: list[Segment] = []
    rounds: list[MwRound] = []
    for key in sorted(groups):
        line = key[0]
        record: list = []
        _run_line(remaining[key], record)
        for links, (pb, pe), rest in record:
            out = Segment(line, pb, pe)
            produced.append(out)
            remaining[key] = rest
            residue = MultiSegment(Segment(k[0], b, e) for k, v in remaining.items() for b, e in v)
            rounds.append(MwRound(tuple(Segment(line, b, e) for b, e in links), out, residue))
    return MultiSegment(produced), MwTrace(tuple(rounds))


# rigid-case results keyed by exponents alone; tests that patch _next_link
# must call clear_memo()
_memo: dict[tuple, list[tuple[int, int]]] = {}
_MEMO_SIZE = 1 << 10


def clear_memo() -> None:
    _memo.clear()


def zelevinsky_dual(m: MultiSegment) -> MultiSegment:
    """``m^t`` without building a trace."""
    segs = m.segments
    if not segs:
        return m
    line = segs[0][0]
    if line == segs[-1][0]:
        # one line id; the memo also records whether the exponents share a lattice
        key = tuple([(b, e) for _, b, e in segs])
        pairs = _memo.get(key)
        if pairs is None:
            if len(_memo) >= _MEMO_SIZE:
                _memo.clear()
            lat = key[0][0] & 1
            if all(b & 1 == lat for b, _ in key):
                pairs = sorted(_run_line(key), reverse=True)
            else:
                pairs = ()
            _memo[key] = pairs
        if pairs:
            new = tuple.__new__
            return MultiSegment._trusted(tuple([new(Segment, (line, b, e)) for b, e in pairs]))
    out = []
    for (line, _), group in m.by_eff_line().items():
        out.extend(_seg((line, b, e)) for b, e in _run_line([(s.b2, s.e2) for s in group]))
    return MultiSegment(out)


def _seg(fields) -> Segment:
    return tuple.__new__(Segment, fields)
