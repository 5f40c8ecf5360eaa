"""
Braid words from price series.

Strand positions run 1..n in ascending price order (strand 1 is the cheapest
stock). Between two ticks the change of rank order is decomposed into
adjacent transpositions; each becomes a signed generator. The stock sitting
on the lower strand of a swap crosses over (sign +1) when its absolute price
change over the tick is at least its neighbour's, under otherwise.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from decimal import Decimal
from typing import Iterable, Sequence

from .errors import AdmissibilityError, ParseError
from .ingest import PortfolioSeries, PriceFrame, validate_portfolio

SCHEMA_VERSION = 1

__all__ = [
    "RankState",
    "Crossing",
    "BraidWord",
    "rank_order",
    "detect_crossings",
    "braid_word",
    "rank_states",
    "free_reduce",
    "apply_word",
    "letter_text",
]


@dataclass(frozen=True)
class RankState:
    timestamp: str
    order: tuple[str, ...]  # order[p - 1] is the ticker on strand p
    frame: PriceFrame | None = field(default=None, compare=False, repr=False)

    def position(self, ticker: str) -> int:
        return self.order.index(ticker) + 1


@dataclass(frozen=True)
class Crossing:
    strand: int
    sign: int
    tick: tuple[str, str] | None = None
    delta_lower: Decimal | None = None
    delta_upper: Decimal | None = None

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")
        if self.strand < 1:
            raise ValueError(f"strand index must be positive, got {self.strand}")

    @property
    def letter(self) -> tuple[int, int]:
        return (self.strand, self.sign)

    def inverse(self) -> Crossing:
        return replace(self, sign=-self.sign)


def letter_text(strand: int, sign: int, unicode: bool = True) -> str:
    if unicode:
        return f"σ{strand}" + ("⁻¹" if sign < 0 else "")
    return f"s{strand}" + ("^-1" if sign < 0 else "")


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[Crossing, ...] = ()
    labels: tuple[str, ...] | None = None  # tickers on strands 1..n at the start

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))
            if len(self.labels) != self.strands:
                raise ValueError("labels must name every strand")
        for c in self.letters:
            if not 1 <= c.strand <= self.strands - 1:
                raise ValueError(f"generator σ{c.strand} out of range for {self.strands} strands")

    @classmethod
    def from_ints(cls, strands: int, ints: Iterable[int], labels=None) -> BraidWord:
        """``[1, -2]`` means σ1 σ2⁻¹."""
        letters = []
        for x in ints:
            if x == 0:
                raise ValueError("0 is not a generator")
            letters.append(Crossing(abs(x), 1 if x > 0 else -1))
        return cls(strands, tuple(letters), labels)

    def to_ints(self) -> list[int]:
        return [c.strand * c.sign for c in self.letters]

    @property
    def signed_letters(self) -> tuple[tuple[int, int], ...]:
        return tuple(c.letter for c in self.letters)

    def __len__(self):
        return len(self.letters)

    def __add__(self, other: BraidWord) -> BraidWord:
        if self.strands != other.strands:
            raise ValueError("cannot concatenate words on different strand counts")
        return BraidWord(self.strands, self.letters + other.letters, self.labels)

    def window(self, start: int, length: int) -> BraidWord:
        return BraidWord(self.strands, self.letters[start : start + length])

    def inverse(self) -> BraidWord:
        return BraidWord(self.strands, tuple(c.inverse() for c in reversed(self.letters)))

    def text(self, unicode: bool = True) -> str:
        return " ".join(letter_text(c.strand, c.sign, unicode) for c in self.letters)

    # -- serialization --------------------------------------------------

    def to_json_obj(self) -> dict:
        letters = []
        for c in self.letters:
            item: dict = {"strand": c.strand, "sign": c.sign}
            if c.tick is not None:
                item["from"], item["to"] = c.tick
            if c.delta_lower is not None:
                item["deltaLower"] = str(c.delta_lower)
                item["deltaUpper"] = str(c.delta_upper)
            letters.append(item)
        obj: dict = {"schemaVersion": SCHEMA_VERSION, "strands": self.strands}
        if self.labels is not None:
            obj["labels"] = list(self.labels)
        obj["letters"] = letters
        return obj

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), indent=2, ensure_ascii=False) + "\n"

    @classmethod
    def from_json_obj(cls, obj: dict) -> BraidWord:
        try:
            version = obj.get("schemaVersion", SCHEMA_VERSION)
            if version != SCHEMA_VERSION:
                raise ParseError(f"unsupported braid-word schemaVersion {version}")
            letters = []
            for item in obj["letters"]:
                tick = (item["from"], item["to"]) if "from" in item else None
                lower = Decimal(item["deltaLower"]) if "deltaLower" in item else None
                upper = Decimal(item["deltaUpper"]) if "deltaUpper" in item else None
                letters.append(Crossing(int(item["strand"]), int(item["sign"]), tick, lower, upper))
            return cls(int(obj["strands"]), tuple(letters), obj.get("labels"))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"malformed braid-word JSON: {exc}") from exc

    @classmethod
    def from_json(cls, text: str) -> BraidWord:
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno) from exc
        return cls.from_json_obj(obj)


def rank_order(frame: PriceFrame, previous: RankState | None = None) -> RankState:
    """Sort tickers by ascending price.

    Equal prices keep the relative order of ``previous``; without a previous
    state they fall back to ticker name.
    """
    if previous is not None:
        if set(previous.order) != set(frame.prices):
            raise ValueError("previous state covers a different ticker set")
        tiebreak = {t: i for i, t in enumerate(previous.order)}
        key = lambda t: (frame.prices[t], tiebreak[t])
    else:
        key = lambda t: (frame.prices[t], t)
    return RankState(frame.timestamp, tuple(sorted(frame.prices, key=key)), frame)


def _normalize_tick(letters: list[Crossing]) -> list[Crossing]:
    # Move commuting letters (|i - j| >= 2) into ascending strand order.
    # Non-commuting neighbours keep their relative order, so the product and
    # the induced permutation are unchanged.
    out = list(letters)
    changed = True
    while changed:
        changed = False
        for k in range(len(out) - 1):
            if out[k].strand > out[k + 1].strand + 1:
                out[k], out[k + 1] = out[k + 1], out[k]
                changed = True
    return out


def detect_crossings(state: RankState, frame_next: PriceFrame) -> list[Crossing]:
    """Crossings between ``state`` and the next frame.

    The permutation is decomposed by insertion sort on the old order keyed by
    the new ranks, one generator per elementary swap.
    """
    if state.frame is None:
        raise ValueError("rank state carries no prices")
    before = state.frame.prices
    if set(before) != set(frame_next.prices):
        raise ValueError("frames cover different ticker sets")
    new_state = rank_order(frame_next, state)
    new_rank = {t: i for i, t in enumerate(new_state.order)}
    delta = {t: abs(frame_next.prices[t] - before[t]) for t in before}
    tick = (state.timestamp, frame_next.timestamp)

    work = list(state.order)
    letters = []
    for j in range(1, len(work)):
        p = j
        while p > 0 and new_rank[work[p - 1]] > new_rank[work[p]]:
            lower, upper = work[p - 1], work[p]
            sign = 1 if delta[lower] >= delta[upper] else -1
            letters.append(Crossing(p, sign, tick, delta[lower], delta[upper]))
            work[p - 1], work[p] = upper, lower
            p -= 1
    assert tuple(work) == new_state.order
    return _normalize_tick(letters)


def rank_states(series: PortfolioSeries) -> list[RankState]:
    states = []
    prev = None
    for frame in series.frames:
        prev = rank_order(frame, prev)
        states.append(prev)
    return states


def braid_word(series: PortfolioSeries, *, check: bool = True) -> BraidWord:
    """Braid word of a whole series, letters in time order."""
    if check:
        report = validate_portfolio(series)
        if report.errors:
            raise AdmissibilityError(report.errors)
    n = len(series.tickers)
    if not series.frames:
        return BraidWord(n, (), None)
    states = rank_states(series)
    letters = []
    for state, frame in zip(states, series.frames[1:]):
        letters.extend(detect_crossings(state, frame))
    return BraidWord(n, tuple(letters), states[0].order)


def free_reduce(word: BraidWord) -> BraidWord:
    """Cancel adjacent σi^s σi^-s pairs until none remain."""
    stack: list[Crossing] = []
    for c in word.letters:
        if stack and stack[-1].strand == c.strand and stack[-1].sign == -c.sign:
            stack.pop()
        else:
            stack.append(c)
    return BraidWord(word.strands, tuple(stack), word.labels)


def apply_word(order: Sequence[str], word: BraidWord | Sequence[Crossing]) -> tuple[str, ...]:
    """Permute a strand order by the transpositions of ``word``."""
    letters = word.letters if isinstance(word, BraidWord) else word
    work = list(order)
    for c in letters:
        i = c.strand
        work[i - 1], work[i] = work[i], work[i - 1]
    return tuple(work)
