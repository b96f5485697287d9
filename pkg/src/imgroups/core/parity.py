"""Parity sequences: the image of a tree automorphism in the abelianization
of the full automorphism group, ``g -> (i_0, i_1, ...)`` with ``i_m`` the
parity of the number of active restrictions on level ``m``."""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Mapping, Sequence

from .automaton import AutomatonSpec
from .words import Word


def _primitive_root_length(bits: Sequence[int]) -> int:
    n = len(bits)
    for p in range(1, n + 1):
        if n % p == 0 and all(bits[i] == bits[i % p] for i in range(n)):
            return p
    return n


@dataclass(frozen=True)
class EventuallyPeriodicBits:
    """``preperiod`` followed by ``period`` repeated forever, in minimal form."""

    preperiod: tuple[int, ...]
    period: tuple[int, ...]

    @classmethod
    def make(cls, preperiod: Sequence[int], period: Sequence[int]) -> "EventuallyPeriodicBits":
        if not period:
            raise ValueError("period must be nonempty")
        pre = list(preperiod)
        per = list(period[:_primitive_root_length(period)])
        while pre and pre[-1] == per[-1]:
            pre.pop()
            per = [per[-1]] + per[:-1]
        return cls(tuple(pre), tuple(per))

    @classmethod
    def zeros(cls) -> "EventuallyPeriodicBits":
        return cls((), (0,))

    def __getitem__(self, m: int) -> int:
        k = len(self.preperiod)
        if m < k:
            return self.preperiod[m]
        return self.period[(m - k) % len(self.period)]

    def prefix(self, length: int) -> list[int]:
        return [self[m] for m in range(length)]

    def __add__(self, other: "EventuallyPeriodicBits") -> "EventuallyPeriodicBits":
        pre = max(len(self.preperiod), len(other.preperiod))
        per = lcm(len(self.period), len(other.period))
        bits = [self[m] ^ other[m] for m in range(pre + per)]
        return EventuallyPeriodicBits.make(bits[:pre], bits[pre:])

    def is_all_ones(self) -> bool:
        return not self.preperiod and self.period == (1,)

    def __str__(self) -> str:
        pre = "".join(map(str, self.preperiod))
        return f"{pre}({''.join(map(str, self.period))})^w"


def state_tau_table(spec: AutomatonSpec) -> dict[int, EventuallyPeriodicBits]:
    """Parity sequence of every state.

    Solves ``tau(s)_0 = active(s)`` and ``tau(s)_m = tau(s|0)_{m-1} + tau(s|1)_{m-1}``
    over GF(2); the joint state vector repeats, which certifies the
    (preperiod, period) pattern exactly.
    """
    n = len(spec)
    vec = tuple(int(a) for a in spec.active)
    history: list[tuple[int, ...]] = []
    seen: dict[tuple[int, ...], int] = {}
    while vec not in seen:
        seen[vec] = len(history)
        history.append(vec)
        vec = tuple(
            ((0 if s0 is None else vec[s0]) ^ (0 if s1 is None else vec[s1]))
            for s0, s1 in spec.sections
        )
    start = seen[vec]
    table = {}
    for i in range(n):
        column = [row[i] for row in history]
        table[i] = EventuallyPeriodicBits.make(column[:start], column[start:])
    return table


def tau(g: Word, tau_table: Mapping[int, EventuallyPeriodicBits]) -> EventuallyPeriodicBits:
    """Parity sequence of a word; the map is a homomorphism to an elementary abelian group."""
    counts: dict[int, int] = {}
    for index, _ in g:
        counts[index] = counts.get(index, 0) ^ 1
    total = EventuallyPeriodicBits.zeros()
    for index in sorted(counts):
        if counts[index]:
            total = total + tau_table[index]
    return total


def is_level_transitive_element(g: Word, tau_table: Mapping[int, EventuallyPeriodicBits]) -> bool:
    return tau(g, tau_table).is_all_ones()
