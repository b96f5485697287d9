"""Free-group words over signed generator symbols.

A symbol is a pair ``(index, sign)`` with ``sign`` in ``{+1, -1}``; a word is
a tuple of symbols.  Words are kept freely reduced.  In *involution mode*
every generator is its own inverse: signs are normalised to ``+1`` and equal
adjacent letters cancel.
"""

from __future__ import annotations

from typing import Iterable, Sequence

Symbol = tuple[int, int]
Word = tuple[Symbol, ...]

IDENTITY: Word = ()


def free_reduce(raw: Iterable[Symbol], involutive: bool = False) -> Word:
    stack: list[Symbol] = []
    if involutive:
        for index, _ in raw:
            if stack and stack[-1][0] == index:
                stack.pop()
            else:
                stack.append((index, 1))
    else:
        for sym in raw:
            if stack and stack[-1][0] == sym[0] and stack[-1][1] == -sym[1]:
                stack.pop()
            else:
                stack.append(sym)
    return tuple(stack)


def inverse(g: Word, involutive: bool = False) -> Word:
    if involutive:
        return tuple(reversed(g))
    return tuple((i, -s) for i, s in reversed(g))


def multiply(*words: Word, involutive: bool = False) -> Word:
    return free_reduce((sym for w in words for sym in w), involutive)


def power(g: Word, m: int, involutive: bool = False) -> Word:
    if m < 0:
        g, m = inverse(g, involutive), -m
    return free_reduce(g * m, involutive)


def conjugate(g: Word, h: Word, involutive: bool = False) -> Word:
    """``g^h = h^-1 g h``."""
    return multiply(inverse(h, involutive), g, h, involutive=involutive)


def commutator(g: Word, h: Word, involutive: bool = False) -> Word:
    """``[g, h] = g^-1 h^-1 g h``."""
    return multiply(inverse(g, involutive), inverse(h, involutive), g, h,
                    involutive=involutive)


def substitute(g: Word, images: Sequence[Word], involutive: bool = False) -> Word:
    """Apply the free-group endomorphism sending generator ``i`` to ``images[i]``."""
    out: list[Symbol] = []
    for index, sign in g:
        img = images[index]
        out.extend(img if sign > 0 else inverse(img, involutive))
    return free_reduce(out, involutive)


def exponent_sums(g: Word, rank: int) -> list[int]:
    sums = [0] * rank
    for index, sign in g:
        sums[index] += sign
    return sums


def gen(index: int, sign: int = 1) -> Word:
    return ((index, sign),)
