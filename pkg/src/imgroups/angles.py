"""Rational external angles under doubling, their kneading sequences, and
the group attached to an angle.

Angles are exact :class:`fractions.Fraction` values in ``[0, 1)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .core.parity import EventuallyPeriodicBits
from .kneading import KneadingGroup, KneadingSpec, Periodic, Preperiodic, primitive_root

Angle = Fraction
STAR = "*"


def parse_angle(value: Union[str, int, Fraction]) -> Fraction:
    """``"p/q"``, an integer or a Fraction, reduced modulo 1."""
    if isinstance(value, str):
        text = value.strip()
        try:
            frac = Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"not a rational angle: {value!r}") from None
        if "." in text or "e" in text.lower():
            raise ValueError(f"write angles as p/q, got {value!r}")
    else:
        frac = Fraction(value)
    if frac < 0:
        raise ValueError(f"angle must be nonnegative, got {value!r}")
    return frac % 1


def format_angle(theta: Fraction) -> str:
    return "0" if theta == 0 else f"{theta.numerator}/{theta.denominator}"


@dataclass(frozen=True)
class DoublingOrbit:
    orbit: tuple[Fraction, ...]   # distinct points; doubling the last gives orbit[preperiod]
    preperiod: int
    period: int


def doubling_orbit(theta: Fraction) -> DoublingOrbit:
    theta = parse_angle(theta)
    seen: dict[Fraction, int] = {}
    orbit = []
    x = theta
    while x not in seen:
        seen[x] = len(orbit)
        orbit.append(x)
        x = (2 * x) % 1
    pre = seen[x]
    return DoublingOrbit(tuple(orbit), pre, len(orbit) - pre)


def itinerary(theta: Fraction, alpha: Fraction, length: int, literal: bool = False) -> str:
    """Symbols of ``alpha, 2 alpha, 4 alpha, ...`` relative to the diameter
    through ``theta/2`` and ``(1+theta)/2``.

    The open arc containing ``theta`` is labelled ``1`` (``0`` when
    ``literal`` is set), the other open arc the opposite symbol, and the two
    boundary points ``*``.
    """
    theta, alpha = parse_angle(theta), parse_angle(alpha)
    lo, hi = theta / 2, (1 + theta) / 2
    inside, outside = ("0", "1") if literal else ("1", "0")
    out = []
    x = alpha
    for _ in range(length):
        if x == lo or x == hi:
            out.append(STAR)
        else:
            out.append(inside if lo < x < hi else outside)
        x = (2 * x) % 1
    return "".join(out)


@dataclass(frozen=True)
class KneadingResult:
    theta: Fraction
    orbit: tuple[Fraction, ...]
    preperiod: int
    period: int
    raw_preperiod: str            # symbols along the orbit, aligned with it
    raw_period: str
    canonical: KneadingSpec

    @property
    def raw(self) -> str:
        return f"{self.raw_preperiod}({self.raw_period})^w"

    @property
    def kneading_period(self) -> int:
        if isinstance(self.canonical, Periodic):
            return len(self.canonical.v) + 1
        return len(self.canonical.v)

    @property
    def period_reduced(self) -> bool:
        """Whether the kneading period is a proper divisor of the angle's period."""
        return self.kneading_period < self.period

    def symbol(self, m: int) -> str:
        if m < self.preperiod:
            return self.raw_preperiod[m]
        return self.raw_period[(m - self.preperiod) % self.period]


def kneading_sequence(theta: Fraction, literal: bool = False) -> KneadingResult:
    theta = parse_angle(theta)
    orb = doubling_orbit(theta)
    word = itinerary(theta, theta, len(orb.orbit), literal)
    pre, per = word[:orb.preperiod], word[orb.preperiod:]
    if theta == 0:
        canonical: KneadingSpec = Periodic("")
    elif orb.preperiod == 0:
        if per[-1] != STAR or STAR in per[:-1]:
            raise RuntimeError(f"unexpected itinerary {per!r} for periodic angle {theta}")
        canonical = Periodic(per[:-1])
    else:
        if STAR in word:
            raise RuntimeError(f"boundary hit in pre-periodic itinerary of {theta}")
        bits = EventuallyPeriodicBits.make([int(c) for c in pre], [int(c) for c in per])
        w = "".join(map(str, bits.preperiod))
        v = "".join(map(str, bits.period))
        if not w:
            raise RuntimeError(f"kneading sequence of {theta} is purely periodic")
        canonical = Preperiodic(w, v)
    return KneadingResult(theta, orb.orbit, orb.preperiod, orb.period, pre, per, canonical)


@dataclass(frozen=True)
class AngleGroup:
    kneading: KneadingResult
    group: KneadingGroup

    @property
    def spec(self):
        return self.group.spec


def group_from_angle(theta: Fraction) -> AngleGroup:
    """The kneading group of ``theta``: ``K_v`` for periodic, ``K_{w,v}`` for
    pre-periodic angles."""
    result = kneading_sequence(theta)
    return AngleGroup(result, KneadingGroup(result.canonical))


def is_primitive(word: str) -> bool:
    return primitive_root(word)[1] == 1
