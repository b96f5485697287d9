"""Automaton groups of quadratic polynomials: ``K_v`` and ``K_{w,v}``, their
nuclei, endomorphisms, presentations, and the angles they come from."""

from .angles import (KneadingResult, doubling_orbit, group_from_angle, itinerary,
                     kneading_sequence, parse_angle)
from .kneading import (KneadingError, KneadingGroup, Periodic, Preperiodic, build_kv, build_kwv,
                       period_parameter)
from .syntax import format_word, parse_word

__all__ = [
    "KneadingError", "KneadingGroup", "KneadingResult", "Periodic", "Preperiodic", "build_kv",
    "build_kwv", "doubling_orbit", "format_word", "group_from_angle", "itinerary",
    "kneading_sequence", "parse_angle", "parse_word", "period_parameter",
]
