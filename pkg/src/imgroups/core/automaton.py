"""Finite automata over the binary alphabet and their Moore diagrams."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Optional, Sequence

IDENTITY_NAME = "1"


class SpecError(ValueError):
    """Malformed automaton description."""


@dataclass(frozen=True)
class AutomatonSpec:
    """States of a binary automaton.

    ``sections[i]`` holds the states reached from state ``i`` on letters 0
    and 1; ``None`` stands for the identity.  ``involutive`` declares every
    state to be an involution, so words over the spec are reduced sign-free.
    ``family`` is free-form metadata (``"kv"``, ``"kwv"`` or ``None``).
    """

    names: tuple[str, ...]
    sections: tuple[tuple[Optional[int], Optional[int]], ...]
    active: tuple[bool, ...]
    involutive: bool = False
    family: Optional[str] = None
    _index: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        n = len(self.names)
        if len(self.sections) != n or len(self.active) != n:
            raise SpecError("names, sections and active flags differ in length")
        if len(set(self.names)) != n:
            raise SpecError("state names must be unique")
        for name in self.names:
            if name == IDENTITY_NAME or not name or not name[0].isalpha() or not name.isalnum():
                raise SpecError(f"invalid state name {name!r}")
        for secs in self.sections:
            for s in secs:
                if s is not None and not 0 <= s < n:
                    raise SpecError(f"section {s} is not a declared state")
        object.__setattr__(self, "_index", {name: i for i, name in enumerate(self.names)})

    def __len__(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise SpecError(f"unknown generator {name!r}") from None

    @classmethod
    def from_states(cls, states: Sequence[tuple[str, Optional[str], Optional[str], bool]],
                    involutive: bool = False, family: Optional[str] = None) -> "AutomatonSpec":
        """Build from ``(name, sec0, sec1, active)`` rows; sections by name or ``"1"``/None."""
        names = tuple(row[0] for row in states)
        lookup = {name: i for i, name in enumerate(names)}

        def resolve(sec):
            if sec is None or sec == IDENTITY_NAME:
                return None
            if sec not in lookup:
                raise SpecError(f"section {sec!r} is not a declared state")
            return lookup[sec]

        sections = tuple((resolve(row[1]), resolve(row[2])) for row in states)
        active = tuple(bool(row[3]) for row in states)
        return cls(names, sections, active, involutive, family)

    def to_dict(self) -> dict[str, Any]:
        def name_of(s):
            return IDENTITY_NAME if s is None else self.names[s]

        out: dict[str, Any] = {
            "states": [
                {"name": name, "sec0": name_of(s0), "sec1": name_of(s1), "active": act}
                for name, (s0, s1), act in zip(self.names, self.sections, self.active)
            ]
        }
        if self.involutive:
            out["involutive"] = True
        if self.family is not None:
            out["family"] = self.family
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "AutomatonSpec":
        try:
            rows = [(s["name"], s["sec0"], s["sec1"], s["active"]) for s in data["states"]]
        except (KeyError, TypeError) as exc:
            raise SpecError(f"malformed automaton JSON: {exc}") from None
        return cls.from_states(rows, bool(data.get("involutive", False)), data.get("family"))

    @classmethod
    def from_json(cls, text: str) -> "AutomatonSpec":
        return cls.from_dict(json.loads(text))


def join_specs(*specs: AutomatonSpec, extra=(), family=None) -> AutomatonSpec:
    """Disjoint union of automata (state names must not clash); ``extra`` adds rows."""
    rows = []
    for spec in specs:
        for name, (s0, s1), act in zip(spec.names, spec.sections, spec.active):
            rows.append((name,
                         None if s0 is None else spec.names[s0],
                         None if s1 is None else spec.names[s1],
                         act))
    rows.extend(extra)
    return AutomatonSpec.from_states(rows, involutive=False, family=family)


def moore_dot(spec: AutomatonSpec, title: str = "automaton") -> str:
    """Graphviz text of the Moore diagram.

    Active states are black, inactive ones white; edges into the identity
    are omitted.  Output is byte-stable for a given spec.
    """
    lines = [f'digraph "{title}" {{', "  rankdir=LR;",
             "  node [shape=circle, style=filled];"]
    for name, act in zip(spec.names, spec.active):
        if act:
            lines.append(f'  "{name}" [fillcolor=black, fontcolor=white, xlabel="σ"];')
        else:
            lines.append(f'  "{name}" [fillcolor=white, fontcolor=black];')
    for name, secs in zip(spec.names, spec.sections):
        for letter, target in enumerate(secs):
            if target is not None:
                lines.append(f'  "{name}" -> "{spec.names[target]}" [label="{letter}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
