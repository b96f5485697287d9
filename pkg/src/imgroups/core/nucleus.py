"""Nucleus computation and the finitary/directed/bounded classification of states."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Union

from .automaton import AutomatonSpec
from .recursion import _engine, equal, level_permutation
from .words import Word, free_reduce, multiply

FINGERPRINT_DEPTH = 6


class NonContractingError(RuntimeError):
    """The nucleus search hit its iteration or size cap."""


def _word_key(g: Word):
    return (len(g), g)


class _Classes:
    """Words up to equality as automorphisms; the representative is the
    shortest word seen, ties broken by (index, sign) order."""

    def __init__(self, spec: AutomatonSpec):
        self.spec = spec
        self.rep_of: dict[Word, Word] = {}
        self.by_print: dict[tuple, list[Word]] = {}
        self.members: dict[Word, list[Word]] = {}

    def canon(self, g: Word) -> Word:
        hit = self.rep_of.get(g)
        if hit is not None:
            return hit
        fp = tuple(level_permutation(g, FINGERPRINT_DEPTH, self.spec))
        bucket = self.by_print.setdefault(fp, [])
        for rep in bucket:
            if equal(g, rep, self.spec):
                if _word_key(g) < _word_key(rep):
                    self._rename(rep, g, bucket)
                    return g
                self.rep_of[g] = rep
                self.members[rep].append(g)
                return rep
        bucket.append(g)
        self.rep_of[g] = g
        self.members[g] = [g]
        return g

    def _rename(self, old: Word, new: Word, bucket: list[Word]) -> None:
        bucket[bucket.index(old)] = new
        group = self.members.pop(old)
        group.append(new)
        for w in group:
            self.rep_of[w] = new
        self.members[new] = group

    def find(self, g: Word) -> Word:
        return self.rep_of[g]


def _section_graph(classes: _Classes, start: Iterable[Word]) -> dict[Word, tuple[Word, Word]]:
    eng = _engine(classes.spec)
    graph: dict[Word, tuple[Word, Word]] = {}
    todo = [classes.canon(g) for g in start]
    while todo:
        g = classes.find(todo.pop())
        if g in graph:
            continue
        s0, s1, _ = eng.decompose(g)
        succ = (classes.canon(s0), classes.canon(s1))
        graph[g] = succ
        todo.extend(s for s in succ if classes.find(s) not in graph)
    # representatives may have been renamed while exploring
    return {classes.find(g): (classes.find(a), classes.find(b)) for g, (a, b) in graph.items()}


def _core(graph: dict[Word, tuple[Word, Word]]) -> set[Word]:
    """Vertices reachable from a cycle of the section graph."""
    def reach(sources):
        seen = set()
        todo = list(sources)
        while todo:
            g = todo.pop()
            if g in seen:
                continue
            seen.add(g)
            todo.extend(graph[g])
        return seen

    on_cycle = {g for g in graph if g in reach(graph[g])}
    return reach(on_cycle)


def nucleus_closure(spec: AutomatonSpec, seed: Optional[Iterable[Word]] = None,
                    max_iterations: int = 50, max_size: int = 20000) -> list[Word]:
    """Nucleus of a contracting automaton group, one canonical word per element.

    Starting from the cycles in the section graph of the seed (default:
    generators, inverses, identity), repeatedly adds the cycle part of the
    section graph of all pairwise products until nothing changes.
    """
    inv = spec.involutive
    if seed is None:
        seed = [()]
        for i in range(len(spec)):
            seed.append(((i, 1),))
            if not inv:
                seed.append(((i, -1),))
    classes = _Classes(spec)
    nucleus = _core(_section_graph(classes, [free_reduce(g, inv) for g in seed]))
    for _ in range(max_iterations):
        current = sorted({classes.find(g) for g in nucleus}, key=_word_key)
        products = [multiply(g, h, involutive=inv) for g in current for h in current]
        graph = _section_graph(classes, current + products)
        if len(graph) > max_size:
            raise NonContractingError(f"section graph exceeded {max_size} elements; possibly non-contracting")
        new = _core(graph)
        if new == set(current):
            return sorted(new, key=_word_key)
        nucleus = new
    raise NonContractingError(f"no fixpoint after {max_iterations} iterations; possibly non-contracting")


def is_section_closed(elements: Iterable[Word], spec: AutomatonSpec) -> bool:
    elements = list(elements)
    eng = _engine(spec)
    for g in elements:
        s0, s1, _ = eng.decompose(g)
        for s in (s0, s1):
            if not any(equal(s, h, spec) for h in elements):
                return False
    return True


def same_elements(a: Iterable[Word], b: Iterable[Word], spec: AutomatonSpec) -> bool:
    """Whether two finite sets of words define the same set of automorphisms."""
    a, b = list(a), list(b)

    def covered(xs, ys):
        return all(any(equal(x, y, spec) for y in ys) for x in xs)

    return covered(a, b) and covered(b, a)


def distinct_count(words: Iterable[Word], spec: AutomatonSpec) -> int:
    reps: list[Word] = []
    for g in words:
        if not any(equal(g, r, spec) for r in reps):
            reps.append(g)
    return len(reps)


# state classification ---------------------------------------------------

@dataclass(frozen=True)
class Finitary:
    depth: int


@dataclass(frozen=True)
class Directed:
    cycle: tuple[str, ...]
    ray: str          # the kneading ray is ray repeated forever


@dataclass(frozen=True)
class OtherBounded:
    pass


@dataclass(frozen=True)
class Unbounded:
    pass


StateClass = Union[Finitary, Directed, OtherBounded, Unbounded]


def _finitary_depths(spec: AutomatonSpec) -> dict[int, int]:
    """Depth of every finitary state: least n with all level-n sections trivial."""
    depth: dict[int, int] = {}
    changed = True
    while changed:
        changed = False
        for i, secs in enumerate(spec.sections):
            if i in depth:
                continue
            sub = []
            for s in secs:
                if s is None:
                    sub.append(0)
                elif s in depth:
                    sub.append(depth[s])
                else:
                    break
            else:
                d = max(sub)
                if spec.active[i] or d > 0:
                    d += 1
                depth[i] = d
                changed = True
    return depth


def _directed(i: int, spec: AutomatonSpec, fin: dict[int, int]) -> Optional[Directed]:
    path, letters, j = [], [], i
    while j not in path:
        heavy = [(x, s) for x, s in enumerate(spec.sections[j]) if s is not None and s not in fin]
        if len(heavy) != 1:
            return None
        path.append(j)
        letters.append(heavy[0][0])
        j = heavy[0][1]
    if j != i:
        return None
    return Directed(tuple(spec.names[k] for k in path), "".join(map(str, letters)))


def classify_state(state: Union[int, str, None], spec: AutomatonSpec) -> StateClass:
    """Finitary, directed (with its kneading ray), other bounded, or unbounded.

    ``None`` stands for the identity state.  A non-finitary, non-directed
    state is bounded iff no cycle of non-finitary states is reachable from
    it except the simple cycles of directed states.
    """
    if state is None:
        return Finitary(0)
    if isinstance(state, str):
        state = spec.index(state)
    fin = _finitary_depths(spec)
    if state in fin:
        return Finitary(fin[state])
    found = _directed(state, spec, fin)
    if found is not None:
        return found

    memo: dict[int, bool] = {}

    def bounded(i: int, stack: tuple[int, ...]) -> bool:
        if i in fin:
            return True
        if i in memo:
            return memo[i]
        if i in stack:
            return False
        if _directed(i, spec, fin) is not None:
            memo[i] = True
            return True
        ok = all(bounded(s, stack + (i,)) for s in spec.sections[i] if s is not None)
        memo[i] = ok
        return ok

    return OtherBounded() if bounded(state, ()) else Unbounded()
