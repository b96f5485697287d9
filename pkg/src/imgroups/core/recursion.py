"""Wreath recursion, tree action and the word problem for automaton groups.

The group acts on the right: a word ``s1 s2 ... sk`` first applies ``s1``.
``<g0, g1> sigma`` means "act by the sections, then swap the top letter".
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence, Union

from .automaton import AutomatonSpec
from .words import Symbol, Word, exponent_sums, free_reduce, inverse, multiply

DEFAULT_DEPTH_CAP = 12
DEFAULT_SMALL_SCAN = 64
DEFAULT_MAX_EXP = 20


@dataclass(frozen=True)
class WreathPair:
    section0: Word
    section1: Word
    swap: bool

    def __iter__(self):
        return iter((self.section0, self.section1, self.swap))


class _Engine:
    """Per-spec transition tables and memo caches (dict inserts are atomic)."""

    def __init__(self, spec: AutomatonSpec):
        self.spec = spec
        self.inv = spec.involutive
        self.trans: dict[Symbol, tuple[tuple[int, Symbol | None], ...]] = {}
        for i, ((s0, s1), act) in enumerate(zip(spec.sections, spec.active)):
            secs = (s0, s1)
            fwd = []
            for y in (0, 1):
                sec = secs[y]
                fwd.append((1 - y if act else y, None if sec is None else (sec, 1)))
            self.trans[(i, 1)] = tuple(fwd)
            # s^-1 sends y to y' with s(y') = y, and its section is (s|_y')^-1
            back = []
            for y in (0, 1):
                src = 1 - y if act else y
                sec = secs[src]
                back.append((src, None if sec is None else (sec, 1 if self.inv else -1)))
            self.trans[(i, -1)] = tuple(back)
        self.decomp: dict[Word, WreathPair] = {}
        self.level_perms: dict[tuple[Symbol, int], list[int]] = {}

    def check(self, g: Word) -> None:
        for sym in g:
            if sym not in self.trans:
                raise ValueError(f"symbol {sym} not in automaton")

    def decompose(self, g: Word) -> WreathPair:
        hit = self.decomp.get(g)
        if hit is not None:
            return hit
        trans = self.trans
        routes = []
        end0 = 0
        for x in (0, 1):
            y = x
            secs = []
            for sym in g:
                out, sec = trans[sym][y]
                if sec is not None:
                    secs.append(sec)
                y = out
            routes.append(free_reduce(secs, self.inv))
            if x == 0:
                end0 = y
        pair = WreathPair(routes[0], routes[1], end0 == 1)
        if len(self.decomp) < 1_000_000:
            self.decomp[g] = pair
        return pair

    def apply_symbol(self, sym: Symbol, v: Sequence[int]) -> list[int]:
        out = []
        state: Symbol | None = sym
        for pos, y in enumerate(v):
            if state is None:
                out.extend(v[pos:])
                break
            z, state = self.trans[state][y]
            out.append(z)
        return out

    def symbol_permutation(self, sym: Symbol, depth: int) -> list[int]:
        key = (sym, depth)
        perm = self.level_perms.get(key)
        if perm is None:
            perm = [_encode(self.apply_symbol(sym, _decode(i, depth))) for i in range(1 << depth)]
            self.level_perms[key] = perm
        return perm


@lru_cache(maxsize=256)
def _engine(spec: AutomatonSpec) -> _Engine:
    return _Engine(spec)


def _encode(v: Sequence[int]) -> int:
    code = 0
    for y in v:
        code = (code << 1) | y
    return code


def _decode(code: int, depth: int) -> list[int]:
    return [(code >> (depth - 1 - k)) & 1 for k in range(depth)]


def vertex(text: str) -> tuple[int, ...]:
    """Parse a bitstring such as ``"0110"`` into a vertex."""
    if any(c not in "01" for c in text):
        raise ValueError(f"vertex must be a bitstring, got {text!r}")
    return tuple(int(c) for c in text)


def reduce_word(g: Iterable[Symbol], spec: AutomatonSpec) -> Word:
    return free_reduce(g, spec.involutive)


def wreath_decompose(g: Word, spec: AutomatonSpec) -> WreathPair:
    eng = _engine(spec)
    g = free_reduce(g, spec.involutive)
    eng.check(g)
    return eng.decompose(g)


def restrict(g: Word, v: Sequence[int], spec: AutomatonSpec) -> Word:
    eng = _engine(spec)
    g = free_reduce(g, spec.involutive)
    eng.check(g)
    for x in v:
        if not g:
            break
        pair = eng.decompose(g)
        g = pair.section1 if x else pair.section0
    return g


def act(g: Word, v: Sequence[int], spec: AutomatonSpec) -> tuple[int, ...]:
    """Image of vertex ``v`` under ``g`` (right action, letters applied left to right)."""
    eng = _engine(spec)
    eng.check(g)
    out = list(v)
    for sym in g:
        out = eng.apply_symbol(sym, out)
    return tuple(out)


def is_trivial(g: Word, spec: AutomatonSpec) -> bool:
    """Decide ``g == 1`` by exploring the (finite) set of its restrictions."""
    eng = _engine(spec)
    g = free_reduce(g, spec.involutive)
    eng.check(g)
    seen = {g}
    todo = [g]
    while todo:
        h = todo.pop()
        if not h:
            continue
        pair = eng.decompose(h)
        if pair.swap:
            return False
        for sec in (pair.section0, pair.section1):
            if sec and sec not in seen:
                seen.add(sec)
                todo.append(sec)
    return True


def equal(g: Word, h: Word, spec: AutomatonSpec) -> bool:
    return is_trivial(multiply(g, inverse(h, spec.involutive), involutive=spec.involutive), spec)


def power_is_trivial(g: Word, m: int, spec: AutomatonSpec) -> bool:
    """Decide ``g^m == 1`` without writing out ``g^m``.

    Uses ``g^m = <g0^m, g1^m>`` for inactive ``g`` and
    ``g^(2r) = <(g0 g1)^r, (g1 g0)^r>`` for active ``g``.
    """
    eng = _engine(spec)
    inv = spec.involutive
    g = free_reduce(g, inv)
    eng.check(g)
    m = abs(m)
    start = (g, m)
    seen = {start}
    todo = [start]
    while todo:
        h, e = todo.pop()
        if not h or e == 0:
            continue
        s0, s1, swap = eng.decompose(h)
        if swap:
            if e % 2:
                return False
            nxt = ((multiply(s0, s1, involutive=inv), e // 2),
                   (multiply(s1, s0, involutive=inv), e // 2))
        else:
            nxt = ((s0, e), (s1, e))
        for item in nxt:
            if item[0] and item not in seen:
                seen.add(item)
                todo.append(item)
    return True


def level_permutation(g: Word, depth: int, spec: AutomatonSpec) -> list[int]:
    """Permutation of level ``depth``; vertices are encoded big-endian as integers."""
    eng = _engine(spec)
    eng.check(g)
    perm = list(range(1 << depth))
    for sym in g:
        sp = eng.symbol_permutation(sym, depth)
        perm = [sp[p] for p in perm]
    return perm


def orbit_on_level(g: Word, depth: int, spec: AutomatonSpec,
                   cap: int = DEFAULT_DEPTH_CAP) -> list[tuple[str, ...]]:
    """Cycle decomposition of ``g`` on ``X^depth``, cycles listed from their least vertex."""
    if depth < 0 or depth > cap:
        raise ValueError(f"depth {depth} outside 0..{cap}")
    perm = level_permutation(g, depth, spec)
    seen = [False] * len(perm)
    cycles = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cycle = []
        v = start
        while not seen[v]:
            seen[v] = True
            cycle.append("".join(map(str, _decode(v, depth))))
            v = perm[v]
        cycles.append(tuple(cycle))
    return cycles


def fixes_level(g: Word, depth: int, spec: AutomatonSpec) -> bool:
    perm = level_permutation(g, depth, spec)
    return all(i == p for i, p in enumerate(perm))


# order probing ------------------------------------------------------------

@dataclass(frozen=True)
class Finite:
    order: int


@dataclass(frozen=True)
class Infinite:
    witness: str


@dataclass(frozen=True)
class Unknown:
    bound: int


OrderResult = Union[Finite, Infinite, Unknown]


def _cyclic_key(g: Word, inv: bool) -> Word:
    """A representative of the cyclic conjugacy class of ``g`` (same order)."""
    g = list(g)
    while len(g) > 1 and g[0][0] == g[-1][0] and (inv or g[0][1] == -g[-1][1]):
        g = g[1:-1]
    if not g:
        return ()
    return min(tuple(g[i:] + g[:i]) for i in range(len(g)))


def infinite_order_certificate(g: Word, spec: AutomatonSpec, cap: int = 5000) -> bool:
    """Prove infinite order by the order recursion.

    ``order(g) = lcm(order(g0), order(g1))`` for inactive ``g`` and
    ``order(g) = 2 order(g0 g1)`` for active ``g``.  Following these edges
    between cyclic conjugacy classes, a cycle through an active step gives
    ``order(h) >= 2 order(h)``, impossible for finite order.  Returns False
    when no such cycle is found within ``cap`` classes.
    """
    eng = _engine(spec)
    inv = spec.involutive
    start = _cyclic_key(free_reduce(g, inv), inv)
    edges: dict[Word, list[tuple[Word, int]]] = {}
    todo = [start]
    while todo:
        h = todo.pop()
        if h in edges or not h:
            continue
        if len(edges) >= cap:
            return False
        s0, s1, swap = eng.decompose(h)
        if swap:
            out = [(_cyclic_key(multiply(s0, s1, involutive=inv), inv), 1)]
        else:
            out = [(_cyclic_key(s0, inv), 0), (_cyclic_key(s1, inv), 0)]
        edges[h] = [(x, gain) for x, gain in out if x]
        todo.extend(x for x, _ in edges[h] if x not in edges)
    comp = _strong_components(edges)
    return any(gain and comp[u] == comp[x]
               for u, outs in edges.items() for x, gain in outs)


def _strong_components(edges: dict) -> dict:
    """Iterative Tarjan; maps each vertex to a component id."""
    index: dict = {}
    low: dict = {}
    comp: dict = {}
    stack: list = []
    on_stack: set = set()
    counter = 0
    for root in edges:
        if root in index:
            continue
        work = [(root, iter(edges.get(root, ())))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w, _ in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(edges.get(w, ()))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp[w] = index[v]
                    if w == v:
                        break
    return comp


def order_probe(g: Word, spec: AutomatonSpec, tau_table=None,
                max_exp: int = DEFAULT_MAX_EXP,
                small_scan: int = DEFAULT_SMALL_SCAN) -> OrderResult:
    """Bound or determine the order of ``g``.

    Infinite-order certificates are tried first: an all-ones parity
    sequence (level-transitive elements have infinite order), for
    ``family == "kv"`` specs torsion-freeness, and a growing cycle of the
    order recursion.  Then ``g^m`` is tested for
    ``m <= small_scan`` and ``m = 2^j`` with ``j <= max_exp``.
    """
    from .parity import state_tau_table, tau

    g = free_reduce(g, spec.involutive)
    if is_trivial(g, spec):
        return Finite(1)
    if tau_table is None:
        tau_table = state_tau_table(spec)
    if tau(g, tau_table).is_all_ones():
        return Infinite("level-transitive: parity sequence is all ones")
    if spec.family == "kv":
        if any(exponent_sums(g, len(spec))):
            return Infinite("nonzero image in the free abelianization")
        return Infinite("nontrivial element of a torsion-free group")
    if infinite_order_certificate(g, spec):
        return Infinite("order recursion returns to a conjugate with a factor of 2")
    for m in range(2, small_scan + 1):
        if power_is_trivial(g, m, spec):
            return Finite(m)
    for j in range(1, max_exp + 1):
        m = 1 << j
        if m <= small_scan:
            continue
        if power_is_trivial(g, m, spec):
            return Finite(m)
    return Unknown(1 << max_exp)
