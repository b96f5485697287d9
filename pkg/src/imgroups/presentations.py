"""Relators of the recursive presentations of ``K_v`` and ``K_{w,v}``, their
iterates under the endomorphism, soundness checks, and text emission of the
finitely presented ascending HNN overgroups.

Relators are words in the *free* group on the generators (signed, even for
``K_{w,v}`` where the squares ``b_j^2``, ``a_i^2`` are listed as relators in
their own right).  Every relator comes with a label written in the word
syntax of :mod:`imgroups.syntax`, which parses back to the same word.

Only soundness (every relator is trivial in the group) is checked here;
completeness of the presentations is not machine-verified.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .core.recursion import is_trivial
from .core.automaton import AutomatonSpec
from .core.words import (Word, commutator, conjugate, free_reduce, inverse, multiply, power,
                         substitute)
from .kneading import EndomorphismData, KneadingError, KneadingGroup
from .syntax import FreeAlphabet, format_word, parse_word


@dataclass(frozen=True)
class RelatorFamily:
    base: tuple[Word, ...]
    labels: tuple[str, ...]
    levels: int = 0

    def __post_init__(self):
        if len(self.base) != len(self.labels):
            raise ValueError("one label per relator")
        for g in self.base:
            if not g or free_reduce(g) != g:
                raise ValueError(f"relator {g} is empty or not reduced")

    def __len__(self) -> int:
        return len(self.base)

    def __iter__(self):
        return iter(self.base)


def _family(pairs: Sequence[tuple[Word, str]], levels: int = 0) -> RelatorFamily:
    pairs = [(g, label) for g, label in pairs if g]
    return RelatorFamily(tuple(g for g, _ in pairs), tuple(label for _, label in pairs), levels)


def _sym(index: int, sign: int = 1) -> Word:
    return ((index, sign),)


def free_alphabet(group: KneadingGroup) -> FreeAlphabet:
    """Signed alphabet with the group's generator names."""
    return FreeAlphabet(group.spec.names)


# K_v -------------------------------------------------------------------------

def relators_kv(v: str, r: int) -> RelatorFamily:
    """Commutators ``[a_i, a_j^(a_1^e)]`` for ``2 <= i, j <= n``: even ``e <= r``
    when ``x_{i-1} != x_{j-1}``, odd ``e <= r`` when they agree."""
    n = len(v) + 1
    pairs = []
    for i in range(2, n + 1):
        for j in range(2, n + 1):
            start = 1 if v[i - 2] == v[j - 2] else 0
            for e in range(start, r + 1, 2):
                a1e = power(_sym(0), e)
                g = commutator(_sym(i - 1), conjugate(_sym(j - 1), a1e))
                conj = f"^(a1^{e})" if e else ""
                pairs.append((g, f"[a{i}, a{j}{conj}]"))
    return _family(pairs)


def phi_free(group: KneadingGroup) -> Callable[[Word], Word]:
    """The endomorphism as a map on signed free words."""
    if group.periodic:
        from .kneading import phi_kv
        return lambda g: phi_kv(g, group.v)
    images = signed_substitution(group, group.endomorphism)
    return lambda g: substitute(g, images)


def signed_substitution(group: KneadingGroup, data: EndomorphismData) -> tuple[Word, ...]:
    """The images of the generators written with honest inverses."""
    k, n = group.k, group.n
    b1, a1 = _sym(0), _sym(k)
    images: list[Word] = [()] * (k + n)
    for j in range(1, k):
        nxt = _sym(j)
        images[j - 1] = nxt if group.y(j) == 0 else conjugate(nxt, b1)
    images[k - 1] = conjugate(a1, data.t)
    for i in range(1, n):
        nxt = _sym(k + i)
        images[k + i - 1] = nxt if group.x(i) == 0 else conjugate(nxt, b1)
    images[k + n - 1] = a1 if group.x(n) == 0 else conjugate(a1, b1)
    return tuple(images)


# K_{w,v} -------------------------------------------------------------------------

@dataclass(frozen=True)
class DihedralSplit:
    """Normal forms of ``<a_1^t, b_1>`` split by the parity of ``b_1`` letters."""
    odd: tuple[tuple[Word, str], ...]
    even: tuple[tuple[Word, str], ...]


def dihedral_split(group: KneadingGroup, data: EndomorphismData) -> DihedralSplit:
    """Alternating words in ``c = a_1^t`` and ``b_1`` of length ``0 .. N``,
    ``N = 2^(m+1)``, ordered by length and then starting letter ``c``
    before ``b_1``; one of the two words of length ``N`` is dropped, since
    they coincide.  Gives ``2N`` group elements."""
    k = group.k
    c, b1 = conjugate(_sym(k), data.t), _sym(0)
    t_text = format_word(data.t, free_alphabet(group))
    c_label = "a1" if not data.t else f"a1^({t_text})"
    N = 2 ** (data.m + 1)
    odd, even = [], []
    for length in range(N + 1):
        starts = (0,) if length in (0, N) else (0, 1)
        for start in starts:
            letters = [(start + p) % 2 for p in range(length)]
            word = multiply(*(c if x == 0 else b1 for x in letters))
            label = " ".join(f"({c_label})" if x == 0 else "b1" for x in letters) or "1"
            (odd if letters.count(1) % 2 else even).append((word, label))
    return DihedralSplit(tuple(odd), tuple(even))


def relators_kwv(group: KneadingGroup, data: Optional[EndomorphismData] = None) -> RelatorFamily:
    """``[b_i, b_j^w]``, ``[a_i, b_j^w]`` and ``[a_i, a_j^w]`` (indices from 2),
    with ``w`` odd in ``b_1`` when the routing letters agree and even otherwise."""
    data = data or group.endomorphism
    split = dihedral_split(group, data)
    k, n = group.k, group.n
    letters = {f"b{j}": (j - 1, group.y(j - 1)) for j in range(2, k + 1)}
    letters.update({f"a{i}": (k + i - 1, group.x(i - 1)) for i in range(2, n + 1)})
    bs = [f"b{j}" for j in range(2, k + 1)]
    as_ = [f"a{i}" for i in range(2, n + 1)]
    combos = [(p, q) for p in bs for q in bs] + [(p, q) for p in as_ for q in bs] \
        + [(p, q) for p in as_ for q in as_]
    pairs = []
    for p, q in combos:
        (ip, xp), (iq, xq) = letters[p], letters[q]
        pool = split.odd if xp == xq else split.even
        for w, w_label in pool:
            g = commutator(_sym(ip), conjugate(_sym(iq), w))
            pairs.append((g, f"[{p}, {q}^({w_label})]"))
    return _family(pairs)


def fbar_relators(group: KneadingGroup, data: Optional[EndomorphismData] = None,
                  levels: int = 0) -> RelatorFamily:
    """Squares of the generators, ``[a_i, a_{i + l n/d}]``, and
    ``phi^l((a_n^s b_k)^(2^m))`` for ``l <= levels``."""
    data = data or group.endomorphism
    k, n, d = group.k, group.n, group.param.d
    names = group.spec.names
    pairs = [(power(_sym(i), 2), f"{names[i]}^2") for i in range(k + n)]
    step = n // d
    for i in range(1, n + 1):
        for ell in range(1, d):
            j = (i - 1 + ell * step) % n + 1
            if i < j:
                pairs.append((commutator(_sym(k + i - 1), _sym(k + j - 1)), f"[a{i}, a{j}]"))
    alphabet = free_alphabet(group)
    s_text = format_word(data.s, alphabet)
    an = f"a{n}" if not data.s else f"a{n}^({s_text})"
    base = power(multiply(conjugate(_sym(k + n - 1), data.s), _sym(k - 1)), 2 ** data.m)
    label = f"({an} b{k})^{2 ** data.m}"
    phi = phi_free(group)
    g = base
    for ell in range(levels + 1):
        pairs.append((g, label if ell == 0 else format_word(g, alphabet)))
        g = phi(g)
    return _family(pairs, levels)


# expansion and verification ---------------------------------------------------------

def phi_expand(family: RelatorFamily, phi: Callable[[Word], Word], levels: int) -> list[Word]:
    """``phi^l(r)`` for every base relator ``r`` and ``0 <= l <= levels``, grouped by level."""
    out = []
    current = list(family.base)
    for ell in range(levels + 1):
        if ell:
            current = [free_reduce(phi(g)) for g in current]
        out.extend(current)
    return out


@dataclass
class VerificationReport:
    total: int
    distinct: int
    failures: list[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_relators(words: Sequence[Word], spec: AutomatonSpec) -> VerificationReport:
    """Check every relator with the word problem; failures are input positions.
    ``distinct`` counts different reduced words."""
    reduced = [free_reduce(g, spec.involutive) for g in words]
    failures = [pos for pos, g in enumerate(words) if not is_trivial(g, spec)]
    return VerificationReport(len(words), len(set(reduced)), failures)


def presentation_relators(group: KneadingGroup, levels: int) -> list[Word]:
    """Everything the presentation asserts up to ``levels`` iterations."""
    if group.periodic:
        if group.n == 1:
            return []
        return phi_expand(relators_kv(group.v, 2), phi_free(group), levels)
    fbar = fbar_relators(group, levels=levels)
    return list(fbar.base) + phi_expand(relators_kwv(group), phi_free(group), levels)


def check_presentation(group: KneadingGroup, levels: int) -> VerificationReport:
    return verify_relators(presentation_relators(group, levels), group.spec)


# HNN overgroups ---------------------------------------------------------------

HNN_ALPHABET = FreeAlphabet(("a", "b", "t"))
_A, _B, _T = _sym(0), _sym(1), _sym(2)


def _t_conj(g: Word, e: int = 1) -> Word:
    """``g^(t^e)``."""
    return conjugate(g, power(_T, e))


def _poly(coeffs: Sequence[int]) -> str:
    """Render ``sum coeffs[e] t^e``."""
    terms = []
    for e, c in enumerate(coeffs):
        if c:
            terms.append("1" if e == 0 else "t" if e == 1 else f"t^{e}")
    return " + ".join(terms) or "0"


@dataclass(frozen=True)
class PresentationDoc:
    group: str
    generators: tuple[str, ...]
    auxiliary: tuple[tuple[str, str], ...]     # (name, definition) pairs
    relators: tuple[str, ...]
    polynomials: tuple[tuple[str, str], ...]  # (name, polynomial)
    subgroup: tuple[str, ...]                  # words generating the group inside the overgroup

    def words(self) -> list[Word]:
        return [parse_word(r, HNN_ALPHABET) for r in self.relators]

    def to_text(self) -> str:
        lines = [f"# ascending HNN extension containing {self.group}",
                 "generators: " + ", ".join(self.generators)]
        lines += [f"# {name} = {poly}" for name, poly in self.polynomials]
        lines += [f"# {name} = {text}" for name, text in self.auxiliary]
        lines.append("# subgroup: " + ", ".join(self.subgroup))
        lines.append("relators:")
        lines.extend(self.relators)
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {"group": self.group, "generators": list(self.generators),
                "auxiliary": [{"name": n, "word": w} for n, w in self.auxiliary],
                "polynomials": {n: p for n, p in self.polynomials},
                "subgroup": list(self.subgroup), "relators": list(self.relators)}


def _fmt(g: Word) -> str:
    return format_word(g, HNN_ALPHABET)


def _kv_generators(group: KneadingGroup) -> list[Word]:
    """``a_i`` in terms of ``a = a_1^-1`` and ``t``: ``a_{i+1} = a^x_i a_i^t a^-x_i``."""
    gens = [inverse(_A)]
    for i in range(1, group.n):
        g = _t_conj(gens[-1])
        if group.x(i):
            g = multiply(_A, g, inverse(_A))
        gens.append(g)
    return gens


def _kwv_generators(group: KneadingGroup, data: EndomorphismData) -> tuple[list[Word], list[Word], Word]:
    """``b_j`` and ``a_i`` in terms of ``a = a_1^u``, ``b = b_1`` and ``t``."""
    bs = [_B]
    for j in range(1, group.k):
        g = _t_conj(bs[-1])
        bs.append(conjugate(g, _B) if group.y(j) else g)
    images = [bs[idx] if idx < group.k else None for idx, _ in enumerate(group.spec.names)]
    if any(idx >= group.k for idx, _ in data.u or ()):
        raise KneadingError("u must be a word in the b generators")
    u = substitute(data.u or (), [img or () for img in images])
    as_ = [multiply(u, _A, inverse(u))]
    for i in range(1, group.n):
        g = _t_conj(as_[-1])
        as_.append(conjugate(g, _B) if group.x(i) else g)
    return bs, as_, u


def emit_hnn(group: KneadingGroup) -> PresentationDoc:
    """Finite presentation of the ascending HNN extension by the endomorphism,
    relators written out in the ``a, b, t`` alphabet."""
    if group.periodic:
        return _emit_hnn_kv(group)
    return _emit_hnn_kwv(group, group.endomorphism)


def _emit_hnn_kv(group: KneadingGroup) -> PresentationDoc:
    n, v = group.n, group.v
    gens = _kv_generators(group)
    # p(t) = x_{n-1} t + ... + x_1 t^(n-1)
    p = [0] + [int(v[n - 1 - e]) for e in range(1, n)]
    rels = [multiply(_t_conj(gens[-1]), power(_A, 2))]       # a_n^t = a_1^2 = a^-2
    for i in range(1, n):
        for j in range(1, n):
            for e in (1, 3):
                rels.append(commutator(_t_conj(_A, i), conjugate(_A, multiply(power(_T, j), power(_A, e)))))
    rels = _dedup(rels)
    aux = tuple((f"a{i + 1}", _fmt(g)) for i, g in enumerate(gens))
    sub = tuple(_fmt(_t_conj(_A, i)) for i in range(n))
    return PresentationDoc(group.name, ("a", "t"), (("a", "a1^-1"),) + aux,
                           tuple(_fmt(r) for r in rels), (("p(t)", _poly(p)),), sub)


def _emit_hnn_kwv(group: KneadingGroup, data: EndomorphismData) -> PresentationDoc:
    k, n, d, m = group.k, group.n, group.param.d, data.m
    bs, as_, u = _kwv_generators(group, data)
    p = [int(group.v[n - 1 - e]) for e in range(n)]
    q = [int(group.w[k - 1 - e]) for e in range(k)]
    yk, xn = group.y(k), group.x(n)
    rels = [power(_A, 2), power(_B, 2), power(multiply(_A, _B), 2 ** (m + 1))]
    rels.append(multiply(_t_conj(bs[-1]), inverse(conjugate(_A, power(_B, yk)))))
    rels.append(multiply(_t_conj(as_[-1]), inverse(conjugate(as_[0], power(_B, xn)))))
    # [a_1, a_{1 + j n/d}] through the identification; the bare
    # [a, a^(t^(j n/d))] picks up b-conjugations and is not a relation
    for j in range(1, d):
        rels.append(commutator(as_[0], as_[j * n // d]))
    ab2 = power(multiply(_A, _B), 2)
    for x, xr, y, yr in ((_B, k, _B, k), (_A, n, _B, k), (_A, n, _A, n)):
        for i in range(1, xr):
            for j in range(1, yr):
                for ell in range(2 ** m + 1):
                    c = multiply(power(_T, j), _B, power(ab2, ell))
                    rels.append(commutator(_t_conj(x, i), conjugate(y, c)))
    rels = _dedup(rels)
    aux = [("u", _fmt(u))]
    aux += [(f"b{j + 1}", _fmt(g)) for j, g in enumerate(bs)]
    aux += [(f"a{i + 1}", _fmt(g)) for i, g in enumerate(as_)]
    sub = tuple(_fmt(_t_conj(_B, j)) for j in range(k)) + tuple(_fmt(_t_conj(_A, i)) for i in range(n))
    return PresentationDoc(group.name, ("a", "b", "t"), tuple(aux),
                           tuple(_fmt(r) for r in rels),
                           (("p(t)", _poly(p)), ("q(t)", _poly(q))), sub)


def _dedup(words: list[Word]) -> list[Word]:
    seen: dict[Word, None] = {}
    for g in words:
        g = free_reduce(g)
        if g:
            seen.setdefault(g, None)
    return list(seen)


def hnn_relator_in_group(relator: Word, group: KneadingGroup) -> Word:
    """Rewrite a relator with zero ``t``-exponent sum as a word in the group.

    ``t`` acts by conjugation as the endomorphism, so ``g^(t^e) = phi^e(g)``;
    the relator is first conjugated by a power of ``t`` so that every
    letter sits at a nonnegative depth (harmless, the endomorphism is
    injective). When no letter needs the shift the result is the exact
    element.
    """
    depth, letters = 0, []
    for index, sign in relator:
        if index == 2:
            depth += sign
        else:
            letters.append((index, sign, depth))
    if depth != 0:
        raise ValueError("relator has nonzero t-exponent sum")
    top = max([0] + [dep for _, _, dep in letters])
    if group.periodic:
        base = {0: inverse(_sym(0))}
        phi = phi_free(group)
    else:
        data = group.endomorphism
        a = conjugate(_sym(group.k), data.u or ())
        base = {0: a, 1: _sym(0)}
        phi = phi_free(group)
    out: list[Word] = []
    cache: dict[tuple[int, int], Word] = {}
    for index, sign, dep in letters:
        key = (index, top - dep)
        if key not in cache:
            g = base[index]
            for _ in range(top - dep):
                g = phi(g)
            cache[key] = g
        g = cache[key]
        out.append(g if sign > 0 else inverse(g))
    return free_reduce([s for g in out for s in g])
