"""The automaton groups attached to periodic and pre-periodic kneading data.

``K_v`` (``v = x_1 ... x_{n-1}``) has generators ``a_1 ... a_n``::

    a_1 = <1, a_n> sigma,   a_{i+1} = <a_i, 1> if x_i = 0 else <1, a_i>

``K_{w,v}`` (``w = y_1 ... y_k``, ``v = x_1 ... x_n``, ``y_k != x_n``) has
involutive generators ``b_1 ... b_k, a_1 ... a_n``::

    b_1 = sigma,            b_{j+1} routed by y_j like a_{i+1} above
    a_1 = <b_k, a_n> if x_n = 1 else <a_n, b_k>

Generators are numbered from 1 as in the literature; in words, ``a_i`` of
``K_v`` is state ``i - 1`` and in ``K_{w,v}`` the ``b_j`` come first.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence, Union

from .core.automaton import AutomatonSpec, join_specs
from .core.nucleus import nucleus_closure
from .core.parity import EventuallyPeriodicBits, state_tau_table
from .core.recursion import (Finite, equal, is_trivial, order_probe, power_is_trivial,
                             wreath_decompose)
from .core.words import (Word, commutator, conjugate, exponent_sums, inverse,
                         multiply, power, substitute)


class KneadingError(ValueError):
    """Invalid kneading data."""


class EndomorphismSearchError(RuntimeError):
    """The finite search for endomorphism parameters found nothing."""


def _check_bits(word: str, what: str) -> str:
    if any(c not in "01" for c in word):
        raise KneadingError(f"{what} must be a word over 0/1, got {word!r}")
    return word


def primitive_root(word: str) -> tuple[str, int]:
    """``(u, d)`` with ``word = u^d`` and ``d`` maximal."""
    n = len(word)
    for p in range(1, n + 1):
        if n % p == 0 and word[:p] * (n // p) == word:
            return word[:p], n // p
    return word, 1


@dataclass(frozen=True)
class Periodic:
    v: str

    def __post_init__(self):
        _check_bits(self.v, "v")


@dataclass(frozen=True)
class Preperiodic:
    w: str
    v: str

    def __post_init__(self):
        _check_bits(self.w, "w")
        _check_bits(self.v, "v")
        if not self.w or not self.v:
            raise KneadingError("w and v must be nonempty")
        if self.w[-1] == self.v[-1]:
            raise KneadingError(f"last letters of w={self.w!r} and v={self.v!r} must differ")

    @property
    def non_primitive(self) -> bool:
        return primitive_root(self.v)[1] > 1


KneadingSpec = Union[Periodic, Preperiodic]


# construction --------------------------------------------------------------

def build_kv(v: str) -> AutomatonSpec:
    _check_bits(v, "v")
    n = len(v) + 1
    rows = [("a1", None, f"a{n}", True)]
    for i, x in enumerate(v, start=1):
        prev = f"a{i}"
        rows.append((f"a{i + 1}", prev, None, False) if x == "0"
                    else (f"a{i + 1}", None, prev, False))
    return AutomatonSpec.from_states(rows, family="kv")


def build_kwv(w: str, v: str) -> AutomatonSpec:
    Preperiodic(w, v)
    k, n = len(w), len(v)
    rows = [("b1", None, None, True)]
    for j, y in enumerate(w[:-1], start=1):
        prev = f"b{j}"
        rows.append((f"b{j + 1}", prev, None, False) if y == "0"
                    else (f"b{j + 1}", None, prev, False))
    if v[-1] == "1":
        rows.append(("a1", f"b{k}", f"a{n}", False))
    else:
        rows.append(("a1", f"a{n}", f"b{k}", False))
    for i, x in enumerate(v[:-1], start=1):
        prev = f"a{i}"
        rows.append((f"a{i + 1}", prev, None, False) if x == "0"
                    else (f"a{i + 1}", None, prev, False))
    return AutomatonSpec.from_states(rows, involutive=True, family="kwv")


@dataclass(frozen=True)
class PeriodParameter:
    d: int
    u: str
    x: Optional[int] = None
    epsilon: Optional[int] = None


def period_parameter(kind: str, word: str) -> PeriodParameter:
    """Largest ``d`` with ``v x = u^d`` (periodic) or ``v = u^d`` (pre-periodic)."""
    _check_bits(word, "v")
    if kind == "preperiodic":
        u, d = primitive_root(word)
        return PeriodParameter(d, u)
    if kind != "periodic":
        raise ValueError(f"unknown kind {kind!r}")
    best = None
    for x in (0, 1):
        u, d = primitive_root(word + str(x))
        if best is None or d > best.d:
            best = PeriodParameter(d, u, x, 1 if x == 0 else -1)
    return best


# abelianization --------------------------------------------------------------

@dataclass(frozen=True)
class FreeAbelian:
    coords: tuple[int, ...]

    def __add__(self, other: "FreeAbelian") -> "FreeAbelian":
        return FreeAbelian(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def is_zero(self) -> bool:
        return not any(self.coords)


@dataclass(frozen=True)
class ElementaryTwo:
    bits: tuple[int, ...]

    def __add__(self, other: "ElementaryTwo") -> "ElementaryTwo":
        return ElementaryTwo(tuple(a ^ b for a, b in zip(self.bits, other.bits)))

    def is_zero(self) -> bool:
        return not any(self.bits)


AbelianImage = Union[FreeAbelian, ElementaryTwo]


@dataclass(frozen=True)
class EndomorphismData:
    substitution: tuple[Word, ...]
    m: int
    s: Word
    t: Word
    u: Optional[Word]
    r: Optional[Word] = None
    case: str = ""


@dataclass(frozen=True)
class Witness:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class WitnessReport:
    group: str
    note: str
    witnesses: list[Witness] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(w.passed for w in self.witnesses)


def _subgroup_words(gens: Sequence[Word], max_len: int, involutive: bool) -> list[Word]:
    """Distinct reduced words that are products of at most ``max_len`` generators,
    shortest product first, then in generator order."""
    seen: dict[Word, None] = {(): None}
    for length in range(1, max_len + 1):
        for combo in itertools.product(range(len(gens)), repeat=length):
            if any(a == b for a, b in zip(combo, combo[1:])):
                continue
            g = multiply(*(gens[c] for c in combo), involutive=involutive)
            seen.setdefault(g, None)
    return list(seen)


class KneadingGroup:
    """``K_v`` or ``K_{w,v}`` with its family-specific structure."""

    def __init__(self, kneading: KneadingSpec):
        self.kneading = kneading
        if isinstance(kneading, Periodic):
            self.kind = "periodic"
            self.w, self.v = "", kneading.v
            self.k, self.n = 0, len(kneading.v) + 1
            self.spec = build_kv(kneading.v)
        else:
            self.kind = "preperiodic"
            self.w, self.v = kneading.w, kneading.v
            self.k, self.n = len(kneading.w), len(kneading.v)
            self.spec = build_kwv(kneading.w, kneading.v)
            if kneading.non_primitive:
                warnings.warn(f"v={self.v!r} is a proper power", stacklevel=2)
        self.param = period_parameter(self.kind, self.v)
        self.inv = self.spec.involutive

    @classmethod
    def kv(cls, v: str) -> "KneadingGroup":
        return cls(Periodic(v))

    @classmethod
    def kwv(cls, w: str, v: str) -> "KneadingGroup":
        return cls(Preperiodic(w, v))

    @property
    def name(self) -> str:
        if self.kind == "periodic":
            return "K_{%s}" % self.v if self.v else "K_{}"
        return "K_{%s,%s}" % (self.w, self.v)

    @property
    def periodic(self) -> bool:
        return self.kind == "periodic"

    def __repr__(self) -> str:
        return f"KneadingGroup({self.name})"

    # generators, 1-based; indices wrap modulo n (resp. k)
    def a(self, i: int, sign: int = 1) -> Word:
        i = (i - 1) % self.n
        return ((self.k + i, sign if not self.inv else 1),)

    def b(self, j: int) -> Word:
        if self.periodic:
            raise KneadingError("K_v has no b generators")
        if j == self.k + 1:
            return self.a(1)
        return ((j - 1, 1),)

    def x(self, i: int) -> int:
        return int(self.v[i - 1])

    def y(self, j: int) -> int:
        return int(self.w[j - 1])

    def generators(self) -> list[Word]:
        return [((i, 1),) for i in range(len(self.spec))]

    def mul(self, *words: Word) -> Word:
        return multiply(*words, involutive=self.inv)

    def inverse(self, g: Word) -> Word:
        return inverse(g, self.inv)

    def conj(self, g: Word, h: Word) -> Word:
        return conjugate(g, h, self.inv)

    def comm(self, g: Word, h: Word) -> Word:
        return commutator(g, h, self.inv)

    def pow(self, g: Word, m: int) -> Word:
        return power(g, m, self.inv)

    def is_trivial(self, g: Word) -> bool:
        return is_trivial(g, self.spec)

    def equal(self, g: Word, h: Word) -> bool:
        return equal(g, h, self.spec)

    def is_pair(self, g: Word, g0: Word, g1: Word) -> bool:
        """Whether ``g = <g0, g1>`` in the group."""
        p = wreath_decompose(g, self.spec)
        return not p.swap and self.equal(p.section0, g0) and self.equal(p.section1, g1)

    def order(self, g: Word, **kw):
        return order_probe(g, self.spec, self.tau_table, **kw)

    def has_order(self, g: Word, m: int) -> bool:
        """Exact check that ``g`` has order ``m``."""
        if not power_is_trivial(g, m, self.spec):
            return False
        primes = {p for p in range(2, m + 1) if m % p == 0 and all(p % q for q in range(2, p))}
        return all(not power_is_trivial(g, m // p, self.spec) for p in primes)

    # nucleus ---------------------------------------------------------------
    def nucleus_closed_form(self) -> list[Word]:
        n, d = self.n, self.param.d
        out: list[Word] = [()]
        if self.periodic:
            eps = self.param.epsilon
            for i in range(1, n + 1):
                out.append(self.a(i, 1))
                out.append(self.a(i, -1))
            for i in range(1, n + 1):
                for j in range(1, d):
                    out.append(self.mul(self.a(i, eps), self.a(i + (n // d) * j, -eps)))
            return out
        out.extend(self.b(j) for j in range(1, self.k + 1))
        step = n // d
        for i in range(1, step + 1):
            members = [self.a(i + step * j) for j in range(d)]
            for mask in range(1, 1 << d):
                out.append(self.mul(*(members[j] for j in range(d) if mask >> j & 1)))
        return out

    def expected_nucleus_size(self) -> int:
        d = self.param.d
        if self.periodic:
            return 1 + self.n * (d + 1)
        return self.k + 1 + (self.n // d) * (2 ** d - 1)

    def nucleus(self) -> list[Word]:
        return nucleus_closure(self.spec)

    # abelianization and parity ---------------------------------------------
    def abelianize(self, g: Word) -> AbelianImage:
        sums = exponent_sums(g, len(self.spec))
        if self.periodic:
            return FreeAbelian(tuple(sums))
        return ElementaryTwo(tuple(s % 2 for s in sums))

    @cached_property
    def tau_table(self) -> dict[int, EventuallyPeriodicBits]:
        return generator_tau(self.spec, self.kind)

    # endomorphism ------------------------------------------------------------
    def phi(self, g: Word) -> Word:
        if self.periodic:
            return phi_kv(g, self.v)
        return phi_kwv(g, self.endomorphism)

    def rho(self, g: Word) -> Word:
        """Second section of ``phi(g)`` as predicted in closed form."""
        if self.periodic:
            e = exponent_sums(g, self.n)[self.n - 1]
            return self.pow(self.a(self.n), e)
        data = self.endomorphism
        images: list[Word] = [()] * len(self.spec)
        images[self.k - 1] = self.conj(self.a(self.n), data.s)
        images[self.k + self.n - 1] = self.b(self.k)
        return substitute(g, images, self.inv)

    @cached_property
    def endomorphism(self) -> EndomorphismData:
        return derive_endomorphism_parameters(self)


# module-level operations -------------------------------------------------------

def generator_tau(spec: AutomatonSpec, kind: str) -> dict[int, EventuallyPeriodicBits]:
    """Parity sequences of the generators; for ``K_v`` also checks that
    ``tau(a_i)`` is the indicator of positions ``= i - 1 (mod n)``."""
    table = state_tau_table(spec)
    if kind == "periodic":
        n = len(spec)
        for i in range(n):
            expected = EventuallyPeriodicBits.make((), [1 if m == i else 0 for m in range(n)])
            if table[i] != expected:
                raise RuntimeError(f"parity sequence of a{i + 1} is {table[i]}, expected {expected}")
    return table


def phi_kv(g: Word, v: str) -> Word:
    """The substitution ``a_n -> a_1^2``, ``a_i -> a_{i+1}`` or ``a_1 a_{i+1} a_1^-1``."""
    n = len(v) + 1
    a1 = ((0, 1),)
    images: list[Word] = []
    for i in range(1, n):
        nxt = ((i, 1),)
        images.append(nxt if v[i - 1] == "0" else multiply(a1, nxt, inverse(a1)))
    images.append(multiply(a1, a1))
    return substitute(g, images)


def phi_kwv(g: Word, data: EndomorphismData) -> Word:
    return substitute(g, data.substitution, involutive=True)


def derive_endomorphism_parameters(group: KneadingGroup, max_len: int = 8) -> EndomorphismData:
    """Find ``s``, ``t``, ``m`` (and ``u``) by exhaustive search in the
    prescribed finite subgroups, shortest word first."""
    G = group
    if G.periodic:
        raise KneadingError("endomorphism parameters are defined for K_{w,v} only")
    k, n = G.k, G.n
    if (k, n) == (1, 1):
        raise KneadingError("(k, n) = (1, 1): the group is infinite dihedral")
    b1 = G.b(1)
    an, bk, a1 = G.a(n), G.b(k), G.a(1)

    def search(pool, pred, what):
        for cand in pool:
            if pred(cand):
                return cand
        raise EndomorphismSearchError(f"{G.name}: no {what} found")

    sub1 = _subgroup_words([b1], 1, True)
    r = None
    if k >= 2 and n >= 2:
        case, m = "k,n>=2", 1
        s = search(sub1, lambda s: G.is_trivial(G.comm(G.conj(an, s), bk)), "s")
        sub12 = _subgroup_words([b1, G.b(2)], max_len, True)
        t = search(sub12, lambda t: G.is_pair(G.conj(a1, t), bk, G.conj(an, s)), "t")
    elif k >= 3 and n == 1:
        case, m = "k>=3,n=1", 1
        r = search(sub1, lambda r: G.is_trivial(G.comm(G.conj(bk, r), G.b(k - 1))), "r")
        sub12 = _subgroup_words([b1, G.b(2)], max_len, True)
        s = search(sub12, lambda s: G.is_trivial(G.comm(G.conj(a1, s), bk)), "s")
        sub123 = _subgroup_words([b1, G.b(2), G.b(3)], max_len, True)
        t = search(sub123, lambda t: G.is_pair(G.conj(a1, t), bk, G.conj(a1, s)), "t")
    elif k == 2 and n == 1:
        case, m = "k=2,n=1", 2
        pairs = [(r_, s_) for r_ in sub1 for s_ in sub1]
        r, s = search(pairs, lambda rs: G.is_pair(G.conj(G.b(2), rs[0]), b1, ())
                      and G.is_pair(G.conj(a1, G.mul(*rs)), G.b(2), a1), "r, s")
        sub12 = _subgroup_words([b1, G.b(2)], max_len, True)
        t = search(sub12, lambda t: G.is_pair(G.conj(a1, t), G.b(2), G.conj(a1, s)), "t")
    else:
        case, m = "k=1,n>=2", 2
        s = ()
        t = search(sub1, lambda t: G.is_pair(G.conj(a1, t), b1, an), "t")

    images: list[Word] = [()] * len(G.spec)
    for j in range(1, k):
        nxt = G.b(j + 1)
        images[j - 1] = nxt if G.y(j) == 0 else G.conj(nxt, b1)
    images[k - 1] = G.conj(a1, t)
    for i in range(1, n):
        nxt = G.a(i + 1)
        images[k + i - 1] = nxt if G.x(i) == 0 else G.conj(nxt, b1)
    images[k + n - 1] = a1 if G.x(n) == 0 else G.conj(a1, b1)

    def phi(g):
        return substitute(g, images, True)

    checks = [(G.b(j), G.b(j), ()) for j in range(1, k)]
    checks.append((bk, bk, G.conj(an, s)))
    checks += [(G.a(i), G.a(i), ()) for i in range(1, n)]
    checks.append((an, an, bk))
    for g, g0, g1 in checks:
        if not G.is_pair(phi(g), g0, g1):
            raise EndomorphismSearchError(f"{G.name}: section table fails at {g}")
    if not G.has_order(G.mul(G.conj(an, s), bk), 2 ** m):
        raise EndomorphismSearchError(f"{G.name}: <a_n^s, b_k> is not dihedral of order {2 ** (m + 1)}")
    if not G.has_order(G.mul(G.conj(a1, t), b1), 2 ** (m + 1)):
        raise EndomorphismSearchError(f"{G.name}: <a_1^t, b_1> is not dihedral of order {2 ** (m + 2)}")

    # u in <b_2, b_2^b_1, b_3, b_3^b_1> with phi(b_k) = a_1^(u b_1^y_k)
    u_gens = []
    for j in (2, 3):
        if j <= k + 1:
            u_gens += [G.b(j), G.conj(G.b(j), b1)]
    target = images[k - 1]
    tail = b1 if G.y(k) else ()
    u = None
    for cand in _subgroup_words(u_gens, 4, True) if u_gens else [()]:
        if G.equal(G.conj(a1, G.mul(cand, tail)), target):
            u = cand
            break
    return EndomorphismData(tuple(images), m, s, t, u, r, case)


def mirror_conjugator_check(v: str, w: Optional[str] = None) -> bool:
    """Check that conjugation by ``alpha = <alpha, alpha> sigma`` carries the
    generators of ``K_v`` (resp. ``K_{w,v}``) to those of the mirrored group.

    For ``K_v`` the image of ``a_i`` is the inverse of the mirrored ``a_i``
    (the mirrored group written with ``a_1 = <a_n, 1> sigma``); the
    involutive generators of ``K_{w,v}`` map to the mirrored generators.
    """
    flip = str.maketrans("01", "10")
    if w is None:
        left, right = build_kv(v), build_kv(v.translate(flip))
    else:
        left, right = build_kwv(w, v), build_kwv(w.translate(flip), v.translate(flip))
    mirrored = AutomatonSpec.from_states(
        [("m" + name, *(None if s is None else "m" + right.names[s] for s in secs), act)
         for name, secs, act in zip(right.names, right.sections, right.active)])
    joint = join_specs(left, mirrored, extra=[("alpha", "alpha", "alpha", True)])
    alpha = ((joint.index("alpha"), 1),)
    for name in left.names:
        g = ((joint.index(name), 1),)
        image = multiply(inverse(alpha), g, alpha)
        target = ((joint.index("m" + name), 1 if w is not None else -1),)
        if not equal(image, target, joint):
            return False
    return True


def recurrence_check(spec: AutomatonSpec) -> bool:
    """Sufficient test for recurrence: some active state ``c`` exists and the
    first-level sections of ``s``, ``s^c`` (``s`` inactive) and ``c^2``
    contain every generator up to inversion."""
    actives = [i for i, act in enumerate(spec.active) if act]
    if not actives:
        return False
    inv = spec.involutive
    c = ((actives[0], 1),)
    words = [multiply(c, c, involutive=inv)]
    for i, act in enumerate(spec.active):
        if not act:
            s = ((i, 1),)
            words += [s, conjugate(s, c, inv)]
    sections = []
    for g in words:
        p = wreath_decompose(g, spec)
        if p.swap:
            return False
        sections += [p.section0, p.section1]
    for i in range(len(spec)):
        g = ((i, 1),)
        if not any(equal(h, g, spec) or equal(h, inverse(g, inv), spec) for h in sections):
            return False
    return True


def branch_witnesses(group: KneadingGroup) -> WitnessReport:
    """Run the checkable ingredients of the (weak) branchness arguments.

    This reports evidence per witness; it does not decide branchness.
    """
    G = group
    out = WitnessReport(G.name, "")
    if G.periodic:
        if G.n == 1:
            out.note = "infinite cyclic; not weakly branch; no witnesses"
            return out
        out.note = "weakly branch on the commutator subgroup (witnesses below)"
        for i in range(1, G.n + 1):
            for j in range(i + 1, G.n + 1):
                g = G.comm(G.a(i), G.a(j))
                out.witnesses.append(Witness(
                    f"phi([a{i},a{j}]) = <[a{i},a{j}], 1>", G.is_pair(G.phi(g), g, ())))
        g = G.comm(G.a(1), G.a(2))
        out.witnesses.append(Witness("[a1,a2] is nontrivial", not G.is_trivial(g)))
        return out

    k, n = G.k, G.n
    if (k, n) == (1, 1):
        out.note = "dihedral; not weakly branch; no witnesses"
        return out
    b1 = G.b(1)
    if (k >= 2 and n >= 2) or (k >= 3 and n == 1):
        out.note = "branch on the commutator subgroup"
        gens = {f"[b1,b{j}]": G.comm(b1, G.b(j)) for j in range(2, k + 1)}
        gens.update({f"[b1,a{i}]": G.comm(b1, G.a(i)) for i in range(1, n + 1)})
    elif k == 2:
        out.note = "branch on L = <[b1,b2 a1]>^G"
        gens = {"[b1,b2 a1]": G.comm(b1, G.mul(G.b(2), G.a(1)))}
    else:
        out.note = "branch on L = <[a_i,a_j], [a_i,b1] (i<n)>^G"
        gens = {f"[a{i},a{j}]": G.comm(G.a(i), G.a(j))
                for i in range(1, n + 1) for j in range(i + 1, n + 1)}
        gens.update({f"[a{i},b1]": G.comm(G.a(i), b1) for i in range(1, n)})
    for label, g in gens.items():
        out.witnesses.append(Witness(f"phi({label}) = <{label}, 1>", G.is_pair(G.phi(g), g, ())))
    if k >= 2 and n >= 2:
        g = G.comm(b1, G.b(2))
        out.witnesses.append(Witness("[b1,b2] has order 2", G.order(g) == Finite(2),
                                     str(G.order(g))))
    elif k == 2 and n == 1:
        g = G.pow(G.mul(b1, G.a(1)), 4)
        out.witnesses.append(Witness("(b1 a1)^4 has order 2", G.order(g) == Finite(2),
                                     str(G.order(g))))
    elif k == 1:
        g = G.comm(b1, G.a(1))
        out.witnesses.append(Witness("[b1,a1] has order 4", G.order(g) == Finite(4),
                                     str(G.order(g))))
    return out


def nucleus_closed_form(kneading: KneadingSpec) -> list[Word]:
    return KneadingGroup(kneading).nucleus_closed_form()


def abelianize(g: Word, group: KneadingGroup) -> AbelianImage:
    return group.abelianize(g)


def group_of(kneading: KneadingSpec) -> KneadingGroup:
    return KneadingGroup(kneading)
