"""Acceptance criteria 1-10.

Each test records a PASS/FAIL line (printed in the terminal summary and on
stdout) and then asserts, so a failing criterion also fails the run.
"""

import functools
import itertools
import random
from fractions import Fraction as F
from math import gcd, lcm

from conftest import ACCEPTANCE, group, random_word
from imgroups.angles import doubling_orbit, kneading_sequence
from imgroups.core import (Infinite, is_level_transitive_element, fixes_level, orbit_on_level,
                           same_elements)
from imgroups.kneading import Periodic, Preperiodic, mirror_conjugator_check, \
    primitive_root
from imgroups.presentations import presentation_relators, verify_relators

SEED = 20240611


def criterion(number, title):
    def wrap(test):
        @functools.wraps(test)
        def run():
            try:
                detail = test()
            except Exception as exc:
                ACCEPTANCE[number] = (title, False, str(exc).splitlines()[0] if str(exc) else
                                      type(exc).__name__)
                print(f"criterion {number} FAIL: {ACCEPTANCE[number][2]}")
                raise
            ACCEPTANCE[number] = (title, True, detail)
            print(f"criterion {number} PASS: {detail}")
        return run
    return wrap


def bits(n):
    return ["".join(p) for p in itertools.product("01", repeat=n)]


def kv_words(max_len):
    return [v for n in range(max_len + 1) for v in bits(n)]


def kwv_pairs(max_len, skip_11=False):
    out = []
    for k, n in itertools.product(range(1, max_len + 1), repeat=2):
        if skip_11 and (k, n) == (1, 1):
            continue
        out += [(w, v) for w in bits(k) for v in bits(n) if w[-1] != v[-1]]
    return out


def kwv(w, v):
    return group(f"{w},{v}")


def action_order(x, depth, g):
    return lcm(*(len(c) for c in orbit_on_level(x, depth, g.spec)))


def expect_none(failures, what):
    assert not failures, f"{len(failures)} {what}, first: {failures[:3]}"


@criterion(1, "nucleus sizes")
def test_criterion_1_nucleus_sizes():
    failures = []
    groups = [group(v) for v in kv_words(6)] + [kwv(w, v) for w, v in kwv_pairs(3)]
    for g in groups:
        nucleus = g.nucleus()
        if len(nucleus) != g.expected_nucleus_size() or \
                not same_elements(nucleus, g.nucleus_closed_form(), g.spec):
            failures.append((g.name, len(nucleus), g.expected_nucleus_size()))
    expect_none(failures, "size mismatches")
    return f"{len(groups)} groups, closure equals closed form"


@criterion(2, "known-group oracles")
def test_criterion_2_known_groups():
    z = group("")
    a1 = z.a(1)
    for depth in range(13):
        assert len(orbit_on_level(a1, depth, z.spec)) == 1, f"a1 not transitive on level {depth}"
    assert isinstance(z.order(a1), Infinite)
    for w, v in (("0", "1"), ("1", "0")):
        g = kwv(w, v)
        assert g.has_order(g.b(1), 2) and g.has_order(g.a(1), 2)
        prod = g.mul(g.b(1), g.a(1))
        assert is_level_transitive_element(prod, g.tau_table), f"{g.name}: tau not all ones"
        assert isinstance(g.order(prod), Infinite)
    assert mirror_conjugator_check("1", "0") and mirror_conjugator_check("0", "1")
    assert len(group("0").nucleus()) == 7
    return "K_{} ~ Z, K_{0,1} ~ K_{1,0} infinite dihedral, |N(K_0)| = 7"


@criterion(3, "word problem vs level action")
def test_criterion_3_word_problem():
    rng = random.Random(SEED)
    failures, trivial = [], 0
    for name in ("0", "11", "1,10", "110,1"):
        g = group(name)
        for _ in range(200):
            x = random_word(rng, g.spec, 8)
            t = g.is_trivial(x)
            trivial += t
            if t != fixes_level(x, 8, g.spec):
                failures.append((name, x))
    expect_none(failures, "disagreements")
    return f"800 words ({trivial} trivial), all agree on levels <= 8"


@criterion(4, "endomorphism identity")
def test_criterion_4_endomorphism():
    rng = random.Random(SEED)
    groups = [group(v) for v in kv_words(3)] + \
        [kwv(w, v) for w, v in kwv_pairs(3, skip_11=True)]
    failures = []
    for g in groups:
        for _ in range(100):
            x = random_word(rng, g.spec, 8)
            if not g.is_pair(g.phi(x), x, g.rho(x)):
                failures.append((g.name, x))
    expect_none(failures, "identity failures")
    return f"{len(groups)} groups x 100 words"


@criterion(5, "presentation soundness")
def test_criterion_5_presentations():
    total, failures = 0, []
    cases = [(group(v), 3) for v in kv_words(4)] + \
        [(kwv(w, v), 2) for w, v in kwv_pairs(3, skip_11=True)]
    for g, levels in cases:
        report = verify_relators(presentation_relators(g, levels), g.spec)
        total += report.total
        if not report.ok:
            failures.append((g.name, report.failures[:3]))
    expect_none(failures, "groups with nontrivial relators")
    return f"{total} relators over {len(cases)} groups, zero failures"


@criterion(6, "torsion table")
def test_criterion_6_torsion():
    failures, checked = [], 0
    for w, v in kwv_pairs(3):
        g = kwv(w, v)
        k, n = g.k, g.n
        if k >= 2 and n >= 2:
            element, order, label = g.comm(g.b(1), g.b(2)), 2, "[b1,b2]"
        elif k == 1 and n >= 2:
            element, order, label = g.comm(g.b(1), g.a(1)), 4, "[b1,a1]"
        elif k == 2 and n == 1:
            element, order, label = g.pow(g.mul(g.b(1), g.a(1)), 4), 2, "(b1a1)^4"
        else:
            continue
        checked += 1
        if not g.has_order(element, order):
            failures.append(f"{g.name}: {label} is {g.order(element)} and acts with order "
                            f"{action_order(element, 12, g)} on level 12, expected order {order}")
    rng = random.Random(SEED)
    sampled = 0
    for v in kv_words(3):
        g = group(v)
        for _ in range(20):
            x = random_word(rng, g.spec, 8, min_len=1)
            if g.is_trivial(x):
                continue
            sampled += 1
            if not isinstance(g.order(x), Infinite):
                failures.append(f"{g.name}: {x} reported {g.order(x)}")
    expect_none(failures, "torsion mismatches")
    return f"{checked} K_(w,v) torsion elements, {sampled} K_v elements infinite"


@criterion(7, "level-transitivity criterion")
def test_criterion_7_transitivity():
    rng = random.Random(SEED)
    failures, transitive = [], 0
    for name in ("", "0", "11", "1,10", "110,1", "0,1", "01,10"):
        g = group(name)
        for _ in range(50):
            x = random_word(rng, g.spec, 8)
            by_tau = is_level_transitive_element(x, g.tau_table)
            by_orbit = len(orbit_on_level(x, 10, g.spec)) == 1
            transitive += by_orbit
            if by_tau != by_orbit:
                failures.append((name, x))
    for w, v in kwv_pairs(3):
        g = kwv(w, v)
        prod = g.mul(*g.generators())
        if not is_level_transitive_element(prod, g.tau_table) or \
                len(orbit_on_level(prod, 10, g.spec)) != 1:
            failures.append((g.name, "product of generators"))
    expect_none(failures, "disagreements")
    return f"350 elements ({transitive} transitive) agree; generator products transitive"


@criterion(8, "angle pipeline")
def test_criterion_8_angles():
    orb = doubling_orbit(F(9, 56))
    assert orb.orbit == (F(9, 56), F(9, 28), F(9, 14), F(2, 7), F(4, 7), F(1, 7))
    r = kneading_sequence(F(9, 56))
    assert (r.preperiod, r.period, r.kneading_period) == (3, 3, 1)
    assert kneading_sequence(F(1, 2)).canonical == Preperiodic("1", "0")
    assert kneading_sequence(F(1, 7)).canonical == kneading_sequence(F(2, 7)).canonical \
        == Periodic("11")
    count = 0
    for q in range(2, 64):
        for p in range(1, q):
            if gcd(p, q) != 1:
                continue
            count += 1
            r = kneading_sequence(F(p, q))
            c = r.canonical
            assert (2 * r.orbit[-1]) % 1 == r.orbit[r.preperiod]
            assert r.period % r.kneading_period == 0
            if isinstance(c, Periodic):
                assert r.preperiod == 0 and len(c.v) == r.kneading_period - 1
                for m in range(2 * r.period):
                    assert (r.symbol(m) == "*") == (m % r.period == r.period - 1)
            else:
                assert c.w[-1] != c.v[-1] and primitive_root(c.v)[1] == 1
                for m in range(r.preperiod + 2 * r.period):
                    expect = c.w[m] if m < len(c.w) else c.v[(m - len(c.w)) % len(c.v)]
                    assert r.symbol(m) == expect, (p, q, m)
    return f"9/56 orbit reproduced; {count} angles with denominator <= 63 satisfy invariants"


@criterion(9, "commutation relations")
def test_criterion_9_commutation():
    failures, checked = [], 0
    for w, v in kwv_pairs(3) + kwv_pairs(4):
        g = kwv(w, v)
        step = g.n // g.param.d
        for i in range(1, g.n + 1):
            for ell in range(1, g.param.d):
                checked += 1
                if not g.is_trivial(g.comm(g.a(i), g.a(i + ell * step))):
                    failures.append((g.name, i, ell))
    expect_none(failures, "noncommuting pairs")
    return f"{checked} commutators trivial"


@criterion(10, "mirror conjugation")
def test_criterion_10_mirror():
    failures = [v for v in kv_words(5) if not mirror_conjugator_check(v)]
    failures += [(w, v) for w, v in kwv_pairs(3) if not mirror_conjugator_check(v, w)]
    expect_none(failures, "mirror failures")
    return f"{len(kv_words(5))} K_v and {len(kwv_pairs(3))} K_(w,v) conjugate to their mirrors"
