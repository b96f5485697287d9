import itertools

import pytest

from conftest import K0, random_word
from imgroups.core import (AutomatonSpec, Finite, Infinite, SpecError, act, equal, fixes_level,
                           is_trivial, orbit_on_level, order_probe, power_is_trivial,
                           restrict, state_tau_table, vertex, wreath_decompose)
from imgroups.kneading import build_kv, build_kwv
from imgroups.syntax import parse_word

ADDING = build_kv("")
D_INF = build_kwv("0", "1")
SPECS = [K0, ADDING, D_INF, build_kv("11"), build_kv("0101"), build_kwv("1", "10"),
         build_kwv("110", "1"), build_kwv("0", "111")]


def w(text, spec=K0):
    return parse_word(text, spec)


def test_automaton_validation_and_json():
    with pytest.raises(SpecError):
        AutomatonSpec.from_states([("a", "zz", None, True)])
    with pytest.raises(SpecError):
        AutomatonSpec.from_states([("a", None, None, True), ("a", None, None, False)])
    assert AutomatonSpec.from_json(K0.to_json()) == K0
    assert K0.to_dict()["states"][1] == {"name": "a2", "sec0": "a1", "sec1": "1", "active": False}


def test_wreath_examples():
    assert tuple(wreath_decompose(w("a1"), K0)) == ((), w("a2"), True)
    assert tuple(wreath_decompose((), K0)) == ((), (), False)
    assert tuple(wreath_decompose(w("a1 a1"), K0)) == (w("a2"), w("a2"), False)
    assert equal(wreath_decompose(w("a1^2"), K0).section0, w("a2"), K0)


def test_restrict_and_act_examples():
    assert restrict(w("a1"), vertex("1"), K0) == w("a2")
    assert restrict(w("a1 a2"), (), K0) == w("a1 a2")
    assert restrict(w("a1"), vertex("10"), K0) == w("a1")
    assert act(w("a1"), vertex("00"), K0) == vertex("10")
    assert act((), vertex("0110"), K0) == vertex("0110")
    assert act(parse_word("b1", D_INF), vertex("01"), D_INF) == vertex("11")


def test_is_trivial_examples():
    assert is_trivial(w("[a2, a2^a1]"), K0)
    assert w("[a2, a2^a1]") == w("a2^-1 a1^-1 a2^-1 a1 a2 a1^-1 a2 a1")
    assert is_trivial((), K0)
    assert not is_trivial(w("[a1,a2]"), K0)
    assert equal(parse_word("b1 b1", D_INF), (), D_INF)


def test_order_examples():
    assert order_probe(parse_word("b1", D_INF), D_INF) == Finite(2)
    spec = build_kwv("1", "10")
    assert order_probe(parse_word("[b1,a1]", spec), spec) == Finite(4)
    assert isinstance(order_probe(w("a1"), K0), Infinite)
    assert isinstance(order_probe(parse_word("a1 b1", D_INF), D_INF), Infinite)


def test_orbit_examples():
    assert orbit_on_level(w("a1", ADDING), 3, ADDING) == [
        ("000", "100", "010", "110", "001", "101", "011", "111")]
    assert all(len(c) == 1 for c in orbit_on_level((), 4, K0))
    assert orbit_on_level(parse_word("b1", D_INF), 2, D_INF) == [("00", "10"), ("01", "11")]
    with pytest.raises(ValueError):
        orbit_on_level(w("a1"), 13, K0)


@pytest.mark.parametrize("spec", SPECS, ids=lambda s: "-".join(s.names))
def test_action_invariants(spec, rng):
    for _ in range(40):
        g, h = random_word(rng, spec, 8), random_word(rng, spec, 8)
        v = tuple(rng.randrange(2) for _ in range(rng.randint(0, 8)))
        u = tuple(rng.randrange(2) for _ in range(rng.randint(0, 8 - len(v))))
        # sections cohere with the action
        assert act(g, v + u, spec) == act(g, v, spec) + act(restrict(g, v, spec), u, spec)
        # right action: g first, then h
        gh = tuple(g) + tuple(h)
        assert act(gh, v, spec) == act(h, act(g, v, spec), spec)


@pytest.mark.parametrize("spec", SPECS, ids=lambda s: "-".join(s.names))
def test_section_lengths(spec, rng):
    # every state has at most one nontrivial section in K_v; in K_{w,v} the
    # state a_1 has two, so only the per-section bound holds there
    for _ in range(60):
        g = random_word(rng, spec, 10)
        s0, s1, _ = wreath_decompose(g, spec)
        assert len(s0) <= len(g) and len(s1) <= len(g)
        if spec.family == "kv":
            assert len(s0) + len(s1) <= len(g)


@pytest.mark.parametrize("spec", SPECS, ids=lambda s: "-".join(s.names))
def test_word_problem_against_action(spec, rng):
    for _ in range(60):
        g = random_word(rng, spec, 6)
        h = random_word(rng, spec, 6)
        assert is_trivial(g, spec) == all(fixes_level(g, d, spec) for d in range(1, 9))
        same = all(act(g, v, spec) == act(h, v, spec)
                   for v in itertools.product((0, 1), repeat=8))
        assert equal(g, h, spec) == same


@pytest.mark.parametrize("spec", SPECS, ids=lambda s: "-".join(s.names))
def test_power_is_trivial_against_expansion(spec, rng):
    for _ in range(30):
        g = random_word(rng, spec, 5)
        for m in (1, 2, 3, 4, 6, 8):
            g_m = tuple(s for _ in range(m) for s in g)
            assert power_is_trivial(g, m, spec) == is_trivial(g_m, spec)


def test_tau_against_brute_force(rng):
    from imgroups.core import tau
    from imgroups.core.recursion import _engine
    for spec in SPECS:
        table = state_tau_table(spec)
        eng = _engine(spec)
        for _ in range(20):
            g = random_word(rng, spec, 8)
            seq = tau(g, table)
            for m in range(9):
                count = sum(eng.decompose(restrict(g, v, spec)).swap
                            for v in itertools.product((0, 1), repeat=m))
                assert seq[m] == count % 2
