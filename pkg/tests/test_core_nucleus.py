import pytest

from conftest import K0
from imgroups.core import (AutomatonSpec, Directed, EventuallyPeriodicBits, Finitary,
                           NonContractingError, classify_state, is_level_transitive_element,
                           is_section_closed, moore_dot, nucleus_closure, state_tau_table, tau)
from imgroups.kneading import build_kv, build_kwv
from imgroups.syntax import parse_word


def words(texts, spec):
    return sorted((parse_word(t, spec) for t in texts), key=lambda g: (len(g), g))


def test_nucleus_examples():
    assert nucleus_closure(K0) == words(
        ["1", "a1", "a1^-1", "a2", "a2^-1", "a1 a2^-1", "a2 a1^-1"], K0)
    adding = build_kv("")
    assert nucleus_closure(adding) == words(["1", "a1", "a1^-1"], adding)
    dinf = build_kwv("0", "1")
    assert nucleus_closure(dinf) == words(["1", "b1", "a1"], dinf)


def test_nucleus_is_section_closed():
    for spec in (K0, build_kv("1101"), build_kwv("01", "0"), build_kwv("0", "111")):
        assert is_section_closed(nucleus_closure(spec), spec)


def test_non_contracting_cap():
    # <a, b> with a = <a, b> sigma, b = <a, b>: sections grow without bound
    spec = AutomatonSpec.from_states([("a", "a", "b", True), ("b", "a", "b", False)])
    with pytest.raises(NonContractingError):
        nucleus_closure(spec, max_iterations=3, max_size=500)


def test_classification():
    assert classify_state("a1", K0) == Directed(("a1", "a2"), "10")
    assert classify_state("a2", K0) == Directed(("a2", "a1"), "01")
    dinf = build_kwv("0", "1")
    assert classify_state("b1", dinf) == Finitary(1)
    assert classify_state(None, K0) == Finitary(0)
    spec = build_kwv("110", "1")
    assert classify_state("b3", spec) == Finitary(3)


def test_tau_examples():
    table = state_tau_table(K0)
    assert table[0] == EventuallyPeriodicBits.make((), (1, 0))
    assert tau(parse_word("a1", K0), table).prefix(6) == [1, 0, 1, 0, 1, 0]
    assert tau((), table) == EventuallyPeriodicBits.zeros()
    dinf = build_kwv("0", "1")
    dt = state_tau_table(dinf)
    assert dt[0].prefix(4) == [1, 0, 0, 0] and dt[1].prefix(4) == [0, 1, 1, 1]
    assert tau(parse_word("a1 b1", dinf), dt).is_all_ones()
    assert is_level_transitive_element(parse_word("a1 a2", K0), table)
    assert not is_level_transitive_element((), table)
    spec = build_kwv("110", "1")
    assert is_level_transitive_element(parse_word("b1 b2 b3 a1", spec), state_tau_table(spec))


def test_eventually_periodic_bits_minimal_form():
    x = EventuallyPeriodicBits.make((1, 0, 1), (0, 1, 0, 1))
    assert x == EventuallyPeriodicBits((), (1, 0))
    assert EventuallyPeriodicBits.make((0, 1, 1), (0, 1)) == EventuallyPeriodicBits((0, 1), (1, 0))
    assert [x[m] for m in range(8)] == [1, 0, 1, 0, 1, 0, 1, 0]
    assert str(EventuallyPeriodicBits.make((0,), (1,))) == "0(1)^w"


def test_moore_dot():
    assert moore_dot(build_kv("")) == (
        'digraph "automaton" {\n  rankdir=LR;\n  node [shape=circle, style=filled];\n'
        '  "a1" [fillcolor=black, fontcolor=white, xlabel="σ"];\n'
        '  "a1" -> "a1" [label="1"];\n}\n')
    dot = moore_dot(K0, title="K_0")
    assert '"a1" [fillcolor=black' in dot and '"a2" [fillcolor=white' in dot
    assert '"a2" -> "a1" [label="0"];' in dot
    assert moore_dot(AutomatonSpec.from_states([])).count(";") == 2
