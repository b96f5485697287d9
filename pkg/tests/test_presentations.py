import itertools

import pytest

from conftest import group
from imgroups.core import equal, free_reduce, is_trivial
from imgroups.presentations import (HNN_ALPHABET, check_presentation, dihedral_split, emit_hnn,
                                    fbar_relators, free_alphabet, hnn_relator_in_group,
                                    phi_expand, phi_free, relators_kv, relators_kwv,
                                    verify_relators)
from imgroups.syntax import parse_word


def bits(n):
    return ["".join(p) for p in itertools.product("01", repeat=n)]


def pairs():
    for k, n in itertools.product(range(1, 4), repeat=2):
        if (k, n) == (1, 1):
            continue
        for w in bits(k):
            for v in bits(n):
                if w[-1] != v[-1]:
                    yield f"{w},{v}"


def labels_round_trip(family, g):
    alphabet = free_alphabet(g)
    return all(parse_word(label, alphabet) == word
               for word, label in zip(family.base, family.labels))


def test_relators_kv_examples():
    g = group("0")
    fam = relators_kv("0", 2)
    assert fam.labels == ("[a2, a2^(a1^1)]",)
    assert list(fam.base) == [parse_word("[a2, a2^a1]", free_alphabet(g))]
    assert len(relators_kv("0", 0)) == 0
    assert len(relators_kv("", 2)) == 0
    labels = relators_kv("10", 2).labels
    assert "[a2, a3]" in labels and "[a3, a2]" in labels


def test_phi_expand_examples():
    g = group("0")
    alphabet = free_alphabet(g)
    fam = relators_kv("0", 2)
    phi = phi_free(g)
    assert phi_expand(fam, phi, 0) == list(fam.base)
    words = phi_expand(fam, phi, 2)
    assert words[1] == parse_word("[a1^2, (a1^2)^a2]", alphabet)
    assert words[2] == parse_word("[a2^2, (a2^2)^(a1^2)]", alphabet)


def test_phi_expand_commutes_with_reduction(rng):
    g = group("101")
    phi = phi_free(g)
    for _ in range(50):
        raw = [(rng.randrange(g.n), rng.choice((1, -1))) for _ in range(10)]
        assert equal(phi(free_reduce(raw)), free_reduce(phi(tuple(raw))), g.spec)


def test_dihedral_split():
    g = group("1,10")
    split = dihedral_split(g, g.endomorphism)
    assert len(split.odd) == len(split.even) == 8
    for name in ("110,1", "01,0", "00,111"):
        g = group(name)
        split = dihedral_split(g, g.endomorphism)
        size = 2 ** (g.endomorphism.m + 1)
        assert len(split.odd) == len(split.even) == size
        elems = [w for w, _ in split.odd + split.even]
        # 2N distinct elements of the dihedral group
        for x, y in itertools.combinations(elems, 2):
            assert not equal(x, y, g.spec)


def test_relators_kwv_shapes():
    assert not any(label.startswith("[b") for label in relators_kwv(group("1,10")).labels)
    assert not any(", a" in label for label in relators_kwv(group("110,1")).labels)


def test_fbar_examples():
    g = group("1,10")
    fam = fbar_relators(g, levels=1)
    assert "(a2 b1)^4" in fam.labels
    assert not any(label.startswith("[a") for label in fam.labels)
    g = group("0,111")
    labels = fbar_relators(g).labels
    assert {"[a1, a2]", "[a1, a3]", "[a2, a3]"} <= set(labels)


@pytest.mark.parametrize("name", ["1,10", "110,1", "01,0", "0,111", "101,10"])
def test_labels_parse_back(name):
    g = group(name)
    assert labels_round_trip(relators_kwv(g), g)
    assert labels_round_trip(fbar_relators(g, levels=2), g)


def test_relators_kv_labels_parse_back():
    for v in bits(3):
        g = group(v)
        assert labels_round_trip(relators_kv(v, 3), g)


def test_verify_examples():
    assert check_presentation(group("0"), 3).ok
    assert check_presentation(group("1,10"), 2).ok
    g = group("0")
    rep = verify_relators([parse_word("[a1,a2]", g.spec), parse_word("[a2, a2^a1]", g.spec)], g.spec)
    assert rep.failures == [0] and rep.total == 2 and rep.distinct == 2


def test_larger_r_is_sound():
    for v in bits(3):
        g = group(v)
        assert verify_relators(list(relators_kv(v, 6).base), g.spec).ok


def test_hnn_polynomials():
    assert dict(emit_hnn(group("11")).polynomials)["p(t)"] == "t + t^2"
    assert dict(emit_hnn(group("000")).polynomials)["p(t)"] == "0"
    polys = dict(emit_hnn(group("110,1")).polynomials)
    assert polys == {"p(t)": "1", "q(t)": "t + t^2"}


@pytest.mark.parametrize("name", ["0", "11", "0110", "1,10", "110,1", "01,0", "0,111", "100,111"])
def test_hnn_round_trip_and_soundness(name):
    g = group(name)
    doc = emit_hnn(g)
    assert emit_hnn(g).to_text() == doc.to_text()
    for text, word in zip(doc.relators, doc.words()):
        assert parse_word(text, HNN_ALPHABET) == word
        # t acts as the endomorphism, so each relator is a statement about g
        assert is_trivial(hnn_relator_in_group(word, g), g.spec), text
    for gen, text in doc.auxiliary:
        if gen not in ("a", "u"):
            parse_word(text, HNN_ALPHABET)


def test_hnn_identification_recovers_generators():
    for name in ("0", "101", "1,10", "110,1", "01,10"):
        g = group(name)
        doc = emit_hnn(g)
        for gen, text in doc.auxiliary:
            if gen == "u" or gen == "a":
                continue
            word = tuple(s for s in parse_word(text, HNN_ALPHABET))
            lifted = hnn_relator_in_group(word, g)
            assert equal(lifted, parse_word(gen, g.spec), g.spec), (name, gen)
