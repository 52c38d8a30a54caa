from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from circlelagrange.cohn import lagrange_of_christoffel, lagrange_periodic
from circlelagrange.exactnum import compare
from circlelagrange.markoff import (ROOT, SINGULAR, InvalidTriple, MarkoffTriple, enumerate_markoff, is_markoff,
                                   markoff_children, markoff_sets, spectrum_below_2, tree_levels, tree_triples,
                                   triple_from_christoffel)
from circlelagrange.words import TrivialWord, as_christoffel, is_even


def test_is_markoff_examples():
    assert is_markoff(1, 1, 1)
    assert is_markoff(1, 3, 1)
    assert is_markoff(5, 3, 1)
    assert is_markoff(5, 1177, 59)
    assert not is_markoff(1, 2, 1)
    assert not is_markoff(0, 0, 0)
    with pytest.raises(InvalidTriple):
        MarkoffTriple(2, 2, 2)


def test_triples_compare_with_unordered_ys():
    assert MarkoffTriple(1, 3, 1) == MarkoffTriple(1, 1, 3)
    assert hash(MarkoffTriple(5, 3, 1)) == hash(MarkoffTriple(5, 1, 3))
    assert not ROOT.is_singular() and SINGULAR.is_singular()
    assert str(MarkoffTriple(5, 17, 339)) == "(5;17,339)"


def test_children_examples():
    assert markoff_children(ROOT) == (MarkoffTriple(5, 3, 1), SINGULAR, MarkoffTriple(1, 3, 11))
    assert set(markoff_children(SINGULAR)) == {ROOT, SINGULAR}


def test_tree_levels():
    levels = [[n.triple for n in level] for level in tree_levels(enumerate_markoff(3))]
    assert levels[0] == [ROOT]
    assert levels[1] == [MarkoffTriple(5, 3, 1), MarkoffTriple(1, 11, 3)]
    assert levels[2] == [MarkoffTriple(5, 17, 1), MarkoffTriple(5, 59, 3), MarkoffTriple(65, 11, 3),
                         MarkoffTriple(1, 41, 11)]
    assert levels[3] == [MarkoffTriple(29, 17, 1), MarkoffTriple(5, 339, 17), MarkoffTriple(349, 59, 3),
                         MarkoffTriple(5, 1177, 59), MarkoffTriple(65, 769, 3), MarkoffTriple(65, 2857, 11),
                         MarkoffTriple(901, 41, 11), MarkoffTriple(1, 153, 41)]
    assert [n.triple for n in tree_levels(enumerate_markoff(0))[0]] == [ROOT]
    with pytest.raises(ValueError):
        enumerate_markoff(-1)


def test_markoff_sets_prefix():
    xs, ys = markoff_sets(3)
    assert xs == [1, 5, 29, 65, 349, 901]
    assert ys == [1, 3, 11, 17, 41, 59, 153, 339, 769, 1177, 2857]


def test_every_tree_node_is_a_child_of_its_parent():
    root = enumerate_markoff(7)
    for level in tree_levels(root):
        for node in level:
            assert is_markoff(node.triple.x, node.triple.y1, node.triple.y2)
            for child in node.children:
                assert child.triple in markoff_children(node.triple)


def test_triple_from_christoffel_examples():
    assert triple_from_christoffel("ab") == ROOT
    assert triple_from_christoffel("abb") == MarkoffTriple(5, 3, 1)
    assert triple_from_christoffel("aab") == MarkoffTriple(1, 11, 3)
    with pytest.raises(TrivialWord):
        triple_from_christoffel("a")


def test_tree_and_words_agree_to_depth_8():
    # the tree values come from Vieta moves; the triples here come from Cohn traces
    root = enumerate_markoff(8)
    words = set()
    triples = set()
    for level in tree_levels(root):
        for node in level:
            as_christoffel(node.word)
            assert triple_from_christoffel(node.word) == node.triple
            words.add(node.word)
            triples.add(node.triple)
    assert len(words) == len(triples) == 2 ** 9 - 1


def test_x_and_y_values_are_distinct_within_kind():
    # no number is introduced twice in the tree
    root = enumerate_markoff(8)
    seen = set()
    for level in tree_levels(root)[1:]:
        for node in level:
            key = ("x" if is_even(node.word) else "y", node.new_value)
            assert key not in seen
            seen.add(key)


def test_spectrum_prefix():
    got = [(e.word, e.L_text()) for e in spectrum_below_2(10)]
    assert got == [("b", "sqrt(2)"), ("a", "sqrt(3)"), ("ab", "sqrt(34)/3"), ("abb", "3*sqrt(11)/5"),
                   ("aab", "sqrt(482)/11"), ("abbb", "sqrt(1154)/17"), ("aaab", "sqrt(6722)/41"),
                   ("abbbb", "sqrt(3363)/29"), ("ababb", "sqrt(13922)/59"), ("aabab", "sqrt(16899)/65")]
    with pytest.raises(ValueError):
        spectrum_below_2(0)


def test_spectrum_is_increasing_below_two():
    entries = spectrum_below_2(60)
    values = [e.L_squared for e in entries]
    assert all(a < b for a, b in zip(values, values[1:]))
    assert values[-1] < 4
    for e in entries:
        assert lagrange_of_christoffel(e.word) == e
        assert lagrange_periodic(e.period) == e.L_tower()


def test_spectrum_matches_brute_force():
    entries = spectrum_below_2(25)
    cutoff = entries[-1].L_squared
    # numbers grow down the tree, so a level whose new numbers all exceed the
    # largest relevant one closes the search
    biggest = max(e.markoff_number for e in entries)
    depth = 1
    while min(n.new_value for n in tree_levels(enumerate_markoff(depth))[-1]) <= biggest:
        depth += 1
    pool = {(e.kind, e.markoff_number): e.L_squared
            for e in (lagrange_of_christoffel(w) for w in ("a", "b"))}
    for level in tree_levels(enumerate_markoff(depth)):
        for node in level:
            e = lagrange_of_christoffel(node.word)
            pool[(e.kind, e.markoff_number)] = e.L_squared
    assert sorted(v for v in pool.values() if v <= cutoff) == [e.L_squared for e in entries]


@given(st.integers(1, 40))
def test_spectrum_prefixes_are_stable(n):
    assert spectrum_below_2(n) == spectrum_below_2(40)[:n]


def test_x_values_include_169_and_not_11():
    xs, ys = markoff_sets(6)
    assert xs[:6] == [1, 5, 29, 65, 169, 349]
    assert 11 not in xs and 11 in ys
    assert is_markoff(169, 99, 1)
