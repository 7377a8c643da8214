import pytest

from core.words import EMPTY, canonical_sorted, is_prefix, is_suffix, parse_word, show_word


def test_parse_word_splits_on_whitespace():
    assert parse_word("X  A1\tY") == ('X', 'A1', 'Y')


def test_eps_is_the_empty_word():
    assert parse_word("eps") == EMPTY
    assert parse_word("") == EMPTY
    assert show_word(()) == 'eps'


def test_eps_inside_a_word_is_rejected():
    with pytest.raises(ValueError):
        parse_word("a eps b")


def test_show_word_round_trip():
    assert show_word(parse_word("S Xa Y S Y")) == "S Xa Y S Y"


def test_canonical_order_is_length_then_symbols():
    ordered = canonical_sorted([('b',), ('a', 'a'), ('a',), (), ('a', 'b')])
    assert ordered == [(), ('a',), ('b',), ('a', 'a'), ('a', 'b')]


def test_prefix_and_suffix():
    assert is_prefix((), ('a',))
    assert is_prefix(('a',), ('a', 'b'))
    assert not is_prefix(('b',), ('a', 'b'))
    assert is_suffix((), ())
    assert is_suffix(('b',), ('a', 'b'))
    assert not is_suffix(('a', 'b', 'c'), ('b', 'c'))
