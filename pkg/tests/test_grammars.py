import pytest

from core.errors import GrammarError
from core.grammars import (
    Grammar, NormalForm, Production, grammar_language_upto, replay_derivation, to_cnf, validate_form,
)
from core.words import parse_word
from tests.helpers import load_grammar, words


def grammar(rules, nonterminals, terminals, start='S', name=''):
    productions = []
    for index, text in enumerate(rules, start=1):
        lhs, rhs = text.split('->')
        productions.append(Production(parse_word(lhs), parse_word(rhs), f"r{index}"))
    return Grammar(frozenset(nonterminals.split()), frozenset(terminals.split()), start, tuple(productions), name)


def test_grammar_validation():
    with pytest.raises(GrammarError, match="both terminal and nonterminal"):
        grammar(["S -> a"], "S a", "a")
    with pytest.raises(GrammarError, match="start symbol"):
        grammar(["A -> a"], "A", "a")
    with pytest.raises(GrammarError, match="undeclared"):
        grammar(["S -> b"], "S", "a")
    with pytest.raises(GrammarError, match="no nonterminal"):
        grammar(["a -> S"], "S", "a")
    with pytest.raises(GrammarError):
        Production((), ('a',), 'r1')


def test_normal_form_parse():
    assert NormalForm.parse("CNF") is NormalForm.CNF
    assert NormalForm.parse("rightlinear") is NormalForm.RIGHT_LINEAR
    with pytest.raises(GrammarError):
        NormalForm.parse("chomsky")


def test_validate_form():
    g = load_grammar('not_cnf.g', validate=False)
    violations = validate_form(g, NormalForm.CNF)
    assert [v.production.label for v in violations] == ['r1', 'r2']
    assert validate_form(g, NormalForm.CF) == []
    assert validate_form(load_grammar('kuroda_erase.g'), NormalForm.KURODA) == []
    assert validate_form(load_grammar('gnf_anbn.g'), NormalForm.GNF) == []
    assert validate_form(load_grammar('cnf_ab.g'), NormalForm.RIGHT_LINEAR)


def test_kuroda_swap_rule_shape():
    g = grammar(["S -> A B", "A B -> B A", "A -> a", "B -> b"], "S A B", "a b")
    assert validate_form(g, NormalForm.KURODA) == []
    bad = grammar(["S -> A B", "A B -> a"], "S A B", "a")
    assert len(validate_form(bad, NormalForm.KURODA)) == 1


def test_context_free_oracle():
    g = load_grammar('cnf_anbn.g')
    assert grammar_language_upto(g, 6).words == words("a b", "a a b b", "a a a b b b")
    assert grammar_language_upto(load_grammar('astarb.g'), 3).words == words("b", "a b", "a a b")
    assert grammar_language_upto(load_grammar('abstar_a.g'), 3).words == words("a", "a b a")


def test_oracle_witnesses_replay():
    g = load_grammar('gnf_anbn.g')
    slice_ = grammar_language_upto(g, 6)
    assert slice_.complete
    for word, steps in slice_.witnesses.items():
        assert replay_derivation(g, steps) == word


def test_type0_oracle_with_swap():
    g = grammar(["S -> A B", "A B -> B A", "A -> a", "B -> b"], "S A B", "a b")
    slice_ = grammar_language_upto(g, 2)
    assert slice_.words == words("a b", "b a")
    for word, steps in slice_.witnesses.items():
        assert replay_derivation(g, steps) == word


def test_erasing_rule_in_oracle():
    assert grammar_language_upto(load_grammar('kuroda_erase.g'), 3).words == words("a")


def test_sentential_bound_marks_slice_incomplete():
    g = grammar(["S -> A S", "S -> a", "A -> eps"], "S A", "a")
    g = Grammar(g.nonterminals, g.terminals, g.start,
                g.productions + (Production(('A', 'S'), ('S', 'A'), 'r4'),))
    slice_ = grammar_language_upto(g, 1, sentential_bound=3)
    assert slice_.words == words("a")
    assert not slice_.complete


def test_replay_rejects_wrong_position():
    g = load_grammar('cnf_ab.g')
    with pytest.raises(GrammarError):
        replay_derivation(g, [('r1', 0), ('r3', 0)])
    with pytest.raises(GrammarError):
        replay_derivation(g, [('r9', 0)])


@pytest.mark.parametrize("rules, nonterminals, terminals", [
    (["S -> a S b", "S -> a b"], "S", "a b"),
    (["S -> S S", "S -> a", "S -> eps"], "S", "a"),
    (["S -> A", "A -> B", "B -> a b", "B -> A c"], "S A B", "a b c"),
    (["S -> a S a", "S -> b S b", "S -> eps", "S -> c"], "S", "a b c"),
])
def test_to_cnf_preserves_bounded_language(rules, nonterminals, terminals):
    g = grammar(rules, nonterminals, terminals)
    cnf = to_cnf(g)
    assert validate_form(cnf, NormalForm.CNF) == []
    expected = {w for w in grammar_language_upto(g, 6).words if w}
    assert grammar_language_upto(cnf, 6).words == expected


def test_to_cnf_needs_context_free():
    g = grammar(["S -> A B", "A B -> B A", "A -> a", "B -> b"], "S A B", "a b")
    with pytest.raises(GrammarError):
        to_cnf(g)
