import pytest

from core.derivation import (
    Derivation, LabeledFlatSplicingSystem, Mode, control_upto, enumerate_terminal_derivations,
    find_image_witness, image_upto_steps, is_derivation_member, label_words_upto, replay, step_options,
    szilard_upto,
)
from core.errors import InvalidSystemError, ModeMismatchError, SpliceError, UnmappedLabelError
from core.compile import Homomorphism, aa_system
from core.splicing import FlatSplicingRule, FlatSplicingSystem, InitialSet
from tests.helpers import load_system, words


@pytest.fixture
def ex5():
    return load_system('ex5.fss')


def test_step_options_example_5(ex5):
    options = step_options(ex5, ('X', 'A1', 'Y'))
    assert [(o.rule_index, o.partner, o.site) for o in options] == [(0, ('A1',), 2), (1, ('Aq',), 2)]
    assert options[1].after == ('X', 'A1', 'Aq', 'Y')
    assert step_options(ex5, ('X', 'A1', 'Aq', 'Y')) == []


def test_szilard_example_5(ex5):
    assert szilard_upto(ex5, 3) == words("c", "a c", "a a c")
    assert szilard_upto(ex5, 6) == {('a',) * n + ('c',) for n in range(6)}


def test_derivations_have_at_least_one_step(ex5):
    result = enumerate_terminal_derivations(ex5, 3)
    assert all(len(d) >= 1 for d in result.derivations)
    # A1 與 Aq 本身就是終止字詞，不產生推導
    assert {d.start for d in result.derivations} == {('X', 'A1', 'Y')}
    assert result.label_words(ex5) == words("c", "a c", "a a c")


def test_aa_system_has_two_orders():
    lsys = aa_system()
    result = enumerate_terminal_derivations(lsys, 4)
    assert len(result.derivations) == 2
    assert all(len(d) == 2 for d in result.derivations)
    assert result.label_words(lsys) == words("a a")
    assert {d.final for d in result.derivations} == words("S Xa Y S Xa Y")
    assert result.truncated == 0


def test_truncation_is_counted(ex5):
    slice_ = label_words_upto(ex5, 2)
    assert slice_.words == words("c", "a c")
    assert slice_.truncated == 1
    assert not slice_.complete
    assert label_words_upto(aa_system(), 2).complete


def test_max_len_filters_slice(ex5):
    assert label_words_upto(ex5, 6, max_len=2).words == words("c", "a c")


def test_membership_witness(ex5):
    derivation = is_derivation_member(ex5, ('a', 'a', 'c'))
    assert derivation is not None
    assert derivation.label_word(ex5) == ('a', 'a', 'c')
    assert derivation.final == ('X', 'A1', 'A1', 'A1', 'Aq', 'Y')
    assert replay(ex5, derivation) == derivation.final


def test_membership_absent(ex5):
    assert is_derivation_member(ex5, ('c', 'a')) is None
    assert is_derivation_member(ex5, ('a',)) is None
    assert is_derivation_member(ex5, ('z',)) is None
    assert is_derivation_member(ex5, ()) is None


def test_replay_rejects_tampered_steps(ex5):
    derivation = is_derivation_member(ex5, ('a', 'c'))
    first, second = derivation.steps
    bad = Derivation(start=derivation.start, steps=(first,), terminal=True)
    with pytest.raises(SpliceError, match="not terminal"):
        replay(ex5, bad)
    shifted = Derivation(start=derivation.start, steps=(second, first))
    with pytest.raises(SpliceError):
        replay(ex5, shifted)


def test_control_example_1():
    lsys = load_system('ctrl_anbn.fss')
    assert lsys.mode is Mode.CONTROL
    assert control_upto(lsys, 4) == words("a b", "a a b b")
    assert control_upto(lsys, 8) == {('a',) * n + ('b',) * n for n in range(1, 5)}


def test_control_example_2():
    lsys = load_system('ctrl_anbncn.fss')
    assert control_upto(lsys, 3) == words("a b")
    assert control_upto(lsys, 8) == words("a b", "a a b b c c")


def test_mode_mismatch(ex5):
    with pytest.raises(ModeMismatchError):
        control_upto(ex5, 3)
    with pytest.raises(ModeMismatchError):
        szilard_upto(load_system('ctrl_anbn.fss'), 3)


def test_find_image_witness_for_control_word():
    lsys = load_system('ctrl_anbn.fss')
    derivation = find_image_witness(lsys, ('a', 'a', 'b', 'b'), 4)
    assert derivation is not None
    assert derivation.label_word(lsys) == ('a', 'a', 'b', 'b')
    replay(lsys, derivation)
    assert find_image_witness(lsys, ('a', 'b', 'b'), 6) is None


def test_image_upto_steps():
    lsys = aa_system()
    assert image_upto_steps(lsys, Homomorphism({'a': ('x', 'y')}), 4).words == words("x y x y")
    assert image_upto_steps(lsys, Homomorphism({'a': ()}), 4).words == {()}
    with pytest.raises(UnmappedLabelError):
        image_upto_steps(lsys, Homomorphism({}), 4)


def _system(labels, mode):
    system = FlatSplicingSystem(
        alphabet={'X', 'Y', 'A'},
        initial=InitialSet.finite(['X A Y', 'A']),
        rules=(FlatSplicingRule.parse("X | eps - A | Y"), FlatSplicingRule.parse("A | eps - A | Y")),
    )
    return LabeledFlatSplicingSystem(system, labels, mode)


def test_labeling_rules():
    with pytest.raises(InvalidSystemError, match="distinct"):
        _system(('a', 'a'), Mode.SZILARD)
    with pytest.raises(InvalidSystemError, match="empty label"):
        _system(('a', None), Mode.SZILARD)
    with pytest.raises(InvalidSystemError, match="alphabet"):
        _system(('a', 'A'), Mode.SZILARD)
    with pytest.raises(InvalidSystemError):
        _system(('a',), Mode.SZILARD)
    lsys = _system(('a', None), Mode.CONTROL)
    assert lsys.show_label(1) == 'lambda'
    assert lsys.rules_by_label() == {'a': [0], None: [1]}


def test_lambda_steps_contribute_nothing():
    system = FlatSplicingSystem(
        alphabet={'X', 'Y', 'A', 'B'},
        initial=InitialSet.finite(['X Y', 'A', 'B']),
        rules=(FlatSplicingRule.parse("X | eps - A | Y"), FlatSplicingRule.parse("A | eps - B | Y")),
    )
    lsys = LabeledFlatSplicingSystem(system, (None, 'b'), Mode.CONTROL)
    result = enumerate_terminal_derivations(lsys, 3)
    assert [len(d) for d in result.derivations] == [2]
    assert result.derivations[0].final == ('X', 'A', 'B', 'Y')
    assert control_upto(lsys, 3) == words("b")


def test_bad_bounds(ex5):
    with pytest.raises(ValueError):
        label_words_upto(ex5, 0)
    with pytest.raises(ValueError):
        label_words_upto(ex5, 3, partner_len_bound=0)
