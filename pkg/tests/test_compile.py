import pytest

import config.settings as settings
from core.compile import (
    Homomorphism, apply_hom, compile_cnf_sz, compile_gnf_cl, compile_grammar, compile_kuroda_cl,
    compile_kuroda_sz, compile_reg_cl, compile_reg_sz, expand_schema, image_upto, rename_terminals,
    schema_label,
)
from core.decide import differential_compare
from core.derivation import (
    Derivation, Mode, control_upto, find_image_witness, image_upto_steps, label_words_upto, replay,
    step_options,
)
from core.errors import CompilationError, NormalFormError, UnmappedLabelError
from core.grammars import Grammar, Production
from core.splicing import SystemType, system_type
from core.words import parse_word, show_word
from tests.helpers import load_grammar, words


def test_homomorphism():
    h = Homomorphism({'a_D1^1': ('a',), 'b^1': ('b',), 'rm': ()})
    assert apply_hom(h, ('a_D1^1', 'a_D1^1', 'b^1')) == ('a', 'a', 'b')
    assert h.apply(('rm', 'b^1', 'rm')) == ('b',)
    assert image_upto(h, [('a_D1^1', 'b^1'), ('rm',)], max_len=1) == {()}
    with pytest.raises(UnmappedLabelError):
        h.apply(('c',))


def test_expand_schema():
    assert expand_schema([['A', 'B'], ['A', 'B']], equal=[(0, 1)]) == [('A', 'A'), ('B', 'B')]
    assert expand_schema([['A', 'B'], ['C']], forbid=lambda t: t[0] == 'A') == [('B', 'C')]
    assert expand_schema([[], ['C']]) == []


def test_schema_label():
    assert schema_label('rm.12') == 'rm'
    assert schema_label('r1^5.2') == 'r1^5'
    assert schema_label('a^1') == 'a^1'
    assert schema_label("[rk2]'.3") == "[rk2]'"


def test_reg_sz_astarb():
    out = compile_reg_sz(load_grammar('astarb.g'))
    assert out.lsys.labels == ('a_D1^1', 'b^1')
    assert out.lsys.initial.words == words("X D1 Y", "Ya D1", "Yb")
    assert dict(out.hom) == {'a_D1^1': ('a',), 'b^1': ('b',)}
    assert system_type(out.lsys.system) == SystemType(1, 2)
    assert image_upto_steps(out.lsys, out.hom, 4).words == words("b", "a b", "a a b", "a a a b")


def test_reg_sz_without_step_productions_stays_within_declared_type():
    g = Grammar(frozenset({'S'}), frozenset({'a'}), 'S', (Production(('S',), ('a',), 'r1'),))
    out = compile_reg_sz(g)
    assert out.declared_type == SystemType(1, 2)
    assert system_type(out.lsys.system) == SystemType(1, 1)
    assert system_type(out.lsys.system).within(out.declared_type)


def test_reg_sz_names_follow_start_then_sorted():
    out = compile_reg_sz(load_grammar('abstar_a.g'))
    assert set(out.lsys.labels) == {'a^1', 'a_D2^1', 'b_D1^2'}


@pytest.mark.parametrize("name", ['astarb.g', 'abstar_a.g'])
def test_regular_compilers_are_exact(name):
    g = load_grammar(name)
    for compiler in (compile_reg_sz, compile_reg_cl):
        report = differential_compare(g, compiler(g), 6, max_steps=6)
        assert report.equal, (compiler.__name__, report.missing, report.extra)


def test_reg_cl_uses_letters_as_labels():
    out = compile_reg_cl(load_grammar('astarb.g'))
    assert out.lsys.mode is Mode.CONTROL
    assert out.hom is None
    assert control_upto(out.lsys, 3) == words("b", "a b", "a a b")


def test_cnf_sz_structure():
    out = compile_cnf_sz(load_grammar('cnf_ab.g'))
    assert system_type(out.lsys.system) == SystemType(2, 2)
    assert out.declared_type == SystemType(2, 2)
    assert words("X S E Y", "[r1] A B", "[r2]", "[r3]", "[rk1]", "[rm]") == out.lsys.initial.words
    images = {}
    for index in range(len(out.lsys.rules)):
        label = out.lsys.show_label(index)
        images.setdefault(schema_label(label), set()).add(out.hom[label])
    assert images['[r2]^a'] == {('a',)}
    assert images['[r3]^b'] == {('b',)}
    assert images["[rk1]'"] == {()}
    assert images['[r1]^1'] == {()}
    # 展開後的樣板帶 .n 後綴
    assert '[r2]^a' not in out.hom
    assert out.hom['[r2]^a.4'] == ('a',)
    assert out.provenance_for('[r2]^a.1')[0].source == 'r2'
    assert sum(schema_label(label) == "[rk1]'" for label in out.hom) == 3
    assert sum(schema_label(label) == '[r1]^1' for label in out.hom) == 17
    assert any('[rk1]' in note for note in out.notes)
    assert out.provenance_for("[rk1]'.1")[0].note


def test_cnf_sz_produces_ab_and_an_extra_b():
    g = load_grammar('cnf_ab.g')
    out = compile_cnf_sz(g)
    report = differential_compare(g, out, 4, max_steps=24)
    assert report.missing == set()
    assert report.extra == words("b")
    witness = report.system_witnesses[('b',)]
    assert witness is not None and len(witness) == 7
    replay(out.lsys, witness)
    # a b 需要 9 步
    assert find_image_witness(out.lsys, ('a', 'b'), 8, out.hom) is None
    assert find_image_witness(out.lsys, ('a', 'b'), 9, out.hom) is not None


def walk(lsys, start, moves):
    """依 (schema, 缺口, partner) 逐步選出唯一的 step_options，組成終止推導"""
    current, steps = parse_word(start), []
    for schema, site, partner in moves:
        chosen = [s for s in step_options(lsys, current)
                  if schema_label(lsys.show_label(s.rule_index)) == schema
                  and s.site == site and s.partner == parse_word(partner)]
        assert len(chosen) == 1, (schema, site, show_word(current))
        steps.append(chosen[0])
        current = chosen[0].after
    return Derivation(start=parse_word(start), steps=tuple(steps))


ANBN_PREFIX = [('[r2]^1', 2, '[r2] A C'), ('[r3]^1', 5, '[r3] S B'), ('[r1]^1', 7, '[r1] A B'),
               ("[rk1]'", 1, '[rm]'), ("[rk2]'", 3, '[rm]'), ("[rk2]'", 5, '[rm]')]
RK2 = "[rk2]'"


@pytest.mark.parametrize("image, moves", [
    # 第一個 B 被 [rm] 跳過
    ('a a b', [('[r4]^a', 7, '[r4]')] + [(RK2, site, '[rm]') for site in (7, 9, 11, 13, 15, 17)]
     + [('[r4]^a', 19, '[r4]')] + [(RK2, site, '[rm]') for site in (19, 21, 23)]
     + [('[r5]^b', 25, '[r5]'), (RK2, 25, '[rm]')]),
    # 第一個 A 被 [rm] 跳過
    ('a b b', [(RK2, site, '[rm]') for site in (7, 9, 11, 13, 15)]
     + [('[r4]^a', 17, '[r4]'), (RK2, 17, '[rm]'), (RK2, 19, '[rm]'), ('[r5]^b', 21, '[r5]'),
        (RK2, 21, '[rm]'), (RK2, 23, '[rm]'), ('[r5]^b', 25, '[r5]'), (RK2, 25, '[rm]')]),
])
def test_cnf_sz_marker_skips_a_nonterminal(image, moves):
    out = compile_cnf_sz(load_grammar('cnf_anbn.g'))
    derivation = walk(out.lsys, 'X S E Y', ANBN_PREFIX + moves)
    assert len(derivation) == 19
    final = replay(out.lsys, derivation)
    assert step_options(out.lsys, final) == []
    labels = tuple(out.lsys.show_label(i) for i in derivation.rule_indices())
    assert apply_hom(out.hom, labels) == parse_word(image)


def test_cnf_sz_anbn_extras():
    g = load_grammar('cnf_anbn.g')
    report = differential_compare(g, compile_cnf_sz(g), 4, max_steps=24)
    assert report.grammar_slice == words("a b", "a a b b")
    assert report.missing == set()
    assert report.extra == words("b", "b b", "a a b", "a b b")


def test_gnf_cl():
    out = compile_gnf_cl(load_grammar('gnf_anbn.g'))
    assert out.lsys.mode is Mode.CONTROL
    assert system_type(out.lsys.system) == SystemType(2, 2)
    assert control_upto(out.lsys, 6) == words("a b", "a a b b", "a a a b b b")


def test_gnf_cl_differential():
    g = load_grammar('gnf_anbn.g')
    assert differential_compare(g, compile_gnf_cl(g), 6, max_steps=6).equal


def test_rename_terminals():
    renamed, base = rename_terminals(load_grammar('gnf_anbn.g'))
    assert base == {'a_1': 'a', 'a_2': 'a', 'b_1': 'b'}
    assert [p.rhs[0] for p in renamed.productions] == ['a_1', 'a_2', 'b_1']


def test_kuroda_sz_ab_trace():
    out = compile_kuroda_sz(load_grammar('kuroda_ab.g'))
    assert system_type(out.lsys.system) == SystemType(4, 2)
    by_schema = Homomorphism({label: (schema_label(label),) for label in out.lsys.label_set()})
    expected = ('r1^1', 'rm', 'a_2^3', 'rm1^2', 'b_3^2')
    derivation = find_image_witness(out.lsys, expected, 5, by_schema)
    assert derivation is not None
    final = replay(out.lsys, derivation)
    assert out.hom.apply(derivation.label_word(out.lsys)) == ('a', 'b')
    assert final[0] == 'X' and final[-1] == 'Y'


def test_kuroda_sz_image_is_ab():
    out = compile_kuroda_sz(load_grammar('kuroda_ab.g'))
    assert image_upto_steps(out.lsys, out.hom, 40, max_len=2).words == words("a b")


def test_kuroda_cl_labels():
    out = compile_kuroda_cl(load_grammar('kuroda_ab.g'))
    assert out.lsys.mode is Mode.CONTROL
    assert out.lsys.label_set() == {'a', 'b'}
    assert None in out.lsys.labels
    assert system_type(out.lsys.system) == SystemType(4, 2)


def test_kuroda_cl_control_word():
    out = compile_kuroda_cl(load_grammar('kuroda_ab.g'))
    assert find_image_witness(out.lsys, ('a', 'b'), 5) is not None


def swap_grammar():
    productions = (
        Production(('S',), ('A', 'B'), 'r1'),
        Production(('A', 'B'), ('B', 'A'), 'r2'),
        Production(('A',), ('a',), 'r3'),
        Production(('B',), ('b',), 'r4'),
    )
    return Grammar(frozenset('SAB'), frozenset('ab'), 'S', productions, 'swap')


def test_kuroda_five_symbol_context():
    g = swap_grammar()
    out = compile_kuroda_sz(g)
    assert system_type(out.lsys.system) == SystemType(4, 2)
    assert any('five-symbol' in note for note in out.notes)
    settings.KURODA_WIDE_CONTEXT = True
    wide = compile_kuroda_sz(g)
    assert wide.declared_type == SystemType(5, 2)
    assert system_type(wide.lsys.system) == SystemType(5, 2)


def test_kuroda_erasing_rules_compile():
    out = compile_kuroda_sz(load_grammar('kuroda_erase.g'))
    erasing = [label for label in out.lsys.label_set() if schema_label(label).startswith('r3^')]
    assert erasing
    assert all(out.hom[label] == () for label in erasing)
    assert any(schema_label(label) == 'rm2^3' for label in out.lsys.label_set())


def test_wrong_form_is_refused():
    with pytest.raises(NormalFormError):
        compile_cnf_sz(load_grammar('astarb.g'))
    with pytest.raises(NormalFormError):
        compile_gnf_cl(load_grammar('cnf_ab.g'))


def test_reserved_symbols_clash():
    g = Grammar(frozenset({'S', 'A', 'E'}), frozenset({'a', 'b'}), 'S',
                (Production(('S',), ('A', 'E'), 'r1'), Production(('A',), ('a',), 'r2'),
                 Production(('E',), ('b',), 'r3')))
    with pytest.raises(CompilationError, match="E"):
        compile_cnf_sz(g)


def test_compile_grammar_dispatch():
    g = load_grammar('astarb.g')
    assert compile_grammar(g, 'reg-sz').target == 'reg-sz'
    with pytest.raises(CompilationError):
        compile_grammar(g, 'nope')


def test_szilard_labels_stay_distinct_after_expansion():
    out = compile_kuroda_sz(load_grammar('kuroda_ab.g'))
    assert len(set(out.lsys.labels)) == len(out.lsys.labels)
    assert set(out.hom) == out.lsys.label_set()


def test_provenance_json():
    out = compile_cnf_sz(load_grammar('cnf_ab.g'))
    data = out.to_json()
    assert data['target'] == 'cnf-sz'
    assert data['declared_type'] == '(2,2)'
    kinds = {entry['kind'] for entry in data['entries']}
    assert kinds == {'rule', 'axiom'}
    assert len([e for e in data['entries'] if e['kind'] == 'rule']) == len(out.lsys.rules)


def test_label_words_of_compiled_reg_sz_match_steps():
    out = compile_reg_sz(load_grammar('astarb.g'))
    slice_ = label_words_upto(out.lsys, 3)
    assert all(len(w) <= 3 for w in slice_.words)
    assert ('a_D1^1', 'b^1') in slice_.words
