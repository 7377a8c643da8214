"""
文法 → 帶標籤 flat splicing 系統的六種建構，以及標籤字詞上的同態映射

每個建構都先檢查文法的正規形，再把帶有旁側條件的規則樣板展開成具體規則。
同一個樣板展開出多條規則時，Szilard 模式在標籤後加上 `.1`、`.2` ... 維持標籤互異；
控制模式直接沿用樣板標籤。
"""
from collections.abc import Mapping
from dataclasses import dataclass
from itertools import product
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple
import logging

import config.settings as settings
from core.derivation import LabeledFlatSplicingSystem, Mode
from core.errors import CompilationError, InvalidSystemError, NormalFormError, UnmappedLabelError
from core.grammars import Grammar, NormalForm, Production, validate_form
from core.splicing import FlatSplicingRule, FlatSplicingSystem, InitialSet, SystemType
from core.words import EMPTY, Word, show_word

X, Y = 'X', 'Y'
E = 'E'
RM = '[rm]'
RK1 = '[rk1]'


# ---------------------------------------------------------------------------
# 同態
# ---------------------------------------------------------------------------


class Homomorphism(Mapping):
    """標籤 → 終端字詞 (可為 ε) 的全函數"""

    def __init__(self, images: Optional[Mapping[str, Sequence[str]]] = None):
        self._images: Dict[str, Word] = {label: tuple(image) for label, image in (images or {}).items()}

    def __getitem__(self, label: str) -> Word:
        try:
            return self._images[label]
        except KeyError:
            raise UnmappedLabelError(label) from None

    def __iter__(self):
        return iter(self._images)

    def __len__(self):
        return len(self._images)

    def __repr__(self):
        return f"Homomorphism({self._images!r})"

    def apply(self, word: Sequence[str]) -> Word:
        result: Word = EMPTY
        for label in word:
            result += self[label]
        return result


def apply_hom(h: Mapping[str, Word], w: Sequence[str]) -> Word:
    if isinstance(h, Homomorphism):
        return h.apply(w)
    return Homomorphism(h).apply(w)


def image_upto(h: Mapping[str, Word], words: Iterable[Sequence[str]], max_len: Optional[int] = None) -> set:
    images = {apply_hom(h, w) for w in words}
    if max_len is not None:
        images = {w for w in images if len(w) <= max_len}
    return images


# ---------------------------------------------------------------------------
# 編譯結果
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ProvenanceEntry:
    kind: str           # 'rule' 或 'axiom'
    item: str           # 規則標籤或公理字詞
    source: str         # 來源產生式標籤，或固定規則群名稱
    group: str          # 例如 'binary/5'、'leftmost/rm3'
    note: str = ''

    def to_dict(self) -> dict:
        data = {'kind': self.kind, 'item': self.item, 'source': self.source, 'group': self.group}
        if self.note:
            data['note'] = self.note
        return data


@dataclass
class CompilationOutput:
    lsys: LabeledFlatSplicingSystem
    hom: Optional[Homomorphism]
    provenance: Tuple[ProvenanceEntry, ...]
    target: str
    declared_type: SystemType
    notes: Tuple[str, ...] = ()

    def provenance_for(self, item: str) -> List[ProvenanceEntry]:
        return [entry for entry in self.provenance if entry.item == item]

    def to_json(self) -> dict:
        return {
            'target': self.target,
            'system': self.lsys.name,
            'declared_type': str(self.declared_type),
            'notes': list(self.notes),
            'entries': [entry.to_dict() for entry in self.provenance],
        }


class _SystemBuilder:
    """累積公理與規則，最後產生 CompilationOutput"""

    def __init__(self, name: str, mode: Mode):
        self.name = name
        self.mode = mode
        self.alphabet: set = set()
        self.axioms: List[Word] = []
        self.rules: List[FlatSplicingRule] = []
        self.labels: List[Optional[str]] = []
        self.images: Dict[str, Word] = {}
        self.provenance: List[ProvenanceEntry] = []
        self.notes: List[str] = []

    def axiom(self, word: Sequence[str], source: str, group: str):
        word = tuple(word)
        if word in self.axioms:
            return
        self.axioms.append(word)
        self.alphabet.update(word)
        self.provenance.append(ProvenanceEntry('axiom', show_word(word), source, group))

    def schema(self, label: Optional[str], instances: Sequence[Tuple[Word, Word, Word, Word]],
               source: str, group: str, image: Word = EMPTY, note: str = ''):
        """
        一個樣板展開出的全部規則；Szilard 模式下多於一條時加上 .n 後綴
        """
        suffix = self.mode is Mode.SZILARD and len(instances) > 1
        for number, (alpha, gamma, delta, beta) in enumerate(instances, start=1):
            rule_label = f"{label}.{number}" if suffix else label
            rule = FlatSplicingRule(alpha, gamma, delta, beta)
            self.rules.append(rule)
            self.labels.append(rule_label)
            self.alphabet.update(rule.symbols())
            if rule_label is not None and self.mode is Mode.SZILARD:
                self.images[rule_label] = tuple(image)
            self.provenance.append(ProvenanceEntry(
                'rule', rule_label if rule_label is not None else f"lambda#{len(self.rules)}", source, group, note))

    def build(self, target: str, declared: SystemType, with_hom: bool) -> CompilationOutput:
        try:
            system = FlatSplicingSystem(
                alphabet=frozenset(self.alphabet),
                initial=InitialSet.finite(self.axioms),
                rules=tuple(self.rules),
                name=self.name,
            )
            lsys = LabeledFlatSplicingSystem(system, tuple(self.labels), self.mode)
        except InvalidSystemError as e:
            raise CompilationError(f"{target}: {e}") from e
        logging.debug(f"{target}: {len(self.rules)} rules, {len(self.axioms)} axioms, "
                      f"{len(self.alphabet)} symbols")
        return CompilationOutput(
            lsys=lsys,
            hom=Homomorphism(self.images) if with_hom else None,
            provenance=tuple(self.provenance),
            target=target,
            declared_type=declared,
            notes=tuple(self.notes),
        )


def expand_schema(slots: Sequence[Iterable[str]], equal: Sequence[Tuple[int, int]] = (),
                  forbid: Optional[Callable[[Tuple[str, ...]], bool]] = None) -> List[Tuple[str, ...]]:
    """
    展開樣板的旁側條件：slots 為每個位置的候選符號，equal 中的 (i, j) 要求位置 i 與 j 相同，
    forbid(assignment) 為 True 的組合會被排除。結果依 slots 的順序排列
    """
    choices = [list(slot) for slot in slots]
    assignments = []
    for assignment in product(*choices):
        if any(assignment[i] != assignment[j] for i, j in equal):
            continue
        if forbid is not None and forbid(assignment):
            continue
        assignments.append(assignment)
    return assignments


def schema_label(label: str) -> str:
    """去掉展開時加上的 .n 後綴"""
    base, dot, tail = label.rpartition('.')
    return base if dot and tail.isdigit() else label


def _require_form(g: Grammar, form: NormalForm):
    violations = validate_form(g, form)
    if violations:
        raise NormalFormError(form.value, violations)


def _check_reserved(g: Grammar, reserved: Iterable[str], target: str):
    clash = sorted((g.nonterminals | g.terminals) & set(reserved))
    if clash:
        raise CompilationError(f"{target}: grammar symbols clash with generated symbols: {' '.join(clash)}")


# ---------------------------------------------------------------------------
# 正規文法
# ---------------------------------------------------------------------------


def _rename_right_linear(g: Grammar) -> Dict[str, str]:
    """起始符號為 D1，其餘依名稱排序為 D2..Dn"""
    order = [g.start] + sorted(g.nonterminals - {g.start})
    return {name: f"D{index}" for index, name in enumerate(order, start=1)}


def _compile_right_linear(g: Grammar, target: str, mode: Mode) -> CompilationOutput:
    _require_form(g, NormalForm.RIGHT_LINEAR)
    names = _rename_right_linear(g)
    reserved = {X, Y} | set(names.values()) | {f"Y{a}" for a in g.terminals}
    if mode is Mode.CONTROL:
        # 控制模式的標籤就是終端字母
        clash = sorted(g.terminals & reserved)
        if clash:
            raise CompilationError(f"{target}: terminals clash with generated symbols: {' '.join(clash)}")

    builder = _SystemBuilder(g.name or target, mode)
    builder.axiom((X, names[g.start], Y), 'start', 'start')
    seen = set()
    for production in g.productions:
        head = names[production.lhs[0]]
        i = head[1:]
        letter = production.rhs[0]
        marker = f"Y{letter}"
        if len(production.rhs) == 2:
            tail = names[production.rhs[1]]
            key = (head, letter, tail)
            if key in seen:
                continue
            seen.add(key)
            builder.axiom((marker, tail), production.label, 'step')
            label = letter if mode is Mode.CONTROL else f"{letter}_{tail}^{i}"
            builder.schema(label, [((head,), (marker,), (tail,), (Y,))],
                           production.label, 'step', image=(letter,))
        else:
            key = (head, letter)
            if key in seen:
                continue
            seen.add(key)
            builder.axiom((marker,), production.label, 'final')
            label = letter if mode is Mode.CONTROL else f"{letter}^{i}"
            builder.schema(label, [((head,), EMPTY, (marker,), (Y,))],
                           production.label, 'final', image=(letter,))
    return builder.build(target, SystemType(1, 2), with_hom=mode is Mode.SZILARD)


def compile_reg_sz(g: Grammar) -> CompilationOutput:
    return _compile_right_linear(g, 'reg-sz', Mode.SZILARD)


def compile_reg_cl(g: Grammar) -> CompilationOutput:
    return _compile_right_linear(g, 'reg-cl', Mode.CONTROL)


# ---------------------------------------------------------------------------
# Chomsky 正規形
# ---------------------------------------------------------------------------


def compile_cnf_sz(g: Grammar) -> CompilationOutput:
    _require_form(g, NormalForm.CNF)
    brackets = {p.label: f"[r{i}]" for i, p in enumerate(g.productions, start=1)}
    _check_reserved(g, {X, Y, E, RM, RK1} | set(brackets.values()), 'cnf-sz')

    N = sorted(g.nonterminals)
    binary = [p for p in g.productions if len(p.rhs) == 2]
    terminal = [p for p in g.productions if len(p.rhs) == 1]
    delta1 = [brackets[p.label] for p in binary]
    delta2 = [brackets[p.label] for p in terminal]

    builder = _SystemBuilder(g.name or 'cnf-sz', Mode.SZILARD)
    builder.axiom((X, g.start, E, Y), 'start', 'start')
    for p in binary:
        builder.axiom((brackets[p.label],) + p.rhs, p.label, 'binary')
    for p in terminal:
        builder.axiom((brackets[p.label],), p.label, 'terminal')
    builder.axiom((RK1,), 'markers', 'markers')
    builder.axiom((RM,), 'markers', 'markers')

    def excluded(pair):
        first, second = pair
        return ((first in g.nonterminals and second == Y)
                or (first == E and second in g.nonterminals)
                or (first == E and second in delta1))

    for p in binary:
        A, (B, C) = p.lhs[0], p.rhs
        contexts = expand_schema([N + [E], N + [E, Y] + delta1], forbid=excluded)
        builder.schema(f"{brackets[p.label]}^1",
                       [((A,), (brackets[p.label],), (C,), beta) for beta in contexts],
                       p.label, 'binary')
    for p in terminal:
        A, a = p.lhs[0], p.rhs[0]
        builder.schema(f"{brackets[p.label]}^{a}",
                       [((RM, A), EMPTY, (brackets[p.label],), (alpha3,)) for alpha3 in N + [E]],
                       p.label, 'terminal', image=(a,))

    builder.schema(f"{RK1}'", [((X,), EMPTY, (RM,), (alpha4,)) for alpha4 in N],
                   'markers', 'marker/rk1',
                   note="inserts [rm]; the [rk1] axiom is never used as a partner")
    markers = N + delta1 + delta2
    builder.schema("[rk2]'", [((RM, alpha5), EMPTY, (RM,), (alpha6,))
                              for alpha5, alpha6 in expand_schema([markers, markers])],
                   'markers', 'marker/rk2')
    builder.notes.append("marker rule [rk1]' inserts [rm]; the [rk1] axiom stays unused")
    return builder.build('cnf-sz', SystemType(2, 2), with_hom=True)


# ---------------------------------------------------------------------------
# Kuroda 正規形
# ---------------------------------------------------------------------------


class _KurodaClasses:
    def __init__(self, g: Grammar):
        self.N = sorted(g.nonterminals)
        self.brackets: Dict[str, str] = {}
        self.delta: Dict[int, List[str]] = {1: [], 2: [], 3: [], 4: []}
        self.k_symbol: Dict[str, str] = {}
        for i, p in enumerate(g.productions, start=1):
            bracket = f"[r{i}]"
            self.brackets[p.label] = bracket
            if len(p.lhs) == 2:
                self.delta[2].append(bracket)
            elif len(p.rhs) == 2:
                self.delta[1].append(bracket)
            elif len(p.rhs) == 1:
                self.delta[3].append(bracket)
                self.k_symbol[p.label] = f"k{p.rhs[0]}_i{i}"
            else:
                self.delta[4].append(bracket)
                self.k_symbol[p.label] = f"klam_i{i}"

    def right_context(self, variant: str) -> List[Word]:
        """各規則群共用的右側情境 (Y 結尾的短情境、四符號情境、五符號情境)"""
        N, D1, D2 = self.N, self.delta[1], self.delta[2]
        D12 = D1 + D2
        if variant == 'y0':
            return [(Y,)]
        if variant == 'y1':
            return [(a1, Y) for (a1,) in expand_schema([N])]
        if variant == 'y2':
            return [(a1, a2, Y) for a1, a2 in expand_schema([N, N])]
        if variant == 'y3':
            return [(a1, a2, a3, Y) for a1, a2, a3 in expand_schema([N, N, N])]
        if variant == 'four':
            return [tuple(t) for t in expand_schema(
                [N, N + D1, N + D12, N + D12],
                forbid=lambda t: (t[1] in D1 and t[2] in D12) or (t[2] in D12 and t[3] in D12))]
        if variant == 'five':
            width = 5 if settings.KURODA_WIDE_CONTEXT else 4
            return [tuple(t[:width]) for t in expand_schema([N, D2, N, D1, D2], equal=[(1, 4)])]
        raise ValueError(variant)


def _kuroda_rules(g: Grammar, builder: _SystemBuilder, control: bool):
    classes = _KurodaClasses(g)
    N, D1, D2, D3, D4 = (classes.N, classes.delta[1], classes.delta[2],
                         classes.delta[3], classes.delta[4])
    _check_reserved(g, {X, Y, RM} | set(classes.brackets.values()) | set(classes.k_symbol.values()),
                    "kuroda-cl" if control else "kuroda-sz")

    def label(base: str, letter: Optional[str] = None) -> Optional[str]:
        if not control:
            return base
        return letter

    builder.axiom((X, g.start, Y), 'start', 'start')
    for i, p in enumerate(g.productions, start=1):
        bracket = classes.brackets[p.label]
        if len(p.lhs) == 2:
            builder.axiom((bracket,) + p.rhs, p.label, 'swap')
            builder.axiom((bracket,), p.label, 'swap')
        elif len(p.rhs) == 2:
            builder.axiom((bracket,) + p.rhs, p.label, 'binary')
        else:
            builder.axiom((classes.k_symbol[p.label],), p.label, 'terminal' if p.rhs else 'erasing')
    builder.axiom((RM,), 'leftmost', 'leftmost')

    context_of = {1: 'y0', 2: 'y1', 3: 'y2', 4: 'y3', 5: 'four', 6: 'five'}
    five_note = '' if settings.KURODA_WIDE_CONTEXT else "five-symbol right context cut to its first four symbols"

    for i, p in enumerate(g.productions, start=1):
        bracket = classes.brackets[p.label]
        if len(p.lhs) == 1 and len(p.rhs) == 2:
            A, C = p.lhs[0], p.rhs[1]
            for variant in range(1, 7):
                contexts = classes.right_context(context_of[variant])
                note = ''
                if variant == 5:
                    note = "right context has no trailing Y"
                elif variant == 6:
                    note = five_note
                builder.schema(label(f"r{i}^{variant}"),
                               [((A,), (bracket,), (C,), beta) for beta in contexts],
                               p.label, f"binary/{variant}", note=note)

        elif len(p.lhs) == 2:
            (A, B), D = p.lhs, p.rhs[1]
            swap = [
                (7, [((A, B), (bracket,), (D,), beta) for beta in expand_schema([N, N])]),
                (8, [((A, B), (bracket,), (D,), (Y,))]),
                (9, [((A, B), (bracket,), (D,), beta) for beta in classes.right_context('y1')]),
                (10, [((A,), EMPTY, (bracket,), beta) for beta in expand_schema([N, D1])]),
                (11, [((bracket, a1, b1), EMPTY, (bracket,), (a2, a3))
                      for a1, b1, a2, a3 in expand_schema([N, D1, N, D1 + N])]),
                (12, [((b1, bracket, B), (bracket,), (D,), (a1, a2))
                      for b1, a1, a2 in expand_schema([D1, N, N + [Y] + D1])]),
                (13, [((A, B), (bracket,), (D,), beta) for beta in classes.right_context('five')]),
            ]
            for variant, instances in swap:
                builder.schema(label(f"r{i}^{variant}"), instances, p.label, f"swap/{variant}",
                               note=five_note if variant == 13 else '')

        else:
            A = p.lhs[0]
            k = classes.k_symbol[p.label]
            if p.rhs:
                letter = p.rhs[0]
                kind, first = 'terminal', 1
            else:
                letter = None
                kind, first = 'erasing', 14
            image = (letter,) if letter else EMPTY

            def schema_name(offset: int) -> str:
                if letter is not None:
                    return f"{letter}_{i}^{offset}"
                return f"r{i}^{first + offset - 1}"

            builder.schema(label(schema_name(1), letter), [((X, A), EMPTY, (k,), (Y,))],
                           p.label, f"{kind}/1", image=image)
            for offset in range(2, 8):
                contexts = classes.right_context(context_of[offset - 1])
                builder.schema(label(schema_name(offset), letter),
                               [((RM, A), EMPTY, (k,), beta) for beta in contexts],
                               p.label, f"{kind}/{offset}", image=image,
                               note=five_note if offset == 7 else '')
            marker = 'rm1' if letter is not None else 'rm2'
            builder.schema(label(f"{marker}^{i}"),
                           [((RM, A, k), EMPTY, (RM,), (a1, a2))
                            for a1, a2 in expand_schema([N, [Y] + N + D1 + D2])],
                           p.label, f"{kind}/marker")

    leftmost = [
        ('rm', [((X, a1, b1), EMPTY, (RM,), (a2,)) for a1, b1, a2 in expand_schema([N, D1, N])]),
        ('rm1', [((RM, a1, a2, b1), EMPTY, (RM,), (a3,)) for a1, a2, b1, a3 in expand_schema([N, N, D2, N])]),
        ('rm2', [((RM, a1, b1), EMPTY, (RM,), (a2, b2, b1x))
                 for a1, b1, a2, b2, b1x in expand_schema([N, D2, N, D1, D2], equal=[(1, 4)])]),
        ('rm3', [((RM, a1, b1), EMPTY, (RM,), (a2, a3))
                 for a1, b1, a2, a3 in expand_schema([N, D1, N, N + D1 + D2])]),
        ('rm4', [((RM, a1, b1, b2), EMPTY, (RM,), (a2, b2x))
                 for a1, b1, b2, a2, b2x in expand_schema([N, D1, D2, N, D2], equal=[(2, 4)])]),
        ('rm5', [((RM, a1, b1, b2), EMPTY, (RM,), (a2, a3, b2x))
                 for a1, b1, b2, a2, a3, b2x in expand_schema([N, D1, D2, N, D1, D2], equal=[(2, 5)])]),
        ('rm6', [((RM, a1, b1), EMPTY, (RM,), (a2, a3))
                 for a1, b1, a2, a3 in expand_schema([N, D2, N, N + D1 + D3 + D4])]),
    ]
    for name, instances in leftmost:
        builder.schema(label(name), instances, 'leftmost', f"leftmost/{name}")

    if not settings.KURODA_WIDE_CONTEXT:
        builder.notes.append(five_note)
    builder.notes.append("binary variant 5 has no trailing Y in its right context")


def compile_kuroda_sz(g: Grammar) -> CompilationOutput:
    _require_form(g, NormalForm.KURODA)
    builder = _SystemBuilder(g.name or 'kuroda-sz', Mode.SZILARD)
    _kuroda_rules(g, builder, control=False)
    declared = SystemType(5 if settings.KURODA_WIDE_CONTEXT else 4, 2)
    return builder.build('kuroda-sz', declared, with_hom=True)


def compile_kuroda_cl(g: Grammar) -> CompilationOutput:
    """終端規則的標籤為其字母，其他規則為 λ"""
    _require_form(g, NormalForm.KURODA)
    builder = _SystemBuilder(g.name or 'kuroda-cl', Mode.CONTROL)
    _kuroda_rules(g, builder, control=True)
    declared = SystemType(5 if settings.KURODA_WIDE_CONTEXT else 4, 2)
    return builder.build('kuroda-cl', declared, with_hom=False)


# ---------------------------------------------------------------------------
# Greibach 正規形
# ---------------------------------------------------------------------------


def rename_terminals(g: Grammar) -> Tuple[Grammar, Dict[str, str]]:
    """
    每條產生式開頭的終端符號換成帶編號的 a_1, a_2 ...（每個字母各自計數），
    回傳新文法與「新符號 → 原字母」對照表
    """
    counters: Dict[str, int] = {}
    base: Dict[str, str] = {}
    productions = []
    for p in g.productions:
        letter = p.rhs[0]
        counters[letter] = counters.get(letter, 0) + 1
        renamed = f"{letter}_{counters[letter]}"
        if renamed in g.nonterminals or renamed in g.terminals:
            raise CompilationError(f"gnf-cl: renamed terminal '{renamed}' clashes with a grammar symbol")
        base[renamed] = letter
        productions.append(Production(p.lhs, (renamed,) + p.rhs[1:], p.label))
    renamed_grammar = Grammar(
        nonterminals=g.nonterminals,
        terminals=frozenset(base),
        start=g.start,
        productions=tuple(productions),
        name=g.name,
    )
    return renamed_grammar, base


def compile_gnf_cl(g: Grammar) -> CompilationOutput:
    _require_form(g, NormalForm.GNF)
    renamed, base = rename_terminals(g)
    markers = {t: f"Y{t}" for t in base}
    _check_reserved(g, {X, Y} | set(markers.values()), 'gnf-cl')
    clash = sorted(set(base.values()) & ({X, Y} | set(markers.values()) | g.nonterminals))
    if clash:
        raise CompilationError(f"gnf-cl: terminals clash with generated symbols: {' '.join(clash)}")

    N = sorted(g.nonterminals)
    all_markers = [markers[p.rhs[0]] for p in renamed.productions]
    builder = _SystemBuilder(g.name or 'gnf-cl', Mode.CONTROL)
    builder.axiom((X, g.start, Y), 'start', 'start')

    for p in renamed.productions:
        A = p.lhs[0]
        marker = markers[p.rhs[0]]
        letter = base[p.rhs[0]]
        tail = p.rhs[1:]
        builder.axiom((marker,) + tail, p.label, 'gnf')
        if tail:
            gamma, delta = (marker,), (tail[-1],)
        else:
            gamma, delta = EMPTY, (marker,)
        if A == g.start:
            builder.schema(letter, [((X, A), gamma, delta, (Y,))], p.label, 'gnf/start')
        builder.schema(letter,
                       [((m, A), gamma, delta, (a2,)) for m, a2 in expand_schema([all_markers, N + [Y]])],
                       p.label, 'gnf/inner')
    return builder.build('gnf-cl', SystemType(2, 2), with_hom=False)


# ---------------------------------------------------------------------------
# 固定系統與分派
# ---------------------------------------------------------------------------


def aa_system() -> LabeledFlatSplicingSystem:
    """Szilard 語言恰為 {a a} 的系統"""
    system = FlatSplicingSystem(
        alphabet=frozenset({'S', 'Y', 'Xa'}),
        initial=InitialSet.finite(['S Y S Y', 'Xa']),
        rules=(FlatSplicingRule(('S',), EMPTY, ('Xa',), ('Y',)),),
        name='aa',
    )
    return LabeledFlatSplicingSystem(system, ('a',), Mode.SZILARD)


TARGETS: Dict[str, Tuple[Callable[[Grammar], CompilationOutput], NormalForm]] = {
    'reg-sz': (compile_reg_sz, NormalForm.RIGHT_LINEAR),
    'cnf-sz': (compile_cnf_sz, NormalForm.CNF),
    'kuroda-sz': (compile_kuroda_sz, NormalForm.KURODA),
    'reg-cl': (compile_reg_cl, NormalForm.RIGHT_LINEAR),
    'gnf-cl': (compile_gnf_cl, NormalForm.GNF),
    'kuroda-cl': (compile_kuroda_cl, NormalForm.KURODA),
}


def compile_grammar(g: Grammar, target: str) -> CompilationOutput:
    if target not in TARGETS:
        raise CompilationError(f"unknown target '{target}' (expected one of: {', '.join(TARGETS)})")
    compiler, _ = TARGETS[target]
    return compiler(g)
