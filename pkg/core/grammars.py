"""
文法、正規形檢查、有界語言 oracle 與 CNF 轉換

oracle 是所有編譯器測試的獨立基準：
- context-free 文法：以 (非終端符號, 字詞) 做由下而上的不動點，長度 <= k 時是精確結果
- 其他文法：以長度上限 sentential_bound 對句型做廣度優先搜尋，結果是下界近似
"""
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple
import logging

import config.settings as settings
from core.errors import GrammarError
from core.words import Word, show_word
from utils.memory import MemoryGuard


class NormalForm(Enum):
    RIGHT_LINEAR = 'rightlinear'
    CNF = 'cnf'
    GNF = 'gnf'
    KURODA = 'kuroda'
    CF = 'cf'
    TYPE0 = 'type0'

    @classmethod
    def parse(cls, text: str) -> 'NormalForm':
        for form in cls:
            if form.value == text.lower():
                return form
        raise GrammarError(f"unknown grammar form '{text}' (expected one of: {', '.join(f.value for f in cls)})")


@dataclass(frozen=True)
class Production:
    lhs: Word
    rhs: Word
    label: str

    def __post_init__(self):
        object.__setattr__(self, 'lhs', tuple(self.lhs))
        object.__setattr__(self, 'rhs', tuple(self.rhs))
        if not self.lhs:
            raise GrammarError(f"production {self.label} has an empty left-hand side")

    def __str__(self):
        return f"{self.label}: {show_word(self.lhs)} -> {show_word(self.rhs)}"


@dataclass(frozen=True)
class Grammar:
    nonterminals: FrozenSet[str]
    terminals: FrozenSet[str]
    start: str
    productions: Tuple[Production, ...]
    name: str = field(default='', compare=False)

    def __post_init__(self):
        object.__setattr__(self, 'nonterminals', frozenset(self.nonterminals))
        object.__setattr__(self, 'terminals', frozenset(self.terminals))
        object.__setattr__(self, 'productions', tuple(self.productions))

        overlap = self.nonterminals & self.terminals
        if overlap:
            raise GrammarError(f"symbols are both terminal and nonterminal: {' '.join(sorted(overlap))}")
        if self.start not in self.nonterminals:
            raise GrammarError(f"start symbol '{self.start}' is not a nonterminal")

        symbols = self.nonterminals | self.terminals
        labels = set()
        for production in self.productions:
            if production.label in labels:
                raise GrammarError(f"duplicate production label '{production.label}'")
            labels.add(production.label)
            unknown = (set(production.lhs) | set(production.rhs)) - symbols
            if unknown:
                raise GrammarError(f"{production} uses undeclared symbols: {' '.join(sorted(unknown))}")
            if not any(s in self.nonterminals for s in production.lhs):
                raise GrammarError(f"{production} has no nonterminal on the left-hand side")

    def is_context_free(self) -> bool:
        return all(len(p.lhs) == 1 for p in self.productions)

    def productions_for(self, nonterminal: str) -> List[Production]:
        return [p for p in self.productions if p.lhs == (nonterminal,)]

    def by_label(self) -> Dict[str, Production]:
        return {p.label: p for p in self.productions}

    def is_terminal_word(self, word: Sequence[str]) -> bool:
        return all(symbol in self.terminals for symbol in word)


@dataclass(frozen=True)
class FormViolation:
    production: Production
    reason: str

    def __str__(self):
        return f"{self.production} ({self.reason})"


def _check_production(g: Grammar, p: Production, form: NormalForm) -> Optional[str]:
    N, T = g.nonterminals, g.terminals
    lhs, rhs = p.lhs, p.rhs
    single = len(lhs) == 1 and lhs[0] in N

    if form is NormalForm.TYPE0:
        return None
    if form is NormalForm.CF:
        return None if single else "left-hand side must be one nonterminal"

    if form is NormalForm.KURODA:
        if len(lhs) == 2 and all(s in N for s in lhs):
            if len(rhs) == 2 and all(s in N for s in rhs):
                return None
            return "AB must rewrite to CD"
        if not single:
            return "left-hand side must be A or AB"
        if len(rhs) == 2 and all(s in N for s in rhs):
            return None
        if len(rhs) == 1 and rhs[0] in T:
            return None
        if not rhs:
            return None
        return "expected A -> BC, A -> a or A -> eps"

    if not single:
        return "left-hand side must be one nonterminal"

    if form is NormalForm.RIGHT_LINEAR:
        if len(rhs) == 1 and rhs[0] in T:
            return None
        if len(rhs) == 2 and rhs[0] in T and rhs[1] in N:
            return None
        return "expected A -> a B or A -> a"

    if form is NormalForm.CNF:
        if len(rhs) == 2 and all(s in N for s in rhs):
            return None
        if len(rhs) == 1 and rhs[0] in T:
            return None
        return "expected A -> B C or A -> a"

    if form is NormalForm.GNF:
        if rhs and rhs[0] in T and all(s in N for s in rhs[1:]):
            return None
        return "expected A -> a followed by nonterminals"

    raise GrammarError(f"unsupported form {form}")


def validate_form(g: Grammar, form: NormalForm) -> List[FormViolation]:
    """每條不符合正規形的產生式都會列出"""
    violations = []
    for production in g.productions:
        reason = _check_production(g, production, form)
        if reason is not None:
            violations.append(FormViolation(production, reason))
    return violations


# ---------------------------------------------------------------------------
# oracle
# ---------------------------------------------------------------------------

Step = Tuple[str, int]      # (production label, 改寫位置)


@dataclass
class LanguageSlice:
    words: set
    complete: bool
    k: int
    sentential_bound: Optional[int] = None
    witnesses: Dict[Word, Tuple[Step, ...]] = field(default_factory=dict)


def _tree_to_steps(tree) -> Tuple[Step, ...]:
    """把推導樹轉成最左推導：每一步改寫的位置等於左邊已產生的終端符號數"""
    steps: List[Step] = []
    emitted = 0

    def visit(node):
        nonlocal emitted
        production, children = node
        steps.append((production.label, emitted))
        for child in children:
            if isinstance(child, str):
                emitted += 1
            else:
                visit(child)

    visit(tree)
    return tuple(steps)


def _context_free_slice(g: Grammar, k: int) -> LanguageSlice:
    # derived[A][w] = 一棵以 A 為根、產生 w 的推導樹
    derived: Dict[str, Dict[Word, tuple]] = {A: {} for A in g.nonterminals}
    guard = MemoryGuard("grammar oracle")

    changed = True
    while changed:
        changed = False
        for production in g.productions:
            partial: Dict[Word, list] = {(): []}
            for symbol in production.rhs:
                extended: Dict[Word, list] = {}
                if symbol in g.terminals:
                    choices = {(symbol,): symbol}
                else:
                    choices = {w: tree for w, tree in derived[symbol].items()}
                for prefix, children in partial.items():
                    for piece, child in choices.items():
                        word = prefix + piece
                        if len(word) <= k and word not in extended:
                            extended[word] = children + [child]
                partial = extended
                if not partial:
                    break
            target = derived[production.lhs[0]]
            for word, children in partial.items():
                if word not in target:
                    guard.tick()
                    target[word] = (production, children)
                    changed = True

    found = derived[g.start]
    return LanguageSlice(
        words=set(found),
        complete=True,
        k=k,
        witnesses={w: _tree_to_steps(tree) for w, tree in found.items()},
    )


def _sentential_slice(g: Grammar, k: int, bound: int) -> LanguageSlice:
    start = (g.start,)
    parent: Dict[Word, Optional[Tuple[Word, Step]]] = {start: None}
    queue = deque([start])
    pruned = False
    guard = MemoryGuard("grammar oracle")

    while queue:
        form = queue.popleft()
        for production in g.productions:
            width = len(production.lhs)
            for position in range(len(form) - width + 1):
                if form[position:position + width] != production.lhs:
                    continue
                result = form[:position] + production.rhs + form[position + width:]
                if len(result) > bound:
                    pruned = True
                    continue
                if result in parent:
                    continue
                guard.tick()
                parent[result] = (form, (production.label, position))
                queue.append(result)

    words = {form for form in parent if len(form) <= k and g.is_terminal_word(form)}
    witnesses = {}
    for word in words:
        steps = []
        current = word
        while parent[current] is not None:
            previous, step = parent[current]
            steps.append(step)
            current = previous
        witnesses[word] = tuple(reversed(steps))

    if pruned:
        logging.warning(f"grammar {g.name or g.start}: sentential forms longer than {bound} were pruned, "
                        f"the slice at k={k} is a lower approximation")
    return LanguageSlice(words=words, complete=not pruned, k=k, sentential_bound=bound, witnesses=witnesses)


def grammar_language_upto(g: Grammar, k: int, sentential_bound: Optional[int] = None) -> LanguageSlice:
    """
    長度 <= k 的 L(G)。context-free 文法結果精確；其他文法在 sentential_bound 內搜尋
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if g.is_context_free():
        return _context_free_slice(g, k)
    bound = settings.DEFAULT_SENTENTIAL_BOUND if sentential_bound is None else sentential_bound
    return _sentential_slice(g, k, max(bound, k))


def replay_derivation(g: Grammar, steps: Sequence[Step]) -> Word:
    """從起始符號依序套用 (label, position)，回傳最後的句型"""
    productions = g.by_label()
    form: Word = (g.start,)
    for number, (label, position) in enumerate(steps, start=1):
        production = productions.get(label)
        if production is None:
            raise GrammarError(f"step {number}: unknown production '{label}'")
        width = len(production.lhs)
        if form[position:position + width] != production.lhs:
            raise GrammarError(f"step {number}: {production} does not match '{show_word(form)}' at {position}")
        form = form[:position] + production.rhs + form[position + width:]
    return form


# ---------------------------------------------------------------------------
# CNF 轉換 (START, TERM, BIN, DEL, UNIT, 再移除無用符號)
# ---------------------------------------------------------------------------


class _Names:
    def __init__(self, taken):
        self.taken = set(taken)

    def fresh(self, base: str) -> str:
        if base not in self.taken:
            self.taken.add(base)
            return base
        index = 1
        while f"{base}_{index}" in self.taken:
            index += 1
        name = f"{base}_{index}"
        self.taken.add(name)
        return name


def _unique(pairs):
    seen = set()
    ordered = []
    for pair in pairs:
        if pair not in seen:
            seen.add(pair)
            ordered.append(pair)
    return ordered


def _nullable(pairs) -> set:
    nullable = set()
    changed = True
    while changed:
        changed = False
        for lhs, rhs in pairs:
            if lhs not in nullable and all(s in nullable for s in rhs):
                nullable.add(lhs)
                changed = True
    return nullable


def to_cnf(g: Grammar) -> Grammar:
    """
    context-free 文法轉成 Chomsky 正規形，ε 以外的語言不變
    """
    if not g.is_context_free():
        raise GrammarError("to_cnf needs a context-free grammar")

    names = _Names(g.nonterminals | g.terminals)
    N = set(g.nonterminals)
    T = g.terminals
    pairs = [(p.lhs[0], p.rhs) for p in g.productions]

    # START
    start = g.start
    if any(start in rhs for _, rhs in pairs):
        start = names.fresh(f"{g.start}0")
        N.add(start)
        pairs.insert(0, (start, (g.start,)))

    # TERM
    term_for: Dict[str, str] = {}
    replaced = []
    for lhs, rhs in pairs:
        if len(rhs) >= 2:
            new_rhs = []
            for s in rhs:
                if s in T:
                    if s not in term_for:
                        term_for[s] = names.fresh(f"T{s}")
                    new_rhs.append(term_for[s])
                else:
                    new_rhs.append(s)
            rhs = tuple(new_rhs)
        replaced.append((lhs, rhs))
    for terminal, helper in term_for.items():
        N.add(helper)
        replaced.append((helper, (terminal,)))
    pairs = replaced

    # BIN
    binary = []
    for lhs, rhs in pairs:
        current = lhs
        while len(rhs) > 2:
            helper = names.fresh(lhs)
            N.add(helper)
            binary.append((current, (rhs[0], helper)))
            current, rhs = helper, rhs[1:]
        binary.append((current, rhs))
    pairs = _unique(binary)

    # DEL
    nullable = _nullable(pairs)
    expanded = []
    for lhs, rhs in pairs:
        variants = [()]
        for s in rhs:
            variants = [v + (s,) for v in variants] + ([v for v in variants] if s in nullable else [])
        for variant in variants:
            if variant:
                expanded.append((lhs, variant))
    pairs = _unique(expanded)

    # UNIT
    unit_reach = {A: {A} for A in N}
    changed = True
    while changed:
        changed = False
        for lhs, rhs in pairs:
            if len(rhs) == 1 and rhs[0] in N:
                for A in N:
                    if lhs in unit_reach[A] and rhs[0] not in unit_reach[A]:
                        unit_reach[A].add(rhs[0])
                        changed = True
    lifted = []
    for A in dict.fromkeys(lhs for lhs, _ in pairs):
        for lhs, rhs in pairs:
            if lhs in unit_reach.get(A, ()) and not (len(rhs) == 1 and rhs[0] in N):
                lifted.append((A, rhs))
    pairs = _unique(lifted)

    # 移除無法產生終端字詞的符號
    generating = set()
    changed = True
    while changed:
        changed = False
        for lhs, rhs in pairs:
            if lhs not in generating and all(s in T or s in generating for s in rhs):
                generating.add(lhs)
                changed = True
    pairs = [(lhs, rhs) for lhs, rhs in pairs
             if lhs in generating and all(s in T or s in generating for s in rhs)]

    # 移除無法從起始符號到達的符號
    reachable = {start}
    changed = True
    while changed:
        changed = False
        for lhs, rhs in pairs:
            if lhs in reachable:
                for s in rhs:
                    if s in N and s not in reachable:
                        reachable.add(s)
                        changed = True
    pairs = [(lhs, rhs) for lhs, rhs in pairs if lhs in reachable]

    productions = tuple(Production((lhs,), rhs, f"r{i}") for i, (lhs, rhs) in enumerate(pairs, start=1))
    used = {start} | {lhs for lhs, _ in pairs}
    used_terminals = {s for _, rhs in pairs for s in rhs if s in T}
    logging.debug(f"to_cnf: {len(g.productions)} -> {len(productions)} productions")
    return Grammar(
        nonterminals=frozenset(used),
        terminals=frozenset(used_terminals) or g.terminals,
        start=start,
        productions=productions,
        name=f"{g.name}-cnf" if g.name else '',
    )


def grammar_symbols_sorted(g: Grammar) -> List[str]:
    """起始符號在前，其餘依名稱排序"""
    return [g.start] + sorted(g.nonterminals - {g.start})