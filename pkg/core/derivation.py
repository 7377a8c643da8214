"""
帶標籤的 flat splicing 系統與終止推導 (terminal derivation) 搜尋

推導的每一步都以「目前字詞」為第一個運算元，partner 一律取自初始集合 I。
推導至少一步；最後的字詞上沒有可套用的規則時才算終止。

搜尋以 (字詞, 剩餘步數) 記憶化：同一個字詞在同樣的預算下只展開一次，
預算用完但仍可套用規則的字詞計入 truncated 統計。
"""
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, FrozenSet, List, Mapping, Optional, Sequence, Tuple
import logging

import config.settings as settings
from core.errors import InvalidSystemError, ModeMismatchError, SpliceError
from core.splicing import (
    FlatSplicingSystem, apply_rule, applicable, match_sites, partner_matches,
)
from core.words import Word, canonical_key, show_word
from utils.memory import MemoryGuard

LAMBDA_TOKEN = 'lambda'

Label = Optional[str]          # None 代表 λ
LabelWord = Tuple[str, ...]


class Mode(Enum):
    SZILARD = 'szilard'
    CONTROL = 'control'


@dataclass(frozen=True)
class LabeledFlatSplicingSystem:
    system: FlatSplicingSystem
    labels: Tuple[Label, ...]
    mode: Mode = Mode.SZILARD

    def __post_init__(self):
        object.__setattr__(self, 'labels', tuple(self.labels))
        if len(self.labels) != len(self.system.rules):
            raise InvalidSystemError(
                f"{len(self.system.rules)} rules but {len(self.labels)} labels")

        named = [label for label in self.labels if label is not None]
        clash = sorted(set(named) & self.system.alphabet)
        if clash:
            raise InvalidSystemError(f"labels also used as alphabet symbols: {' '.join(clash)}")
        if LAMBDA_TOKEN in named:
            raise InvalidSystemError(f"'{LAMBDA_TOKEN}' is reserved for the empty label")

        if self.mode is Mode.SZILARD:
            if len(named) != len(self.labels):
                raise InvalidSystemError("szilard mode does not allow the empty label")
            seen = set()
            for label in named:
                if label in seen:
                    raise InvalidSystemError(f"szilard mode needs distinct labels, '{label}' is repeated")
                seen.add(label)

    @property
    def rules(self):
        return self.system.rules

    @property
    def initial(self):
        return self.system.initial

    @property
    def alphabet(self):
        return self.system.alphabet

    @property
    def name(self):
        return self.system.name

    def label_set(self) -> FrozenSet[str]:
        return frozenset(label for label in self.labels if label is not None)

    def rules_by_label(self) -> Dict[Label, List[int]]:
        table: Dict[Label, List[int]] = {}
        for index, label in enumerate(self.labels):
            table.setdefault(label, []).append(index)
        return table

    def show_label(self, rule_index: int) -> str:
        label = self.labels[rule_index]
        return LAMBDA_TOKEN if label is None else label


@dataclass(frozen=True)
class DerivationStep:
    before: Word
    partner: Word
    rule_index: int
    site: int
    after: Word


@dataclass(frozen=True)
class Derivation:
    start: Word
    steps: Tuple[DerivationStep, ...]
    terminal: bool = True

    @property
    def final(self) -> Word:
        return self.steps[-1].after if self.steps else self.start

    def __len__(self):
        return len(self.steps)

    def rule_indices(self) -> Tuple[int, ...]:
        return tuple(step.rule_index for step in self.steps)

    def label_word(self, lsys: LabeledFlatSplicingSystem) -> LabelWord:
        """λ 步驟不產生字母"""
        return tuple(lsys.labels[i] for i in self.rule_indices() if lsys.labels[i] is not None)

    def sort_key(self):
        return (canonical_key(self.start),
                tuple((s.rule_index, s.site, canonical_key(s.partner)) for s in self.steps))


@dataclass
class EnumerationResult:
    derivations: List[Derivation]
    truncated: int
    max_steps: int
    partner_len_bound: int
    starved: int = 0

    def label_words(self, lsys: LabeledFlatSplicingSystem) -> set:
        return {d.label_word(lsys) for d in self.derivations}


@dataclass
class LabelSlice:
    """
    有界的標籤字詞集合 (或其同態像)，附帶產生它的上限與截斷統計
    """
    words: set
    truncated: int
    max_steps: int
    partner_len_bound: int
    max_len: Optional[int] = None
    starved: int = 0

    @property
    def complete(self) -> bool:
        return self.truncated == 0 and self.starved == 0


def _resolve_bound(partner_len_bound: Optional[int]) -> int:
    bound = settings.DEFAULT_PARTNER_LEN_BOUND if partner_len_bound is None else partner_len_bound
    if bound < 1:
        raise ValueError("partner_len_bound must be >= 1")
    return bound


def _require_mode(lsys: LabeledFlatSplicingSystem, mode: Mode, operation: str):
    if lsys.mode is not mode:
        raise ModeMismatchError(f"{operation} needs a {mode.value} system, got a {lsys.mode.value} system")


def step_options(lsys: LabeledFlatSplicingSystem, current: Sequence[str],
                 partner_len_bound: Optional[int] = None) -> List[DerivationStep]:
    """
    目前字詞上所有合法的 (規則, partner, 缺口) 組合，依 (rule_index, site, partner) 排序
    """
    bound = _resolve_bound(partner_len_bound)
    current = tuple(current)
    options = []
    for rule_index, rule in enumerate(lsys.rules):
        if not lsys.system.rules_with_partner[rule_index]:
            continue
        sites = match_sites(current, rule)
        if not sites:
            continue
        partners = lsys.initial.partners_for(rule, bound)
        for site in sites:
            for partner in partners:
                options.append(DerivationStep(
                    before=current,
                    partner=partner,
                    rule_index=rule_index,
                    site=site,
                    after=current[:site] + partner + current[site:],
                ))
    return options


class _DerivationSearch:
    """
    記憶化的深度優先搜尋。contribution(rule_index) 決定每一步貢獻的字母
    (Szilard 標籤、去掉 λ 的控制標籤，或同態像)
    """

    def __init__(self, lsys: LabeledFlatSplicingSystem, partner_len_bound: int,
                 contribution: Optional[Callable[[int], Word]] = None, max_len: Optional[int] = None):
        self.lsys = lsys
        self.bound = partner_len_bound
        self.contribution = contribution
        self.max_len = max_len
        self.truncated: set = set()
        self.starved: set = set()
        self._options: Dict[Word, List[DerivationStep]] = {}
        self._terminal: Dict[Word, bool] = {}
        self._alive: Dict[Tuple[Word, int], bool] = {}
        self._suffixes: Dict[Tuple[Word, int, Optional[int]], FrozenSet[Word]] = {}
        self.guard = MemoryGuard("derivation search")

    def options(self, word: Word) -> List[DerivationStep]:
        if word not in self._options:
            self.guard.tick()
            self._options[word] = step_options(self.lsys, word, self.bound)
        return self._options[word]

    def is_terminal(self, word: Word) -> bool:
        if word not in self._terminal:
            self._terminal[word] = not applicable(self.lsys.system, word)
        return self._terminal[word]

    def _dead_end(self, word: Word, budget: int) -> bool:
        """非終止字詞在此預算下無法再走：記錄截斷或 partner 不足"""
        if budget == 0:
            self.truncated.add(word)
            return True
        if not self.options(word):
            if not self.lsys.initial.is_finite:
                self.starved.add(word)
            return True
        return False

    def alive(self, word: Word, budget: int) -> bool:
        """在 budget 步內 (可為 0 步) 能否走到終止字詞"""
        if self.is_terminal(word):
            return True
        key = (word, budget)
        if key in self._alive:
            return self._alive[key]
        if self._dead_end(word, budget):
            result = False
        else:
            # 全部展開，截斷統計才會完整
            results = [self.alive(step.after, budget - 1) for step in self.options(word)]
            result = any(results)
        self._alive[key] = result
        return result

    def suffixes(self, word: Word, budget: int, room: Optional[int] = None) -> FrozenSet[Word]:
        """
        從 word 出發、budget 步內到達終止字詞的所有貢獻序列；
        room 為還能產生的字母數 (None 表示不限)
        """
        if self.is_terminal(word):
            return frozenset({()})
        key = (word, budget, room)
        cached = self._suffixes.get(key)
        if cached is not None:
            return cached
        found = set()
        if not self._dead_end(word, budget):
            for step in self.options(word):
                head = self.contribution(step.rule_index)
                if room is not None and len(head) > room:
                    continue
                rest = None if room is None else room - len(head)
                for tail in self.suffixes(step.after, budget - 1, rest):
                    found.add(head + tail)
        result = frozenset(found)
        self._suffixes[key] = result
        return result

    def start_words(self) -> List[Word]:
        return self.lsys.initial.all_members(self.bound)

    def collect(self, max_steps: int) -> set:
        """所有至少一步的終止推導的貢獻序列"""
        words = set()
        for start in self.start_words():
            if self.is_terminal(start):
                continue
            for step in self.options(start):
                head = self.contribution(step.rule_index)
                if self.max_len is not None and len(head) > self.max_len:
                    continue
                room = None if self.max_len is None else self.max_len - len(head)
                for tail in self.suffixes(step.after, max_steps - 1, room):
                    words.add(head + tail)
        return words


def enumerate_terminal_derivations(lsys: LabeledFlatSplicingSystem, max_steps: int,
                                   partner_len_bound: Optional[int] = None) -> EnumerationResult:
    """
    列舉所有從初始字詞出發、最多 max_steps 步的終止推導 (依標準順序)
    """
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    bound = _resolve_bound(partner_len_bound)
    search = _DerivationSearch(lsys, bound)
    derivations: List[Derivation] = []

    def extend(start: Word, word: Word, budget: int, path: List[DerivationStep]):
        if path and search.is_terminal(word):
            derivations.append(Derivation(start=start, steps=tuple(path), terminal=True))
            return
        if budget == 0:
            return
        for step in search.options(word):
            if search.alive(step.after, budget - 1):
                path.append(step)
                extend(start, step.after, budget - 1, path)
                path.pop()

    for start in search.start_words():
        if search.is_terminal(start):
            continue
        search.alive(start, max_steps)
        extend(start, start, max_steps, [])

    if search.truncated:
        logging.warning(
            f"{lsys.name or 'system'}: step budget {max_steps} ran out at {len(search.truncated)} non-terminal words")
    return EnumerationResult(
        derivations=derivations,
        truncated=len(search.truncated),
        max_steps=max_steps,
        partner_len_bound=bound,
        starved=len(search.starved),
    )


def _contribution(lsys: LabeledFlatSplicingSystem, hom: Optional[Mapping[str, Word]]) -> Callable[[int], Word]:
    table = []
    for label in lsys.labels:
        if label is None:
            table.append(())
        elif hom is None:
            table.append((label,))
        else:
            table.append(tuple(hom[label]))
    return lambda rule_index: table[rule_index]


def label_words_upto(lsys: LabeledFlatSplicingSystem, max_steps: int,
                     partner_len_bound: Optional[int] = None,
                     hom: Optional[Mapping[str, Word]] = None,
                     max_len: Optional[int] = None) -> LabelSlice:
    """
    最多 max_steps 步的終止推導所產生的標籤字詞 (λ 已刪除)；給定 hom 時回傳同態像，
    給定 max_len 時只保留長度 <= max_len 的結果
    """
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    bound = _resolve_bound(partner_len_bound)
    search = _DerivationSearch(lsys, bound, _contribution(lsys, hom), max_len)
    words = search.collect(max_steps)

    if search.truncated:
        logging.warning(
            f"{lsys.name or 'system'}: step budget {max_steps} ran out at {len(search.truncated)} "
            f"non-terminal words, the slice may be incomplete")
    if search.starved:
        logging.warning(
            f"{lsys.name or 'system'}: {len(search.starved)} words had partners only longer than {bound}")
    logging.debug(f"label_words_upto: {len(words)} words, {len(search._options)} explored words")
    return LabelSlice(
        words=words,
        truncated=len(search.truncated),
        max_steps=max_steps,
        partner_len_bound=bound,
        max_len=max_len,
        starved=len(search.starved),
    )


def szilard_upto(lsys: LabeledFlatSplicingSystem, k: int, partner_len_bound: Optional[int] = None) -> set:
    _require_mode(lsys, Mode.SZILARD, "szilard_upto")
    return label_words_upto(lsys, k, partner_len_bound).words


def control_upto(lsys: LabeledFlatSplicingSystem, max_steps: int, partner_len_bound: Optional[int] = None) -> set:
    _require_mode(lsys, Mode.CONTROL, "control_upto")
    return label_words_upto(lsys, max_steps, partner_len_bound).words


def image_upto_steps(lsys: LabeledFlatSplicingSystem, hom: Mapping[str, Word], max_steps: int,
                     max_len: Optional[int] = None, partner_len_bound: Optional[int] = None) -> LabelSlice:
    """不先展開標籤字詞，直接計算同態像"""
    for label in lsys.label_set():
        hom[label]  # 缺少的標籤立即報錯
    return label_words_upto(lsys, max_steps, partner_len_bound, hom=hom, max_len=max_len)


def is_derivation_member(lsys: LabeledFlatSplicingSystem, w: Sequence[str],
                         partner_len_bound: Optional[int] = None) -> Optional[Derivation]:
    """
    找一個 Szilard 字詞恰為 w 的終止推導。標籤決定每一步的規則，partner 與缺口需要搜尋
    """
    _require_mode(lsys, Mode.SZILARD, "is_derivation_member")
    bound = _resolve_bound(partner_len_bound)
    w = tuple(w)
    if not w:
        return None
    index = {label: i for i, label in enumerate(lsys.labels)}
    if any(label not in index for label in w):
        return None

    search = _DerivationSearch(lsys, bound)
    failed = set()

    def extend(word: Word, position: int) -> Optional[List[DerivationStep]]:
        if position == len(w):
            return [] if search.is_terminal(word) else None
        if (word, position) in failed:
            return None
        search.guard.tick()
        rule_index = index[w[position]]
        for step in search.options(word):
            if step.rule_index != rule_index:
                continue
            rest = extend(step.after, position + 1)
            if rest is not None:
                return [step] + rest
        failed.add((word, position))
        return None

    for start in search.start_words():
        steps = extend(start, 0)
        if steps is not None:
            return Derivation(start=start, steps=tuple(steps), terminal=True)
    return None


def find_image_witness(lsys: LabeledFlatSplicingSystem, target: Sequence[str], max_steps: int,
                       hom: Optional[Mapping[str, Word]] = None,
                       partner_len_bound: Optional[int] = None) -> Optional[Derivation]:
    """
    找一個 max_steps 步內、(同態像) 標籤字詞等於 target 的終止推導；
    已產生的字母必須是 target 的前綴
    """
    bound = _resolve_bound(partner_len_bound)
    target = tuple(target)
    contribution = _contribution(lsys, hom)
    search = _DerivationSearch(lsys, bound, contribution)
    failed = set()

    def extend(word: Word, position: int, budget: int, first: bool) -> Optional[List[DerivationStep]]:
        if not first and search.is_terminal(word):
            return [] if position == len(target) else None
        if budget == 0 or (word, position, budget) in failed:
            return None
        for step in search.options(word):
            head = contribution(step.rule_index)
            if target[position:position + len(head)] != head:
                continue
            rest = extend(step.after, position + len(head), budget - 1, False)
            if rest is not None:
                return [step] + rest
        failed.add((word, position, budget))
        return None

    for start in search.start_words():
        if search.is_terminal(start):
            continue
        steps = extend(start, 0, max_steps, True)
        if steps is not None:
            return Derivation(start=start, steps=tuple(steps), terminal=True)
    return None


def replay(lsys: LabeledFlatSplicingSystem, derivation: Derivation) -> Word:
    """
    逐步重算推導並檢查終止性，回傳最後的字詞；任何不一致都拋出 SpliceError
    """
    if not lsys.initial.contains(derivation.start):
        raise SpliceError(f"start word '{show_word(derivation.start)}' is not in the initial set")
    current = derivation.start
    for number, step in enumerate(derivation.steps, start=1):
        if step.before != current:
            raise SpliceError(f"step {number} starts from '{show_word(step.before)}', "
                              f"expected '{show_word(current)}'")
        if not lsys.initial.contains(step.partner):
            raise SpliceError(f"step {number}: partner '{show_word(step.partner)}' is not in the initial set")
        rule = lsys.rules[step.rule_index]
        if not partner_matches(step.partner, rule):
            raise SpliceError(f"step {number}: '{show_word(step.partner)}' is not a partner of <{rule}>")
        after = apply_rule(current, step.site, step.partner, rule)
        if after != step.after:
            raise SpliceError(f"step {number} produces '{show_word(after)}', "
                              f"recorded '{show_word(step.after)}'")
        current = after
    if derivation.terminal and applicable(lsys.system, current):
        raise SpliceError(f"final word '{show_word(current)}' is not terminal")
    return current
