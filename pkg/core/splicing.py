"""
Flat splicing：規則、剪接運算、系統定義、(m,n) 型別與閉包

規則 <α | γ-δ | β> 把 partner v = γzδ 整個插入 u = xα.βy 的缺口，得到 xα·v·βy。
缺口 i 代表插在 u[i-1] 與 u[i] 之間 (0 <= i <= |u|)。
"""
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import FrozenSet, Optional, Sequence, Tuple
import logging

import config.settings as settings
from core.errors import InvalidRuleError, InvalidSystemError, SpliceError
from core.regular import RegularSet
from core.words import (
    Word, canonical_key, canonical_sorted, is_prefix, is_suffix, parse_word, show_word,
)
from utils.memory import MemoryGuard

PARTNER_MODE = 'partner'
CONTEXT_ONLY_MODE = 'context-only'
APPLICABILITY_MODES = (PARTNER_MODE, CONTEXT_ONLY_MODE)


@dataclass(frozen=True)
class FlatSplicingRule:
    alpha: Word
    gamma: Word
    delta: Word
    beta: Word

    def __post_init__(self):
        for name in ('alpha', 'gamma', 'delta', 'beta'):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        if len(self.gamma) > 1:
            raise InvalidRuleError("gamma too long")
        if len(self.delta) > 1:
            raise InvalidRuleError("delta too long")

    @classmethod
    def parse(cls, text: str) -> 'FlatSplicingRule':
        """
        解析 `α | γ - δ | β`，各部分以 `eps` 表示 ε
        """
        parts = text.split('|')
        if len(parts) != 3:
            raise InvalidRuleError(f"rule must look like 'alpha | gamma - delta | beta': {text!r}")
        middle = parts[1].split()
        if middle.count('-') != 1:
            raise InvalidRuleError(f"rule needs exactly one '-' between gamma and delta: {text!r}")
        cut = middle.index('-')
        return cls(
            alpha=parse_word(parts[0]),
            gamma=parse_word(' '.join(middle[:cut])),
            delta=parse_word(' '.join(middle[cut + 1:])),
            beta=parse_word(parts[2]),
        )

    @property
    def context_width(self) -> int:
        return max(len(self.alpha), len(self.beta))

    @property
    def insertion_width(self) -> int:
        return len(self.gamma) + len(self.delta)

    def symbols(self) -> set:
        return set(self.alpha) | set(self.gamma) | set(self.delta) | set(self.beta)

    def __str__(self):
        return (f"{show_word(self.alpha)} | {show_word(self.gamma)} - "
                f"{show_word(self.delta)} | {show_word(self.beta)}")


def match_sites(u: Sequence[str], rule: FlatSplicingRule) -> list:
    """所有 α 是 u[:i] 後綴且 β 是 u[i:] 前綴的缺口 i，遞增排列"""
    u = tuple(u)
    sites = []
    low = len(rule.alpha)
    high = len(u) - len(rule.beta)
    for i in range(low, high + 1):
        if u[i - low:i] == rule.alpha and u[i:i + len(rule.beta)] == rule.beta:
            sites.append(i)
    return sites


def partner_matches(v: Sequence[str], rule: FlatSplicingRule) -> bool:
    # γ 與 δ 不可重疊
    return (len(v) >= 1
            and len(v) >= rule.insertion_width
            and is_prefix(rule.gamma, v)
            and is_suffix(rule.delta, v))


def apply_rule(u: Sequence[str], site: int, v: Sequence[str], rule: FlatSplicingRule) -> Word:
    u, v = tuple(u), tuple(v)
    if site not in match_sites(u, rule):
        raise SpliceError(f"site {site} is not a match site of <{rule}> in '{show_word(u)}'")
    if not partner_matches(v, rule):
        raise SpliceError(f"'{show_word(v)}' is not a partner of <{rule}>")
    return u[:site] + v + u[site:]


def splice(u: Sequence[str], v: Sequence[str], rule: FlatSplicingRule) -> set:
    u, v = tuple(u), tuple(v)
    if not partner_matches(v, rule):
        return set()
    return {u[:i] + v + u[i:] for i in match_sites(u, rule)}


@lru_cache(maxsize=64)
def _regular_members(regular: RegularSet, max_len: int) -> Tuple[Word, ...]:
    return tuple(canonical_sorted(regular.enumerate_upto(max_len)))


@dataclass(frozen=True)
class InitialSet:
    """有限集合 (words) 或正規集合 (regular)，兩者擇一"""
    words: Optional[FrozenSet[Word]] = None
    regular: Optional[RegularSet] = None

    def __post_init__(self):
        if (self.words is None) == (self.regular is None):
            raise InvalidSystemError("initial set must be either finite or regular")
        if self.words is not None:
            object.__setattr__(self, 'words', frozenset(tuple(w) for w in self.words))
            if any(len(w) == 0 for w in self.words):
                raise InvalidSystemError("initial words must be nonempty")
        elif self.regular.contains(()):
            raise InvalidSystemError(f"regular initial set '{self.regular}' contains the empty word")

    @classmethod
    def finite(cls, words) -> 'InitialSet':
        return cls(words=frozenset(parse_word(w) for w in words))

    @classmethod
    def from_regular(cls, regular: RegularSet) -> 'InitialSet':
        return cls(regular=regular)

    @property
    def is_finite(self) -> bool:
        return self.words is not None

    def symbols(self) -> set:
        if self.is_finite:
            return set().union(*self.words) if self.words else set()
        return set(self.regular.alphabet)

    def contains(self, word: Sequence[str]) -> bool:
        if self.is_finite:
            return tuple(word) in self.words
        return self.regular.contains(tuple(word))

    def members_upto(self, max_len: int) -> list:
        if self.is_finite:
            return canonical_sorted(w for w in self.words if len(w) <= max_len)
        return list(_regular_members(self.regular, max_len))

    def all_members(self, bound: int) -> list:
        """有限集合回傳全部；正規集合回傳長度 <= bound 的成員"""
        if self.is_finite:
            return canonical_sorted(self.words)
        return self.members_upto(bound)

    def has_partner(self, rule: FlatSplicingRule) -> bool:
        if self.is_finite:
            return any(partner_matches(v, rule) for v in self.words)
        return self.regular.has_member_with(rule.gamma, rule.delta, max(1, rule.insertion_width))

    def partners_for(self, rule: FlatSplicingRule, bound: int) -> list:
        if self.is_finite:
            return canonical_sorted(v for v in self.words if partner_matches(v, rule))
        return [v for v in _regular_members(self.regular, bound) if partner_matches(v, rule)]

    def describe(self) -> str:
        if self.is_finite:
            return '{' + ', '.join(show_word(w) for w in canonical_sorted(self.words)) + '}'
        return f"pattern '{self.regular}'"


@dataclass(frozen=True)
class SystemType:
    m: int
    n: int

    def __str__(self):
        return f"({self.m},{self.n})"

    def within(self, other: 'SystemType') -> bool:
        return self.m <= other.m and self.n <= other.n


@dataclass(frozen=True)
class FlatSplicingSystem:
    alphabet: FrozenSet[str]
    initial: InitialSet
    rules: Tuple[FlatSplicingRule, ...] = ()
    name: str = field(default='', compare=False)

    def __post_init__(self):
        object.__setattr__(self, 'alphabet', frozenset(self.alphabet))
        object.__setattr__(self, 'rules', tuple(self.rules))
        for index, rule in enumerate(self.rules):
            missing = rule.symbols() - self.alphabet
            if missing:
                raise InvalidSystemError(
                    f"rule {index + 1} <{rule}> uses symbols outside the alphabet: {' '.join(sorted(missing))}")
        missing = self.initial.symbols() - self.alphabet
        if missing:
            raise InvalidSystemError(
                f"initial set uses symbols outside the alphabet: {' '.join(sorted(missing))}")

    @cached_property
    def rules_with_partner(self) -> Tuple[bool, ...]:
        """每條規則在初始集合中是否存在 partner (與長度上限無關，正規集合也是精確判斷)"""
        return tuple(self.initial.has_partner(rule) for rule in self.rules)


def system_type(system: FlatSplicingSystem) -> SystemType:
    if not system.rules:
        return SystemType(0, 0)
    return SystemType(
        m=max(rule.context_width for rule in system.rules),
        n=max(rule.insertion_width for rule in system.rules),
    )


def is_alphabetic(system: FlatSplicingSystem) -> bool:
    """每個 handle 都是單一字母或 ε"""
    return all(len(part) <= 1
               for rule in system.rules
               for part in (rule.alpha, rule.gamma, rule.delta, rule.beta))


def applicable(system: FlatSplicingSystem, u: Sequence[str], partner_len_bound: Optional[int] = None,
               mode: Optional[str] = None) -> bool:
    """
    是否有規則可套用在 u 上。partner 模式 (預設) 同時要求初始集合中存在 partner；
    正規集合的 partner 存在性用自動機精確判斷，partner_len_bound 不影響結果
    """
    mode = mode or settings.APPLICABILITY_MODE
    if mode not in APPLICABILITY_MODES:
        raise ValueError(f"unknown applicability mode {mode!r}")
    u = tuple(u)
    for rule, has_partner in zip(system.rules, system.rules_with_partner):
        if mode == PARTNER_MODE and not has_partner:
            continue
        if match_sites(u, rule):
            return True
    return False


def closure_language_upto(system: FlatSplicingSystem, max_len: int) -> set:
    """
    長度 <= max_len 的 F(S)：兩個運算元都取自已產生的語言，直到沒有新字詞
    """
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    language = set(system.initial.members_upto(max_len))
    pending = canonical_sorted(language)
    guard = MemoryGuard("closure_language_upto")

    while pending:
        produced = set()
        members = canonical_sorted(language)
        for new_word in pending:
            for other in members:
                if len(new_word) + len(other) > max_len:
                    continue
                for rule in system.rules:
                    produced |= splice(new_word, other, rule)
                    produced |= splice(other, new_word, rule)
        fresh = {w for w in produced if len(w) <= max_len and w not in language}
        for _ in fresh:
            guard.tick()
        language |= fresh
        pending = sorted(fresh, key=canonical_key)
        if fresh:
            logging.debug(f"closure: +{len(fresh)} words (total {len(language)})")

    return language
