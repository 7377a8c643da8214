"""
有界的判定程序與差異比對

所有結論都附帶所用的上限：PASS 只代表在該上限內沒有找到反例。
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple
import logging

import config.settings as settings
from core.compile import CompilationOutput
from core.derivation import (
    Derivation, LabeledFlatSplicingSystem, Mode, find_image_witness, image_upto_steps,
    is_derivation_member, label_words_upto,
)
from core.errors import ModeMismatchError
from core.grammars import Grammar, grammar_language_upto
from core.regular import RegularSet
from core.splicing import system_type
from core.words import Word, canonical_sorted


class VerdictStatus(Enum):
    PASS = 'PASS'
    FAIL = 'FAIL'
    INCONCLUSIVE = 'INCONCLUSIVE'


@dataclass(frozen=True)
class Counterexample:
    word: Word
    reason: str


@dataclass
class Verdict:
    status: VerdictStatus
    bound: int
    counterexamples: List[Counterexample] = field(default_factory=list)
    direction: str = ''
    truncated: int = 0
    checked: int = 0

    @property
    def passed(self) -> bool:
        return self.status is VerdictStatus.PASS


def _require_szilard(lsys: LabeledFlatSplicingSystem, operation: str):
    if lsys.mode is not Mode.SZILARD:
        raise ModeMismatchError(f"{operation} needs a szilard system")


def check_reg_subset_sz(R: RegularSet, lsys: LabeledFlatSplicingSystem, k: int,
                        partner_len_bound: Optional[int] = None) -> Verdict:
    """
    R 中長度 <= k 的每個字詞 (ε 除外) 是否都有終止推導作為見證
    """
    _require_szilard(lsys, "check_reg_subset_sz")
    if k < 1:
        raise ValueError("k must be >= 1")
    labels = lsys.label_set()
    words = [w for w in canonical_sorted(R.enumerate_upto(k)) if w]

    failures: List[Counterexample] = []
    for word in words:
        unknown = [label for label in word if label not in labels]
        if unknown:
            failures.append(Counterexample(word, f"unknown label {unknown[0]}"))
        elif is_derivation_member(lsys, word, partner_len_bound) is None:
            failures.append(Counterexample(word, "no terminal derivation has this label word"))
        if len(failures) >= settings.MAX_COUNTEREXAMPLES:
            break

    if not failures:
        status = VerdictStatus.PASS
    elif lsys.initial.is_finite:
        status = VerdictStatus.FAIL
    else:
        # 正規初始集合的 partner 只列舉到長度上限
        status = VerdictStatus.INCONCLUSIVE
    logging.debug(f"check_reg_subset_sz: {len(words)} words checked, {len(failures)} failures")
    return Verdict(status=status, bound=k, counterexamples=failures, direction='r-in-sz', checked=len(words))


def check_sz_subset_reg(lsys: LabeledFlatSplicingSystem, R: RegularSet, max_steps: int,
                        partner_len_bound: Optional[int] = None) -> Verdict:
    """szilard_upto(max_steps) 的每個字詞是否都在 R 中"""
    _require_szilard(lsys, "check_sz_subset_reg")
    slice_ = label_words_upto(lsys, max_steps, partner_len_bound)
    rejected = [Counterexample(w, "not in the regular set")
                for w in canonical_sorted(slice_.words) if not R.contains(w)]
    return Verdict(
        status=VerdictStatus.FAIL if rejected else VerdictStatus.PASS,
        bound=max_steps,
        counterexamples=rejected[:settings.MAX_COUNTEREXAMPLES],
        direction='sz-in-r',
        truncated=slice_.truncated,
        checked=len(slice_.words),
    )


@dataclass
class DiffReport:
    grammar_slice: set
    system_slice: set
    missing: set
    extra: set
    k: int
    max_steps: int
    truncated: int = 0
    grammar_complete: bool = True
    partner_len_bound: Optional[int] = None
    grammar_witnesses: Dict[Word, Tuple[Tuple[str, int], ...]] = field(default_factory=dict)
    system_witnesses: Dict[Word, Optional[Derivation]] = field(default_factory=dict)

    @property
    def equal(self) -> bool:
        return not self.missing and not self.extra

    def swapped(self) -> 'DiffReport':
        """互換兩側：missing 與 extra 對調"""
        return DiffReport(
            grammar_slice=set(self.system_slice),
            system_slice=set(self.grammar_slice),
            missing=set(self.extra),
            extra=set(self.missing),
            k=self.k,
            max_steps=self.max_steps,
            truncated=self.truncated,
            grammar_complete=self.grammar_complete,
            partner_len_bound=self.partner_len_bound,
            grammar_witnesses=dict(self.grammar_witnesses),
            system_witnesses=dict(self.system_witnesses),
        )


def compare_slices(grammar_words: set, system_words: set, k: int, max_steps: int = 0) -> DiffReport:
    grammar_words = {w for w in grammar_words if len(w) <= k}
    system_words = {w for w in system_words if len(w) <= k}
    return DiffReport(
        grammar_slice=grammar_words,
        system_slice=system_words,
        missing=grammar_words - system_words,
        extra=system_words - grammar_words,
        k=k,
        max_steps=max_steps,
    )


def default_max_steps(lsys: LabeledFlatSplicingSystem, k: int) -> int:
    """k × (插入寬度 n + 標記額外步數)"""
    n = system_type(lsys.system).n
    return max(1, k * (n + settings.MARKER_OVERHEAD_FACTOR))


def differential_compare(g: Grammar, out: CompilationOutput, k: int, max_steps: Optional[int] = None,
                         partner_len_bound: Optional[int] = None,
                         sentential_bound: Optional[int] = None) -> DiffReport:
    """
    比較文法的有界語言與編譯系統的 (同態像) 標籤語言，兩者都只取長度 <= k
    """
    lsys = out.lsys
    steps = default_max_steps(lsys, k) if max_steps is None else max_steps
    grammar_slice = grammar_language_upto(g, k, sentential_bound)

    if k == 0:
        system_words = set()
        truncated = 0
        bound = partner_len_bound
    else:
        if out.hom is not None:
            slice_ = image_upto_steps(lsys, out.hom, steps, max_len=k, partner_len_bound=partner_len_bound)
        else:
            slice_ = label_words_upto(lsys, steps, partner_len_bound, max_len=k)
        system_words = slice_.words
        truncated = slice_.truncated
        bound = slice_.partner_len_bound

    report = compare_slices(grammar_slice.words, system_words, k, steps)
    report.truncated = truncated
    report.grammar_complete = grammar_slice.complete
    report.partner_len_bound = bound

    for word in canonical_sorted(report.missing):
        report.grammar_witnesses[word] = grammar_slice.witnesses.get(word, ())
    for word in canonical_sorted(report.extra):
        report.system_witnesses[word] = find_image_witness(lsys, word, steps, out.hom, partner_len_bound)

    if not report.equal:
        logging.info(f"differential_compare: {len(report.missing)} missing, {len(report.extra)} extra at k={k}")
    return report
