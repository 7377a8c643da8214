"""
純文字輸出：字詞清單、推導軌跡表、判定結果與差異報告

所有函數都回傳字串 (以換行結尾)，由 main.py 寫到 stdout；
輸出依標準順序排列，同樣的輸入永遠得到同樣的位元組。
"""
import config.settings as settings
from core.derivation import Derivation, LabeledFlatSplicingSystem
from core.decide import DiffReport, Verdict
from core.words import canonical_sorted, show_word
from utils.logging import _get_display_width, pad_to_width, wrap_text_with_cjk_support


def render_words(words) -> str:
    """一行一個字詞；空集合輸出空字串"""
    return ''.join(f"{show_word(w)}\n" for w in canonical_sorted(words))


def render_derivation(lsys: LabeledFlatSplicingSystem, derivation: Derivation) -> str:
    """
    精簡軌跡：第一行是起始字詞，之後每步一行
    `label @site + partner => result`
    """
    lines = [f"start {show_word(derivation.start)}"]
    for step in derivation.steps:
        lines.append(f"{lsys.show_label(step.rule_index)} @{step.site} + {show_word(step.partner)}"
                     f" => {show_word(step.after)}")
    return '\n'.join(lines) + '\n'


def render_trace_table(lsys: LabeledFlatSplicingSystem, derivation: Derivation, width=None) -> str:
    """
    對齊的推導表：Step | Label | Rule | Partner | Result
    Result 欄位過長時換行，闊度以顯示闊度計算
    """
    width = width or settings.TRACE_TABLE_MAX_WIDTH
    rows = []
    for number, step in enumerate(derivation.steps, start=1):
        rows.append((
            str(number),
            lsys.show_label(step.rule_index),
            f"<{lsys.rules[step.rule_index]}> @{step.site}",
            show_word(step.partner),
            show_word(step.after),
        ))
    headers = ('Step', 'Label', 'Rule', 'Partner', 'Result')

    fixed = [max([_get_display_width(headers[i])] + [_get_display_width(r[i]) for r in rows]) for i in range(4)]
    separators_width = 3 * (len(headers) - 1)
    result_width = max(20, width - sum(fixed) - separators_width)

    def emit(cells):
        wrapped = wrap_text_with_cjk_support(cells[4], result_width)
        out = [' | '.join([pad_to_width(c, w) for c, w in zip(cells[:4], fixed)] + [wrapped[0]]).rstrip()]
        blank = ' | '.join(pad_to_width('', w) for w in fixed)
        for extra in wrapped[1:]:
            out.append(f"{blank} | {extra}")
        return out

    total = min(width, sum(fixed) + separators_width + result_width)
    lines = [f"start: {show_word(derivation.start)}", "=" * total]
    lines.extend(emit(headers))
    lines.append("-" * total)
    for row in rows:
        lines.extend(emit(row))
    lines.append("=" * total)
    lines.append(f"final: {show_word(derivation.final)} (terminal)")
    return '\n'.join(lines) + '\n'


def render_verdict(verdict: Verdict) -> str:
    lines = [f"{verdict.status.value} ({verdict.direction}, bound={verdict.bound}, checked={verdict.checked})"]
    for counterexample in verdict.counterexamples:
        lines.append(f"  {show_word(counterexample.word)}: {counterexample.reason}")
    if verdict.truncated:
        lines.append(f"  note: step budget ran out at {verdict.truncated} words")
    return '\n'.join(lines) + '\n'


def _show_steps(steps) -> str:
    return ' '.join(f"{label}@{position}" for label, position in steps) or '(none)'


def render_diff(report: DiffReport, lsys: LabeledFlatSplicingSystem = None) -> str:
    """
    EQUAL (k=4)，或 DIFFERENT (k=4) 加上 missing / extra 清單與見證
    """
    if report.equal:
        lines = [f"EQUAL (k={report.k})"]
    else:
        lines = [f"DIFFERENT (k={report.k})"]
        for word in canonical_sorted(report.missing):
            lines.append(f"missing {show_word(word)}")
            steps = report.grammar_witnesses.get(word)
            if steps:
                lines.append(f"  grammar: {_show_steps(steps)}")
        for word in canonical_sorted(report.extra):
            lines.append(f"extra {show_word(word)}")
            derivation = report.system_witnesses.get(word)
            if derivation is not None and lsys is not None:
                labels = ' '.join(lsys.show_label(i) for i in derivation.rule_indices())
                lines.append(f"  system: start {show_word(derivation.start)} ; {labels}")
    if report.truncated:
        lines.append(f"note: step budget {report.max_steps} ran out at {report.truncated} words")
    if not report.grammar_complete:
        lines.append("note: grammar slice is a lower bound (sentential bound reached)")
    return '\n'.join(lines) + '\n'
