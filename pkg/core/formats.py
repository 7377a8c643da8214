"""
三種文字檔格式的解析與輸出：系統 (.fss)、文法 (.g)、同態 (.hom)

所有格式都以行為單位，`#` 之後為註解，符號以空白分隔，`eps` 代表 ε。
語法或語意錯誤一律拋出帶行號的 FormatError。
"""
from typing import Dict, List, Optional, Tuple

from core.compile import Homomorphism
from core.derivation import LAMBDA_TOKEN, LabeledFlatSplicingSystem, Mode
from core.errors import (
    FormatError, GrammarError, InvalidRuleError, InvalidSystemError, NormalFormError, PatternError,
)
from core.grammars import Grammar, NormalForm, Production, grammar_symbols_sorted, validate_form
from core.regular import RegularSet, parse_pattern, pattern_symbols
from core.splicing import FlatSplicingRule, FlatSplicingSystem, InitialSet
from core.words import EPS_TOKEN, canonical_sorted, parse_word, show_word
from utils.helpers import iter_content_lines


def _split_keyword(content: str) -> Tuple[str, str]:
    parts = content.split(None, 1)
    return parts[0], parts[1] if len(parts) > 1 else ''


def _word(text: str, line: int, column: int, source: str):
    try:
        return parse_word(text)
    except ValueError as e:
        raise FormatError(str(e), line, column, source) from None


# ---------------------------------------------------------------------------
# 系統檔
# ---------------------------------------------------------------------------


def parse_system(text: str, source: str = '<text>') -> LabeledFlatSplicingSystem:
    name = ''
    mode: Optional[Mode] = None
    alphabet: Optional[set] = None
    axioms: List[Tuple[tuple, int]] = []
    patterns: List[Tuple[str, int]] = []
    rules: List[Tuple[Optional[str], FlatSplicingRule, int]] = []

    for line, column, content in iter_content_lines(text):
        keyword, rest = _split_keyword(content)
        if keyword == 'system':
            name = rest.strip()
        elif keyword == 'mode':
            try:
                mode = Mode(rest.strip())
            except ValueError:
                raise FormatError(f"unknown mode '{rest.strip()}' (expected szilard or control)",
                                  line, column, source) from None
        elif keyword == 'alphabet':
            alphabet = set(rest.split())
            if EPS_TOKEN in alphabet:
                raise FormatError(f"'{EPS_TOKEN}' cannot be an alphabet symbol", line, column, source)
        elif keyword == 'axiom':
            word = _word(rest, line, column, source)
            if not word:
                raise FormatError("initial words must be nonempty", line, column, source)
            axioms.append((word, line))
        elif keyword == 'axioms-pattern':
            try:
                parse_pattern(rest)
            except PatternError as e:
                raise FormatError(f"bad pattern: {e}", line, column, source) from None
            patterns.append((rest.strip(), line))
        elif keyword == 'rule':
            label_text, colon, body = rest.partition(':')
            label = label_text.strip()
            if not colon or not label or len(label.split()) != 1:
                raise FormatError("expected 'rule LABEL : alpha | gamma - delta | beta'", line, column, source)
            try:
                rule = FlatSplicingRule.parse(body)
            except (InvalidRuleError, ValueError) as e:
                raise FormatError(str(e), line, column + len('rule ') + len(label_text) + 1, source) from None
            rules.append((None if label == LAMBDA_TOKEN else label, rule, line))
        else:
            raise FormatError(f"unknown keyword '{keyword}'", line, column, source)

    mode = mode or Mode.SZILARD
    seen: Dict[str, int] = {}
    for label, rule, line in rules:
        if label is None and mode is Mode.SZILARD:
            raise FormatError("szilard mode does not allow the empty label", line, 1, source)
        if mode is Mode.SZILARD and label in seen:
            raise FormatError(f"duplicate label '{label}' (first used on line {seen[label]})", line, 1, source)
        if label is not None:
            seen.setdefault(label, line)

    if alphabet is None:
        alphabet = set()
        for word, _ in axioms:
            alphabet.update(word)
        for pattern, _ in patterns:
            alphabet.update(pattern_symbols(parse_pattern(pattern)))
        for _, rule, _ in rules:
            alphabet.update(rule.symbols())
    else:
        for word, line in axioms:
            _check_symbols(set(word), alphabet, line, source)
        for pattern, line in patterns:
            _check_symbols(pattern_symbols(parse_pattern(pattern)), alphabet, line, source)
        for _, rule, line in rules:
            _check_symbols(rule.symbols(), alphabet, line, source)
    for label, _, line in rules:
        if label in alphabet:
            raise FormatError(f"label '{label}' is also an alphabet symbol", line, 1, source)

    try:
        if patterns:
            if len(patterns) == 1 and not axioms:
                combined = patterns[0][0]
            else:
                pieces = [f"( {p} )" for p, _ in patterns] + [f"( {' '.join(w)} )" for w, _ in axioms]
                combined = ' | '.join(pieces)
            initial = InitialSet.from_regular(RegularSet.from_pattern(combined))
        else:
            initial = InitialSet.finite([w for w, _ in axioms])
        system = FlatSplicingSystem(
            alphabet=frozenset(alphabet),
            initial=initial,
            rules=tuple(rule for _, rule, _ in rules),
            name=name,
        )
        return LabeledFlatSplicingSystem(system, tuple(label for label, _, _ in rules), mode)
    except (InvalidSystemError, PatternError) as e:
        raise FormatError(str(e), None, None, source) from None


def _check_symbols(symbols, alphabet, line, source):
    missing = sorted(set(symbols) - alphabet)
    if missing:
        raise FormatError(f"symbols outside the alphabet: {' '.join(missing)}", line, 1, source)


def print_system(lsys: LabeledFlatSplicingSystem) -> str:
    lines = []
    if lsys.name:
        lines.append(f"system {lsys.name}")
    lines.append(f"mode {lsys.mode.value}")
    lines.append(f"alphabet {' '.join(sorted(lsys.alphabet))}")
    if lsys.initial.is_finite:
        for word in canonical_sorted(lsys.initial.words):
            lines.append(f"axiom {show_word(word)}")
    else:
        lines.append(f"axioms-pattern {lsys.initial.regular.pattern}")
    for index, rule in enumerate(lsys.rules):
        lines.append(f"rule {lsys.show_label(index)} : {rule}")
    return '\n'.join(lines) + '\n'


# ---------------------------------------------------------------------------
# 文法檔
# ---------------------------------------------------------------------------


def parse_grammar(text: str, source: str = '<text>', validate: bool = True) -> Tuple[Grammar, NormalForm]:
    name = ''
    form: Optional[NormalForm] = None
    nonterminals: Optional[List[str]] = None
    terminals: Optional[List[str]] = None
    start: Optional[str] = None
    productions: List[Production] = []
    lines_of: Dict[str, int] = {}

    for line, column, content in iter_content_lines(text):
        keyword, rest = _split_keyword(content)
        if keyword == 'grammar':
            tokens = rest.split()
            if 'form' not in tokens or tokens.index('form') != len(tokens) - 2 or len(tokens) > 3:
                raise FormatError("expected 'grammar NAME form FORM'", line, column, source)
            name = tokens[0] if len(tokens) == 3 else ''
            try:
                form = NormalForm.parse(tokens[-1])
            except GrammarError as e:
                raise FormatError(str(e), line, column, source) from None
        elif keyword == 'nonterminals':
            nonterminals = rest.split()
        elif keyword == 'terminals':
            terminals = rest.split()
        elif keyword == 'start':
            if len(rest.split()) != 1:
                raise FormatError("expected exactly one start symbol", line, column, source)
            start = rest.strip()
        elif keyword == 'rule':
            label_text, colon, body = rest.partition(':')
            label = label_text.strip()
            lhs_text, arrow, rhs_text = body.partition('->')
            if not colon or not label or not arrow:
                raise FormatError("expected 'rule LABEL : LHS -> RHS'", line, column, source)
            if label in lines_of:
                raise FormatError(f"duplicate production label '{label}'", line, column, source)
            lhs = _word(lhs_text, line, column, source)
            rhs = _word(rhs_text, line, column, source)
            if not lhs:
                raise FormatError("left-hand side must not be empty", line, column, source)
            productions.append(Production(lhs, rhs, label))
            lines_of[label] = line
        else:
            raise FormatError(f"unknown keyword '{keyword}'", line, column, source)

    if form is None:
        raise FormatError("missing 'grammar NAME form FORM' line", None, None, source)
    if nonterminals is None or terminals is None or start is None:
        raise FormatError("grammar needs 'nonterminals', 'terminals' and 'start' lines", None, None, source)

    try:
        grammar = Grammar(frozenset(nonterminals), frozenset(terminals), start, tuple(productions), name)
    except GrammarError as e:
        line = next((lines_of[label] for label in lines_of if f"{label}:" in str(e)), None)
        raise FormatError(str(e), line, 1 if line else None, source) from None

    if validate:
        violations = validate_form(grammar, form)
        if violations:
            error = NormalFormError(form.value, violations)
            raise FormatError(str(error), lines_of[violations[0].production.label], 1, source)
    return grammar, form


def print_grammar(g: Grammar, form: NormalForm) -> str:
    lines = [f"grammar {g.name} form {form.value}" if g.name else f"grammar form {form.value}",
             f"nonterminals {' '.join(grammar_symbols_sorted(g))}",
             f"terminals {' '.join(sorted(g.terminals))}",
             f"start {g.start}"]
    for p in g.productions:
        lines.append(f"rule {p.label} : {show_word(p.lhs)} -> {show_word(p.rhs)}")
    return '\n'.join(lines) + '\n'


# ---------------------------------------------------------------------------
# 同態檔
# ---------------------------------------------------------------------------


def parse_hom(text: str, source: str = '<text>') -> Homomorphism:
    images: Dict[str, tuple] = {}
    for line, column, content in iter_content_lines(text):
        label_text, arrow, image_text = content.partition('->')
        label = label_text.strip()
        if not arrow or len(label.split()) != 1:
            raise FormatError("expected 'LABEL -> TOKENS' or 'LABEL -> eps'", line, column, source)
        if label in images:
            raise FormatError(f"duplicate label '{label}'", line, column, source)
        images[label] = _word(image_text, line, column, source)
    return Homomorphism(images)


def print_hom(h: Homomorphism) -> str:
    return ''.join(f"{label} -> {show_word(h[label])}\n" for label in sorted(h))
