"""
字詞 (Word) 工具

Word 就是 tuple[str, ...]：每個元素是一個不可分割的符號 (token)，
長度以符號數計算。ε 是空 tuple，文字表示為 `eps`。
"""
from typing import Iterable, Sequence, Tuple

Word = Tuple[str, ...]

EPS_TOKEN = 'eps'
EMPTY: Word = ()


def parse_word(text) -> Word:
    """
    把以空白分隔的符號字串轉成 Word；`eps` 或空字串代表 ε
    """
    if isinstance(text, tuple):
        return text
    if not isinstance(text, str):
        return tuple(text)
    tokens = text.split()
    if tokens == [EPS_TOKEN]:
        return EMPTY
    if EPS_TOKEN in tokens:
        raise ValueError(f"'{EPS_TOKEN}' 只能單獨出現: {text!r}")
    return tuple(tokens)


def show_word(word: Sequence[str]) -> str:
    return ' '.join(word) if word else EPS_TOKEN


def canonical_key(word: Sequence[str]):
    """先比長度，再依符號名稱逐位比較"""
    return (len(word), tuple(word))


def canonical_sorted(words: Iterable[Sequence[str]]) -> list:
    return sorted((tuple(w) for w in words), key=canonical_key)


def is_prefix(prefix: Sequence[str], word: Sequence[str]) -> bool:
    return len(prefix) <= len(word) and tuple(word[:len(prefix)]) == tuple(prefix)


def is_suffix(suffix: Sequence[str], word: Sequence[str]) -> bool:
    if not suffix:
        return True
    return len(suffix) <= len(word) and tuple(word[-len(suffix):]) == tuple(suffix)
