"""
以符號 (token) 為單位的正規集合

記號樣式是以空白分隔的符號，加上後綴 `*`、`+`、`?`、交替 `|` 與括號；
`eps` 代表空字詞，`nil` 代表空集合：

    X A1 A1+ Y
    ( X A1 A1+ Y ) | Aq
    a* c

樣式先編成 Thompson NFA，再以子集構造轉成 DFA，之後所有查詢都在 DFA 上進行。
"""
import re
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from core.errors import PatternError
from core.words import EPS_TOKEN, Word, canonical_sorted

NIL_TOKEN = 'nil'
_TOKEN_RE = re.compile(r"\(|\)|\||[*+?]|[^\s()|*+?]+")

# AST 節點都是 tuple：
#   ('sym', name) ('eps',) ('nil',) ('cat', [nodes]) ('alt', [nodes])
#   ('star', node) ('plus', node) ('opt', node)


def tokenize_pattern(text: str) -> List[str]:
    return _TOKEN_RE.findall(text)


class _PatternParser:
    """遞迴下降：alt := seq ('|' seq)* ; seq := item* ; item := atom postfix*"""

    def __init__(self, tokens: List[str]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Optional[str]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> str:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def parse(self):
        node = self.parse_alt()
        if self.peek() is not None:
            raise PatternError(f"unexpected {self.peek()!r}", self.pos)
        return node

    def parse_alt(self):
        branches = [self.parse_seq()]
        while self.peek() == '|':
            self.take()
            branches.append(self.parse_seq())
        return branches[0] if len(branches) == 1 else ('alt', branches)

    def parse_seq(self):
        items = []
        while self.peek() not in (None, '|', ')'):
            items.append(self.parse_item())
        if not items:
            return ('eps',)
        return items[0] if len(items) == 1 else ('cat', items)

    def parse_item(self):
        node = self.parse_atom()
        while self.peek() in ('*', '+', '?'):
            op = self.take()
            node = {'*': ('star', node), '+': ('plus', node), '?': ('opt', node)}[op]
        return node

    def parse_atom(self):
        token = self.peek()
        if token in ('*', '+', '?'):
            raise PatternError(f"operator {token!r} has nothing to repeat", self.pos)
        if token == '(':
            self.take()
            node = self.parse_alt()
            if self.peek() != ')':
                raise PatternError("missing ')'", self.pos)
            self.take()
            return node
        if token == ')':
            raise PatternError("unbalanced ')'", self.pos)
        self.take()
        if token == EPS_TOKEN:
            return ('eps',)
        if token == NIL_TOKEN:
            return ('nil',)
        return ('sym', token)


def parse_pattern(text: str):
    """把記號樣式解析成 AST"""
    return _PatternParser(tokenize_pattern(text)).parse()


def pattern_symbols(node) -> Set[str]:
    kind = node[0]
    if kind == 'sym':
        return {node[1]}
    if kind in ('cat', 'alt'):
        return set().union(*(pattern_symbols(child) for child in node[1]))
    if kind in ('star', 'plus', 'opt'):
        return pattern_symbols(node[1])
    return set()


# ---------------------------------------------------------------------------
# Thompson 構造
# ---------------------------------------------------------------------------


@dataclass
class NFAState:
    transitions: Dict[str, List[int]] = field(default_factory=dict)
    epsilon: List[int] = field(default_factory=list)


class _NFABuilder:
    def __init__(self):
        self.states: List[NFAState] = []

    def new_state(self) -> int:
        self.states.append(NFAState())
        return len(self.states) - 1

    def build(self, node) -> Tuple[int, int]:
        """回傳 node 片段的 (起始狀態, 接受狀態)"""
        kind = node[0]
        start, accept = self.new_state(), self.new_state()
        if kind == 'sym':
            self.states[start].transitions.setdefault(node[1], []).append(accept)
        elif kind == 'eps':
            self.states[start].epsilon.append(accept)
        elif kind == 'nil':
            pass
        elif kind == 'cat':
            current = start
            for child in node[1]:
                child_start, child_accept = self.build(child)
                self.states[current].epsilon.append(child_start)
                current = child_accept
            self.states[current].epsilon.append(accept)
        elif kind == 'alt':
            for child in node[1]:
                child_start, child_accept = self.build(child)
                self.states[start].epsilon.append(child_start)
                self.states[child_accept].epsilon.append(accept)
        elif kind in ('star', 'plus', 'opt'):
            child_start, child_accept = self.build(node[1])
            self.states[start].epsilon.append(child_start)
            self.states[child_accept].epsilon.append(accept)
            if kind in ('star', 'plus'):
                self.states[child_accept].epsilon.append(child_start)
            if kind in ('star', 'opt'):
                self.states[start].epsilon.append(accept)
        else:
            raise PatternError(f"unknown pattern node {kind!r}")
        return start, accept


def _epsilon_closure(states: List[NFAState], seeds: Iterable[int]) -> FrozenSet[int]:
    stack = list(seeds)
    seen = set(stack)
    while stack:
        current = stack.pop()
        for target in states[current].epsilon:
            if target not in seen:
                seen.add(target)
                stack.append(target)
    return frozenset(seen)


# ---------------------------------------------------------------------------
# DFA
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RegularSet:
    """決定化的符號自動機；沒有列出的轉移一律進入隱含的死狀態"""

    pattern: str
    alphabet: FrozenSet[str]
    transitions: tuple  # 每個狀態一列 (符號, 目標) 配對，依符號排序
    start: int
    accepting: FrozenSet[int]
    live: FrozenSet[int]  # 可以到達接受狀態的狀態

    @classmethod
    def from_pattern(cls, text: str) -> 'RegularSet':
        ast = parse_pattern(text)
        builder = _NFABuilder()
        nfa_start, nfa_accept = builder.build(ast)
        states = builder.states
        alphabet = sorted(pattern_symbols(ast))

        start_set = _epsilon_closure(states, [nfa_start])
        index = {start_set: 0}
        order = [start_set]
        table: List[Dict[str, int]] = []
        queue = deque([start_set])
        while queue:
            subset = queue.popleft()
            row: Dict[str, int] = {}
            for symbol in alphabet:
                moved = [t for s in subset for t in states[s].transitions.get(symbol, ())]
                if not moved:
                    continue
                target = _epsilon_closure(states, moved)
                if target not in index:
                    index[target] = len(order)
                    order.append(target)
                    queue.append(target)
                row[symbol] = index[target]
            table.append(row)

        accepting = frozenset(i for i, subset in enumerate(order) if nfa_accept in subset)
        transitions = tuple(tuple(sorted(row.items())) for row in table)
        return cls(
            pattern=text.strip(),
            alphabet=frozenset(alphabet),
            transitions=transitions,
            start=0,
            accepting=accepting,
            live=_live_states(transitions, accepting),
        )

    @classmethod
    def from_words(cls, words: Iterable[Sequence[str]]) -> 'RegularSet':
        """由給定字詞組成的有限集合"""
        branches = []
        for word in canonical_sorted(words):
            branches.append(' '.join(word) if word else EPS_TOKEN)
        if not branches:
            return cls.from_pattern(NIL_TOKEN)
        return cls.from_pattern(' | '.join(f"( {b} )" for b in branches))

    def step(self, state: Optional[int], symbol: str) -> Optional[int]:
        if state is None:
            return None
        for candidate, target in self.transitions[state]:
            if candidate == symbol:
                return target
        return None

    def walk(self, word: Sequence[str], state: Optional[int] = None) -> Optional[int]:
        current = self.start if state is None else state
        for symbol in word:
            current = self.step(current, symbol)
            if current is None:
                return None
        return current

    def contains(self, word: Sequence[str]) -> bool:
        return self.walk(word) in self.accepting

    def is_empty(self) -> bool:
        return self.start not in self.live

    def enumerate_upto(self, k: int) -> Set[Word]:
        """長度不超過 k 的所有成員，以廣度優先展開 DFA"""
        if k < 0:
            raise ValueError("k must be >= 0")
        found: Set[Word] = set()
        if self.start not in self.live:
            return found
        frontier = [((), self.start)]
        for length in range(k + 1):
            next_frontier = []
            for word, state in frontier:
                if state in self.accepting:
                    found.add(word)
                if length == k:
                    continue
                for symbol, target in self.transitions[state]:
                    if target in self.live:
                        next_frontier.append((word + (symbol,), target))
            frontier = next_frontier
        return found

    def has_member_with(self, prefix: Sequence[str], suffix: Sequence[str], min_len: int = 0) -> bool:
        """精確判斷：是否存在成員 w = prefix·z·suffix 且 |w| >= min_len"""
        state = self.walk(prefix)
        if state is None or state not in self.live:
            return False
        need = max(0, min_len - len(prefix) - len(suffix))
        # (狀態, min(|z|, need)) 配對是有限的，搜尋一定會結束
        seen = {(state, 0)}
        queue = deque(seen)
        while queue:
            current, count = queue.popleft()
            if count >= need and self.walk(suffix, current) in self.accepting:
                return True
            for _, target in self.transitions[current]:
                if target not in self.live:
                    continue
                item = (target, min(count + 1, need))
                if item not in seen:
                    seen.add(item)
                    queue.append(item)
        return False

    def members_with(self, prefix: Sequence[str], suffix: Sequence[str], min_len: int, max_len: int) -> List[Word]:
        words = []
        for word in self.enumerate_upto(max_len):
            if len(word) < min_len or len(word) < len(prefix) + len(suffix):
                continue
            if word[:len(prefix)] != tuple(prefix):
                continue
            if suffix and word[len(word) - len(suffix):] != tuple(suffix):
                continue
            words.append(word)
        return canonical_sorted(words)

    def __str__(self):
        return self.pattern


def _live_states(transitions: tuple, accepting: FrozenSet[int]) -> FrozenSet[int]:
    reverse: Dict[int, Set[int]] = {}
    for source, row in enumerate(transitions):
        for _, target in row:
            reverse.setdefault(target, set()).add(source)
    live = set(accepting)
    stack = list(accepting)
    while stack:
        current = stack.pop()
        for source in reverse.get(current, ()):
            if source not in live:
                live.add(source)
                stack.append(source)
    return frozenset(live)


def reg_contains(regular: RegularSet, word: Sequence[str]) -> bool:
    return regular.contains(tuple(word))


def reg_enumerate_upto(regular: RegularSet, k: int) -> Set[Word]:
    return regular.enumerate_upto(k)
