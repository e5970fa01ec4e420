"""Finite automata over the pair alphabet {0, 1, B}.

Words are plain strings; "B" is the separator between the two binary numbers
of a pair word, so the pair (m, n) is spelled ``binary(m) + "B" + binary(n)``.
Binary representations are canonical: no leading zeros, and 0 is "0".

Dfa values are total by construction (one transition per state and symbol)
and immutable; every function here returns fresh values.
"""
from __future__ import annotations

from collections import deque
from typing import Callable, Iterable

ALPHABET = ("0", "1", "B")
_IDX = {"0": 0, "1": 1, "B": 2}


def binary(n: int) -> str:
    """Canonical binary representation; binary(0) == "0"."""
    if n < 0:
        raise ValueError("naturals only")
    return format(n, "b")


def pair_word(m: int, n: int) -> str:
    return binary(m) + "B" + binary(n)


def is_canonical_number(word: str) -> bool:
    """True iff word is a canonical binary numeral over {0,1}."""
    return word == "0" or (word.startswith("1") and set(word) <= {"0", "1"})


class Dfa:
    """Deterministic automaton; ``delta[state][symbol_index]`` is the target."""

    __slots__ = ("delta", "start", "accepting")

    def __init__(self, delta, start: int, accepting: Iterable[int]):
        delta = tuple(tuple(row) for row in delta)
        n = len(delta)
        if n == 0:
            raise ValueError("need at least one state")
        for s, row in enumerate(delta):
            if len(row) != 3 or any(not 0 <= t < n for t in row):
                raise ValueError(f"bad transition row for state {s}")
        if not 0 <= start < n:
            raise ValueError("start state out of range")
        accepting = frozenset(accepting)
        if any(not 0 <= s < n for s in accepting):
            raise ValueError("accepting state out of range")
        self.delta = delta
        self.start = start
        self.accepting = accepting

    @property
    def state_count(self) -> int:
        return len(self.delta)

    def step(self, state: int, symbol: str) -> int:
        return self.delta[state][_IDX[symbol]]

    def run(self, word: str, state: int | None = None) -> int:
        if state is None:
            state = self.start
        for ch in word:
            state = self.delta[state][_IDX[ch]]
        return state

    def accepts(self, word: str) -> bool:
        return self.run(word) in self.accepting

    def __repr__(self) -> str:
        return f"Dfa(states={self.state_count}, start={self.start}, accepting={sorted(self.accepting)})"


def reachable_states(d: Dfa) -> list[int]:
    """States reachable from the start, in BFS discovery order."""
    order = [d.start]
    seen = {d.start}
    i = 0
    while i < len(order):
        s = order[i]
        i += 1
        for t in d.delta[s]:
            if t not in seen:
                seen.add(t)
                order.append(t)
    return order


def product(a: Dfa, b: Dfa, op: Callable[[bool, bool], bool]) -> Dfa:
    """Product automaton accepting op(a-accepts, b-accepts), reachable part only."""
    index = {(a.start, b.start): 0}
    queue = deque([(a.start, b.start)])
    delta = []
    accepting = set()
    while queue:
        sa, sb = queue.popleft()
        row = []
        for i in range(3):
            nxt = (a.delta[sa][i], b.delta[sb][i])
            if nxt not in index:
                index[nxt] = len(index)
                queue.append(nxt)
            row.append(index[nxt])
        delta.append(row)
        if op(sa in a.accepting, sb in b.accepting):
            accepting.add(index[(sa, sb)])
    return Dfa(delta, 0, accepting)


def complement(d: Dfa) -> Dfa:
    return Dfa(d.delta, d.start, frozenset(range(d.state_count)) - d.accepting)


def is_empty(d: Dfa) -> bool:
    return not any(s in d.accepting for s in reachable_states(d))


def shortest_accepted(d: Dfa) -> str | None:
    """Shortlex-least accepted word (symbol order 0 < 1 < B), or None."""
    if d.start in d.accepting:
        return ""
    words = {d.start: ""}
    queue = deque([d.start])
    while queue:
        s = queue.popleft()
        for i, ch in enumerate(ALPHABET):
            t = d.delta[s][i]
            if t not in words:
                words[t] = words[s] + ch
                if t in d.accepting:
                    return words[t]
                queue.append(t)
    return None


def subset_of(a: Dfa, b: Dfa) -> bool:
    """True iff L(a) is a subset of L(b)."""
    return is_empty(product(a, b, lambda x, y: x and not y))


def equivalent(a: Dfa, b: Dfa) -> bool:
    """Language equality via emptiness of the symmetric difference."""
    return is_empty(product(a, b, lambda x, y: x != y))


def minimize(d: Dfa) -> Dfa:
    """Minimal DFA for the same language (Moore partition refinement)."""
    order = reachable_states(d)
    pos = {s: i for i, s in enumerate(order)}
    block = [1 if s in d.accepting else 0 for s in order]
    if max(block, default=0) == 0 or min(block) == 1:
        block = [0] * len(order)
    while True:
        signature = {}
        new_block = []
        for i, s in enumerate(order):
            sig = (block[i],) + tuple(block[pos[t]] for t in d.delta[s])
            new_block.append(signature.setdefault(sig, len(signature)))
        if new_block == block:
            break
        block = new_block
    # Renumber blocks by first occurrence so output numbering is deterministic.
    renum: dict[int, int] = {}
    for b in block:
        renum.setdefault(b, len(renum))
    block = [renum[b] for b in block]
    delta = [None] * len(renum)
    accepting = set()
    for i, s in enumerate(order):
        delta[block[i]] = [block[pos[t]] for t in d.delta[s]]
        if s in d.accepting:
            accepting.add(block[i])
    return Dfa(delta, block[pos[d.start]], accepting)


class Nfa:
    """Nondeterministic automaton over the same alphabet; states are any
    hashable values.  Symbol None denotes an epsilon transition."""

    def __init__(self):
        self.transitions: dict[tuple[object, str | None], set] = {}
        self.starts: set = set()
        self.accepting: set = set()

    def add(self, src, symbol: str | None, dst) -> None:
        self.transitions.setdefault((src, symbol), set()).add(dst)

    def _closure(self, states: Iterable) -> frozenset:
        out = set(states)
        stack = list(out)
        while stack:
            s = stack.pop()
            for t in self.transitions.get((s, None), ()):
                if t not in out:
                    out.add(t)
                    stack.append(t)
        return frozenset(out)

    def determinize(self) -> Dfa:
        start = self._closure(self.starts)
        index = {start: 0}
        queue = deque([start])
        delta = []
        accepting = set()
        while queue:
            cur = queue.popleft()
            row = []
            for ch in ALPHABET:
                nxt = set()
                for s in cur:
                    nxt |= self.transitions.get((s, ch), set())
                nxt = self._closure(nxt)
                if nxt not in index:
                    index[nxt] = len(index)
                    queue.append(nxt)
                row.append(index[nxt])
            delta.append(row)
            if cur & self.accepting:
                accepting.add(index[cur])
        return Dfa(delta, 0, accepting)


def canonical_number_dfa() -> Dfa:
    """Accepts exactly the canonical binary numerals over {0,1}."""
    # states: 0 empty, 1 read "0", 2 read "1...", 3 dead
    return Dfa(
        [
            (1, 2, 3),
            (3, 3, 3),
            (2, 2, 3),
            (3, 3, 3),
        ],
        0,
        {1, 2},
    )


def pair_format_dfa() -> Dfa:
    """Accepts exactly words ``u B v`` with u, v canonical binary numerals."""
    # states: 0 empty, 1 first="0", 2 first="1...", 3 after B,
    #         4 second="0", 5 second="1...", 6 dead
    return Dfa(
        [
            (1, 2, 6),
            (6, 6, 3),
            (2, 2, 3),
            (4, 5, 6),
            (6, 6, 6),
            (5, 5, 6),
            (6, 6, 6),
        ],
        0,
        {4, 5},
    )


def dfa_to_text(d: Dfa) -> str:
    lines = [
        f"states: {d.state_count}",
        f"start: {d.start}",
        "accept: " + " ".join(str(s) for s in sorted(d.accepting)),
    ]
    for s in range(d.state_count):
        for i, ch in enumerate(ALPHABET):
            lines.append(f"trans: {s} {ch} {d.delta[s][i]}")
    return "\n".join(lines) + "\n"


def dfa_from_text(text: str) -> Dfa:
    """Parse the DFA text format, verifying the transition table is total."""
    states = start = None
    accepting: list[int] = []
    rules: dict[tuple[int, str], int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        try:
            if line.startswith("states:"):
                states = int(line.split(":", 1)[1])
            elif line.startswith("start:"):
                start = int(line.split(":", 1)[1])
            elif line.startswith("accept:"):
                accepting = [int(tok) for tok in line.split(":", 1)[1].split()]
            elif line.startswith("trans:"):
                src, sym, dst = line[len("trans:"):].split()
                if sym not in _IDX:
                    raise ValueError
                key = (int(src), sym)
                if key in rules:
                    raise ValueError(f"line {lineno}: duplicate transition {key}")
                rules[key] = int(dst)
            else:
                raise ValueError
        except ValueError as exc:
            if exc.args and str(exc).startswith("line"):
                raise
            raise ValueError(f"line {lineno}: cannot parse {line!r}") from None
    if states is None or start is None:
        raise ValueError("missing 'states:' or 'start:' header")
    delta = []
    for s in range(states):
        row = []
        for ch in ALPHABET:
            if (s, ch) not in rules:
                raise ValueError(f"transition table not total: missing ({s}, {ch})")
            row.append(rules[(s, ch)])
        delta.append(row)
    if len(rules) != states * 3:
        extra = sorted(k for k in rules if k[0] >= states)
        raise ValueError(f"transitions reference unknown states: {extra}")
    return Dfa(delta, start, accepting)
