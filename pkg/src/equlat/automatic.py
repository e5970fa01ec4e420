"""Automatic equivalence relations: DFAs deciding the pair language of a
relation on the naturals.

A relation is *automatic* when some DFA over {0,1,B} accepts exactly the
words ``binary(m) B binary(n)`` with m related to n.  Such a relation always
has finitely many classes: reading a canonical numeral and the separator
lands the automaton in a state that fully determines the class, so there are
at most as many classes as states.

``AutomaticEq.from_dfa`` admits a DFA only after certifying, exactly, that
its language is well-formatted and that the decided relation is reflexive,
symmetric and transitive.  The checkers work on the automaton itself (no
sampling), so validation is a proof for the whole infinite relation.
"""
from __future__ import annotations

import operator
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .dfa import (
    Dfa,
    Nfa,
    binary,
    canonical_number_dfa,
    equivalent,
    is_empty,
    minimize,
    pair_format_dfa,
    pair_word,
    product,
    shortest_accepted,
    subset_of,
)
from .partition import Partition


class ValidationError(ValueError):
    """A DFA failed one of the admission checks for an equivalence."""

    def __init__(self, axiom: str, message: str):
        super().__init__(f"{axiom}: {message}")
        self.axiom = axiom


def check_format(d: Dfa) -> bool:
    """True iff every accepted word has the shape ``numeral B numeral``."""
    return subset_of(d, pair_format_dfa())


def check_reflexive(d: Dfa, *, unsound_fast: bool = False, sample_limit: int = 512) -> bool:
    """True iff the automaton accepts ``w B w`` for every canonical numeral w.

    The exact check enumerates the monoid of transition functions reached by
    canonical numerals: for each such function g, the word w with g_w = g
    satisfies  w B w in L  iff  g(delta(g(start), B)) is accepting.  The
    monoid is finite, so this terminates; it can be exponential in the state
    count, which is fine at desk scale.

    ``unsound_fast=True`` replaces the proof by sampling m < sample_limit.
    """
    if unsound_fast:
        return all(d.accepts(pair_word(m, m)) for m in range(sample_limit))
    n = d.state_count
    by_zero = tuple(d.delta[s][0] for s in range(n))
    by_one = tuple(d.delta[s][1] for s in range(n))

    def closes(g: tuple[int, ...]) -> bool:
        after_sep = d.delta[g[d.start]][2]
        return g[after_sep] in d.accepting

    if not closes(by_zero):  # the numeral "0", which cannot be extended
        return False
    seen = {by_one}
    stack = [by_one]
    while stack:
        g = stack.pop()
        if not closes(g):
            return False
        for ext in (by_zero, by_one):
            h = tuple(ext[t] for t in g)
            if h not in seen:
                seen.add(h)
                stack.append(h)
    return True


def _format_clean(d: Dfa) -> Dfa:
    """Restrict to well-formatted words; the decided relation is unchanged."""
    return minimize(product(d, pair_format_dfa(), operator.and_))


def _digit_reachable(d: Dfa, start: int) -> list[int]:
    """States reachable from ``start`` reading only digit symbols 0/1."""
    order = [start]
    seen = {start}
    i = 0
    while i < len(order):
        s = order[i]
        i += 1
        for t in d.delta[s][:2]:
            if t not in seen:
                seen.add(t)
                order.append(t)
    return order


def _numeral_reachable(d: Dfa) -> list[int]:
    """States reachable by reading a complete canonical numeral."""
    zero = d.delta[d.start][0]
    out = _digit_reachable(d, d.delta[d.start][1])
    if zero not in out:
        out = [zero] + out
    return out


def check_symmetric(d: Dfa) -> bool:
    """True iff the decided relation is symmetric.

    Builds an NFA for the swapped pair language: guess the state s reached by
    the (unknown) first numeral, read the second component from delta(s, B),
    then the separator, then a first component that must land exactly on s.
    The swap equals the original language iff the relation is symmetric.
    """
    dp = _format_clean(d)
    pre = _digit_reachable(dp, dp.start)
    nfa = Nfa()
    for s in pre:
        tail_start = dp.delta[s][2]
        nfa.starts.add(("r", tail_start, s))
        for q in range(dp.state_count):
            for i, ch in enumerate("01"):
                nfa.add(("r", q, s), ch, ("r", dp.delta[q][i], s))
                nfa.add(("l", q, s), ch, ("l", dp.delta[q][i], s))
            if q in dp.accepting:
                nfa.add(("r", q, s), "B", ("l", dp.start, s))
        nfa.accepting.add(("l", s, s))
    return equivalent(nfa.determinize(), dp)


def check_transitive(d: Dfa) -> bool:
    """True iff the decided relation is transitive.

    For a state s reached by a numeral, the class language of its values is
    the acceptance language from delta(s, B).  Transitivity says: whenever
    some numeral both reaches s' and lies in the class language of s, the
    class language of s' is contained in that of s.
    """
    dp = _format_clean(d)
    canon = canonical_number_dfa()
    states = _numeral_reachable(dp)
    tail = {s: Dfa(dp.delta, dp.delta[s][2], dp.accepting) for s in states}
    reach = {
        s: product(Dfa(dp.delta, dp.start, {s}), canon, operator.and_)
        for s in states
    }
    for s in states:
        for s2 in states:
            if is_empty(product(reach[s2], tail[s], operator.and_)):
                continue
            if not subset_of(tail[s2], tail[s]):
                return False
    return True


class AutomaticEq:
    """A certified automatic equivalence relation.

    Wraps a minimized, format-clean DFA together with a table mapping each
    numeral-reachable state to the least value reaching it and to its class.
    """

    __slots__ = ("dfa", "_least_value", "_state_class", "_reps", "_class_dfas")

    def __init__(self, dfa: Dfa, _trusted: bool = False):
        if not _trusted:
            raise TypeError("use AutomaticEq.from_dfa()")
        self.dfa = dfa
        self._least_value = None
        self._state_class = None
        self._reps = None
        self._class_dfas = {}

    @classmethod
    def from_dfa(cls, d: Dfa, *, unsound_fast_reflexivity: bool = False) -> "AutomaticEq":
        """Validate and wrap a DFA; raises ValidationError naming the failed
        axiom otherwise."""
        if not check_format(d):
            raise ValidationError("format", "accepts words outside 'numeral B numeral'")
        clean = _format_clean(d)
        if not check_reflexive(clean, unsound_fast=unsound_fast_reflexivity):
            raise ValidationError("reflexivity", "some w B w is rejected")
        if not check_symmetric(clean):
            raise ValidationError("symmetry", "language differs from its swap")
        if not check_transitive(clean):
            raise ValidationError("transitivity", "class languages are not nested")
        return cls(clean, _trusted=True)

    @classmethod
    def _trust(cls, d: Dfa) -> "AutomaticEq":
        # Internal: for outputs that are equivalences by construction.
        return cls(minimize(d), _trusted=True)

    def decide(self, m: int, n: int) -> bool:
        """Run the automaton on the pair word of (m, n)."""
        return self.dfa.accepts(pair_word(m, n))

    def _table(self) -> dict[int, int]:
        """Least value reaching each numeral-reachable state (shortlex BFS)."""
        if self._least_value is not None:
            return self._least_value
        d = self.dfa
        least: dict[int, int] = {}
        zero_state = d.delta[d.start][0]
        least[zero_state] = 0
        one_state = d.delta[d.start][1]
        queue = deque([(one_state, 1)])
        enqueued = {one_state}
        while queue:
            s, v = queue.popleft()
            least.setdefault(s, v)
            for bit in (0, 1):
                t = d.delta[s][bit]
                if t not in enqueued:
                    enqueued.add(t)
                    queue.append((t, 2 * v + bit))
        self._least_value = least
        return least

    def _classes(self) -> tuple[dict[int, int], tuple[int, ...]]:
        """Group numeral-reachable states into classes of the relation."""
        if self._state_class is None:
            least = self._table()
            groups: list[tuple[int, list[int]]] = []
            state_class: dict[int, int] = {}
            for s in sorted(least, key=least.get):
                v = least[s]
                for idx, (rep, members) in enumerate(groups):
                    if self.decide(rep, v):
                        members.append(s)
                        state_class[s] = idx
                        break
                else:
                    state_class[s] = len(groups)
                    groups.append((v, [s]))
            self._state_class = state_class
            self._reps = tuple(rep for rep, _ in groups)
        return self._state_class, self._reps

    def representatives(self) -> list[int]:
        """The least member of every class, ascending."""
        return list(self._classes()[1])

    @property
    def class_count(self) -> int:
        return len(self._classes()[1])

    def class_language(self, index: int) -> Dfa:
        """DFA for the canonical numerals of the values in class ``index``."""
        if index not in self._class_dfas:
            state_class, reps = self._classes()
            if not 0 <= index < len(reps):
                raise IndexError(f"no class {index}")
            accept = {s for s, c in state_class.items() if c == index}
            raw = Dfa(self.dfa.delta, self.dfa.start, accept)
            self._class_dfas[index] = minimize(
                product(raw, canonical_number_dfa(), operator.and_)
            )
        return self._class_dfas[index]

    def meet(self, other: "AutomaticEq") -> "AutomaticEq":
        """Conjunction of the two relations (product automaton)."""
        return AutomaticEq._trust(product(self.dfa, other.dfa, operator.and_))

    def join_certificate(self, other: "AutomaticEq") -> "JoinCertificate":
        """Join, together with the finite evidence it is built from.

        Classes of the two relations are nodes of a bipartite graph with an
        edge whenever the class languages intersect; the join's classes are
        the connected components.  Each edge carries its least shared value
        as a witness.
        """
        left_count = self.class_count
        right_count = other.class_count
        edges = []
        witnesses = {}
        for i in range(left_count):
            for j in range(right_count):
                inter = product(
                    self.class_language(i), other.class_language(j), operator.and_
                )
                word = shortest_accepted(inter)
                if word is not None:
                    edges.append((i, j))
                    witnesses[(i, j)] = int(word, 2)
        parent = list(range(left_count + right_count))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i, j in edges:
            ri, rj = find(i), find(left_count + j)
            if ri != rj:
                parent[ri] = rj
        component = {}
        left_component = []
        for i in range(left_count):
            left_component.append(component.setdefault(find(i), len(component)))
        state_class, _ = self._classes()
        key_of = {s: left_component[c] for s, c in state_class.items()}
        delta01 = tuple((row[0], row[1]) for row in self.dfa.delta)
        joined = AutomaticEq._trust(
            kernel_pair_dfa(delta01, self.dfa.start, key_of)
        )
        return JoinCertificate(
            result=joined,
            left_representatives=tuple(self.representatives()),
            right_representatives=tuple(other.representatives()),
            edges=tuple(edges),
            witnesses=dict(witnesses),
            left_components=tuple(left_component),
        )

    def join(self, other: "AutomaticEq") -> "AutomaticEq":
        """Smallest automatic equivalence above both relations."""
        return self.join_certificate(other).result

    def coarsen(self, blocks: Sequence[Iterable[int]]) -> "AutomaticEq":
        """Merge whole classes: ``blocks`` partitions the class indices, and
        the result relates m, n iff their classes fall in the same block."""
        state_class, reps = self._classes()
        block_of: dict[int, int] = {}
        for b, block in enumerate(blocks):
            for idx in block:
                if idx in block_of or not 0 <= idx < len(reps):
                    raise ValueError(f"bad class grouping at index {idx}")
                block_of[idx] = b
        if len(block_of) != len(reps):
            raise ValueError("grouping must cover every class exactly once")
        key_of = {s: block_of[c] for s, c in state_class.items()}
        delta01 = tuple((row[0], row[1]) for row in self.dfa.delta)
        return AutomaticEq._trust(kernel_pair_dfa(delta01, self.dfa.start, key_of))

    def restrict(self, n: int) -> Partition:
        """Materialize the relation on {0..n-1} for cross-checking."""
        labels = []
        for x in range(n):
            for y in range(x + 1):
                if self.decide(y, x):
                    labels.append(labels[y] if y < x else x)
                    break
        return Partition(labels)

    def __repr__(self) -> str:
        return f"AutomaticEq({self.dfa!r})"


@dataclass(frozen=True)
class JoinCertificate:
    result: AutomaticEq
    left_representatives: tuple[int, ...]
    right_representatives: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    witnesses: dict[tuple[int, int], int]
    left_components: tuple[int, ...]

    def cutoff(self) -> int:
        """A bound strictly above every representative and witness; restricting
        both sides to at least this many values makes the join exact."""
        vals = (
            list(self.left_representatives)
            + list(self.right_representatives)
            + list(self.witnesses.values())
        )
        return max(vals) + 1


# canonicality tracker used inside kernel_pair_dfa: 0 empty, 1 "0", 2 "1...", 3 dead
_TRK = ((1, 2), (3, 3), (2, 2), (3, 3))
_TRK_DONE = (1, 2)


def kernel_pair_dfa(
    delta01: Sequence[tuple[int, int]],
    start: int,
    key_of: Mapping[int, Hashable],
    accept: Callable[[Hashable, Hashable], bool] = operator.eq,
) -> Dfa:
    """Pair DFA for a relation defined through a classifier automaton.

    ``delta01`` is a total automaton over the digits; reading a canonical
    numeral w from ``start`` ends in some state s, and ``key_of[s]`` is the
    feature assigned to the value of w.  The returned DFA accepts
    ``u B v`` (u, v canonical) iff ``accept(key(u), key(v))``.

    States the classifier cannot reach on canonical numerals may be omitted
    from ``key_of``.
    """
    missing = object()

    def key(s: int) -> Hashable:
        return key_of.get(s, missing)

    dead = ("dead",)
    start_node = ("l", start, 0)
    index: dict[object, int] = {dead: 0, start_node: 1}
    queue = deque([dead, start_node])
    rows: list[list[int] | None] = [None, None]
    accepting = set()

    def intern(node) -> int:
        if node not in index:
            index[node] = len(index)
            rows.append(None)
            queue.append(node)
        return index[node]

    while queue:
        node = queue.popleft()
        i = index[node]
        if rows[i] is not None:
            continue
        if node == dead:
            rows[i] = [0, 0, 0]
            continue
        phase = node[0]
        if phase == "l":
            _, s, trk = node
            row = []
            for bit in (0, 1):
                t = _TRK[trk][bit]
                row.append(0 if t == 3 else intern(("l", delta01[s][bit], t)))
            if trk in _TRK_DONE:
                row.append(intern(("r", start, 0, key(s))))
            else:
                row.append(0)
            rows[i] = row
        else:
            _, s, trk, want = node
            row = []
            for bit in (0, 1):
                t = _TRK[trk][bit]
                row.append(0 if t == 3 else intern(("r", delta01[s][bit], t, want)))
            row.append(0)
            rows[i] = row
            if trk in _TRK_DONE and key(s) is not missing and want is not missing:
                if accept(key(s), want):
                    accepting.add(i)
    return Dfa(rows, 1, accepting)


def kernel_relation(
    delta01: Sequence[tuple[int, int]],
    start: int,
    key_of: Mapping[int, Hashable],
) -> AutomaticEq:
    """Automatic relation "same classifier feature"; an equivalence by
    construction (kernel of a function)."""
    return AutomaticEq._trust(kernel_pair_dfa(delta01, start, key_of))


def universal_relation() -> AutomaticEq:
    """The single-class relation on all naturals."""
    return kernel_relation(((0, 0),), 0, {0: 0})


def value_mod_relation(modulus: int) -> AutomaticEq:
    """Congruence modulo ``modulus``."""
    if modulus < 1:
        raise ValueError("modulus must be positive")
    delta = tuple(((2 * s) % modulus, (2 * s + 1) % modulus) for s in range(modulus))
    return kernel_relation(delta, 0, {s: s for s in range(modulus)})


def bitlength_relation(cap: int) -> AutomaticEq:
    """Same bit length, with lengths >= cap merged into one class."""
    if cap < 1:
        raise ValueError("cap must be positive")
    delta = tuple((min(s + 1, cap), min(s + 1, cap)) for s in range(cap + 1))
    return kernel_relation(delta, 0, {s: s for s in range(cap + 1)})


def bitlength_parity_relation() -> AutomaticEq:
    """Values whose numerals have the same length parity."""
    return kernel_relation(((1, 1), (0, 0)), 0, {0: 0, 1: 1})


def low_threshold_relation() -> AutomaticEq:
    """Two classes: values below 2 and values at least 2."""
    delta = ((1, 1), (2, 2), (2, 2))
    return kernel_relation(delta, 0, {0: "na", 1: "low", 2: "high"})


def prefix_relation() -> AutomaticEq:
    """Classes by the first two numeral symbols: {0}, {1}, 10..., 11... ."""
    # states: 0 empty, 1 "0", 2 "1", 3 "10...", 4 "11...", 5 junk
    delta = ((1, 2), (5, 5), (3, 4), (3, 3), (4, 4), (5, 5))
    return kernel_relation(delta, 0, {s: s for s in range(6)})


def singleton_family(i: int) -> AutomaticEq:
    """The two-class relation separating {i} from everything else."""
    if i < 0:
        raise ValueError("naturals only")
    word = binary(i)
    length = len(word)
    # states 0..length track a matched prefix; state length+1 is mismatch
    mism = length + 1
    delta = []
    for p in range(length):
        want = int(word[p])
        delta.append(tuple(p + 1 if bit == want else mism for bit in (0, 1)))
    delta.append((mism, mism))  # matched completely; any further digit breaks it
    delta.append((mism, mism))
    key = {s: False for s in range(length + 2)}
    key[length] = True
    return kernel_relation(tuple(delta), 0, key)


def family_meet_demo(k: int) -> list[int]:
    """Fold meets of the singleton families 1..k and report the class count
    after each step; the counts grow without bound as k grows."""
    if k < 1:
        raise ValueError("k must be at least 1")
    counts = []
    acc = singleton_family(1)
    counts.append(acc.class_count)
    for i in range(2, k + 1):
        acc = acc.meet(singleton_family(i))
        counts.append(acc.class_count)
    return counts


@lru_cache(maxsize=1)
def corpus() -> dict:
    """The shipped collection of certified automatic relations."""
    return {
        "universal": universal_relation(),
        "parity": value_mod_relation(2),
        "mod3": value_mod_relation(3),
        "mod4": value_mod_relation(4),
        "bitlen3": bitlength_relation(3),
        "bitlen4": bitlength_relation(4),
        "bitlen_parity": bitlength_parity_relation(),
        "prefix2": prefix_relation(),
        "low2": low_threshold_relation(),
        "single1": singleton_family(1),
        "single3": singleton_family(3),
    }


def first_bit_differs_dfa() -> Dfa:
    """Pair DFA relating m, n iff their numerals start with different digits.
    Not reflexive; kept as a negative control for the checkers."""
    delta = ((1, 2), (1, 1), (2, 2))
    key = {0: "na", 1: "zero", 2: "one"}
    return kernel_pair_dfa(delta, 0, key, accept=operator.ne)


def shorter_than_dfa(cap: int = 4) -> Dfa:
    """Pair DFA for "m's numeral is strictly shorter than n's" with lengths
    capped; asymmetric, a negative control for check_symmetric."""
    delta = tuple((min(s + 1, cap), min(s + 1, cap)) for s in range(cap + 1))
    key = {s: s for s in range(cap + 1)}
    return kernel_pair_dfa(delta, 0, key, accept=operator.lt)


def shared_feature_dfa() -> Dfa:
    """Pair DFA relating m, n iff they share their last digit or their capped
    numeral length.  Reflexive and symmetric but not transitive; a negative
    control for check_transitive."""
    # classifier tracks (last digit, min(length, 2)); start length component 0
    states = [(b, l) for b in (0, 1) for l in (0, 1, 2)]
    idx = {st: i for i, st in enumerate(states)}
    delta = tuple(
        (idx[(0, min(l + 1, 2))], idx[(1, min(l + 1, 2))]) for (b, l) in states
    )
    key = {idx[st]: st for st in states}

    def overlap(k1, k2):
        return k1[0] == k2[0] or k1[1] == k2[1]

    return kernel_pair_dfa(delta, idx[(0, 0)], key, accept=overlap)
