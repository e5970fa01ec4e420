"""Deterministic Turing machines, the clocked one-step relation on
(clock, configuration) points, and the bounded shadow of the halting problem.

Tape model: left-bounded, cell 0 always holds the endmarker ">"; the input
starts at cell 1 and the head starts there too.  Rules on the endmarker must
keep it in place and move right or stay, so stepping never leaves the tape.

Configuration coding, bit-exactly:

  * A configuration (state, head, tape) is serialized as the string
    ``"<state index>:<head>:<tape>"`` with both numbers in decimal.
    The tape string is canonical: it extends exactly to
    max(head, last non-blank cell), so there are no trailing blanks except
    possibly under the head.
  * The string is read as a bijective base-k numeral over the machine's
    serialization alphabet: the digits 0-9, then ":", then the machine's
    tape symbols in the fixed order the machine reports them (blank,
    endmarker, then rule symbols by sorted rule key; duplicates dropped).
    The empty string is 0, so every configuration code is >= 1.
  * A (clock, code) point is packed as cantor(clock, code) + 1, and the
    natural 0 is reserved for the sink that finished computations step to.
    Numbers that decode to (clock, 0) or to a malformed configuration are
    not valid points; they are singleton classes in every derived relation.

Machine descriptions are serialized through the same text format the zoo
files use and coded as bijective numerals over a fixed character alphabet,
which turns "machines" into naturals for the non-halting relations.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import isqrt
from typing import Callable, Mapping, Sequence

from importlib import resources

from .decider import DeciderEq, RelatedWitness, bounded_join, verify_chain
from .partition import Partition

ENDMARKER = ">"
MOVES = ("L", "R", "S")

_STATE_CHARS = set("abcdefghijklmnopqrstuvwxyz0123456789_")
_SYMBOL_CHARS = set("abcdefghijklmnopqrstuvwxyz0123456789_>#*+-.")


class MachineError(ValueError):
    """Raised for malformed machine descriptions."""


@dataclass(frozen=True)
class TmSpec:
    """A deterministic machine; the transition table is total on non-halting
    states over the whole tape alphabet."""

    states: tuple[str, ...]
    blank: str
    start: str
    halting: frozenset[str]
    rules: Mapping[tuple[str, str], tuple[str, str, str]]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if not self.states:
            raise MachineError("need at least one state")
        state_set = set(self.states)
        if len(state_set) != len(self.states):
            raise MachineError("duplicate state names")
        for q in self.states:
            if not q or set(q) - _STATE_CHARS:
                raise MachineError(f"bad state name {q!r}")
        if self.start not in state_set or not self.halting <= state_set:
            raise MachineError("start/halting states must be declared")
        if len(self.blank) != 1 or self.blank == ENDMARKER:
            raise MachineError("blank must be a single symbol distinct from the endmarker")
        for sym in self.alphabet:
            if len(sym) != 1 or sym not in _SYMBOL_CHARS:
                raise MachineError(f"bad tape symbol {sym!r}")
        for (q, a), (q2, b, mv) in self.rules.items():
            if q in self.halting:
                raise MachineError(f"halting state {q} has an outgoing rule")
            if q not in state_set or q2 not in state_set:
                raise MachineError(f"rule references unknown state: {q} or {q2}")
            if mv not in MOVES:
                raise MachineError(f"bad move {mv!r}")
            if a == ENDMARKER and (b != ENDMARKER or mv == "L"):
                raise MachineError(
                    f"rule on the endmarker in state {q} must keep it and not move left"
                )
        for q in self.states:
            if q in self.halting:
                continue
            for a in self.alphabet:
                if (q, a) not in self.rules:
                    raise MachineError(f"transition table not total: missing ({q}, {a})")

    @property
    def alphabet(self) -> tuple[str, ...]:
        symbols = [self.blank, ENDMARKER]
        for (_, a), (_, b, _) in sorted(self.rules.items()):
            symbols.extend((a, b))
        return tuple(dict.fromkeys(symbols))


@dataclass(frozen=True)
class Configuration:
    """Instantaneous description: control state, head cell, tape contents."""

    state: str
    head: int
    tape: str


def init_config(m: TmSpec, input_str: str) -> Configuration:
    """Initial configuration: endmarker, then the input, head on cell 1."""
    bad = set(input_str) - set(m.alphabet) | ({ENDMARKER} & set(input_str))
    if bad:
        raise MachineError(f"input uses symbols outside the tape alphabet: {sorted(bad)}")
    tape = ENDMARKER + input_str
    return _canonical_config(m, m.start, 1, tape)


def _last_nonblank(tape: str, blank: str) -> int:
    i = len(tape) - 1
    while i > 0 and tape[i] == blank:
        i -= 1
    return i


def _canonical_config(m: TmSpec, state: str, head: int, tape: str) -> Configuration:
    if head >= len(tape):
        tape = tape + m.blank * (head + 1 - len(tape))
    keep = max(head, _last_nonblank(tape, m.blank))
    return Configuration(state, head, tape[: keep + 1])


def step(m: TmSpec, c: Configuration) -> Configuration | None:
    """The unique successor configuration, or None when already halted."""
    if c.state in m.halting:
        return None
    sym = c.tape[c.head]
    state, write, move = m.rules[(c.state, sym)]
    tape = c.tape[: c.head] + write + c.tape[c.head + 1 :]
    head = c.head + (1 if move == "R" else -1 if move == "L" else 0)
    if head < 0:
        head = 0
    return _canonical_config(m, state, head, tape)


def trajectory(m: TmSpec, input_str: str, max_steps: int) -> list[Configuration]:
    """Configurations c_0 .. c_k with k = min(halting step, max_steps)."""
    out = [init_config(m, input_str)]
    while len(out) <= max_steps:
        nxt = step(m, out[-1])
        if nxt is None:
            break
        out.append(nxt)
    return out


def halt_step(m: TmSpec, input_str: str, max_steps: int) -> int | None:
    """Direct simulation: the step at which the machine halts, if within bound."""
    traj = trajectory(m, input_str, max_steps)
    return len(traj) - 1 if traj[-1].state in m.halting else None


# -- configuration coding ----------------------------------------------------

def serial_alphabet(m: TmSpec) -> tuple[str, ...]:
    return tuple(dict.fromkeys("0123456789:" + "".join(m.alphabet)))


def _string_to_nat(s: str, alphabet: Sequence[str]) -> int:
    index = {ch: i for i, ch in enumerate(alphabet)}
    k = len(alphabet)
    n = 0
    for ch in s:
        n = n * k + index[ch] + 1
    return n


def _nat_to_string(n: int, alphabet: Sequence[str]) -> str:
    k = len(alphabet)
    out = []
    while n > 0:
        n, r = divmod(n - 1, k)
        out.append(alphabet[r])
    return "".join(reversed(out))


def serialize_config(m: TmSpec, c: Configuration) -> str:
    return f"{m.states.index(c.state)}:{c.head}:{c.tape}"


def encode_config(m: TmSpec, c: Configuration) -> int:
    return _string_to_nat(serialize_config(m, c), serial_alphabet(m))


def decode_config(m: TmSpec, code: int) -> Configuration | None:
    """Inverse of encode_config on valid codes; None for anything malformed."""
    if code <= 0:
        return None
    try:
        text = _nat_to_string(code, serial_alphabet(m))
    except KeyError:  # pragma: no cover - alphabet indexing cannot fail
        return None
    parts = text.split(":", 2)
    if len(parts) != 3:
        return None
    state_tok, head_tok, tape = parts
    if not (state_tok.isdigit() and head_tok.isdigit()):
        return None
    if state_tok != str(int(state_tok)) or head_tok != str(int(head_tok)):
        return None  # decimal fields must be canonical
    state_idx, head = int(state_tok), int(head_tok)
    if state_idx >= len(m.states) or not tape:
        return None
    if tape[0] != ENDMARKER or set(tape) - set(m.alphabet):
        return None
    if not 0 <= head < len(tape):
        return None
    if len(tape) - 1 != max(head, _last_nonblank(tape, m.blank)):
        return None  # trailing blanks beyond the head are not canonical
    return Configuration(m.states[state_idx], head, tape)


def cantor_pair(a: int, b: int) -> int:
    return (a + b) * (a + b + 1) // 2 + b


def cantor_unpair(z: int) -> tuple[int, int]:
    w = (isqrt(8 * z + 1) - 1) // 2
    b = z - w * (w + 1) // 2
    return w - b, b


SINK = 0


def pack_point(clock: int, code: int) -> int:
    """Pack a (clock, configuration-code) point; (0, 0) is the sink 0."""
    if clock == 0 and code == 0:
        return SINK
    return cantor_pair(clock, code) + 1


def unpack_point(x: int) -> tuple[int, int]:
    if x == SINK:
        return (0, 0)
    return cantor_unpair(x - 1)


def _point_info(m: TmSpec) -> Callable[[int], tuple[int, int] | None]:
    """Cached map x -> (clock, arrow target) for valid non-sink points."""

    @lru_cache(maxsize=None)
    def info(x: int):
        if x == SINK:
            return None
        clock, code = unpack_point(x)
        if code == 0:
            return None
        c = decode_config(m, code)
        if c is None:
            return None
        if c.state in m.halting:
            return clock, SINK
        nxt = step(m, c)
        return clock, pack_point(clock + 1, encode_config(m, nxt))

    return info


def clocked_step(m: TmSpec) -> Callable[[int, int], bool]:
    """The one-step relation on packed points: the clock advances by one and
    the configuration advances by one machine step, except that a halted
    configuration steps to the sink."""
    info = _point_info(m)

    def arrow(x: int, y: int) -> bool:
        i = info(x)
        return i is not None and y == i[1]

    return arrow


def _approx(m: TmSpec, parity: int, info=None) -> DeciderEq:
    if info is None:
        info = _point_info(m)

    def gated_succ(x: int) -> int | None:
        i = info(x)
        if i is None or i[0] % 2 != parity:
            return None
        return i[1]

    def decide(x: int, y: int) -> bool:
        if x == y:
            return True
        sx, sy = gated_succ(x), gated_succ(y)
        return sx == y or sy == x or (sx is not None and sx == sy)

    return DeciderEq(
        decide,
        cost_note=f"closure of the {'even' if parity == 0 else 'odd'}-clock "
        "one-step relation; at most one simulated step per argument",
    )


def approx_even(m: TmSpec) -> DeciderEq:
    """Equivalence closure of the one-step relation restricted to even clocks.

    Edges from even clocks never chain (targets have odd clocks or are the
    sink), so the closure is exact with links of length at most one plus a
    shared-successor case."""
    return _approx(m, 0)


def approx_odd(m: TmSpec) -> DeciderEq:
    """Same as approx_even, for odd clocks."""
    return _approx(m, 1)


@dataclass(frozen=True)
class HaltsInSteps:
    steps: int
    witness: RelatedWitness
    universe_bound: int
    chain_bound: int


@dataclass(frozen=True)
class NoHaltWithinBound:
    step_bound: int
    universe_bound: int
    chain_bound: int
    explored: int


def halting_probe(
    m: TmSpec, input_str: str, step_bound: int
) -> HaltsInSteps | NoHaltWithinBound:
    """Decide bounded halting through the join search, not simulation.

    The computation halts iff its start point joins with the sink under the
    even/odd closures.  The search window is the set of points reachable
    within ``step_bound`` steps plus the sink (so the universe bound is the
    largest packed code reachable in that many steps), and the chain bound is
    2 * step_bound + 2.  A positive answer carries the verified chain.
    """
    configs = trajectory(m, input_str, step_bound)
    info = _point_info(m)
    even = _approx(m, 0, info)
    odd = _approx(m, 1, info)
    points = [pack_point(t, encode_config(m, c)) for t, c in enumerate(configs)]
    candidates = set(points) | {SINK}
    chain_bound = 2 * step_bound + 2
    universe_bound = max(candidates) + 1
    result = bounded_join(even, odd, points[0], SINK, candidates, chain_bound)
    if isinstance(result, RelatedWitness):
        if not verify_chain(even, odd, result, candidates, chain_bound):
            raise AssertionError("search returned an unverifiable chain")
        return HaltsInSteps(len(result.chain) - 2, result, universe_bound, chain_bound)
    return NoHaltWithinBound(step_bound, universe_bound, chain_bound, result.explored)


# -- machines as naturals ----------------------------------------------------

TM_TEXT_ALPHABET = "\n ->:_LRSabcdefghijklmnopqrstuvwxyz0123456789#*+."


def tm_to_text(m: TmSpec) -> str:
    lines = [
        "states: " + " ".join(m.states),
        "start: " + m.start,
        "halt: " + " ".join(sorted(m.halting)),
        "blank: " + m.blank,
    ]
    for (q, a), (q2, b, mv) in sorted(m.rules.items()):
        lines.append(f"rule: {q} {a} -> {q2} {b} {mv}")
    return "\n".join(lines) + "\n"


def tm_from_text(text: str, name: str = "") -> TmSpec:
    states: tuple[str, ...] = ()
    start = blank = None
    halting: frozenset[str] = frozenset()
    rules: dict[tuple[str, str], tuple[str, str, str]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("states:"):
            states = tuple(line.split(":", 1)[1].split())
        elif line.startswith("start:"):
            start = line.split(":", 1)[1].strip()
        elif line.startswith("halt:"):
            halting = frozenset(line.split(":", 1)[1].split())
        elif line.startswith("blank:"):
            blank = line.split(":", 1)[1].strip()
        elif line.startswith("rule:"):
            parts = line[len("rule:"):].split()
            if len(parts) != 6 or parts[2] != "->":
                raise MachineError(f"line {lineno}: expected 'rule: q a -> q2 b M'")
            q, a, _, q2, b, mv = parts
            if (q, a) in rules:
                raise MachineError(f"line {lineno}: duplicate rule for ({q}, {a})")
            rules[(q, a)] = (q2, b, mv)
        else:
            raise MachineError(f"line {lineno}: cannot parse {line!r}")
    if start is None or blank is None or not states:
        raise MachineError("missing 'states:', 'start:' or 'blank:' header")
    return TmSpec(states, blank, start, halting, rules, name=name)


def encode_tm(m: TmSpec) -> int:
    """The machine's canonical text as a bijective numeral: machines become
    naturals, so relations on machines are relations on naturals."""
    return _string_to_nat(tm_to_text(m), TM_TEXT_ALPHABET)


def decode_tm(x: int) -> TmSpec | None:
    if x <= 0:
        return None
    try:
        return tm_from_text(_nat_to_string(x, TM_TEXT_ALPHABET))
    except (MachineError, ValueError, KeyError):
        return None


def nonhalt_eq(n: int) -> DeciderEq:
    """The singular relation whose big class holds the (codes of) machines
    that do not halt within n steps on empty input; everything else, including
    numbers that decode to no machine, is a singleton."""
    if n < 1:
        raise ValueError("n must be at least 1")

    @lru_cache(maxsize=None)
    def still_running(x: int) -> bool:
        m = decode_tm(x)
        return m is not None and halt_step(m, "", n) is None

    return DeciderEq(
        lambda a, b: a == b or (still_running(a) and still_running(b)),
        cost_note=f"bounded simulation, fixed {n} steps",
    )


def nonhalt_family_meet(k: int, machines: Sequence[TmSpec]) -> Partition:
    """Fold the meets of nonhalt_eq(1..k) over an explicit machine list and
    materialize the result on the list's indices."""
    if k < 1:
        raise ValueError("k must be at least 1")
    codes = [encode_tm(m) for m in machines]
    result: Partition | None = None
    for n in range(1, k + 1):
        d = nonhalt_eq(n)
        level = Partition.from_classes(
            _index_classes(len(codes), lambda i, j: d.decide(codes[i], codes[j]))
        )
        result = level if result is None else result.meet(level)
    return result


def _index_classes(count: int, related) -> list[list[int]]:
    blocks: list[list[int]] = []
    for i in range(count):
        for block in blocks:
            if related(block[0], i):
                block.append(i)
                break
        else:
            blocks.append([i])
    return blocks


@lru_cache(maxsize=1)
def zoo() -> dict:
    """The shipped machines, keyed by name."""
    out = {}
    root = resources.files("equlat").joinpath("machines")
    for entry in sorted(root.iterdir(), key=lambda e: e.name):
        if entry.name.endswith(".tm"):
            name = entry.name[: -len(".tm")]
            out[name] = tm_from_text(entry.read_text(), name=name)
    return out


def load_machine(spec: str) -> TmSpec:
    """A zoo name, or a path to a machine file."""
    machines = zoo()
    if spec in machines:
        return machines[spec]
    try:
        with open(spec, "r", encoding="utf-8") as fh:
            return tm_from_text(fh.read(), name=spec)
    except OSError:
        raise MachineError(
            f"unknown machine {spec!r}; zoo has: {', '.join(sorted(machines))}"
        ) from None
