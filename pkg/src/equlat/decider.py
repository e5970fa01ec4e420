"""Equivalence relations given as total decision procedures on pairs of
naturals.

Totality and the equivalence axioms are undecidable for black-box
procedures, so registration runs a sampled axiom check over a finite window
(default {0..31}) and refuses procedures that fail it.  The join of two
decidable equivalences need not be decidable at all, which is why only a
bounded, witness-producing join search is offered: its negative answer means
"not found within the bounds", never "unrelated".
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable

from .partition import Partition

REGISTRATION_BOUND = 32


class NotAnEquivalence(ValueError):
    """A decision procedure violated an equivalence axiom on the sample."""


class DeciderEq:
    """A decision procedure (m, n) -> bool plus a free-text cost note."""

    __slots__ = ("_fn", "cost_note", "universe_hint")

    def __init__(
        self,
        fn: Callable[[int, int], bool],
        cost_note: str = "",
        universe_hint: int | None = None,
        check_bound: int = REGISTRATION_BOUND,
    ):
        self._fn = fn
        self.cost_note = cost_note
        self.universe_hint = universe_hint
        if check_bound:
            violation = _axiom_violation(fn, check_bound)
            if violation is not None:
                raise NotAnEquivalence(violation)

    def decide(self, m: int, n: int) -> bool:
        if m < 0 or n < 0:
            raise ValueError("naturals only")
        return bool(self._fn(m, n))

    def restrict(self, n: int) -> Partition:
        """Materialize on {0..n-1}; raises if the procedure is not an
        equivalence there."""
        labels = []
        for x in range(n):
            for y in range(x + 1):
                if self._fn(y, x):
                    labels.append(labels[y] if y < x else x)
                    break
            else:
                raise NotAnEquivalence(f"not reflexive at {x}")
        return Partition(labels)

    def __repr__(self) -> str:
        return f"DeciderEq({self.cost_note!r})"


def _axiom_violation(fn, bound: int) -> str | None:
    rel = [[bool(fn(m, n)) for n in range(bound)] for m in range(bound)]
    for m in range(bound):
        if not rel[m][m]:
            return f"not reflexive at {m}"
    for m in range(bound):
        for n in range(m):
            if rel[m][n] != rel[n][m]:
                return f"not symmetric at ({m}, {n})"
    rows = [frozenset(n for n in range(bound) if rel[m][n]) for m in range(bound)]
    for m in range(bound):
        for n in rows[m]:
            if not rows[n] <= rows[m]:
                p = min(rows[n] - rows[m])
                return f"not transitive at ({m}, {n}, {p})"
    return None


def is_equivalence_sampled(d: DeciderEq, bound: int) -> bool:
    """Exhaustive axiom check over {0..bound-1}; a sample, not a proof."""
    return _axiom_violation(d._fn, bound) is None


def bottom_decider() -> DeciderEq:
    return DeciderEq(lambda m, n: m == n, cost_note="constant-time equality")


def top_decider() -> DeciderEq:
    return DeciderEq(lambda m, n: True, cost_note="constant-time")


def parity_decider() -> DeciderEq:
    return DeciderEq(lambda m, n: m % 2 == n % 2, cost_note="constant-time parity")


def singular_from_predicate(p: Callable[[int], bool], cost_note: str = "") -> DeciderEq:
    """m ~ n iff m == n or both satisfy the predicate."""
    return DeciderEq(
        lambda m, n: m == n or (p(m) and p(n)),
        cost_note=cost_note or "predicate singular",
    )


def from_partition(part: Partition) -> DeciderEq:
    """Extend a finite partition to all naturals, with singletons above it."""
    n = part.universe_size
    return DeciderEq(
        lambda x, y: x == y or (x < n and y < n and part.related(x, y)),
        cost_note=f"table lookup below {n}",
        universe_hint=n,
    )


def meet_combinator(d1: DeciderEq, d2: DeciderEq) -> DeciderEq:
    """Decides the conjunction; always again an equivalence."""
    return DeciderEq(
        lambda m, n: d1._fn(m, n) and d2._fn(m, n),
        cost_note=f"({d1.cost_note}) && ({d2.cost_note})",
    )


def least_element_complement(d: DeciderEq) -> DeciderEq:
    """The singular relation grouping the least element of every class of
    ``d``; always a complement of ``d``.

    Decision: accept equal numbers outright; reject a number if anything
    smaller is d-related to it (it is then not least in its class); accept
    otherwise.  The scans over all smaller numbers make this linear-space and
    exponential-time in the input length.
    """

    def decide(m: int, n: int) -> bool:
        if m == n:
            return True
        if any(d._fn(k, m) for k in range(m)):
            return False
        if any(d._fn(k, n) for k in range(n)):
            return False
        return True

    return DeciderEq(
        decide,
        cost_note=f"least-element complement of ({d.cost_note}); "
        "scans all smaller values: linear space, exponential time",
    )


@dataclass(frozen=True)
class RelatedWitness:
    """A verified alternating chain from m to n through the two relations."""

    chain: tuple[int, ...]
    links: tuple[str, ...]  # "left"/"right" per consecutive pair


@dataclass(frozen=True)
class NotWithinBounds:
    """Search exhausted the bounds; says nothing about unrelatedness."""

    explored: int


def bounded_join(
    d1: DeciderEq,
    d2: DeciderEq,
    m: int,
    n: int,
    universe: int | Iterable[int],
    chain_bound: int,
) -> RelatedWitness | NotWithinBounds:
    """Breadth-first search for an alternating chain m ~ a1 ~ ... ~ n.

    ``universe`` is either a bound U (candidates are 0..U-1) or an explicit
    finite candidate collection; every chain element is drawn from it.  The
    chain uses at most ``chain_bound`` links, each holding under d1 or d2.
    """
    if isinstance(universe, int):
        candidates = list(range(universe))
    else:
        candidates = sorted(set(universe))
    if m not in candidates or n not in candidates:
        raise ValueError("endpoints must lie in the search universe")
    if m == n:
        return RelatedWitness((m,), ())
    parent: dict[int, int] = {m: m}
    frontier = deque([m])
    depth = 0
    while frontier and depth < chain_bound:
        depth += 1
        for _ in range(len(frontier)):
            x = frontier.popleft()
            for y in candidates:
                if y in parent:
                    continue
                if d1._fn(x, y) or d2._fn(x, y):
                    parent[y] = x
                    if y == n:
                        chain = [y]
                        while chain[-1] != m:
                            chain.append(parent[chain[-1]])
                        chain.reverse()
                        links = tuple(
                            "left" if d1._fn(a, b) else "right"
                            for a, b in zip(chain, chain[1:])
                        )
                        return RelatedWitness(tuple(chain), links)
                    frontier.append(y)
    return NotWithinBounds(explored=len(parent))


def verify_chain(
    d1: DeciderEq,
    d2: DeciderEq,
    witness: RelatedWitness,
    universe: int | Iterable[int],
    chain_bound: int,
) -> bool:
    """Re-check a witness link by link against the stated bounds."""
    chain = witness.chain
    if len(chain) - 1 > chain_bound:
        return False
    allowed = (
        range(universe) if isinstance(universe, int) else set(universe)
    )
    if any(x not in allowed for x in chain):
        return False
    for (a, b), tag in zip(zip(chain, chain[1:]), witness.links):
        d = d1 if tag == "left" else d2
        if not d._fn(a, b):
            return False
    return len(witness.links) == len(chain) - 1
