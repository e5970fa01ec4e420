"""Equivalence relations on a finite universe {0..n-1} and their lattice.

A Partition stores, for every element, the least element of its class
("canonical labeling").  With that normal form, structural equality is
semantic equality: two Partition values compare equal iff they describe the
same equivalence relation.

SmallEq carries the same idea over to relations on all of the naturals that
have finitely many classes: an explicit partition below a threshold, plus one
distinguished class that additionally contains every number >= threshold.

All values are immutable after construction and all operations are pure.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


class InvalidUniverse(ValueError):
    """Raised when a universe size is zero or negative."""


class InvalidPartition(ValueError):
    """Raised when class data does not describe a partition of {0..n-1}."""


class UniverseMismatch(ValueError):
    """Raised when an operation mixes relations on different universes."""


class NotSingular(ValueError):
    """Raised when a relation does not have exactly one non-singleton class."""


class Partition:
    """An equivalence relation on {0..n-1}, canonically labeled.

    ``labels[x]`` is the least element of the class of ``x``.
    """

    __slots__ = ("labels", "_classes")

    def __init__(self, labels: Sequence[int]):
        labels = tuple(labels)
        if not labels:
            raise InvalidUniverse("universe must contain at least one element")
        for x, lab in enumerate(labels):
            if not 0 <= lab <= x or labels[lab] != lab:
                raise InvalidPartition(
                    f"labeling is not canonical at element {x} (label {lab})"
                )
        self.labels = labels
        self._classes = None

    @classmethod
    def _mk(cls, labels: tuple[int, ...]) -> "Partition":
        # Fast path for internal construction of already-canonical labelings.
        p = object.__new__(cls)
        p.labels = labels
        p._classes = None
        return p

    @classmethod
    def bottom(cls, n: int) -> "Partition":
        """The finest relation: every element is its own class."""
        if n < 1:
            raise InvalidUniverse(f"invalid universe size {n}")
        return cls._mk(tuple(range(n)))

    @classmethod
    def top(cls, n: int) -> "Partition":
        """The coarsest relation: one class containing everything."""
        if n < 1:
            raise InvalidUniverse(f"invalid universe size {n}")
        return cls._mk((0,) * n)

    @classmethod
    def from_classes(cls, classes: Iterable[Iterable[int]]) -> "Partition":
        """Build from explicit classes, which must tile {0..n-1} exactly."""
        seen: dict[int, int] = {}
        for block in classes:
            block = sorted(set(block))
            if not block:
                raise InvalidPartition("empty class")
            lab = block[0]
            for x in block:
                if x < 0:
                    raise InvalidPartition(f"negative element {x}")
                if x in seen:
                    raise InvalidPartition(f"element {x} appears in two classes")
                seen[x] = lab
        if not seen:
            raise InvalidUniverse("no classes given")
        n = max(seen) + 1
        if len(seen) != n:
            missing = min(set(range(n)) - set(seen))
            raise InvalidPartition(f"element {missing} is not covered")
        return cls._mk(tuple(seen[x] for x in range(n)))

    @property
    def universe_size(self) -> int:
        return len(self.labels)

    def related(self, x: int, y: int) -> bool:
        """True iff x and y are in the same class."""
        n = len(self.labels)
        if not (0 <= x < n and 0 <= y < n):
            raise ValueError(f"element out of range for universe {n}")
        return self.labels[x] == self.labels[y]

    def _require_same_universe(self, other: "Partition") -> None:
        if len(self.labels) != len(other.labels):
            raise UniverseMismatch(
                f"universe sizes differ: {len(self.labels)} vs {len(other.labels)}"
            )

    def leq(self, other: "Partition") -> bool:
        """Refinement order: every class of self sits inside a class of other."""
        self._require_same_universe(other)
        ol = other.labels
        return all(ol[x] == ol[lab] for x, lab in enumerate(self.labels))

    def meet(self, other: "Partition") -> "Partition":
        """Greatest lower bound: classes are the non-empty pairwise intersections."""
        self._require_same_universe(other)
        first: dict[tuple[int, int], int] = {}
        out = []
        for x, (a, b) in enumerate(zip(self.labels, other.labels)):
            lab = first.setdefault((a, b), x)
            out.append(lab)
        return Partition._mk(tuple(out))

    def join(self, other: "Partition") -> "Partition":
        """Least upper bound, computed by disjoint-set union of both relations."""
        self._require_same_universe(other)
        n = len(self.labels)
        parent = list(range(n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for labels in (self.labels, other.labels):
            for x in range(n):
                rx, ry = find(x), find(labels[x])
                if rx != ry:
                    parent[rx] = ry
        first: dict[int, int] = {}
        out = []
        for x in range(n):
            lab = first.setdefault(find(x), x)
            out.append(lab)
        return Partition._mk(tuple(out))

    def classes(self) -> tuple[tuple[int, ...], ...]:
        """All classes, each sorted ascending, ordered by their labels."""
        if self._classes is None:
            groups: dict[int, list[int]] = {}
            for x, lab in enumerate(self.labels):
                groups.setdefault(lab, []).append(x)
            self._classes = tuple(tuple(g) for g in groups.values())
        return self._classes

    @property
    def class_count(self) -> int:
        return len(self.classes())

    def is_singular(self) -> bool:
        """True iff exactly one class has two or more elements."""
        return sum(1 for c in self.classes() if len(c) >= 2) == 1

    def non_singleton_class(self) -> tuple[int, ...]:
        big = [c for c in self.classes() if len(c) >= 2]
        if len(big) != 1:
            raise NotSingular(f"{len(big)} non-singleton classes, expected exactly 1")
        return big[0]

    def is_complement(self, other: "Partition") -> bool:
        """True iff the meet is bottom and the join is top."""
        self._require_same_universe(other)
        n = len(self.labels)
        return (
            self.meet(other).labels == tuple(range(n))
            and self.join(other).labels == (0,) * n
        )

    def least_element_complement(self) -> "Partition":
        """The singular relation grouping the least element of every class.

        This is always a complement of ``self``.  Degenerate inputs stay
        consistent: bottom maps to top (every element is least in its own
        class) and top maps to bottom (the group is just {0}).
        """
        label_set = set(self.labels)
        return Partition._mk(
            tuple(0 if x in label_set else x for x in range(len(self.labels)))
        )

    def atoms(self) -> list["Atom"]:
        """Decompose into atoms: (least, other) pairs inside each class.

        The join of the returned atoms as partitions reproduces ``self``;
        bottom decomposes into the empty list.
        """
        n = len(self.labels)
        out = []
        for block in self.classes():
            for x in block[1:]:
                out.append(Atom(block[0], x, n))
        return out

    def to_text(self) -> str:
        """One line per class: ``class: 0 1``."""
        return "".join(
            "class: " + " ".join(str(x) for x in block) + "\n"
            for block in self.classes()
        )

    @classmethod
    def from_text(cls, text: str) -> "Partition":
        return cls.from_classes(_parse_class_lines(text.splitlines(), 0))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Partition) and self.labels == other.labels

    def __hash__(self) -> int:
        return hash(self.labels)

    def __repr__(self) -> str:
        body = " | ".join(" ".join(str(x) for x in c) for c in self.classes())
        return f"Partition[{body}]"


@dataclass(frozen=True)
class Atom:
    """The equivalence whose only non-singleton class is {a, b}."""

    a: int
    b: int
    universe_size: int

    def __post_init__(self):
        if not 0 <= self.a < self.b < self.universe_size:
            raise InvalidPartition(
                f"atom ({self.a}, {self.b}) out of range for universe {self.universe_size}"
            )

    def as_partition(self) -> Partition:
        labels = list(range(self.universe_size))
        labels[self.b] = self.a
        return Partition._mk(tuple(labels))


def singular_complement_valid(e: Partition, f: Partition) -> bool:
    """Check the counting characterization of complements of a singular relation:

    every class of ``f`` must contain exactly one element of the non-singleton
    class of ``e``.
    """
    e._require_same_universe(f)
    big = set(e.non_singleton_class())
    return all(sum(1 for x in block if x in big) == 1 for block in f.classes())


def all_partitions(n: int) -> Iterator[Partition]:
    """Enumerate every partition of {0..n-1} (Bell(n) of them), canonically."""
    if n < 1:
        raise InvalidUniverse(f"invalid universe size {n}")
    labels = [0] * n

    def extend(x: int, used: list[int]) -> Iterator[Partition]:
        if x == n:
            yield Partition._mk(tuple(labels))
            return
        for lab in used:
            labels[x] = lab
            yield from extend(x + 1, used)
        labels[x] = x
        used.append(x)
        yield from extend(x + 1, used)
        used.pop()

    labels[0] = 0
    yield from extend(1, [0])


def random_partition(n: int, rng: random.Random) -> Partition:
    """A random partition drawn by uniform class choice per element."""
    labels = [0] * n
    used = [0]
    for x in range(1, n):
        pick = rng.randrange(len(used) + 1)
        if pick == len(used):
            labels[x] = x
            used.append(x)
        else:
            labels[x] = used[pick]
    return Partition._mk(tuple(labels))


class SmallEq:
    """An equivalence on all naturals with finitely many classes.

    Elements below ``threshold`` are partitioned explicitly; every element at
    or above the threshold belongs to the class labeled ``tail_label``.
    Canonical form uses least-member labels and the least threshold, so
    structural equality is semantic equality.
    """

    __slots__ = ("threshold", "labels", "tail_label")

    def __init__(self, threshold: int, labels: Sequence[int], tail_label: int):
        labels = list(labels)
        if threshold < 0 or len(labels) != threshold:
            raise InvalidPartition("labels must cover exactly {0..threshold-1}")
        # Shrink: an explicit element just below the threshold that sits in the
        # tail class is redundant.
        while threshold > 0 and labels[threshold - 1] == tail_label:
            threshold -= 1
            labels.pop()
        relabel: dict[int, int] = {}
        for x, lab in enumerate(labels):
            relabel.setdefault(lab, x)
        canon_tail = relabel.setdefault(tail_label, threshold)
        self.threshold = threshold
        self.labels = tuple(relabel[lab] for lab in labels)
        self.tail_label = canon_tail

    @classmethod
    def top(cls) -> "SmallEq":
        return cls(0, (), 0)

    @classmethod
    def singular(cls, members_below: Iterable[int], threshold: int) -> "SmallEq":
        """The singular relation whose big class is members_below plus the
        upper set at ``threshold``; everything else is a singleton."""
        members = set(members_below)
        if any(x < 0 or x >= threshold for x in members):
            raise InvalidPartition("members must lie below the threshold")
        # `threshold` itself is a safe temporary id for the tail class.
        labels = [threshold if x in members else x for x in range(threshold)]
        return cls(threshold, labels, threshold)

    def class_of(self, x: int) -> int:
        if x < 0:
            raise ValueError("naturals only")
        return self.labels[x] if x < self.threshold else self.tail_label

    def related(self, x: int, y: int) -> bool:
        return self.class_of(x) == self.class_of(y)

    @property
    def class_count(self) -> int:
        return len(set(self.labels) | {self.tail_label})

    def tail_members_below(self) -> tuple[int, ...]:
        """The finite part of the tail class (members below the threshold)."""
        return tuple(
            x for x in range(self.threshold) if self.labels[x] == self.tail_label
        )

    def is_singular(self) -> bool:
        """True iff every class other than the (infinite) tail is a singleton."""
        counts: dict[int, int] = {}
        for lab in self.labels:
            counts[lab] = counts.get(lab, 0) + 1
        return all(c == 1 for lab, c in counts.items() if lab != self.tail_label)

    def meet(self, other: "SmallEq") -> "SmallEq":
        """Exact meet; the tails intersect, so the result is again a SmallEq."""
        threshold = max(self.threshold, other.threshold)
        pair_ids: dict[tuple[int, int], int] = {}

        def pid(key: tuple[int, int]) -> int:
            return pair_ids.setdefault(key, len(pair_ids))

        labels = [pid((self.class_of(x), other.class_of(x))) for x in range(threshold)]
        tail = pid((self.tail_label, other.tail_label))
        return SmallEq(threshold, labels, tail)

    def restrict(self, n: int) -> Partition:
        """Materialize the relation on {0..n-1} as an explicit Partition."""
        if n < 1:
            raise InvalidUniverse(f"invalid universe size {n}")
        first: dict[int, int] = {}
        out = []
        for x in range(n):
            lab = first.setdefault(self.class_of(x), x)
            out.append(lab)
        return Partition._mk(tuple(out))

    def to_text(self) -> str:
        lines = [f"threshold: {self.threshold}", f"tail: {self.tail_label}"]
        groups: dict[int, list[int]] = {}
        for x, lab in enumerate(self.labels):
            groups.setdefault(lab, []).append(x)
        for lab in sorted(groups):
            lines.append("class: " + " ".join(str(x) for x in groups[lab]))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "SmallEq":
        lines = text.splitlines()
        threshold = tail = None
        body_start = 0
        for i, raw in enumerate(lines):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("threshold:") and threshold is None:
                threshold = int(line.split(":", 1)[1])
            elif line.startswith("tail:") and tail is None:
                tail = int(line.split(":", 1)[1])
            else:
                body_start = i
                break
        else:
            body_start = len(lines)
        if threshold is None or tail is None:
            raise ValueError("missing 'threshold:' or 'tail:' header")
        body = lines[body_start:]
        if threshold == 0:
            if any(line.strip() for line in body):
                raise ValueError("threshold 0 admits no class lines")
            return cls(0, (), tail)
        blocks = _parse_class_lines(body, body_start)
        labels = [-1] * threshold
        for block in blocks:
            block = sorted(block)
            for x in block:
                if x >= threshold or labels[x] != -1:
                    raise InvalidPartition(f"element {x} misplaced below threshold")
                labels[x] = block[0]
        if any(l == -1 for l in labels):
            raise InvalidPartition("classes do not cover {0..threshold-1}")
        if tail != threshold and (tail >= threshold or labels[tail] != tail):
            raise ValueError(f"tail label {tail} does not name a class")
        return cls(threshold, labels, tail)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, SmallEq)
            and self.threshold == other.threshold
            and self.labels == other.labels
            and self.tail_label == other.tail_label
        )

    def __hash__(self) -> int:
        return hash((self.threshold, self.labels, self.tail_label))

    def __repr__(self) -> str:
        return (
            f"SmallEq(threshold={self.threshold}, labels={self.labels}, "
            f"tail={self.tail_label})"
        )


def _parse_class_lines(lines: Sequence[str], offset: int) -> list[list[int]]:
    blocks = []
    for i, raw in enumerate(lines):
        line = raw.strip()
        if not line:
            continue
        lineno = offset + i + 1
        if not line.startswith("class:"):
            raise ValueError(f"line {lineno}: expected 'class: <elements>'")
        try:
            block = [int(tok) for tok in line[len("class:"):].split()]
        except ValueError:
            raise ValueError(f"line {lineno}: elements must be decimal naturals") from None
        if not block:
            raise ValueError(f"line {lineno}: empty class")
        blocks.append(block)
    if not blocks:
        raise ValueError("no class lines found")
    return blocks
