import pytest
from hypothesis import given, strategies as st

from equlat.partition import (
    Atom,
    InvalidPartition,
    InvalidUniverse,
    NotSingular,
    Partition,
    UniverseMismatch,
    all_partitions,
    singular_complement_valid,
)


def _partition_of(n):
    @st.composite
    def build(draw):
        labels = [0]
        used = [0]
        for x in range(1, n):
            pick = draw(st.integers(0, len(used)))
            if pick == len(used):
                labels.append(x)
                used.append(x)
            else:
                labels.append(used[pick])
        return Partition(labels)

    return build()


@st.composite
def partitions(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    return draw(_partition_of(n))


@st.composite
def partition_pairs(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    return draw(_partition_of(n)), draw(_partition_of(n))


class TestConstructors:
    def test_bottom(self):
        assert Partition.bottom(3).classes() == ((0,), (1,), (2,))
        assert Partition.bottom(1).classes() == ((0,),)
        assert Partition.bottom(8).class_count == 8

    def test_top(self):
        assert Partition.top(3).classes() == ((0, 1, 2),)
        assert Partition.top(8).class_count == 1
        assert Partition.top(1) == Partition.bottom(1)

    def test_empty_universe_rejected(self):
        with pytest.raises(InvalidUniverse):
            Partition.bottom(0)
        with pytest.raises(InvalidUniverse):
            Partition.top(0)

    def test_from_classes(self):
        p = Partition.from_classes([{0, 1}, {2}])
        assert p.labels == (0, 0, 2)
        assert Partition.from_classes([{1, 0}, {2}]) == p

    def test_from_classes_rejects_overlap(self):
        with pytest.raises(InvalidPartition):
            Partition.from_classes([{0, 1}, {1, 2}])

    def test_from_classes_rejects_gap(self):
        with pytest.raises(InvalidPartition):
            Partition.from_classes([{0}, {2}])

    def test_from_classes_rejects_empty_class(self):
        with pytest.raises(InvalidPartition):
            Partition.from_classes([{0, 1}, set()])

    def test_noncanonical_labels_rejected(self):
        with pytest.raises(InvalidPartition):
            Partition((1, 1))  # label must be the least member


class TestRelatedAndOrder:
    def test_related(self):
        assert Partition.top(3).related(0, 2)
        assert not Partition.bottom(3).related(0, 2)

    @given(partitions())
    def test_reflexive(self, e):
        assert all(e.related(x, x) for x in range(e.universe_size))

    @given(partitions())
    def test_bounds(self, e):
        n = e.universe_size
        assert Partition.bottom(n).leq(e)
        assert e.leq(Partition.top(n))

    def test_leq_antisymmetric_exhaustive(self):
        for n in range(1, 5):
            parts = list(all_partitions(n))
            for e in parts:
                for f in parts:
                    if e.leq(f) and f.leq(e):
                        assert e == f

    def test_related_out_of_range(self):
        with pytest.raises(ValueError):
            Partition.top(3).related(0, 3)

    def test_universe_mismatch(self):
        with pytest.raises(UniverseMismatch):
            Partition.top(3).meet(Partition.top(4))


class TestMeetJoin:
    def test_meet_crossing_pairs_is_bottom(self):
        e = Partition.from_classes([{0, 1}, {2, 3}])
        f = Partition.from_classes([{0, 2}, {1, 3}])
        assert e.meet(f) == Partition.bottom(4)

    def test_join_chains_to_top(self):
        e = Partition.from_classes([{0, 1}, {2, 3}])
        f = Partition.from_classes([{1, 2}, {0}, {3}])
        assert e.join(f) == Partition.top(4)

    @given(partitions())
    def test_identities(self, e):
        n = e.universe_size
        assert e.meet(Partition.top(n)) == e
        assert e.join(Partition.bottom(n)) == e
        assert e.meet(e) == e
        assert e.join(e) == e

    @given(partition_pairs())
    def test_meet_is_conjunction(self, pair):
        e, f = pair
        m = e.meet(f)
        n = e.universe_size
        for x in range(n):
            for y in range(n):
                assert m.related(x, y) == (e.related(x, y) and f.related(x, y))

    @given(partition_pairs())
    def test_order_compatibility(self, pair):
        e, f = pair
        assert e.leq(f) == (e.meet(f) == e) == (e.join(f) == f)

    @given(partition_pairs())
    def test_absorption(self, pair):
        e, f = pair
        assert e.meet(e.join(f)) == e
        assert e.join(e.meet(f)) == e


class TestSingular:
    def test_top_is_singular(self):
        assert Partition.top(3).is_singular()
        assert Partition.top(3).non_singleton_class() == (0, 1, 2)

    def test_bottom_is_not(self):
        assert not Partition.bottom(3).is_singular()
        with pytest.raises(NotSingular):
            Partition.bottom(3).non_singleton_class()

    def test_explicit(self):
        e = Partition.from_classes([{0, 2}, {1}, {3}])
        assert e.is_singular()
        assert e.non_singleton_class() == (0, 2)


class TestComplements:
    def test_bounds_are_complements(self):
        for n in (1, 2, 5):
            assert Partition.bottom(n).is_complement(Partition.top(n))

    def test_self_is_not_complement(self):
        for n in range(2, 6):
            for e in all_partitions(n):
                if e not in (Partition.bottom(n), Partition.top(n)):
                    assert not e.is_complement(e)

    def test_singular_example(self):
        e = Partition.from_classes([{0, 2}, {1}])
        f = Partition.from_classes([{0, 1}, {2}])
        assert e.is_complement(f)

    def test_counting_rule_examples(self):
        e2 = Partition.from_classes([{0, 1}])
        assert singular_complement_valid(e2, Partition.bottom(2))
        e3 = Partition.top(3)
        f3 = Partition.from_classes([{0, 1}, {2}])
        assert not singular_complement_valid(e3, f3)

    def test_counting_rule_agrees_exhaustively(self):
        for n in range(2, 5):
            parts = list(all_partitions(n))
            for e in parts:
                if not e.is_singular():
                    continue
                for f in parts:
                    assert e.is_complement(f) == singular_complement_valid(e, f)


class TestLeastElementComplement:
    def test_top_maps_to_bottom(self):
        for n in range(1, 7):
            assert Partition.top(n).least_element_complement() == Partition.bottom(n)

    def test_bottom_maps_to_top(self):
        for n in range(1, 7):
            assert Partition.bottom(n).least_element_complement() == Partition.top(n)

    def test_two_pair_example(self):
        e = Partition.from_classes([{0, 1}, {2, 3}])
        c = e.least_element_complement()
        assert c.is_singular() and c.non_singleton_class() == (0, 2)
        assert e.is_complement(c)

    @given(partitions())
    def test_always_a_complement(self, e):
        assert e.is_complement(e.least_element_complement())


class TestAtoms:
    def test_bottom_decomposes_to_nothing(self):
        assert Partition.bottom(5).atoms() == []

    def test_top3(self):
        assert [(a.a, a.b) for a in Partition.top(3).atoms()] == [(0, 1), (0, 2)]

    def test_atom_validation(self):
        with pytest.raises(InvalidPartition):
            Atom(2, 1, 4)
        with pytest.raises(InvalidPartition):
            Atom(0, 4, 4)

    @given(partitions())
    def test_recomposition(self, e):
        acc = Partition.bottom(e.universe_size)
        for atom in e.atoms():
            acc = acc.join(atom.as_partition())
        assert acc == e


class TestEnumeration:
    def test_bell_numbers(self):
        assert [sum(1 for _ in all_partitions(n)) for n in range(1, 6)] == [
            1,
            2,
            5,
            15,
            52,
        ]

    def test_all_canonical_and_distinct(self):
        seen = set(all_partitions(4))
        assert len(seen) == 15


class TestTextFormat:
    def test_round_trip_example(self):
        e = Partition.from_classes([{0, 1}, {2, 3}])
        assert Partition.from_text(e.to_text()) == e

    @given(partitions())
    def test_round_trip(self, e):
        assert Partition.from_text(e.to_text()) == e

    def test_malformed_line_names_the_line(self):
        with pytest.raises(ValueError, match="line 2"):
            Partition.from_text("class: 0 1\nclss: 2\n")

    def test_non_numeric_elements(self):
        with pytest.raises(ValueError, match="line 1"):
            Partition.from_text("class: zero\n")
