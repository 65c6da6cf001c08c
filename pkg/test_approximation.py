"""
Unit Tests: Approximation Operators
Lower/upper approximations, derived regions, partition validation and the
exhaustive operator-law check.
"""

from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings as hyp_settings, strategies as st

from approximation import (
    PAIR_PROPERTIES,
    PAWLAK_PROPERTIES,
    accuracy,
    boundary_region,
    equivalence_class,
    identity_partition,
    is_definable,
    lower_approximation,
    lower_approximation_by_elements,
    negative_region,
    universal_partition,
    upper_approximation,
    upper_approximation_by_elements,
    verify_pawlak_properties,
)
from exceptions import (
    CapExceededError,
    CoverageError,
    EmptyBlockError,
    EmptyUniverseError,
    OverlapError,
    UniverseMismatchError,
)
from instances import document_to_partition, load_instance, random_partition
from models import Partition, Subset, Universe

FIXTURES = Path(__file__).resolve().parent / "fixtures"


def _example2() -> Partition:
    return document_to_partition(load_instance(FIXTURES / "example2.json"))


def _names(p: Partition, subset: Subset) -> list:
    return p.universe.labels(subset)


# ============ OPERATORS ============


def test_lower_approximation_keeps_whole_blocks():
    """Only blocks entirely inside X survive the lower approximation."""
    p = _example2()
    x = p.universe.subset(["a", "b", "c"])
    print("[TEST] lower({a,b,c}) on {{a,b},{c,d,e}}...")
    assert _names(p, lower_approximation(p, x)) == ["a", "b"]
    assert _names(p, lower_approximation(p, p.universe.empty())) == []
    print("[PASS] lower approximation")


def test_upper_approximation_takes_every_touched_block():
    p = _example2()
    x = p.universe.subset(["a", "c"])
    assert _names(p, upper_approximation(p, x)) == ["a", "b", "c", "d", "e"]
    assert _names(p, upper_approximation(p, p.universe.subset(["d"]))) == ["c", "d", "e"]


def test_element_scan_agrees_with_block_scan():
    """Both readings of the operators agree on every subset."""
    p = _example2()
    for mask in range(1 << p.size):
        x = Subset(p.size, mask)
        assert lower_approximation_by_elements(p, x) == lower_approximation(p, x)
        assert upper_approximation_by_elements(p, x) == upper_approximation(p, x)


def test_equivalence_class_lookup():
    p = _example2()
    assert _names(p, equivalence_class(p, p.universe.index("d"))) == ["c", "d", "e"]
    assert _names(p, equivalence_class(p, 0)) == ["a", "b"]


def test_derived_regions():
    """Boundary, negative region, definability and accuracy."""
    p = _example2()
    rough = p.universe.subset(["a", "c"])
    exact = p.universe.subset(["a", "b"])

    assert _names(p, boundary_region(p, rough)) == ["a", "b", "c", "d", "e"]
    assert _names(p, negative_region(p, rough)) == []
    assert accuracy(p, rough) == Fraction(0)
    assert not is_definable(p, rough)

    assert is_definable(p, exact)
    assert accuracy(p, exact) == Fraction(1)
    assert _names(p, negative_region(p, exact)) == ["c", "d", "e"]

    mixed = p.universe.subset(["a", "b", "c"])
    assert accuracy(p, mixed) == Fraction(2, 5)
    assert accuracy(p, p.universe.empty()) == Fraction(1)


def test_trivial_partitions():
    """Identity relation: every set is exact. Universal relation: only ∅ and U are."""
    universe = Universe.from_names("abcd")
    identity = identity_partition(universe)
    universal = universal_partition(universe)
    x = universe.subset(["b", "d"])
    assert lower_approximation(identity, x) == x
    assert upper_approximation(identity, x) == x
    assert lower_approximation(universal, x) == universe.empty()
    assert upper_approximation(universal, x) == universe.full()


def test_operators_reject_foreign_subsets():
    p = _example2()
    with pytest.raises(UniverseMismatchError):
        lower_approximation(p, Subset.of(4, [0]))


# ============ PARTITION VALIDATION ============


def test_overlapping_blocks_are_rejected():
    universe = Universe.from_names("abc")
    with pytest.raises(OverlapError) as info:
        Partition(universe, (universe.subset("ab"), universe.subset("bc")))
    assert str(info.value) == "element b in two blocks (0 and 1)"


def test_partition_must_cover_and_blocks_must_be_nonempty():
    universe = Universe.from_names("abc")
    with pytest.raises(CoverageError) as info:
        Partition(universe, (universe.subset("ab"),))
    assert info.value.missing == ["c"]
    with pytest.raises(EmptyBlockError):
        Partition(universe, (universe.subset("abc"), universe.empty()))
    with pytest.raises(EmptyUniverseError):
        Universe.from_names([])


def test_blocks_are_stored_by_minimum_element():
    universe = Universe.from_names("abcde")
    p = Partition(universe, (universe.subset("ce"), universe.subset("d"), universe.subset("ab")))
    assert [universe.labels(b) for b in p.blocks] == [["a", "b"], ["c", "e"], ["d"]]


# ============ OPERATOR LAWS ============


def test_all_laws_hold_on_example():
    report = verify_pawlak_properties(_example2())
    assert report.passed
    assert report.checked == len(PAWLAK_PROPERTIES) == 16
    assert report.skipped == []


def test_pair_laws_skipped_above_pair_cap():
    """Between the pair cap and the full cap, single-set laws still run."""
    p = identity_partition(Universe(11))
    report = verify_pawlak_properties(p)
    assert report.passed
    assert sorted(report.skipped) == sorted(PAIR_PROPERTIES)
    assert report.checked == 12


def test_law_check_refuses_large_universes():
    with pytest.raises(CapExceededError) as info:
        verify_pawlak_properties(identity_partition(Universe(17)))
    assert info.value.exit_code == 3


@hyp_settings(max_examples=25, deadline=None)
@given(n=st.integers(min_value=1, max_value=8), seed=st.integers(min_value=0, max_value=10**6))
def test_laws_hold_on_random_partitions(n, seed):
    report = verify_pawlak_properties(random_partition(n, seed))
    assert report.passed, report.violated


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
