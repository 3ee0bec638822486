import pytest

from enriques.config import CurveConfig, Divisor, intersect
from enriques.divisors import (
    DegenerateSequence,
    InvariantViolation,
    Obstruction,
    build_triangle,
    connected_subsets,
    extension_obstruction,
    fibration_capacity_ok,
    half_fiber_classes,
    is_c_sequence,
    specialness_witness,
    validate_degenerate_sequence,
)
from enriques.rootfibers import DynkinType, KodairaType

# smallest triangle graph: three curves meeting pairwise twice, so each
# S_k is a single curve and each G_i = S_j + S_k is a fiber of type I2
SMALL = CurveConfig.from_edges(
    ("a", "b", "c"),
    [("a", "b", 2), ("b", "c", 2), ("c", "a", 2)],
)
WITNESSES = tuple(
    Divisor.from_map({name: 1}, SMALL) for name in ("a", "b", "c")
)


def small_triangle():
    return build_triangle(witnesses=WITNESSES, ambient=SMALL)


def test_connected_subsets_ordering_and_count():
    chain = CurveConfig.from_edges(("a", "b", "c"), [("a", "b"), ("b", "c")])
    subsets = connected_subsets(chain)
    assert subsets == [
        ("a",), ("b",), ("c",), ("a", "b"), ("b", "c"), ("a", "b", "c"),
    ]
    assert connected_subsets(chain, min_size=2, max_size=2) == [
        ("a", "b"), ("b", "c"),
    ]


def test_small_triangle_assembles():
    t = small_triangle()
    assert t.types == (DynkinType("A", 1),) * 3
    assert t.G_types == (KodairaType("I2"),) * 3
    assert t.glued.size() == 3


def test_half_fiber_classes_form_c_sequence():
    t = small_triangle()
    fibers = half_fiber_classes(t)
    assert is_c_sequence(fibers)
    unflagged = [f.flagged(half_fiber=False) for f in fibers]
    assert not is_c_sequence(unflagged)


def test_specialness_witness_recovers_all_three():
    t = small_triangle()
    fibers = half_fiber_classes(t)
    found = specialness_witness(fibers, t.glued, all_permutations=True)
    assert set(found) == {0, 1, 2}
    for k, w in found.items():
        assert w.k == k
        assert w.divisor.support() == t.S[k].support()


def test_specialness_witness_single_mode():
    t = small_triangle()
    fibers = half_fiber_classes(t)
    w = specialness_witness(fibers, t.glued)
    assert w is not None
    assert intersect(w.divisor, w.divisor) == -2


def test_build_triangle_checks_class_identity():
    t = small_triangle()
    fibers = half_fiber_classes(t)
    rebuilt = build_triangle(F=fibers, witnesses=WITNESSES, ambient=SMALL)
    assert rebuilt.types == t.types
    # witnesses in the wrong order no longer match F_i + F_j - F_k
    shuffled = (WITNESSES[1], WITNESSES[0], WITNESSES[2])
    with pytest.raises(InvariantViolation):
        build_triangle(F=fibers, witnesses=shuffled, ambient=SMALL)


def test_build_triangle_requires_three_witnesses():
    with pytest.raises(InvariantViolation):
        build_triangle(witnesses=WITNESSES[:2], ambient=SMALL)


def test_small_triangle_capacity_and_obstruction():
    t = small_triangle()
    assert fibration_capacity_ok(t)
    # every witness is its own simple component, clashing nowhere
    assert extension_obstruction(t) == "inconclusive"


def test_obstruction_formatting():
    obs = Obstruction("no simple component in S_1")
    assert str(obs) == "NonExtendable(no simple component in S_1)"


def test_validate_degenerate_sequence_with_empty_chains():
    t = small_triangle()
    fibers = half_fiber_classes(t)
    seq = DegenerateSequence(
        blocks=tuple((f, ()) for f in fibers), ambient=t.glued
    )
    result = validate_degenerate_sequence(seq)
    assert bool(result)


def test_validate_degenerate_sequence_condition_one():
    t = small_triangle()
    fibers = half_fiber_classes(t)
    seq = DegenerateSequence(
        blocks=((fibers[0], ()), (fibers[0], ())), ambient=t.glued
    )
    result = validate_degenerate_sequence(seq)
    assert not result
    assert result.reason.startswith("condition (1)")


def test_validate_degenerate_sequence_condition_four():
    t = small_triangle()
    fibers = half_fiber_classes(t)
    seq = DegenerateSequence(
        blocks=((fibers[0], ("a",)), (fibers[1], ()), (fibers[2], ())),
        ambient=t.glued,
    )
    result = validate_degenerate_sequence(seq)
    assert not result
    assert result.reason.startswith("condition (4)")
