import pytest

from src.criteria import (
    Bipartition,
    all_bipartitions,
    alternative_collective_vector,
    collective_vectors,
    pairwise_vectors,
    parse_element,
    parse_vector,
    resolve_bipartitions,
    standard_vector,
    validate_locality,
)
from src.utils.errors import AlgebraError, ConfigError

FOUR = ("a1", "a2", "b1", "b2")


def test_parse_vector():
    spec = parse_vector("Q{1 a1}; P{1 a1}; Q{1 a2, 3 b2}; P{1 a2, 3 b2}", name="v")
    assert spec.dim == 4
    assert spec.support == frozenset({"a1", "a2", "b2"})
    assert spec.pairs[1][0].factors == (("a2", 1), ("b2", 3))
    assert spec.text == "Q{1 a1}; P{1 a1}; Q{1 a2, 3 b2}; P{1 a2, 3 b2}"


def test_parse_element_power():
    elem = parse_element("P{2 b}^3")
    assert (elem.kind, elem.factors, elem.power) == ("P", (("b", 2),), 3)


@pytest.mark.parametrize(
    "text",
    [
        "Q{1 a}",
        "Q{1 a}; Q{1 b}",
        "P{1 a}; Q{1 a}",
        "Q{1 a}; P{2 a}",
        "Q{1 a}; P{1 a}^2",
        "Q{a}; P{a}",
        "X{1 a}; P{1 a}",
        " ; ",
    ],
)
def test_malformed_vectors(text):
    with pytest.raises(AlgebraError):
        parse_vector(text)


def test_moment_order_rules():
    spec = parse_vector("Q{1 a}; P{1 a}; Q{2 b}; P{2 b}")
    assert spec.moment_order() == 2
    assert spec.moment_order(1, 2) == 3
    assert spec.lift(2).moment_order(1, 2) == 6
    assert spec.with_order(5).moment_order(1, 2) == 5


def test_lift_names_and_orders():
    spec = standard_vector(("a1", "a2"), ("b1", "b2"), 1, 2)
    lifted = spec.lift(2)
    assert spec.name == "R12" and spec.order == 3 and spec.dim == 8
    assert lifted.name == "R12_s2" and lifted.order == 6
    assert all(e.power == 2 for e in lifted.elements)
    assert standard_vector(("a",), ("b",), 1, 2, s=2).name == "R12_s2"
    with pytest.raises(AlgebraError):
        spec.lift(0)


def test_builtin_vectors():
    assert [v.name for v in pairwise_vectors()] == ["RI1", "RI2", "RI3"]
    assert all(v.dim == 6 and v.order == 3 for v in pairwise_vectors())
    collective = collective_vectors()
    assert [v.name for v in collective] == [f"RII{i}" for i in range(1, 8)]
    assert all(v.dim == 4 and v.order == 6 for v in collective)
    assert {v.primary[0] for v in collective} == {b.label for b in all_bipartitions(FOUR)}
    assert alternative_collective_vector().primary == ("a1|a2b1b2",)


def test_builtin_vectors_are_local_on_their_primaries():
    vectors = pairwise_vectors() + collective_vectors() + (alternative_collective_vector(),)
    for spec in vectors:
        for label in spec.primary:
            assert validate_locality(spec, Bipartition.from_label(label, FOUR)) == ()


def test_fused_pair_straddling_the_cut():
    ri2 = pairwise_vectors()[1]
    assert validate_locality(ri2, Bipartition.from_label("b1|a1a2b2", FOUR)) == ("Q{1 a2, 1 b1}", "P{1 a2, 1 b1}")


def test_four_mode_bipartitions():
    labels = [b.label for b in all_bipartitions(FOUR)]
    assert labels == [
        "a1|a2b1b2",
        "a2|a1b1b2",
        "b1|a1a2b2",
        "b2|a1a2b1",
        "a1a2|b1b2",
        "a1b1|a2b2",
        "a1b2|a2b1",
    ]
    assert len(all_bipartitions(("a", "b", "c"))) == 3
    assert [b.label for b in all_bipartitions(("a", "b"))] == ["a|b"]
    with pytest.raises(ConfigError):
        all_bipartitions(("a",))


@pytest.mark.parametrize(
    "label, canonical",
    [
        ("a2b1|a1b2", "a1b2|a2b1"),
        ("a1a2b1|b2", "b2|a1a2b1"),
        ("b1b2|a1a2", "a1a2|b1b2"),
        ("a1, b1 | a2, b2", "a1b1|a2b2"),
    ],
)
def test_labels_are_canonical(label, canonical):
    assert Bipartition.from_label(label, FOUR).label == canonical


@pytest.mark.parametrize("label", ["a1a2b1b2", "a1|a2", "a1|a2|b1b2", "c1|a1a2b1b2", "a1a2|a2b1b2"])
def test_invalid_labels(label):
    with pytest.raises(ConfigError):
        Bipartition.from_label(label, FOUR)


def test_longest_mode_name_wins():
    modes = ("a", "a1", "b")
    assert Bipartition.from_label("a1|ab", modes).side_a == ("a1",)


def test_side_of():
    bip = Bipartition.from_label("a1b1|a2b2", FOUR)
    assert bip.side_of({"a1"}) == "A"
    assert bip.side_of({"a2", "b2"}) == "B"
    assert bip.side_of({"a1", "a2"}) is None


def test_resolve_bipartitions():
    assert len(resolve_bipartitions("all", FOUR)) == 7
    assert [b.label for b in resolve_bipartitions("a1|a2b1b2", FOUR)] == ["a1|a2b1b2"]
    with pytest.raises(ConfigError):
        resolve_bipartitions(["a1|a2b1b2", "a2b1b2|a1"], FOUR)
