import math
import string

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import make_kg
from pattern_interp.core.types import NeighborDirection, normalize_concept

CONCEPTS = list("abcdef")
RELATIONS = ["IsA", "HasA", "UsedFor"]


@given(st.text(alphabet=string.printable))
def test_normalize_concept_idempotent(raw):
    once = normalize_concept(raw)
    assert normalize_concept(once) == once


def test_normalize_concept_examples():
    assert normalize_concept("  Ice Cream ") == "ice_cream"
    assert normalize_concept("cutting\tboard") == "cutting_board"


def test_assertion_strength_is_direction_sensitive(egg_kg):
    assert egg_kg.assertion_strength("egg", "food") == 1.0
    assert egg_kg.assertion_strength("food", "egg") == 0.0
    assert egg_kg.semantic_bond_energy("egg", "food") == pytest.approx(math.tanh(1.0))
    assert egg_kg.semantic_bond_energy("unknown", "food") == 0.0


def test_strength_keeps_sign_of_strongest_relation():
    kg = make_kg([("IsA", "a", "b", 0.4), ("Antonym", "a", "b", -1.5)])
    assert kg.assertion_strength("a", "b") == -1.5
    assert kg.relations_between("a", "b") == [("Antonym", -1.5), ("IsA", 0.4)]


def test_strength_tie_prefers_smallest_relation_name():
    kg = make_kg([("IsA", "a", "b", 1.0), ("HasA", "a", "b", -1.0)])
    assert kg.assertion_strength("a", "b") == -1.0


def test_duplicate_triples_keep_largest_magnitude():
    kg = make_kg([("IsA", "egg", "food", 0.5), ("IsA", "Egg", "food", -2.0), ("IsA", "egg", "food", 1.0)])
    assert kg.assertion_strength("egg", "food") == -2.0
    assert kg.load_report.duplicates_merged == 2
    assert kg.load_report.assertions == 1


def test_symmetrize_materializes_reverse_edges():
    kg = make_kg(
        [("RelatedTo", "a", "b", 0.7), ("RelatedTo", "c", "d", 0.2), ("RelatedTo", "d", "c", 0.9), ("IsA", "a", "c", 1.0)],
        symmetrize={"RelatedTo"},
    )
    assert kg.assertion_strength("b", "a") == 0.7
    assert kg.assertion_strength("c", "d") == 0.2
    assert not kg.has_assertion("c", "a")
    assert kg.load_report.symmetrized == 1


def test_neighbors_sorted_by_relation_then_concept(egg_kg):
    out = egg_kg.neighbors("egg", NeighborDirection.OUT)
    assert [(n.relation, n.other) for n in out] == [("AtLocation", "plate"), ("IsA", "food")]
    incoming = egg_kg.neighbors("plate", NeighborDirection.IN)
    assert [n.other for n in incoming] == ["egg", "food"]
    assert egg_kg.neighbors("nothing") == []


def test_find_cues_ranked_by_score():
    kg = make_kg([
        ("IsA", "a", "k1", 1.0),
        ("IsA", "k1", "b", 1.0),
        ("HasA", "a", "k2", 0.5),
        ("HasA", "k2", "b", 2.0),
        ("UsedFor", "a", "k3", 3.0),
    ])
    cues = kg.find_cues("a", "b", 5)
    assert [cue.concept for cue in cues] == ["k1", "k2"]
    assert cues[0].score == pytest.approx(2 * math.tanh(1.0))
    assert [cue.concept for cue in kg.find_cues("a", "b", 1)] == ["k1"]


def test_find_cues_rejects_directly_linked_pairs(egg_kg):
    assert egg_kg.find_cues("egg", "plate", 5) == []


def test_find_cues_strict_rejects_reverse_assertion():
    kg = make_kg([("IsA", "a", "k", 1.0), ("IsA", "k", "b", 1.0), ("HasA", "b", "a", 0.3)])
    assert [cue.concept for cue in kg.find_cues("a", "b", 5)] == ["k"]
    assert kg.find_cues("a", "b", 5, strict=True) == []


def test_find_cues_limit_must_be_positive(egg_kg):
    with pytest.raises(ValueError):
        egg_kg.find_cues("egg", "plate", 0)


edges = st.lists(
    st.tuples(
        st.sampled_from(RELATIONS),
        st.sampled_from(CONCEPTS),
        st.sampled_from(CONCEPTS),
        st.floats(min_value=-3, max_value=3, allow_nan=False),
    ),
    max_size=40,
)


@settings(max_examples=50, deadline=None)
@given(rows=edges, strict=st.booleans())
def test_find_cues_matches_two_hop_enumeration(rows, strict):
    kg = make_kg(rows)
    pairs = {(s, e) for _, s, e, _ in rows}
    for i in CONCEPTS:
        for j in CONCEPTS:
            if i == j:
                continue
            if (i, j) in pairs or (strict and (j, i) in pairs):
                expected = set()
            else:
                expected = {k for k in CONCEPTS if k not in (i, j) and (i, k) in pairs and (k, j) in pairs}
            cues = kg.find_cues(i, j, len(CONCEPTS), strict=strict)
            assert {cue.concept for cue in cues} == expected
            scores = [cue.score for cue in cues]
            assert scores == sorted(scores, reverse=True)


def test_assertions_iterate_in_canonical_order(egg_kg):
    triples = [(a.start, a.end, a.relation) for a in egg_kg.assertions()]
    assert triples == sorted(triples)
    assert len(egg_kg) == 3
    assert "Egg" in egg_kg


def test_queries_normalize_concept_names():
    kg = make_kg([
        ("IsA", "ice cream", "food", 2.0),
        ("AtLocation", "food", "plate", 1.0),
        ("UsedFor", "plate", "Dessert Bowl", 0.5),
    ])
    assert "Ice Cream" in kg
    assert kg.assertion_strength("Ice Cream", "food") == kg.assertion_strength("ice_cream", "food") == 2.0
    assert kg.assertion_strength("ice cream", " FOOD ") == 2.0
    assert kg.semantic_bond_energy("Ice Cream", "food") == pytest.approx(math.tanh(2.0))
    assert kg.has_assertion("Ice  Cream", "Food")
    assert kg.relations_between("ICE CREAM", "food") == [("IsA", 2.0)]
    assert [n.other for n in kg.neighbors("Ice Cream")] == ["food"]
    assert [n.other for n in kg.neighbors("dessert bowl", NeighborDirection.IN)] == ["plate"]
    assert [cue.concept for cue in kg.find_cues("Ice Cream", "Plate", 3)] == ["food"]


@settings(max_examples=50, deadline=None)
@given(rows=edges, i=st.sampled_from(CONCEPTS), j=st.sampled_from(CONCEPTS), limit=st.integers(1, 5))
def test_find_cues_shorter_limit_is_prefix(rows, i, j, limit):
    kg = make_kg(rows)
    shorter = kg.find_cues(i, j, limit)
    longer = kg.find_cues(i, j, limit + 1)
    assert longer[: len(shorter)] == shorter
    assert len(shorter) == min(limit, len(longer))


@given(weight=st.floats(min_value=-1e6, max_value=1e6, allow_nan=False))
def test_semantic_bond_energy_is_odd_and_strictly_bounded(weight):
    forward = make_kg([("RelatedTo", "a", "b", weight)])
    backward = make_kg([("RelatedTo", "a", "b", -weight)])
    energy = forward.semantic_bond_energy("a", "b")
    assert -1.0 < energy < 1.0
    assert backward.semantic_bond_energy("a", "b") == -energy
    assert (energy == 0.0) == (weight == 0.0)


@pytest.mark.parametrize("weight", [19.0, 25.0, 1e300])
def test_large_weights_stay_inside_open_interval(weight):
    kg = make_kg([("RelatedTo", "a", "b", weight), ("RelatedTo", "b", "a", -weight)])
    assert kg.semantic_bond_energy("a", "b") < 1.0
    assert kg.semantic_bond_energy("b", "a") > -1.0
    assert kg.semantic_bond_energy("a", "b") == -kg.semantic_bond_energy("b", "a")
