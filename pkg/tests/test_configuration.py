import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import coordinate, make_kg, pour_hypothesis
from pattern_interp.core.errors import (
    BondError,
    BondKindError,
    BondNotOpenError,
    BondValueMismatchError,
    UnknownEdgeError,
    UnknownSiteError,
)
from pattern_interp.core.types import BondDirection, DirectionFilter, GeneratorKind, SlotRole
from pattern_interp.inference.linking import SearchContext, insert_cue
from pattern_interp.pattern import configuration as cfg
from pattern_interp.pattern.configuration import (
    Configuration,
    ConfigurationCostModel,
    format_semantic_content,
    semantic_content,
)
from pattern_interp.pattern.generators import GeneratorSpace, values_match

IN, OUT = BondDirection.IN, BondDirection.OUT

# 两个有据概念 + 两个特征 + 一个带一条开放出键的线索
QUAD_ROWS = [
    ("IsA", "a", "b", 1.0),
    ("HasA", "a", "c", 0.8),
    ("AtLocation", "c", "b", 0.6),
    ("UsedFor", "c", "d", 0.3),
]


def _ground(c, space, concept, slot, f, role=SlotRole.OBJECT):
    """加入有据生成器与特征生成器并闭合支持键"""
    g_site = c.add_generator(space.make_grounded(concept, slot, f, role=role))
    f_site = c.add_generator(space.make_feature("HOG"))
    c.connect((f_site, 0), (g_site, 0))
    return g_site


def _link(c, out_site, in_site, relation):
    return c.connect(
        (out_site, coordinate(c.generator(out_site), OUT, relation)),
        (in_site, coordinate(c.generator(in_site), IN, relation)),
    )


@pytest.fixture
def quad():
    kg = make_kg(QUAD_ROWS)
    space = GeneratorSpace(kg)
    c = Configuration(kg, slot_order=["s1", "s2"])
    a = _ground(c, space, "a", "s1", 2.0)
    b = _ground(c, space, "b", "s2", 2.0)
    _link(c, a, b, "IsA")
    cue = c.add_generator(space.make_ungrounded("c"))
    _link(c, a, cue, "HasA")
    _link(c, cue, b, "AtLocation")
    return c, {"a": a, "b": b, "c": cue}


def test_hand_computed_energy(quad):
    c, _ = quad
    expected = -(2 * math.tanh(2.0) + math.tanh(1.0) + math.tanh(0.8) + math.tanh(0.6)) + 1.0
    assert c.energy().total == pytest.approx(expected, abs=1e-9)
    assert c.recompute_energy().total == pytest.approx(expected, abs=1e-9)
    assert c.energy().q_cost == 1.0
    assert c.validate() == []


def test_two_grounded_one_semantic_bond():
    kg = make_kg(QUAD_ROWS)
    space = GeneratorSpace(kg)
    c = Configuration(kg)
    a = _ground(c, space, "a", "s1", 2.0)
    b = _ground(c, space, "b", "s2", 2.0)
    _link(c, a, b, "IsA")
    total = -(2 * math.tanh(2.0) + math.tanh(1.0))
    assert c.total_energy == pytest.approx(total, abs=1e-12)
    assert cfg.probability_weight(c) == pytest.approx(math.exp(-total))


def test_empty_configuration_has_zero_energy(egg_kg):
    c = Configuration(egg_kg)
    assert c.energy().total == 0.0
    assert cfg.probability_weight(c) == 1.0
    assert c.validate() == []


def test_support_bond_lowers_energy_by_tanh_confidence(egg_kg):
    space = GeneratorSpace(egg_kg)
    c = Configuration(egg_kg)
    g = c.add_generator(space.make_grounded("egg", "s", 1.5))
    f = c.add_generator(space.make_feature("HOG"))
    before = c.total_energy
    c.connect((f, 0), (g, 0))
    assert before - c.total_energy == pytest.approx(0.90514825, abs=1e-8)


def test_cost_q_counts_open_out_bonds_of_ungrounded():
    kg = make_kg([("HasA", "hub", "x", 1.0), ("IsA", "hub", "y", 1.0), ("UsedFor", "hub", "z", 1.0)])
    space = GeneratorSpace(kg)
    c = Configuration(kg)
    hub = c.add_generator(space.make_ungrounded("hub"))
    x = c.add_generator(space.make_grounded("x", "s", 0.5))
    _link(c, hub, x, "HasA")
    assert cfg.cost_q(c, 0.5) == 1.0
    assert c.open_cost_bonds == 2


def test_cost_q_zero_without_ungrounded(egg_kg):
    space = GeneratorSpace(egg_kg)
    c = Configuration(egg_kg)
    _ground(c, space, "egg", "s", 0.5)
    assert cfg.cost_q(c, 3.0) == 0.0


def test_fully_closed_cue_costs_nothing(fig3b):
    assert fig3b.open_cost_bonds == 0
    assert fig3b.cost_q() == 0.0


def test_count_in_bonds_adds_open_in_bonds():
    kg = make_kg(QUAD_ROWS + [("IsA", "e", "c", 0.4)])
    space = GeneratorSpace(kg)
    results = {}
    for count_in in (False, True):
        c = Configuration(kg, ConfigurationCostModel(k=0.7, count_in_bonds=count_in))
        a = _ground(c, space, "a", "s1", 2.0)
        cue = c.add_generator(space.make_ungrounded("c"))
        _link(c, a, cue, "HasA")
        results[count_in] = (c, cue)
    c, cue = results[True]
    open_in = len(c.generator(cue).open_bonds(DirectionFilter.IN))
    assert open_in == 1
    assert c.cost_q() - results[False][0].cost_q() == pytest.approx(0.7 * open_in)


def test_disconnect_reconnect_restores_energy(quad):
    c, sites = quad
    original = c.total_energy
    edge = c.edge_at((sites["a"], coordinate(c.generator(sites["a"]), OUT, "IsA")))
    c.disconnect(edge)
    assert c.total_energy == pytest.approx(original + math.tanh(1.0), abs=1e-12)
    c.connect(edge.out_ref, edge.in_ref)
    assert c.total_energy == pytest.approx(original, abs=1e-12)


def test_disconnect_support_bond_reduces_support_sum(quad):
    c, sites = quad
    edge = c.edge_at((sites["a"], 0))
    before = c.energy().support_sum
    c.disconnect(edge)
    assert before - c.energy().support_sum == pytest.approx(math.tanh(2.0), abs=1e-12)


def test_disconnect_cue_bond_raises_q(quad):
    c, sites = quad
    cue = sites["c"]
    edge = c.edge_at((cue, coordinate(c.generator(cue), OUT, "AtLocation")))
    q_before = c.cost_q()
    c.disconnect(edge)
    assert c.cost_q() - q_before == pytest.approx(1.0)


def test_remove_cue_changes_energy_by_closed_bonds(fig3b):
    liquid = next(s for s in fig3b.cue_sites() if fig3b.generator(s).concept == "liquid")
    closed = fig3b.closed_energy(liquid)
    assert closed == pytest.approx(math.tanh(1.5) + math.tanh(1.2))
    before = fig3b.total_energy
    fig3b.remove_generator(liquid)
    assert fig3b.total_energy - before == pytest.approx(closed, abs=1e-12)
    assert fig3b.validate() == []


def test_remove_cue_with_open_out_bond(quad):
    c, sites = quad
    cue = sites["c"]
    closed = c.closed_energy(cue)
    before = c.total_energy
    c.remove_generator(cue)
    assert c.total_energy - before == pytest.approx(closed - 1.0, abs=1e-12)


def test_connect_errors(quad):
    c, sites = quad
    a, b, cue = sites["a"], sites["b"], sites["c"]
    with pytest.raises(BondKindError):
        c.connect((cue, coordinate(c.generator(cue), OUT, "UsedFor")), (a, coordinate(c.generator(a), OUT, "HasA")))
    with pytest.raises(BondNotOpenError):
        c.connect((a, coordinate(c.generator(a), OUT, "IsA")), (b, coordinate(c.generator(b), IN, "IsA")))
    c.disconnect(c.edge_at((b, coordinate(c.generator(b), IN, "AtLocation"))))
    with pytest.raises(BondValueMismatchError):
        c.connect((cue, coordinate(c.generator(cue), OUT, "UsedFor")), (b, coordinate(c.generator(b), IN, "AtLocation")))
    with pytest.raises(UnknownSiteError):
        c.connect((99, 0), (b, 0))


def test_illegal_couplings_rejected():
    kg = make_kg([("IsA", "x", "y", 1.0)])
    space = GeneratorSpace(kg)
    c = Configuration(kg)
    f = c.add_generator(space.make_feature("HOG"))
    g = c.add_generator(space.make_grounded("y", "s", 0.4))
    cue = c.add_generator(space.make_ungrounded("x"))
    with pytest.raises(BondKindError):
        c.connect((f, 0), (cue, 0))
    with pytest.raises(BondKindError):
        c.connect((g, 0), (g, 0))


def test_disconnect_unknown_edge(quad):
    c, sites = quad
    edge = c.edge_at((sites["a"], 0))
    c.disconnect(edge)
    with pytest.raises(UnknownEdgeError):
        c.disconnect(edge)


def test_functional_connect_leaves_original(egg_kg):
    space = GeneratorSpace(egg_kg)
    c = Configuration(egg_kg)
    g = c.add_generator(space.make_grounded("egg", "s", 0.5))
    f = c.add_generator(space.make_feature("HOG"))
    joined = cfg.connect(c, (f, 0), (g, 0))
    assert c.edges() == [] and len(joined.edges()) == 1
    assert cfg.disconnect(joined, joined.edges()[0]).total_energy == 0.0


def test_validate_detects_broken_mutual_closure(fig3b):
    edge = fig3b.edges()[0]
    fig3b.generator(edge.in_site).bonds[edge.in_coordinate].peer = None
    violations = fig3b.validate()
    assert len(violations) == 1
    assert "互闭合" in violations[0]


def test_validate_detects_out_out_coupling(fig3b):
    edge = next(e for e in fig3b.edges() if not e.is_support)
    fig3b.generator(edge.in_site).bonds[edge.in_coordinate].direction = OUT
    assert any("方向" in v for v in fig3b.validate())


def test_validate_require_connected(pour_kg):
    space = GeneratorSpace(pour_kg)
    c = Configuration(pour_kg)
    _ground(c, space, "pour", "action", 0.9, SlotRole.ACTION)
    _ground(c, space, "oil", "object", 0.8)
    assert c.validate() == []
    assert not c.connected_grounded()
    assert c.validate(require_connected=True) == ["有据生成器之间不连通"]


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), corruption=st.sampled_from(["peer", "direction", "value", "energy"]))
def test_validate_flags_random_corruption(pour_kg, seed, corruption):
    c = _fig3b(pour_kg)
    rng = np.random.default_rng(seed)
    edges = c.edges()
    edge = edges[int(rng.integers(len(edges)))]
    out_bond = c.generator(edge.out_site).bonds[edge.out_coordinate]
    if corruption == "peer":
        out_bond.peer = None
    elif corruption == "direction":
        out_bond.direction = IN
    elif corruption == "value":
        out_bond.value = "NotARelation"
    else:
        c._edges[edge.out_ref] = c._edges[edge.in_ref] = cfg.Edge(
            edge.out_site, edge.out_coordinate, edge.in_site, edge.in_coordinate, edge.value, edge.energy + 0.5
        )
    assert c.validate()


def _fig3b(kg):
    from pattern_interp.core.models import InferenceParams
    from pattern_interp.inference.proposals import initialize

    return initialize(pour_hypothesis(), kg, InferenceParams(cues_per_pair=3))


def _random_generator(space, rng):
    choice = int(rng.integers(6))
    if choice == 0:
        return space.make_feature("HOF")
    if choice == 1:
        return space.make_grounded("pour", "action", float(rng.uniform(-1, 2)), role=SlotRole.ACTION)
    if choice == 2:
        return space.make_grounded("oil", "object", float(rng.uniform(-1, 2)), role=SlotRole.OBJECT)
    return space.make_ungrounded(["liquid", "fuel", "black"][choice - 3])


@settings(max_examples=150, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), steps=st.integers(1, 60), count_in=st.booleans())
def test_incremental_energy_matches_recompute(pour_kg, seed, steps, count_in):
    rng = np.random.default_rng(seed)
    space = GeneratorSpace(pour_kg)
    c = Configuration(pour_kg, ConfigurationCostModel(k=float(rng.uniform(0, 2)), count_in_bonds=count_in))
    for _ in range(steps):
        op = int(rng.integers(4))
        if op == 0 or len(c) == 0:
            c.add_generator(_random_generator(space, rng))
        elif op == 1:
            outs = [(s, b) for s, g in c.items() for b in g.open_bonds(DirectionFilter.OUT)]
            if not outs:
                continue
            out_site, out_b = outs[int(rng.integers(len(outs)))]
            ins = [
                (s, b)
                for s, g in c.items()
                for b in g.open_bonds(DirectionFilter.IN)
                if s != out_site and values_match(out_b.value, b.value)
            ]
            if not ins:
                continue
            in_site, in_b = ins[int(rng.integers(len(ins)))]
            try:
                c.connect((out_site, out_b.coordinate), (in_site, in_b.coordinate))
            except BondError:
                pass
        elif op == 2:
            edges = c.edges()
            if edges:
                c.disconnect(edges[int(rng.integers(len(edges)))])
        else:
            sites = c.sites
            c.remove_generator(sites[int(rng.integers(len(sites)))])
        assert c.energy().is_close(c.recompute_energy())
    assert c.validate() == []


def test_semantic_content_fig3b(fig3b):
    content = semantic_content(fig3b)
    assert content[:2] == [("pour", GeneratorKind.GROUNDED), ("oil", GeneratorKind.GROUNDED)]
    assert format_semantic_content(content) == "pour oil (liquid) (fuel) (black)"


def test_semantic_content_without_cues(egg_kg):
    space = GeneratorSpace(egg_kg)
    c = Configuration(egg_kg, slot_order=["x", "y"])
    _ground(c, space, "food", "y", 0.5)
    _ground(c, space, "egg", "x", 0.5)
    assert format_semantic_content(semantic_content(c)) == "egg food"


def test_semantic_content_stable_under_reinsertion(fig3b, pour_kg, fig3b_params):
    before = format_semantic_content(semantic_content(fig3b))
    key = fig3b.structure_key()
    ctx = SearchContext(pour_hypothesis(), pour_kg, fig3b_params)
    pour, oil = fig3b.grounded_sites()
    for cue in list(fig3b.cue_sites()):
        fig3b.remove_generator(cue)
    for concept in ("black", "liquid", "fuel"):
        assert insert_cue(fig3b, ctx, pour, oil, concept) is not None
    assert format_semantic_content(semantic_content(fig3b)) == before
    assert fig3b.structure_key() == key


def test_structure_key_and_assignment(fig3b):
    grounded, cues = fig3b.structure_key()
    assert grounded == (("action", "pour"), ("object", "oil"))
    assert cues == ("black", "fuel", "liquid")
    assert fig3b.assignment() == {"action": "pour", "object": "oil"}
    assert fig3b.connected_grounded()


def test_probability_weight_monotone(fig3b):
    lighter = fig3b.copy()
    lighter.remove_generator(lighter.cue_sites()[0])
    assert lighter.total_energy > fig3b.total_energy
    assert cfg.probability_weight(lighter) < cfg.probability_weight(fig3b)
