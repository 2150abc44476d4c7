import json
import re

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import make_hypothesis, pour_hypothesis
from pattern_interp.core.errors import IngestionError, MissingRoleError
from pattern_interp.core.models import InferenceParams
from pattern_interp.core.types import SlotRole
from pattern_interp.inference.linking import SearchContext, insert_cue
from pattern_interp.inference.proposals import initialize
from pattern_interp.pattern.configuration import Configuration
from pattern_interp.rendering.captions import (
    VerbInflector,
    caption_candidates,
    label_from_assignment,
    present_participle,
    third_person,
    to_caption,
    to_label,
)
from pattern_interp.rendering.scorers import FrequencyScorer, UniformScorer, load_scorer
from pattern_interp.rendering.serialize import parse_json, to_document, to_dot, to_json

CAPTION_RE = re.compile(
    r"^(A|The) [a-z ]+ ([a-z]+s|is [a-z]+ing)( (on|in|with|into|to))? (a|the) [a-z ]+$"
)


def _svo(kg, subject, action, obj):
    h = make_hypothesis(
        "svo",
        ("subject", "subject", [(subject, 0.9)]),
        ("action", "action", [(action, 0.8)]),
        ("object", "object", [(obj, 0.7)]),
    )
    return initialize(h, kg, InferenceParams())


class _ShortestScorer:
    def score(self, sentence: str) -> float:
        return -float(len(sentence))


def test_uniform_scorer_tie_breaks_lexicographically(kitchen_kg):
    c = _svo(kitchen_kg, "man", "slice", "onion")
    result = to_caption(c, UniformScorer())
    assert result.sentence == "A man is slicing a onion"
    # 2 限定词 x 2 时态 x 6 介词 x 2 限定词
    assert len(result.candidates) == 48


def test_frequency_scorer_prefers_counted_bigrams(kitchen_kg):
    c = _svo(kitchen_kg, "man", "slice", "onion")
    scorer = FrequencyScorer.from_text("man slices\t100\nslices the\t100\nthe onion\t100\n")
    assert to_caption(c, scorer).sentence == "A man slices the onion"


def test_custom_scorer_is_pluggable(kitchen_kg):
    c = _svo(kitchen_kg, "man", "slice", "onion")
    assert to_caption(c, _ShortestScorer()).sentence == "A man slices a onion"


def test_caption_never_mentions_cues(kitchen_kg):
    c = _svo(kitchen_kg, "man", "pour", "oil")
    cues = {c.generator(s).concept for s in c.cue_sites()}
    assert {"liquid", "fuel", "black"} <= cues
    for template in caption_candidates(c):
        words = set(template.render().lower().split())
        assert not words & cues


words = st.from_regex(r"[a-z]{2,8}", fullmatch=True)


@settings(max_examples=60, deadline=None)
@given(subject=words, action=words, obj=words)
def test_caption_matches_template_grammar(egg_kg, subject, action, obj):
    c = _svo(egg_kg, subject, action, obj)
    sentence = to_caption(c).sentence
    assert CAPTION_RE.match(sentence), sentence


@pytest.mark.parametrize(
    ("verb", "expected"),
    [("pour", "pours"), ("wash", "washes"), ("carry", "carries"), ("go", "goes"), ("play", "plays"), ("mix", "mixes")],
)
def test_third_person(verb, expected):
    assert third_person(verb) == expected


@pytest.mark.parametrize(
    ("verb", "expected"),
    [
        ("slice", "slicing"),
        ("cut", "cutting"),
        ("tie", "tying"),
        ("see", "seeing"),
        ("stir", "stirring"),
        ("open", "opening"),
        ("fry", "frying"),
    ],
)
def test_present_participle(verb, expected):
    assert present_participle(verb) == expected


def test_phrasal_verbs_inflect_head():
    inflector = VerbInflector()
    assert inflector.third("pick_up") == "picks up"
    assert inflector.progressive("pick_up") == "is picking up"


def test_inflection_overrides(tmp_path):
    path = tmp_path / "verbs.yaml"
    path.write_text("panic:\n  progressive: panicking\n", encoding="utf-8")
    inflector = VerbInflector.from_file(path)
    assert inflector.progressive("panic") == "is panicking"
    assert inflector.third("panic") == "panics"
    assert VerbInflector().progressive("panic") == "is panicing"


@pytest.mark.parametrize("content", ["- a\n- b\n", "panic: [unclosed\n", "panic: panicking\n"])
def test_inflection_override_file_errors(tmp_path, content):
    path = tmp_path / "verbs.yaml"
    path.write_text(content, encoding="utf-8")
    with pytest.raises(IngestionError):
        VerbInflector.from_file(path)


def test_label_ignores_cues(fig3b):
    assert to_label(fig3b) == "pour oil"
    for cue in list(fig3b.cue_sites()):
        fig3b.remove_generator(cue)
        assert to_label(fig3b) == "pour oil"


def test_caption_requires_subject(fig3b):
    with pytest.raises(MissingRoleError) as exc:
        to_caption(fig3b)
    assert exc.value.role == "subject"


def test_label_from_assignment():
    roles = {"v": SlotRole.ACTION, "o": SlotRole.OBJECT, "s": SlotRole.SUBJECT}
    assert label_from_assignment({"v": "pick_up", "o": "Egg", "s": "man"}, roles) == "pick up egg"
    assert label_from_assignment({"s": "man", "o": "egg"}, roles) is None


def test_frequency_scorer_errors_and_floor(tmp_path):
    with pytest.raises(IngestionError):
        FrequencyScorer.from_text("a b c\t3\n")
    with pytest.raises(IngestionError):
        FrequencyScorer.from_text("word\tmany\n")
    with pytest.raises(ValueError):
        FrequencyScorer({}, {}, floor=0.0)
    path = tmp_path / "counts.tsv"
    path.write_text("# counts\nman\t4\n", encoding="utf-8")
    scorer = load_scorer(path)
    assert isinstance(scorer, FrequencyScorer)
    assert scorer.score("man") > scorer.score("woman")
    assert isinstance(load_scorer(None), UniformScorer)


def test_json_round_trip_preserves_energy(fig3b, pour_kg):
    text = to_json(fig3b)
    restored = parse_json(text, pour_kg)
    assert restored.total_energy == pytest.approx(fig3b.total_energy, abs=1e-12)
    assert restored.validate() == []
    assert to_json(restored) == text


def test_json_is_canonical_across_insertion_order(fig3b, pour_kg, fig3b_params):
    before = to_json(fig3b)
    ctx = SearchContext(pour_hypothesis(), pour_kg, fig3b_params)
    pour, oil = fig3b.grounded_sites()
    for cue in list(fig3b.cue_sites()):
        fig3b.remove_generator(cue)
    for concept in ("fuel", "black", "liquid"):
        insert_cue(fig3b, ctx, pour, oil, concept)
    assert to_json(fig3b) == before


def test_json_document_shape(fig3b):
    doc = json.loads(to_json(fig3b))
    assert [g["site"] for g in doc["generators"]] == list(range(len(doc["generators"])))
    assert [g["kind"] for g in doc["generators"][:4]] == ["grounded", "feature", "grounded", "feature"]
    bond_types = sorted(e["bond_type"] for e in doc["edges"])
    assert bond_types == ["semantic"] * 6 + ["support"] * 2
    assert doc["energy"]["total"] == pytest.approx(fig3b.total_energy, abs=1e-12)


def test_dot_marks_generator_kinds(fig3b):
    source = to_dot(fig3b, name="pour_oil")
    assert source.startswith("// pattern configuration\ndigraph pour_oil {")
    assert "shape=box" in source
    assert "shape=ellipse" in source
    assert "shape=diamond" in source
    assert "RelatedTo\\n" in source


def test_empty_configuration_serializes(egg_kg):
    c = Configuration(egg_kg)
    doc = to_document(c)
    assert doc.generators == [] and doc.edges == []
    assert doc.energy.total == 0.0
    assert parse_json(to_json(c), egg_kg).total_energy == 0.0
    assert "digraph" in to_dot(c)
