from hypothesis import given, settings
from hypothesis import strategies as st

from entailgen.grammar import parse_text
from entailgen.matching import MatchOutcome, explain_match, match
from entailgen.model import (Head, NounPhrase, Premodifier, pseudo_indices,
                             iter_noun_phrases)
from entailgen.transform import instantiate

from .strategies import instance_nps


def rule_pattern(rules, rule_id):
    return rules.get(rule_id).pattern


class TestMatchExamples:
    def test_price_of_binding(self, core_rules, taxonomy, lexicon):
        sentence = parse_text("What is the price of the book?", lexicon)
        outcome = match(rule_pattern(core_rules, 1), sentence, taxonomy, lexicon)
        assert outcome is not None
        bound = outcome.binding[1]
        assert bound.head.word == "book"
        assert bound.premodifiers[0].word == "the"
        assert outcome.source_tense == "present"

    def test_mood_mismatch_fails_fast(self, core_rules, taxonomy, lexicon):
        sentence = parse_text("I study in Beijing University.", lexicon)
        counters = {}
        outcome, failed_at = explain_match(
            rule_pattern(core_rules, 1), sentence, taxonomy, lexicon, counters)
        assert outcome is None
        assert failed_at == "mood"
        # fail-fast: the subject comparison never ran
        assert counters.get("subject", 0) == 0
        assert counters["mood"] == 1

    def test_stage_order_observable(self, core_rules, taxonomy, lexicon):
        # same mood, different subject: exactly one subject comparison
        sentence = parse_text("How much is the book?", lexicon)
        counters = {}
        outcome, failed_at = explain_match(
            rule_pattern(core_rules, 1), sentence, taxonomy, lexicon, counters)
        assert outcome is None
        assert failed_at == "subject"
        assert counters["subject"] == 1
        assert counters.get("verb_phrase", 0) == 0

    def test_genitive_with_carried_adverbial(self, core_rules, taxonomy, lexicon):
        sentence = parse_text("What was the pen's price two years ago?", lexicon)
        outcome = match(rule_pattern(core_rules, 6), sentence, taxonomy, lexicon)
        assert outcome is not None
        assert outcome.binding[1].head.word == "pen"
        assert outcome.source_tense == "past"
        assert [c.adverbial for c in outcome.carried_circumstances] \
            == ["two years ago"]

    def test_category_constrained_circumstance(self, core_rules, taxonomy, lexicon):
        sentence = parse_text("I study in Beijing University.", lexicon)
        outcome = match(rule_pattern(core_rules, 3), sentence, taxonomy, lexicon)
        assert outcome is not None
        assert outcome.binding[1].head.word == "I"
        assert outcome.binding[2].head.word == "University"
        assert outcome.carried_circumstances == ()

    def test_category_rejects_non_member(self, core_rules, taxonomy, lexicon):
        sentence = parse_text("I study in the book.", lexicon)
        assert match(rule_pattern(core_rules, 3), sentence, taxonomy,
                     lexicon) is None

    def test_possessive_word_binding(self, core_rules, taxonomy, lexicon):
        sentence = parse_text("English is his mother language.", lexicon)
        outcome = match(rule_pattern(core_rules, 4), sentence, taxonomy, lexicon)
        assert outcome is not None
        assert outcome.binding[1].head.word == "English"
        assert outcome.binding[2] == "his"
        assert outcome.fragment_kinds[2] == "possessive"

    def test_name_slot_requires_name(self, core_rules, taxonomy, lexicon):
        pattern = rule_pattern(core_rules, 2)
        good = parse_text("The teacher's name is Li.", lexicon)
        assert match(pattern, good, taxonomy, lexicon) is not None
        bad = parse_text("The teacher's name is a problem.", lexicon)
        assert match(pattern, bad, taxonomy, lexicon) is None

    def test_tense_is_soft(self, core_rules, taxonomy, lexicon):
        # the pattern says present; past and perfect sources still match
        pattern = rule_pattern(core_rules, 1)
        for text, tense in [
                ("What is the price of the book?", "present"),
                ("What was the price of the book?", "past"),
                ("What has the price of the book been?", "present_perfect")]:
            outcome = match(pattern, parse_text(text, lexicon), taxonomy, lexicon)
            assert outcome is not None
            assert outcome.source_tense == tense

    def test_verb_lemma_is_hard(self, core_rules, taxonomy, lexicon):
        sentence = parse_text("I work in Beijing University.", lexicon)
        assert match(rule_pattern(core_rules, 3), sentence, taxonomy,
                     lexicon) is None

    def test_zero_circumstance_pattern_carries_all(self, core_rules, taxonomy,
                                                   lexicon):
        sentence = parse_text("The student's name was John five years ago.",
                              lexicon)
        outcome = match(rule_pattern(core_rules, 2), sentence, taxonomy, lexicon)
        assert outcome is not None
        assert [c.adverbial for c in outcome.carried_circumstances] \
            == ["five years ago"]

    def test_circumstance_conservation(self, core_rules, taxonomy, lexicon):
        # matched pattern circumstances + carried = all sentence circumstances
        sentence = parse_text("I study in Beijing University since 2007.",
                              lexicon)
        outcome = match(rule_pattern(core_rules, 3), sentence, taxonomy, lexicon)
        assert outcome is not None
        carried = list(outcome.carried_circumstances)
        assert len(carried) == len(sentence.circumstances) - 1
        assert carried[0].adverbial == "since 2007"

    def test_determinism(self, core_rules, taxonomy, lexicon):
        sentence = parse_text("What is the price of the book?", lexicon)
        first = match(rule_pattern(core_rules, 1), sentence, taxonomy, lexicon)
        second = match(rule_pattern(core_rules, 1), sentence, taxonomy, lexicon)
        assert first.binding == second.binding
        assert first.carried_circumstances == second.carried_circumstances


def binding_for_pattern(draw, pattern, lexicon, taxonomy):
    """Build a concrete fragment for every slot in the pattern."""
    from hypothesis import strategies as st

    CATEGORY_MEMBERS = {
        "person": ["student", "teacher", "doctor", "sister"],
        "group": ["university", "college", "school", "company"],
        "language": ["English", "Chinese", "French"],
        "animal": ["dog", "cat", "bird"],
        "artifact": ["book", "pen", "ticket"],
        "place": ["city"],
    }
    POSSESSIVES = ["my", "your", "his", "her", "our", "their"]
    NAME_WORDS = ["Zhang", "John", "Li", "Mary"]

    binding = {}
    kinds = {}
    for np in iter_noun_phrases(pattern):
        if np.pseudo is not None:
            category = np.category_constraint
            if category is None:
                head_word = draw(st.sampled_from(
                    ["book", "pen", "student", "dog", "university"]))
            else:
                head_word = draw(st.sampled_from(CATEGORY_MEMBERS[category]))
            entry = lexicon.lookup(head_word, "noun")
            head = Head(word=head_word, head_type="noun",
                        person=entry.person if entry else "third",
                        number=entry.number if entry else "sing")
            use_article = draw(st.booleans())
            prems = (Premodifier(kind="article", word="the"),) if use_article else ()
            binding[np.pseudo.index] = NounPhrase(premodifiers=prems, head=head)
            kinds[np.pseudo.index] = "noun_phrase"
        for prem in np.premodifiers:
            if prem.slot is not None:
                binding[prem.slot.index] = draw(st.sampled_from(POSSESSIVES))
                kinds[prem.slot.index] = "possessive"
        if np.head is not None and np.head.slot is not None:
            binding[np.head.slot.index] = draw(st.sampled_from(NAME_WORDS))
            kinds[np.head.slot.index] = "word"
    return binding, kinds


class TestMatchInstantiateIdentity:
    """Instantiating a pattern with a binding, then matching it back,
    recovers exactly that binding."""

    @given(data=st.data(), tense=st.sampled_from(["present", "past"]))
    @settings(max_examples=60, deadline=None)
    def test_binding_identity(self, core_rules, taxonomy, lexicon, data, tense):
        for rule in core_rules:
            binding, kinds = binding_for_pattern(
                data.draw, rule.pattern, lexicon, taxonomy)
            outcome = MatchOutcome(binding=dict(binding),
                                   fragment_kinds=dict(kinds),
                                   source_tense=tense)
            concrete = instantiate(rule.pattern.with_flavor("template"),
                                   outcome, lexicon)
            assert not pseudo_indices(concrete)
            recovered = match(rule.pattern, concrete, taxonomy, lexicon)
            assert recovered is not None, rule.id
            assert recovered.binding == binding, rule.id
