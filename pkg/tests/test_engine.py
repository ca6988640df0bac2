import itertools

from entailgen.engine import entail_closure, entail_once, logical_entail
from entailgen.grammar import parse_text, realize
from entailgen.rules import RuleSet
from entailgen.taxonomy import TaxonomyGraph
from entailgen.transform import apply_rule


def brute_force_closure_texts(text, ruleset, taxonomy, lexicon, max_depth,
                              logical="fallback"):
    """Independent reference: plain BFS, no reversed-rule suppression,
    dedup by realized text only."""
    root = parse_text(text, lexicon)
    seen = {realize(root, lexicon)}
    out = []
    frontier = [root]
    for _ in range(max_depth):
        next_frontier = []
        for item in frontier:
            produced = []
            matched = False
            for rule in ruleset:
                result = apply_rule(rule, item, taxonomy, lexicon)
                if result is not None:
                    matched = True
                    produced.append(result)
            if logical == "always" or (logical == "fallback" and not matched):
                produced.extend(m for _, m in
                                logical_entail(item, taxonomy, lexicon))
            for model in produced:
                realized = realize(model, lexicon)
                if realized in seen:
                    continue
                seen.add(realized)
                out.append(realized)
                next_frontier.append(model)
        frontier = next_frontier
    return set(out)


class TestEntailOnce:
    def test_price_question(self, core_rules, taxonomy, lexicon):
        sentence = parse_text("What is the price of the book?", lexicon)
        results = entail_once(sentence, core_rules, taxonomy, lexicon)
        assert [(rule_id, realize(model, lexicon))
                for rule_id, model in results] \
            == [(1, "How much is the book?")]

    def test_language_statement(self, core_rules, taxonomy, lexicon):
        sentence = parse_text("English is his mother language.", lexicon)
        results = entail_once(sentence, core_rules, taxonomy, lexicon)
        assert [(rule_id, realize(model, lexicon))
                for rule_id, model in results] \
            == [(4, "He can speak English.")]

    def test_no_rule_matches_is_empty_not_error(self, core_rules, taxonomy,
                                                lexicon):
        sentence = parse_text("How much is the weather?", lexicon)
        assert entail_once(sentence, core_rules, taxonomy, lexicon) == []

    def test_file_order(self, core_rules, taxonomy, lexicon):
        # a genitive price question matches rule 6 only; ordering by id
        # is observable when several rules fire
        sentence = parse_text("What was the pen's price two years ago?", lexicon)
        results = entail_once(sentence, core_rules, taxonomy, lexicon)
        assert [rule_id for rule_id, _ in results] == [6]


class TestLogicalEntail:
    def test_copula_predicate(self, taxonomy, lexicon):
        sentence = parse_text("Zhang is a student.", lexicon)
        results = logical_entail(sentence, taxonomy, lexicon)
        assert [(step, realize(model, lexicon)) for step, model in results] \
            == [("hyponym:student>person", "Zhang is a person.")]

    def test_direct_object(self, taxonomy, lexicon):
        sentence = parse_text("I have a dog.", lexicon)
        results = logical_entail(sentence, taxonomy, lexicon)
        assert [realize(model, lexicon) for _, model in results] \
            == ["I have an animal."]

    def test_object_head_needs_taxonomy_node(self, lexicon, taxonomy):
        # with the shipped fixture the language edge exists
        sentence = parse_text("He can speak English.", lexicon)
        results = logical_entail(sentence, taxonomy, lexicon)
        assert [realize(model, lexicon) for _, model in results] \
            == ["He can speak a language."]
        # without the edge there is nothing to substitute
        bare = TaxonomyGraph([("student", "person")])
        assert logical_entail(sentence, bare, lexicon) == []

    def test_questions_excluded(self, taxonomy, lexicon):
        sentence = parse_text("How much is the book?", lexicon)
        assert logical_entail(sentence, taxonomy, lexicon) == []

    def test_intransitive_excluded(self, taxonomy, lexicon):
        sentence = parse_text("I study in Beijing University.", lexicon)
        assert logical_entail(sentence, taxonomy, lexicon) == []

    def test_proper_noun_heads_untouched(self, taxonomy, lexicon):
        # "University" is capitalized in text but the taxonomy node is
        # lowercase: no substitution happens on exact-node misses
        sentence = parse_text("I attend Beijing University.", lexicon)
        assert logical_entail(sentence, taxonomy, lexicon) == []


class TestClosure:
    def test_depth_one_equivalence(self, core_rules, taxonomy, lexicon):
        results = entail_closure("The student's name is Zhang.", core_rules,
                                 taxonomy, lexicon, max_depth=3)
        assert [(r.text, list(r.derivation), r.depth) for r in results] \
            == [("The student is Zhang.", [2], 1)]

    def test_reversed_rule_suppression(self, core_rules, taxonomy, lexicon):
        results = entail_closure("I study in Beijing University.", core_rules,
                                 taxonomy, lexicon, max_depth=5)
        assert [r.text for r in results] == ["I attend Beijing University."]

    def test_unsuppressed_oracle_shows_the_cycle(self, core_rules, taxonomy,
                                                 lexicon):
        # applying every rule with no suppression regenerates the input
        # at depth 2: exactly the step the reversed-id mechanism removes
        start = parse_text("I study in Beijing University.", lexicon)
        step_one = apply_rule(core_rules.get(3), start, taxonomy, lexicon)
        step_back = apply_rule(core_rules.get(5), step_one, taxonomy, lexicon)
        assert realize(step_back, lexicon) == "I study in Beijing University."

    def test_hyponym_step_in_closure(self, core_rules, taxonomy, lexicon):
        results = entail_closure("Zhang is a student.", core_rules, taxonomy,
                                 lexicon, max_depth=2)
        texts = [r.text for r in results]
        assert "Zhang is a person." in texts
        person = next(r for r in results if r.text == "Zhang is a person.")
        assert person.derivation == ("hyponym:student>person",)
        assert person.depth == 1

    def test_input_never_among_results(self, core_rules, taxonomy, lexicon):
        for text in ["I study in Beijing University.",
                     "I attend Beijing University.",
                     "The student's name is Zhang.",
                     "Zhang is a student."]:
            results = entail_closure(text, core_rules, taxonomy, lexicon,
                                     max_depth=4)
            assert text not in [r.text for r in results]

    def test_depth_counts_match_derivation_length(self, core_rules, taxonomy,
                                                  lexicon):
        results = entail_closure("English is his mother language.", core_rules,
                                 taxonomy, lexicon, max_depth=3)
        for result in results:
            assert result.depth == len(result.derivation)
        assert {r.text for r in results} \
            == {"He can speak English.", "He can speak a language."}

    def test_fallback_skips_logical_when_rule_fires(self, core_rules, taxonomy,
                                                    lexicon):
        results = entail_closure("English is his mother language.", core_rules,
                                 taxonomy, lexicon, max_depth=1,
                                 logical="fallback")
        assert [r.text for r in results] == ["He can speak English."]

    def test_always_mode_adds_logical_on_matched_items(self, bench_rules,
                                                       taxonomy, lexicon):
        results = entail_closure("I learn English.", bench_rules, taxonomy,
                                 lexicon, max_depth=1, logical="always")
        texts = {r.text for r in results}
        # the rule result and the hyponym rewrite of the same item
        assert "I study English." in texts
        assert "I learn a language." in texts
        # fallback mode would have skipped the hyponym step here
        fallback = entail_closure("I learn English.", bench_rules, taxonomy,
                                  lexicon, max_depth=1, logical="fallback")
        assert "I learn a language." not in {r.text for r in fallback}

    def test_off_mode(self, core_rules, taxonomy, lexicon):
        results = entail_closure("Zhang is a student.", core_rules, taxonomy,
                                 lexicon, logical="off")
        assert results == []

    def test_determinism(self, core_rules, taxonomy, lexicon):
        first = entail_closure("The student's name is Zhang.", core_rules,
                               taxonomy, lexicon)
        second = entail_closure("The student's name is Zhang.", core_rules,
                                taxonomy, lexicon)
        assert [(r.text, r.derivation) for r in first] \
            == [(r.text, r.derivation) for r in second]

    def test_termination_with_adversarial_reversed_pairs(self, bench_rules,
                                                         taxonomy, lexicon):
        # every mutually reversed pair in the larger set terminates too
        for text in ["I work in the company.", "I teach at the school.",
                     "I learn English."]:
            results = entail_closure(text, bench_rules, taxonomy, lexicon,
                                     max_depth=6)
            texts = [r.text for r in results]
            assert len(texts) == len(set(texts))
            assert text not in texts


class TestClosureMatchesBruteForce:
    def test_all_small_subsets(self, core_rules, taxonomy, lexicon):
        """Closure equals the unsuppressed BFS oracle on every rule
        subset of size <= 5, at depth <= 3, over the fixture inputs."""
        inputs = [
            "What is the price of the book?",
            "The student's name is Zhang.",
            "I study in Beijing University.",
            "I attend Beijing University.",
            "English is his mother language.",
            "What was the pen's price two years ago?",
            "Zhang is a student.",
            "I have a dog.",
        ]
        all_rules = list(core_rules)
        checked = 0
        for size in range(0, 6):
            for combo in itertools.combinations(all_rules, size):
                # keep reversed links symmetric inside the subset
                ids = {rule.id for rule in combo}
                subset = RuleSet([
                    rule if (rule.reversed_id is None or rule.reversed_id in ids)
                    else type(rule)(id=rule.id, name=rule.name,
                                    pattern=rule.pattern, template=rule.template,
                                    reversed_id=None, examples=rule.examples)
                    for rule in combo])
                for text in inputs:
                    closure_texts = {
                        r.text for r in entail_closure(
                            text, subset, taxonomy, lexicon, max_depth=3)}
                    oracle_texts = brute_force_closure_texts(
                        text, subset, taxonomy, lexicon, max_depth=3)
                    assert closure_texts == oracle_texts, (size, ids, text)
                    checked += 1
        assert checked == 63 * len(inputs)  # sum of C(6,k) for k in 0..5
