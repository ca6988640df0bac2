#!/usr/bin/env python3
"""Regenerate fixtures/rules/core.xml and fixtures/rules/bench.xml.

The rule fixtures are maintained as code here so that every pattern and
template is built through the model layer and serialized canonically.
Run from the repository root:  python tools/make_fixture_rules.py
"""
from pathlib import Path

from entailgen.model import (Circumstance, Head, NounPhrase, Premodifier,
                             PrepPhrase, PseudoSlot, QueryAdj, Sentence,
                             VerbPhrase)
from entailgen.rules import RuleSet, build_rule, save_rules

ROOT = Path(__file__).resolve().parent.parent


def slot_np(index, category=None):
    return NounPhrase(pseudo=PseudoSlot(index, "noun_phrase"),
                      category_constraint=category)


def noun_head(word, number="sing"):
    return Head(word=word, head_type="noun", person="third", number=number)


WHAT = NounPhrase(head=Head(word="what", head_type="relpron"))
HOW_MUCH = QueryAdj(adjective="much", adverb="how")


def be_is(predicate):
    return VerbPhrase(verb_type="be", tense="present", person="third",
                      number="sing", verb_words=("is",), predicate=predicate)


def be_change(predicate):
    return VerbPhrase(verb_type="be", verb_change=True, predicate=predicate)


def in_circum(np, prep="in"):
    return Circumstance(kind="prep_phrase",
                        prep_phrase=PrepPhrase(preposition=prep, obj=np))


def statement(subject, vp, *circums):
    return Sentence(mood="statement", subject=subject, verb_phrase=vp,
                    circumstances=tuple(circums))


def question(subject, vp, *circums):
    return Sentence(mood="question", subject=subject, verb_phrase=vp,
                    circumstances=tuple(circums))


def core_rules():
    rules = []

    # 1: what is the price of X -> how much is X
    rules.append(build_rule(
        1, "price-of-question",
        pattern=question(WHAT, be_is(NounPhrase(
            head=noun_head("price"),
            postmodifiers=(PrepPhrase("of", slot_np(1)),)))),
        template=question(slot_np(1), be_change(HOW_MUCH)),
        examples=(("What is the price of the book?", "How much is the book?"),),
    ))

    # 2: X's name is N -> X is N
    rules.append(build_rule(
        2, "genitive-name",
        pattern=statement(
            NounPhrase(
                premodifiers=(Premodifier(kind="possessive",
                                          phrase=slot_np(1, "person")),),
                head=noun_head("name")),
            be_is(NounPhrase(head=Head(slot=PseudoSlot(2, "word"),
                                       head_type="name")))),
        template=statement(slot_np(1), be_change(slot_np(2))),
        examples=(("The student's name is Zhang.", "The student is Zhang."),),
    ))

    # 3 <-> 5: X studies in G <-> X attends G
    rules.append(build_rule(
        3, "study-in-attend",
        pattern=statement(
            slot_np(1),
            VerbPhrase(verb_type="verb", tense="present", person="first",
                       number="sing", verb_words=("study",)),
            in_circum(slot_np(2, "group"))),
        template=statement(
            slot_np(1),
            VerbPhrase(verb_type="verb_object", verb_change=True,
                       verb_words=("attend",), direct_object=slot_np(2))),
        reversed_id=5,
        examples=(("I study in Beijing University.",
                   "I attend Beijing University."),),
    ))

    # 4: L is X's mother language -> X can speak L
    rules.append(build_rule(
        4, "mother-language-speak",
        pattern=statement(
            slot_np(1, "language"),
            be_is(NounPhrase(
                premodifiers=(
                    Premodifier(kind="possessive",
                                slot=PseudoSlot(2, "possessive")),
                    Premodifier(kind="noun", word="mother"),
                ),
                head=noun_head("language")))),
        template=statement(
            slot_np(2),
            VerbPhrase(verb_type="verb_object", tense="modal",
                       verb_words=("can", "speak"), kernel_tense="infi",
                       direct_object=slot_np(1))),
        examples=(("English is his mother language.",
                   "He can speak English."),),
    ))

    # 5: reverse of 3
    rules.append(build_rule(
        5, "attend-study-in",
        pattern=statement(
            slot_np(1),
            VerbPhrase(verb_type="verb_object", tense="present",
                       person="first", number="sing", verb_words=("attend",),
                       direct_object=slot_np(2, "group"))),
        template=statement(
            slot_np(1),
            VerbPhrase(verb_type="verb", verb_change=True,
                       verb_words=("study",)),
            in_circum(slot_np(2))),
        reversed_id=3,
        examples=(("I attend Beijing University.",
                   "I study in Beijing University."),),
    ))

    # 6: what is X's price -> how much is X
    rules.append(build_rule(
        6, "price-genitive-question",
        pattern=question(WHAT, be_is(NounPhrase(
            premodifiers=(Premodifier(kind="possessive", phrase=slot_np(1)),),
            head=noun_head("price")))),
        template=question(slot_np(1), be_change(HOW_MUCH)),
        examples=(("What was the pen's price two years ago?",
                   "How much was the pen two years ago?"),),
    ))
    return rules


def intransitive(verb):
    return VerbPhrase(verb_type="verb", tense="present", person="first",
                      number="sing", verb_words=(verb,))


def transitive(verb, obj):
    return VerbPhrase(verb_type="verb_object", tense="present",
                      person="first", number="sing", verb_words=(verb,),
                      direct_object=obj)


def changed_intransitive(verb):
    return VerbPhrase(verb_type="verb", verb_change=True, verb_words=(verb,))


def changed_transitive(verb, obj):
    return VerbPhrase(verb_type="verb_object", verb_change=True,
                      verb_words=(verb,), direct_object=obj)


def bench_rules():
    """20 unique rules for load testing: the core six plus variants."""
    rules = core_rules()

    def prep_swap(rule_id, name, verb, category, prep_from, prep_to,
                  reversed_id, example):
        return build_rule(
            rule_id, name,
            pattern=statement(slot_np(1), intransitive(verb),
                              in_circum(slot_np(2, category), prep_from)),
            template=statement(slot_np(1), changed_intransitive(verb),
                               in_circum(slot_np(2), prep_to)),
            reversed_id=reversed_id, examples=(example,))

    def verb_swap(rule_id, name, verb_from, verb_to, category, example,
                  reversed_id=None):
        return build_rule(
            rule_id, name,
            pattern=statement(slot_np(1),
                              transitive(verb_from, slot_np(2, category))),
            template=statement(slot_np(1),
                               changed_transitive(verb_to, slot_np(2))),
            reversed_id=reversed_id, examples=(example,))

    rules.append(prep_swap(7, "work-in-for", "work", "group", "in", "for", 8,
                           ("I work in the company.", "I work for the company.")))
    rules.append(prep_swap(8, "work-for-in", "work", "group", "for", "in", 7,
                           ("I work for the company.", "I work in the company.")))
    rules.append(prep_swap(9, "teach-at-in", "teach", "group", "at", "in", 10,
                           ("I teach at the school.", "I teach in the school.")))
    rules.append(prep_swap(10, "teach-in-at", "teach", "group", "in", "at", 9,
                           ("I teach in the school.", "I teach at the school.")))
    rules.append(verb_swap(11, "learn-study", "learn", "study", "language",
                           ("I learn English.", "I study English."), 12))
    rules.append(verb_swap(12, "study-learn", "study", "learn", "language",
                           ("I study English.", "I learn English."), 11))
    rules.append(verb_swap(13, "own-have", "own", "have", "artifact",
                           ("I own a book.", "I have a book.")))
    rules.append(verb_swap(14, "buy-own", "buy", "own", "artifact",
                           ("I buy a pen.", "I own a pen.")))
    rules.append(verb_swap(15, "love-like", "love", "like", "animal",
                           ("I love the dog.", "I like the dog.")))
    rules.append(verb_swap(16, "visit-know", "visit", "know", "place",
                           ("I visit the city.", "I know the city.")))
    rules.append(verb_swap(17, "read-use", "read", "use", "artifact",
                           ("I read the book.", "I use the book.")))
    rules.append(build_rule(
        18, "walk-in-visit",
        pattern=statement(slot_np(1), intransitive("walk"),
                          in_circum(slot_np(2, "place"))),
        template=statement(slot_np(1), changed_transitive("visit", slot_np(2))),
        examples=(("I walk in the city.", "I visit the city."),)))
    rules.append(prep_swap(19, "eat-in-at", "eat", "group", "in", "at", None,
                           ("I eat in the club.", "I eat at the club.")))
    rules.append(prep_swap(20, "drink-in-at", "drink", "group", "in", "at", None,
                           ("I drink in the club.", "I drink at the club.")))
    return rules


def main():
    rules_dir = ROOT / "fixtures" / "rules"
    rules_dir.mkdir(parents=True, exist_ok=True)
    save_rules(RuleSet(core_rules()), rules_dir / "core.xml")
    save_rules(RuleSet(bench_rules()), rules_dir / "bench.xml")
    print(f"wrote {rules_dir / 'core.xml'} and {rules_dir / 'bench.xml'}")


if __name__ == "__main__":
    main()
