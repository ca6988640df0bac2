"""Instantiate a rule template with the outcome of a pattern match.

Substitution rules:

* a noun-phrase slot takes the bound phrase as-is; a bound single word
  becomes a name-headed phrase; a bound possessive pronoun switches to
  its nominative form first ("his" placed as a subject becomes "he"),
* a possessive premodifier slot takes the bound possessive word,
* when the template carries ``verb_change`` the finite verb group is
  rebuilt from the template's kernel verb, the source sentence's tense
  and the new subject's agreement; otherwise the template's literal verb
  words are kept ("can speak"),
* circumstances the match carried over are appended after the
  template's own.
"""
from __future__ import annotations

from typing import Optional

from .errors import CaseChangeOnNonPronoun, MissingBinding, NotPossessive
from .lexicon import Lexicon, agreement_of, conjugate, possessive_to_nominative
from .matching import Fragment, MatchOutcome, match
from .model import (Circumstance, Head, NounPhrase, Premodifier, PrepPhrase,
                    PseudoSlot, Sentence, VerbPhrase)
from .taxonomy import TaxonomyGraph


def _fragment_for(outcome: MatchOutcome, slot: PseudoSlot) -> Fragment:
    try:
        return outcome.binding[slot.index]
    except KeyError:
        raise MissingBinding(slot.index) from None


def _np_from_fragment(fragment: Fragment, kind: str,
                      lexicon: Lexicon) -> NounPhrase:
    if isinstance(fragment, NounPhrase):
        if kind == "possessive":
            raise CaseChangeOnNonPronoun(fragment)
        return fragment
    if kind == "possessive":
        # genitive pronoun reused as a full phrase: change its case
        try:
            nominative = possessive_to_nominative(fragment)
        except NotPossessive:
            raise CaseChangeOnNonPronoun(fragment) from None
        entry = lexicon.lookup(nominative, "personal_pronoun")
        person = entry.person if entry else "third"
        number = entry.number if entry else "sing"
        word = entry.surface if entry else nominative
        return NounPhrase(head=Head(word=word, head_type="noun",
                                    person=person, number=number))
    # a bare captured word: a proper name head
    entry = lexicon.lookup(fragment, "name")
    return NounPhrase(head=Head(
        word=fragment, head_type="name",
        person=entry.person if entry else "third",
        number=entry.number if entry else "sing"))


def _resolve_np(np: NounPhrase, outcome: MatchOutcome,
                lexicon: Lexicon) -> NounPhrase:
    if np.pseudo is not None:
        fragment = _fragment_for(outcome, np.pseudo)
        kind = outcome.fragment_kinds.get(np.pseudo.index, np.pseudo.kind)
        return _np_from_fragment(fragment, kind, lexicon)

    premodifiers = []
    for prem in np.premodifiers:
        if prem.slot is not None:
            fragment = _fragment_for(outcome, prem.slot)
            if isinstance(fragment, NounPhrase):
                premodifiers.append(Premodifier(kind="possessive",
                                                phrase=fragment))
            else:
                premodifiers.append(Premodifier(kind="possessive",
                                                word=fragment))
        elif prem.phrase is not None:
            premodifiers.append(Premodifier(
                kind="possessive",
                phrase=_resolve_np(prem.phrase, outcome, lexicon)))
        else:
            premodifiers.append(prem)

    head = np.head
    if head is not None and head.slot is not None:
        fragment = _fragment_for(outcome, head.slot)
        if isinstance(fragment, NounPhrase):
            # a phrase bound into a word position keeps only its head
            fragment = fragment.head.word if fragment.head else None
        entry = lexicon.lookup(fragment) if fragment else None
        head = Head(word=fragment, head_type=head.head_type,
                    person=entry.person if entry else "third",
                    number=entry.number if entry else "sing")

    postmodifiers = tuple(
        PrepPhrase(pp.preposition, _resolve_np(pp.obj, outcome, lexicon))
        for pp in np.postmodifiers)
    return NounPhrase(premodifiers=tuple(premodifiers), head=head,
                      postmodifiers=postmodifiers)


def instantiate(template: Sentence, outcome: MatchOutcome,
                lexicon: Lexicon) -> Sentence:
    """Fill a template's slots from a match and finish the verb group."""
    subject = _resolve_np(template.subject, outcome, lexicon)
    tvp = template.verb_phrase

    predicate = tvp.predicate
    if isinstance(predicate, NounPhrase):
        predicate = _resolve_np(predicate, outcome, lexicon)
    direct_object = tvp.direct_object
    if direct_object is not None:
        direct_object = _resolve_np(direct_object, outcome, lexicon)

    person, number = agreement_of(subject, lexicon)
    if tvp.verb_change:
        tense = outcome.source_tense or tvp.tense or "present"
        lemma = "be" if tvp.verb_type == "be" else (
            tvp.verb_words[-1] if tvp.verb_words else None)
        if lemma is None:
            lemma = "be"
        verb_words = tuple(conjugate(lexicon, lemma, tense, person, number))
        kernel_tense = None
    else:
        tense = tvp.tense
        verb_words = tvp.verb_words
        kernel_tense = tvp.kernel_tense

    vp = VerbPhrase(verb_type=tvp.verb_type, voice=tvp.voice, tense=tense,
                    person=person, number=number, verb_words=verb_words,
                    kernel_tense=kernel_tense, predicate=predicate,
                    direct_object=direct_object, verb_change=False)

    circumstances = []
    for circ in template.circumstances:
        if circ.kind == "prep_phrase":
            circumstances.append(Circumstance(
                kind="prep_phrase",
                prep_phrase=PrepPhrase(
                    circ.prep_phrase.preposition,
                    _resolve_np(circ.prep_phrase.obj, outcome, lexicon))))
        else:
            circumstances.append(circ)
    circumstances.extend(outcome.carried_circumstances)

    return Sentence(mood=template.mood, subject=subject, verb_phrase=vp,
                    circumstances=tuple(circumstances),
                    complexity=template.complexity, flavor="instance")


def apply_rule(rule, sentence: Sentence, taxonomy: TaxonomyGraph,
               lexicon: Lexicon) -> Optional[Sentence]:
    """Match the rule's pattern and, on success, build the entailment."""
    outcome = match(rule.pattern, sentence, taxonomy, lexicon)
    if outcome is None:
        return None
    return instantiate(rule.template, outcome, lexicon)
