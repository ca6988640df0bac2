"""Decide whether a concrete sentence instantiates a rule pattern.

Comparison proceeds mood, subject, verb phrase, circumstances, failing
fast in that order. Mood, verb type, voice, prepositions and lexical
words are hard requirements; tense, person and number are captured from
the sentence rather than compared, so one rule applies across tenses.

A pattern noun phrase with a pseudo slot matches any phrase (checking a
category constraint on the head first, when present) and binds it.
Pattern premodifiers and postmodifiers must match an ordered subsequence
of the sentence's; material the pattern does not mention is simply not
constrained. Every pattern circumstance must find a distinct matching
sentence circumstance; the sentence's remaining circumstances are
carried into the transformation unchanged.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from .errors import NotSupported
from .lexicon import Lexicon
from .model import (Circumstance, Head, NounPhrase, Premodifier, PseudoSlot,
                    QueryAdj, Sentence, VerbPhrase)
from .taxonomy import TaxonomyGraph

Fragment = Union[NounPhrase, str]

STAGES = ("mood", "subject", "verb_phrase", "circumstances")


@dataclass
class MatchOutcome:
    """Captured state of one successful pattern match."""
    binding: dict[int, Fragment] = field(default_factory=dict)
    fragment_kinds: dict[int, str] = field(default_factory=dict)
    source_tense: Optional[str] = None
    source_person: str = "third"
    source_number: str = "sing"
    carried_circumstances: tuple[Circumstance, ...] = ()


class _Matcher:
    def __init__(self, taxonomy: TaxonomyGraph, lexicon: Optional[Lexicon],
                 counters: Optional[dict]):
        self.taxonomy = taxonomy
        self.lexicon = lexicon
        self.counters = counters if counters is not None else {}
        self.binding: dict[int, Fragment] = {}
        self.fragment_kinds: dict[int, str] = {}

    def bump(self, stage: str):
        self.counters[stage] = self.counters.get(stage, 0) + 1

    # --- binding ---

    def bind(self, slot: PseudoSlot, fragment: Fragment) -> bool:
        existing = self.binding.get(slot.index)
        if existing is not None:
            return existing == fragment
        self.binding[slot.index] = fragment
        self.fragment_kinds[slot.index] = slot.kind
        return True

    def attempt(self, fn, *args) -> bool:
        """Run a sub-match, rolling captured bindings back on failure."""
        saved_binding = dict(self.binding)
        saved_kinds = dict(self.fragment_kinds)
        if fn(*args):
            return True
        self.binding = saved_binding
        self.fragment_kinds = saved_kinds
        return False

    # --- category constraints ---

    def head_satisfies(self, np: NounPhrase, category: str) -> bool:
        if np.head is None or np.head.word is None:
            return False
        word = np.head.word
        candidates = [word, word.lower()]
        if self.lexicon is not None:
            candidates.append(self.lexicon.noun_lemma(word))
            candidates.append(self.lexicon.noun_lemma(word.lower()))
        return any(self.taxonomy.is_instance(c, category)
                   for c in dict.fromkeys(candidates))

    # --- noun phrases ---

    def match_np(self, pattern: NounPhrase, concrete: NounPhrase) -> bool:
        if pattern.pseudo is not None:
            if pattern.category_constraint is not None and \
                    not self.head_satisfies(concrete, pattern.category_constraint):
                return False
            return self.bind(pattern.pseudo, concrete)
        if pattern.category_constraint is not None:
            return self.head_satisfies(concrete, pattern.category_constraint)
        if concrete.pseudo is not None:
            return False
        if not self._match_premodifiers(pattern.premodifiers,
                                        concrete.premodifiers):
            return False
        if not self._match_head(pattern.head, concrete.head):
            return False
        return self._match_postmodifiers(pattern.postmodifiers,
                                         concrete.postmodifiers)

    def _match_head(self, pattern: Head, concrete: Optional[Head]) -> bool:
        if concrete is None:
            return False
        if pattern.slot is not None:
            # word-valued slot, written as a name-typed head in patterns
            if pattern.head_type == "name" and concrete.head_type != "name":
                return False
            if concrete.word is None:
                return False
            return self.bind(pattern.slot, concrete.word)
        if concrete.word is None:
            return False
        if pattern.head_type == "name" and concrete.head_type != "name":
            return False
        return pattern.word.lower() == concrete.word.lower()

    def _match_premodifier(self, pattern: Premodifier,
                           concrete: Premodifier) -> bool:
        if pattern.slot is not None:
            if concrete.kind != "possessive" or concrete.word is None:
                return False
            return self.bind(pattern.slot, concrete.word)
        if pattern.phrase is not None:
            if concrete.phrase is None:
                return False
            return self.match_np(pattern.phrase, concrete.phrase)
        if concrete.word is None:
            return False
        if pattern.kind != concrete.kind:
            return False
        return pattern.word.lower() == concrete.word.lower()

    def _match_premodifiers(self, pattern: tuple[Premodifier, ...],
                            concrete: tuple[Premodifier, ...]) -> bool:
        # pattern premodifiers must match an ordered subsequence of the
        # concrete ones; unmentioned concrete premodifiers are free
        j = 0
        for pat in pattern:
            while j < len(concrete):
                candidate = concrete[j]
                j += 1
                if self.attempt(self._match_premodifier, pat, candidate):
                    break
            else:
                return False
        return True

    def _match_postmodifier(self, pattern, concrete) -> bool:
        return (pattern.preposition.lower() == concrete.preposition.lower()
                and self.match_np(pattern.obj, concrete.obj))

    def _match_postmodifiers(self, pattern, concrete) -> bool:
        j = 0
        for pat in pattern:
            while j < len(concrete):
                candidate = concrete[j]
                j += 1
                if self.attempt(self._match_postmodifier, pat, candidate):
                    break
            else:
                return False
        return True

    # --- verb phrases ---

    def match_verb_phrase(self, pattern: VerbPhrase, concrete: VerbPhrase) -> bool:
        if pattern.verb_type != concrete.verb_type:
            return False
        if pattern.voice != concrete.voice:
            return False
        if pattern.verb_type in ("verb", "verb_object"):
            if not self._kernel_matches(pattern, concrete):
                return False
        if pattern.predicate is not None:
            if not self._match_predicate(pattern.predicate, concrete.predicate):
                return False
        if pattern.direct_object is not None:
            if concrete.direct_object is None:
                return False
            if not self.match_np(pattern.direct_object, concrete.direct_object):
                return False
        return True

    def _kernel_matches(self, pattern: VerbPhrase, concrete: VerbPhrase) -> bool:
        pattern_kernel = pattern.kernel_lemma
        if pattern_kernel is None:
            return True
        kernel = concrete.kernel_lemma
        if kernel is None:
            return False
        concrete_lemma = kernel.lower()
        if self.lexicon is not None:
            concrete_lemma = self.lexicon.verb_lemma(kernel) or concrete_lemma
        return pattern_kernel.lower() == concrete_lemma

    def _match_predicate(self, pattern, concrete) -> bool:
        if isinstance(pattern, NounPhrase):
            return isinstance(concrete, NounPhrase) and \
                self.match_np(pattern, concrete)
        if isinstance(pattern, QueryAdj):
            if not isinstance(concrete, QueryAdj):
                return False
            return (pattern.adjective.lower() == concrete.adjective.lower()
                    and (pattern.adverb or "").lower() == (concrete.adverb or "").lower()
                    and pattern.grad == concrete.grad)
        return False

    # --- circumstances ---

    def match_circumstances(self, pattern: tuple[Circumstance, ...],
                            concrete: tuple[Circumstance, ...]
                            ) -> Optional[tuple[Circumstance, ...]]:
        # each sentence circumstance satisfies at most one pattern
        # circumstance; first in sentence order wins
        used: set[int] = set()
        for pat in pattern:
            for idx, candidate in enumerate(concrete):
                if idx in used:
                    continue
                if self.attempt(self._match_circumstance, pat, candidate):
                    used.add(idx)
                    break
            else:
                return None
        return tuple(c for idx, c in enumerate(concrete) if idx not in used)

    def _match_circumstance(self, pattern: Circumstance,
                            concrete: Circumstance) -> bool:
        if pattern.kind != concrete.kind:
            return False
        if pattern.kind == "adverbial":
            return pattern.adverbial.lower() == concrete.adverbial.lower()
        if pattern.prep_phrase.preposition.lower() != \
                concrete.prep_phrase.preposition.lower():
            return False
        return self.match_np(pattern.prep_phrase.obj, concrete.prep_phrase.obj)


def explain_match(pattern: Sentence, sentence: Sentence,
                  taxonomy: TaxonomyGraph, lexicon: Optional[Lexicon] = None,
                  counters: Optional[dict] = None
                  ) -> tuple[Optional[MatchOutcome], Optional[str]]:
    """Like :func:`match` but names the first comparison that failed."""
    if pattern.complexity != "simple" or sentence.complexity != "simple":
        raise NotSupported("only simple sentences can be matched")

    matcher = _Matcher(taxonomy, lexicon, counters)

    matcher.bump("mood")
    if pattern.mood != sentence.mood:
        return None, "mood"

    matcher.bump("subject")
    if not matcher.match_np(pattern.subject, sentence.subject):
        return None, "subject"

    matcher.bump("verb_phrase")
    if not matcher.match_verb_phrase(pattern.verb_phrase, sentence.verb_phrase):
        return None, "verb_phrase"

    matcher.bump("circumstances")
    carried = matcher.match_circumstances(pattern.circumstances,
                                          sentence.circumstances)
    if carried is None:
        return None, "circumstances"

    vp = sentence.verb_phrase
    outcome = MatchOutcome(
        binding=matcher.binding,
        fragment_kinds=matcher.fragment_kinds,
        source_tense=vp.tense,
        source_person=vp.person or "third",
        source_number=vp.number or "sing",
        carried_circumstances=carried,
    )
    return outcome, None


def match(pattern: Sentence, sentence: Sentence, taxonomy: TaxonomyGraph,
          lexicon: Optional[Lexicon] = None,
          counters: Optional[dict] = None) -> Optional[MatchOutcome]:
    outcome, _ = explain_match(pattern, sentence, taxonomy, lexicon, counters)
    return outcome
