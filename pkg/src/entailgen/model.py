"""Typed object model of one simple English sentence.

A :class:`Sentence` serves three purposes, told apart by its ``flavor``:

* ``instance`` -- a concrete sentence (no variables),
* ``pattern``  -- a rule's left side, may contain pseudo slots and
  category constraints,
* ``template`` -- a rule's right side, may contain pseudo slots and the
  ``verb_change`` marker.

All models are immutable after construction and safe to share across
threads.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterator, Optional, Union

MOODS = frozenset({"statement", "question", "imperative", "exclamative"})
TENSES = frozenset({"present", "past", "present_perfect", "modal"})
PERSONS = frozenset({"first", "second", "third"})
NUMBERS = frozenset({"sing", "plur"})
VOICES = frozenset({"active", "passive"})
GRADS = frozenset({"abso", "comp", "super"})
VERB_TYPES = frozenset({"be", "verb", "verb_object"})
HEAD_TYPES = frozenset({"noun", "name", "relpron"})
PREMOD_KINDS = frozenset({"article", "possessive", "noun", "address"})
SLOT_KINDS = frozenset({"noun_phrase", "word", "possessive"})
FLAVORS = frozenset({"instance", "pattern", "template"})


@dataclass(frozen=True)
class PseudoSlot:
    """Indexed variable placeholder inside a pattern or template."""
    index: int
    kind: str = "noun_phrase"  # noun_phrase | word | possessive

    def __post_init__(self):
        if self.index < 1:
            raise ValueError(f"pseudo index must be >= 1, got {self.index}")
        if self.kind not in SLOT_KINDS:
            raise ValueError(f"bad slot kind {self.kind!r}")


@dataclass(frozen=True)
class Head:
    """Head word of a noun phrase, or a word-valued slot in its place."""
    word: Optional[str] = None
    head_type: str = "noun"  # noun | name | relpron
    person: str = "third"
    number: str = "sing"
    slot: Optional[PseudoSlot] = None

    def __post_init__(self):
        if (self.word is None) == (self.slot is None):
            raise ValueError("head needs exactly one of word / slot")


@dataclass(frozen=True)
class Premodifier:
    """One premodifier of a noun phrase.

    Exactly one payload is set: ``word`` for single-word premodifiers
    (articles, possessive pronouns, bare nouns, place names), ``phrase``
    for a genitive noun phrase ("the student's"), or ``slot`` for a
    possessive-word variable in a pattern.
    """
    kind: str  # article | possessive | noun | address
    word: Optional[str] = None
    phrase: Optional["NounPhrase"] = None
    slot: Optional[PseudoSlot] = None

    def __post_init__(self):
        if self.kind not in PREMOD_KINDS:
            raise ValueError(f"bad premodifier kind {self.kind!r}")
        payloads = sum(x is not None for x in (self.word, self.phrase, self.slot))
        if payloads != 1:
            raise ValueError("premodifier needs exactly one of word / phrase / slot")
        if (self.phrase is not None or self.slot is not None) and self.kind != "possessive":
            raise ValueError("phrase/slot premodifiers must have kind 'possessive'")


@dataclass(frozen=True)
class NounPhrase:
    premodifiers: tuple[Premodifier, ...] = ()
    head: Optional[Head] = None
    category_constraint: Optional[str] = None
    postmodifiers: tuple["PrepPhrase", ...] = ()
    pseudo: Optional[PseudoSlot] = None

    def __post_init__(self):
        if self.pseudo is not None:
            # A slot phrase has no surface content of its own; only a
            # category constraint may accompany it.
            if self.premodifiers or self.head is not None or self.postmodifiers:
                raise ValueError("pseudo noun phrase must carry no other content")
        elif self.head is None:
            raise ValueError("non-pseudo noun phrase needs a head")


@dataclass(frozen=True)
class PrepPhrase:
    preposition: str
    obj: NounPhrase

    def __post_init__(self):
        if not self.preposition:
            raise ValueError("preposition must be non-empty")


@dataclass(frozen=True)
class QueryAdj:
    """Adjectival predicate, optionally with a degree adverb ("how much")."""
    adjective: str
    adverb: Optional[str] = None
    adverb_type: Optional[str] = "extent"
    grad: str = "abso"

    def __post_init__(self):
        if self.grad not in GRADS:
            raise ValueError(f"bad grad {self.grad!r}")
        if self.adverb is None and self.adverb_type is not None:
            object.__setattr__(self, "adverb_type", None)


Predicate = Union[NounPhrase, QueryAdj]


@dataclass(frozen=True)
class VerbPhrase:
    verb_type: str  # be | verb | verb_object
    voice: str = "active"
    tense: Optional[str] = None
    person: Optional[str] = None
    number: Optional[str] = None
    verb_words: tuple[str, ...] = ()
    kernel_tense: Optional[str] = None  # "infi" after modals
    predicate: Optional[Predicate] = None
    direct_object: Optional[NounPhrase] = None
    verb_change: bool = False

    def __post_init__(self):
        if self.verb_type not in VERB_TYPES:
            raise ValueError(f"bad verb type {self.verb_type!r}")
        if self.voice not in VOICES:
            raise ValueError(f"bad voice {self.voice!r}")
        if self.tense is not None and self.tense not in TENSES:
            raise ValueError(f"bad tense {self.tense!r}")

    @property
    def kernel_lemma(self) -> Optional[str]:
        """Dictionary form of the kernel verb as written in the phrase.

        For ``be`` phrases the kernel is always "be"; otherwise the last
        verb word (the one after any modal).
        """
        if self.verb_type == "be":
            return "be"
        if self.verb_words:
            return self.verb_words[-1]
        return None


@dataclass(frozen=True)
class Circumstance:
    """Sentence-level adjunct: a prepositional phrase or a time adverbial."""
    kind: str  # prep_phrase | adverbial
    prep_phrase: Optional[PrepPhrase] = None
    adverbial: Optional[str] = None

    def __post_init__(self):
        if self.kind == "prep_phrase":
            if self.prep_phrase is None or self.adverbial is not None:
                raise ValueError("prep_phrase circumstance needs a prep phrase payload")
        elif self.kind == "adverbial":
            if self.adverbial is None or self.prep_phrase is not None:
                raise ValueError("adverbial circumstance needs an adverbial payload")
        else:
            raise ValueError(f"bad circumstance kind {self.kind!r}")


@dataclass(frozen=True)
class Sentence:
    mood: str
    subject: NounPhrase
    verb_phrase: VerbPhrase
    circumstances: tuple[Circumstance, ...] = ()
    complexity: str = "simple"
    # flavor is bookkeeping, not structure: two sentences that differ only
    # in flavor are structurally equal.
    flavor: str = field(default="instance", compare=False)

    def __post_init__(self):
        if self.mood not in MOODS:
            raise ValueError(f"bad mood {self.mood!r}")
        if self.flavor not in FLAVORS:
            raise ValueError(f"bad flavor {self.flavor!r}")

    def with_flavor(self, flavor: str) -> "Sentence":
        return replace(self, flavor=flavor)


# --- model walking helpers ---

def iter_noun_phrases(sentence: Sentence) -> Iterator[NounPhrase]:
    """Yield every noun phrase in the sentence, depth-first."""
    def walk_np(np: NounPhrase) -> Iterator[NounPhrase]:
        yield np
        for prem in np.premodifiers:
            if prem.phrase is not None:
                yield from walk_np(prem.phrase)
        for pp in np.postmodifiers:
            yield from walk_np(pp.obj)

    yield from walk_np(sentence.subject)
    vp = sentence.verb_phrase
    if isinstance(vp.predicate, NounPhrase):
        yield from walk_np(vp.predicate)
    if vp.direct_object is not None:
        yield from walk_np(vp.direct_object)
    for circ in sentence.circumstances:
        if circ.prep_phrase is not None:
            yield from walk_np(circ.prep_phrase.obj)


def iter_pseudo_slots(sentence: Sentence) -> Iterator[PseudoSlot]:
    for np in iter_noun_phrases(sentence):
        if np.pseudo is not None:
            yield np.pseudo
        for prem in np.premodifiers:
            if prem.slot is not None:
                yield prem.slot
        if np.head is not None and np.head.slot is not None:
            yield np.head.slot


def pseudo_indices(sentence: Sentence) -> set[int]:
    return {slot.index for slot in iter_pseudo_slots(sentence)}


def has_category_constraint(sentence: Sentence) -> bool:
    return any(np.category_constraint is not None
               for np in iter_noun_phrases(sentence))


def infer_flavor(sentence: Sentence) -> str:
    """Classify a freshly parsed model by the markers it contains.

    ``verb_change`` forces template; pseudo slots or category constraints
    force pattern; anything else is a concrete instance. A model that is
    both constrained like a pattern and marked ``verb_change`` like a
    template cannot be classified without rule context.
    """
    from .errors import ConflictingFlavor

    has_template_marker = sentence.verb_phrase.verb_change
    has_pattern_marker = has_category_constraint(sentence)
    if has_template_marker and has_pattern_marker:
        raise ConflictingFlavor("category constraint and verb_change in one model")
    if has_template_marker:
        return "template"
    if has_pattern_marker or pseudo_indices(sentence):
        return "pattern"
    return "instance"


def check_instance_purity(sentence: Sentence) -> list[str]:
    """Return reasons why the model is not a pure concrete instance."""
    problems = []
    slots = sorted(pseudo_indices(sentence))
    if slots:
        problems.append(f"pseudo slots present: {slots}")
    if has_category_constraint(sentence):
        problems.append("category constraint present")
    if sentence.verb_phrase.verb_change:
        problems.append("verb_change present")
    return problems
