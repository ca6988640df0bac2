"""Hypothesis strategies over the fixture vocabulary."""
from hypothesis import strategies as st

from entailgen.model import (Circumstance, Head, NounPhrase, Premodifier,
                             PrepPhrase, PseudoSlot, QueryAdj, Sentence,
                             VerbPhrase)

SING_NOUNS = ["price", "book", "pen", "name", "student", "teacher", "dog",
              "cat", "animal", "person", "language", "university", "college",
              "school", "company", "city", "ticket", "weather", "problem"]
PLUR_NOUNS = ["books", "pens", "students", "teachers", "dogs", "tickets"]
NAMES = ["Zhang", "John", "Li", "Mary", "Tom"]
POSSESSIVES = ["my", "your", "his", "her", "its", "our", "their"]
ARTICLES = ["the", "a", "an"]
NOUN_PREMS = ["bus", "mother", "capital"]
VERBS = ["study", "attend", "work", "teach", "learn", "visit", "love"]
PREPOSITIONS = ["of", "in", "at", "for"]
CATEGORIES = ["person", "group", "language", "animal", "artifact", "place"]
ADVERBIALS = ["two years ago", "five years ago", "since 2007", "since 1999"]
TENSES = ["present", "past", "present_perfect"]

noun_heads = st.one_of(
    st.sampled_from(SING_NOUNS).map(
        lambda w: Head(word=w, head_type="noun")),
    st.sampled_from(PLUR_NOUNS).map(
        lambda w: Head(word=w, head_type="noun", number="plur")),
    st.sampled_from(NAMES).map(
        lambda w: Head(word=w, head_type="name")),
)

word_premods = st.one_of(
    st.sampled_from(ARTICLES).map(
        lambda w: Premodifier(kind="article", word=w)),
    st.sampled_from(POSSESSIVES).map(
        lambda w: Premodifier(kind="possessive", word=w)),
    st.sampled_from(NOUN_PREMS).map(
        lambda w: Premodifier(kind="noun", word=w)),
    st.just(Premodifier(kind="address", word="Beijing")),
)


@st.composite
def instance_nps(draw, max_depth: int = 2):
    prems = tuple(draw(st.lists(word_premods, max_size=2)))
    head = draw(noun_heads)
    postmods = ()
    if max_depth > 0 and draw(st.booleans()):
        prep = draw(st.sampled_from(PREPOSITIONS))
        obj = draw(instance_nps(max_depth=max_depth - 1))
        postmods = (PrepPhrase(preposition=prep, obj=obj),)
    genitive = ()
    if max_depth > 0 and draw(st.integers(0, 4)) == 0:
        inner = draw(instance_nps(max_depth=0))
        genitive = (Premodifier(kind="possessive", phrase=inner),)
    return NounPhrase(premodifiers=genitive + prems, head=head,
                      postmodifiers=postmods)


@st.composite
def pattern_nps(draw, index: int, allow_category: bool = True):
    """A slot phrase, optionally category-constrained."""
    category = draw(st.one_of(st.none(), st.sampled_from(CATEGORIES))) \
        if allow_category else None
    return NounPhrase(pseudo=PseudoSlot(index, "noun_phrase"),
                      category_constraint=category)


@st.composite
def circumstances_(draw):
    if draw(st.booleans()):
        return Circumstance(kind="adverbial",
                            adverbial=draw(st.sampled_from(ADVERBIALS)))
    return Circumstance(
        kind="prep_phrase",
        prep_phrase=PrepPhrase(preposition=draw(st.sampled_from(["in", "at"])),
                               obj=draw(instance_nps(max_depth=0))))


@st.composite
def verb_phrases(draw, allow_markers: bool):
    verb_type = draw(st.sampled_from(["be", "verb", "verb_object"]))
    tense = draw(st.one_of(st.none(), st.sampled_from(TENSES + ["modal"]))
                 if allow_markers else st.sampled_from(TENSES))
    person = draw(st.one_of(st.none(), st.sampled_from(
        ["first", "second", "third"]))) if allow_markers else "third"
    number = draw(st.one_of(st.none(), st.sampled_from(["sing", "plur"]))) \
        if allow_markers else draw(st.sampled_from(["sing", "plur"]))
    verb_change = allow_markers and draw(st.booleans())

    predicate = None
    direct_object = None
    if verb_type == "be":
        if draw(st.booleans()):
            predicate = draw(instance_nps(max_depth=1))
            verb_words = ("is",)
        else:
            predicate = QueryAdj(adjective="much", adverb="how")
            verb_words = ("is",)
    elif verb_type == "verb_object":
        direct_object = draw(instance_nps(max_depth=1))
        verb_words = (draw(st.sampled_from(VERBS)),)
    else:
        verb_words = (draw(st.sampled_from(VERBS)),)
    return VerbPhrase(verb_type=verb_type, tense=tense, person=person,
                      number=number, verb_words=verb_words,
                      predicate=predicate, direct_object=direct_object,
                      verb_change=verb_change)


@st.composite
def sentences(draw, allow_markers: bool = True):
    """Structurally valid models over the fixture vocabulary.

    With ``allow_markers`` the result may contain pseudo slots, category
    constraints and verb_change, i.e. anything the markup can express --
    but never a category constraint together with verb_change, which no
    flavor accepts.
    """
    mood = draw(st.sampled_from(["statement", "question"]))
    vp = draw(verb_phrases(allow_markers=allow_markers))
    if allow_markers and draw(st.integers(0, 2)) == 0:
        subject = draw(pattern_nps(index=draw(st.integers(1, 3)),
                                   allow_category=not vp.verb_change))
    else:
        subject = draw(instance_nps(max_depth=1))
    circs = tuple(draw(st.lists(circumstances_(), max_size=2)))
    return Sentence(mood=mood, subject=subject, verb_phrase=vp,
                    circumstances=circs)
