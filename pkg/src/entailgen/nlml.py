"""Sentence markup: parsing into the object model and canonical output.

The markup is a small closed-inventory XML dialect. A single
``<sentence>`` root wraps the tag sequence ``mood``, ``complexity``,
``subject``, ``verb_phrase``, ``circum``*. Variables may be written
either as the literal text ``pseudo variable N`` (in ``<word>``,
``<subject>``, ``<noun>``, ``<prem>``, ``<direct_object>`` or
``<pseudo>`` positions) or as an explicit ``<pseudo index="N"
kind="..."/>`` element; both normalize to the same slot objects, and the
canonical serializer always emits the explicit form.

Canonical output (2-space indent, fixed child order, explicit pseudo
elements) is the package's deduplication key: two models are considered
the same sentence iff they serialize to the same bytes.
"""
from __future__ import annotations

import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from typing import Optional

from .errors import (BadFeatureValue, ConflictingFlavor, MissingMood, NlmlError,
                     UnknownTag)
from .model import (GRADS, MOODS, NUMBERS, PERSONS, TENSES, VERB_TYPES, VOICES,
                    Circumstance, Head, NounPhrase, Premodifier, PrepPhrase,
                    PseudoSlot, QueryAdj, Sentence, VerbPhrase,
                    check_instance_purity, has_category_constraint, infer_flavor,
                    pseudo_indices)

TAG_INVENTORY = frozenset({
    "sentence", "mood", "complexity", "subject", "verb_phrase", "verb_type",
    "voice", "tense", "numb", "pers", "verb_word", "kernel_tense",
    "verb_change", "predicate", "predicate_type", "direct_object", "adj",
    "adv", "grad", "noun", "type", "word", "category", "prem", "prep_phrase",
    "prep", "circum", "circum_type", "pseudo",
})

HEAD_TYPE_VALUES = frozenset({"noun", "name", "relpron"})
PREM_TYPE_VALUES = frozenset({"art", "article", "possessive", "noun", "address"})

_PSEUDO_TEXT = re.compile(r"^pseudo\s+variable\s+(\d+)$")


@dataclass(frozen=True)
class RawNode:
    """One element of the raw tag tree."""
    tag: str
    attributes: dict = field(default_factory=dict)
    text: Optional[str] = None
    children: tuple["RawNode", ...] = ()


def _to_raw(elem: ET.Element) -> RawNode:
    tag = elem.tag
    if tag not in TAG_INVENTORY:
        raise UnknownTag(tag)
    children = tuple(_to_raw(child) for child in elem)
    text = (elem.text or "").strip() or None
    if text is not None and children:
        raise NlmlError(f"<{tag}> mixes text and child elements")
    return RawNode(tag=tag, attributes=dict(elem.attrib), text=text,
                   children=children)


def markup_to_raw(markup: str) -> RawNode:
    try:
        root = ET.fromstring(markup)
    except ET.ParseError as exc:
        raise NlmlError(f"malformed markup: {exc}") from exc
    return _to_raw(root)


def _pseudo_index_from_text(text: Optional[str]) -> Optional[int]:
    if text is None:
        return None
    match = _PSEUDO_TEXT.match(text.strip())
    return int(match.group(1)) if match else None


def _feature(node: RawNode, allowed: frozenset) -> str:
    value = (node.text or "").strip()
    if value not in allowed:
        raise BadFeatureValue(node.tag, value)
    return value


def _slot_from_pseudo_element(node: RawNode, default_kind: str) -> PseudoSlot:
    index = None
    if "index" in node.attributes:
        try:
            index = int(node.attributes["index"])
        except ValueError:
            raise BadFeatureValue("pseudo", node.attributes["index"])
    else:
        index = _pseudo_index_from_text(node.text)
    if index is None:
        raise BadFeatureValue("pseudo", node.text or "")
    kind = node.attributes.get("kind", default_kind)
    try:
        return PseudoSlot(index=index, kind=kind)
    except ValueError as exc:
        raise BadFeatureValue("pseudo", kind) from exc


# --- noun phrase parsing ---

def _parse_head(noun: RawNode) -> tuple[Optional[Head], Optional[PseudoSlot],
                                         Optional[str]]:
    """Digest a <noun> element.

    Returns (head, phrase_slot, category): either a concrete or
    word-slot head, or a phrase-level slot that swallows the whole
    containing noun phrase.
    """
    word = None
    head_type = "noun"
    person = "third"
    number = "sing"
    category = None
    slot_el = None

    bare_index = _pseudo_index_from_text(noun.text)
    if bare_index is not None:
        return None, PseudoSlot(bare_index, "noun_phrase"), None

    for child in noun.children:
        if child.tag == "word":
            word = (child.text or "").strip()
        elif child.tag == "type":
            head_type = _feature(child, HEAD_TYPE_VALUES)
        elif child.tag == "pers":
            person = _feature(child, PERSONS)
        elif child.tag == "numb":
            number = _feature(child, NUMBERS)
        elif child.tag == "category":
            category = (child.text or "").strip()
        elif child.tag == "pseudo":
            slot_el = child
        else:
            raise NlmlError(f"<{child.tag}> not allowed inside <noun>")

    word_index = _pseudo_index_from_text(word)
    if slot_el is not None or word_index is not None:
        if slot_el is not None:
            default = "word" if head_type == "name" else "noun_phrase"
            slot = _slot_from_pseudo_element(slot_el, default)
        else:
            kind = "word" if head_type == "name" else "noun_phrase"
            slot = PseudoSlot(word_index, kind)
        if slot.kind == "word":
            return Head(slot=slot, head_type=head_type), None, category
        return None, slot, category

    if word is None:
        raise NlmlError("<noun> needs a <word> or a pseudo marker")
    return Head(word=word, head_type=head_type, person=person,
                number=number), None, category


def _parse_premodifier(prem: RawNode) -> Premodifier:
    prem_type = None
    word = None
    rest = []
    for child in prem.children:
        if child.tag == "type":
            value = (child.text or "").strip()
            if value not in PREM_TYPE_VALUES:
                raise BadFeatureValue("type", value)
            prem_type = "article" if value in ("art", "article") else value
        elif child.tag == "word":
            word = (child.text or "").strip()
        elif child.tag in ("pers", "numb"):
            pass  # feature noise on premodifiers carries no information
        elif child.tag in ("prem", "noun", "prep_phrase", "pseudo", "category"):
            rest.append(child)
        else:
            raise NlmlError(f"<{child.tag}> not allowed inside <prem>")

    index = _pseudo_index_from_text(word)
    if index is not None:
        return Premodifier(kind="possessive",
                           slot=PseudoSlot(index, "possessive"))

    if rest:
        if len(rest) == 1 and rest[0].tag == "pseudo":
            slot = _slot_from_pseudo_element(rest[0], "possessive")
            if slot.kind == "possessive":
                return Premodifier(kind="possessive", slot=slot)
        # genitive premodifier: an embedded noun phrase plus 's
        phrase = _parse_np_children(tuple(rest))
        return Premodifier(kind="possessive", phrase=phrase)

    if prem_type is None or word is None:
        raise NlmlError("<prem> needs <type> and <word>")
    return Premodifier(kind=prem_type, word=word)


def _parse_np_children(children: tuple[RawNode, ...]) -> NounPhrase:
    prems: list[Premodifier] = []
    postmods: list[PrepPhrase] = []
    head: Optional[Head] = None
    category: Optional[str] = None
    phrase_slot: Optional[PseudoSlot] = None

    for child in children:
        if child.tag == "prem":
            prems.append(_parse_premodifier(child))
        elif child.tag == "noun":
            head, slot, noun_category = _parse_head(child)
            if noun_category is not None:
                category = noun_category
            if slot is not None:
                phrase_slot = slot
        elif child.tag == "prep_phrase":
            postmods.append(_parse_prep_phrase(child))
        elif child.tag == "pseudo":
            phrase_slot = _slot_from_pseudo_element(child, "noun_phrase")
        elif child.tag == "category":
            category = (child.text or "").strip()
        else:
            raise NlmlError(f"<{child.tag}> not allowed in noun phrase position")

    if phrase_slot is not None:
        # The slot stands for the whole phrase: any premodifiers or
        # postmodifiers written around it carry no constraint.
        return NounPhrase(pseudo=phrase_slot, category_constraint=category)
    if head is None:
        raise NlmlError("noun phrase needs a <noun> head or a pseudo marker")
    return NounPhrase(premodifiers=tuple(prems), head=head,
                      category_constraint=category,
                      postmodifiers=tuple(postmods))


def _parse_np_position(node: RawNode) -> NounPhrase:
    """Parse a whole-phrase position (<subject>, <direct_object>, ...)."""
    index = _pseudo_index_from_text(node.text)
    if index is not None:
        return NounPhrase(pseudo=PseudoSlot(index, "noun_phrase"))
    if node.text is not None:
        raise NlmlError(f"unexpected text in <{node.tag}>: {node.text!r}")
    return _parse_np_children(node.children)


def _parse_prep_phrase(node: RawNode) -> PrepPhrase:
    prep = None
    np_parts = []
    for child in node.children:
        if child.tag == "prep":
            prep = (child.text or "").strip()
        else:
            np_parts.append(child)
    if not prep:
        raise NlmlError("<prep_phrase> needs a <prep>")
    return PrepPhrase(preposition=prep, obj=_parse_np_children(tuple(np_parts)))


# --- verb phrase parsing ---

def _parse_query_adj(adj: RawNode) -> QueryAdj:
    adverb = None
    adverb_type = None
    adjective = None
    grad = "abso"
    for child in adj.children:
        if child.tag == "adv":
            for sub in child.children:
                if sub.tag == "word":
                    adverb = (sub.text or "").strip()
                elif sub.tag == "type":
                    adverb_type = (sub.text or "").strip()
                else:
                    raise NlmlError(f"<{sub.tag}> not allowed inside <adv>")
        elif child.tag == "word":
            adjective = (child.text or "").strip()
        elif child.tag == "grad":
            grad = _feature(child, GRADS)
        else:
            raise NlmlError(f"<{child.tag}> not allowed inside <adj>")
    if adjective is None:
        raise NlmlError("<adj> needs a <word>")
    return QueryAdj(adjective=adjective, adverb=adverb,
                    adverb_type=adverb_type, grad=grad)


def _parse_predicate(node: RawNode):
    predicate_type = None
    rest = []
    for child in node.children:
        if child.tag == "predicate_type":
            predicate_type = (child.text or "").strip()
        else:
            rest.append(child)
    if predicate_type == "np":
        return _parse_np_children(tuple(rest))
    if predicate_type == "query_adj":
        adj = next((c for c in rest if c.tag == "adj"), None)
        if adj is None:
            raise NlmlError("query_adj predicate needs an <adj>")
        return _parse_query_adj(adj)
    raise BadFeatureValue("predicate_type", predicate_type or "")


def _parse_verb_phrase(node: RawNode) -> VerbPhrase:
    verb_type = None
    voice = "active"
    tense = person = number = kernel_tense = None
    verb_words: list[str] = []
    predicate = None
    direct_object = None
    verb_change = False

    for child in node.children:
        if child.tag == "verb_type":
            verb_type = _feature(child, VERB_TYPES)
        elif child.tag == "voice":
            voice = _feature(child, VOICES)
        elif child.tag == "tense":
            tense = _feature(child, TENSES)
        elif child.tag == "pers":
            person = _feature(child, PERSONS)
        elif child.tag == "numb":
            number = _feature(child, NUMBERS)
        elif child.tag == "verb_word":
            verb_words.append((child.text or "").strip())
        elif child.tag == "kernel_tense":
            kernel_tense = (child.text or "").strip()
        elif child.tag == "verb_change":
            verb_change = True
        elif child.tag == "predicate":
            predicate = _parse_predicate(child)
        elif child.tag == "direct_object":
            direct_object = _parse_np_position(child)
        else:
            raise NlmlError(f"<{child.tag}> not allowed inside <verb_phrase>")

    if verb_type is None:
        raise NlmlError("<verb_phrase> needs a <verb_type>")
    return VerbPhrase(verb_type=verb_type, voice=voice, tense=tense,
                      person=person, number=number,
                      verb_words=tuple(verb_words), kernel_tense=kernel_tense,
                      predicate=predicate, direct_object=direct_object,
                      verb_change=verb_change)


def _parse_circumstance(node: RawNode) -> Circumstance:
    circum_type = None
    prep_phrase = None
    words: list[str] = []
    for child in node.children:
        if child.tag == "circum_type":
            circum_type = (child.text or "").strip()
        elif child.tag == "prep_phrase":
            prep_phrase = _parse_prep_phrase(child)
        elif child.tag == "word":
            words.append((child.text or "").strip())
        else:
            raise NlmlError(f"<{child.tag}> not allowed inside <circum>")
    if circum_type == "prep_phrase":
        if prep_phrase is None:
            raise NlmlError("prep_phrase circumstance needs a <prep_phrase>")
        return Circumstance(kind="prep_phrase", prep_phrase=prep_phrase)
    if circum_type == "adverbial":
        if not words:
            raise NlmlError("adverbial circumstance needs a <word>")
        return Circumstance(kind="adverbial", adverbial=" ".join(words))
    raise BadFeatureValue("circum_type", circum_type or "")


def raw_to_sentence(root: RawNode) -> Sentence:
    if root.tag != "sentence":
        raise NlmlError(f"expected <sentence> root, got <{root.tag}>")
    mood = None
    complexity = "simple"
    subject = None
    verb_phrase = None
    circumstances: list[Circumstance] = []

    for child in root.children:
        if child.tag == "mood":
            mood = (child.text or "").strip()
            if mood not in MOODS:
                raise BadFeatureValue("mood", mood)
        elif child.tag == "complexity":
            complexity = (child.text or "").strip()
        elif child.tag == "subject":
            subject = _parse_np_position(child)
        elif child.tag == "verb_phrase":
            verb_phrase = _parse_verb_phrase(child)
        elif child.tag == "circum":
            circumstances.append(_parse_circumstance(child))
        else:
            raise NlmlError(f"<{child.tag}> not allowed inside <sentence>")

    if mood is None:
        raise MissingMood()
    if subject is None:
        raise NlmlError("sentence has no <subject>")
    if verb_phrase is None:
        raise NlmlError("sentence has no <verb_phrase>")
    return Sentence(mood=mood, subject=subject, verb_phrase=verb_phrase,
                    circumstances=tuple(circumstances), complexity=complexity)


def parse_nlml(markup: str, flavor: Optional[str] = None) -> Sentence:
    """Parse markup into a sentence model.

    Without an explicit ``flavor`` the result is classified from the
    markers it contains (``verb_change`` means template, pseudo slots or
    category constraints mean pattern, neither means instance). Rule
    loading passes the flavor explicitly since both rule sides may carry
    pseudo slots.
    """
    sentence = raw_to_sentence(markup_to_raw(markup))
    if flavor is None:
        return sentence.with_flavor(infer_flavor(sentence))
    if flavor == "instance":
        problems = check_instance_purity(sentence)
        if problems:
            raise ConflictingFlavor("; ".join(problems))
    elif flavor == "pattern":
        if sentence.verb_phrase.verb_change:
            raise ConflictingFlavor("verb_change in a pattern")
    elif flavor == "template":
        if has_category_constraint(sentence):
            raise ConflictingFlavor("category constraint in a template")
    else:
        raise ValueError(f"bad flavor {flavor!r}")
    return sentence.with_flavor(flavor)


# --- canonical serialization ---

class _Writer:
    def __init__(self):
        self.lines: list[str] = []
        self.depth = 0

    def leaf(self, tag: str, text: str):
        self.lines.append(f"{'  ' * self.depth}<{tag}>{_escape(text)}</{tag}>")

    def empty(self, tag: str, attrs: str = ""):
        self.lines.append(f"{'  ' * self.depth}<{tag}{attrs}/>")

    def open(self, tag: str):
        self.lines.append(f"{'  ' * self.depth}<{tag}>")
        self.depth += 1

    def close(self, tag: str):
        self.depth -= 1
        self.lines.append(f"{'  ' * self.depth}</{tag}>")


def _escape(text: str) -> str:
    return (text.replace("&", "&amp;").replace("<", "&lt;")
            .replace(">", "&gt;"))


def _emit_pseudo(w: _Writer, slot: PseudoSlot):
    w.empty("pseudo", f' index="{slot.index}" kind="{slot.kind}"')


def _emit_head(w: _Writer, head: Head):
    w.open("noun")
    if head.slot is not None:
        _emit_pseudo(w, head.slot)
        w.leaf("type", head.head_type)
    else:
        w.leaf("word", head.word)
        w.leaf("type", head.head_type)
        w.leaf("pers", head.person)
        w.leaf("numb", head.number)
    w.close("noun")


def _emit_premodifier(w: _Writer, prem: Premodifier):
    w.open("prem")
    if prem.word is not None:
        w.leaf("type", "art" if prem.kind == "article" else prem.kind)
        w.leaf("word", prem.word)
    elif prem.slot is not None:
        w.leaf("type", "possessive")
        _emit_pseudo(w, prem.slot)
    else:
        w.leaf("type", "possessive")
        _emit_np_content(w, prem.phrase)
    w.close("prem")


def _emit_np_content(w: _Writer, np: NounPhrase):
    if np.pseudo is not None:
        _emit_pseudo(w, np.pseudo)
        if np.category_constraint is not None:
            w.leaf("category", np.category_constraint)
        return
    for prem in np.premodifiers:
        _emit_premodifier(w, prem)
    _emit_head(w, np.head)
    if np.category_constraint is not None:
        w.leaf("category", np.category_constraint)
    for pp in np.postmodifiers:
        _emit_prep_phrase(w, pp)


def _emit_prep_phrase(w: _Writer, pp: PrepPhrase):
    w.open("prep_phrase")
    w.leaf("prep", pp.preposition)
    _emit_np_content(w, pp.obj)
    w.close("prep_phrase")


def _emit_np_position(w: _Writer, tag: str, np: NounPhrase):
    w.open(tag)
    _emit_np_content(w, np)
    w.close(tag)


def _emit_predicate(w: _Writer, predicate):
    w.open("predicate")
    if isinstance(predicate, NounPhrase):
        w.leaf("predicate_type", "np")
        _emit_np_content(w, predicate)
    else:
        w.leaf("predicate_type", "query_adj")
        w.open("adj")
        if predicate.adverb is not None:
            w.open("adv")
            if predicate.adverb_type is not None:
                w.leaf("type", predicate.adverb_type)
            w.leaf("word", predicate.adverb)
            w.close("adv")
        w.leaf("word", predicate.adjective)
        w.leaf("grad", predicate.grad)
        w.close("adj")
    w.close("predicate")


def _emit_verb_phrase(w: _Writer, vp: VerbPhrase):
    w.open("verb_phrase")
    if vp.verb_change:
        w.empty("verb_change")
    w.leaf("verb_type", vp.verb_type)
    w.leaf("voice", vp.voice)
    if vp.tense is not None:
        w.leaf("tense", vp.tense)
    if vp.person is not None:
        w.leaf("pers", vp.person)
    if vp.number is not None:
        w.leaf("numb", vp.number)
    for word in vp.verb_words:
        w.leaf("verb_word", word)
    if vp.kernel_tense is not None:
        w.leaf("kernel_tense", vp.kernel_tense)
    if vp.predicate is not None:
        _emit_predicate(w, vp.predicate)
    if vp.direct_object is not None:
        _emit_np_position(w, "direct_object", vp.direct_object)
    w.close("verb_phrase")


def _emit_circumstance(w: _Writer, circ: Circumstance):
    w.open("circum")
    w.leaf("circum_type", circ.kind)
    if circ.kind == "prep_phrase":
        _emit_prep_phrase(w, circ.prep_phrase)
    else:
        w.leaf("word", circ.adverbial)
    w.close("circum")


def serialize_nlml(sentence: Sentence) -> str:
    w = _Writer()
    w.open("sentence")
    w.leaf("mood", sentence.mood)
    w.leaf("complexity", sentence.complexity)
    _emit_np_position(w, "subject", sentence.subject)
    _emit_verb_phrase(w, sentence.verb_phrase)
    for circ in sentence.circumstances:
        _emit_circumstance(w, circ)
    w.close("sentence")
    return "\n".join(w.lines) + "\n"


def equal_canonical(a: Sentence, b: Sentence) -> bool:
    return serialize_nlml(a) == serialize_nlml(b)
