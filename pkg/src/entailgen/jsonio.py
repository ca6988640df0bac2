"""Lossless JSON encoding of sentence models and rules.

Field names mirror the markup tags (``mood``, ``verb_phrase``, ``prem``,
``numb``, ...) so the editor UI can treat server JSON and markup
documentation interchangeably. ``sentence_from_json(sentence_to_json(m))``
reproduces the model exactly.
"""
from __future__ import annotations

from typing import Optional

from .model import (Circumstance, Head, NounPhrase, Premodifier, PrepPhrase,
                    PseudoSlot, QueryAdj, Sentence, VerbPhrase)
from .nlml import serialize_nlml
from .rules import Rule


def _slot_to_json(slot: PseudoSlot) -> dict:
    return {"index": slot.index, "kind": slot.kind}


def _slot_from_json(data: dict) -> PseudoSlot:
    return PseudoSlot(index=int(data["index"]),
                      kind=data.get("kind", "noun_phrase"))


def np_to_json(np: NounPhrase) -> dict:
    out: dict = {}
    if np.pseudo is not None:
        out["pseudo"] = _slot_to_json(np.pseudo)
        if np.category_constraint is not None:
            out["category"] = np.category_constraint
        return out
    prems = []
    for prem in np.premodifiers:
        if prem.word is not None:
            kind = "art" if prem.kind == "article" else prem.kind
            prems.append({"type": kind, "word": prem.word})
        elif prem.slot is not None:
            prems.append({"type": "possessive",
                          "pseudo": _slot_to_json(prem.slot)})
        else:
            prems.append({"type": "possessive",
                          "phrase": np_to_json(prem.phrase)})
    if prems:
        out["prem"] = prems
    head = np.head
    if head.slot is not None:
        out["noun"] = {"pseudo": _slot_to_json(head.slot),
                       "type": head.head_type}
    else:
        out["noun"] = {"word": head.word, "type": head.head_type,
                       "pers": head.person, "numb": head.number}
    if np.category_constraint is not None:
        out["category"] = np.category_constraint
    if np.postmodifiers:
        out["prep_phrase"] = [{"prep": pp.preposition,
                               "object": np_to_json(pp.obj)}
                              for pp in np.postmodifiers]
    return out


def np_from_json(data: dict) -> NounPhrase:
    category = data.get("category")
    if "pseudo" in data:
        return NounPhrase(pseudo=_slot_from_json(data["pseudo"]),
                          category_constraint=category)
    prems = []
    for item in data.get("prem", []):
        if "pseudo" in item:
            prems.append(Premodifier(kind="possessive",
                                     slot=_slot_from_json(item["pseudo"])))
        elif "phrase" in item:
            prems.append(Premodifier(kind="possessive",
                                     phrase=np_from_json(item["phrase"])))
        else:
            kind = item.get("type", "noun")
            kind = "article" if kind in ("art", "article") else kind
            prems.append(Premodifier(kind=kind, word=item["word"]))
    noun = data.get("noun")
    if noun is None:
        raise ValueError("noun phrase JSON needs a 'noun' or 'pseudo' member")
    if "pseudo" in noun:
        head = Head(slot=_slot_from_json(noun["pseudo"]),
                    head_type=noun.get("type", "name"))
    else:
        head = Head(word=noun["word"], head_type=noun.get("type", "noun"),
                    person=noun.get("pers", "third"),
                    number=noun.get("numb", "sing"))
    postmods = tuple(
        PrepPhrase(preposition=item["prep"], obj=np_from_json(item["object"]))
        for item in data.get("prep_phrase", []))
    return NounPhrase(premodifiers=tuple(prems), head=head,
                      category_constraint=category, postmodifiers=postmods)


def _predicate_to_json(predicate) -> dict:
    if isinstance(predicate, NounPhrase):
        out = {"predicate_type": "np"}
        out.update(np_to_json(predicate))
        return out
    adj: dict = {"word": predicate.adjective, "grad": predicate.grad}
    if predicate.adverb is not None:
        adv = {"word": predicate.adverb}
        if predicate.adverb_type is not None:
            adv["type"] = predicate.adverb_type
        adj["adv"] = adv
    return {"predicate_type": "query_adj", "adj": adj}


def _predicate_from_json(data: dict):
    kind = data.get("predicate_type")
    if kind == "np":
        rest = {k: v for k, v in data.items() if k != "predicate_type"}
        return np_from_json(rest)
    if kind == "query_adj":
        adj = data["adj"]
        adv = adj.get("adv")
        return QueryAdj(adjective=adj["word"],
                        adverb=adv["word"] if adv else None,
                        adverb_type=(adv or {}).get("type"),
                        grad=adj.get("grad", "abso"))
    raise ValueError(f"bad predicate_type {kind!r}")


def sentence_to_json(sentence: Sentence) -> dict:
    vp = sentence.verb_phrase
    vp_json: dict = {"verb_type": vp.verb_type, "voice": vp.voice}
    if vp.verb_change:
        vp_json["verb_change"] = True
    if vp.tense is not None:
        vp_json["tense"] = vp.tense
    if vp.person is not None:
        vp_json["pers"] = vp.person
    if vp.number is not None:
        vp_json["numb"] = vp.number
    if vp.verb_words:
        vp_json["verb_word"] = list(vp.verb_words)
    if vp.kernel_tense is not None:
        vp_json["kernel_tense"] = vp.kernel_tense
    if vp.predicate is not None:
        vp_json["predicate"] = _predicate_to_json(vp.predicate)
    if vp.direct_object is not None:
        vp_json["direct_object"] = np_to_json(vp.direct_object)

    circum = []
    for circ in sentence.circumstances:
        if circ.kind == "prep_phrase":
            circum.append({"circum_type": "prep_phrase",
                           "prep_phrase": {
                               "prep": circ.prep_phrase.preposition,
                               "object": np_to_json(circ.prep_phrase.obj)}})
        else:
            circum.append({"circum_type": "adverbial",
                           "word": circ.adverbial})

    out = {
        "mood": sentence.mood,
        "complexity": sentence.complexity,
        "subject": np_to_json(sentence.subject),
        "verb_phrase": vp_json,
    }
    if circum:
        out["circum"] = circum
    return out


def sentence_from_json(data: dict, flavor: Optional[str] = None) -> Sentence:
    vp_json = data["verb_phrase"]
    predicate = None
    if "predicate" in vp_json:
        predicate = _predicate_from_json(vp_json["predicate"])
    direct_object = None
    if "direct_object" in vp_json:
        direct_object = np_from_json(vp_json["direct_object"])
    vp = VerbPhrase(
        verb_type=vp_json["verb_type"],
        voice=vp_json.get("voice", "active"),
        tense=vp_json.get("tense"),
        person=vp_json.get("pers"),
        number=vp_json.get("numb"),
        verb_words=tuple(vp_json.get("verb_word", [])),
        kernel_tense=vp_json.get("kernel_tense"),
        predicate=predicate,
        direct_object=direct_object,
        verb_change=bool(vp_json.get("verb_change", False)),
    )
    circumstances = []
    for item in data.get("circum", []):
        if item.get("circum_type") == "prep_phrase":
            pp = item["prep_phrase"]
            circumstances.append(Circumstance(
                kind="prep_phrase",
                prep_phrase=PrepPhrase(preposition=pp["prep"],
                                       obj=np_from_json(pp["object"]))))
        else:
            circumstances.append(Circumstance(kind="adverbial",
                                              adverbial=item["word"]))
    sentence = Sentence(
        mood=data["mood"],
        subject=np_from_json(data["subject"]),
        verb_phrase=vp,
        circumstances=tuple(circumstances),
        complexity=data.get("complexity", "simple"),
    )
    if flavor is not None:
        sentence = sentence.with_flavor(flavor)
    return sentence


def rule_to_json(rule: Rule, include_nlml: bool = True) -> dict:
    out = {
        "id": rule.id,
        "name": rule.name,
        "reversed": rule.reversed_id,
        "pattern": sentence_to_json(rule.pattern),
        "entailment": sentence_to_json(rule.template),
        "examples": [{"source": s, "expect": e} for s, e in rule.examples],
    }
    if include_nlml:
        out["patternNlml"] = serialize_nlml(rule.pattern)
        out["entailmentNlml"] = serialize_nlml(rule.template)
    return out


def rule_from_json(data: dict) -> Rule:
    from .rules import build_rule

    rule_id = data.get("id")
    if not isinstance(rule_id, int) or rule_id < 1:
        raise ValueError("rule needs a positive integer 'id'")
    if "pattern" not in data or "entailment" not in data:
        raise ValueError("rule needs 'pattern' and 'entailment' members")
    reversed_id = data.get("reversed")
    if reversed_id is not None:
        reversed_id = int(reversed_id)
    examples = tuple((ex["source"], ex["expect"])
                     for ex in data.get("examples", []))
    return build_rule(
        rule_id,
        data.get("name", f"rule-{rule_id}"),
        pattern=sentence_from_json(data["pattern"]),
        template=sentence_from_json(data["entailment"]),
        reversed_id=reversed_id,
        examples=examples,
    )
