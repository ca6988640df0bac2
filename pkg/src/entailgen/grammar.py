"""Bridge between surface English and the sentence model.

``parse_text`` covers the simple-clause shapes the rule engine works
over: declarative copula (NP be NP/Adj), declarative transitive
(NP V NP), declarative intransitive with prepositional circumstances,
wh- and how-much copula questions, genitive subjects (NP's N), of-phrase
postmodifiers and whitelisted time adverbials. Anything else is
rejected with ``OutOfCoverage`` rather than guessed at.

``realize`` is the inverse: it rebuilds the finite verb group from the
model's tense and the subject's agreement, inverts copula questions,
re-spells a/an, capitalizes and punctuates.
"""
from __future__ import annotations

from typing import Optional

from .errors import IncompleteModel, NotSupported, OutOfCoverage, UnknownWord
from .lexicon import Lexicon, agreement_of, conjugate, regular_past
from .model import (Circumstance, Head, NounPhrase, Premodifier, PrepPhrase,
                    QueryAdj, Sentence, VerbPhrase, check_instance_purity)

NUMBER_WORDS = frozenset({
    "one", "two", "three", "four", "five", "six", "seven", "eight", "nine",
    "ten",
})
TIME_UNITS = frozenset({
    "year", "years", "month", "months", "week", "weeks", "day", "days",
    "hour", "hours",
})
BE_FORMS = frozenset({"am", "is", "are", "was", "were"})
MODALS = frozenset({"can"})


def _tokenize(text: str) -> tuple[list[str], str]:
    stripped = text.strip()
    if not stripped:
        raise OutOfCoverage("empty input")
    terminal = "."
    if stripped[-1] in ".?!":
        terminal = stripped[-1]
        stripped = stripped[:-1].rstrip()
    tokens: list[str] = []
    for raw in stripped.split():
        if raw.endswith("'s") and len(raw) > 2:
            tokens.append(raw[:-2])
            tokens.append("'s")
        else:
            tokens.append(raw)
    if not tokens:
        raise OutOfCoverage("no words in input")
    return tokens, terminal


def _normalize_initial(tokens: list[str], lexicon: Lexicon) -> list[str]:
    # Undo sentence-initial capitalization when the lexicon only knows
    # the lowercase form; leaves proper names and "I" alone.
    first = tokens[0]
    lowered = first.lower()
    if first == lowered:
        return tokens
    if any(e.surface == first for e in lexicon.entries_for(first)):
        return tokens
    known_lower = (any(e.surface == lowered for e in lexicon.entries_for(lowered))
                   or lexicon.verb_lemma(lowered) is not None)
    if known_lower:
        return [lowered] + tokens[1:]
    return tokens


def _adverbial_length(tokens: list[str], i: int) -> int:
    """Length of a time adverbial starting at position i, or 0."""
    if i + 2 < len(tokens) and tokens[i + 2] == "ago" \
            and (tokens[i] in NUMBER_WORDS or tokens[i].isdigit()) \
            and tokens[i + 1] in TIME_UNITS:
        return 3
    if tokens[i] == "since" and i + 1 < len(tokens) \
            and tokens[i + 1].isdigit() and len(tokens[i + 1]) == 4:
        return 2
    return 0


def _is_finite_verb(token: str, lexicon: Lexicon) -> bool:
    low = token.lower()
    if low in BE_FORMS or low in MODALS or low in ("has", "have"):
        return True
    lemma = lexicon.verb_lemma(low)
    return lemma is not None and lemma != "be"


class _Parser:
    def __init__(self, tokens: list[str], lexicon: Lexicon):
        self.tokens = tokens
        self.lexicon = lexicon
        self.i = 0

    def at_end(self) -> bool:
        return self.i >= len(self.tokens)

    def peek(self) -> Optional[str]:
        return None if self.at_end() else self.tokens[self.i]

    # --- noun phrases ---

    def parse_np(self, attach_pps: bool, stop_words: frozenset = frozenset()
                 ) -> NounPhrase:
        lexicon = self.lexicon
        token = self.peek()
        if token is None:
            raise OutOfCoverage("expected a noun phrase, found end of input")

        pronoun = lexicon.lookup(token, "personal_pronoun")
        if pronoun is not None:
            self.i += 1
            return NounPhrase(head=Head(word=pronoun.surface, head_type="noun",
                                        person=pronoun.person,
                                        number=pronoun.number))

        words: list[str] = []
        genitives: list[Premodifier] = []
        while not self.at_end():
            token = self.tokens[self.i]
            if token in stop_words or _adverbial_length(self.tokens, self.i):
                break
            if token == "'s":
                if not words:
                    raise OutOfCoverage("dangling possessive marker")
                genitives.append(Premodifier(
                    kind="possessive", phrase=self._build_np(words, ())))
                words = []
                self.i += 1
                continue
            if words and _is_finite_verb(token, lexicon):
                break
            if lexicon.has_pos(token.lower(), "preposition"):
                break
            words.append(token)
            self.i += 1

        if not words:
            raise OutOfCoverage("expected a noun phrase head")
        np = self._build_np(words, tuple(genitives))
        postmods = list(np.postmodifiers)
        while not self.at_end():
            if _adverbial_length(self.tokens, self.i):
                break
            token = self.tokens[self.i]
            if token in stop_words:
                break
            low = token.lower()
            if lexicon.has_pos(low, "preposition") and (low == "of" or attach_pps):
                self.i += 1
                obj = self.parse_np(attach_pps=True, stop_words=stop_words)
                postmods.append(PrepPhrase(preposition=low, obj=obj))
                continue
            break
        if postmods:
            np = NounPhrase(premodifiers=np.premodifiers, head=np.head,
                            postmodifiers=tuple(postmods))
        return np

    def _build_np(self, words: list[str],
                  genitives: tuple[Premodifier, ...]) -> NounPhrase:
        lexicon = self.lexicon
        prems: list[Premodifier] = list(genitives)
        head_parts: list[str] = []

        for word in words[:-1]:
            entry = lexicon.lookup(word)
            if entry is None:
                if word[:1].isupper():
                    prems.append(Premodifier(kind="address", word=word))
                else:
                    prems.append(Premodifier(kind="noun", word=word))
            elif entry.pos == "article":
                prems.append(Premodifier(kind="article", word=entry.surface))
            elif entry.pos == "possessive_pronoun":
                prems.append(Premodifier(kind="possessive", word=entry.surface))
            elif entry.pos == "name":
                if "place" in entry.categories:
                    prems.append(Premodifier(kind="address", word=entry.surface))
                else:
                    head_parts.append(entry.surface)
            elif entry.pos == "noun":
                prems.append(Premodifier(kind="noun", word=word))
            else:
                raise OutOfCoverage(
                    f"cannot use {word!r} as a noun premodifier")

        head_token = words[-1]
        entry = (lexicon.lookup(head_token, "noun")
                 or lexicon.lookup(head_token, "name")
                 or lexicon.lookup(head_token, "relpron"))
        if entry is not None:
            head_type = {"noun": "noun", "name": "name",
                         "relpron": "relpron"}[entry.pos]
            person, number = entry.person, entry.number
        elif lexicon.is_known(head_token):
            raise OutOfCoverage(f"{head_token!r} cannot head a noun phrase")
        else:
            head_type = "name" if head_token[:1].isupper() else "noun"
            person, number = "third", "sing"

        head_word = " ".join(head_parts + [head_token])
        if head_parts:
            head_type = "name"
        return NounPhrase(premodifiers=tuple(prems),
                          head=Head(word=head_word, head_type=head_type,
                                    person=person, number=number))

    # --- circumstances ---

    def parse_circumstances(self) -> tuple[Circumstance, ...]:
        circumstances: list[Circumstance] = []
        while not self.at_end():
            length = _adverbial_length(self.tokens, self.i)
            if length:
                phrase = " ".join(self.tokens[self.i:self.i + length])
                circumstances.append(Circumstance(kind="adverbial",
                                                  adverbial=phrase))
                self.i += length
                continue
            token = self.tokens[self.i]
            if self.lexicon.has_pos(token.lower(), "preposition"):
                self.i += 1
                obj = self.parse_np(attach_pps=False)
                circumstances.append(Circumstance(
                    kind="prep_phrase",
                    prep_phrase=PrepPhrase(preposition=token.lower(), obj=obj)))
                continue
            raise OutOfCoverage(f"unexpected token {token!r}")
        return tuple(circumstances)

    # --- verb groups ---

    def parse_copula_group(self) -> tuple[list[str], str]:
        """Consume a single copula form; returns (words, tense)."""
        token = self.peek()
        low = (token or "").lower()
        if low in BE_FORMS:
            self.i += 1
            tense = "present" if low in ("am", "is", "are") else "past"
            return [low], tense
        if low in ("has", "have"):
            self.i += 1
            return [low], "present_perfect"
        raise OutOfCoverage(f"expected a copula, found {token!r}")


def parse_text(text: str, lexicon: Lexicon) -> Sentence:
    tokens, terminal = _tokenize(text)
    tokens = _normalize_initial(tokens, lexicon)
    mood = {"?": "question", "!": "exclamative", ".": "statement"}[terminal]

    if mood == "question":
        return _parse_question(tokens, lexicon)
    return _parse_statement(tokens, lexicon, mood)


def _parse_question(tokens: list[str], lexicon: Lexicon) -> Sentence:
    parser = _Parser(tokens, lexicon)
    first = tokens[0].lower()

    if first == "how" and len(tokens) > 1 and tokens[1].lower() == "much":
        parser.i = 2
        verb_words, tense = parser.parse_copula_group()
        subject = parser.parse_np(attach_pps=True,
                                  stop_words=frozenset({"been"}))
        predicate: object = QueryAdj(adjective="much", adverb="how")
    elif lexicon.lookup(tokens[0], "relpron") is not None:
        entry = lexicon.lookup(tokens[0], "relpron")
        subject = NounPhrase(head=Head(word=entry.surface, head_type="relpron",
                                       person=entry.person,
                                       number=entry.number))
        parser.i = 1
        verb_words, tense = parser.parse_copula_group()
        predicate = parser.parse_np(attach_pps=True,
                                    stop_words=frozenset({"been"}))
    else:
        raise OutOfCoverage("only wh- and how-much copula questions are supported")

    if parser.peek() == "been":
        if tense != "present_perfect":
            raise OutOfCoverage("'been' without a perfect auxiliary")
        verb_words.append("been")
        parser.i += 1
    elif tense == "present_perfect":
        raise OutOfCoverage("perfect auxiliary without 'been'")

    circumstances = parser.parse_circumstances()
    person, number = agreement_of(subject, lexicon)
    vp = VerbPhrase(verb_type="be", tense=tense, person=person, number=number,
                    verb_words=tuple(verb_words), predicate=predicate)
    return Sentence(mood="question", subject=subject, verb_phrase=vp,
                    circumstances=circumstances)


def _parse_statement(tokens: list[str], lexicon: Lexicon, mood: str) -> Sentence:
    parser = _Parser(tokens, lexicon)
    subject = parser.parse_np(attach_pps=True)
    token = parser.peek()
    if token is None:
        raise OutOfCoverage("sentence has no verb")
    low = token.lower()
    person, number = agreement_of(subject, lexicon)

    verb_words: list[str]
    tense: str
    kernel_tense = None
    predicate = None
    direct_object = None

    if low in BE_FORMS:
        parser.i += 1
        tense = "present" if low in ("am", "is", "are") else "past"
        verb_words = [low]
        verb_type = "be"
        predicate = _parse_predicate(parser)
    elif low in MODALS:
        parser.i += 1
        kernel = parser.peek()
        if kernel is None or lexicon.verb_lemma(kernel.lower()) != kernel.lower():
            raise OutOfCoverage(f"expected an infinitive after {low!r}")
        parser.i += 1
        verb_words = [low, kernel.lower()]
        tense = "modal"
        kernel_tense = "infi"
        verb_type, direct_object = _parse_object(parser)
    elif low in ("has", "have"):
        nxt = parser.tokens[parser.i + 1] if parser.i + 1 < len(tokens) else None
        if nxt is not None and lexicon.is_past_participle(nxt.lower()):
            parser.i += 2
            tense = "present_perfect"
            verb_words = [low, nxt.lower()]
            if nxt.lower() == "been":
                verb_type = "be"
                predicate = _parse_predicate(parser)
            else:
                verb_type, direct_object = _parse_object(parser)
        else:
            parser.i += 1
            tense = "present"
            verb_words = [low]
            verb_type, direct_object = _parse_object(parser)
            if direct_object is None:
                raise OutOfCoverage("'have' needs a direct object")
            verb_type = "verb_object"
    else:
        lemma = lexicon.verb_lemma(low)
        if lemma is None:
            if not lexicon.is_known(low):
                raise UnknownWord(token)
            raise OutOfCoverage(f"expected a verb, found {token!r}")
        parser.i += 1
        paradigm = lexicon.paradigms.get(lemma)
        past_form = paradigm.past if paradigm else regular_past(lemma)
        # forms spelled like the lemma ("read") are taken as present
        tense = "past" if (low == past_form and low != lemma) else "present"
        verb_words = [low]
        verb_type, direct_object = _parse_object(parser)

    circumstances = parser.parse_circumstances()
    vp = VerbPhrase(verb_type=verb_type, tense=tense, person=person,
                    number=number, verb_words=tuple(verb_words),
                    kernel_tense=kernel_tense, predicate=predicate,
                    direct_object=direct_object)
    return Sentence(mood=mood, subject=subject, verb_phrase=vp,
                    circumstances=circumstances)


def _parse_predicate(parser: _Parser):
    """Copula complement: a noun phrase or a bare adjective."""
    token = parser.peek()
    if token is None:
        raise OutOfCoverage("copula without a predicate")
    lexicon = parser.lexicon
    low = token.lower()
    if lexicon.has_pos(low, "adjective") and not lexicon.has_pos(low, "noun"):
        parser.i += 1
        return QueryAdj(adjective=low, adverb=None, adverb_type=None)
    return parser.parse_np(attach_pps=False)


def _parse_object(parser: _Parser):
    """Optional direct object; decides transitive vs intransitive."""
    token = parser.peek()
    if token is None or _adverbial_length(parser.tokens, parser.i):
        return "verb", None
    if parser.lexicon.has_pos(token.lower(), "preposition"):
        return "verb", None
    obj = parser.parse_np(attach_pps=False)
    return "verb_object", obj


# --- realization ---

def _np_tokens(np: NounPhrase) -> list[str]:
    if np.pseudo is not None:
        raise IncompleteModel(f"pseudo slot {np.pseudo.index} cannot be realized")
    tokens: list[str] = []
    for prem in np.premodifiers:
        if prem.word is not None:
            tokens.append(prem.word)
        elif prem.phrase is not None:
            inner = _np_tokens(prem.phrase)
            inner[-1] += "'s"
            tokens.extend(inner)
        else:
            raise IncompleteModel("possessive slot cannot be realized")
    if np.head is None or np.head.word is None:
        raise IncompleteModel("noun phrase has no concrete head")
    tokens.extend(np.head.word.split())
    for pp in np.postmodifiers:
        tokens.append(pp.preposition)
        tokens.extend(_np_tokens(pp.obj))
    return tokens


def realize_np(np: NounPhrase) -> str:
    """Plain text of one noun phrase, no capitalization or punctuation."""
    return " ".join(_respell_articles(_np_tokens(np)))


def _query_adj_tokens(predicate: QueryAdj) -> list[str]:
    tokens = []
    if predicate.adverb:
        tokens.append(predicate.adverb)
    tokens.append(predicate.adjective)
    return tokens


def _finite_verb_tokens(sentence: Sentence, lexicon: Lexicon) -> list[str]:
    vp = sentence.verb_phrase
    if vp.tense in ("present", "past", "present_perfect"):
        if vp.verb_type == "be":
            lemma = "be"
        else:
            kernel = vp.verb_words[-1] if vp.verb_words else None
            lemma = lexicon.verb_lemma(kernel) if kernel else None
        if lemma is not None:
            person, number = agreement_of(sentence.subject, lexicon)
            try:
                return conjugate(lexicon, lemma, vp.tense, person, number)
            except Exception:
                pass
    return list(vp.verb_words)


def _respell_articles(tokens: list[str]) -> list[str]:
    out = list(tokens)
    for j, word in enumerate(out[:-1]):
        if word in ("a", "an"):
            out[j] = "an" if out[j + 1][:1].lower() in "aeiou" else "a"
    return out


def realize(sentence: Sentence, lexicon: Lexicon) -> str:
    if sentence.complexity != "simple":
        raise NotSupported(f"complexity {sentence.complexity!r}")
    problems = check_instance_purity(sentence)
    if problems:
        raise IncompleteModel("; ".join(problems))

    vp = sentence.verb_phrase
    verb_tokens = _finite_verb_tokens(sentence, lexicon)
    if not verb_tokens:
        raise IncompleteModel("verb phrase has no words")

    tokens: list[str] = []
    if sentence.mood == "question" and isinstance(vp.predicate, QueryAdj):
        tokens += _query_adj_tokens(vp.predicate)
        tokens += verb_tokens[:1]
        tokens += _np_tokens(sentence.subject)
        tokens += verb_tokens[1:]
    elif (sentence.mood == "question" and sentence.subject.head is not None
          and sentence.subject.head.head_type == "relpron"):
        tokens += _np_tokens(sentence.subject)
        tokens += verb_tokens[:1]
        if isinstance(vp.predicate, NounPhrase):
            tokens += _np_tokens(vp.predicate)
        elif isinstance(vp.predicate, QueryAdj):
            tokens += _query_adj_tokens(vp.predicate)
        tokens += verb_tokens[1:]
    else:
        tokens += _np_tokens(sentence.subject)
        tokens += verb_tokens
        if isinstance(vp.predicate, NounPhrase):
            tokens += _np_tokens(vp.predicate)
        elif isinstance(vp.predicate, QueryAdj):
            tokens += _query_adj_tokens(vp.predicate)
        if vp.direct_object is not None:
            tokens += _np_tokens(vp.direct_object)

    for circ in sentence.circumstances:
        if circ.kind == "adverbial":
            tokens += circ.adverbial.split()
        else:
            tokens.append(circ.prep_phrase.preposition)
            tokens += _np_tokens(circ.prep_phrase.obj)

    tokens = _respell_articles(tokens)
    tokens[0] = tokens[0][:1].upper() + tokens[0][1:]
    terminal = {"question": "?", "exclamative": "!"}.get(sentence.mood, ".")
    return " ".join(tokens) + terminal
