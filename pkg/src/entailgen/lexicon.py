"""Word knowledge: lexicon lookup, verb conjugation, agreement, pronoun case.

Two tab-separated files back the lexicon. The word file has the columns
``surface  lemma  pos  person  number  categories`` (categories
comma-separated, ``-`` for not-applicable fields); the verb file has
``lemma  third_sing_present  past  past_participle`` and only needs rows
for irregular verbs. Lines starting with ``#`` are comments.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .errors import BadRow, NotPossessive, UnknownVerb
from .model import Head, NounPhrase

POS_VALUES = frozenset({
    "noun", "verb", "adjective", "adverb", "article", "possessive_pronoun",
    "personal_pronoun", "preposition", "name", "relpron",
})

POSSESSIVE_TO_NOMINATIVE = {
    "my": "I", "your": "you", "his": "he", "her": "she",
    "its": "it", "our": "we", "their": "they",
}

_SIBILANT_ENDINGS = ("s", "x", "z", "ch", "sh")
_VOWELS = "aeiou"


@dataclass(frozen=True)
class LexiconEntry:
    surface: str
    lemma: str
    pos: str
    person: str = "third"
    number: str = "sing"
    categories: frozenset = frozenset()


@dataclass(frozen=True)
class VerbParadigm:
    lemma: str
    third_sing: str
    past: str
    past_participle: str


def _ends_in_consonant_y(word: str) -> bool:
    return len(word) >= 2 and word.endswith("y") and word[-2] not in _VOWELS


def regular_third_sing(lemma: str) -> str:
    if _ends_in_consonant_y(lemma):
        return lemma[:-1] + "ies"
    if lemma.endswith(_SIBILANT_ENDINGS) or lemma.endswith("o"):
        return lemma + "es"
    return lemma + "s"


def regular_past(lemma: str) -> str:
    if lemma.endswith("e"):
        return lemma + "d"
    if _ends_in_consonant_y(lemma):
        return lemma[:-1] + "ied"
    return lemma + "ed"


class Lexicon:
    """Read-only word table plus verb paradigms."""

    def __init__(self, entries: list[LexiconEntry],
                 paradigms: Optional[dict[str, VerbParadigm]] = None):
        self._by_surface: dict[str, list[LexiconEntry]] = {}
        self._by_surface_pos: dict[tuple[str, str], LexiconEntry] = {}
        self.paradigms: dict[str, VerbParadigm] = dict(paradigms or {})
        for entry in entries:
            key = (entry.surface.lower(), entry.pos)
            if key in self._by_surface_pos:
                warnings.warn(f"duplicate lexicon row for {key}, keeping the last")
                bucket = self._by_surface[entry.surface.lower()]
                bucket[:] = [e for e in bucket if e.pos != entry.pos]
            self._by_surface_pos[key] = entry
            self._by_surface.setdefault(entry.surface.lower(), []).append(entry)
        self._verb_form_to_lemma = self._index_verb_forms()

    def _index_verb_forms(self) -> dict[str, str]:
        forms = {"am": "be", "is": "be", "are": "be", "was": "be",
                 "were": "be", "been": "be", "be": "be"}
        lemmas = {e.lemma for e in self._by_surface_pos.values()
                  if e.pos == "verb"}
        lemmas.update(self.paradigms)
        for lemma in lemmas:
            if lemma == "be":
                continue
            paradigm = self.paradigms.get(lemma)
            third = paradigm.third_sing if paradigm else regular_third_sing(lemma)
            past = paradigm.past if paradigm else regular_past(lemma)
            participle = (paradigm.past_participle if paradigm
                          else regular_past(lemma))
            for form in (lemma, third, past, participle):
                forms.setdefault(form, lemma)
        return forms

    def lookup(self, word: str, pos: Optional[str] = None) -> Optional[LexiconEntry]:
        """Find an entry for the word, preferring an exact-case match."""
        entries = self._by_surface.get(word.lower(), [])
        candidates = [e for e in entries if pos is None or e.pos == pos]
        if not candidates:
            return None
        exact = [e for e in candidates if e.surface == word]
        return (exact or candidates)[0]

    def entries_for(self, word: str) -> list[LexiconEntry]:
        return list(self._by_surface.get(word.lower(), []))

    def has_pos(self, word: str, pos: str) -> bool:
        return any(e.pos == pos for e in self.entries_for(word))

    def is_known(self, word: str) -> bool:
        return bool(self.entries_for(word)) or word.lower() in self._verb_form_to_lemma

    def verb_lemma(self, form: str) -> Optional[str]:
        """Map an inflected verb form back to its dictionary form."""
        return self._verb_form_to_lemma.get(form.lower())

    def is_past_participle(self, word: str) -> bool:
        lemma = self.verb_lemma(word)
        if lemma is None:
            return False
        if lemma == "be":
            return word.lower() == "been"
        paradigm = self.paradigms.get(lemma)
        participle = (paradigm.past_participle if paradigm
                      else regular_past(lemma))
        return word.lower() == participle

    def noun_lemma(self, word: str) -> str:
        entry = self.lookup(word, "noun") or self.lookup(word, "name")
        return entry.lemma if entry else word

    def plural_surface(self, lemma: str) -> str:
        for entry in self._by_surface_pos.values():
            if entry.lemma == lemma and entry.pos == "noun" and entry.number == "plur":
                return entry.surface
        return regular_third_sing(lemma)


def _split_row(line: str, n_columns: int, path: str, line_no: int) -> list[str]:
    cells = line.rstrip("\n").split("\t")
    if len(cells) < n_columns:
        raise BadRow(path, line_no, f"expected {n_columns} columns, got {len(cells)}")
    return [cell.strip() for cell in cells[:n_columns]]


def load_verb_paradigms(path) -> dict[str, VerbParadigm]:
    paradigms: dict[str, VerbParadigm] = {}
    text = Path(path).read_text(encoding="utf-8")
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        lemma, third, past, participle = _split_row(line, 4, str(path), line_no)
        if not all((lemma, third, past, participle)):
            raise BadRow(str(path), line_no, "empty paradigm cell")
        paradigms[lemma] = VerbParadigm(lemma, third, past, participle)
    return paradigms


def load_lexicon(path, verbs_path=None) -> Lexicon:
    """Load the word table; the verb paradigm file defaults to a sibling
    ``verbs.tsv`` next to the word file."""
    path = Path(path)
    if verbs_path is None:
        candidate = path.with_name("verbs.tsv")
        verbs_path = candidate if candidate.exists() else None
    paradigms = load_verb_paradigms(verbs_path) if verbs_path else {}

    entries: list[LexiconEntry] = []
    text = path.read_text(encoding="utf-8")
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        surface, lemma, pos, person, number, categories = _split_row(
            line, 6, str(path), line_no)
        if not surface:
            raise BadRow(str(path), line_no, "empty surface form")
        if pos not in POS_VALUES:
            raise BadRow(str(path), line_no, f"bad pos {pos!r}")
        if person not in ("first", "second", "third", "-"):
            raise BadRow(str(path), line_no, f"bad person {person!r}")
        if number not in ("sing", "plur", "-"):
            raise BadRow(str(path), line_no, f"bad number {number!r}")
        if categories == "-":
            categories = ""
        entries.append(LexiconEntry(
            surface=surface,
            lemma=lemma or surface,
            pos=pos,
            person="third" if person == "-" else person,
            number="sing" if number == "-" else number,
            categories=frozenset(c for c in categories.split(",") if c),
        ))
    return Lexicon(entries, paradigms)


def _be_form(tense: str, person: str, number: str) -> list[str]:
    if tense == "present":
        if number == "plur" or person == "second":
            return ["are"]
        return ["am"] if person == "first" else ["is"]
    if tense == "past":
        if number == "plur" or person == "second":
            return ["were"]
        return ["was"]
    # present perfect
    have = "has" if (person == "third" and number == "sing") else "have"
    return [have, "been"]


def conjugate(lexicon: Lexicon, lemma: str, tense: str, person: str,
              number: str) -> list[str]:
    """Build the full finite verb group for the lemma.

    Simple tenses give one word, the perfect gives the have-form plus the
    past participle. Modal groups are stored literally in templates and
    are never conjugated.
    """
    if tense not in ("present", "past", "present_perfect"):
        raise ValueError(f"cannot conjugate tense {tense!r}")
    if lemma == "be":
        return _be_form(tense, person, number)

    known = lexicon.has_pos(lemma, "verb") or lemma in lexicon.paradigms
    if not known:
        raise UnknownVerb(lemma)
    paradigm = lexicon.paradigms.get(lemma)

    if tense == "present":
        if person == "third" and number == "sing":
            return [paradigm.third_sing if paradigm else regular_third_sing(lemma)]
        return [lemma]
    if tense == "past":
        return [paradigm.past if paradigm else regular_past(lemma)]
    have = "has" if (person == "third" and number == "sing") else "have"
    participle = paradigm.past_participle if paradigm else regular_past(lemma)
    return [have, participle]


def possessive_to_nominative(word: str) -> str:
    try:
        return POSSESSIVE_TO_NOMINATIVE[word.lower()]
    except KeyError:
        raise NotPossessive(word) from None


def agreement_of(np: NounPhrase, lexicon: Optional[Lexicon] = None) -> tuple[str, str]:
    """Person and number of the phrase's head word.

    The head's own features win when present; otherwise the lexicon is
    consulted, and unknown heads default to (third, sing) so that novel
    content words never block realization.
    """
    head: Optional[Head] = np.head
    if head is None or head.word is None:
        return ("third", "sing")
    if head.person and head.number:
        return (head.person, head.number)
    if lexicon is not None:
        entry = lexicon.lookup(head.word)
        if entry is not None:
            return (entry.person, entry.number)
    return ("third", "sing")
