"""Entailment generation: rule scan, hyponym substitution, closure.

``entail_closure`` expands breadth-first from the parsed input. Each
frontier item is tried against every rule in file order; when a rule
fires, its output joins the next frontier. In the default ``fallback``
mode the rule-free hyponym step runs only on items no rule matched;
``always`` runs it on every item, ``off`` disables it.

Two mechanisms keep the closure finite and non-repetitive: a rule is
never applied to an item that was itself produced by that rule's
reversed twin (so equivalences do not ping-pong), and any result whose
canonical markup equals the input or an earlier result is dropped.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional, Union

from .errors import NotSupported
from .grammar import parse_text, realize
from .lexicon import Lexicon
from .matching import match
from .model import Head, NounPhrase, Premodifier, Sentence
from .nlml import serialize_nlml
from .rules import Rule, RuleSet
from .taxonomy import TaxonomyGraph
from .transform import instantiate

DerivationStep = Union[int, str]  # rule id, or "hyponym:child>parent"

LOGICAL_MODES = ("fallback", "always", "off")
DEFAULT_MAX_DEPTH = 3


@dataclass(frozen=True)
class EntailmentResult:
    text: str
    model: Sentence
    derivation: tuple[DerivationStep, ...]
    depth: int


def entail_once(sentence: Sentence, ruleset: RuleSet, taxonomy: TaxonomyGraph,
                lexicon: Lexicon,
                skip_rule_id: Optional[int] = None
                ) -> list[tuple[int, Sentence]]:
    """Apply every rule in file order; deduplicated successes in order."""
    if sentence.complexity != "simple":
        raise NotSupported("only simple sentences are supported")
    results: list[tuple[int, Sentence]] = []
    seen: set[str] = set()
    for rule in ruleset:
        if skip_rule_id is not None and rule.id == skip_rule_id:
            continue
        outcome = match(rule.pattern, sentence, taxonomy, lexicon)
        if outcome is None:
            continue
        produced = instantiate(rule.template, outcome, lexicon)
        key = serialize_nlml(produced)
        if key in seen:
            continue
        seen.add(key)
        results.append((rule.id, produced))
    return results


def _substitute_head(np: NounPhrase, parent: str, number: str,
                     lexicon: Lexicon) -> NounPhrase:
    word = parent
    if number == "plur":
        word = lexicon.plural_surface(parent)
    head = Head(word=word, head_type="noun", person="third", number=number)
    premodifiers = list(np.premodifiers)
    if premodifiers:
        last = premodifiers[-1]
        # an article directly before the head follows the new initial
        if last.kind == "article" and last.word in ("a", "an"):
            premodifiers[-1] = replace(last, word=_respell_article(last.word, word))
    elif number == "sing" and np.head.head_type in ("name", "noun"):
        # a bare head ("English") turns into a countable common noun
        premodifiers = [Premodifier(kind="article",
                                    word=_respell_article("a", word))]
    return NounPhrase(premodifiers=tuple(premodifiers), head=head,
                      postmodifiers=np.postmodifiers)


def _respell_article(article: str, following: str) -> str:
    return "an" if following[:1].lower() in "aeiou" else "a"


def logical_entail(sentence: Sentence, taxonomy: TaxonomyGraph,
                   lexicon: Lexicon) -> list[tuple[str, Sentence]]:
    """Rule-free entailments: replace a noun by its direct hypernyms.

    Applies to copula statements with a noun-phrase predicate and to
    transitive statements, rewriting the predicate/object head. Only
    words that appear verbatim in the taxonomy are substituted, so
    proper-noun heads ("University") stay untouched.
    """
    if sentence.mood != "statement":
        return []
    vp = sentence.verb_phrase
    if vp.verb_type == "be" and isinstance(vp.predicate, NounPhrase):
        target = vp.predicate
        put = lambda np: replace(sentence, verb_phrase=replace(vp, predicate=np))
    elif vp.verb_type == "verb_object" and vp.direct_object is not None:
        target = vp.direct_object
        put = lambda np: replace(sentence,
                                 verb_phrase=replace(vp, direct_object=np))
    else:
        return []
    if target.head is None or target.head.word is None:
        return []

    results: list[tuple[str, Sentence]] = []
    word = target.head.word
    for parent in taxonomy.hypernyms(word):
        new_np = _substitute_head(target, parent, target.head.number, lexicon)
        step = f"hyponym:{word}>{parent}"
        results.append((step, put(new_np)))
    return results


def entail_closure(text: str, ruleset: RuleSet, taxonomy: TaxonomyGraph,
                   lexicon: Lexicon, max_depth: int = DEFAULT_MAX_DEPTH,
                   logical: str = "fallback") -> list[EntailmentResult]:
    """All entailments of the text up to the given derivation depth."""
    if logical not in LOGICAL_MODES:
        raise ValueError(f"bad logical mode {logical!r}")
    if max_depth < 1:
        raise ValueError("max_depth must be >= 1")

    root = parse_text(text, lexicon)
    if root.complexity != "simple":
        raise NotSupported("only simple sentences are supported")

    seen: set[str] = {serialize_nlml(root)}
    results: list[EntailmentResult] = []
    frontier: list[tuple[Sentence, tuple[DerivationStep, ...]]] = [(root, ())]

    for depth in range(1, max_depth + 1):
        next_frontier: list[tuple[Sentence, tuple[DerivationStep, ...]]] = []
        for item, derivation in frontier:
            # never run a rule straight after its reversed twin
            suppressed = None
            if derivation and isinstance(derivation[-1], int):
                last_rule = ruleset.get(derivation[-1])
                if last_rule is not None:
                    suppressed = last_rule.reversed_id

            steps: list[tuple[DerivationStep, Sentence]] = list(
                entail_once(item, ruleset, taxonomy, lexicon,
                            skip_rule_id=suppressed))
            if logical == "always" or (logical == "fallback" and not steps):
                steps.extend(logical_entail(item, taxonomy, lexicon))

            for step, produced in steps:
                key = serialize_nlml(produced)
                if key in seen:
                    continue
                seen.add(key)
                chain = derivation + (step,)
                results.append(EntailmentResult(
                    text=realize(produced, lexicon), model=produced,
                    derivation=chain, depth=depth))
                next_frontier.append((produced, chain))
        frontier = next_frontier
        if not frontier:
            break
    return results
