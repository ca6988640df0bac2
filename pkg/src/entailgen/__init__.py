"""Rule-based generation of textual entailments for simple English sentences.

Typical use::

    from entailgen import load_lexicon, load_rules, load_taxonomy, entail_closure

    lexicon = load_lexicon("fixtures/lexicon.tsv")
    taxonomy = load_taxonomy("fixtures/taxonomy.tsv")
    rules = load_rules("fixtures/rules/core.xml")
    for result in entail_closure("The student's name is Zhang.",
                                 rules, taxonomy, lexicon):
        print(result.text, result.derivation)
"""

from .engine import (EntailmentResult, entail_closure, entail_once,
                     logical_entail)
from .grammar import parse_text, realize, realize_np
from .lexicon import (Lexicon, agreement_of, conjugate, load_lexicon,
                      possessive_to_nominative)
from .matching import MatchOutcome, explain_match, match
from .model import (Circumstance, Head, NounPhrase, Premodifier, PrepPhrase,
                    PseudoSlot, QueryAdj, Sentence, VerbPhrase)
from .nlml import equal_canonical, parse_nlml, serialize_nlml
from .rules import (Rule, RuleSet, build_rule, duplicate_ruleset, load_rules,
                    rules_to_xml, save_rules, self_test, validate)
from .taxonomy import TaxonomyGraph, load_taxonomy
from .transform import apply_rule, instantiate

__version__ = "0.1.0"

__all__ = [
    "Circumstance", "EntailmentResult", "Head", "Lexicon", "MatchOutcome",
    "NounPhrase", "Premodifier", "PrepPhrase", "PseudoSlot", "QueryAdj",
    "Rule", "RuleSet", "Sentence", "TaxonomyGraph", "VerbPhrase",
    "agreement_of", "apply_rule", "build_rule", "conjugate",
    "duplicate_ruleset", "entail_closure", "entail_once", "equal_canonical",
    "explain_match", "instantiate", "load_lexicon", "load_rules",
    "load_taxonomy", "logical_entail", "match", "parse_nlml", "parse_text",
    "possessive_to_nominative", "realize", "realize_np", "rules_to_xml",
    "save_rules", "self_test", "serialize_nlml", "validate",
]
