"""Load, validate, persist and self-test the entailment rule database.

The rule file is one XML document::

    <rules>
      <rule id="3" reversed="5" name="study-in-attend">
        <pattern>   <sentence>...</sentence> </pattern>
        <entailment><sentence>...</sentence> </entailment>
        <example source="..." expect="..."/>
      </rule>
    </rules>

Both rule sides are embedded sentence markup; ids are unique positive
integers; ``reversed`` links the two directions of an equivalence and
must be symmetric. File order is preserved -- it decides application
and output order.
"""
from __future__ import annotations

import os
import tempfile
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from pathlib import Path
from typing import Optional
from xml.sax.saxutils import quoteattr

from .errors import (BadReversedLink, NlmlError, RuleParseError,
                     UnboundTemplateVariable)
from .grammar import parse_text, realize
from .lexicon import Lexicon
from .model import (Sentence, has_category_constraint, iter_noun_phrases,
                    pseudo_indices)
from .nlml import parse_nlml, serialize_nlml
from .taxonomy import TaxonomyGraph


@dataclass(frozen=True)
class Rule:
    id: int
    name: str
    pattern: Sentence
    template: Sentence
    reversed_id: Optional[int] = None
    examples: tuple[tuple[str, str], ...] = ()


class RuleSet:
    def __init__(self, rules: list[Rule]):
        self.rules: tuple[Rule, ...] = tuple(rules)
        self.by_id: dict[int, Rule] = {}
        for rule in self.rules:
            if rule.id in self.by_id:
                raise RuleParseError(f"duplicate rule id {rule.id}")
            self.by_id[rule.id] = rule
        self._check_links()

    def _check_links(self):
        for rule in self.rules:
            if rule.reversed_id is None:
                continue
            other = self.by_id.get(rule.reversed_id)
            if other is None:
                raise BadReversedLink(
                    rule.id, f"reversed rule {rule.reversed_id} does not exist")
            if other.reversed_id != rule.id:
                raise BadReversedLink(
                    rule.id,
                    f"rule {other.id} does not point back (its reversed id "
                    f"is {other.reversed_id})")

    def __iter__(self):
        return iter(self.rules)

    def __len__(self):
        return len(self.rules)

    def get(self, rule_id: int) -> Optional[Rule]:
        return self.by_id.get(rule_id)

    def replaced(self, rule: Rule) -> "RuleSet":
        """New set with the rule added or swapped in place by id."""
        if rule.id in self.by_id:
            rules = [rule if r.id == rule.id else r for r in self.rules]
        else:
            rules = list(self.rules) + [rule]
        return RuleSet(rules)

    def removed(self, rule_id: int) -> "RuleSet":
        rules = []
        for r in self.rules:
            if r.id == rule_id:
                continue
            if r.reversed_id == rule_id:
                r = Rule(id=r.id, name=r.name, pattern=r.pattern,
                         template=r.template, reversed_id=None,
                         examples=r.examples)
            rules.append(r)
        return RuleSet(rules)


def _check_rule_structure(rule: Rule):
    bound = pseudo_indices(rule.pattern)
    for index in sorted(pseudo_indices(rule.template)):
        if index not in bound:
            raise UnboundTemplateVariable(rule.id, index)


def build_rule(rule_id: int, name: str, pattern: Sentence, template: Sentence,
               reversed_id: Optional[int] = None,
               examples: tuple[tuple[str, str], ...] = ()) -> Rule:
    rule = Rule(id=rule_id, name=name,
                pattern=pattern.with_flavor("pattern"),
                template=template.with_flavor("template"),
                reversed_id=reversed_id, examples=examples)
    _check_rule_structure(rule)
    return rule


def _parse_rule_element(elem: ET.Element) -> Rule:
    raw_id = elem.get("id")
    if raw_id is None:
        raise RuleParseError("rule without id attribute")
    try:
        rule_id = int(raw_id)
    except ValueError:
        raise RuleParseError(f"bad rule id {raw_id!r}") from None
    if rule_id < 1:
        raise RuleParseError(f"rule id must be positive, got {rule_id}")

    reversed_id = None
    if elem.get("reversed"):
        try:
            reversed_id = int(elem.get("reversed"))
        except ValueError:
            raise RuleParseError("bad reversed id", rule_id) from None

    name = elem.get("name", f"rule-{rule_id}")

    def side(tag: str, flavor: str) -> Sentence:
        holder = elem.find(tag)
        if holder is None:
            raise RuleParseError(f"missing <{tag}>", rule_id)
        sentence_el = holder.find("sentence")
        if sentence_el is None:
            raise RuleParseError(f"<{tag}> has no <sentence>", rule_id)
        try:
            return parse_nlml(ET.tostring(sentence_el, encoding="unicode"),
                              flavor=flavor)
        except NlmlError as exc:
            raise RuleParseError(f"bad {tag} markup: {exc}", rule_id) from exc

    pattern = side("pattern", "pattern")
    template = side("entailment", "template")
    examples = tuple((ex.get("source", ""), ex.get("expect", ""))
                     for ex in elem.findall("example"))
    rule = Rule(id=rule_id, name=name, pattern=pattern, template=template,
                reversed_id=reversed_id, examples=examples)
    _check_rule_structure(rule)
    return rule


def load_rules(path) -> RuleSet:
    try:
        tree = ET.parse(str(path))
    except ET.ParseError as exc:
        raise RuleParseError(f"malformed rule file {path}: {exc}") from exc
    root = tree.getroot()
    if root.tag != "rules":
        raise RuleParseError(f"expected <rules> root, got <{root.tag}>")
    return RuleSet([_parse_rule_element(el) for el in root.findall("rule")])


def _indent_block(markup: str, levels: int) -> str:
    pad = "  " * levels
    return "\n".join(pad + line for line in markup.rstrip("\n").split("\n"))


def rules_to_xml(ruleset: RuleSet) -> str:
    lines = ["<rules>"]
    for rule in ruleset:
        attrs = [f'id="{rule.id}"']
        if rule.reversed_id is not None:
            attrs.append(f'reversed="{rule.reversed_id}"')
        attrs.append(f"name={quoteattr(rule.name)}")
        lines.append(f"  <rule {' '.join(attrs)}>")
        lines.append("    <pattern>")
        lines.append(_indent_block(serialize_nlml(rule.pattern), 3))
        lines.append("    </pattern>")
        lines.append("    <entailment>")
        lines.append(_indent_block(serialize_nlml(rule.template), 3))
        lines.append("    </entailment>")
        for source, expect in rule.examples:
            lines.append(f"    <example source={quoteattr(source)} "
                         f"expect={quoteattr(expect)}/>")
        lines.append("  </rule>")
    lines.append("</rules>")
    return "\n".join(lines) + "\n"


def save_rules(ruleset: RuleSet, path):
    """Write the rule file atomically (write to a sibling, then rename)."""
    path = Path(path)
    content = rules_to_xml(ruleset)
    fd, tmp_name = tempfile.mkstemp(dir=str(path.parent),
                                    prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(content)
        os.replace(tmp_name, str(path))
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise


def duplicate_ruleset(base: RuleSet, copies: int) -> RuleSet:
    """Duplicate every rule ``copies`` times with remapped ids.

    Copies are deep so memory grows with the rule count, matching how a
    genuinely larger database would behave; reversed links stay within
    each copy batch. Used for scan-cost benchmarking.
    """
    import copy as _copy

    stride = max(rule.id for rule in base) if len(base) else 0
    rules: list[Rule] = []
    for k in range(copies):
        offset = stride * k
        for rule in base:
            rules.append(Rule(
                id=rule.id + offset,
                name=rule.name if k == 0 else f"{rule.name}-copy{k}",
                pattern=_copy.deepcopy(rule.pattern),
                template=_copy.deepcopy(rule.template),
                reversed_id=(rule.reversed_id + offset
                             if rule.reversed_id is not None else None),
                examples=rule.examples,
            ))
    return RuleSet(rules)


# --- validation findings (returned, not thrown) ---

@dataclass(frozen=True)
class Finding:
    code: str
    detail: str

    def as_dict(self) -> dict:
        return {"code": self.code, "detail": self.detail}


def validate(rule: Rule, taxonomy: Optional[TaxonomyGraph] = None) -> list[Finding]:
    findings: list[Finding] = []
    if rule.id < 1:
        findings.append(Finding("BadId", f"rule id must be positive, got {rule.id}"))
    if rule.pattern.verb_phrase.verb_change:
        findings.append(Finding("VerbChangeInPattern",
                                "pattern side may not carry verb_change"))
    if has_category_constraint(rule.template):
        findings.append(Finding("CategoryInTemplate",
                                "template side may not carry category constraints"))
    bound = pseudo_indices(rule.pattern)
    for index in sorted(pseudo_indices(rule.template)):
        if index not in bound:
            findings.append(Finding(
                "UnboundTemplateVariable",
                f"template uses pseudo index {index} the pattern never binds"))
    if taxonomy is not None:
        for np in iter_noun_phrases(rule.pattern):
            category = np.category_constraint
            if category is not None and not taxonomy.has_node(category):
                findings.append(Finding(
                    "UnknownCategory",
                    f"category {category!r} is not a taxonomy node"))
    return findings


# --- self test against embedded examples ---

@dataclass(frozen=True)
class ExampleResult:
    rule_id: int
    source: str
    expected: str
    got: Optional[str]
    passed: bool
    error: Optional[str] = None


@dataclass
class SelfTestReport:
    results: list[ExampleResult]

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.results)

    def lines(self) -> list[str]:
        out = []
        for r in self.results:
            status = "pass" if r.passed else "FAIL"
            note = r.error or r.got or "(no entailment)"
            out.append(f"rule {r.rule_id}: {status}  {r.source!r} -> {note!r}")
        return out


def self_test(ruleset: RuleSet, lexicon: Lexicon,
              taxonomy: TaxonomyGraph) -> SelfTestReport:
    """Check every rule against its own embedded example pairs."""
    from .transform import apply_rule

    results: list[ExampleResult] = []
    for rule in ruleset:
        for source, expect in rule.examples:
            got = None
            error = None
            try:
                parsed = parse_text(source, lexicon)
                produced = apply_rule(rule, parsed, taxonomy, lexicon)
                if produced is not None:
                    got = realize(produced, lexicon)
            except Exception as exc:  # a failing rule must not stop the report
                error = f"{type(exc).__name__}: {exc}"
            results.append(ExampleResult(
                rule_id=rule.id, source=source, expected=expect, got=got,
                passed=(got == expect), error=error))
    return SelfTestReport(results)
