"""Command-line front end.

Subcommands: entail, parse, match, validate-rules, self-test, bench,
serve. Fixture locations resolve flag > environment (GTE_RULES,
GTE_LEXICON, GTE_TAXONOMY) > ./fixtures defaults. Exit codes: 0 on
success, 1 on domain outcomes (out-of-coverage input, no match, failed
validation or self-test), 2 on usage and file errors.
"""
from __future__ import annotations

import argparse
import json
import os
import statistics
import sys
import time

from .engine import DEFAULT_MAX_DEPTH, LOGICAL_MODES, entail_closure
from .errors import EntailgenError, RuleError, TextParseError
from .grammar import parse_text, realize, realize_np
from .jsonio import sentence_to_json
from .lexicon import load_lexicon
from .matching import explain_match
from .model import NounPhrase
from .nlml import serialize_nlml
from .rules import duplicate_ruleset, load_rules, self_test, validate
from .taxonomy import load_taxonomy

DEFAULT_RULES = "./fixtures/rules/core.xml"
DEFAULT_BENCH_RULES = "./fixtures/rules/bench.xml"
DEFAULT_LEXICON = "./fixtures/lexicon.tsv"
DEFAULT_TAXONOMY = "./fixtures/taxonomy.tsv"

BENCH_TEXT = "I study in Beijing University."
BENCH_RUNS = 100


def _resolve(flag_value, env_name, default):
    return flag_value or os.environ.get(env_name) or default


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entailgen",
        description="Generate textual entailments for simple English sentences.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--rules", help="rule XML file")
        p.add_argument("--lexicon", help="lexicon TSV file")
        p.add_argument("--taxonomy", help="taxonomy TSV file")

    p_entail = sub.add_parser("entail", help="generate all entailments of a text")
    add_common(p_entail)
    p_entail.add_argument("--text", help="input sentence (default: stdin lines)")
    p_entail.add_argument("--max-depth", type=int, default=DEFAULT_MAX_DEPTH)
    p_entail.add_argument("--logical", choices=LOGICAL_MODES, default="fallback")
    p_entail.add_argument("--format", choices=("text", "nlml", "json"),
                          default="text")

    p_parse = sub.add_parser("parse", help="parse a sentence into the model")
    add_common(p_parse)
    p_parse.add_argument("--text", required=True)
    p_parse.add_argument("--format", choices=("text", "nlml", "json"),
                         default="nlml")

    p_match = sub.add_parser("match", help="match a text against one rule")
    add_common(p_match)
    p_match.add_argument("--rule", type=int, required=True, help="rule id")
    p_match.add_argument("--text", required=True)
    p_match.add_argument("--format", choices=("text", "json"), default="json")

    p_validate = sub.add_parser("validate-rules", help="check the rule file")
    add_common(p_validate)

    p_self = sub.add_parser("self-test",
                            help="run every rule against its embedded examples")
    add_common(p_self)

    p_bench = sub.add_parser("bench", help="scan-cost benchmark with duplicated rules")
    add_common(p_bench)
    p_bench.add_argument("--copies", type=int, default=500,
                         help="duplication factor for the unique rules")
    p_bench.add_argument("--text", default=BENCH_TEXT)
    p_bench.add_argument("--runs", type=int, default=BENCH_RUNS)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    add_common(p_serve)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8321)

    return parser


def _load_context(args, rules_default=DEFAULT_RULES):
    rules_path = _resolve(args.rules, "GTE_RULES", rules_default)
    lexicon_path = _resolve(args.lexicon, "GTE_LEXICON", DEFAULT_LEXICON)
    taxonomy_path = _resolve(args.taxonomy, "GTE_TAXONOMY", DEFAULT_TAXONOMY)
    lexicon = load_lexicon(lexicon_path)
    taxonomy = load_taxonomy(taxonomy_path)
    ruleset = load_rules(rules_path)
    return ruleset, taxonomy, lexicon, rules_path, lexicon_path, taxonomy_path


def _cmd_entail(args) -> int:
    ruleset, taxonomy, lexicon, *_ = _load_context(args)
    texts = [args.text] if args.text is not None else \
        [line.strip() for line in sys.stdin if line.strip()]
    status = 0
    for text in texts:
        try:
            results = entail_closure(text, ruleset, taxonomy, lexicon,
                                     max_depth=args.max_depth,
                                     logical=args.logical)
        except TextParseError as exc:
            print(str(exc), file=sys.stderr)
            status = 1
            continue
        if args.format == "json":
            print(json.dumps([{"text": r.text,
                               "derivation": list(r.derivation),
                               "depth": r.depth} for r in results]))
        elif args.format == "nlml":
            for r in results:
                sys.stdout.write(serialize_nlml(r.model))
        else:
            for r in results:
                print(r.text)
    return status


def _cmd_parse(args) -> int:
    _, _, lexicon, *_ = _load_context(args)
    try:
        sentence = parse_text(args.text, lexicon)
    except TextParseError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    if args.format == "json":
        print(json.dumps(sentence_to_json(sentence), indent=2))
    elif args.format == "text":
        print(realize(sentence, lexicon))
    else:
        sys.stdout.write(serialize_nlml(sentence))
    return 0


def _cmd_match(args) -> int:
    ruleset, taxonomy, lexicon, *_ = _load_context(args)
    rule = ruleset.get(args.rule)
    if rule is None:
        print(f"no rule with id {args.rule}", file=sys.stderr)
        return 2
    try:
        sentence = parse_text(args.text, lexicon)
    except TextParseError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    outcome, failed_at = explain_match(rule.pattern, sentence, taxonomy, lexicon)
    if outcome is None:
        print(json.dumps({"match": False, "failedAt": failed_at}))
        return 1
    binding = {}
    for index, fragment in sorted(outcome.binding.items()):
        if isinstance(fragment, NounPhrase):
            binding[str(index)] = realize_np(fragment)
        else:
            binding[str(index)] = fragment
    print(json.dumps({
        "match": True,
        "binding": binding,
        "sourceTense": outcome.source_tense,
        "carriedCircumstances": len(outcome.carried_circumstances),
    }))
    return 0


def _cmd_validate_rules(args) -> int:
    try:
        ruleset, taxonomy, _, rules_path, *_ = _load_context(args)
    except RuleError as exc:
        print(f"invalid rule file: {exc}", file=sys.stderr)
        return 1
    any_findings = False
    for rule in ruleset:
        for finding in validate(rule, taxonomy):
            any_findings = True
            print(f"rule {rule.id}: {finding.code}: {finding.detail}")
    if any_findings:
        return 1
    print(f"{len(ruleset)} rules valid ({rules_path})")
    return 0


def _cmd_self_test(args) -> int:
    ruleset, taxonomy, lexicon, *_ = _load_context(args)
    report = self_test(ruleset, lexicon, taxonomy)
    for line in report.lines():
        print(line)
    passed = sum(1 for r in report.results if r.passed)
    print(f"{passed}/{len(report.results)} examples passed")
    return 0 if report.all_passed else 1


def _cmd_bench(args) -> int:
    import psutil

    ruleset, taxonomy, lexicon, *_ = _load_context(
        args, rules_default=DEFAULT_BENCH_RULES)
    process = psutil.Process()

    rss_before = process.memory_info().rss
    big = duplicate_ruleset(ruleset, args.copies)
    rss_after = process.memory_info().rss

    # warm-up, then timed runs
    entail_closure(args.text, big, taxonomy, lexicon)
    samples = []
    for _ in range(args.runs):
        start = time.perf_counter()
        entail_closure(args.text, big, taxonomy, lexicon)
        samples.append((time.perf_counter() - start) * 1000.0)
    samples.sort()
    p50 = statistics.median(samples)
    p95 = samples[min(len(samples) - 1, int(round(0.95 * len(samples))) - 1)]

    print(f"rules={len(big)} unique={len(ruleset)} copies={args.copies}")
    print(f"runs={args.runs} text={args.text!r}")
    print(f"p50_ms={p50:.2f} p95_ms={p95:.2f}")
    print(f"rss_delta_mb={(rss_after - rss_before) / (1024 * 1024):.1f}")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import build_app

    rules_path = _resolve(args.rules, "GTE_RULES", DEFAULT_RULES)
    lexicon_path = _resolve(args.lexicon, "GTE_LEXICON", DEFAULT_LEXICON)
    taxonomy_path = _resolve(args.taxonomy, "GTE_TAXONOMY", DEFAULT_TAXONOMY)
    app = build_app(rules_path, lexicon_path, taxonomy_path)
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


COMMANDS = {
    "entail": _cmd_entail,
    "parse": _cmd_parse,
    "match": _cmd_match,
    "validate-rules": _cmd_validate_rules,
    "self-test": _cmd_self_test,
    "bench": _cmd_bench,
    "serve": _cmd_serve,
}


def dispatch(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except FileNotFoundError as exc:
        print(f"file not found: {exc.filename or exc}", file=sys.stderr)
        return 2
    except RuleError as exc:
        print(f"rule file error: {exc}", file=sys.stderr)
        return 2
    except EntailgenError as exc:
        print(str(exc), file=sys.stderr)
        return 1


def main():
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
