"""HTTP/JSON API over the engine: parsing, entailment and rule editing.

Handlers read one consistent snapshot of the rule set per request; rule
edits persist to the rule file first (write-then-rename) and then swap
the in-memory set atomically, so a failed save leaves both unchanged.
The API carries no authentication -- it is a single-annotator desk tool
-- and allows cross-origin requests so the browser editor can talk to
it from another port.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Optional

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from . import engine
from .errors import EntailgenError, RuleError, TextParseError
from .grammar import parse_text, realize, realize_np
from .jsonio import np_to_json, rule_from_json, rule_to_json, sentence_to_json
from .lexicon import Lexicon, load_lexicon
from .matching import explain_match
from .model import NounPhrase
from .nlml import serialize_nlml
from .rules import Rule, RuleSet, load_rules, save_rules, validate
from .taxonomy import TaxonomyGraph, load_taxonomy
from .transform import instantiate


@dataclass
class ServiceConfig:
    rules_path: str
    lexicon_path: str
    taxonomy_path: str


class ServiceState:
    """Shared engine state with atomic rule-set replacement."""

    def __init__(self, config: ServiceConfig):
        self.config = config
        self.lexicon: Lexicon = load_lexicon(config.lexicon_path)
        self.taxonomy: TaxonomyGraph = load_taxonomy(config.taxonomy_path)
        self.ruleset: RuleSet = load_rules(config.rules_path)
        self._write_lock = threading.Lock()

    def snapshot(self) -> RuleSet:
        return self.ruleset

    def commit(self, ruleset: RuleSet):
        with self._write_lock:
            save_rules(ruleset, self.config.rules_path)
            self.ruleset = ruleset


class ParseRequest(BaseModel):
    text: str


class EntailRequest(BaseModel):
    text: str
    maxDepth: int = Field(default=engine.DEFAULT_MAX_DEPTH, ge=1)
    logical: str = "fallback"


class RuleTestRequest(BaseModel):
    ruleId: Optional[int] = None
    rule: Optional[dict] = None
    text: Optional[str] = None


def _decode_rule(payload: dict) -> Rule:
    try:
        return rule_from_json(payload)
    except RuleError as exc:
        raise HTTPException(status_code=422,
                            detail={"findings": [{"code": type(exc).__name__,
                                                  "detail": str(exc)}]})
    except (ValueError, KeyError, TypeError) as exc:
        raise HTTPException(status_code=400, detail=f"bad rule payload: {exc}")


def _binding_json(outcome) -> dict:
    out = {}
    for index, fragment in outcome.binding.items():
        kind = outcome.fragment_kinds.get(index, "noun_phrase")
        if isinstance(fragment, NounPhrase):
            out[str(index)] = {"kind": kind, "phrase": np_to_json(fragment),
                               "text": realize_np(fragment)}
        else:
            out[str(index)] = {"kind": kind, "word": fragment,
                               "text": fragment}
    return out


def create_app(state: ServiceState) -> FastAPI:
    app = FastAPI(title="entailgen", version="0.1.0")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"],
        allow_headers=["*"],
    )
    app.state.engine_state = state

    @app.get("/health")
    def health():
        return {"status": "ok", "rules": len(state.snapshot())}

    @app.get("/rules")
    def list_rules():
        return {"rules": [rule_to_json(rule) for rule in state.snapshot()]}

    @app.get("/rules/{rule_id}")
    def get_rule(rule_id: int):
        rule = state.snapshot().get(rule_id)
        if rule is None:
            raise HTTPException(status_code=404,
                                detail=f"no rule with id {rule_id}")
        return rule_to_json(rule)

    def _validated(rule: Rule) -> list[dict]:
        return [f.as_dict() for f in validate(rule, state.taxonomy)]

    @app.post("/rules", status_code=201)
    def create_rule(payload: dict):
        rule = _decode_rule(payload)
        findings = _validated(rule)
        if state.snapshot().get(rule.id) is not None:
            findings.append({"code": "DuplicateId",
                             "detail": f"rule {rule.id} already exists; "
                                       "use PUT to replace it"})
        if findings:
            raise HTTPException(status_code=422, detail={"findings": findings})
        try:
            state.commit(state.snapshot().replaced(rule))
        except RuleError as exc:
            raise HTTPException(status_code=422, detail={
                "findings": [{"code": type(exc).__name__, "detail": str(exc)}]})
        return rule_to_json(rule)

    @app.put("/rules/{rule_id}")
    def replace_rule(rule_id: int, payload: dict):
        if state.snapshot().get(rule_id) is None:
            raise HTTPException(status_code=404,
                                detail=f"no rule with id {rule_id}")
        payload = dict(payload)
        payload.setdefault("id", rule_id)
        if payload["id"] != rule_id:
            raise HTTPException(status_code=400,
                                detail="payload id does not match the URL")
        rule = _decode_rule(payload)
        findings = _validated(rule)
        if findings:
            raise HTTPException(status_code=422, detail={"findings": findings})
        try:
            state.commit(state.snapshot().replaced(rule))
        except RuleError as exc:
            raise HTTPException(status_code=422, detail={
                "findings": [{"code": type(exc).__name__, "detail": str(exc)}]})
        return rule_to_json(rule)

    @app.delete("/rules/{rule_id}")
    def delete_rule(rule_id: int):
        if state.snapshot().get(rule_id) is None:
            raise HTTPException(status_code=404,
                                detail=f"no rule with id {rule_id}")
        state.commit(state.snapshot().removed(rule_id))
        return {"deleted": rule_id}

    @app.post("/rules/test")
    def test_rule(request: RuleTestRequest):
        if (request.ruleId is None) == (request.rule is None):
            raise HTTPException(status_code=400,
                                detail="provide exactly one of ruleId / rule")
        if request.ruleId is not None:
            rule = state.snapshot().get(request.ruleId)
            if rule is None:
                raise HTTPException(status_code=404,
                                    detail=f"no rule with id {request.ruleId}")
        else:
            rule = _decode_rule(request.rule)

        response: dict = {
            "rule": rule_to_json(rule),
            "findings": _validated(rule),
        }
        if request.text is None:
            return response

        try:
            sentence = parse_text(request.text, state.lexicon)
        except TextParseError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        outcome, failed_at = explain_match(rule.pattern, sentence,
                                           state.taxonomy, state.lexicon)
        if outcome is None:
            response["match"] = None
            response["failedAt"] = failed_at
            return response
        produced = instantiate(rule.template, outcome, state.lexicon)
        response["match"] = {"binding": _binding_json(outcome),
                             "sourceTense": outcome.source_tense}
        response["entailment"] = {
            "text": realize(produced, state.lexicon),
            "sentence": sentence_to_json(produced),
            "nlml": serialize_nlml(produced),
        }
        return response

    @app.post("/parse")
    def parse(request: ParseRequest):
        try:
            sentence = parse_text(request.text, state.lexicon)
        except TextParseError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return {
            "sentence": sentence_to_json(sentence),
            "realized": realize(sentence, state.lexicon),
            "nlml": serialize_nlml(sentence),
        }

    @app.post("/entail")
    def entail(request: EntailRequest):
        if request.logical not in engine.LOGICAL_MODES:
            raise HTTPException(status_code=400,
                                detail=f"bad logical mode {request.logical!r}")
        try:
            results = engine.entail_closure(
                request.text, state.snapshot(), state.taxonomy, state.lexicon,
                max_depth=request.maxDepth, logical=request.logical)
        except TextParseError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        except EntailgenError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return {"results": [{
            "text": r.text,
            "derivation": list(r.derivation),
            "depth": r.depth,
        } for r in results]}

    return app


def build_app(rules_path: str, lexicon_path: str, taxonomy_path: str) -> FastAPI:
    state = ServiceState(ServiceConfig(rules_path=rules_path,
                                       lexicon_path=lexicon_path,
                                       taxonomy_path=taxonomy_path))
    return create_app(state)
