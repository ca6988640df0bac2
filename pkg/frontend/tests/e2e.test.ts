/** Full editor flow against a live service.
 *
 * Skipped unless TEE_E2E_BASE_URL points at a running server, e.g.
 *   entailgen serve --port 8321   # in the repository root
 *   TEE_E2E_BASE_URL=http://127.0.0.1:8321 npm test
 */
import { describe, expect, it } from "vitest";

import { Client } from "../src/api.js";
import { RuleDraft } from "../src/draft.js";

const baseUrl = process.env.TEE_E2E_BASE_URL;
const live = baseUrl ? describe : describe.skip;

live("editor flow against the live service", () => {
  const client = new Client(baseUrl ?? "");
  const RULE_ID = 102;

  it("produces, tests and saves the genitive-name rule", async () => {
    const health = await client.health();
    expect(health.status).toBe("ok");

    // an annotator types the example pair; the server parses both
    const sourceText = "The student's name is Zhang.";
    const entailmentText = "The student is Zhang.";
    const draft = new RuleDraft(
      sourceText, await client.parse(sourceText),
      entailmentText, await client.parse(entailmentText));

    // clicks: variable 1 on the genitive phrase (constrained to
    // person), variable 2 on the name, both again on the entailment
    // side, and the rebuilt-verb toggle
    draft.promoteNp("source", ["subject", ["prem", 0]], 1);
    draft.setCategory(["subject", ["prem", 0]], "person");
    draft.promoteNp("source", ["predicate"], 2);
    draft.promoteNp("entailment", ["subject"], 1);
    draft.promoteNp("entailment", ["predicate"], 2);
    draft.toggleVerbChange();
    draft.id = RULE_ID;
    draft.name = "editor-genitive-name";
    expect(draft.canSave()).toBe(true);

    // the draft is structurally equal to the shipped rule 2
    const shipped = await client.getRule(2);
    const built = draft.buildRule();
    expect(built.pattern).toEqual(shipped.pattern);
    expect(built.entailment).toEqual(shipped.entailment);

    // validation preview comes from the server
    const preview = await client.testDraft(built);
    expect(preview.findings).toEqual([]);
    expect(preview.rule.patternNlml).toContain("pseudo");

    // probing the unsaved draft against a new sentence
    const probe = await client.testDraft(built, "The teacher's name is Li.");
    expect(probe.match?.binding["1"].text).toBe("the teacher");
    expect(probe.entailment?.text).toBe("The teacher is Li.");

    // a non-matching probe names the first failed comparison
    const miss = await client.testDraft(built, "I attend Beijing University.");
    expect(miss.match).toBeNull();
    expect(miss.failedAt).toBe("subject");

    // save, re-read, test the saved rule, clean up
    try {
      const saved = await client.saveRule(built);
      expect(saved.id).toBe(RULE_ID);
      const listed = await client.listRules();
      expect(listed.rules.map((r) => r.id)).toContain(RULE_ID);
      const onServer = await client.testSaved(RULE_ID,
                                              "The teacher's name is Li.");
      expect(onServer.entailment?.text).toBe("The teacher is Li.");
    } finally {
      await client.deleteRule(RULE_ID).catch(() => undefined);
    }
  }, 30000);
});
