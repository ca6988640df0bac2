/** Editor wiring: guides the annotator from an example pair to a saved,
 * tested rule. All truth (parsing, validation, matching) comes from the
 * service; the page only records choices and displays server answers. */

import { ApiError, Client } from "./api.js";
import { NpPath, RuleDraft } from "./draft.js";
import { renderSentenceTree } from "./tree.js";
import type { Finding, RuleTestResponse } from "./types.js";

const state: { client: Client; draft: RuleDraft | null } = {
  client: new Client(localStorage.getItem("entailgen.baseUrl")
                     ?? "http://127.0.0.1:8321"),
  draft: null,
};

function byId<T extends HTMLElement>(id: string): T {
  return document.getElementById(id) as T;
}

function setStatus(text: string, isError = false): void {
  const bar = byId<HTMLElement>("status");
  bar.textContent = text;
  bar.className = isError ? "error" : "";
}

function describeError(error: unknown): string {
  if (error instanceof ApiError) {
    const detail = error.detail as { findings?: Finding[] } | string;
    if (typeof detail === "object" && detail?.findings) {
      return detail.findings.map((f) => `${f.code}: ${f.detail}`).join("; ");
    }
    return String(error.message);
  }
  return String(error);
}

function nextFreeIndex(draft: RuleDraft): number {
  const used = new Set([...draft.sourceIndexes(), ...draft.entailmentIndexes()]);
  let index = 1;
  while (used.has(index)) index += 1;
  return index;
}

/** One in-flight request at a time; later clicks wait their turn. */
let busy: Promise<unknown> = Promise.resolve();
function enqueue<T>(work: () => Promise<T>): Promise<T> {
  const next = busy.then(work, work);
  busy = next.catch(() => undefined);
  return next;
}

async function refreshPreview(): Promise<void> {
  const draft = state.draft;
  if (!draft) return;
  renderTrees(draft);
  renderPairing(draft);
  try {
    const response = await state.client.testDraft(draft.buildRule());
    byId<HTMLElement>("pattern-nlml").textContent =
      response.rule.patternNlml ?? "";
    byId<HTMLElement>("entailment-nlml").textContent =
      response.rule.entailmentNlml ?? "";
    renderFindings(response.findings);
  } catch (error) {
    renderFindings([]);
    byId<HTMLElement>("pattern-nlml").textContent = "";
    byId<HTMLElement>("entailment-nlml").textContent =
      describeError(error);
  }
}

function renderFindings(findings: Finding[]): void {
  const holder = byId<HTMLElement>("findings");
  holder.innerHTML = "";
  for (const finding of findings) {
    const li = document.createElement("li");
    li.textContent = `${finding.code}: ${finding.detail}`;
    holder.appendChild(li);
  }
}

function renderPairing(draft: RuleDraft): void {
  const blockers = draft.saveBlockers();
  byId<HTMLButtonElement>("save").disabled = blockers.length > 0;
  byId<HTMLElement>("blockers").textContent = blockers.join(" — ");
}

function askIndex(draft: RuleDraft): number | null {
  const suggestion = nextFreeIndex(draft);
  const answer = window.prompt("Variable number:", String(suggestion));
  if (answer === null) return null;
  const index = Number.parseInt(answer, 10);
  return Number.isInteger(index) && index >= 1 ? index : null;
}

function renderTrees(draft: RuleDraft): void {
  const sourceHolder = byId<HTMLElement>("source-tree");
  const entailmentHolder = byId<HTMLElement>("entailment-tree");
  sourceHolder.innerHTML = "";
  entailmentHolder.innerHTML = "";

  sourceHolder.appendChild(renderSentenceTree(draft.pattern, {
    onNpClick: (path: NpPath) => {
      const action = window.prompt(
        "v = make variable, c = constrain category, x = cancel", "v");
      if (action === "v") {
        const index = askIndex(draft);
        if (index !== null) {
          draft.promoteNp("source", path, index);
          void enqueue(refreshPreview);
        }
      } else if (action === "c") {
        const category = window.prompt("Category (taxonomy node):", "person");
        if (category !== null) {
          draft.setCategory(path, category.trim() || null);
          void enqueue(refreshPreview);
        }
      }
    },
    onPossessivePremClick: (path: NpPath, premIndex: number) => {
      const index = askIndex(draft);
      if (index !== null) {
        draft.promotePossessivePrem("source", path, premIndex, index);
        void enqueue(refreshPreview);
      }
    },
    onVerbClick: () => setStatus("the pattern verb stays literal"),
  }));

  entailmentHolder.appendChild(renderSentenceTree(draft.template, {
    onNpClick: (path: NpPath) => {
      const index = askIndex(draft);
      if (index !== null) {
        draft.promoteNp("entailment", path, index);
        void enqueue(refreshPreview);
      }
    },
    onPossessivePremClick: (path: NpPath, premIndex: number) => {
      const index = askIndex(draft);
      if (index !== null) {
        draft.promotePossessivePrem("entailment", path, premIndex, index);
        void enqueue(refreshPreview);
      }
    },
    onVerbClick: () => {
      const on = draft.toggleVerbChange();
      setStatus(on ? "verb group will be rebuilt from the source tense"
                   : "verb group kept literally");
      void enqueue(refreshPreview);
    },
  }));
}

async function startDraft(): Promise<void> {
  const sourceText = byId<HTMLInputElement>("source-text").value.trim();
  const entailmentText = byId<HTMLInputElement>("entailment-text").value.trim();
  if (!sourceText || !entailmentText) {
    setStatus("enter both sentences first", true);
    return;
  }
  try {
    const [sourceParse, entailmentParse] = [
      await state.client.parse(sourceText),
      await state.client.parse(entailmentText),
    ];
    state.draft = new RuleDraft(sourceText, sourceParse,
                                entailmentText, entailmentParse);
    state.draft.id = Number.parseInt(byId<HTMLInputElement>("rule-id").value, 10) || 0;
    state.draft.name = byId<HTMLInputElement>("rule-name").value;
    byId<HTMLElement>("workbench").hidden = false;
    setStatus("click a noun phrase to annotate it; click the entailment "
              + "verb to toggle rebuilding");
    await refreshPreview();
  } catch (error) {
    setStatus(describeError(error), true);
  }
}

async function probeDraft(): Promise<void> {
  const draft = state.draft;
  if (!draft) return;
  const text = byId<HTMLInputElement>("probe-text").value.trim();
  if (!text) return;
  try {
    const response = await state.client.testDraft(draft.buildRule(), text);
    renderProbeResult(text, response);
  } catch (error) {
    setStatus(describeError(error), true);
  }
}

function renderProbeResult(text: string, response: RuleTestResponse): void {
  const holder = byId<HTMLElement>("probe-result");
  holder.innerHTML = "";
  const draft = state.draft!;
  if (!response.match) {
    const stage = response.failedAt ?? "unknown";
    holder.textContent = `no match: ${stage}`;
    draft.logTest(text, `no match: ${stage}`);
    return;
  }
  const table = document.createElement("table");
  for (const [index, entry] of Object.entries(response.match.binding)) {
    const row = table.insertRow();
    row.insertCell().textContent = `variable ${index}`;
    row.insertCell().textContent = entry.text;
  }
  holder.appendChild(table);
  const outcome = document.createElement("p");
  outcome.className = "entailment-text";
  outcome.textContent = response.entailment?.text ?? "";
  holder.appendChild(outcome);
  draft.logTest(text, response.entailment?.text ?? "(no output)");
}

async function saveDraft(): Promise<void> {
  const draft = state.draft;
  if (!draft) return;
  draft.id = Number.parseInt(byId<HTMLInputElement>("rule-id").value, 10) || 0;
  draft.name = byId<HTMLInputElement>("rule-name").value;
  renderPairing(draft);
  if (!draft.canSave()) return;
  try {
    const saved = await state.client.saveRule(draft.buildRule());
    setStatus(`saved rule ${saved.id} (${saved.name})`);
    await refreshRuleList();
  } catch (error) {
    setStatus(describeError(error), true);
  }
}

async function refreshRuleList(): Promise<void> {
  const holder = byId<HTMLElement>("rule-list");
  try {
    const { rules } = await state.client.listRules();
    holder.innerHTML = "";
    for (const rule of rules) {
      const li = document.createElement("li");
      li.textContent = `${rule.id} ${rule.name}`
        + (rule.reversed ? ` (reverse of ${rule.reversed})` : "");
      holder.appendChild(li);
    }
  } catch (error) {
    holder.textContent = describeError(error);
  }
}

export function init(): void {
  byId<HTMLInputElement>("base-url").value = state.client.baseUrl;
  byId<HTMLInputElement>("base-url").addEventListener("change", (event) => {
    const url = (event.target as HTMLInputElement).value;
    localStorage.setItem("entailgen.baseUrl", url);
    state.client = new Client(url);
    void refreshRuleList();
  });
  byId<HTMLButtonElement>("start").addEventListener("click",
    () => void enqueue(startDraft));
  byId<HTMLButtonElement>("probe").addEventListener("click",
    () => void enqueue(probeDraft));
  byId<HTMLButtonElement>("save").addEventListener("click",
    () => void enqueue(saveDraft));
  void refreshRuleList();
}

if (typeof document !== "undefined" && document.getElementById("start")) {
  init();
}
