/** Rule-draft state: two parsed sentences plus the annotator's choices.
 *
 * The annotator promotes noun phrases to indexed variables, constrains
 * them with categories, and marks the entailment's verb group as
 * rebuilt. The draft only rewrites the parse trees the server returned;
 * it never invents markup, so the server remains the single authority
 * on what the rule means. Nothing touches the server until an explicit
 * save.
 */

import type {
  NounPhraseJson, ParseResponse, PremJson, SentenceJson, SlotKind,
} from "./types.js";
import type { RulePayload } from "./api.js";

export type RootStep = "subject" | "predicate" | "direct_object"
  | ["circum", number];
export type InnerStep = ["prem", number] | ["pp", number];
export type NpPath = [RootStep, ...InnerStep[]];

export type Side = "source" | "entailment";

function clone<T>(value: T): T {
  return JSON.parse(JSON.stringify(value)) as T;
}

function rootNp(sentence: SentenceJson, step: RootStep): NounPhraseJson | undefined {
  if (step === "subject") return sentence.subject;
  if (step === "predicate") {
    const predicate = sentence.verb_phrase.predicate;
    if (predicate && predicate.predicate_type === "np") {
      return predicate as unknown as NounPhraseJson;
    }
    return undefined;
  }
  if (step === "direct_object") return sentence.verb_phrase.direct_object;
  const circ = sentence.circum?.[step[1]];
  return circ?.prep_phrase?.object;
}

function innerNp(np: NounPhraseJson, step: InnerStep): NounPhraseJson | undefined {
  if (step[0] === "prem") return np.prem?.[step[1]]?.phrase;
  return np.prep_phrase?.[step[1]]?.object;
}

export function npAt(sentence: SentenceJson, path: NpPath): NounPhraseJson | undefined {
  let node = rootNp(sentence, path[0]);
  for (const step of path.slice(1) as InnerStep[]) {
    if (node === undefined) return undefined;
    node = innerNp(node, step);
  }
  return node;
}

/** All noun-phrase positions in the tree, outermost first. */
export function listNpPaths(sentence: SentenceJson): NpPath[] {
  const paths: NpPath[] = [];
  const descend = (np: NounPhraseJson | undefined, path: NpPath) => {
    if (np === undefined) return;
    paths.push(path);
    np.prem?.forEach((prem, i) => {
      if (prem.phrase) descend(prem.phrase, [...path, ["prem", i]] as NpPath);
    });
    np.prep_phrase?.forEach((pp, i) => {
      descend(pp.object, [...path, ["pp", i]] as NpPath);
    });
  };
  descend(sentence.subject, ["subject"]);
  descend(rootNp(sentence, "predicate"), ["predicate"]);
  descend(sentence.verb_phrase.direct_object, ["direct_object"]);
  sentence.circum?.forEach((circ, i) => {
    if (circ.prep_phrase) descend(circ.prep_phrase.object, [["circum", i]]);
  });
  return paths;
}

function replaceNpAt(sentence: SentenceJson, path: NpPath,
                     replacement: NounPhraseJson): void {
  if (path.length === 1) {
    const step = path[0];
    if (step === "subject") {
      sentence.subject = replacement;
    } else if (step === "predicate") {
      sentence.verb_phrase.predicate =
        { predicate_type: "np", ...replacement } as SentenceJson["verb_phrase"]["predicate"];
    } else if (step === "direct_object") {
      sentence.verb_phrase.direct_object = replacement;
    } else {
      sentence.circum![step[1]].prep_phrase!.object = replacement;
    }
    return;
  }
  const parent = npAt(sentence, path.slice(0, -1) as NpPath);
  if (parent === undefined) throw new Error("bad path");
  const last = path[path.length - 1] as InnerStep;
  if (last[0] === "prem") {
    parent.prem![last[1]].phrase = replacement;
  } else {
    parent.prep_phrase![last[1]].object = replacement;
  }
}

/** Collect every variable index used anywhere in the tree. */
export function pseudoIndexes(sentence: SentenceJson): Set<number> {
  const found = new Set<number>();
  const scanNp = (np: NounPhraseJson | undefined) => {
    if (!np) return;
    if (np.pseudo) found.add(np.pseudo.index);
    if (np.noun?.pseudo) found.add(np.noun.pseudo.index);
    np.prem?.forEach((prem) => {
      if (prem.pseudo) found.add(prem.pseudo.index);
      if (prem.phrase) scanNp(prem.phrase);
    });
    np.prep_phrase?.forEach((pp) => scanNp(pp.object));
  };
  scanNp(sentence.subject);
  const predicate = sentence.verb_phrase.predicate;
  if (predicate && predicate.predicate_type === "np") {
    scanNp(predicate as unknown as NounPhraseJson);
  }
  scanNp(sentence.verb_phrase.direct_object);
  sentence.circum?.forEach((circ) => {
    if (circ.prep_phrase) scanNp(circ.prep_phrase.object);
  });
  return found;
}

/** A bare proper-name head with nothing else around it captures just
 * the name word; any other phrase captures whole. */
export function slotKindFor(np: NounPhraseJson): SlotKind {
  const bare = !(np.prem?.length) && !(np.prep_phrase?.length);
  if (bare && np.noun?.type === "name") return "word";
  return "noun_phrase";
}

export interface TestLogEntry {
  text: string;
  outcome: string;
}

export class RuleDraft {
  sourceText: string;
  entailmentText: string;
  sourceParse: ParseResponse;
  entailmentParse: ParseResponse;
  pattern: SentenceJson;
  template: SentenceJson;
  id = 0;
  name = "";
  reversed: number | null = null;
  testLog: TestLogEntry[] = [];

  constructor(sourceText: string, sourceParse: ParseResponse,
              entailmentText: string, entailmentParse: ParseResponse) {
    this.sourceText = sourceText;
    this.entailmentText = entailmentText;
    this.sourceParse = sourceParse;
    this.entailmentParse = entailmentParse;
    this.pattern = clone(sourceParse.sentence);
    this.template = clone(entailmentParse.sentence);
  }

  private tree(side: Side): SentenceJson {
    return side === "source" ? this.pattern : this.template;
  }

  /** Turn the phrase at the path into variable N. On the pattern side a
   * bare name head becomes a word-valued slot; everything else becomes
   * a whole-phrase slot. */
  promoteNp(side: Side, path: NpPath, index: number): void {
    const sentence = this.tree(side);
    const np = npAt(sentence, path);
    if (np === undefined) throw new Error("no phrase at path");
    if (side === "source" && slotKindFor(np) === "word") {
      replaceNpAt(sentence, path,
                  { noun: { pseudo: { index, kind: "word" }, type: "name" } });
      return;
    }
    replaceNpAt(sentence, path,
                { pseudo: { index, kind: "noun_phrase" } });
  }

  /** Turn a possessive-pronoun premodifier into a possessive slot. */
  promotePossessivePrem(side: Side, path: NpPath, premIndex: number,
                        index: number): void {
    const np = npAt(this.tree(side), path);
    const prem = np?.prem?.[premIndex];
    if (!prem || prem.type !== "possessive" || !prem.word) {
      throw new Error("not a possessive-word premodifier");
    }
    const slot: PremJson = { type: "possessive",
                             pseudo: { index, kind: "possessive" } };
    np!.prem![premIndex] = slot;
  }

  /** Constrain the phrase at the path to a taxonomy category (pattern
   * side only; the server validates the category name). */
  setCategory(path: NpPath, category: string | null): void {
    const np = npAt(this.pattern, path);
    if (np === undefined) throw new Error("no phrase at path");
    if (category === null) {
      delete np.category;
    } else {
      np.category = category;
    }
  }

  /** Mark the entailment's verb group as rebuilt from the source tense
   * and the new subject. The group's own features and words disappear
   * (the engine recomputes them); toggling back restores the parse. */
  toggleVerbChange(): boolean {
    const vp = this.template.verb_phrase;
    if (vp.verb_change) {
      const original = this.entailmentParse.sentence.verb_phrase;
      vp.verb_change = undefined;
      vp.tense = original.tense;
      vp.pers = original.pers;
      vp.numb = original.numb;
      vp.verb_word = original.verb_word ? [...original.verb_word] : undefined;
      delete vp.verb_change;
      return false;
    }
    vp.verb_change = true;
    delete vp.tense;
    delete vp.pers;
    delete vp.numb;
    delete vp.verb_word;
    return true;
  }

  sourceIndexes(): Set<number> {
    return pseudoIndexes(this.pattern);
  }

  entailmentIndexes(): Set<number> {
    return pseudoIndexes(this.template);
  }

  /** Indexes used on one side but missing from the other. */
  unpairedIndexes(): number[] {
    const source = this.sourceIndexes();
    const entailment = this.entailmentIndexes();
    const unpaired: number[] = [];
    for (const index of entailment) {
      if (!source.has(index)) unpaired.push(index);
    }
    for (const index of source) {
      if (!entailment.has(index)) unpaired.push(index);
    }
    return unpaired.sort((a, b) => a - b);
  }

  saveBlockers(): string[] {
    const blockers: string[] = [];
    if (!Number.isInteger(this.id) || this.id < 1) {
      blockers.push("rule needs a positive id");
    }
    if (!this.name.trim()) blockers.push("rule needs a name");
    const unpaired = this.unpairedIndexes();
    if (unpaired.length) {
      blockers.push(`variable ${unpaired.join(", ")} not annotated on both sides`);
    }
    if (this.entailmentIndexes().size === 0 && this.sourceIndexes().size === 0) {
      blockers.push("no variables annotated yet");
    }
    return blockers;
  }

  canSave(): boolean {
    return this.saveBlockers().length === 0;
  }

  buildRule(): RulePayload {
    return {
      id: this.id,
      name: this.name,
      reversed: this.reversed,
      pattern: clone(this.pattern),
      entailment: clone(this.template),
      examples: [{ source: this.sourceText, expect: this.entailmentText }],
    };
  }

  logTest(text: string, outcome: string): void {
    this.testLog.push({ text, outcome });
  }
}
