/** JSON shapes exchanged with the entailgen service. Field names mirror
 * the sentence markup tags, exactly as the server emits them. */

export type SlotKind = "noun_phrase" | "word" | "possessive";

export interface PseudoSlot {
  index: number;
  kind: SlotKind;
}

export interface HeadJson {
  word?: string;
  type?: string;
  pers?: string;
  numb?: string;
  pseudo?: PseudoSlot;
}

export interface PremJson {
  type?: string;
  word?: string;
  phrase?: NounPhraseJson;
  pseudo?: PseudoSlot;
}

export interface PrepPhraseJson {
  prep: string;
  object: NounPhraseJson;
}

export interface NounPhraseJson {
  pseudo?: PseudoSlot;
  category?: string;
  prem?: PremJson[];
  noun?: HeadJson;
  prep_phrase?: PrepPhraseJson[];
}

export interface QueryAdjJson {
  predicate_type: "query_adj";
  adj: { word: string; grad?: string; adv?: { word: string; type?: string } };
}

export type PredicateJson =
  | ({ predicate_type: "np" } & NounPhraseJson)
  | QueryAdjJson;

export interface VerbPhraseJson {
  verb_type: string;
  voice?: string;
  tense?: string;
  pers?: string;
  numb?: string;
  verb_word?: string[];
  kernel_tense?: string;
  verb_change?: boolean;
  predicate?: PredicateJson;
  direct_object?: NounPhraseJson;
}

export interface CircumJson {
  circum_type: "prep_phrase" | "adverbial";
  prep_phrase?: PrepPhraseJson;
  word?: string;
}

export interface SentenceJson {
  mood: string;
  complexity: string;
  subject: NounPhraseJson;
  verb_phrase: VerbPhraseJson;
  circum?: CircumJson[];
}

export interface RuleExampleJson {
  source: string;
  expect: string;
}

export interface RuleJson {
  id: number;
  name: string;
  reversed: number | null;
  pattern: SentenceJson;
  entailment: SentenceJson;
  examples: RuleExampleJson[];
  patternNlml?: string;
  entailmentNlml?: string;
}

export interface Finding {
  code: string;
  detail: string;
}

export interface ParseResponse {
  sentence: SentenceJson;
  realized: string;
  nlml: string;
}

export interface BindingEntry {
  kind: SlotKind;
  text: string;
  word?: string;
  phrase?: NounPhraseJson;
}

export interface RuleTestResponse {
  rule: RuleJson;
  findings: Finding[];
  match?: { binding: Record<string, BindingEntry>; sourceTense?: string } | null;
  failedAt?: string;
  entailment?: { text: string; sentence: SentenceJson; nlml: string };
}

export interface EntailResult {
  text: string;
  derivation: Array<number | string>;
  depth: number;
}
