/** Render a parsed sentence as a clickable constituent tree. */

import type {
  CircumJson, NounPhraseJson, PremJson, SentenceJson,
} from "./types.js";
import type { InnerStep, NpPath, RootStep } from "./draft.js";

export interface TreeHandlers {
  onNpClick(path: NpPath, element: HTMLElement): void;
  onPossessivePremClick(path: NpPath, premIndex: number,
                        element: HTMLElement): void;
  onVerbClick(element: HTMLElement): void;
}

function el(tag: string, className: string, text?: string): HTMLElement {
  const node = document.createElement(tag);
  node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function premLabel(prem: PremJson): string {
  if (prem.pseudo) return `[${prem.pseudo.index}]`;
  if (prem.word !== undefined) return prem.word;
  return "…'s";
}

function renderNp(np: NounPhraseJson, path: NpPath,
                  handlers: TreeHandlers): HTMLElement {
  const box = el("span", "np");
  box.dataset.path = JSON.stringify(path);

  if (np.pseudo) {
    const slot = el("span", "slot", `⟨${np.pseudo.index}⟩`);
    box.appendChild(slot);
    if (np.category) box.appendChild(el("span", "category", `:${np.category}`));
  } else {
    np.prem?.forEach((prem, i) => {
      if (prem.phrase) {
        const inner = renderNp(prem.phrase,
                               [...path, ["prem", i] as InnerStep] as NpPath,
                               handlers);
        inner.classList.add("genitive");
        box.appendChild(inner);
        box.appendChild(el("span", "mark", "'s"));
      } else if (prem.type === "possessive" && (prem.word || prem.pseudo)) {
        const chip = el("span", "prem possessive", premLabel(prem));
        chip.addEventListener("click", (event) => {
          event.stopPropagation();
          handlers.onPossessivePremClick(path, i, chip);
        });
        box.appendChild(chip);
      } else {
        box.appendChild(el("span", "prem", premLabel(prem)));
      }
    });
    if (np.noun) {
      const head = np.noun.pseudo
        ? `⟨${np.noun.pseudo.index}:word⟩`
        : np.noun.word ?? "?";
      box.appendChild(el("span", "head", head));
    }
    if (np.category) box.appendChild(el("span", "category", `:${np.category}`));
    np.prep_phrase?.forEach((pp, i) => {
      box.appendChild(el("span", "prep", pp.prep));
      box.appendChild(renderNp(pp.object,
                               [...path, ["pp", i] as InnerStep] as NpPath,
                               handlers));
    });
  }

  box.addEventListener("click", (event) => {
    event.stopPropagation();
    handlers.onNpClick(path, box);
  });
  return box;
}

function renderCircum(circ: CircumJson, index: number,
                      handlers: TreeHandlers): HTMLElement {
  const box = el("span", "circum");
  if (circ.circum_type === "adverbial") {
    box.appendChild(el("span", "adverbial", circ.word ?? ""));
  } else if (circ.prep_phrase) {
    box.appendChild(el("span", "prep", circ.prep_phrase.prep));
    box.appendChild(renderNp(circ.prep_phrase.object,
                             [["circum", index] as RootStep], handlers));
  }
  return box;
}

export function renderSentenceTree(sentence: SentenceJson,
                                   handlers: TreeHandlers): HTMLElement {
  const root = el("div", "sentence-tree");
  root.appendChild(el("span", "mood", sentence.mood));

  const subject = el("div", "constituent");
  subject.appendChild(el("span", "role", "subject"));
  subject.appendChild(renderNp(sentence.subject, ["subject"], handlers));
  root.appendChild(subject);

  const vp = sentence.verb_phrase;
  const verb = el("div", "constituent");
  verb.appendChild(el("span", "role", "verb"));
  const group = el("span", "verb-group",
                   vp.verb_change ? "⟲ rebuilt" : (vp.verb_word ?? []).join(" "));
  group.addEventListener("click", (event) => {
    event.stopPropagation();
    handlers.onVerbClick(group);
  });
  verb.appendChild(group);
  verb.appendChild(el("span", "features",
                      [vp.verb_type, vp.tense, vp.pers, vp.numb]
                        .filter(Boolean).join(" · ")));
  root.appendChild(verb);

  if (vp.predicate) {
    const predicate = el("div", "constituent");
    predicate.appendChild(el("span", "role", "predicate"));
    if (vp.predicate.predicate_type === "np") {
      predicate.appendChild(
        renderNp(vp.predicate as unknown as NounPhraseJson, ["predicate"],
                 handlers));
    } else {
      const adj = vp.predicate.adj;
      predicate.appendChild(el("span", "adj",
                               [adj.adv?.word, adj.word].filter(Boolean).join(" ")));
    }
    root.appendChild(predicate);
  }
  if (vp.direct_object) {
    const object = el("div", "constituent");
    object.appendChild(el("span", "role", "object"));
    object.appendChild(renderNp(vp.direct_object, ["direct_object"], handlers));
    root.appendChild(object);
  }
  sentence.circum?.forEach((circ, i) => {
    const holder = el("div", "constituent");
    holder.appendChild(el("span", "role", "circumstance"));
    holder.appendChild(renderCircum(circ, i, handlers));
    root.appendChild(holder);
  });
  return root;
}
