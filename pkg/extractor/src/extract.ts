/**
 * Entity tagging and triple extraction.
 *
 * Entities come from the configured backend: the general backend reads the
 * tagger's Person / Organization / Place / Date labels, the clinical backend
 * matches a curated gazetteer (plus dates). Triples connect adjacent entity
 * mentions within a sentence through the verb group between them: the last
 * verb's lemma plus any trailing prepositions becomes the schema-less
 * predicate, e.g. "was transferred to" -> "transfer to". Mention pairs with
 * no verb between them produce nothing.
 */

import nlp from 'compromise';

import { CLINICAL_LEXICON } from './lexicon.js';
import type { EntityMention, ExtractionConfig, FactRecord } from './types.js';

interface Term {
  text: string;
  normal: string;
  root?: string;
  tags: Set<string>;
}

interface MentionSpan {
  start: number;
  end: number; // inclusive
  text: string;
  type: string;
}

// priority order: a term belonging to several classes counts as the first
const GENERAL_TAG_TYPES: Array<[string, string]> = [
  ['Person', 'Person'],
  ['Organization', 'Organization'],
  ['Place', 'Place'],
  ['Date', 'Date'],
];

function parseSentences(text: string): Term[][] {
  if (!text.trim()) {
    return [];
  }
  const doc = nlp(text);
  doc.compute('root');
  return doc.json().map((sentence: { terms: Array<{ text: string; normal: string; root?: string; tags: string[] }> }) =>
    sentence.terms
      .filter((t) => t.normal.length > 0)
      .map((t) => ({ text: t.text, normal: t.normal, root: t.root, tags: new Set(t.tags) })),
  );
}

function termTypeGeneral(term: Term): string | undefined {
  for (const [tag, type] of GENERAL_TAG_TYPES) {
    if (term.tags.has(tag)) {
      return type;
    }
  }
  return undefined;
}

function spanText(terms: Term[], start: number, end: number): string {
  return terms
    .slice(start, end + 1)
    .map((t) => t.text)
    .join(' ');
}

function generalSpans(terms: Term[]): MentionSpan[] {
  const spans: MentionSpan[] = [];
  let i = 0;
  while (i < terms.length) {
    const type = termTypeGeneral(terms[i]);
    if (!type) {
      i += 1;
      continue;
    }
    let j = i;
    while (j + 1 < terms.length && termTypeGeneral(terms[j + 1]) === type) {
      j += 1;
    }
    spans.push({ start: i, end: j, text: spanText(terms, i, j), type });
    i = j + 1;
  }
  return spans;
}

function clinicalSpans(terms: Term[]): MentionSpan[] {
  const spans: MentionSpan[] = [];
  const taken = new Array(terms.length).fill(false);
  for (const entry of CLINICAL_LEXICON) {
    for (let i = 0; i + entry.tokens.length <= terms.length; i += 1) {
      const end = i + entry.tokens.length - 1;
      let ok = true;
      for (let k = 0; k < entry.tokens.length; k += 1) {
        if (taken[i + k] || terms[i + k].normal !== entry.tokens[k]) {
          ok = false;
          break;
        }
      }
      if (!ok) {
        continue;
      }
      for (let k = i; k <= end; k += 1) {
        taken[k] = true;
      }
      spans.push({ start: i, end, text: spanText(terms, i, end), type: entry.type });
    }
  }
  // dates still matter for clinical timelines
  for (const span of generalSpans(terms)) {
    if (span.type === 'Date' && !taken.slice(span.start, span.end + 1).some(Boolean)) {
      spans.push(span);
    }
  }
  return spans.sort((a, b) => a.start - b.start);
}

function backendSpans(terms: Term[], config: ExtractionConfig): MentionSpan[] {
  return config.backend === 'clinical' ? clinicalSpans(terms) : generalSpans(terms);
}

function normalizeTokens(surface: string): string[] {
  return nlp(surface)
    .json()
    .flatMap((s: { terms: Array<{ normal: string }> }) => s.terms.map((t) => t.normal))
    .filter((n: string) => n.length > 0);
}

/** Locate occurrences of caller-supplied entities by normalized token match. */
function locateGiven(terms: Term[], entities: EntityMention[]): MentionSpan[] {
  const wanted = entities
    .map((e) => ({ tokens: normalizeTokens(e.text), type: e.type, surface: e.text }))
    .filter((e) => e.tokens.length > 0)
    .sort((a, b) => b.tokens.length - a.tokens.length);
  const spans: MentionSpan[] = [];
  const taken = new Array(terms.length).fill(false);
  for (const entity of wanted) {
    for (let i = 0; i + entity.tokens.length <= terms.length; i += 1) {
      const end = i + entity.tokens.length - 1;
      let ok = true;
      for (let k = 0; k < entity.tokens.length; k += 1) {
        if (taken[i + k] || terms[i + k].normal !== entity.tokens[k]) {
          ok = false;
          break;
        }
      }
      if (!ok) {
        continue;
      }
      for (let k = i; k <= end; k += 1) {
        taken[k] = true;
      }
      spans.push({ start: i, end, text: spanText(terms, i, end), type: entity.type });
    }
  }
  return spans.sort((a, b) => a.start - b.start);
}

/** Predicate connecting two adjacent mentions, or undefined if no verb links them. */
function connectorPredicate(
  terms: Term[],
  left: MentionSpan,
  right: MentionSpan,
  lemmatize: boolean,
): string | undefined {
  const between = terms.slice(left.end + 1, right.start);
  if (between.length === 0) {
    return undefined;
  }
  let runEnd = -1;
  for (let i = between.length - 1; i >= 0; i -= 1) {
    if (between[i].tags.has('Verb')) {
      runEnd = i;
      break;
    }
  }
  if (runEnd < 0) {
    return undefined;
  }
  const head = between[runEnd];
  const parts: string[] = [lemmatize ? (head.root ?? head.normal) : head.normal];
  for (let i = runEnd + 1; i < between.length; i += 1) {
    const term = between[i];
    // "to" before a place parses as a conjunction, not a preposition
    if (
      term.tags.has('Preposition') ||
      term.tags.has('Particle') ||
      (term.tags.has('Conjunction') && term.normal === 'to')
    ) {
      parts.push(term.normal);
    }
  }
  return parts.join(' ');
}

/** All entity mentions in a text, one list element per occurrence. */
export function extractEntities(text: string, config: ExtractionConfig): EntityMention[] {
  const mentions: EntityMention[] = [];
  for (const terms of parseSentences(text)) {
    for (const span of backendSpans(terms, config)) {
      mentions.push({ text: span.text, type: span.type });
    }
  }
  return mentions;
}

/**
 * Triples connecting the given entities through verb groups. Entities may
 * come from extractEntities or from the caller; they are re-located in the
 * text by normalized token match, so offsets never leave this module.
 */
export function extractTriples(
  text: string,
  entities: EntityMention[],
  config: ExtractionConfig,
): FactRecord[] {
  const facts: FactRecord[] = [];
  for (const terms of parseSentences(text)) {
    const spans = locateGiven(terms, entities);
    for (let i = 0; i + 1 < spans.length; i += 1) {
      const left = spans[i];
      const right = spans[i + 1];
      const predicate = connectorPredicate(terms, left, right, config.lemmatizePredicates);
      if (!predicate) {
        continue;
      }
      facts.push({
        subject: { text: left.text, type: left.type },
        predicate,
        object: right.text,
        object_type: right.type,
      });
    }
  }
  return facts;
}
