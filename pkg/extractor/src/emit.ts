/**
 * Assembly of engine-ready fact-file records and line-delimited output.
 *
 * The scoring engine deduplicates facts with a warning; to keep emitted
 * files warning-free the adapter deduplicates up front using the engine's
 * equality notion (case-folded, whitespace-collapsed subject/predicate/
 * object). Entity mentions that ended up in no triple are carried in the
 * record's "entities" array so they still count toward type statistics.
 */

import { extractEntities, extractTriples } from './extract.js';
import type { EntityMention, ExtractionConfig, FactFileRecord, FactRecord, InputRow } from './types.js';

function normalKey(value: string): string {
  return value.toLowerCase().split(/\s+/).filter(Boolean).join(' ');
}

function dedupeFacts(facts: FactRecord[]): FactRecord[] {
  const seen = new Set<string>();
  const kept: FactRecord[] = [];
  for (const fact of facts) {
    const key = JSON.stringify([normalKey(fact.subject.text), normalKey(fact.predicate), normalKey(fact.object)]);
    if (!seen.has(key)) {
      seen.add(key);
      kept.push(fact);
    }
  }
  return kept;
}

/** Extract one (document, side[, model]) record from raw text. */
export function extractRecord(
  docId: string,
  side: 'source' | 'target',
  model: string | undefined,
  text: string,
  config: ExtractionConfig,
): FactFileRecord {
  const mentions = extractEntities(text, config);
  const facts = dedupeFacts(extractTriples(text, mentions, config));
  const used = new Set<string>();
  for (const fact of facts) {
    used.add(normalKey(fact.subject.text));
    used.add(normalKey(fact.object));
  }
  const unused = mentions.filter((m) => !used.has(normalKey(m.text)));
  const record: FactFileRecord = { doc_id: docId, side, facts };
  if (model !== undefined) {
    record.model = model;
  }
  if (unused.length > 0) {
    record.entities = unused;
  }
  return record;
}

/** Group input rows by document and extract every record, in input order. */
export function buildRecords(rows: InputRow[], config: ExtractionConfig): FactFileRecord[] {
  const sourceText = new Map<string, string>();
  const modelsSeen = new Map<string, Set<string>>();
  const docOrder: string[] = [];
  for (const row of rows) {
    const known = sourceText.get(row.doc_id);
    if (known === undefined) {
      sourceText.set(row.doc_id, row.source_text);
      modelsSeen.set(row.doc_id, new Set());
      docOrder.push(row.doc_id);
    } else if (known !== row.source_text) {
      throw new Error(`doc '${row.doc_id}': conflicting source_text between rows`);
    }
    const seen = modelsSeen.get(row.doc_id)!;
    if (seen.has(row.model)) {
      throw new Error(`doc '${row.doc_id}': duplicate rows for model '${row.model}'`);
    }
    seen.add(row.model);
  }

  const records: FactFileRecord[] = [];
  for (const docId of docOrder) {
    records.push(extractRecord(docId, 'source', undefined, sourceText.get(docId)!, config));
    for (const row of rows) {
      if (row.doc_id === docId) {
        records.push(extractRecord(docId, 'target', row.model, row.target_text, config));
      }
    }
  }
  return records;
}

const RECORD_KEY_ORDER: Array<keyof FactFileRecord> = ['doc_id', 'side', 'model', 'entities', 'facts'];

/** Serialize records as UTF-8 line-delimited JSON with a stable key order. */
export function factFileLines(records: FactFileRecord[]): string {
  const lines = records.map((record) => {
    const ordered: Record<string, unknown> = {};
    for (const key of RECORD_KEY_ORDER) {
      if (record[key] !== undefined) {
        ordered[key] = record[key];
      }
    }
    return JSON.stringify(ordered);
  });
  return lines.join('\n') + '\n';
}
