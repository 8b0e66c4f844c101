/**
 * Shared record shapes: the rows the adapter consumes and the fact-file
 * records it emits for the scoring engine.
 */

export type Backend = 'general' | 'clinical';

export interface ExtractionConfig {
  backend: Backend;
  /** Lemmatize predicate head verbs (default). Raw surface forms otherwise. */
  lemmatizePredicates: boolean;
  /** Opaque label describing the tagging model in use; recorded, never interpreted. */
  modelLabel: string;
}

export const DEFAULT_CONFIG: ExtractionConfig = {
  backend: 'general',
  lemmatizePredicates: true,
  modelLabel: 'compromise@14.16.0',
};

/** One entity mention: surface form plus the backend's type label. */
export interface EntityMention {
  text: string;
  type: string;
}

export interface FactRecord {
  subject: { text: string; type: string };
  predicate: string;
  object: string;
  object_type?: string;
}

/** One line of the engine's fact file format. */
export interface FactFileRecord {
  doc_id: string;
  side: 'source' | 'target';
  model?: string;
  entities?: EntityMention[];
  facts: FactRecord[];
}

/** One row of the adapter's input: a document's source text and one model's summary. */
export interface InputRow {
  doc_id: string;
  source_text: string;
  model: string;
  target_text: string;
}
