export { extractEntities, extractTriples } from './extract.js';
export { buildRecords, extractRecord, factFileLines } from './emit.js';
export { parseCsvCells, parseCsvRows, parseJsonlRows, readInputRows } from './io.js';
export { CLINICAL_LEXICON, CLINICAL_TYPES } from './lexicon.js';
export { DEFAULT_CONFIG } from './types.js';
export type {
  Backend,
  EntityMention,
  ExtractionConfig,
  FactFileRecord,
  FactRecord,
  InputRow,
} from './types.js';
