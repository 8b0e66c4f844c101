/**
 * Input readers: line-delimited JSON or CSV, both carrying
 * {doc_id, source_text, model, target_text} rows.
 */

import { readFileSync } from 'node:fs';

import type { InputRow } from './types.js';

const REQUIRED = ['doc_id', 'source_text', 'model', 'target_text'] as const;

function validateRow(obj: Record<string, unknown>, where: string): InputRow {
  for (const key of REQUIRED) {
    const value = obj[key];
    if (typeof value !== 'string' || value.trim() === '') {
      throw new Error(`${where}: field '${key}' must be a non-empty string`);
    }
  }
  return {
    doc_id: obj.doc_id as string,
    source_text: obj.source_text as string,
    model: obj.model as string,
    target_text: obj.target_text as string,
  };
}

export function parseJsonlRows(text: string, sourceName = '<input>'): InputRow[] {
  const rows: InputRow[] = [];
  text.split('\n').forEach((line, index) => {
    if (!line.trim()) {
      return;
    }
    let obj: unknown;
    try {
      obj = JSON.parse(line);
    } catch (err) {
      throw new Error(`${sourceName}: line ${index + 1}: invalid JSON: ${(err as Error).message}`);
    }
    if (typeof obj !== 'object' || obj === null || Array.isArray(obj)) {
      throw new Error(`${sourceName}: line ${index + 1}: record must be a JSON object`);
    }
    rows.push(validateRow(obj as Record<string, unknown>, `${sourceName}: line ${index + 1}`));
  });
  return rows;
}

/** Minimal RFC 4180 reader: quoted fields, escaped quotes, embedded newlines. */
export function parseCsvCells(text: string): string[][] {
  const records: string[][] = [];
  let row: string[] = [];
  let cell = '';
  let quoted = false;
  let i = 0;
  const pushCell = () => {
    row.push(cell);
    cell = '';
  };
  const pushRow = () => {
    pushCell();
    records.push(row);
    row = [];
  };
  while (i < text.length) {
    const ch = text[i];
    if (quoted) {
      if (ch === '"') {
        if (text[i + 1] === '"') {
          cell += '"';
          i += 2;
          continue;
        }
        quoted = false;
        i += 1;
        continue;
      }
      cell += ch;
      i += 1;
      continue;
    }
    if (ch === '"' && cell === '') {
      quoted = true;
      i += 1;
    } else if (ch === ',') {
      pushCell();
      i += 1;
    } else if (ch === '\r' && text[i + 1] === '\n') {
      pushRow();
      i += 2;
    } else if (ch === '\n') {
      pushRow();
      i += 1;
    } else {
      cell += ch;
      i += 1;
    }
  }
  if (quoted) {
    throw new Error('unterminated quoted CSV field');
  }
  if (cell !== '' || row.length > 0) {
    pushRow();
  }
  return records.filter((r) => !(r.length === 1 && r[0] === ''));
}

export function parseCsvRows(text: string, sourceName = '<input>'): InputRow[] {
  const cells = parseCsvCells(text);
  if (cells.length === 0) {
    return [];
  }
  const header = cells[0];
  return cells.slice(1).map((record, index) => {
    const where = `${sourceName}: row ${index + 2}`;
    if (record.length !== header.length) {
      throw new Error(`${where}: expected ${header.length} fields, got ${record.length}`);
    }
    const obj: Record<string, string> = {};
    header.forEach((name, col) => {
      obj[name] = record[col];
    });
    return validateRow(obj, where);
  });
}

export function readInputRows(path: string): InputRow[] {
  const text = readFileSync(path, 'utf-8');
  return path.endsWith('.csv') ? parseCsvRows(text, path) : parseJsonlRows(text, path);
}
