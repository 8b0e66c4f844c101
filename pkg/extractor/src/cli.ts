#!/usr/bin/env node
/**
 * Adapter command line: turn raw source/target texts into the engine's
 * fact file format.
 *
 *   fact-extractor extract --backend general --input texts.jsonl --output facts.jsonl
 */

import { writeFileSync } from 'node:fs';
import { parseArgs } from 'node:util';

import { buildRecords, factFileLines } from './emit.js';
import { readInputRows } from './io.js';
import { DEFAULT_CONFIG, type Backend, type ExtractionConfig } from './types.js';

const USAGE = `usage: fact-extractor extract --input <texts.jsonl|csv> [options]

options:
  --backend <general|clinical>  entity type inventory (default general)
  --input <path>                JSONL or CSV of {doc_id, source_text, model, target_text}
  --output <path>               fact file destination, '-' for stdout (default -)
  --raw-predicates              keep surface verb forms instead of lemmatizing
  --model-label <label>         opaque label recorded for the tagging model
  --help                        show this message
`;

export function runExtract(values: {
  backend: string;
  input: string;
  output: string;
  rawPredicates: boolean;
  modelLabel: string;
}): void {
  if (values.backend !== 'general' && values.backend !== 'clinical') {
    throw new Error(`unknown backend '${values.backend}' (use general or clinical)`);
  }
  const config: ExtractionConfig = {
    backend: values.backend as Backend,
    lemmatizePredicates: !values.rawPredicates,
    modelLabel: values.modelLabel,
  };
  const rows = readInputRows(values.input);
  if (rows.length === 0) {
    throw new Error(`${values.input}: no input rows`);
  }
  const text = factFileLines(buildRecords(rows, config));
  if (values.output === '-') {
    process.stdout.write(text);
  } else {
    writeFileSync(values.output, text, 'utf-8');
  }
}

export function main(args: string[]): number {
  let parsed;
  try {
    parsed = parseArgs({
      args,
      allowPositionals: true,
      options: {
        backend: { type: 'string', default: 'general' },
        input: { type: 'string' },
        output: { type: 'string', default: '-' },
        'raw-predicates': { type: 'boolean', default: false },
        'model-label': { type: 'string', default: DEFAULT_CONFIG.modelLabel },
        help: { type: 'boolean', default: false },
      },
    });
  } catch (err) {
    process.stderr.write(`error: ${(err as Error).message}\n`);
    return 1;
  }
  if (parsed.values.help) {
    process.stdout.write(USAGE);
    return 0;
  }
  const [command] = parsed.positionals;
  if (command !== 'extract') {
    process.stderr.write(`error: unknown command '${command ?? ''}' (expected 'extract')\n`);
    return 1;
  }
  if (!parsed.values.input) {
    process.stderr.write('error: --input is required\n');
    return 1;
  }
  try {
    runExtract({
      backend: parsed.values.backend!,
      input: parsed.values.input,
      output: parsed.values.output!,
      rawPredicates: parsed.values['raw-predicates']!,
      modelLabel: parsed.values['model-label']!,
    });
  } catch (err) {
    process.stderr.write(`error: ${(err as Error).message}\n`);
    return 1;
  }
  return 0;
}

const invokedDirectly =
  process.argv[1]?.endsWith('cli.js') || process.argv[1]?.endsWith('fact-extractor');
if (invokedDirectly) {
  process.exit(main(process.argv.slice(2)));
}
