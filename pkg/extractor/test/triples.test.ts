import { describe, expect, it } from 'vitest';

import { DEFAULT_CONFIG, extractTriples } from '../dist/index.js';
import type { EntityMention, ExtractionConfig } from '../dist/index.js';

const GENERAL = DEFAULT_CONFIG;
const RAW: ExtractionConfig = { ...DEFAULT_CONFIG, lemmatizePredicates: false };

const ASPIRIN_HEADACHE: EntityMention[] = [
  { text: 'Aspirin', type: 'Drug' },
  { text: 'headache', type: 'Condition' },
];

describe('extractTriples', () => {
  it('connects two entities through a lemmatized verb', () => {
    // pinned fixture for the tagger version in the lockfile
    expect(extractTriples('Aspirin treats headache.', ASPIRIN_HEADACHE, GENERAL)).toEqual([
      {
        subject: { text: 'Aspirin', type: 'Drug' },
        predicate: 'treat',
        object: 'headache',
        object_type: 'Condition',
      },
    ]);
  });

  it('keeps surface verb forms when lemmatization is off', () => {
    const [fact] = extractTriples('Aspirin treats headache.', ASPIRIN_HEADACHE, RAW);
    expect(fact.predicate).toBe('treats');
  });

  it('appends trailing prepositions to the head verb', () => {
    const entities: EntityMention[] = [
      { text: 'David Lin', type: 'Person' },
      { text: 'County Lab', type: 'Organization' },
    ];
    const [fact] = extractTriples(
      'David Lin was transferred to County Lab.',
      entities,
      GENERAL,
    );
    expect(fact.predicate).toBe('transfer to');
  });

  it('emits nothing for a single entity', () => {
    expect(
      extractTriples('Aspirin works.', [{ text: 'Aspirin', type: 'Drug' }], GENERAL),
    ).toEqual([]);
  });

  it('emits nothing without a verbal connection', () => {
    expect(extractTriples('Aspirin and headache.', ASPIRIN_HEADACHE, GENERAL)).toEqual([]);
  });

  it('does not cross sentence boundaries', () => {
    const facts = extractTriples('Aspirin helps. It reduced headache.', ASPIRIN_HEADACHE, GENERAL);
    expect(facts).toEqual([]);
  });

  it('pairs only adjacent mentions', () => {
    const entities: EntityMention[] = [
      { text: 'Alice Raymond', type: 'Person' },
      { text: 'Acme Clinic', type: 'Organization' },
      { text: 'Monday', type: 'Date' },
    ];
    const facts = extractTriples('Alice Raymond joined Acme Clinic on Monday.', entities, GENERAL);
    expect(facts).toHaveLength(1);
    expect(facts[0].subject.text).toBe('Alice Raymond');
    expect(facts[0].predicate).toBe('join');
    expect(facts[0].object).toBe('Acme Clinic');
  });
});
