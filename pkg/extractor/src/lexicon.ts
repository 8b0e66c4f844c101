/**
 * Gazetteer for the clinical backend: a small curated inventory keyed by
 * normalized token sequences. Deterministic by construction, so pinned
 * versions of this file double as the backend "model version".
 */

export const CLINICAL_TYPES = ['Diagnosis', 'Medication', 'Procedure', 'Treatment', 'Anatomy'] as const;

const LEXICON_SOURCE: Record<(typeof CLINICAL_TYPES)[number], string[]> = {
  Medication: [
    'aspirin',
    'metformin',
    'lisinopril',
    'atorvastatin',
    'amoxicillin',
    'insulin',
    'warfarin',
    'ibuprofen',
    'heparin',
    'furosemide',
    'prednisone',
    'omeprazole',
  ],
  Diagnosis: [
    'pneumonia',
    'hypertension',
    'headache',
    'sepsis',
    'type 2 diabetes',
    'diabetes',
    'asthma',
    'migraine',
    'anemia',
    'atrial fibrillation',
    'heart failure',
    'kidney injury',
    'high cholesterol',
    'copd',
    'stroke',
  ],
  Procedure: [
    'chest x-ray',
    'chest x ray',
    'mri scan',
    'ct scan',
    'blood panel',
    'dialysis',
    'intubation',
    'endoscopy',
    'biopsy',
    'echocardiogram',
  ],
  Treatment: [
    'physical therapy',
    'oxygen therapy',
    'chemotherapy',
    'iv fluids',
    'bed rest',
    'antibiotic course',
  ],
  Anatomy: ['lung', 'lungs', 'heart', 'kidney', 'liver', 'abdomen', 'chest', 'left leg', 'right arm'],
};

export interface LexiconEntry {
  tokens: string[];
  type: string;
}

/** Entries sorted longest first so greedy matching prefers the most specific term. */
export const CLINICAL_LEXICON: LexiconEntry[] = Object.entries(LEXICON_SOURCE)
  .flatMap(([type, phrases]) => phrases.map((phrase) => ({ tokens: phrase.split(' '), type })))
  .sort((a, b) => b.tokens.length - a.tokens.length || a.tokens.join(' ').localeCompare(b.tokens.join(' ')));
