/** Payload shapes served by the authoring backend. */

export interface EnvelopeToken {
  id: number;
  surface: string;
  lemma: string;
  upos: string;
  xpos: string;
  head: number;
  deprel: string;
  ne: string;
  upos_alternatives: [string, number][];
  xpos_alternatives: [string, number][];
}

export interface EnvelopeParse {
  confidence: number;
  tokens: EnvelopeToken[];
}

export interface Violation {
  property: number;
  token: number;
  detail: string;
  message: string;
}

export interface RoleSlot {
  rid: number;
  role: string;
  lemma: string;
  synset: string | null;
}

export interface Fact {
  fid: number;
  frame: string;
  roles: RoleSlot[];
}

export interface TraceEntry {
  rule: string;
  tokens: number[];
  edges_removed: [number, number, string][];
  edges_added: [number, number, string][];
  tokens_removed: number[];
  fields_set: Record<string, Record<string, string>>;
}

export interface AppliedFix {
  token: number;
  kind: string;
  old: string;
  new: string;
}

export interface AuthorResponse {
  status: "ok" | "rejected" | "error" | "unknown_sentence";
  sentence_id?: number;
  text?: string;
  connective?: string;
  ulr?: string;
  facts?: Fact[];
  violations?: Violation[];
  error?: string | null;
  token_facts?: string;
  trace?: TraceEntry[];
  correction?: string;
  applied_fixes?: AppliedFix[];
  parse?: EnvelopeParse;
  message?: string;
}
