/** JSON shapes of the taxidma API (mirrors the server contract). */

export interface TaxonomySummary {
  id: string;
  title: string;
  version: string;
}

export interface ValueNode {
  slug: string;
  title: string;
  citation?: string;
  children: ValueNode[];
}

export type FacetKind = "enumerated" | "ordinal" | "free-text";
export type Cardinality = "one" | "many";

export interface FacetDoc {
  slug: string;
  title: string;
  cardinality: Cardinality;
  kind: FacetKind;
  values: ValueNode[];
}

export interface CategoryDoc {
  slug: string;
  title: string;
  facets: FacetDoc[];
}

export interface TaxonomyDoc {
  id: string;
  version: string;
  title: string;
  categories: CategoryDoc[];
}

export interface SelectionDoc {
  facet: string;
  values: string[];
  note?: string;
  text?: string;
}

export interface BlockDoc {
  taxonomy: string;
  selections: SelectionDoc[];
}

export interface StageDoc {
  taxonomy: string;
  label: string;
  selections: SelectionDoc[];
}

export interface RecordDoc {
  record_id: string;
  title: string;
  year: number;
  sources: string[];
  background: BlockDoc;
  stages: StageDoc[];
  notes?: string;
}

export interface Defect {
  rule_id: string;
  severity: "error" | "warning";
  location: string;
  message: string;
}

export interface ValidationReport {
  record_id?: string;
  ok: boolean;
  error_count: number;
  warning_count: number;
  defects: Defect[];
}

export interface SaveResult {
  record_id: string;
  created: boolean;
  report: ValidationReport;
}

export interface HistogramDoc {
  facet: string;
  scope: string;
  taxonomy: string | null;
  total: number;
  unspecified: number;
  buckets: Record<string, number>;
}

export interface CoverageEntry {
  taxonomy: string;
  total_leaves: number;
  used_leaves: number;
  fraction: number;
  unused: string[];
}

export interface CoverageDoc {
  entries: CoverageEntry[];
}

export type CensusDoc = Record<string, number>;
