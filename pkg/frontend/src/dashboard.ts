/** Pure view-model builders for the dashboard tab. All numbers come from
 * API payloads; the client only re-derives consistency checks. */

import type { CensusDoc, CoverageDoc, CoverageEntry, HistogramDoc, TaxonomyDoc, TaxonomySummary } from "./types.js";
import { countLeaves } from "./tree.js";

export interface CensusRow {
  id: string;
  title: string;
  count: number;
}

export function censusRows(census: CensusDoc, taxonomies: TaxonomySummary[]): CensusRow[] {
  const titles = new Map(taxonomies.map((t) => [t.id, t.title]));
  const order = taxonomies.map((t) => t.id).filter((id) => id in census);
  for (const id of Object.keys(census)) {
    if (!order.includes(id)) order.push(id);
  }
  return order.map((id) => ({ id, title: titles.get(id) ?? id, count: census[id] }));
}

export interface HistogramBar {
  path: string;
  count: number;
  /** 0..1 of the tallest bucket, for bar widths. */
  share: number;
}

export function histogramBars(histogram: HistogramDoc): HistogramBar[] {
  const entries = Object.entries(histogram.buckets);
  const max = Math.max(1, histogram.unspecified, ...entries.map(([, count]) => count));
  const bars = entries.map(([path, count]) => ({ path, count, share: count / max }));
  bars.push({ path: "(unspecified)", count: histogram.unspecified, share: histogram.unspecified / max });
  return bars;
}

export interface GapItem {
  taxonomy: string;
  path: string;
}

export function gapItems(coverage: CoverageDoc): GapItem[] {
  const items: GapItem[] = [];
  for (const entry of coverage.entries) {
    for (const path of entry.unused) {
      items.push({ taxonomy: entry.taxonomy, path });
    }
  }
  return items;
}

/** Client-side cross-check: gap list length must equal total minus used,
 * and the taxonomy payload must agree about the leaf total. */
export function gapMathHolds(entry: CoverageEntry, taxonomy: TaxonomyDoc): boolean {
  return (
    entry.unused.length === entry.total_leaves - entry.used_leaves &&
    countLeaves(taxonomy) === entry.total_leaves
  );
}

export function coveragePercent(entry: CoverageEntry): string {
  return `${(entry.fraction * 100).toFixed(1)}%`;
}
