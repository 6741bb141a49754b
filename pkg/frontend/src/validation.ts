/** Maps server validation defects onto editor widgets.
 *
 * Defect locations look like "record-id:background:attack/type/active" or
 * "record-id:stage[2]:identity/permissions"; the widget key is the block
 * plus the first two path segments (the facet path). */

import type { Defect } from "./types.js";

export type BlockRef = "background" | number;

export interface ParsedLocation {
  recordId: string | null;
  block: BlockRef | null;
  facet: string | null;
}

const STAGE_RE = /^stage\[(\d+)\]$/;

export function parseLocation(location: string): ParsedLocation {
  const parts = location.split(":");
  if (parts.length < 2) {
    return { recordId: null, block: null, facet: null };
  }
  const [recordId, scope, ...rest] = parts;
  let block: BlockRef | null = null;
  if (scope === "background") {
    block = "background";
  } else {
    const match = STAGE_RE.exec(scope);
    if (match) block = Number(match[1]);
  }
  const path = rest.join(":");
  const segments = path.split("/").filter((s) => s !== "");
  const facet = segments.length >= 2 ? segments.slice(0, 2).join("/") : null;
  return { recordId, block, facet };
}

export function widgetKey(block: BlockRef, facet: string): string {
  return `${block === "background" ? "background" : `stage${block}`}:${facet}`;
}

/** Groups defects by widget key; defects without a facet go under "record". */
export function defectsByWidget(defects: Defect[]): Map<string, Defect[]> {
  const grouped = new Map<string, Defect[]>();
  for (const defect of defects) {
    const where = parseLocation(defect.location);
    const key =
      where.block !== null && where.facet !== null ? widgetKey(where.block, where.facet) : "record";
    const bucket = grouped.get(key) ?? [];
    bucket.push(defect);
    grouped.set(key, bucket);
  }
  return grouped;
}
