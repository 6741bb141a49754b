/** Pure draft-record operations shared by the editor and its tests.
 *
 * A draft always serializes to a schema-valid document: empty selections
 * are dropped on serialization, field order is fixed, and stage arrays
 * stay dense. */

import type { BlockDoc, Cardinality, RecordDoc, SelectionDoc, StageDoc } from "./types.js";

export function cloneRecord(doc: RecordDoc): RecordDoc {
  return JSON.parse(JSON.stringify(doc)) as RecordDoc;
}

export function emptyRecord(): RecordDoc {
  return {
    record_id: "",
    title: "",
    year: new Date().getFullYear(),
    sources: [],
    background: { taxonomy: "background", selections: [] },
    stages: [],
    notes: "",
  };
}

export function getSelection(block: BlockDoc | StageDoc, facet: string): SelectionDoc | undefined {
  return block.selections.find((s) => s.facet === facet);
}

function upsert(block: BlockDoc | StageDoc, facet: string): SelectionDoc {
  let selection = getSelection(block, facet);
  if (!selection) {
    selection = { facet, values: [] };
    block.selections.push(selection);
    block.selections.sort((a, b) => (a.facet < b.facet ? -1 : a.facet > b.facet ? 1 : 0));
  }
  return selection;
}

/** Checkbox semantics for many-cardinality facets; radio semantics otherwise. */
export function toggleValue(
  block: BlockDoc | StageDoc,
  facet: string,
  valuePath: string,
  cardinality: Cardinality,
): void {
  const selection = upsert(block, facet);
  const index = selection.values.indexOf(valuePath);
  if (cardinality === "one") {
    selection.values = index >= 0 ? [] : [valuePath];
  } else if (index >= 0) {
    selection.values.splice(index, 1);
  } else {
    selection.values.push(valuePath);
    selection.values.sort();
  }
}

export function setText(block: BlockDoc | StageDoc, facet: string, text: string): void {
  const selection = upsert(block, facet);
  selection.text = text;
}

export function setNote(block: BlockDoc | StageDoc, facet: string, note: string): void {
  const selection = upsert(block, facet);
  if (note) {
    selection.note = note;
  } else {
    delete selection.note;
  }
}

export function clearSelection(block: BlockDoc | StageDoc, facet: string): void {
  const index = block.selections.findIndex((s) => s.facet === facet);
  if (index >= 0) block.selections.splice(index, 1);
}

export function addStage(doc: RecordDoc, taxonomy: string, label = ""): void {
  doc.stages.push({ taxonomy, label, selections: [] });
}

export function removeStage(doc: RecordDoc, index: number): void {
  doc.stages.splice(index, 1);
}

export function moveStage(doc: RecordDoc, index: number, delta: -1 | 1): void {
  const target = index + delta;
  if (target < 0 || target >= doc.stages.length) return;
  const [stage] = doc.stages.splice(index, 1);
  doc.stages.splice(target, 0, stage);
}

function liveSelections(selections: SelectionDoc[]): SelectionDoc[] {
  return selections
    .filter((s) => s.values.length > 0 || (s.text !== undefined && s.text !== ""))
    .map((s) => {
      const out: SelectionDoc = { facet: s.facet, values: [...s.values].sort() };
      if (s.note) out.note = s.note;
      if (s.text !== undefined && s.text !== "") out.text = s.text;
      return out;
    });
}

/** Document ready for POST /validate or PUT /records: empty selections
 * dropped, keys in canonical order, notes omitted when blank. */
export function serializeDraft(doc: RecordDoc): RecordDoc {
  const out: RecordDoc = {
    record_id: doc.record_id,
    title: doc.title,
    year: doc.year,
    sources: doc.sources.filter((s) => s.trim() !== ""),
    background: {
      taxonomy: doc.background.taxonomy,
      selections: liveSelections(doc.background.selections),
    },
    stages: doc.stages.map((stage) => ({
      taxonomy: stage.taxonomy,
      label: stage.label,
      selections: liveSelections(stage.selections),
    })),
  };
  if (doc.notes) out.notes = doc.notes;
  return out;
}

export function deepEqual(a: unknown, b: unknown): boolean {
  return JSON.stringify(a) === JSON.stringify(b);
}

/** True when saving the draft would change the stored document. */
export function isDirtyAgainst(draft: RecordDoc, stored: RecordDoc): boolean {
  return !deepEqual(serializeDraft(draft), serializeDraft(stored));
}
