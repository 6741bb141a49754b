/** Record editor: facet widgets driven by the loaded taxonomy set, live
 * server-side validation, explicit save. The client renders defects; it
 * never computes its own validation verdicts. */

import { ApiClient, ApiError } from "./api.js";
import { latestWins } from "./debounce.js";
import {
  addStage,
  clearSelection,
  cloneRecord,
  emptyRecord,
  getSelection,
  isDirtyAgainst,
  moveStage,
  removeStage,
  serializeDraft,
  setNote,
  setText,
  toggleValue,
} from "./records.js";
import { defectsByWidget, widgetKey } from "./validation.js";
import type { BlockRef } from "./validation.js";
import { flattenValues } from "./tree.js";
import type {
  BlockDoc,
  FacetDoc,
  RecordDoc,
  StageDoc,
  TaxonomyDoc,
  TaxonomySummary,
  ValidationReport,
} from "./types.js";

const DRAFT_KEY = "taxidma:editor-draft";

export class EditorView {
  readonly root = document.createElement("section");
  private picker = document.createElement("select");
  private saveButton = document.createElement("button");
  private status = document.createElement("span");
  private recordHost = document.createElement("div");
  private defectHosts = new Map<string, HTMLElement>();
  private recordDefects = document.createElement("div");

  private draft: RecordDoc = emptyRecord();
  private stored: RecordDoc = emptyRecord();
  private report: ValidationReport | null = null;
  private readonly validator = latestWins(
    (doc: RecordDoc) => this.api.validate(doc),
    350,
    (report) => this.applyReport(report),
    (error) => this.showError(error),
  );

  constructor(
    private readonly api: ApiClient,
    private readonly taxonomies: TaxonomySummary[],
    private readonly taxonomyDocs: Map<string, TaxonomyDoc>,
  ) {
    this.root.className = "editor";
    this.root.append(this.buildToolbar(), this.recordDefects, this.recordHost);
    this.recordDefects.className = "defects record-defects";
    const saved = localStorage.getItem(DRAFT_KEY);
    if (saved) {
      try {
        this.draft = JSON.parse(saved) as RecordDoc;
        this.setStatus("restored local draft");
      } catch {
        localStorage.removeItem(DRAFT_KEY);
      }
    }
    this.renderRecord();
    this.scheduleValidation();
  }

  async show(): Promise<void> {
    const ids = await this.api.recordIds();
    const current = this.picker.value;
    this.picker.textContent = "";
    const placeholder = document.createElement("option");
    placeholder.value = "";
    placeholder.textContent = "load a record…";
    this.picker.appendChild(placeholder);
    for (const id of ids) {
      const option = document.createElement("option");
      option.value = id;
      option.textContent = id;
      this.picker.appendChild(option);
    }
    this.picker.value = current;
  }

  private buildToolbar(): HTMLElement {
    const bar = document.createElement("div");
    bar.className = "toolbar";

    this.picker.onchange = () => {
      if (this.picker.value) void this.loadRecord(this.picker.value);
    };

    const fresh = document.createElement("button");
    fresh.textContent = "New record";
    fresh.onclick = () => {
      this.draft = emptyRecord();
      this.stored = emptyRecord();
      this.afterEdit(true);
      this.setStatus("new draft");
    };

    const discard = document.createElement("button");
    discard.textContent = "Discard draft";
    discard.onclick = () => {
      localStorage.removeItem(DRAFT_KEY);
      this.draft = cloneRecord(this.stored);
      this.afterEdit(true);
      this.setStatus("draft discarded");
    };

    this.saveButton.textContent = "Save";
    this.saveButton.onclick = () => void this.save();
    this.status.className = "status";

    bar.append(this.picker, fresh, discard, this.saveButton, this.status);
    return bar;
  }

  private async loadRecord(recordId: string): Promise<void> {
    try {
      const doc = await this.api.record(recordId);
      this.stored = cloneRecord(doc);
      this.draft = cloneRecord(doc);
      this.afterEdit(true);
      this.setStatus(`loaded ${recordId}`);
    } catch (error) {
      this.showError(error);
    }
  }

  private async save(): Promise<void> {
    try {
      const doc = serializeDraft(this.draft);
      const result = await this.api.saveRecord(doc, true);
      this.stored = cloneRecord(doc);
      localStorage.removeItem(DRAFT_KEY);
      this.applyReport(result.report);
      this.setStatus(result.created ? `created ${doc.record_id}` : `saved ${doc.record_id}`);
      void this.show();
    } catch (error) {
      if (error instanceof ApiError && error.report) this.applyReport(error.report);
      this.showError(error);
    }
  }

  private afterEdit(structural = false): void {
    localStorage.setItem(DRAFT_KEY, JSON.stringify(this.draft));
    if (structural) this.renderRecord();
    this.scheduleValidation();
    this.updateSaveState();
  }

  private scheduleValidation(): void {
    this.validator.schedule(serializeDraft(this.draft));
  }

  private updateSaveState(): void {
    const hasErrors = this.report !== null && this.report.error_count > 0;
    const dirty = isDirtyAgainst(this.draft, this.stored);
    this.saveButton.disabled = hasErrors || !this.draft.record_id || !dirty;
    this.saveButton.title = hasErrors ? "fix validation errors first" : "";
  }

  private applyReport(report: ValidationReport): void {
    this.report = report;
    for (const host of this.defectHosts.values()) host.textContent = "";
    this.recordDefects.textContent = "";
    const grouped = defectsByWidget(report.defects);
    for (const [key, defects] of grouped) {
      const host = key === "record" ? this.recordDefects : this.defectHosts.get(key);
      if (!host) continue;
      for (const defect of defects) {
        const line = document.createElement("div");
        line.className = `defect ${defect.severity}`;
        line.textContent = `${defect.severity} ${defect.rule_id}: ${defect.message}`;
        host.appendChild(line);
      }
    }
    this.updateSaveState();
  }

  private showError(error: unknown): void {
    const message = error instanceof Error ? error.message : String(error);
    this.setStatus(`error: ${message}`);
  }

  private setStatus(text: string): void {
    this.status.textContent = text;
  }

  // --- rendering -------------------------------------------------------

  private renderRecord(): void {
    this.recordHost.textContent = "";
    this.defectHosts.clear();
    this.recordHost.append(
      this.metadataSection(),
      this.blockSection("Background", "background", this.draft.background),
      this.stagesSection(),
    );
    this.updateSaveState();
  }

  private metadataSection(): HTMLElement {
    const section = document.createElement("fieldset");
    const legend = document.createElement("legend");
    legend.textContent = "Record";
    section.appendChild(legend);

    section.append(
      this.textField("Record id", this.draft.record_id, (v) => {
        this.draft.record_id = v.trim().toLowerCase();
        this.afterEdit();
      }),
      this.textField("Title", this.draft.title, (v) => {
        this.draft.title = v;
        this.afterEdit();
      }),
      this.textField("Year", String(this.draft.year), (v) => {
        const year = Number.parseInt(v, 10);
        if (!Number.isNaN(year)) this.draft.year = year;
        this.afterEdit();
      }),
      this.textField("Sources (one per line)", this.draft.sources.join("\n"), (v) => {
        this.draft.sources = v.split("\n").map((s) => s.trim()).filter((s) => s !== "");
        this.afterEdit();
      }, true),
      this.textField("Notes", this.draft.notes ?? "", (v) => {
        this.draft.notes = v;
        this.afterEdit();
      }, true),
    );
    return section;
  }

  private textField(
    label: string,
    value: string,
    onInput: (value: string) => void,
    multiline = false,
  ): HTMLElement {
    const wrap = document.createElement("label");
    wrap.className = "field";
    const caption = document.createElement("span");
    caption.textContent = label;
    const input = multiline ? document.createElement("textarea") : document.createElement("input");
    input.value = value;
    input.oninput = () => onInput(input.value);
    wrap.append(caption, input);
    return wrap;
  }

  private stagesSection(): HTMLElement {
    const section = document.createElement("div");
    section.className = "stages";
    const heading = document.createElement("h2");
    heading.textContent = "Stages";
    section.appendChild(heading);

    this.draft.stages.forEach((stage, index) => {
      section.appendChild(this.stageCard(stage, index));
    });

    const adder = document.createElement("div");
    adder.className = "stage-adder";
    const select = document.createElement("select");
    for (const summary of this.taxonomies.filter((t) => t.id !== "background")) {
      const option = document.createElement("option");
      option.value = summary.id;
      option.textContent = summary.title;
      select.appendChild(option);
    }
    const add = document.createElement("button");
    add.textContent = "Add stage";
    add.onclick = () => {
      addStage(this.draft, select.value);
      this.afterEdit(true);
    };
    adder.append(select, add);
    section.appendChild(adder);
    return section;
  }

  private stageCard(stage: StageDoc, index: number): HTMLElement {
    const taxonomy = this.taxonomyDocs.get(stage.taxonomy);
    const card = document.createElement("fieldset");
    card.className = "stage";
    const legend = document.createElement("legend");
    legend.textContent = `Stage ${index + 1}: ${taxonomy?.title ?? stage.taxonomy}`;
    card.appendChild(legend);

    const controls = document.createElement("div");
    controls.className = "stage-controls";
    const up = document.createElement("button");
    up.textContent = "↑";
    up.disabled = index === 0;
    up.onclick = () => {
      moveStage(this.draft, index, -1);
      this.afterEdit(true);
    };
    const down = document.createElement("button");
    down.textContent = "↓";
    down.disabled = index === this.draft.stages.length - 1;
    down.onclick = () => {
      moveStage(this.draft, index, 1);
      this.afterEdit(true);
    };
    const drop = document.createElement("button");
    drop.textContent = "Remove";
    drop.onclick = () => {
      removeStage(this.draft, index);
      this.afterEdit(true);
    };
    controls.append(up, down, drop);
    card.appendChild(controls);

    card.appendChild(
      this.textField("Label", stage.label, (v) => {
        stage.label = v;
        this.afterEdit();
      }),
    );

    if (taxonomy) {
      card.appendChild(this.blockBody(index, stage, taxonomy));
    }
    return card;
  }

  private blockSection(title: string, ref: BlockRef, block: BlockDoc): HTMLElement {
    const section = document.createElement("fieldset");
    const legend = document.createElement("legend");
    legend.textContent = title;
    section.appendChild(legend);
    const taxonomy = this.taxonomyDocs.get(block.taxonomy);
    if (taxonomy) section.appendChild(this.blockBody(ref, block, taxonomy));
    return section;
  }

  private blockBody(ref: BlockRef, block: BlockDoc | StageDoc, taxonomy: TaxonomyDoc): HTMLElement {
    const body = document.createElement("div");
    for (const category of taxonomy.categories) {
      const heading = document.createElement("h3");
      heading.textContent = category.title;
      body.appendChild(heading);
      for (const facet of category.facets) {
        body.appendChild(this.facetWidget(ref, block, category.slug, facet));
      }
    }
    return body;
  }

  private facetWidget(
    ref: BlockRef,
    block: BlockDoc | StageDoc,
    categorySlug: string,
    facet: FacetDoc,
  ): HTMLElement {
    const facetPath = `${categorySlug}/${facet.slug}`;
    const wrap = document.createElement("div");
    wrap.className = "facet";
    const caption = document.createElement("div");
    caption.className = "facet-title";
    caption.textContent = `${facet.title} (${facetPath})`;
    wrap.appendChild(caption);

    if (facet.kind === "free-text") {
      wrap.appendChild(this.freeTextControl(block, facetPath));
    } else if (facet.kind === "ordinal") {
      wrap.appendChild(this.ordinalControl(block, facetPath, facet));
    } else {
      wrap.appendChild(this.choiceTree(ref, block, facetPath, facet));
    }

    wrap.appendChild(this.noteControl(block, facetPath));

    const defects = document.createElement("div");
    defects.className = "defects";
    this.defectHosts.set(widgetKey(ref, facetPath), defects);
    wrap.appendChild(defects);
    return wrap;
  }

  private choiceTree(
    ref: BlockRef,
    block: BlockDoc | StageDoc,
    facetPath: string,
    facet: FacetDoc,
  ): HTMLElement {
    const list = document.createElement("div");
    list.className = "choices";
    const type = facet.cardinality === "one" ? "radio" : "checkbox";
    const groupName = `${String(ref)}-${facetPath}`;
    for (const entry of flattenValues(facet.values)) {
      const row = document.createElement("label");
      row.className = "choice";
      row.style.paddingLeft = `${entry.depth * 1.2}em`;
      const box = document.createElement("input");
      box.type = type;
      box.name = groupName;
      box.checked = (getSelection(block, facetPath)?.values ?? []).includes(entry.path);
      box.onchange = () => {
        toggleValue(block, facetPath, entry.path, facet.cardinality);
        this.afterEdit();
      };
      const text = document.createElement("span");
      text.textContent = entry.isLeaf ? entry.node.title : `${entry.node.title} ▸`;
      row.append(box, text);
      list.appendChild(row);
    }
    return list;
  }

  private ordinalControl(block: BlockDoc | StageDoc, facetPath: string, facet: FacetDoc): HTMLElement {
    const wrap = document.createElement("div");
    wrap.className = "ordinal";
    const paths = facet.values.map((v) => v.slug);
    const slider = document.createElement("input");
    slider.type = "range";
    slider.min = "0";
    slider.max = String(paths.length - 1);
    slider.step = "1";
    const label = document.createElement("span");

    const current = getSelection(block, facetPath)?.values[0];
    const index = current ? paths.indexOf(current) : -1;
    slider.value = String(index >= 0 ? index : 0);
    label.textContent = index >= 0 ? facet.values[index].title : "(not specified)";

    slider.oninput = () => {
      const picked = paths[Number(slider.value)];
      const selection = getSelection(block, facetPath);
      if (selection) selection.values = [picked];
      else toggleValue(block, facetPath, picked, "one");
      label.textContent = facet.values[Number(slider.value)].title;
      this.afterEdit();
    };

    const clear = document.createElement("button");
    clear.textContent = "clear";
    clear.onclick = () => {
      clearSelection(block, facetPath);
      label.textContent = "(not specified)";
      this.afterEdit();
    };
    wrap.append(slider, label, clear);
    return wrap;
  }

  private freeTextControl(block: BlockDoc | StageDoc, facetPath: string): HTMLElement {
    const input = document.createElement("input");
    input.type = "text";
    input.placeholder = "free text";
    input.value = getSelection(block, facetPath)?.text ?? "";
    input.oninput = () => {
      if (input.value === "") clearSelection(block, facetPath);
      else setText(block, facetPath, input.value);
      this.afterEdit();
    };
    return input;
  }

  private noteControl(block: BlockDoc | StageDoc, facetPath: string): HTMLElement {
    const input = document.createElement("input");
    input.type = "text";
    input.className = "note";
    input.placeholder = "note";
    input.value = getSelection(block, facetPath)?.note ?? "";
    input.oninput = () => {
      setNote(block, facetPath, input.value);
      this.afterEdit();
    };
    return input;
  }
}
