/** Dashboard tab: corpus census, facet histograms, coverage gap list. */

import type { ApiClient } from "./api.js";
import { censusRows, coveragePercent, gapMathHolds, histogramBars } from "./dashboard.js";
import type { TaxonomyDoc, TaxonomySummary } from "./types.js";

export class DashboardView {
  readonly root = document.createElement("section");
  private censusHost = document.createElement("div");
  private statsHost = document.createElement("div");
  private coverageHost = document.createElement("div");
  private scopeSelect = document.createElement("select");
  private facetInput = document.createElement("input");

  constructor(
    private readonly api: ApiClient,
    private readonly taxonomies: TaxonomySummary[],
    private readonly taxonomyDocs: Map<string, TaxonomyDoc>,
    private readonly openGap: (taxonomy: string, path: string) => void,
  ) {
    this.root.className = "dashboards";

    const censusTitle = document.createElement("h2");
    censusTitle.textContent = "Corpus census";
    const statsTitle = document.createElement("h2");
    statsTitle.textContent = "Facet histogram";
    const coverageTitle = document.createElement("h2");
    coverageTitle.textContent = "Coverage gaps";

    const controls = document.createElement("div");
    controls.className = "controls";
    for (const scope of ["bg", "stage", ...taxonomies.filter((t) => t.id !== "background").map((t) => `stage[${t.id}]`)]) {
      const option = document.createElement("option");
      option.value = scope;
      option.textContent = scope;
      this.scopeSelect.appendChild(option);
    }
    this.facetInput.value = "identity/type";
    this.facetInput.placeholder = "facet path";
    const run = document.createElement("button");
    run.textContent = "Show";
    run.onclick = () => void this.loadHistogram();
    controls.append(this.scopeSelect, this.facetInput, run);

    this.root.append(
      censusTitle,
      this.censusHost,
      statsTitle,
      controls,
      this.statsHost,
      coverageTitle,
      this.coverageHost,
    );
  }

  async show(): Promise<void> {
    await Promise.all([this.loadCensus(), this.loadHistogram(), this.loadCoverage()]);
  }

  private async loadCensus(): Promise<void> {
    const census = await this.api.census();
    const rows = censusRows(census, this.taxonomies);
    this.censusHost.textContent = "";
    if (rows.every((row) => row.count === 0)) {
      const empty = document.createElement("p");
      empty.className = "muted";
      empty.textContent = "The corpus is empty.";
      this.censusHost.appendChild(empty);
      return;
    }
    const table = document.createElement("table");
    const head = table.insertRow();
    const body = table.insertRow();
    for (const row of rows) {
      const th = document.createElement("th");
      th.textContent = row.title;
      head.appendChild(th);
      const td = body.insertCell();
      td.textContent = String(row.count);
      td.dataset.taxonomy = row.id;
    }
    this.censusHost.appendChild(table);
  }

  private async loadHistogram(): Promise<void> {
    this.statsHost.textContent = "";
    try {
      const histogram = await this.api.stats(this.scopeSelect.value, this.facetInput.value);
      const list = document.createElement("div");
      list.className = "bars";
      for (const bar of histogramBars(histogram)) {
        const row = document.createElement("div");
        row.className = "bar-row";
        const label = document.createElement("span");
        label.className = "bar-label";
        label.textContent = bar.path;
        const track = document.createElement("span");
        track.className = "bar";
        track.style.width = `${Math.round(bar.share * 240)}px`;
        const count = document.createElement("span");
        count.textContent = String(bar.count);
        row.append(label, track, count);
        list.appendChild(row);
      }
      const total = document.createElement("p");
      total.className = "muted";
      total.textContent = `${histogram.total} records considered`;
      this.statsHost.append(list, total);
    } catch (error) {
      const message = document.createElement("p");
      message.className = "defect error";
      message.textContent = error instanceof Error ? error.message : String(error);
      this.statsHost.appendChild(message);
    }
  }

  private async loadCoverage(): Promise<void> {
    const coverage = await this.api.coverage();
    this.coverageHost.textContent = "";
    for (const entry of coverage.entries) {
      const details = document.createElement("details");
      const summary = document.createElement("summary");
      summary.textContent =
        `${entry.taxonomy}: ${entry.used_leaves}/${entry.total_leaves} leaves used ` +
        `(${coveragePercent(entry)}), ${entry.unused.length} gaps`;
      details.appendChild(summary);

      const taxonomy = this.taxonomyDocs.get(entry.taxonomy);
      if (taxonomy && !gapMathHolds(entry, taxonomy)) {
        const warn = document.createElement("p");
        warn.className = "defect error";
        warn.textContent = "coverage payload disagrees with the taxonomy leaf count";
        details.appendChild(warn);
      }

      const list = document.createElement("ul");
      for (const path of entry.unused) {
        const item = document.createElement("li");
        const link = document.createElement("a");
        link.href = "#";
        link.textContent = path;
        link.onclick = (event) => {
          event.preventDefault();
          this.openGap(entry.taxonomy, path);
        };
        item.appendChild(link);
        list.appendChild(item);
      }
      details.appendChild(list);
      this.coverageHost.appendChild(details);
    }
    const footnote = document.createElement("p");
    footnote.className = "muted";
    footnote.textContent =
      "Coverage fractions are a tool-side metric over leaf values; they are not part of the classification scheme.";
    this.coverageHost.appendChild(footnote);
  }
}
