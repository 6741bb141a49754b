/** Taxonomy explorer: collapsible category/facet/value trees with search. */

import type { ApiClient } from "./api.js";
import type { TaxonomyDoc, TaxonomySummary, ValueNode } from "./types.js";
import { searchTaxonomy } from "./tree.js";

export class ExplorerView {
  readonly root = document.createElement("section");
  private select = document.createElement("select");
  private search = document.createElement("input");
  private treeHost = document.createElement("div");
  private current: TaxonomyDoc | null = null;

  constructor(
    private readonly api: ApiClient,
    private readonly taxonomies: TaxonomySummary[],
  ) {
    this.root.className = "explorer";

    const controls = document.createElement("div");
    controls.className = "controls";
    for (const summary of taxonomies) {
      const option = document.createElement("option");
      option.value = summary.id;
      option.textContent = `${summary.title} (${summary.id})`;
      this.select.appendChild(option);
    }
    this.select.onchange = () => void this.load(this.select.value);
    this.search.type = "search";
    this.search.placeholder = "filter by title or slug";
    this.search.oninput = () => this.renderTree();
    controls.append(this.select, this.search);
    this.root.append(controls, this.treeHost);
  }

  async show(taxonomyId?: string, query?: string): Promise<void> {
    const id = taxonomyId ?? this.select.value ?? this.taxonomies[0]?.id;
    if (taxonomyId) this.select.value = taxonomyId;
    if (query !== undefined) this.search.value = query;
    await this.load(id);
  }

  private async load(taxonomyId: string): Promise<void> {
    this.current = await this.api.taxonomy(taxonomyId);
    this.renderTree();
  }

  private renderTree(): void {
    this.treeHost.textContent = "";
    if (!this.current) return;
    const { matches, visible } = searchTaxonomy(this.current, this.search.value);
    const searching = this.search.value.trim() !== "";

    for (const category of this.current.categories) {
      if (searching && !visible.has(category.slug)) continue;
      const details = this.branch(category.title, category.slug, matches, searching);
      for (const facet of category.facets) {
        const facetPath = `${category.slug}/${facet.slug}`;
        if (searching && !visible.has(facetPath)) continue;
        const facetBranch = this.branch(
          `${facet.title} · ${facet.kind}, ${facet.cardinality}`,
          facetPath,
          matches,
          searching,
        );
        const list = document.createElement("ul");
        this.renderValues(list, facet.values, facetPath, matches, visible, searching);
        if (facet.kind === "free-text") {
          const item = document.createElement("li");
          item.className = "muted";
          item.textContent = "free text";
          list.appendChild(item);
        }
        facetBranch.appendChild(list);
        details.appendChild(facetBranch);
      }
      this.treeHost.appendChild(details);
    }
    if (this.treeHost.childElementCount === 0) {
      const empty = document.createElement("p");
      empty.className = "muted";
      empty.textContent = "No matches.";
      this.treeHost.appendChild(empty);
    }
  }

  private branch(label: string, path: string, matches: Set<string>, searching: boolean): HTMLDetailsElement {
    const details = document.createElement("details");
    details.open = searching || path.includes("/") === false;
    const summary = document.createElement("summary");
    summary.textContent = label;
    if (searching && matches.has(path)) summary.classList.add("hit");
    details.appendChild(summary);
    return details;
  }

  private renderValues(
    host: HTMLUListElement,
    values: ValueNode[],
    prefix: string,
    matches: Set<string>,
    visible: Set<string>,
    searching: boolean,
  ): void {
    for (const node of values) {
      const path = `${prefix}/${node.slug}`;
      if (searching && !visible.has(path)) continue;
      const item = document.createElement("li");
      const label = document.createElement("span");
      label.textContent = node.title;
      if (searching && matches.has(path)) label.classList.add("hit");
      const slug = document.createElement("code");
      slug.textContent = node.slug;
      item.append(label, " ", slug);
      if (node.citation) {
        const cite = document.createElement("span");
        cite.className = "muted";
        cite.textContent = ` [${node.citation}]`;
        item.appendChild(cite);
      }
      if (node.children.length > 0) {
        const sub = document.createElement("ul");
        this.renderValues(sub, node.children, path, matches, visible, searching);
        item.appendChild(sub);
      }
      host.appendChild(item);
    }
  }
}
