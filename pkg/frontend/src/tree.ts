/** Taxonomy tree helpers: flattening, search filtering, leaf counting. */

import type { FacetDoc, TaxonomyDoc, ValueNode } from "./types.js";

export interface FlatValue {
  path: string; // relative to the facet
  node: ValueNode;
  depth: number;
  isLeaf: boolean;
}

export function flattenValues(values: ValueNode[], prefix = "", depth = 0): FlatValue[] {
  const out: FlatValue[] = [];
  for (const node of values) {
    const path = prefix ? `${prefix}/${node.slug}` : node.slug;
    out.push({ path, node, depth, isLeaf: node.children.length === 0 });
    out.push(...flattenValues(node.children, path, depth + 1));
  }
  return out;
}

export function facetByPath(taxonomy: TaxonomyDoc, facetPath: string): FacetDoc | undefined {
  const [categorySlug, facetSlug] = facetPath.split("/");
  const category = taxonomy.categories.find((c) => c.slug === categorySlug);
  return category?.facets.find((f) => f.slug === facetSlug);
}

export function countLeaves(taxonomy: TaxonomyDoc): number {
  let total = 0;
  const walk = (node: ValueNode): void => {
    if (node.children.length === 0) {
      total += 1;
    } else {
      node.children.forEach(walk);
    }
  };
  for (const category of taxonomy.categories) {
    for (const facet of category.facets) {
      facet.values.forEach(walk);
    }
  }
  return total;
}

export interface SearchResult {
  /** Full node paths whose slug or title contains the query. */
  matches: Set<string>;
  /** Matches plus every ancestor, so the tree can stay expanded. */
  visible: Set<string>;
}

function hit(query: string, slug: string, title: string): boolean {
  return slug.toLowerCase().includes(query) || title.toLowerCase().includes(query);
}

/** Case-insensitive substring search over slugs and titles. An empty
 * query matches everything. */
export function searchTaxonomy(taxonomy: TaxonomyDoc, rawQuery: string): SearchResult {
  const query = rawQuery.trim().toLowerCase();
  const matches = new Set<string>();
  const visible = new Set<string>();

  const reveal = (path: string): void => {
    const parts = path.split("/");
    for (let i = 1; i <= parts.length; i += 1) {
      visible.add(parts.slice(0, i).join("/"));
    }
  };

  const walkValues = (prefix: string, nodes: ValueNode[]): void => {
    for (const node of nodes) {
      const path = `${prefix}/${node.slug}`;
      if (query === "" || hit(query, node.slug, node.title)) {
        matches.add(path);
        reveal(path);
      }
      walkValues(path, node.children);
    }
  };

  for (const category of taxonomy.categories) {
    if (query === "" || hit(query, category.slug, category.title)) {
      matches.add(category.slug);
      reveal(category.slug);
    }
    for (const facet of category.facets) {
      const facetPath = `${category.slug}/${facet.slug}`;
      if (query === "" || hit(query, facet.slug, facet.title)) {
        matches.add(facetPath);
        reveal(facetPath);
      }
      walkValues(facetPath, facet.values);
    }
  }
  return { matches, visible };
}
