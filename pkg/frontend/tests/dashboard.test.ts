import { describe, expect, it } from "vitest";

import endUserFixture from "./fixtures/end-user-identities.json";
import { censusRows, coveragePercent, gapItems, gapMathHolds, histogramBars } from "../src/dashboard";
import type { CoverageEntry, HistogramDoc, TaxonomyDoc, TaxonomySummary } from "../src/types";

const endUser = endUserFixture as TaxonomyDoc;

const TAXONOMIES: TaxonomySummary[] = [
  { id: "background", title: "Attack Background", version: "2022.1" },
  { id: "system-identities", title: "System Identities", version: "2022.1" },
  { id: "idms", title: "Identity Management Systems", version: "2022.1" },
  { id: "end-user-identities", title: "End-User Identities", version: "2022.1" },
];

describe("censusRows", () => {
  it("renders the built-in corpus census as 8/2/3/3 in set order", () => {
    const census = {
      "background": 8,
      "system-identities": 2,
      "idms": 3,
      "end-user-identities": 3,
    };
    const rows = censusRows(census, TAXONOMIES);
    expect(rows.map((r) => r.count)).toEqual([8, 2, 3, 3]);
    expect(rows[0].title).toBe("Attack Background");
  });

  it("keeps unknown census keys instead of dropping them", () => {
    const rows = censusRows({ "background": 1, "ext-iot": 1 }, TAXONOMIES);
    expect(rows.map((r) => r.id)).toEqual(["background", "ext-iot"]);
  });
});

describe("histogramBars", () => {
  const histogram: HistogramDoc = {
    facet: "identity/type",
    scope: "background",
    taxonomy: null,
    total: 8,
    unspecified: 2,
    buckets: { "none": 0, "end-user": 6, "system": 0, "privileged": 1 },
  };

  it("keeps bucket order and appends the unspecified bar", () => {
    const bars = histogramBars(histogram);
    expect(bars.map((b) => b.path)).toEqual(["none", "end-user", "system", "privileged", "(unspecified)"]);
    expect(bars.map((b) => b.count)).toEqual([0, 6, 0, 1, 2]);
  });

  it("scales shares to the tallest bucket", () => {
    const bars = histogramBars(histogram);
    expect(bars[1].share).toBe(1);
    expect(bars[3].share).toBeCloseTo(1 / 6);
  });
});

describe("coverage gaps", () => {
  it("flattens the unused leaf paths per taxonomy", () => {
    const coverage = {
      entries: [
        { taxonomy: "a", total_leaves: 2, used_leaves: 1, fraction: 0.5, unused: ["x/y/z"] },
        { taxonomy: "b", total_leaves: 1, used_leaves: 1, fraction: 1, unused: [] },
      ],
    };
    expect(gapItems(coverage)).toEqual([{ taxonomy: "a", path: "x/y/z" }]);
  });

  it("cross-checks gap count against the taxonomy payload", () => {
    const entry: CoverageEntry = {
      taxonomy: "end-user-identities",
      total_leaves: 49,
      used_leaves: 16,
      fraction: 16 / 49,
      unused: Array.from({ length: 33 }, (_, i) => `gap/${i}`),
    };
    expect(gapMathHolds(entry, endUser)).toBe(true);
    expect(gapMathHolds({ ...entry, used_leaves: 15 }, endUser)).toBe(false);
    expect(gapMathHolds({ ...entry, total_leaves: 50 }, endUser)).toBe(false);
  });

  it("formats fractions as percentages", () => {
    expect(coveragePercent({ taxonomy: "x", total_leaves: 79, used_leaves: 30, fraction: 30 / 79, unused: [] })).toBe(
      "38.0%",
    );
  });
});
