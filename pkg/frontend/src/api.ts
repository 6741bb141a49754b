/** Thin fetch client for the taxidma JSON API. Server defects are
 * surfaced as ApiError, never swallowed. */

import type {
  CensusDoc,
  CoverageDoc,
  HistogramDoc,
  RecordDoc,
  SaveResult,
  TaxonomyDoc,
  TaxonomySummary,
  ValidationReport,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
    readonly report?: ValidationReport,
  ) {
    super(message);
  }
}

async function fail(response: Response): Promise<never> {
  let code = "http-error";
  let message = `${response.status} ${response.statusText}`;
  let report: ValidationReport | undefined;
  try {
    const body = await response.json();
    if (body && typeof body === "object") {
      code = body.code ?? code;
      message = body.message ?? message;
      report = body.report;
    }
  } catch {
    // non-JSON error body; keep the HTTP status text
  }
  throw new ApiError(response.status, code, message, report);
}

export class ApiClient {
  constructor(private readonly base: string = "/api/v1") {}

  private async getJson<T>(path: string): Promise<T> {
    const response = await fetch(this.base + path);
    if (!response.ok) await fail(response);
    return response.json() as Promise<T>;
  }

  taxonomies(): Promise<TaxonomySummary[]> {
    return this.getJson("/taxonomies");
  }

  taxonomy(id: string): Promise<TaxonomyDoc> {
    return this.getJson(`/taxonomies/${encodeURIComponent(id)}`);
  }

  recordIds(): Promise<string[]> {
    return this.getJson("/records");
  }

  record(id: string): Promise<RecordDoc> {
    return this.getJson(`/records/${encodeURIComponent(id)}`);
  }

  async validate(doc: RecordDoc): Promise<ValidationReport> {
    const response = await fetch(`${this.base}/validate`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(doc),
    });
    if (!response.ok) await fail(response);
    return response.json();
  }

  async saveRecord(doc: RecordDoc, force = true): Promise<SaveResult> {
    const query = force ? "?force=1" : "";
    const response = await fetch(
      `${this.base}/records/${encodeURIComponent(doc.record_id)}${query}`,
      {
        method: "PUT",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(doc),
      },
    );
    if (!response.ok) await fail(response);
    return response.json();
  }

  query(pred: string): Promise<string[]> {
    return this.getJson(`/query?pred=${encodeURIComponent(pred)}`);
  }

  stats(scope: string, facet: string): Promise<HistogramDoc> {
    return this.getJson(`/stats?scope=${encodeURIComponent(scope)}&facet=${encodeURIComponent(facet)}`);
  }

  coverage(): Promise<CoverageDoc> {
    return this.getJson("/coverage");
  }

  census(): Promise<CensusDoc> {
    return this.getJson("/census");
  }
}
