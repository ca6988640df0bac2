/** Thin typed client over the service endpoints. The server is the
 * single authority for parsing and validation; this module never
 * interprets sentences itself. */

import type {
  EntailResult, ParseResponse, RuleJson, RuleTestResponse, SentenceJson,
} from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  status: number;
  detail: unknown;

  constructor(status: number, detail: unknown) {
    super(typeof detail === "string" ? detail : JSON.stringify(detail));
    this.status = status;
    this.detail = detail;
  }
}

export interface RulePayload {
  id: number;
  name: string;
  reversed: number | null;
  pattern: SentenceJson;
  entailment: SentenceJson;
  examples: Array<{ source: string; expect: string }>;
}

export class Client {
  baseUrl: string;
  private fetchFn: FetchLike;

  constructor(baseUrl: string, fetchFn: FetchLike = fetch.bind(globalThis)) {
    this.baseUrl = baseUrl.replace(/\/$/, "");
    this.fetchFn = fetchFn;
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: {} };
    if (body !== undefined) {
      init.headers = { "content-type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchFn(this.baseUrl + path, init);
    const text = await response.text();
    const data = text ? JSON.parse(text) : null;
    if (!response.ok) {
      throw new ApiError(response.status, data?.detail ?? data);
    }
    return data as T;
  }

  health(): Promise<{ status: string; rules: number }> {
    return this.request("GET", "/health");
  }

  parse(text: string): Promise<ParseResponse> {
    return this.request("POST", "/parse", { text });
  }

  entail(text: string, maxDepth = 3): Promise<{ results: EntailResult[] }> {
    return this.request("POST", "/entail", { text, maxDepth });
  }

  listRules(): Promise<{ rules: RuleJson[] }> {
    return this.request("GET", "/rules");
  }

  getRule(id: number): Promise<RuleJson> {
    return this.request("GET", `/rules/${id}`);
  }

  /** Validate a draft (and preview its markup); optionally probe a text. */
  testDraft(rule: RulePayload, text?: string): Promise<RuleTestResponse> {
    const body: Record<string, unknown> = { rule };
    if (text !== undefined) body.text = text;
    return this.request("POST", "/rules/test", body);
  }

  testSaved(ruleId: number, text: string): Promise<RuleTestResponse> {
    return this.request("POST", "/rules/test", { ruleId, text });
  }

  /** Create the rule, or replace it when the id is already taken, so
   * saving the same draft twice is idempotent. */
  async saveRule(rule: RulePayload): Promise<RuleJson> {
    try {
      return await this.request<RuleJson>("POST", "/rules", rule);
    } catch (error) {
      if (error instanceof ApiError && error.status === 422) {
        const findings = (error.detail as { findings?: Array<{ code: string }> })
          ?.findings ?? [];
        if (findings.some((f) => f.code === "DuplicateId")) {
          return this.request<RuleJson>("PUT", `/rules/${rule.id}`, rule);
        }
      }
      throw error;
    }
  }

  deleteRule(id: number): Promise<{ deleted: number }> {
    return this.request("DELETE", `/rules/${id}`);
  }
}
