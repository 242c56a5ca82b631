/** Typed client for the proof-assistant HTTP API.
 *
 * The frontend consumes this API exclusively: every view is rendered from a
 * server StateView and no rule logic runs in the browser.
 */

export interface GoalView {
  assumptions: string[];
  conclusion: string;
}

export interface StateView {
  session: string;
  step: number;
  completed: boolean;
  goals: GoalView[];
  applicable_rules: string[];
  fresh_suggestion?: string;
  exercise?: string;
}

export interface ExerciseInfo {
  id: string;
  title: string;
  formula: string;
  policy: "full" | "stepwise" | "withheld";
  steps: number | null;
}

export interface ScriptStep {
  rule: string;
  params: Record<string, unknown>;
}

export interface ProofScriptJson {
  format: number;
  root: unknown;
  steps: ScriptStep[];
}

export type FeedbackJson =
  | { status: "provable"; steps: number; script: ProofScriptJson }
  | { status: "refuted"; countermodel: Record<string, unknown> }
  | { status: "unknown"; reason: string };

export interface ApiError {
  error: string;
  detail: string;
  offset?: number;
  expected?: string[];
}

export class RequestFailed extends Error {
  constructor(
    readonly status: number,
    readonly payload: ApiError,
  ) {
    super(`${payload.error}: ${payload.detail}`);
  }
}

/** Rule parameters as the user supplies them: surface text strings; the
 * server parses them (quantified formulas for bodies, terms for witnesses).
 */
export type RuleParams = Record<string, string>;

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private readonly base: string,
    private readonly fetchImpl: FetchLike = (...args) => fetch(...args),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(this.base + path, init);
    const text = await response.text();
    const body = text ? JSON.parse(text) : {};
    if (!response.ok) {
      throw new RequestFailed(response.status, body as ApiError);
    }
    return body as T;
  }

  private async requestText(path: string): Promise<string> {
    const response = await this.fetchImpl(this.base + path);
    if (!response.ok) {
      const body = JSON.parse(await response.text()) as ApiError;
      throw new RequestFailed(response.status, body);
    }
    return response.text();
  }

  createSession(body: { formula?: string; exercise?: string }) {
    return this.request<{ id: string; view: StateView }>("/sessions", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  getSession(id: string) {
    return this.request<StateView>(`/sessions/${id}`);
  }

  apply(id: string, rule: string, params: RuleParams = {}) {
    return this.request<StateView>(`/sessions/${id}/apply`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ rule, params }),
    });
  }

  undo(id: string) {
    return this.request<StateView>(`/sessions/${id}/undo`, { method: "POST" });
  }

  hint(id: string, query: { depth?: number; budget?: number } = {}) {
    const params = new URLSearchParams();
    if (query.depth !== undefined) params.set("depth", String(query.depth));
    if (query.budget !== undefined) params.set("budget", String(query.budget));
    const suffix = params.toString() ? `?${params}` : "";
    return this.request<{ feedback: FeedbackJson[] }>(`/sessions/${id}/hint${suffix}`);
  }

  trim(id: string) {
    return this.request<ProofScriptJson>(`/sessions/${id}/trim`, { method: "POST" });
  }

  certificate(id: string) {
    return this.requestText(`/sessions/${id}/certificate`);
  }

  exercises() {
    return this.request<{ exercises: ExerciseInfo[] }>("/exercises");
  }

  reveal(exerciseId: string, steps: number) {
    return this.request<ProofScriptJson>(`/exercises/${exerciseId}/reveal?steps=${steps}`);
  }
}
