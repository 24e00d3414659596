// Single API-client layer: every service interaction goes through here, with
// an injectable fetch so tests run against a mock instead of a live service.

export interface PredictionItem {
  gloss: string;
  probability: number;
}

export interface PredictTiming {
  extract_ms: number;
  infer_ms: number;
}

export interface PredictResult {
  predictions: PredictionItem[];
  modelId: string;
  timing: PredictTiming;
}

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
    this.name = "ApiError";
  }

  /** 422: the clip decoded but no person/landmarks were detected. */
  get noLandmarksDetected(): boolean {
    return this.status === 422;
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

async function errorMessage(response: Response): Promise<string> {
  try {
    const body = await response.json();
    const detail = body?.detail;
    if (typeof detail === "string") return detail;
    if (detail?.message) return String(detail.message);
  } catch {
    // fall through to the generic message
  }
  return `request failed with status ${response.status}`;
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  async health(): Promise<{ status: string; model_id: string }> {
    const response = await this.fetchFn(`${this.baseUrl}/api/health`);
    if (!response.ok) throw new ApiError(response.status, await errorMessage(response));
    return response.json();
  }

  async classes(): Promise<string[]> {
    const response = await this.fetchFn(`${this.baseUrl}/api/classes`);
    if (!response.ok) throw new ApiError(response.status, await errorMessage(response));
    return (await response.json()).classes;
  }

  async predict(video: Blob, k = 5, filename = "clip.webm"): Promise<PredictResult> {
    const form = new FormData();
    form.append("video", video, filename);
    const response = await this.fetchFn(`${this.baseUrl}/api/predict?k=${k}`, {
      method: "POST",
      body: form,
    });
    if (!response.ok) throw new ApiError(response.status, await errorMessage(response));
    const body = await response.json();
    const predictions = [...(body.predictions ?? [])]
      .sort((a, b) => b.probability - a.probability) // defensive: never trust wire order
      .slice(0, k);
    return {
      predictions,
      modelId: body.model_id ?? "",
      timing: body.timing ?? { extract_ms: 0, infer_ms: 0 },
    };
  }
}
