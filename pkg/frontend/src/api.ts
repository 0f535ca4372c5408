// Typed client for the compiler service's /v1 JSON endpoints.

export type Backend = 'deterministic' | 'llm';

export interface SpanInfo {
  line: number;
  col: number;
  start: number;
  end: number;
  length: number;
}

export interface ErrorInfo {
  stage: 'lex' | 'parse' | 'check' | 'llm';
  message_en: string;
  message_ar: string;
  span: SpanInfo | null;
}

export interface WarningInfo {
  code: string;
  message_en: string;
  message_ar: string;
  span: SpanInfo | null;
}

export interface CompileResult {
  ok: boolean;
  target_text: string | null;
  rename_map: [string, string][] | null;
  error: ErrorInfo | null;
  warnings: WarningInfo[];
}

export interface RunOutcome {
  stdout: string;
  stderr: string;
  exit_code: number;
  duration: number;
  timed_out: boolean;
  stdout_truncated: boolean;
  stderr_truncated: boolean;
}

export interface RunReply {
  compile: CompileResult;
  run: RunOutcome | null;
}

export interface AttachmentUpload {
  name: string;
  content_base64: string;
}

export class ApiError extends Error {
  constructor(readonly status: number, detail: string) {
    super(`service replied ${status}: ${detail}`);
  }
}

async function postJson<T>(url: string, body: unknown): Promise<T> {
  const response = await fetch(url, {
    method: 'POST',
    headers: { 'Content-Type': 'application/json' },
    body: JSON.stringify(body),
  });
  if (!response.ok) {
    let detail = response.statusText;
    try {
      detail = ((await response.json()) as { detail?: string }).detail ?? detail;
    } catch {
      // non-JSON error body; keep the status text
    }
    throw new ApiError(response.status, detail);
  }
  return (await response.json()) as T;
}

export class ApiClient {
  constructor(readonly baseUrl: string) {}

  async health(): Promise<boolean> {
    try {
      const response = await fetch(`${this.baseUrl}/v1/health`);
      return response.ok;
    } catch {
      return false;
    }
  }

  compile(source: string, backend: Backend): Promise<CompileResult> {
    return postJson(`${this.baseUrl}/v1/compile`, { source, backend });
  }

  run(
    source: string,
    backend: Backend,
    attachments: AttachmentUpload[],
  ): Promise<RunReply> {
    return postJson(`${this.baseUrl}/v1/run`, { source, backend, attachments });
  }
}

// What the playground needs from a client; tests substitute stubs.
export interface CompileApi {
  compile(source: string, backend: Backend): Promise<CompileResult>;
  run(
    source: string,
    backend: Backend,
    attachments: AttachmentUpload[],
  ): Promise<RunReply>;
}

const CHUNK = 0x8000;

export function toBase64(bytes: Uint8Array): string {
  if (typeof btoa === 'function') {
    let binary = '';
    for (let i = 0; i < bytes.length; i += CHUNK) {
      binary += String.fromCharCode(...bytes.subarray(i, i + CHUNK));
    }
    return btoa(binary);
  }
  return Buffer.from(bytes).toString('base64');
}
