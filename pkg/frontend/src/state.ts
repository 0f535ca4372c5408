// Pure editor-state transitions; the DOM layer only renders what these return.

import type { Backend, CompileResult, ErrorInfo, RunReply } from './api.js';

export type LineKind = 'stdout' | 'stderr' | 'info' | 'error';

export interface ConsoleLine {
  kind: LineKind;
  text: string;
}

export interface Highlight {
  line: number;
  col: number;
  length: number;
}

export interface EditorState {
  sourceText: string;
  targetText: string;
  consoleLines: ConsoleLine[];
  backendChoice: Backend;
  busy: boolean;
  highlight: Highlight | null;
}

export function initialState(): EditorState {
  return {
    sourceText: '',
    targetText: '',
    consoleLines: [],
    backendChoice: 'deterministic',
    busy: false,
    highlight: null,
  };
}

function line(kind: LineKind, text: string): ConsoleLine {
  return { kind, text };
}

export function describeRenameMap(map: [string, string][] | null): string {
  if (!map || map.length === 0) {
    return 'rename map: none';
  }
  return `rename map: ${map.map(([ar, en]) => `${ar} → ${en}`).join(', ')}`;
}

// Server output arrives as whole streams, not events; keep its order.
export function splitOutput(text: string): string[] {
  if (text === '') {
    return [];
  }
  const lines = text.split('\n');
  if (lines[lines.length - 1] === '') {
    lines.pop();
  }
  return lines;
}

function errorLines(error: ErrorInfo): ConsoleLine[] {
  const where = error.span ? `line ${error.span.line}, col ${error.span.col}: ` : '';
  return [
    line('error', `${where}${error.stage} error: ${error.message_en}`),
    line('error', error.message_ar),
  ];
}

function highlightFrom(error: ErrorInfo): Highlight | null {
  if (!error.span) {
    return null;
  }
  return { line: error.span.line, col: error.span.col, length: error.span.length };
}

export function applyCompileResult(
  state: EditorState,
  result: CompileResult,
): EditorState {
  if (!result.ok || result.error) {
    const error = result.error as ErrorInfo;
    return {
      ...state,
      targetText: '',
      consoleLines: [...state.consoleLines, ...errorLines(error)],
      highlight: highlightFrom(error),
    };
  }
  const lines = [
    ...state.consoleLines,
    line('info', describeRenameMap(result.rename_map)),
    ...result.warnings.map((w) => line('info', `warning: ${w.message_en}`)),
  ];
  return {
    ...state,
    targetText: result.target_text ?? '',
    consoleLines: lines,
    highlight: null,
  };
}

export function applyRunReply(state: EditorState, reply: RunReply): EditorState {
  if (!reply.compile.ok || reply.run === null) {
    return applyCompileResult(state, reply.compile);
  }
  const run = reply.run;
  const lines = [
    ...state.consoleLines,
    ...splitOutput(run.stdout).map((t) => line('stdout', t)),
    ...splitOutput(run.stderr).map((t) => line('stderr', t)),
  ];
  if (run.stdout_truncated || run.stderr_truncated) {
    lines.push(line('info', 'output truncated'));
  }
  if (run.timed_out) {
    lines.push(line('error', 'timed out انتهت المهلة'));
  } else {
    lines.push(line('info', `exit ${run.exit_code}`));
  }
  return {
    ...state,
    targetText: reply.compile.target_text ?? '',
    consoleLines: lines,
    highlight: null,
  };
}

export function applyNetworkFailure(state: EditorState): EditorState {
  return {
    ...state,
    consoleLines: [
      ...state.consoleLines,
      line('error', 'connection failed فشل الاتصال'),
    ],
  };
}

export interface HighlightLine {
  text: string;
  isError: boolean;
}

// One entry per source line; the span's line is flagged for the overlay.
export function highlightLines(
  source: string,
  highlight: Highlight | null,
): HighlightLine[] {
  if (highlight === null) {
    return [];
  }
  return splitOutput(source.endsWith('\n') ? source : source + '\n').map(
    (text, index) => ({ text, isError: index + 1 === highlight.line }),
  );
}
