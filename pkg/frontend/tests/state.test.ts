import { describe, expect, it } from 'vitest';

import type { CompileResult, RunOutcome, RunReply } from '../src/api.js';
import {
  applyCompileResult,
  applyNetworkFailure,
  applyRunReply,
  describeRenameMap,
  highlightLines,
  initialState,
  splitOutput,
} from '../src/state.js';

const okCompile: CompileResult = {
  ok: true,
  target_text: '# rename map\n\nprint("مرحبا")\n',
  rename_map: [['العدد', 'aledd']],
  error: null,
  warnings: [],
};

const badCompile: CompileResult = {
  ok: false,
  target_text: null,
  rename_map: null,
  error: {
    stage: 'lex',
    message_en: 'semicolons are not allowed',
    message_ar: 'الفاصلة المنقوطة غير مسموح بها',
    span: { line: 2, col: 6, start: 12, end: 13, length: 1 },
  },
  warnings: [],
};

function okRun(stdout: string, overrides: Partial<RunOutcome> = {}): RunReply {
  return {
    compile: okCompile,
    run: {
      stdout,
      stderr: '',
      exit_code: 0,
      duration: 0.05,
      timed_out: false,
      stdout_truncated: false,
      stderr_truncated: false,
      ...overrides,
    },
  };
}

describe('initialState', () => {
  it('starts empty, idle, deterministic', () => {
    const state = initialState();
    expect(state.sourceText).toBe('');
    expect(state.targetText).toBe('');
    expect(state.consoleLines).toEqual([]);
    expect(state.backendChoice).toBe('deterministic');
    expect(state.busy).toBe(false);
    expect(state.highlight).toBeNull();
  });
});

describe('splitOutput', () => {
  it('drops only the final empty segment', () => {
    expect(splitOutput('')).toEqual([]);
    expect(splitOutput('a\n')).toEqual(['a']);
    expect(splitOutput('a\nb')).toEqual(['a', 'b']);
    expect(splitOutput('a\n\nb\n')).toEqual(['a', '', 'b']);
  });
});

describe('describeRenameMap', () => {
  it('lists pairs in order', () => {
    expect(describeRenameMap([['س', 's'], ['ص', 's_2']])).toBe(
      'rename map: س → s, ص → s_2',
    );
  });

  it('handles empty and missing maps', () => {
    expect(describeRenameMap([])).toBe('rename map: none');
    expect(describeRenameMap(null)).toBe('rename map: none');
  });
});

describe('applyCompileResult', () => {
  it('fills the target pane and reports the rename map', () => {
    const next = applyCompileResult(initialState(), okCompile);
    expect(next.targetText).toContain('print("مرحبا")');
    expect(next.consoleLines.map((l) => l.kind)).toEqual(['info']);
    expect(next.consoleLines[0]!.text).toContain('العدد → aledd');
    expect(next.highlight).toBeNull();
  });

  it('reports errors bilingually with a highlight', () => {
    const next = applyCompileResult(initialState(), badCompile);
    expect(next.targetText).toBe('');
    const texts = next.consoleLines.map((l) => l.text);
    expect(texts[0]).toContain('line 2, col 6');
    expect(texts[0]).toContain('lex error');
    expect(texts[1]).toContain('الفاصلة');
    expect(next.highlight).toEqual({ line: 2, col: 6, length: 1 });
  });

  it('surfaces warnings as info lines', () => {
    const withWarning: CompileResult = {
      ...okCompile,
      warnings: [{
        code: 'undefined-name',
        message_en: 'name is not defined',
        message_ar: 'الاسم غير معرف',
        span: null,
      }],
    };
    const next = applyCompileResult(initialState(), withWarning);
    expect(next.consoleLines.some((l) => l.text.includes('not defined'))).toBe(true);
  });
});

describe('applyRunReply', () => {
  it('keeps stdout before stderr, then the exit line', () => {
    const reply = okRun('a\nb\n', { stderr: 'warn\n', exit_code: 3 });
    const next = applyRunReply(initialState(), reply);
    expect(next.consoleLines.map((l) => `${l.kind}:${l.text}`)).toEqual([
      'stdout:a',
      'stdout:b',
      'stderr:warn',
      'info:exit 3',
    ]);
  });

  it('shows a distinct timeout line instead of an exit line', () => {
    const next = applyRunReply(initialState(), okRun('', { timed_out: true, exit_code: -9 }));
    const last = next.consoleLines[next.consoleLines.length - 1]!;
    expect(last.kind).toBe('error');
    expect(last.text).toContain('timed out');
    expect(next.consoleLines.some((l) => l.text.startsWith('exit'))).toBe(false);
  });

  it('notes truncation', () => {
    const next = applyRunReply(initialState(), okRun('x\n', { stdout_truncated: true }));
    expect(next.consoleLines.some((l) => l.text === 'output truncated')).toBe(true);
  });

  it('falls back to compile error handling', () => {
    const next = applyRunReply(initialState(), { compile: badCompile, run: null });
    expect(next.highlight?.line).toBe(2);
  });
});

describe('applyNetworkFailure', () => {
  it('adds one bilingual error line and touches nothing else', () => {
    const before = { ...initialState(), sourceText: 'اطبع(١)', targetText: 'kept' };
    const next = applyNetworkFailure(before);
    expect(next.sourceText).toBe('اطبع(١)');
    expect(next.targetText).toBe('kept');
    expect(next.consoleLines).toHaveLength(1);
    expect(next.consoleLines[0]!.text).toContain('connection failed');
    expect(next.consoleLines[0]!.text).toContain('فشل الاتصال');
  });
});

describe('highlightLines', () => {
  it('flags exactly the error line', () => {
    const lines = highlightLines('اول\nثان\nثالث\n', { line: 2, col: 1, length: 1 });
    expect(lines.map((l) => l.isError)).toEqual([false, true, false]);
    expect(lines[1]!.text).toBe('ثان');
  });

  it('is empty without a highlight', () => {
    expect(highlightLines('اول\n', null)).toEqual([]);
  });

  it('handles sources without a trailing newline', () => {
    const lines = highlightLines('س = ٥;', { line: 1, col: 6, length: 1 });
    expect(lines).toHaveLength(1);
    expect(lines[0]!.isError).toBe(true);
  });
});
