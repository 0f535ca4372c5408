// DOM wiring for the dual-pane editor: RTL Arabic source on the right,
// LTR generated code on the left, a shared console underneath.

import type { AttachmentUpload, Backend, CompileApi } from './api.js';
import { toBase64 } from './api.js';
import {
  EditorState,
  applyCompileResult,
  applyNetworkFailure,
  applyRunReply,
  highlightLines,
  initialState,
} from './state.js';

export interface PlaygroundElements {
  sourceInput: HTMLTextAreaElement;
  targetPane: HTMLElement;
  highlightLayer: HTMLElement;
  consoleEl: HTMLElement;
  compileBtn: HTMLButtonElement;
  runBtn: HTMLButtonElement;
  backendSelect: HTMLSelectElement;
  attachInput: HTMLInputElement;
  attachList: HTMLElement;
}

export interface Playground {
  elements: PlaygroundElements;
  getState(): EditorState;
  setSource(text: string): void;
  attach(name: string, bytes: Uint8Array): void;
  clearAttachments(): void;
  compile(): Promise<void>;
  run(): Promise<void>;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className: string,
  testId?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  node.className = className;
  if (testId) {
    node.setAttribute('data-testid', testId);
  }
  return node;
}

export function createPlayground(root: HTMLElement, client: CompileApi): Playground {
  let state = initialState();
  const attachments: AttachmentUpload[] = [];

  const container = el('div', 'playground');

  const toolbar = el('header', 'toolbar');
  const title = el('span', 'title');
  title.textContent = 'APL playground';
  const backendSelect = el('select', 'backend-select', 'backend-select');
  for (const value of ['deterministic', 'llm'] as Backend[]) {
    const option = document.createElement('option');
    option.value = value;
    option.textContent = value;
    backendSelect.appendChild(option);
  }
  const compileBtn = el('button', 'btn', 'compile-btn');
  compileBtn.textContent = 'Compile ترجم';
  const runBtn = el('button', 'btn btn-primary', 'run-btn');
  runBtn.textContent = 'Run شغل';
  const attachInput = el('input', 'attach-input', 'attach-input');
  attachInput.type = 'file';
  attachInput.multiple = true;
  attachInput.accept = '.txt';
  const attachList = el('span', 'attach-list', 'attach-list');
  toolbar.append(title, backendSelect, compileBtn, runBtn, attachInput, attachList);

  const panes = el('div', 'panes');
  // left pane: generated target code, read-only, LTR
  const targetSection = el('section', 'pane pane-target');
  const targetLabel = el('div', 'pane-label');
  targetLabel.textContent = 'Python';
  const targetPane = el('pre', 'pane-view', 'target-pane');
  targetPane.dir = 'ltr';
  targetSection.append(targetLabel, targetPane);
  // right pane: editable Arabic source, RTL
  const sourceSection = el('section', 'pane pane-source');
  const sourceLabel = el('div', 'pane-label');
  sourceLabel.textContent = 'المصدر';
  const sourceInput = el('textarea', 'pane-edit', 'source-input');
  sourceInput.dir = 'rtl';
  sourceInput.spellcheck = false;
  sourceInput.placeholder = 'اطبع("مرحبا")';
  const highlightLayer = el('div', 'highlight-layer', 'highlight');
  highlightLayer.dir = 'rtl';
  highlightLayer.setAttribute('aria-hidden', 'true');
  sourceSection.append(sourceLabel, sourceInput, highlightLayer);
  panes.append(targetSection, sourceSection);

  const consoleEl = el('div', 'console', 'console');

  container.append(toolbar, panes, consoleEl);
  root.appendChild(container);

  const elements: PlaygroundElements = {
    sourceInput,
    targetPane,
    highlightLayer,
    consoleEl,
    compileBtn,
    runBtn,
    backendSelect,
    attachInput,
    attachList,
  };

  function render(): void {
    targetPane.textContent = state.targetText;
    const idle = !state.busy;
    const hasSource = state.sourceText.trim() !== '';
    compileBtn.disabled = !idle || !hasSource;
    runBtn.disabled = !idle || !hasSource;
    backendSelect.disabled = !idle;
    attachInput.disabled = !idle;

    consoleEl.textContent = '';
    for (const entry of state.consoleLines) {
      const lineEl = el('div', `line line-${entry.kind}`);
      lineEl.setAttribute('data-kind', entry.kind);
      lineEl.textContent = entry.text;
      consoleEl.appendChild(lineEl);
    }
    consoleEl.scrollTop = consoleEl.scrollHeight;

    highlightLayer.textContent = '';
    for (const [index, info] of highlightLines(state.sourceText, state.highlight).entries()) {
      const lineEl = el('div', info.isError ? 'hl-line error-line' : 'hl-line');
      if (info.isError) {
        lineEl.setAttribute('data-line', String(index + 1));
      }
      lineEl.textContent = info.text === '' ? ' ' : info.text;
      highlightLayer.appendChild(lineEl);
    }
  }

  function setState(next: EditorState): void {
    state = next;
    render();
  }

  // one request in flight at a time; extra clicks are dropped
  async function act(doRequest: () => Promise<EditorState>): Promise<void> {
    if (state.busy || state.sourceText.trim() === '') {
      return;
    }
    setState({ ...state, busy: true });
    let next: EditorState;
    try {
      next = await doRequest();
    } catch {
      next = applyNetworkFailure(state);
    }
    setState({ ...next, busy: false });
  }

  function compile(): Promise<void> {
    return act(async () =>
      applyCompileResult(state, await client.compile(state.sourceText, state.backendChoice)),
    );
  }

  function run(): Promise<void> {
    return act(async () =>
      applyRunReply(
        state,
        await client.run(state.sourceText, state.backendChoice, [...attachments]),
      ),
    );
  }

  function attach(name: string, bytes: Uint8Array): void {
    attachments.push({ name, content_base64: toBase64(bytes) });
    attachList.textContent = attachments.map((a) => a.name).join(' ');
  }

  function clearAttachments(): void {
    attachments.length = 0;
    attachList.textContent = '';
  }

  sourceInput.addEventListener('input', () => {
    // user edits invalidate any stale error span
    setState({ ...state, sourceText: sourceInput.value, highlight: null });
  });
  backendSelect.addEventListener('change', () => {
    setState({ ...state, backendChoice: backendSelect.value as Backend });
  });
  compileBtn.addEventListener('click', () => {
    void compile();
  });
  runBtn.addEventListener('click', () => {
    void run();
  });
  attachInput.addEventListener('change', async () => {
    for (const file of Array.from(attachInput.files ?? [])) {
      attach(file.name, new Uint8Array(await file.arrayBuffer()));
    }
  });

  render();
  return {
    elements,
    getState: () => state,
    setSource(text: string): void {
      sourceInput.value = text;
      setState({ ...state, sourceText: text, highlight: null });
    },
    attach,
    clearAttachments,
    compile,
    run,
  };
}
