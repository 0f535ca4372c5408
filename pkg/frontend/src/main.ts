// Entry point for static hosting: ?api=http://host:port overrides the origin.

import { ApiClient } from './api.js';
import { createPlayground } from './playground.js';

function apiBase(): string {
  const override = new URLSearchParams(window.location.search).get('api');
  return (override ?? window.location.origin).replace(/\/$/, '');
}

async function boot(): Promise<void> {
  const root = document.getElementById('app');
  if (!root) {
    throw new Error('missing #app element');
  }
  const client = new ApiClient(apiBase());
  createPlayground(root, client);
  if (!(await client.health())) {
    const note = document.createElement('div');
    note.className = 'health-warning';
    note.textContent = `service unreachable at ${apiBase()} الخدمة غير متاحة`;
    root.prepend(note);
  }
}

document.addEventListener('DOMContentLoaded', () => {
  void boot();
});
