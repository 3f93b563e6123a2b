/**
 * Activation probing: turn a service activate response into display rows.
 *
 * Probing is read-only on the server; this module only formats. The hidden
 * vector renders as a bar per dimension, and the output side as a list
 * sorted by probability (or sigmoid activation for negative sampling),
 * highest first.
 */

import type { ActivateResult } from "./api.js";

export const DISPLAY_DECIMALS = 6;

export interface OutputRow {
  word: string;
  value: number;
  kind: "probability" | "activation";
}

export interface ProbeView {
  h: number[];
  hFormatted: string[];
  outputs: OutputRow[];
}

export function formatValue(v: number): string {
  return v.toFixed(DISPLAY_DECIMALS);
}

/** Build the display model: formatted h plus descending output rows. */
export function probeView(result: ActivateResult, words: string[]): ProbeView {
  const values = result.probabilities ?? result.activations ?? [];
  const kind: OutputRow["kind"] =
    result.probabilities !== undefined ? "probability" : "activation";
  const outputs = values
    .map((value, i) => ({ word: words[i], value, kind }))
    .sort((a, b) => b.value - a.value);
  return {
    h: result.h,
    hFormatted: result.h.map(formatValue),
    outputs,
  };
}

/** Render h bars and the sorted output list into a container. */
export function renderProbe(container: HTMLElement, view: ProbeView): void {
  container.replaceChildren();
  const doc = container.ownerDocument;

  const hDiv = doc.createElement("div");
  hDiv.className = "probe-hidden";
  const hMax = Math.max(1e-12, ...view.h.map((v) => Math.abs(v)));
  view.h.forEach((v, i) => {
    const bar = doc.createElement("div");
    bar.className = "h-bar";
    bar.style.width = `${(Math.abs(v) / hMax) * 100}%`;
    bar.dataset.sign = v < 0 ? "neg" : "pos";
    bar.textContent = `h[${i}] = ${view.hFormatted[i]}`;
    hDiv.appendChild(bar);
  });
  container.appendChild(hDiv);

  const list = doc.createElement("ol");
  list.className = "probe-outputs";
  for (const row of view.outputs) {
    const item = doc.createElement("li");
    item.textContent = `${row.word}: ${formatValue(row.value)}`;
    item.dataset.word = row.word;
    list.appendChild(item);
  }
  container.appendChild(list);
}
