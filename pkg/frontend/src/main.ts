/**
 * Inspector entry point: wires the API client, view state, plots and
 * controls together, and polls for fresh snapshots.
 *
 * All model math lives server-side; this file only moves JSON payloads into
 * the renderers. Snapshots apply monotonically by version (stale polls are
 * dropped), and the probe panel re-renders from the activate endpoint
 * whenever the selection or version changes.
 */

import { ApiClient, type Snapshot } from "./api.js";
import { bindControls, MutationGate } from "./controls.js";
import { renderHeatmap } from "./heatmap.js";
import { DEFAULT_PRESET, PRESETS } from "./presets.js";
import { renderProbe, probeView } from "./probe.js";
import { renderScatter, scatterMarks } from "./scatter.js";
import { ViewState, type FamilyFilter } from "./viewstate.js";

const SERVICE_URL = "http://127.0.0.1:8000";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) {
    throw new Error(`missing element #${id}`);
  }
  return node as T;
}

async function start(): Promise<void> {
  const api = new ApiClient(SERVICE_URL);
  const view = new ViewState();
  const gate = new MutationGate();

  const scatterSvg = el<HTMLElement>("scatter") as unknown as SVGSVGElement;
  const statusLine = el<HTMLDivElement>("status");
  const errorLine = el<HTMLDivElement>("error");
  const inputHeat = el<HTMLDivElement>("heatmap-input");
  const outputHeat = el<HTMLDivElement>("heatmap-output");
  const probePanel = el<HTMLDivElement>("probe");
  const wordList = el<HTMLDivElement>("words");
  const filterSelect = el<HTMLSelectElement>("filter");
  const presetSelect = el<HTMLSelectElement>("preset");

  for (const name of Object.keys(PRESETS)) {
    const option = document.createElement("option");
    option.value = name;
    option.textContent = name;
    presetSelect.appendChild(option);
  }
  presetSelect.value = DEFAULT_PRESET;

  let words: string[] = [];

  function showError(message: string): void {
    errorLine.textContent = message;
  }

  function renderWords(snapshot: Snapshot): void {
    words = snapshot.words;
    wordList.replaceChildren();
    snapshot.words.forEach((word, id) => {
      const button = document.createElement("button");
      button.textContent = word;
      button.className = view.activatedWords.has(id) ? "word active" : "word";
      button.addEventListener("click", () => {
        view.toggleWord(id);
        button.classList.toggle("active");
        void refreshProbe();
      });
      wordList.appendChild(button);
    });
  }

  async function refreshProbe(): Promise<void> {
    if (!view.sessionId || view.activatedWords.size === 0) {
      probePanel.replaceChildren();
      return;
    }
    try {
      const result = await api.activate(view.sessionId, [...view.activatedWords]);
      renderProbe(probePanel, probeView(result, words));
    } catch (err) {
      showError(err instanceof Error ? err.message : String(err));
    }
  }

  async function refresh(): Promise<void> {
    if (!view.sessionId) {
      return;
    }
    try {
      const snapshot = await api.getState(view.sessionId);
      if (!view.accept(snapshot)) {
        return;
      }
      errorLine.textContent = "";
      statusLine.textContent =
        `${snapshot.architecture}/${snapshot.objective}  V=${snapshot.words.length}` +
        `  epoch ${snapshot.epoch}  instance ${snapshot.instances_done}/${snapshot.instances_per_epoch}` +
        `  eta ${snapshot.eta}  version ${snapshot.version}`;
      renderWords(snapshot);
      renderHeatmap(inputHeat, snapshot.input_vectors, snapshot.words);
      renderHeatmap(outputHeat, snapshot.output_vectors, snapshot.words);
      const pca = await api.getPca(view.sessionId);
      renderScatter(scatterSvg, scatterMarks(pca, view.filter));
      await refreshProbe();
    } catch (err) {
      showError(err instanceof Error ? err.message : String(err));
    }
  }

  async function openSession(preset: string): Promise<void> {
    const snapshot = await api.createSession(PRESETS[preset]);
    view.reset(snapshot.id, preset);
    await refresh();
  }

  bindControls(
    {
      step1: el<HTMLButtonElement>("step-1"),
      stepBatch: el<HTMLButtonElement>("step-500"),
      eta: el<HTMLInputElement>("eta"),
      preset: presetSelect,
    },
    {
      step: async (n) => {
        if (view.sessionId) {
          await api.step(view.sessionId, n);
          await refresh();
        }
      },
      setEta: async (eta) => {
        if (view.sessionId) {
          await api.setEta(view.sessionId, eta);
        }
      },
      choosePreset: (name) => openSession(name),
    },
    gate,
    showError,
  );

  filterSelect.addEventListener("change", () => {
    view.filter = filterSelect.value as FamilyFilter;
    view.version = -1; // force repaint with the new filter
    void refresh();
  });

  await openSession(DEFAULT_PRESET);
  setInterval(() => void refresh(), view.pollIntervalMs);
}

void start();
