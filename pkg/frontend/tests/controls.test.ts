// @vitest-environment jsdom
import { describe, expect, it } from "vitest";

import { BATCH_STEP, bindControls, MutationGate } from "../src/controls.js";

function makeElements() {
  return {
    step1: document.createElement("button"),
    stepBatch: document.createElement("button"),
    eta: document.createElement("input"),
    preset: document.createElement("select"),
  };
}

describe("MutationGate", () => {
  it("rejects overlapping mutations", async () => {
    const gate = new MutationGate();
    let release!: () => void;
    const first = gate.run(() => new Promise<void>((r) => (release = r)));
    expect(gate.inFlight).toBe(true);
    await expect(gate.run(async () => {})).rejects.toThrow(/in flight/);
    release();
    await first;
    expect(gate.inFlight).toBe(false);
  });

  it("clears busy state after a failure", async () => {
    const gate = new MutationGate();
    await expect(gate.run(async () => Promise.reject(new Error("boom")))).rejects.toThrow("boom");
    expect(gate.inFlight).toBe(false);
  });
});

describe("bindControls", () => {
  it("step-500 issues exactly one step with n=500", async () => {
    const elements = makeElements();
    const calls: number[] = [];
    bindControls(elements, {
      step: async (n) => {
        calls.push(n);
      },
      setEta: async () => {},
      choosePreset: async () => {},
    });
    elements.stepBatch.click();
    await Promise.resolve();
    expect(calls).toEqual([BATCH_STEP]);
  });

  it("disables step buttons while a step is in flight", async () => {
    const elements = makeElements();
    let release!: () => void;
    bindControls(elements, {
      step: () => new Promise<void>((r) => (release = r)),
      setEta: async () => {},
      choosePreset: async () => {},
    });
    elements.step1.click();
    await Promise.resolve();
    expect(elements.step1.disabled).toBe(true);
    expect(elements.stepBatch.disabled).toBe(true);
    release();
    await new Promise((r) => setTimeout(r, 0));
    expect(elements.step1.disabled).toBe(false);
  });

  it("ignores clicks while busy instead of queueing them", async () => {
    const elements = makeElements();
    const calls: number[] = [];
    let release!: () => void;
    bindControls(elements, {
      step: (n) => {
        calls.push(n);
        return new Promise<void>((r) => (release = r));
      },
      setEta: async () => {},
      choosePreset: async () => {},
    });
    elements.step1.click();
    elements.stepBatch.click();
    await Promise.resolve();
    expect(calls).toEqual([1]);
    release();
  });

  it("eta change posts the parsed value", async () => {
    const elements = makeElements();
    const etas: number[] = [];
    bindControls(elements, {
      step: async () => {},
      setEta: async (eta) => {
        etas.push(eta);
      },
      choosePreset: async () => {},
    });
    elements.eta.value = "0.2";
    elements.eta.dispatchEvent(new Event("change"));
    await Promise.resolve();
    expect(etas).toEqual([0.2]);
  });

  it("routes errors to the error callback", async () => {
    const elements = makeElements();
    const errors: string[] = [];
    bindControls(
      elements,
      {
        step: async () => {
          throw new Error("service said no");
        },
        setEta: async () => {},
        choosePreset: async () => {},
      },
      new MutationGate(),
      (m) => errors.push(m),
    );
    elements.step1.click();
    await new Promise((r) => setTimeout(r, 0));
    expect(errors).toEqual(["service said no"]);
  });
});
