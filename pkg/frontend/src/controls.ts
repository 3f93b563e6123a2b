/**
 * Training controls: step-1 / step-500 buttons, learning-rate input, preset
 * selector.
 *
 * At most one mutation per session is in flight at a time; the runner
 * rejects overlapping mutations and reports busy-ness so the UI can disable
 * buttons while a step runs.
 */

export const BATCH_STEP = 500;

/** Serializes mutations: run() refuses to start while another is pending. */
export class MutationGate {
  private busy = false;

  get inFlight(): boolean {
    return this.busy;
  }

  async run<T>(action: () => Promise<T>): Promise<T> {
    if (this.busy) {
      throw new Error("a training action is already in flight");
    }
    this.busy = true;
    try {
      return await action();
    } finally {
      this.busy = false;
    }
  }
}

export interface ControlHandlers {
  step(n: number): Promise<unknown>;
  setEta(eta: number): Promise<unknown>;
  choosePreset(name: string): Promise<unknown>;
}

/** Wire the control elements to handlers through a shared mutation gate. */
export function bindControls(
  elements: {
    step1: HTMLButtonElement;
    stepBatch: HTMLButtonElement;
    eta: HTMLInputElement;
    preset: HTMLSelectElement;
  },
  handlers: ControlHandlers,
  gate: MutationGate = new MutationGate(),
  onError: (message: string) => void = () => {},
): MutationGate {
  const buttons = [elements.step1, elements.stepBatch];
  const guarded = (action: () => Promise<unknown>) => async () => {
    if (gate.inFlight) {
      return;
    }
    buttons.forEach((b) => (b.disabled = true));
    try {
      await gate.run(action);
    } catch (err) {
      onError(err instanceof Error ? err.message : String(err));
    } finally {
      buttons.forEach((b) => (b.disabled = false));
    }
  };

  elements.step1.addEventListener("click", guarded(() => handlers.step(1)));
  elements.stepBatch.addEventListener(
    "click",
    guarded(() => handlers.step(BATCH_STEP)),
  );
  elements.eta.addEventListener(
    "change",
    guarded(() => handlers.setEta(Number(elements.eta.value))),
  );
  elements.preset.addEventListener(
    "change",
    guarded(() => handlers.choosePreset(elements.preset.value)),
  );
  return gate;
}
