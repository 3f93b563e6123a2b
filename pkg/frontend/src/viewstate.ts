/**
 * Client-side view state with monotonic snapshot versioning.
 *
 * Snapshot fetches may overlap (polling plus post-step refreshes); payloads
 * are applied only if their version is ahead of what is already rendered, so
 * the display never repaints backwards.
 */

export type FamilyFilter = "both" | "input" | "output";

export interface Versioned {
  version: number;
}

export class ViewState {
  sessionId: string | null = null;
  version = -1;
  preset: string | null = null;
  activatedWords: Set<number> = new Set();
  filter: FamilyFilter = "both";
  pollIntervalMs = 1000;

  /** Start tracking a fresh session; all per-session state resets. */
  reset(sessionId: string, preset: string | null = null): void {
    this.sessionId = sessionId;
    this.version = -1;
    this.preset = preset;
    this.activatedWords.clear();
  }

  /**
   * Gate a fetched payload: returns true (and advances the tracked version)
   * only for payloads strictly newer than the last applied one.
   */
  accept(payload: Versioned): boolean {
    if (payload.version <= this.version) {
      return false;
    }
    this.version = payload.version;
    return true;
  }

  toggleWord(id: number): void {
    if (this.activatedWords.has(id)) {
      this.activatedWords.delete(id);
    } else {
      this.activatedWords.add(id);
    }
  }
}
