/**
 * Bundled preset corpora for the inspector.
 *
 * Each preset carries a corpus plus the session settings it trains well
 * under. "analogy" is the toy king/queen/man/woman vocabulary used to
 * reproduce the classic word-analogy result.
 */

import type { SessionConfig } from "./api.js";

const ANALOGY_PAIRS = [
  "king royal",
  "queen royal",
  "king crown",
  "queen crown",
  "king he",
  "queen she",
  "man he",
  "woman she",
  "man common",
  "woman common",
  "man work",
  "woman work",
];

const ANALOGY_CORPUS = Array(5).fill(ANALOGY_PAIRS.join("\n")).join("\n");

export const PRESETS: Record<string, SessionConfig> = {
  alternating: {
    corpus: Array(20).fill("a b").join(" "),
    architecture: "cbow",
    objective: "softmax",
    dim: 2,
    window: 1,
    eta: 0.2,
    seed: 1,
  },
  "fruit and drink": {
    corpus: Array(10)
      .fill("apple juice orange juice apple eat orange eat milk drink water drink")
      .join(" "),
    architecture: "skipgram",
    objective: "softmax",
    dim: 5,
    window: 1,
    eta: 0.1,
    seed: 1,
  },
  analogy: {
    corpus: ANALOGY_CORPUS,
    architecture: "skipgram",
    objective: "ns",
    dim: 10,
    window: 1,
    k_negatives: 3,
    eta: 0.05,
    seed: 1,
  },
};

export const DEFAULT_PRESET = "alternating";
