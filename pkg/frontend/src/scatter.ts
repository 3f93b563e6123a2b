/**
 * PCA scatter plot: one labeled mark per word per visible family.
 *
 * Input vectors render as blue circles, output vectors as orange diamonds,
 * so the two families stay visually distinct in the shared projection.
 */

import type { PcaPayload } from "./api.js";
import type { FamilyFilter } from "./viewstate.js";

export interface Mark {
  word: string;
  family: "input" | "output";
  x: number;
  y: number;
}

/** Flatten a PCA payload into plottable marks, honoring the family filter. */
export function scatterMarks(payload: PcaPayload, filter: FamilyFilter = "both"): Mark[] {
  const marks: Mark[] = [];
  if (filter !== "output") {
    payload.words.forEach((word, i) => {
      marks.push({ word, family: "input", x: payload.input[i][0], y: payload.input[i][1] });
    });
  }
  if (filter !== "input") {
    payload.words.forEach((word, i) => {
      marks.push({ word, family: "output", x: payload.output[i][0], y: payload.output[i][1] });
    });
  }
  return marks;
}

export interface Extent {
  min: number;
  max: number;
}

/** Padded extent of one coordinate across marks; degenerate spans widen to 1. */
export function coordExtent(values: number[]): Extent {
  let min = Math.min(...values);
  let max = Math.max(...values);
  if (!Number.isFinite(min) || !Number.isFinite(max)) {
    min = -1;
    max = 1;
  }
  if (max - min < 1e-12) {
    min -= 0.5;
    max += 0.5;
  }
  const pad = (max - min) * 0.1;
  return { min: min - pad, max: max + pad };
}

function scale(extent: Extent, rangeMin: number, rangeMax: number): (v: number) => number {
  const span = extent.max - extent.min;
  return (v) => rangeMin + ((v - extent.min) / span) * (rangeMax - rangeMin);
}

const SVG_NS = "http://www.w3.org/2000/svg";

/**
 * Render marks into an SVG element, replacing previous content. Empty mark
 * lists render nothing but a message.
 */
export function renderScatter(svg: SVGSVGElement, marks: Mark[]): void {
  const width = Number(svg.getAttribute("width") ?? 420);
  const height = Number(svg.getAttribute("height") ?? 320);
  svg.replaceChildren();

  if (marks.length === 0) {
    const text = svg.ownerDocument.createElementNS(SVG_NS, "text");
    text.setAttribute("x", String(width / 2));
    text.setAttribute("y", String(height / 2));
    text.setAttribute("class", "scatter-empty");
    text.textContent = "nothing to plot";
    svg.appendChild(text);
    return;
  }

  const sx = scale(coordExtent(marks.map((m) => m.x)), 30, width - 10);
  const sy = scale(coordExtent(marks.map((m) => m.y)), height - 20, 10);

  for (const mark of marks) {
    const x = sx(mark.x);
    const y = sy(mark.y);
    let shape: SVGElement;
    if (mark.family === "input") {
      shape = svg.ownerDocument.createElementNS(SVG_NS, "circle");
      shape.setAttribute("cx", String(x));
      shape.setAttribute("cy", String(y));
      shape.setAttribute("r", "4");
    } else {
      shape = svg.ownerDocument.createElementNS(SVG_NS, "rect");
      shape.setAttribute("x", String(x - 3.5));
      shape.setAttribute("y", String(y - 3.5));
      shape.setAttribute("width", "7");
      shape.setAttribute("height", "7");
      shape.setAttribute("transform", `rotate(45 ${x} ${y})`);
    }
    shape.setAttribute("class", `mark mark-${mark.family}`);
    shape.setAttribute("data-word", mark.word);
    svg.appendChild(shape);

    const label = svg.ownerDocument.createElementNS(SVG_NS, "text");
    label.setAttribute("x", String(x + 6));
    label.setAttribute("y", String(y - 4));
    label.setAttribute("class", `mark-label mark-label-${mark.family}`);
    label.textContent = mark.word;
    svg.appendChild(label);
  }
}
