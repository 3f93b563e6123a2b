/**
 * Weight-matrix heatmaps for W (input vectors) and W' (output vectors).
 *
 * Cells use a diverging red/blue scale, symmetric about zero: the scale
 * limit is the largest |value| across the matrix, so color(x) mirrors
 * color(-x) and a zero-initialized matrix renders uniformly neutral.
 */

import { interpolateRgb } from "d3";

// endpoints are exact RGB channel swaps of each other, so the scale is
// symmetric by construction: color(x) is color(-x) with red and blue swapped
const POSITIVE_END = "rgb(202, 32, 38)";
const NEGATIVE_END = "rgb(38, 32, 202)";
const NEUTRAL = "rgb(245, 245, 245)";

export interface HeatmapCell {
  row: number;
  col: number;
  value: number;
  /** position in [-1, 1]: value / maxAbs, 0 at the neutral midpoint */
  t: number;
}

export function maxAbs(matrix: number[][]): number {
  let m = 0;
  for (const row of matrix) {
    for (const v of row) {
      m = Math.max(m, Math.abs(v));
    }
  }
  return m;
}

/** Flatten a matrix into colored cells on the shared symmetric scale. */
export function heatmapCells(matrix: number[][], limit?: number): HeatmapCell[] {
  const lim = limit ?? maxAbs(matrix);
  const cells: HeatmapCell[] = [];
  matrix.forEach((row, i) => {
    row.forEach((value, j) => {
      cells.push({ row: i, col: j, value, t: lim === 0 ? 0 : value / lim });
    });
  });
  return cells;
}

/** Diverging color for a normalized position t in [-1, 1]; t=0 is neutral. */
export function divergingColor(t: number): string {
  const clamped = Math.max(-1, Math.min(1, t));
  const end = clamped >= 0 ? POSITIVE_END : NEGATIVE_END;
  return interpolateRgb(NEUTRAL, end)(Math.abs(clamped));
}

/** Render a matrix as a CSS grid of colored divs with word row labels. */
export function renderHeatmap(
  container: HTMLElement,
  matrix: number[][],
  rowLabels: string[],
  limit?: number,
): void {
  container.replaceChildren();
  if (matrix.length === 0) {
    return;
  }
  const cols = matrix[0].length;
  container.style.display = "grid";
  container.style.gridTemplateColumns = `max-content repeat(${cols}, 14px)`;
  const cells = heatmapCells(matrix, limit);
  let currentRow = -1;
  for (const cell of cells) {
    if (cell.row !== currentRow) {
      currentRow = cell.row;
      const label = container.ownerDocument.createElement("span");
      label.className = "heatmap-row-label";
      label.textContent = rowLabels[cell.row] ?? String(cell.row);
      container.appendChild(label);
    }
    const div = container.ownerDocument.createElement("div");
    div.className = "heatmap-cell";
    div.style.backgroundColor = divergingColor(cell.t);
    div.title = `${rowLabels[cell.row] ?? cell.row}[${cell.col}] = ${cell.value.toFixed(4)}`;
    container.appendChild(div);
  }
}
