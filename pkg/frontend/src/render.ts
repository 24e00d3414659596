// Pure HTML-string renderers, testable without a DOM.

import { ApiError, PredictionItem, PredictTiming } from "./api.js";

export function formatPercent(probability: number): string {
  return `${(probability * 100).toFixed(2)}%`;
}

function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/** At most k bars, strictly in descending-probability order. */
export function renderBars(predictions: PredictionItem[], k = 5): string {
  const shown = [...predictions]
    .sort((a, b) => b.probability - a.probability)
    .slice(0, k);
  return shown
    .map((p) => {
      const pct = Math.max(0, Math.min(100, p.probability * 100));
      return (
        `<div class="bar-row">` +
        `<span class="bar-label">${escapeHtml(p.gloss)}</span>` +
        `<span class="bar-track"><span class="bar-fill" style="width:${pct.toFixed(2)}%"></span></span>` +
        `<span class="bar-value">${formatPercent(p.probability)}</span>` +
        `</div>`
      );
    })
    .join("\n");
}

export function renderTiming(timing: PredictTiming): string {
  return `extract ${timing.extract_ms.toFixed(1)} ms · infer ${timing.infer_ms.toFixed(1)} ms`;
}

/** Human guidance for the documented failure modes. */
export function guidanceFor(error: unknown): string {
  if (error instanceof ApiError) {
    if (error.noLandmarksDetected) {
      return "No person detected in the clip. Make sure your upper body and hands are visible, then try again.";
    }
    if (error.status === 413) {
      return "The clip is too large or too long. Keep recordings under the service cap and retry.";
    }
    if (error.status === 503) {
      return "The server cannot process videos right now (no pose estimator configured). Try again later.";
    }
    return `The server rejected the request: ${error.message}. Adjust and retry.`;
  }
  return "Could not reach the recognition service. Check that it is running, then retry.";
}

export const CAMERA_DENIED_GUIDANCE =
  "Camera access was denied. You can still upload a pre-recorded clip below.";
