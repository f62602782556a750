// Waveform geometry (pure) plus a thin canvas renderer. Zooming out picks a
// higher pyramid level so one bucket never paints narrower than a pixel.

import type { LoopJson, WaveformTile } from "./api.js";

export interface Viewport {
  startMs: number;
  endMs: number;
  widthPx: number;
  heightPx: number;
}

export interface WaveformMeta {
  sampleRate: number;
  totalSamples: number;
  baseBucket: number;
  levelCount: number;
  durationMs: number;
}

/** Highest level whose buckets still span >= 1 px in this viewport. */
export function pickLevel(meta: WaveformMeta, view: Viewport): number {
  const viewSamples = ((view.endMs - view.startMs) / 1000) * meta.sampleRate;
  const samplesPerPx = Math.max(1, viewSamples / Math.max(1, view.widthPx));
  const raw = Math.floor(Math.log2(samplesPerPx / meta.baseBucket));
  return Math.min(Math.max(raw, 0), meta.levelCount - 1);
}

export function bucketSpanSamples(meta: WaveformMeta, level: number): number {
  return meta.baseBucket * 2 ** level;
}

/** Bucket range [from, from+count) covering the viewport at the level. */
export function bucketRange(
  meta: WaveformMeta,
  view: Viewport,
  level: number,
): { from: number; count: number } {
  const span = bucketSpanSamples(meta, level);
  const startSample = Math.floor((view.startMs / 1000) * meta.sampleRate);
  const endSample = Math.ceil((view.endMs / 1000) * meta.sampleRate);
  const from = Math.max(0, Math.floor(startSample / span));
  const last = Math.max(from, Math.ceil(endSample / span));
  return { from, count: last - from };
}

export interface PeakRect {
  x: number;
  y: number;
  w: number;
  h: number;
}

/** One vertical bar per bucket, y scaled so -1..1 fills the height. */
export function peakRects(
  peaks: [number, number][],
  view: Viewport,
  meta: WaveformMeta,
  level: number,
  fromBucket: number,
): PeakRect[] {
  const span = bucketSpanSamples(meta, level);
  const viewStartSample = (view.startMs / 1000) * meta.sampleRate;
  const viewSamples = ((view.endMs - view.startMs) / 1000) * meta.sampleRate;
  const pxPerSample = view.widthPx / Math.max(1, viewSamples);
  const mid = view.heightPx / 2;
  return peaks.map(([lo, hi], i) => {
    const x = ((fromBucket + i) * span - viewStartSample) * pxPerSample;
    const w = Math.max(1, span * pxPerSample);
    const yTop = mid - hi * mid;
    const yBottom = mid - lo * mid;
    return { x, y: yTop, w, h: Math.max(1, yBottom - yTop) };
  });
}

/** Loop region highlight in viewport pixels; null when off-screen. */
export function loopOverlay(loop: LoopJson, view: Viewport): { x: number; w: number } | null {
  const msPerPx = (view.endMs - view.startMs) / Math.max(1, view.widthPx);
  const start = Math.max(loop.span.start_ms, view.startMs);
  const end = Math.min(loop.span.end_ms, view.endMs);
  if (end <= start) return null;
  return { x: (start - view.startMs) / msPerPx, w: (end - start) / msPerPx };
}

/** Click-drag in pixels -> candidate loop span, clamped to the media. */
export function dragToSpan(
  x1: number,
  x2: number,
  view: Viewport,
  mediaDurationMs: number,
): { start_ms: number; end_ms: number } | null {
  const msPerPx = (view.endMs - view.startMs) / Math.max(1, view.widthPx);
  const a = view.startMs + Math.min(x1, x2) * msPerPx;
  const b = view.startMs + Math.max(x1, x2) * msPerPx;
  const start = Math.max(0, Math.min(Math.round(a), mediaDurationMs - 1));
  const end = Math.max(start + 1, Math.min(Math.round(b), mediaDurationMs));
  if (end <= start) return null;
  return { start_ms: start, end_ms: end };
}

/** Paint one tile onto a canvas (DOM-side; logic above stays testable). */
export function drawTile(
  canvas: HTMLCanvasElement,
  tile: WaveformTile,
  view: Viewport,
  loop: LoopJson | null,
): void {
  const ctx = canvas.getContext("2d");
  if (!ctx) return;
  const meta: WaveformMeta = {
    sampleRate: tile.sample_rate,
    totalSamples: tile.total_samples,
    baseBucket: tile.base_bucket,
    levelCount: tile.level_count,
    durationMs: tile.duration_ms,
  };
  ctx.clearRect(0, 0, view.widthPx, view.heightPx);
  ctx.fillStyle = "#f4f4f4";
  ctx.fillRect(0, 0, view.widthPx, view.heightPx);
  ctx.fillStyle = "#4878a8";
  for (const rect of peakRects(tile.peaks, view, meta, tile.level, tile.from_bucket)) {
    ctx.fillRect(rect.x, rect.y, rect.w, rect.h);
  }
  if (loop) {
    const overlay = loopOverlay(loop, view);
    if (overlay) {
      ctx.fillStyle = "rgba(168, 84, 72, 0.25)";
      ctx.fillRect(overlay.x, 0, overlay.w, view.heightPx);
      ctx.strokeStyle = "#a85448";
      ctx.strokeRect(overlay.x, 0, overlay.w, view.heightPx);
    }
  }
}
