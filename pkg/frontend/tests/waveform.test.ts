import { describe, expect, it } from "vitest";

import type { LoopJson } from "../src/api.js";
import {
  Viewport,
  WaveformMeta,
  bucketRange,
  bucketSpanSamples,
  dragToSpan,
  loopOverlay,
  peakRects,
  pickLevel,
} from "../src/waveform.js";

const META: WaveformMeta = {
  sampleRate: 8000,
  totalSamples: 16000,
  baseBucket: 512,
  levelCount: 5,
  durationMs: 2000,
};

function view(startMs: number, endMs: number, widthPx = 900): Viewport {
  return { startMs, endMs, widthPx, heightPx: 140 };
}

describe("level selection", () => {
  it("zooming out moves to higher levels (bucket span >= 1 px)", () => {
    const zoomedIn = pickLevel(META, view(0, 100));
    const midZoom = pickLevel(META, view(0, 1000));
    const zoomedOut = pickLevel(META, view(0, 2000, 10));
    expect(zoomedIn).toBe(0);
    expect(zoomedOut).toBeGreaterThan(midZoom);
    expect(zoomedOut).toBeLessThan(META.levelCount);
  });

  it("never exceeds the pyramid depth", () => {
    const tiny = { ...META, levelCount: 2 };
    expect(pickLevel(tiny, view(0, 2000, 2))).toBe(1);
  });

  it("bucket range covers the viewport", () => {
    const level = 1;
    const { from, count } = bucketRange(META, view(500, 1500), level);
    const span = bucketSpanSamples(META, level);
    expect(from * span).toBeLessThanOrEqual(0.5 * META.sampleRate);
    expect((from + count) * span).toBeGreaterThanOrEqual(1.5 * META.sampleRate);
  });
});

describe("geometry", () => {
  it("peak rects scale to the lane height", () => {
    const rects = peakRects(
      [
        [-1, 1],
        [0, 0.5],
      ],
      view(0, 2000),
      META,
      4,
      0,
    );
    expect(rects[0]?.y).toBe(0);
    expect(rects[0]!.h).toBeCloseTo(140, 3);
    expect(rects[1]!.y).toBeCloseTo(35, 3);
  });

  it("loop overlay maps the region into pixels", () => {
    const loop = { span: { start_ms: 500, end_ms: 1000 } } as LoopJson;
    const overlay = loopOverlay(loop, view(0, 2000, 200));
    expect(overlay).not.toBeNull();
    expect(overlay!.x).toBeCloseTo(50, 3);
    expect(overlay!.w).toBeCloseTo(50, 3);
    expect(loopOverlay(loop, view(1200, 2000, 200))).toBeNull();
  });

  it("drag beyond the media end clamps", () => {
    const span = dragToSpan(0, 10_000, view(0, 2000, 900), 2000);
    expect(span).toEqual({ start_ms: 0, end_ms: 2000 });
    const backwards = dragToSpan(400, 100, view(0, 2000, 900), 2000);
    expect(backwards!.start_ms).toBeLessThan(backwards!.end_ms);
  });
});
