/** Pure playback geometry: validation, cyclic interpolation, viewport fitting. */

import { GaitPayload, N_JOINTS } from "./types";

/** Returns a human-readable problem description, or null when valid. */
export function validatePayload(payload: GaitPayload): string | null {
  if (!payload || !Array.isArray(payload.frames) || payload.frames.length < 1) {
    return "payload has no frames";
  }
  if (!Number.isFinite(payload.fps) || payload.fps <= 0) {
    return `bad fps: ${payload.fps}`;
  }
  for (let t = 0; t < payload.frames.length; t++) {
    const frame = payload.frames[t];
    if (!Array.isArray(frame) || frame.length !== N_JOINTS) {
      return `frame ${t} does not have ${N_JOINTS} joints`;
    }
    for (let j = 0; j < N_JOINTS; j++) {
      const p = frame[j];
      if (!Array.isArray(p) || p.length !== 3 || p.some((c) => !Number.isFinite(c))) {
        return `frame ${t}, joint ${j}: non-finite coordinate`;
      }
    }
  }
  return null;
}

/**
 * Pose at a wall-clock time, looping the clip and lerping between frames.
 * clockSeconds beyond the clip wraps cyclically (the last frame blends into
 * the first).
 */
export function interpolatePose(payload: GaitPayload, clockSeconds: number): number[][] {
  const tau = payload.frames.length;
  let cursor = (clockSeconds * payload.fps) % tau;
  if (cursor < 0) cursor += tau;
  const lo = Math.floor(cursor);
  const frac = cursor - lo;
  const hi = (lo + 1) % tau;
  const a = payload.frames[lo];
  if (frac === 0) return a.map((p) => [...p]);
  const b = payload.frames[hi];
  return a.map((p, j) => [
    p[0] + frac * (b[j][0] - p[0]),
    p[1] + frac * (b[j][1] - p[1]),
    p[2] + frac * (b[j][2] - p[2]),
  ]);
}

export interface ViewTransform {
  scale: number;
  /** world-to-screen: screenX = offsetX + x * scale, screenY = offsetY - y * scale */
  offsetX: number;
  offsetY: number;
}

/**
 * Frontal orthographic framing: drop z, scale so the skeleton's height fills
 * `fill` of the viewport height, centered. Bounds are taken over the whole
 * clip so the camera does not jitter frame to frame.
 */
export function fitTransform(payload: GaitPayload, width: number, height: number,
                             fill = 0.8): ViewTransform {
  let minX = Infinity, maxX = -Infinity, minY = Infinity, maxY = -Infinity;
  for (const frame of payload.frames) {
    for (const [x, y] of frame) {
      if (x < minX) minX = x;
      if (x > maxX) maxX = x;
      if (y < minY) minY = y;
      if (y > maxY) maxY = y;
    }
  }
  const skeletonHeight = maxY - minY;
  const scale = skeletonHeight > 0 ? (fill * height) / skeletonHeight : 1.0;
  const midX = (minX + maxX) / 2;
  const midY = (minY + maxY) / 2;
  return {
    scale,
    offsetX: width / 2 - midX * scale,
    offsetY: height / 2 + midY * scale,
  };
}

export function project(transform: ViewTransform, point: number[]): [number, number] {
  return [
    transform.offsetX + point[0] * transform.scale,
    transform.offsetY - point[1] * transform.scale,
  ];
}
