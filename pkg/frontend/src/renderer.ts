/** Point-light style skeleton playback: joint dots plus limb segments. */

import { fitTransform, interpolatePose, project, ViewTransform } from "./geometry";
import { BONES, GaitPayload } from "./types";

/** The subset of CanvasRenderingContext2D the renderer needs (stubable in tests). */
export interface Context2DLike {
  clearRect(x: number, y: number, w: number, h: number): void;
  beginPath(): void;
  moveTo(x: number, y: number): void;
  lineTo(x: number, y: number): void;
  stroke(): void;
  arc(x: number, y: number, r: number, a0: number, a1: number): void;
  fill(): void;
  strokeStyle: string | unknown;
  fillStyle: string | unknown;
  lineWidth: number;
}

export interface PlaybackOptions {
  context?: Context2DLike;
  now?: () => number; // milliseconds
  requestFrame?: (cb: () => void) => number;
  cancelFrame?: (handle: number) => void;
}

export class PlaybackView {
  readonly payload: GaitPayload;
  private readonly ctx: Context2DLike;
  private readonly width: number;
  private readonly height: number;
  private readonly transform: ViewTransform;
  private readonly now: () => number;
  private readonly requestFrame: (cb: () => void) => number;
  private readonly cancelFrame: (handle: number) => void;
  private startedAt = 0;
  private handle: number | null = null;

  constructor(canvas: HTMLCanvasElement, payload: GaitPayload,
              options: PlaybackOptions = {}) {
    this.payload = payload;
    const ctx = options.context
      ?? (canvas.getContext("2d") as unknown as Context2DLike | null);
    if (!ctx) {
      throw new Error("no 2d canvas context available");
    }
    this.ctx = ctx;
    this.width = canvas.width;
    this.height = canvas.height;
    this.transform = fitTransform(payload, this.width, this.height, 0.8);
    this.now = options.now ?? (() => performance.now());
    this.requestFrame = options.requestFrame
      ?? ((cb) => requestAnimationFrame(() => cb()));
    this.cancelFrame = options.cancelFrame ?? ((h) => cancelAnimationFrame(h));
  }

  /** Draw the pose for an absolute clock position (seconds into the loop). */
  renderAt(clockSeconds: number): void {
    const pose = interpolatePose(this.payload, clockSeconds);
    const ctx = this.ctx;
    ctx.clearRect(0, 0, this.width, this.height);
    ctx.strokeStyle = "#dddddd";
    ctx.lineWidth = 2;
    for (const [a, b] of BONES) {
      const [ax, ay] = project(this.transform, pose[a]);
      const [bx, by] = project(this.transform, pose[b]);
      ctx.beginPath();
      ctx.moveTo(ax, ay);
      ctx.lineTo(bx, by);
      ctx.stroke();
    }
    ctx.fillStyle = "#ffffff";
    for (const joint of pose) {
      const [x, y] = project(this.transform, joint);
      ctx.beginPath();
      ctx.arc(x, y, 4, 0, 2 * Math.PI);
      ctx.fill();
    }
  }

  /** Loop at the source frame rate until stop() is called. */
  start(): void {
    if (this.handle !== null) return;
    this.startedAt = this.now();
    const tick = () => {
      this.renderAt((this.now() - this.startedAt) / 1000);
      this.handle = this.requestFrame(tick);
    };
    this.handle = this.requestFrame(tick);
  }

  stop(): void {
    if (this.handle !== null) {
      this.cancelFrame(this.handle);
      this.handle = null;
    }
  }
}
