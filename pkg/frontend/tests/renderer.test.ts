// @vitest-environment happy-dom
import { describe, expect, it } from "vitest";

import { PlaybackView } from "../src/renderer";
import { syntheticPayload } from "./mock_service";

class CountingContext {
  ops: Record<string, number> = {};
  strokeStyle: unknown = "";
  fillStyle: unknown = "";
  lineWidth = 1;
  private bump(op: string) { this.ops[op] = (this.ops[op] ?? 0) + 1; }
  clearRect() { this.bump("clearRect"); }
  beginPath() { this.bump("beginPath"); }
  moveTo() { this.bump("moveTo"); }
  lineTo() { this.bump("lineTo"); }
  stroke() { this.bump("stroke"); }
  arc() { this.bump("arc"); }
  fill() { this.bump("fill"); }
}

function canvasElement(): HTMLCanvasElement {
  const canvas = document.createElement("canvas") as HTMLCanvasElement;
  canvas.width = 400;
  canvas.height = 300;
  return canvas;
}

describe("PlaybackView", () => {
  it("draws 15 limb segments and 16 joint dots per frame", () => {
    const context = new CountingContext();
    const view = new PlaybackView(canvasElement(), syntheticPayload("g"),
                                  { context });
    view.renderAt(0);
    expect(context.ops.clearRect).toBe(1);
    expect(context.ops.moveTo).toBe(15);
    expect(context.ops.lineTo).toBe(15);
    expect(context.ops.arc).toBe(16);
  });

  it("advances the clock through the injected animation loop", () => {
    const context = new CountingContext();
    let clock = 0;
    const pending: Array<() => void> = [];
    const view = new PlaybackView(canvasElement(), syntheticPayload("g"), {
      context,
      now: () => clock,
      requestFrame: (cb) => { pending.push(cb); return pending.length; },
      cancelFrame: () => { pending.length = 0; },
    });
    view.start();
    expect(pending).toHaveLength(1);
    clock = 33;
    pending.shift()!();
    expect(context.ops.clearRect).toBe(1);
    expect(pending).toHaveLength(1); // re-scheduled
    view.stop();
    expect(pending).toHaveLength(0);
  });
});
