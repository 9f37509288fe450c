/** Session flow: create a session, loop gait playback + rating for each
 * assigned gait in service order, then show the completion screen.
 *
 * Submissions are idempotent: a network failure is retried, and a duplicate
 * conflict from the service counts as success. A malformed payload shows an
 * error banner and skips that gait (reported on the completion screen).
 */

import { ApiClient, ApiError } from "./api";
import { validatePayload } from "./geometry";
import { RatingForm } from "./form";
import { Context2DLike, PlaybackView } from "./renderer";
import { GaitPayload, RatingValues, SessionInfo } from "./types";

export type FlowPhase = "idle" | "rating" | "done" | "failed";

export interface FlowOptions {
  doc?: Document;
  autoplay?: boolean;
  maxRetries?: number;
  createContext?: (canvas: HTMLCanvasElement) => Context2DLike;
  clock?: () => string; // client timestamp source
}

export class SessionFlow {
  phase: FlowPhase = "idle";
  session: SessionInfo | null = null;
  index = 0;
  skipped: string[] = [];
  submittedCount = 0;
  private view: PlaybackView | null = null;
  private settled: Promise<void> = Promise.resolve();
  private readonly doc: Document;
  private readonly autoplay: boolean;
  private readonly maxRetries: number;

  constructor(private readonly root: HTMLElement, private readonly api: ApiClient,
              private readonly options: FlowOptions = {}) {
    this.doc = options.doc ?? document;
    this.autoplay = options.autoplay ?? true;
    this.maxRetries = options.maxRetries ?? 3;
  }

  async start(participantId: string): Promise<void> {
    this.session = await this.api.createSession(participantId);
    this.index = 0;
    await this.showCurrent();
  }

  /** Resolves once any in-flight submission handling has finished. */
  settleSubmissions(): Promise<void> {
    return this.settled;
  }

  private clear(): void {
    if (this.view) {
      this.view.stop();
      this.view = null;
    }
    while (this.root.firstChild) {
      this.root.removeChild(this.root.firstChild);
    }
  }

  private banner(message: string): void {
    const div = this.doc.createElement("div");
    div.className = "error-banner";
    div.textContent = message;
    this.root.appendChild(div);
  }

  private async showCurrent(): Promise<void> {
    const session = this.session!;
    this.clear();
    if (this.index >= session.gait_ids.length) {
      this.phase = "done";
      const done = this.doc.createElement("div");
      done.className = "completion";
      done.textContent = `All done! ${this.submittedCount} ratings submitted. Thank you.`;
      if (this.skipped.length) {
        const note = this.doc.createElement("p");
        note.textContent = `Skipped (bad data, reported): ${this.skipped.join(", ")}`;
        done.appendChild(note);
      }
      this.root.appendChild(done);
      return;
    }

    const gaitId = session.gait_ids[this.index];
    let payload: GaitPayload;
    try {
      payload = await this.api.getGait(gaitId);
    } catch (error) {
      this.banner(`failed to load gait ${gaitId}: ${error}`);
      this.skipped.push(gaitId);
      this.index += 1;
      await this.showCurrent();
      return;
    }
    const problem = validatePayload(payload);
    if (problem) {
      this.banner(`gait ${gaitId} has malformed data (${problem}); skipping`);
      this.skipped.push(gaitId);
      this.index += 1;
      await this.showCurrent();
      return;
    }

    this.phase = "rating";
    const progress = this.doc.createElement("p");
    progress.className = "progress";
    progress.textContent = `Gait ${this.index + 1} of ${session.gait_ids.length}`;
    this.root.appendChild(progress);

    const canvas = this.doc.createElement("canvas") as HTMLCanvasElement;
    canvas.width = 480;
    canvas.height = 360;
    this.root.appendChild(canvas);
    this.view = new PlaybackView(canvas, payload,
                                 { context: this.options.createContext?.(canvas) });
    this.view.renderAt(0);
    if (this.autoplay) {
      this.view.start();
    }

    const form = new RatingForm((values) => {
      this.settled = this.handleSubmit(gaitId, values);
    }, this.doc);
    this.root.appendChild(form.element);
  }

  private async handleSubmit(gaitId: string, values: RatingValues): Promise<void> {
    const session = this.session!;
    const timestamp = this.options.clock ? this.options.clock()
      : new Date().toISOString();
    for (let attempt = 0; ; attempt++) {
      try {
        await this.api.submitRating(session.session_id, gaitId, values, timestamp);
        break; // stored, or duplicate from an earlier retry: both complete the gait
      } catch (error) {
        if (error instanceof ApiError) {
          // a validation rejection is not retryable; surface it
          this.phase = "failed";
          this.banner(`rating rejected: ${error.message}`);
          return;
        }
        if (attempt + 1 >= this.maxRetries) {
          this.phase = "failed";
          this.banner(`network failure after ${this.maxRetries} attempts`);
          return;
        }
      }
    }
    this.submittedCount += 1;
    this.index += 1;
    await this.showCurrent();
  }
}
