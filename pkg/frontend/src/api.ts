/** Thin client for the study service HTTP endpoints. */

import { GaitPayload, RatingValues, SessionInfo } from "./types";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(`${status}: ${message}`);
  }
}

export type SubmitOutcome = "stored" | "duplicate";

export class ApiClient {
  constructor(private readonly baseUrl: string,
              private readonly fetchFn: FetchLike = (url, init) => fetch(url, init)) {}

  private async requestJson(path: string, init?: RequestInit): Promise<unknown> {
    const response = await this.fetchFn(this.baseUrl + path, init);
    if (!response.ok) {
      throw new ApiError(response.status, await response.text());
    }
    return response.json();
  }

  async createSession(participantId: string): Promise<SessionInfo> {
    return (await this.requestJson("/sessions", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ participant_id: participantId }),
    })) as SessionInfo;
  }

  async getGait(gaitId: string): Promise<GaitPayload> {
    return (await this.requestJson(`/gaits/${encodeURIComponent(gaitId)}`)) as GaitPayload;
  }

  /**
   * Submit one rating. A 409 conflict means the rating is already stored
   * (e.g. a retried request after a timeout) and counts as success.
   */
  async submitRating(sessionId: string, gaitId: string, values: RatingValues,
                     clientTimestamp: string): Promise<SubmitOutcome> {
    const response = await this.fetchFn(this.baseUrl + "/ratings", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({
        session_id: sessionId,
        gait_id: gaitId,
        values,
        client_timestamp: clientTimestamp,
      }),
    });
    if (response.status === 409) return "duplicate";
    if (!response.ok) {
      throw new ApiError(response.status, await response.text());
    }
    return "stored";
  }

  async exportResponsesCsv(): Promise<string> {
    const response = await this.fetchFn(this.baseUrl + "/export/responses.csv");
    if (!response.ok) {
      throw new ApiError(response.status, await response.text());
    }
    return response.text();
  }
}
