/** Shared types for the gait rating client. */

export const ADJECTIVES = ["submissive", "withdrawn", "dominant", "confident"] as const;

export type Adjective = (typeof ADJECTIVES)[number];

export type LikertValue = 1 | 2 | 3 | 4 | 5;

export const LIKERT_VALUES: readonly LikertValue[] = [1, 2, 3, 4, 5];

export const LIKERT_LABELS: Record<LikertValue, string> = {
  1: "strongly disagree",
  2: "disagree",
  3: "neutral",
  4: "agree",
  5: "strongly agree",
};

/** Canonical gait interchange document served by GET /gaits/{id}. */
export interface GaitPayload {
  id: string;
  fps: number;
  source: string;
  /** frames[t][joint] = [x, y, z]; 16 joints in canonical order. */
  frames: number[][][];
}

export interface SessionInfo {
  session_id: string;
  participant_id: string;
  gait_ids: string[];
  policy: string;
}

export type RatingValues = Record<Adjective, LikertValue>;

export const N_JOINTS = 16;

/** Parent-child joint pairs of the canonical skeleton, for limb segments. */
export const BONES: ReadonlyArray<readonly [number, number]> = [
  [0, 1], [1, 2], [2, 3],
  [2, 4], [4, 5], [5, 6],
  [2, 7], [7, 8], [8, 9],
  [0, 10], [10, 11], [11, 12],
  [0, 13], [13, 14], [14, 15],
];
