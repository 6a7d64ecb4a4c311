// View model: the single snapshot the renderer reads. Pure updates only;
// socket and DOM layers stay on the outside.

import type { ErrorFrame, MetaFrame, PushCommand, ServerFrame, StateFrame } from "./protocol.js";

export type ConnectionStatus = "connecting" | "open" | "closed";

/** A state frame older than this is rendered with a stale warning. */
export const STALE_AFTER_MS = 500;

export interface ViewModel {
  status: ConnectionStatus;
  meta: MetaFrame | null;
  latest: StateFrame | null;
  lastFrameAtMs: number | null;
  lastError: string | null;
  /** Most recent push actually sent, for drawing the input arrow. */
  sentPush: { fx: number; fy: number };
}

export function freshViewModel(): ViewModel {
  return {
    status: "connecting",
    meta: null,
    latest: null,
    lastFrameAtMs: null,
    lastError: null,
    sentPush: { fx: 0, fy: 0 },
  };
}

/**
 * Fold one server frame into the view. State frames always replace the
 * snapshot, even when t rewinds: a reset frame legitimately restarts the
 * session clock at zero.
 */
export function applyFrame(view: ViewModel, frame: ServerFrame, nowMs: number): ViewModel {
  switch (frame.type) {
    case "state":
      return { ...view, latest: frame, lastFrameAtMs: nowMs, lastError: null };
    case "meta":
      return { ...view, meta: frame };
    case "error":
      return { ...view, lastError: (frame as ErrorFrame).message };
  }
}

export function applyStatus(view: ViewModel, status: ConnectionStatus): ViewModel {
  return { ...view, status };
}

export function applySentPush(view: ViewModel, push: PushCommand): ViewModel {
  return { ...view, sentPush: { fx: push.fx, fy: push.fy } };
}

export function isStale(view: ViewModel, nowMs: number): boolean {
  if (view.lastFrameAtMs === null) return false;
  return nowMs - view.lastFrameAtMs > STALE_AFTER_MS;
}
