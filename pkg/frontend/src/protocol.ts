// Wire types for the bridge, protocol v1. One JSON object per socket
// message, field names and units exactly as the server emits them (SI).

export const PROTOCOL_VERSION = 1;
export const MAX_PUSH_NEWTONS = 100;

export interface ModeInfo {
  loop: "assisted" | "non_assisted";
  side_motion: "lateral_translation" | "vertical_axis_rotation";
  backward_disabled: boolean;
}

export interface StateFrame {
  type: "state";
  v: number;
  t: number;
  pose: [number, number, number]; // x, y, heading
  twist: [number, number, number]; // vx, vy, omega
  tau_ext: { pitch: number; roll: number };
  r_c: number;
  nearest_d: number | null;
  locked: boolean;
  rays: number[];
  blocked_reason: string | null;
  mode: ModeInfo;
}

export interface CircleObstacle {
  kind: "circle";
  center: [number, number];
  radius: number;
}

export interface SegmentObstacle {
  kind: "segment";
  p1: [number, number];
  p2: [number, number];
}

export type Obstacle = CircleObstacle | SegmentObstacle;

export interface SensorInfo {
  kind: string;
  mount_bearing: number;
  fov: number;
  ray_count: number;
  max_range: number;
}

export interface MetaFrame {
  type: "meta";
  v: number;
  scenario: string;
  obstacles: Obstacle[];
  sensors: SensorInfo[];
  limits: { v_max: number; a_max: number; omega_max: number };
  hard_stop: number;
  dt: number;
}

export interface ErrorFrame {
  type: "error";
  v: number;
  message: string;
}

export type ServerFrame = StateFrame | MetaFrame | ErrorFrame;

export type ParseResult =
  | { ok: true; frame: ServerFrame }
  | { ok: false; reason: string };

function isVec3(value: unknown): value is [number, number, number] {
  return (
    Array.isArray(value) &&
    value.length === 3 &&
    value.every((n) => typeof n === "number")
  );
}

function isVec2(value: unknown): value is [number, number] {
  return (
    Array.isArray(value) &&
    value.length === 2 &&
    value.every((n) => typeof n === "number")
  );
}

function checkState(frame: Record<string, unknown>): string | null {
  if (typeof frame.t !== "number") return "state frame needs numeric t";
  if (!isVec3(frame.pose)) return "pose must be [x, y, heading]";
  if (!isVec3(frame.twist)) return "twist must be [vx, vy, omega]";
  const tau = frame.tau_ext as Record<string, unknown> | undefined;
  if (!tau || typeof tau.pitch !== "number" || typeof tau.roll !== "number") {
    return "tau_ext needs numeric pitch and roll";
  }
  if (typeof frame.r_c !== "number") return "r_c must be a number";
  if (frame.nearest_d !== null && typeof frame.nearest_d !== "number") {
    return "nearest_d must be a number or null";
  }
  if (typeof frame.locked !== "boolean") return "locked must be boolean";
  if (!Array.isArray(frame.rays) || frame.rays.some((r) => typeof r !== "number")) {
    return "rays must be a number array";
  }
  return null;
}

function checkMeta(frame: Record<string, unknown>): string | null {
  if (typeof frame.scenario !== "string") return "meta frame needs scenario id";
  if (!Array.isArray(frame.obstacles)) return "obstacles must be an array";
  for (const raw of frame.obstacles) {
    const ob = raw as Record<string, unknown>;
    if (ob.kind === "circle") {
      if (!isVec2(ob.center) || typeof ob.radius !== "number") {
        return "circle obstacle needs center [x, y] and radius";
      }
    } else if (ob.kind === "segment") {
      if (!isVec2(ob.p1) || !isVec2(ob.p2)) {
        return "segment obstacle needs p1 and p2";
      }
    } else {
      return `unknown obstacle kind ${String(ob.kind)}`;
    }
  }
  if (!Array.isArray(frame.sensors)) return "sensors must be an array";
  if (typeof frame.dt !== "number") return "meta frame needs dt";
  return null;
}

/** Validate one inbound socket message. Never throws on bad input. */
export function parseFrame(raw: string): ParseResult {
  let data: unknown;
  try {
    data = JSON.parse(raw);
  } catch (err) {
    return { ok: false, reason: `not JSON: ${(err as Error).message}` };
  }
  if (data === null || typeof data !== "object" || Array.isArray(data)) {
    return { ok: false, reason: "frame is not an object" };
  }
  const frame = data as Record<string, unknown>;
  if (frame.v !== PROTOCOL_VERSION) {
    return { ok: false, reason: `unsupported protocol version ${String(frame.v)}` };
  }
  let problem: string | null;
  switch (frame.type) {
    case "state":
      problem = checkState(frame);
      break;
    case "meta":
      problem = checkMeta(frame);
      break;
    case "error":
      problem = typeof frame.message === "string" ? null : "error frame needs message";
      break;
    default:
      return { ok: false, reason: `unknown frame type ${String(frame.type)}` };
  }
  if (problem !== null) return { ok: false, reason: problem };
  return { ok: true, frame: frame as unknown as ServerFrame };
}

// Outbound builders. The server clamps too; clamping here keeps the
// displayed push arrow honest about what was actually sent.

export interface PushCommand {
  v: number;
  type: "push";
  fx: number;
  fy: number;
}

export function pushMessage(fx: number, fy: number): PushCommand {
  const norm = Math.hypot(fx, fy);
  if (norm > MAX_PUSH_NEWTONS) {
    const scale = MAX_PUSH_NEWTONS / norm;
    fx *= scale;
    fy *= scale;
  }
  return { v: PROTOCOL_VERSION, type: "push", fx, fy };
}

export function lockMessage(engaged: boolean): object {
  return { v: PROTOCOL_VERSION, type: "lock", engaged };
}

export function modeMessage(changes: Partial<ModeInfo>): object {
  return { v: PROTOCOL_VERSION, type: "mode", ...changes };
}

export function resetMessage(): object {
  return { v: PROTOCOL_VERSION, type: "reset" };
}
