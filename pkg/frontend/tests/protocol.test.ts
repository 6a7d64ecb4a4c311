import { describe, expect, it } from "vitest";

import {
  lockMessage,
  MAX_PUSH_NEWTONS,
  modeMessage,
  parseFrame,
  pushMessage,
  resetMessage,
  type StateFrame,
} from "../src/protocol.js";

// Shapes mirror what the bridge actually sends.
const STATE = {
  type: "state",
  v: 1,
  t: 0.25,
  pose: [0.1, 0.0, 0.05],
  twist: [0.2, 0.0, 0.0],
  tau_ext: { pitch: 4.5, roll: 0.0 },
  r_c: 0.73,
  nearest_d: 1.4,
  locked: false,
  rays: [2.0, 2.1, 6.5],
  blocked_reason: null,
  mode: { loop: "assisted", side_motion: "lateral_translation", backward_disabled: false },
};

const META = {
  type: "meta",
  v: 1,
  scenario: "corridor_translation",
  obstacles: [
    { kind: "segment", p1: [0, -1], p2: [8, -1] },
    { kind: "circle", center: [4, 0.4], radius: 0.3 },
  ],
  sensors: [{ kind: "laser", mount_bearing: 0, fov: 4.71, ray_count: 45, max_range: 6 }],
  limits: { v_max: 0.35, a_max: 0.3, omega_max: 1.0 },
  hard_stop: 0.25,
  dt: 0.02,
};

describe("parseFrame", () => {
  it("accepts a state frame", () => {
    const result = parseFrame(JSON.stringify(STATE));
    expect(result.ok).toBe(true);
    if (!result.ok) return;
    const frame = result.frame as StateFrame;
    expect(frame.type).toBe("state");
    expect(frame.pose[2]).toBe(0.05);
    expect(frame.nearest_d).toBe(1.4);
  });

  it("accepts null nearest_d", () => {
    const result = parseFrame(JSON.stringify({ ...STATE, nearest_d: null }));
    expect(result.ok).toBe(true);
  });

  it("accepts a meta frame with both obstacle kinds", () => {
    const result = parseFrame(JSON.stringify(META));
    expect(result.ok).toBe(true);
    if (result.ok && result.frame.type === "meta") {
      expect(result.frame.obstacles).toHaveLength(2);
      expect(result.frame.sensors[0]?.ray_count).toBe(45);
    }
  });

  it("accepts an error frame", () => {
    const result = parseFrame(JSON.stringify({ type: "error", v: 1, message: "read-only" }));
    expect(result.ok).toBe(true);
  });

  it("rejects invalid JSON with a reason", () => {
    const result = parseFrame("{not json");
    expect(result.ok).toBe(false);
    if (!result.ok) expect(result.reason).toContain("not JSON");
  });

  it("rejects non-object frames", () => {
    expect(parseFrame("[1,2]").ok).toBe(false);
    expect(parseFrame("42").ok).toBe(false);
    expect(parseFrame("null").ok).toBe(false);
  });

  it("rejects a wrong protocol version", () => {
    const result = parseFrame(JSON.stringify({ ...STATE, v: 2 }));
    expect(result.ok).toBe(false);
    if (!result.ok) expect(result.reason).toContain("version");
  });

  it("rejects unknown frame types", () => {
    const result = parseFrame(JSON.stringify({ type: "telemetry", v: 1 }));
    expect(result.ok).toBe(false);
    if (!result.ok) expect(result.reason).toContain("telemetry");
  });

  it("rejects malformed pose and twist", () => {
    expect(parseFrame(JSON.stringify({ ...STATE, pose: [1, 2] })).ok).toBe(false);
    expect(parseFrame(JSON.stringify({ ...STATE, twist: [0, 0, "x"] })).ok).toBe(false);
  });

  it("rejects missing tau_ext fields", () => {
    const broken = { ...STATE, tau_ext: { pitch: 1.0 } };
    expect(parseFrame(JSON.stringify(broken)).ok).toBe(false);
  });

  it("rejects a meta frame with an unknown obstacle kind", () => {
    const broken = { ...META, obstacles: [{ kind: "polygon", points: [] }] };
    const result = parseFrame(JSON.stringify(broken));
    expect(result.ok).toBe(false);
    if (!result.ok) expect(result.reason).toContain("polygon");
  });
});

describe("outbound messages", () => {
  it("builds a plain push", () => {
    expect(pushMessage(12, -3)).toEqual({ v: 1, type: "push", fx: 12, fy: -3 });
  });

  it("clamps push magnitude preserving direction", () => {
    const command = pushMessage(300, 400);
    expect(Math.hypot(command.fx, command.fy)).toBeCloseTo(MAX_PUSH_NEWTONS, 9);
    expect(command.fx).toBeCloseTo(60, 9);
    expect(command.fy).toBeCloseTo(80, 9);
  });

  it("builds lock, mode, and reset frames", () => {
    expect(lockMessage(true)).toEqual({ v: 1, type: "lock", engaged: true });
    expect(modeMessage({ loop: "non_assisted" })).toEqual({
      v: 1,
      type: "mode",
      loop: "non_assisted",
    });
    expect(modeMessage({ side_motion: "vertical_axis_rotation", backward_disabled: true })).toEqual(
      { v: 1, type: "mode", side_motion: "vertical_axis_rotation", backward_disabled: true },
    );
    expect(resetMessage()).toEqual({ v: 1, type: "reset" });
  });

  it("round-trips a push through JSON unchanged", () => {
    const command = pushMessage(7.25, -0.5);
    expect(JSON.parse(JSON.stringify(command))).toEqual(command);
  });
});
