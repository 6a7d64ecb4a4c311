import { describe, expect, it } from "vitest";

import {
  isPushKey,
  keyForce,
  MAX_FORCE_NEWTONS,
  pointerForce,
  PushEmitter,
  PX_PER_NEWTON,
  SEND_INTERVAL_MS,
} from "../src/input.js";
import type { PushCommand } from "../src/protocol.js";

const held = (...codes: string[]) => new Set(codes);

describe("keyForce", () => {
  it("maps Up to a forward push at full force", () => {
    expect(keyForce(held("ArrowUp"))).toEqual({ fx: MAX_FORCE_NEWTONS, fy: 0 });
  });

  it("maps the remaining three directions", () => {
    expect(keyForce(held("ArrowDown"))).toEqual({ fx: -MAX_FORCE_NEWTONS, fy: 0 });
    expect(keyForce(held("ArrowLeft"))).toEqual({ fx: 0, fy: MAX_FORCE_NEWTONS });
    expect(keyForce(held("ArrowRight"))).toEqual({ fx: 0, fy: -MAX_FORCE_NEWTONS });
  });

  it("treats WASD exactly like the arrows", () => {
    for (const [wasd, arrow] of [
      ["KeyW", "ArrowUp"],
      ["KeyS", "ArrowDown"],
      ["KeyA", "ArrowLeft"],
      ["KeyD", "ArrowRight"],
    ] as const) {
      expect(keyForce(held(wasd))).toEqual(keyForce(held(arrow)));
    }
  });

  it("clamps a diagonal to the force budget", () => {
    const { fx, fy } = keyForce(held("ArrowUp", "ArrowRight"));
    expect(Math.hypot(fx, fy)).toBeCloseTo(MAX_FORCE_NEWTONS, 9);
    expect(fx).toBeCloseTo(MAX_FORCE_NEWTONS / Math.SQRT2, 9);
    expect(fy).toBeCloseTo(-MAX_FORCE_NEWTONS / Math.SQRT2, 9);
  });

  it("cancels opposing keys", () => {
    expect(keyForce(held("ArrowUp", "ArrowDown"))).toEqual({ fx: 0, fy: 0 });
  });

  it("ignores unrelated keys", () => {
    expect(keyForce(held("KeyQ", "Space"))).toEqual({ fx: 0, fy: 0 });
    expect(isPushKey("KeyW")).toBe(true);
    expect(isPushKey("Space")).toBe(false);
  });
});

describe("pointerForce", () => {
  it("converts pixels proportionally below the clamp", () => {
    const { fx, fy } = pointerForce(25, 0, 0);
    expect(fx).toBeCloseTo(25 / PX_PER_NEWTON, 12);
    expect(fy).toBeCloseTo(0, 12); // no lateral component
  });

  it("clamps long drags", () => {
    const { fx, fy } = pointerForce(5000, 0, 0);
    expect(Math.hypot(fx, fy)).toBeCloseTo(MAX_FORCE_NEWTONS, 9);
  });

  it("flips screen y so dragging up pushes left at heading 0", () => {
    const { fx, fy } = pointerForce(0, -50, 0);
    expect(fx).toBeCloseTo(0, 12);
    expect(fy).toBeCloseTo(10, 12);
  });

  it("compensates for the robot heading", () => {
    // robot faces screen-up; dragging up is straight ahead in body frame
    const { fx, fy } = pointerForce(0, -50, Math.PI / 2);
    expect(fx).toBeCloseTo(10, 12);
    expect(fy).toBeCloseTo(0, 12);
  });
});

describe("PushEmitter", () => {
  function collector(): { sent: PushCommand[]; emitter: PushEmitter } {
    const sent: PushCommand[] = [];
    const emitter = new PushEmitter((c) => sent.push(c));
    return { sent, emitter };
  }

  it("announces the idle state once, then stays silent", () => {
    const { sent, emitter } = collector();
    emitter.update(0, 0, 0);
    emitter.update(0, 0, 100);
    emitter.update(0, 0, 200);
    expect(sent).toEqual([{ v: 1, type: "push", fx: 0, fy: 0 }]);
  });

  it("caps the steady-state rate", () => {
    const { sent, emitter } = collector();
    for (let ms = 0; ms <= 1000; ms += 5) {
      emitter.update(10, 0, ms);
    }
    // 30 Hz over one second, plus one frame for the open boundary
    expect(sent.length).toBeGreaterThanOrEqual(29);
    expect(sent.length).toBeLessThanOrEqual(31);
  });

  it("never sends two nonzero pushes closer than the interval", () => {
    const times: number[] = [];
    const emitter = new PushEmitter(() => {}, SEND_INTERVAL_MS);
    for (let ms = 0; ms <= 500; ms += 3) {
      if (emitter.update(8, 4, ms) !== null) times.push(ms);
    }
    for (let i = 1; i < times.length; i += 1) {
      expect(times[i]! - times[i - 1]!).toBeGreaterThanOrEqual(SEND_INTERVAL_MS);
    }
  });

  it("sends a release immediately even inside the interval", () => {
    const { sent, emitter } = collector();
    emitter.update(10, 0, 0);
    const release = emitter.update(0, 0, 5);
    expect(release).toEqual({ v: 1, type: "push", fx: 0, fy: 0 });
    expect(sent).toHaveLength(2);
    // and only once
    expect(emitter.update(0, 0, 6)).toBeNull();
  });

  it("defers a changed force until the interval elapses", () => {
    const { sent, emitter } = collector();
    emitter.update(10, 0, 0);
    expect(emitter.update(20, 0, 10)).toBeNull();
    expect(emitter.update(20, 0, SEND_INTERVAL_MS + 1)).not.toBeNull();
    expect(sent.map((c) => c.fx)).toEqual([10, 20]);
  });

  it("clamps through the shared message builder", () => {
    const { sent, emitter } = collector();
    emitter.update(3000, 4000, 0);
    expect(Math.hypot(sent[0]!.fx, sent[0]!.fy)).toBeCloseTo(100, 9);
  });
});
