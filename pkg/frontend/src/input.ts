// Keyboard and pointer input, mapped to body-frame push forces.
//
// Key semantics follow the four push directions: Up/W pushes the robot
// forward (North, +fx), Down/S pulls it back, Left/A pushes toward +fy,
// Right/D toward -fy. Combinations add and the total is clamped so a
// diagonal never exceeds the configured force budget.

import { pushMessage, type PushCommand } from "./protocol.js";

export const MAX_FORCE_NEWTONS = 20;
export const SEND_INTERVAL_MS = 1000 / 30;

/** Pointer drags convert at this rate, so a 100 px drag is a full push. */
export const PX_PER_NEWTON = 5;

const KEY_AXES: Record<string, [number, number]> = {
  ArrowUp: [1, 0],
  KeyW: [1, 0],
  ArrowDown: [-1, 0],
  KeyS: [-1, 0],
  ArrowLeft: [0, 1],
  KeyA: [0, 1],
  ArrowRight: [0, -1],
  KeyD: [0, -1],
};

export function isPushKey(code: string): boolean {
  return code in KEY_AXES;
}

function clampForce(fx: number, fy: number, maxForce: number): { fx: number; fy: number } {
  const norm = Math.hypot(fx, fy);
  if (norm > maxForce) {
    const scale = maxForce / norm;
    return { fx: fx * scale, fy: fy * scale };
  }
  return { fx, fy };
}

/** Net body-frame force for the currently held keys. */
export function keyForce(
  held: ReadonlySet<string>,
  maxForce: number = MAX_FORCE_NEWTONS,
): { fx: number; fy: number } {
  let fx = 0;
  let fy = 0;
  for (const code of held) {
    const axis = KEY_AXES[code];
    if (axis === undefined) continue;
    fx += axis[0] * maxForce;
    fy += axis[1] * maxForce;
  }
  return clampForce(fx, fy, maxForce);
}

/**
 * Body-frame force for a pointer drag. The drag vector is in screen
 * pixels (y down); dragging toward a point on the scene pushes the robot
 * toward it, whatever way the robot is currently facing.
 */
export function pointerForce(
  dxPx: number,
  dyPx: number,
  heading: number,
  maxForce: number = MAX_FORCE_NEWTONS,
): { fx: number; fy: number } {
  const wx = dxPx / PX_PER_NEWTON;
  const wy = -dyPx / PX_PER_NEWTON; // screen y points down, world y up
  const cos = Math.cos(heading);
  const sin = Math.sin(heading);
  return clampForce(cos * wx + sin * wy, -sin * wx + cos * wy, maxForce);
}

/**
 * Rate-limited push sender. Nonzero forces repeat at most every
 * `intervalMs` (zero-order hold on the server makes repeats cheap
 * keep-alives). A release is sent immediately and exactly once: the
 * server would otherwise keep applying the held force.
 */
export class PushEmitter {
  private lastSent: PushCommand | null = null;
  private lastSentAtMs = -Infinity;

  constructor(
    private readonly send: (command: PushCommand) => void,
    private readonly intervalMs: number = SEND_INTERVAL_MS,
  ) {}

  update(fx: number, fy: number, nowMs: number): PushCommand | null {
    const zero = fx === 0 && fy === 0;
    const lastZero =
      this.lastSent === null || (this.lastSent.fx === 0 && this.lastSent.fy === 0);
    if (zero && lastZero && this.lastSent !== null) return null;
    if (!zero && nowMs - this.lastSentAtMs < this.intervalMs) return null;
    const command = pushMessage(fx, fy);
    this.lastSent = command;
    this.lastSentAtMs = nowMs;
    this.send(command);
    return command;
  }
}
