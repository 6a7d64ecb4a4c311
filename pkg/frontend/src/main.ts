// Entry point: wires socket, inputs, and the render loop together.

import { BridgeClient, bridgeUrl } from "./client.js";
import {
  isPushKey,
  keyForce,
  pointerForce,
  PushEmitter,
} from "./input.js";
import { lockMessage, modeMessage, resetMessage, type PushCommand } from "./protocol.js";
import { drawScene } from "./render.js";
import {
  applyFrame,
  applySentPush,
  applyStatus,
  freshViewModel,
  type ViewModel,
} from "./state.js";

function byId<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (el === null) throw new Error(`missing element #${id}`);
  return el as T;
}

const canvas = byId<HTMLCanvasElement>("scene");
const ctx = canvas.getContext("2d");
if (ctx === null) throw new Error("2d canvas context unavailable");

let view: ViewModel = freshViewModel();

const client = new BridgeClient(bridgeUrl(window.location.search), {
  onFrame: (frame) => {
    view = applyFrame(view, frame, performance.now());
    if (frame.type === "meta") {
      byId<HTMLElement>("scenario").textContent = frame.scenario;
    }
  },
  onStatus: (status) => {
    view = applyStatus(view, status);
    const badge = byId<HTMLElement>("status");
    badge.textContent = status;
    badge.className = `badge ${status}`;
  },
  onBadFrame: (reason) => console.warn("dropped frame:", reason),
});

const emitter = new PushEmitter((command: PushCommand) => {
  if (client.send(command)) view = applySentPush(view, command);
});

// --- keyboard ---
const heldKeys = new Set<string>();
window.addEventListener("keydown", (event) => {
  if (!isPushKey(event.code)) return;
  event.preventDefault();
  heldKeys.add(event.code);
});
window.addEventListener("keyup", (event) => {
  if (heldKeys.delete(event.code)) event.preventDefault();
});
window.addEventListener("blur", () => heldKeys.clear());

// --- pointer drag on the scene ---
let drag: { startX: number; startY: number; dx: number; dy: number } | null = null;
canvas.addEventListener("pointerdown", (event) => {
  canvas.setPointerCapture(event.pointerId);
  drag = { startX: event.clientX, startY: event.clientY, dx: 0, dy: 0 };
});
canvas.addEventListener("pointermove", (event) => {
  if (drag === null) return;
  drag.dx = event.clientX - drag.startX;
  drag.dy = event.clientY - drag.startY;
});
const endDrag = () => {
  drag = null;
};
canvas.addEventListener("pointerup", endDrag);
canvas.addEventListener("pointercancel", endDrag);

// --- toggles ---
byId<HTMLInputElement>("lock").addEventListener("change", (event) => {
  client.send(lockMessage((event.target as HTMLInputElement).checked));
});
byId<HTMLSelectElement>("loop").addEventListener("change", (event) => {
  const value = (event.target as HTMLSelectElement).value;
  client.send(modeMessage({ loop: value as "assisted" | "non_assisted" }));
});
byId<HTMLSelectElement>("side").addEventListener("change", (event) => {
  const value = (event.target as HTMLSelectElement).value;
  client.send(
    modeMessage({ side_motion: value as "lateral_translation" | "vertical_axis_rotation" }),
  );
});
byId<HTMLInputElement>("noback").addEventListener("change", (event) => {
  client.send(modeMessage({ backward_disabled: (event.target as HTMLInputElement).checked }));
});
byId<HTMLButtonElement>("reset").addEventListener("click", () => {
  client.send(resetMessage());
});

function loop(nowMs: number): void {
  let force = keyForce(heldKeys);
  if (drag !== null && view.latest !== null) {
    force = pointerForce(drag.dx, drag.dy, view.latest.pose[2]);
  }
  emitter.update(force.fx, force.fy, nowMs);
  drawScene(ctx!, canvas.width, canvas.height, view, nowMs);
  requestAnimationFrame(loop);
}

client.connect();
requestAnimationFrame(loop);
