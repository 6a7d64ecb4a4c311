// Top-down scene renderer. Geometry helpers are pure and exported for
// tests; drawScene is the only function that touches a canvas context.

import type { MetaFrame, SensorInfo, StateFrame } from "./protocol.js";
import { isStale, type ViewModel } from "./state.js";

/** The slice of CanvasRenderingContext2D the scene actually uses. */
export interface SceneContext {
  fillStyle: string | CanvasGradient | CanvasPattern;
  strokeStyle: string | CanvasGradient | CanvasPattern;
  lineWidth: number;
  font: string;
  textAlign: CanvasTextAlign;
  fillRect(x: number, y: number, w: number, h: number): void;
  strokeRect(x: number, y: number, w: number, h: number): void;
  beginPath(): void;
  moveTo(x: number, y: number): void;
  lineTo(x: number, y: number): void;
  arc(x: number, y: number, r: number, a0: number, a1: number): void;
  stroke(): void;
  fill(): void;
  fillText(text: string, x: number, y: number): void;
}

export interface Camera {
  centerX: number; // world meters
  centerY: number;
  scale: number; // px per meter
}

const FIT_MARGIN_M = 1.0;
const ARROW_PX_PER_NEWTON = 3;
const GAUGE_WIDTH_PX = 18;

export function worldToScreen(
  camera: Camera,
  width: number,
  height: number,
  x: number,
  y: number,
): [number, number] {
  return [
    width / 2 + (x - camera.centerX) * camera.scale,
    height / 2 - (y - camera.centerY) * camera.scale,
  ];
}

/** Camera that keeps every obstacle and the robot on screen with a margin. */
export function fitCamera(
  meta: MetaFrame | null,
  latest: StateFrame | null,
  width: number,
  height: number,
): Camera {
  const xs: number[] = [];
  const ys: number[] = [];
  if (meta !== null) {
    for (const ob of meta.obstacles) {
      if (ob.kind === "circle") {
        xs.push(ob.center[0] - ob.radius, ob.center[0] + ob.radius);
        ys.push(ob.center[1] - ob.radius, ob.center[1] + ob.radius);
      } else {
        xs.push(ob.p1[0], ob.p2[0]);
        ys.push(ob.p1[1], ob.p2[1]);
      }
    }
  }
  if (latest !== null) {
    xs.push(latest.pose[0]);
    ys.push(latest.pose[1]);
  }
  if (xs.length === 0) {
    xs.push(-2, 2);
    ys.push(-2, 2);
  }
  const minX = Math.min(...xs) - FIT_MARGIN_M;
  const maxX = Math.max(...xs) + FIT_MARGIN_M;
  const minY = Math.min(...ys) - FIT_MARGIN_M;
  const maxY = Math.max(...ys) + FIT_MARGIN_M;
  const scale = Math.min(width / (maxX - minX), height / (maxY - minY));
  return {
    centerX: (minX + maxX) / 2,
    centerY: (minY + maxY) / 2,
    scale,
  };
}

/**
 * World-frame endpoints for every measured ray, in the order the server
 * packs them: sensors in declaration order, each spanning its fov evenly
 * (a single-ray sensor looks straight down its mount bearing).
 */
export function rayEndpoints(
  sensors: SensorInfo[],
  frame: StateFrame,
): Array<[number, number]> {
  const ends: Array<[number, number]> = [];
  const [x, y, heading] = frame.pose;
  let cursor = 0;
  for (const sensor of sensors) {
    for (let i = 0; i < sensor.ray_count; i += 1) {
      const offset =
        sensor.ray_count === 1
          ? 0
          : -sensor.fov / 2 + (sensor.fov * i) / (sensor.ray_count - 1);
      const distance = frame.rays[cursor];
      cursor += 1;
      if (distance === undefined) break;
      const angle = heading + sensor.mount_bearing + offset;
      ends.push([x + distance * Math.cos(angle), y + distance * Math.sin(angle)]);
    }
  }
  return ends;
}

/** Gauge fill in [0, 1]; full compliance pins the gauge at the top. */
export function gaugeFraction(frame: StateFrame | null): number | null {
  if (frame === null) return null;
  return Math.min(1, Math.max(0, frame.r_c));
}

/** Sent push rotated into the world frame, scaled to arrow pixels. */
export function arrowVector(
  fx: number,
  fy: number,
  heading: number,
): [number, number] {
  const cos = Math.cos(heading);
  const sin = Math.sin(heading);
  return [
    (cos * fx - sin * fy) * ARROW_PX_PER_NEWTON,
    (sin * fx + cos * fy) * ARROW_PX_PER_NEWTON,
  ];
}

function drawObstacles(
  ctx: SceneContext,
  camera: Camera,
  width: number,
  height: number,
  meta: MetaFrame,
): void {
  ctx.strokeStyle = "#555";
  ctx.lineWidth = 2;
  for (const ob of meta.obstacles) {
    ctx.beginPath();
    if (ob.kind === "circle") {
      const [sx, sy] = worldToScreen(camera, width, height, ob.center[0], ob.center[1]);
      ctx.arc(sx, sy, ob.radius * camera.scale, 0, Math.PI * 2);
    } else {
      const [x1, y1] = worldToScreen(camera, width, height, ob.p1[0], ob.p1[1]);
      const [x2, y2] = worldToScreen(camera, width, height, ob.p2[0], ob.p2[1]);
      ctx.moveTo(x1, y1);
      ctx.lineTo(x2, y2);
    }
    ctx.stroke();
  }
}

function drawRays(
  ctx: SceneContext,
  camera: Camera,
  width: number,
  height: number,
  meta: MetaFrame,
  frame: StateFrame,
): void {
  const [ox, oy] = worldToScreen(camera, width, height, frame.pose[0], frame.pose[1]);
  ctx.strokeStyle = "rgba(80, 160, 255, 0.25)";
  ctx.lineWidth = 1;
  for (const [ex, ey] of rayEndpoints(meta.sensors, frame)) {
    const [sx, sy] = worldToScreen(camera, width, height, ex, ey);
    ctx.beginPath();
    ctx.moveTo(ox, oy);
    ctx.lineTo(sx, sy);
    ctx.stroke();
  }
}

function drawRobot(
  ctx: SceneContext,
  camera: Camera,
  width: number,
  height: number,
  view: ViewModel,
  frame: StateFrame,
): void {
  const [x, y, heading] = frame.pose;
  const [sx, sy] = worldToScreen(camera, width, height, x, y);
  const radiusPx = Math.max(6, 0.2 * camera.scale);

  ctx.fillStyle = frame.locked ? "#8a6d3b" : "#2d6a4f";
  ctx.beginPath();
  ctx.arc(sx, sy, radiusPx, 0, Math.PI * 2);
  ctx.fill();

  // heading tick
  ctx.strokeStyle = "#fff";
  ctx.lineWidth = 2;
  ctx.beginPath();
  ctx.moveTo(sx, sy);
  ctx.lineTo(sx + Math.cos(heading) * radiusPx * 1.6, sy - Math.sin(heading) * radiusPx * 1.6);
  ctx.stroke();

  const { fx, fy } = view.sentPush;
  if (fx !== 0 || fy !== 0) {
    const [ax, ay] = arrowVector(fx, fy, heading);
    ctx.strokeStyle = frame.locked ? "#999" : "#e76f51";
    ctx.lineWidth = 3;
    ctx.beginPath();
    ctx.moveTo(sx, sy);
    ctx.lineTo(sx + ax, sy - ay);
    ctx.stroke();
  }
}

function drawGauge(ctx: SceneContext, width: number, height: number, frame: StateFrame | null): void {
  const x = width - GAUGE_WIDTH_PX - 12;
  const top = 40;
  const barHeight = height - 80;
  ctx.strokeStyle = "#888";
  ctx.lineWidth = 1;
  ctx.strokeRect(x, top, GAUGE_WIDTH_PX, barHeight);
  const fraction = gaugeFraction(frame);
  if (fraction !== null) {
    const fill = barHeight * fraction;
    ctx.fillStyle = fraction < 0.3 ? "#d9534f" : "#5cb85c";
    ctx.fillRect(x, top + barHeight - fill, GAUGE_WIDTH_PX, fill);
  }
  // midpoint tick: R_c = 0.5 sits exactly here
  ctx.beginPath();
  ctx.moveTo(x - 4, top + barHeight / 2);
  ctx.lineTo(x + GAUGE_WIDTH_PX + 4, top + barHeight / 2);
  ctx.stroke();
  ctx.fillStyle = "#555";
  ctx.font = "12px sans-serif";
  ctx.textAlign = "center";
  ctx.fillText("R_c", x + GAUGE_WIDTH_PX / 2, top + barHeight + 16);
}

function drawHud(ctx: SceneContext, width: number, view: ViewModel, nowMs: number): void {
  ctx.font = "13px sans-serif";
  ctx.textAlign = "left";
  const frame = view.latest;
  if (view.latest !== null && view.latest.locked) {
    ctx.fillStyle = "#c0392b";
    ctx.fillRect(12, 12, 84, 24);
    ctx.fillStyle = "#fff";
    ctx.fillText("LOCKED", 22, 29);
  }
  ctx.fillStyle = "#333";
  const lines: string[] = [];
  if (frame !== null) {
    const speed = Math.hypot(frame.twist[0], frame.twist[1]);
    lines.push(`t ${frame.t.toFixed(2)} s   speed ${speed.toFixed(3)} m/s`);
    lines.push(
      frame.nearest_d === null
        ? "nearest: none in range"
        : `nearest ${frame.nearest_d.toFixed(3)} m`,
    );
    lines.push(`mode ${frame.mode.loop} / ${frame.mode.side_motion}`);
    if (frame.blocked_reason !== null) lines.push(`blocked: ${frame.blocked_reason}`);
  } else {
    lines.push("waiting for telemetry");
  }
  if (view.lastError !== null) lines.push(`server error: ${view.lastError}`);
  let y = 56;
  for (const line of lines) {
    ctx.fillText(line, 12, y);
    y += 18;
  }
  if (isStale(view, nowMs)) {
    ctx.fillStyle = "#c0392b";
    ctx.fillText("STALE FRAME", 12, y);
  } else if (view.status !== "open") {
    ctx.fillStyle = "#777";
    ctx.fillText(view.status, 12, y);
  }
  void width;
}

export function drawScene(
  ctx: SceneContext,
  width: number,
  height: number,
  view: ViewModel,
  nowMs: number,
): void {
  ctx.fillStyle = "#f6f5f2";
  ctx.fillRect(0, 0, width, height);
  const camera = fitCamera(view.meta, view.latest, width, height);
  if (view.meta !== null) {
    drawObstacles(ctx, camera, width, height, view.meta);
    if (view.latest !== null) drawRays(ctx, camera, width, height, view.meta, view.latest);
  }
  if (view.latest !== null) drawRobot(ctx, camera, width, height, view, view.latest);
  drawGauge(ctx, width, height, view.latest);
  drawHud(ctx, width, view, nowMs);
}
