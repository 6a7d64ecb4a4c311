"""Interactive session service over newline-delimited JSON frames.

The session core (SessionRunner) is synchronous and deterministic: messages
are applied in arrival order, push forces are held between messages
(zero-order hold), and every applied message is logged with its simulation
time so a recorded session can be replayed as a scripted scenario. The
websocket layer schedules ticks on a wall clock and broadcasts telemetry;
the first client to connect controls the session, later ones watch.

Every frame carries a protocol version field "v": 1. Command frames are
tagged "push", "lock", "mode", "reset"; the server emits "meta" once on
connect, then "state" telemetry and "error" frames.
"""

from __future__ import annotations

import asyncio
import json
import logging
import math
import signal
import sys
from dataclasses import dataclass, replace
from pathlib import Path

from .control import LoopMode, gate
from .intention import SideMotionMode, estimate_push
from .world import (
    CollisionError,
    PushInput,
    Scenario,
    SimState,
    effective_nearest,
    nearest_obstacle,
    obstacle_to_json,
    raycast,
    sensor_to_json,
    step,
)
from .compliance import generalized_logistic

log = logging.getLogger("walkmate.bridge")

PROTOCOL_VERSION = 1
MAX_PUSH_NEWTONS = 100.0


@dataclass(frozen=True)
class Telemetry:
    """One published snapshot of the session state."""

    t: float
    pose: tuple[float, float, float]
    twist: tuple[float, float, float]
    tau_ext_pitch: float
    tau_ext_roll: float
    r_c: float
    nearest_d: float | None
    locked: bool
    sensor_rays: tuple[float, ...]
    blocked_reason: str | None

    def to_frame(self, state: SimState) -> dict:
        return {
            "type": "state",
            "v": PROTOCOL_VERSION,
            "t": self.t,
            "pose": list(self.pose),
            "twist": list(self.twist),
            "tau_ext": {"pitch": self.tau_ext_pitch, "roll": self.tau_ext_roll},
            "r_c": self.r_c,
            "nearest_d": self.nearest_d,
            "locked": self.locked,
            "rays": list(self.sensor_rays),
            "blocked_reason": self.blocked_reason,
            "mode": {
                "loop": state.control.loop.value,
                "side_motion": state.control.side_motion.value,
                "backward_disabled": state.control.backward_disabled,
            },
        }


def telemetry_from_state(state: SimState) -> Telemetry:
    estimate = state.last_estimate
    if estimate is None:
        estimate = estimate_push(state.chain, state.estimator)
    true_nearest = nearest_obstacle(state.world, state.pose)
    seen = effective_nearest(state)
    r_c = state.compliance.upper_K if seen is None else generalized_logistic(seen.distance, state.compliance)
    decision = gate(
        estimate,
        state.control,
        seen.distance if seen is not None else None,
        state.estimator.deadband,
    )
    rays: list[float] = []
    for sensor in state.world.sensors:
        rays.extend(float(r) for r in raycast(state.world, state.pose, sensor))
    return Telemetry(
        t=state.clock,
        pose=(state.pose.x, state.pose.y, state.pose.heading),
        twist=(state.twist.vx, state.twist.vy, state.twist.omega),
        tau_ext_pitch=estimate.tau_ext_pitch,
        tau_ext_roll=estimate.tau_ext_roll,
        r_c=r_c,
        nearest_d=true_nearest.distance if true_nearest is not None else None,
        locked=state.control.locked,
        sensor_rays=tuple(rays),
        blocked_reason=decision.reason.value if decision.reason is not None else None,
    )


def error_frame(message: str) -> dict:
    return {"type": "error", "v": PROTOCOL_VERSION, "message": message}


def meta_frame(scenario: Scenario) -> dict:
    """World geometry and limits, sent once so clients can draw the scene."""
    return {
        "type": "meta",
        "v": PROTOCOL_VERSION,
        "scenario": scenario.id,
        "obstacles": [obstacle_to_json(ob) for ob in scenario.world.obstacles],
        "sensors": [sensor_to_json(s) for s in scenario.world.sensors],
        "limits": {
            "v_max": scenario.limits.v_max,
            "a_max": scenario.limits.a_max,
            "omega_max": scenario.limits.omega_max,
        },
        "hard_stop": scenario.control.hard_stop,
        "dt": scenario.dt,
    }


class SessionRunner:
    """Deterministic session core: apply messages, tick, log, snapshot."""

    def __init__(
        self,
        scenario: Scenario,
        telemetry_interval: float = 0.05,
        push_link_index: int | None = None,
        push_application: float | None = None,
    ):
        self.scenario = scenario
        if push_link_index is None:
            push_link_index = len(scenario.joint_specs) - 1
        link = scenario.joint_specs[push_link_index]
        if push_application is None:
            push_application = link.link_length / 2.0
        if not 0.0 <= push_application <= link.link_length:
            raise ValueError("push_application outside the chosen link")
        self.push_link_index = push_link_index
        self.push_application = push_application
        self.telemetry_interval = telemetry_interval
        self.state: SimState = scenario.build_state()
        self.held_force: tuple[float, float] = (0.0, 0.0)
        self.message_log: list[dict] = []
        self.collided = False
        self._next_emit = telemetry_interval

    def apply_message(self, message: dict) -> dict | None:
        """Apply one client frame; returns an error frame or None on success."""
        if not isinstance(message, dict):
            return error_frame("frame must be a JSON object")
        if message.get("v") != PROTOCOL_VERSION:
            return error_frame(f"unsupported protocol version {message.get('v')!r}")
        kind = message.get("type")
        handler = {
            "push": self._apply_push,
            "lock": self._apply_lock,
            "mode": self._apply_mode,
            "reset": self._apply_reset,
        }.get(kind)
        if handler is None:
            return error_frame(f"unknown frame type {kind!r}")
        error = handler(message)
        if error is None:
            self.message_log.append({"t": self.state.clock, **message})
        return error

    def _apply_push(self, message: dict) -> dict | None:
        fx = message.get("fx")
        fy = message.get("fy")
        for value in (fx, fy):
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                return error_frame("push needs numeric fx and fy")
            if not math.isfinite(value):
                return error_frame("push force must be finite")
        norm = math.hypot(fx, fy)
        if norm > MAX_PUSH_NEWTONS:
            scale = MAX_PUSH_NEWTONS / norm
            fx *= scale
            fy *= scale
        self.held_force = (float(fx), float(fy))
        return None

    def _apply_lock(self, message: dict) -> dict | None:
        engaged = message.get("engaged")
        if not isinstance(engaged, bool):
            return error_frame("lock needs boolean 'engaged'")
        self.state.control = replace(self.state.control, locked=engaged)
        return None

    def _apply_mode(self, message: dict) -> dict | None:
        control = self.state.control
        if "loop" in message:
            try:
                control = replace(control, loop=LoopMode(message["loop"]))
            except ValueError:
                return error_frame(f"unknown loop {message['loop']!r}")
        if "side_motion" in message:
            try:
                control = replace(control, side_motion=SideMotionMode(message["side_motion"]))
            except ValueError:
                return error_frame(f"unknown side_motion {message['side_motion']!r}")
        if "backward_disabled" in message:
            flag = message["backward_disabled"]
            if not isinstance(flag, bool):
                return error_frame("backward_disabled must be boolean")
            control = replace(control, backward_disabled=flag)
        self.state.control = control
        return None

    def _apply_reset(self, message: dict) -> dict | None:
        del message
        self.state = self.scenario.build_state()
        self.held_force = (0.0, 0.0)
        self.collided = False
        self._next_emit = self.telemetry_interval
        return None

    def clear_push(self) -> None:
        """Zero the held force, as when the controlling client goes away."""
        self.held_force = (0.0, 0.0)
        self.message_log.append({"t": self.state.clock, "type": "push", "v": PROTOCOL_VERSION, "fx": 0.0, "fy": 0.0})

    def _active_pushes(self) -> list[PushInput]:
        fx, fy = self.held_force
        if fx == 0.0 and fy == 0.0:
            return []
        t = self.state.clock
        return [
            PushInput(
                force=self.held_force,
                link_index=self.push_link_index,
                application_distance=self.push_application,
                start=t,
                end=t + self.scenario.dt,
            )
        ]

    def tick(self) -> Telemetry | None:
        """Advance one step; returns a telemetry snapshot when one is due."""
        if self.collided:
            return None
        try:
            self.state = step(self.state, self._active_pushes(), self.scenario.dt)
        except CollisionError as exc:
            log.warning("session %s: %s", self.scenario.id, exc)
            self.collided = True
            return self.snapshot()
        if self.state.clock + 1e-9 >= self._next_emit:
            while self.state.clock + 1e-9 >= self._next_emit:
                self._next_emit += self.telemetry_interval
            return self.snapshot()
        return None

    def snapshot(self) -> Telemetry:
        return telemetry_from_state(self.state)


def replay_pushes(
    message_log: list[dict],
    end_time: float,
    link_index: int,
    application_distance: float,
) -> tuple[PushInput, ...]:
    """Convert a push-only session log into scripted push windows.

    Lock, mode, and reset frames change state a scripted scenario cannot
    express mid-run; their presence raises ValueError. Each push frame opens
    a hold window that the next push frame (or end_time) closes.
    """
    pushes: list[PushInput] = []
    open_force: tuple[float, float] | None = None
    open_start = 0.0
    for entry in message_log:
        kind = entry.get("type")
        if kind != "push":
            raise ValueError(f"session log contains non-push frame {kind!r}")
        t = float(entry["t"])
        force = (float(entry["fx"]), float(entry["fy"]))
        if open_force is not None and t > open_start:
            pushes.append(
                PushInput(
                    force=open_force,
                    link_index=link_index,
                    application_distance=application_distance,
                    start=open_start,
                    end=t,
                )
            )
        open_force = force if force != (0.0, 0.0) else None
        open_start = t
    if open_force is not None and end_time > open_start:
        pushes.append(
            PushInput(
                force=open_force,
                link_index=link_index,
                application_distance=application_distance,
                start=open_start,
                end=end_time,
            )
        )
    return tuple(pushes)


async def serve_async(
    scenario: Scenario,
    host: str = "127.0.0.1",
    port: int = 8765,
    *,
    runner: SessionRunner | None = None,
    stop: asyncio.Event | None = None,
) -> SessionRunner:
    """Serve one interactive session until cancelled or stopped."""
    import websockets

    if runner is None:
        runner = SessionRunner(scenario)
    if stop is None:
        stop = asyncio.Event()
    clients: dict = {}
    started = asyncio.Event()

    def controller():
        return next(iter(clients), None)

    async def send_safe(ws, frame: dict) -> None:
        try:
            await ws.send(json.dumps(frame) + "\n")
        except Exception:
            pass

    async def broadcast(frame: dict) -> None:
        for ws in list(clients):
            await send_safe(ws, frame)

    async def handler(ws) -> None:
        clients[ws] = True
        started.set()
        await send_safe(ws, meta_frame(scenario))
        await send_safe(ws, runner.snapshot().to_frame(runner.state))
        try:
            async for raw in ws:
                try:
                    message = json.loads(raw)
                except json.JSONDecodeError as exc:
                    await send_safe(ws, error_frame(f"invalid JSON: {exc.msg}"))
                    continue
                if ws is not controller():
                    await send_safe(ws, error_frame("read-only client; a controller is connected"))
                    continue
                error = runner.apply_message(message)
                if error is not None:
                    await send_safe(ws, error)
        finally:
            was_controller = ws is controller()
            clients.pop(ws, None)
            if was_controller:
                runner.clear_push()

    async def tick_loop() -> None:
        await started.wait()
        loop = asyncio.get_running_loop()
        next_tick = loop.time()
        while not stop.is_set():
            next_tick += scenario.dt
            telemetry = runner.tick()
            if telemetry is not None:
                await broadcast(telemetry.to_frame(runner.state))
            delay = next_tick - loop.time()
            if delay > 0:
                try:
                    await asyncio.wait_for(stop.wait(), timeout=delay)
                except asyncio.TimeoutError:
                    pass
            else:
                next_tick = loop.time()

    async with websockets.serve(handler, host, port):
        log.info("serving %s on ws://%s:%d", scenario.id, host, port)
        ticker = asyncio.create_task(tick_loop())
        try:
            await stop.wait()
        finally:
            ticker.cancel()
    return runner


def serve(scenario: Scenario, host: str = "127.0.0.1", port: int = 8765) -> int:
    """Blocking entry point; on shutdown writes the session log and CSV."""
    from .cli import simulate, write_trajectory

    runner = SessionRunner(scenario)
    stop = asyncio.Event()

    async def main() -> None:
        loop = asyncio.get_running_loop()
        for sig in (signal.SIGINT, signal.SIGTERM):
            try:
                loop.add_signal_handler(sig, stop.set)
            except NotImplementedError:
                pass
        await serve_async(scenario, host, port, runner=runner, stop=stop)

    try:
        asyncio.run(main())
    except KeyboardInterrupt:
        pass
    except OSError as exc:
        print(f"cannot serve on {host}:{port}: {exc}", file=sys.stderr)
        return 1
    log_path = Path(f"{scenario.id}_session_log.json")
    log_path.write_text(json.dumps(runner.message_log, indent=2) + "\n")
    csv_path = Path(f"{scenario.id}_session.csv")
    try:
        pushes = replay_pushes(
            runner.message_log,
            end_time=runner.state.clock,
            link_index=runner.push_link_index,
            application_distance=runner.push_application,
        )
        replay = replace(scenario, pushes=pushes, duration_s=runner.state.clock)
        rows, _, _ = simulate(replay)
        write_trajectory(csv_path, rows)
        print(f"session log: {log_path}; trajectory: {csv_path}")
    except ValueError:
        print(f"session log: {log_path} (mixed frames; no trajectory replay)")
    return 0
