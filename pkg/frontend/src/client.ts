// Socket plumbing. Reconnects with a fixed backoff; every inbound
// message goes through parseFrame so a bad frame can never break the UI.

import { parseFrame, type ServerFrame } from "./protocol.js";
import type { ConnectionStatus } from "./state.js";

export const RECONNECT_DELAY_MS = 1000;

/** Bridge URL from query parameters, e.g. ?host=10.0.0.5&port=8765 */
export function bridgeUrl(search: string, defaultHost = "127.0.0.1", defaultPort = 8765): string {
  const params = new URLSearchParams(search);
  const host = params.get("host") ?? defaultHost;
  const port = params.get("port") ?? String(defaultPort);
  return `ws://${host}:${port}`;
}

export interface ClientHandlers {
  onFrame(frame: ServerFrame): void;
  onStatus(status: ConnectionStatus): void;
  onBadFrame?(reason: string): void;
}

export class BridgeClient {
  private socket: WebSocket | null = null;
  private closed = false;

  constructor(
    private readonly url: string,
    private readonly handlers: ClientHandlers,
  ) {}

  connect(): void {
    this.handlers.onStatus("connecting");
    const socket = new WebSocket(this.url);
    this.socket = socket;
    socket.onopen = () => this.handlers.onStatus("open");
    socket.onmessage = (event) => {
      const result = parseFrame(String(event.data));
      if (result.ok) {
        this.handlers.onFrame(result.frame);
      } else {
        this.handlers.onBadFrame?.(result.reason);
      }
    };
    socket.onclose = () => {
      this.handlers.onStatus("closed");
      this.socket = null;
      if (!this.closed) {
        setTimeout(() => this.connect(), RECONNECT_DELAY_MS);
      }
    };
    socket.onerror = () => socket.close();
  }

  send(message: object): boolean {
    if (this.socket === null || this.socket.readyState !== WebSocket.OPEN) return false;
    this.socket.send(JSON.stringify(message));
    return true;
  }

  close(): void {
    this.closed = true;
    this.socket?.close();
  }
}
