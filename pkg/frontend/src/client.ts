/**
 * Websocket client for the live engine. Socket callbacks mutate only the
 * PadState; views subscribe to change notifications. The constructor takes
 * a socket factory so tests can script the endpoint.
 */

import {
  BarMessage,
  NoteMessage,
  ServerMessage,
  affectMessage,
  parseServerMessage,
} from "./protocol.js";
import { TrailingThrottle } from "./throttle.js";

/** Minimal socket surface; satisfied by the browser WebSocket. */
export interface SocketLike {
  send(data: string): void;
  close(): void;
  // `any` keeps the browser WebSocket assignable despite its DOM event types
  onopen: ((ev: any) => void) | null;
  onmessage: ((ev: any) => void) | null;
  onclose: ((ev: any) => void) | null;
  onerror: ((ev: any) => void) | null;
}

export type SocketFactory = (url: string) => SocketLike;

export interface PadState {
  v: number;
  a: number;
  connected: boolean;
  seed: number | null;
  lastBar: BarMessage | null;
}

/** At most 20 outbound affect messages per second. */
export const MAX_AFFECT_RATE_HZ = 20;

export class SteeringClient {
  readonly state: PadState = {
    v: 0.5,
    a: 0.5,
    connected: false,
    seed: null,
    lastBar: null,
  };

  private socket: SocketLike | null = null;
  private readonly throttle: TrailingThrottle<{ v: number; a: number }>;
  private readonly barListeners: Array<(bar: BarMessage) => void> = [];
  private readonly noteListeners: Array<(note: NoteMessage) => void> = [];
  private readonly stateListeners: Array<(state: PadState) => void> = [];

  constructor(
    private readonly makeSocket: SocketFactory,
    private readonly log: (msg: string) => void = (m) => console.warn(m),
  ) {
    this.throttle = new TrailingThrottle(
      ({ v, a }) => this.sendNow(v, a),
      1000 / MAX_AFFECT_RATE_HZ,
    );
  }

  connect(url: string): void {
    const socket = this.makeSocket(url);
    this.socket = socket;
    socket.onopen = () => {
      // connected flips on hello, not on open: the handshake is the contract
    };
    socket.onmessage = (ev) => this.handleFrame(ev.data);
    socket.onclose = () => this.markDisconnected();
    socket.onerror = () => this.markDisconnected();
  }

  onBar(fn: (bar: BarMessage) => void): void {
    this.barListeners.push(fn);
  }

  onNote(fn: (note: NoteMessage) => void): void {
    this.noteListeners.push(fn);
  }

  onStateChange(fn: (state: PadState) => void): void {
    this.stateListeners.push(fn);
  }

  /**
   * Update the target affect from the pad. Values are clamped, outbound
   * traffic is throttled (trailing edge, last position wins), and nothing
   * is sent or queued while disconnected.
   */
  sendAffect(v: number, a: number): void {
    if (!this.state.connected) return;
    const msg = affectMessage(v, a);
    this.state.v = msg.v;
    this.state.a = msg.a;
    this.notifyState();
    this.throttle.push({ v: msg.v, a: msg.a });
  }

  requestStop(): void {
    if (this.socket && this.state.connected) {
      this.socket.send(JSON.stringify({ type: "stop" }));
    }
  }

  close(): void {
    this.throttle.cancel();
    this.socket?.close();
    this.markDisconnected();
  }

  private sendNow(v: number, a: number): void {
    if (this.socket && this.state.connected) {
      this.socket.send(JSON.stringify(affectMessage(v, a)));
    }
  }

  private handleFrame(raw: string): void {
    const msg: ServerMessage | null = parseServerMessage(raw);
    if (msg === null) {
      this.log(`ignoring malformed frame: ${raw.slice(0, 120)}`);
      return;
    }
    switch (msg.type) {
      case "hello":
        this.state.connected = true;
        this.state.seed = msg.seed;
        this.notifyState();
        break;
      case "bar":
        this.state.lastBar = msg;
        this.notifyState();
        for (const fn of this.barListeners) fn(msg);
        break;
      case "note":
        for (const fn of this.noteListeners) fn(msg);
        break;
      case "seed":
        this.state.seed = msg.seed;
        this.notifyState();
        break;
      case "error":
        this.log(`engine error: ${msg.message}`);
        break;
      case "stopped":
        break;
    }
  }

  private markDisconnected(): void {
    if (!this.state.connected && this.socket === null) return;
    this.state.connected = false;
    this.throttle.cancel();
    this.notifyState();
  }

  private notifyState(): void {
    for (const fn of this.stateListeners) fn(this.state);
  }
}
