/**
 * The live control protocol (proto 1), as JSON over a websocket.
 *
 * This module is the single place that knows the wire format; everything
 * else works with the parsed types. The UI holds no music logic — it only
 * mirrors what the engine sends.
 */

export const PROTOCOL_VERSION = 1;

export interface HelloMessage {
  type: "hello";
  proto: number;
  seed: number;
}

/** Per-bar status, sent once at every bar boundary. */
export interface BarMessage {
  type: "bar";
  index: number;
  v: number;
  a: number;
  tempo: number;
  chord: string;
  theme_bar: number;
  doubled: boolean;
}

/** One sounding pitch within a bar (onset/duration in eighth-note slots). */
export interface NoteMessage {
  type: "note";
  bar: number;
  channel: number;
  onset: number;
  duration: number;
  pitch: number;
}

export interface ErrorMessage {
  type: "error";
  message: string;
}

export interface SeedMessage {
  type: "seed";
  seed: number;
}

export interface StoppedMessage {
  type: "stopped";
}

export type ServerMessage =
  | HelloMessage
  | BarMessage
  | NoteMessage
  | ErrorMessage
  | SeedMessage
  | StoppedMessage;

export interface AffectMessage {
  type: "affect";
  v: number;
  a: number;
}

function isFiniteNumber(x: unknown): x is number {
  return typeof x === "number" && Number.isFinite(x);
}

/**
 * Parse one inbound frame. Returns null for anything malformed; callers
 * log and carry on — a bad frame must never take the UI down.
 */
export function parseServerMessage(raw: string): ServerMessage | null {
  let data: unknown;
  try {
    data = JSON.parse(raw);
  } catch {
    return null;
  }
  if (typeof data !== "object" || data === null) return null;
  const msg = data as Record<string, unknown>;
  switch (msg.type) {
    case "hello":
      if (isFiniteNumber(msg.proto) && isFiniteNumber(msg.seed)) {
        return { type: "hello", proto: msg.proto, seed: msg.seed };
      }
      return null;
    case "bar":
      if (
        isFiniteNumber(msg.index) &&
        isFiniteNumber(msg.v) &&
        isFiniteNumber(msg.a) &&
        isFiniteNumber(msg.tempo) &&
        typeof msg.chord === "string" &&
        isFiniteNumber(msg.theme_bar) &&
        typeof msg.doubled === "boolean"
      ) {
        return {
          type: "bar",
          index: msg.index,
          v: msg.v,
          a: msg.a,
          tempo: msg.tempo,
          chord: msg.chord,
          theme_bar: msg.theme_bar,
          doubled: msg.doubled,
        };
      }
      return null;
    case "note":
      if (
        isFiniteNumber(msg.bar) &&
        isFiniteNumber(msg.channel) &&
        isFiniteNumber(msg.onset) &&
        isFiniteNumber(msg.duration) &&
        isFiniteNumber(msg.pitch)
      ) {
        return {
          type: "note",
          bar: msg.bar,
          channel: msg.channel,
          onset: msg.onset,
          duration: msg.duration,
          pitch: msg.pitch,
        };
      }
      return null;
    case "error":
      return typeof msg.message === "string"
        ? { type: "error", message: msg.message }
        : null;
    case "seed":
      return isFiniteNumber(msg.seed) ? { type: "seed", seed: msg.seed } : null;
    case "stopped":
      return { type: "stopped" };
    default:
      return null;
  }
}

export function clamp01(x: number): number {
  if (Number.isNaN(x)) return 0;
  return Math.min(1, Math.max(0, x));
}

/** Build an outbound affect update, clamping to the unit square. */
export function affectMessage(v: number, a: number): AffectMessage {
  return { type: "affect", v: clamp01(v), a: clamp01(a) };
}
