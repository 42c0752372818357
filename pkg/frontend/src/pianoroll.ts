/**
 * Scrolling piano-roll strip of inbound note records. Layout math is pure
 * (note -> rectangle in roll coordinates); the canvas class just paints.
 */

import { NoteMessage } from "./protocol.js";

export const SLOTS_PER_BAR = 8;
export const PITCH_MIN = 24;
export const PITCH_MAX = 96;

/** One voice channel per color; matches the engine's channel map. */
export const CHANNEL_COLORS: Record<number, string> = {
  0: "#4c8dd6", // piano (tenor + alto)
  1: "#8a6ccf", // strings (bass)
  2: "#d6a34c", // clarinet (soprano)
  3: "#5cb872", // marimba doubling
};

export interface RollRect {
  /** x position in slot units from the start of the stream */
  x: number;
  /** width in slot units */
  w: number;
  /** y in [0,1), 0 = top (highest pitch) */
  y: number;
  /** height in the same normalized units */
  h: number;
  color: string;
}

export function noteToRect(note: NoteMessage): RollRect {
  const span = PITCH_MAX - PITCH_MIN + 1;
  const clamped = Math.min(PITCH_MAX, Math.max(PITCH_MIN, note.pitch));
  return {
    x: note.bar * SLOTS_PER_BAR + (note.onset - 1),
    w: note.duration,
    y: (PITCH_MAX - clamped) / span,
    h: 1 / span,
    color: CHANNEL_COLORS[note.channel] ?? "#999999",
  };
}

export class PianoRoll {
  readonly element: HTMLCanvasElement;
  private readonly notes: RollRect[] = [];
  private readonly visibleSlots: number;
  private latestSlot = 0;
  private barMarks: number[] = [];

  constructor(visibleBars = 8) {
    this.element = document.createElement("canvas");
    this.element.className = "piano-roll";
    this.visibleSlots = visibleBars * SLOTS_PER_BAR;
  }

  addNote(note: NoteMessage): void {
    const rect = noteToRect(note);
    this.notes.push(rect);
    this.latestSlot = Math.max(this.latestSlot, rect.x + rect.w);
    // drop anything scrolled past the left edge
    const cutoff = this.latestSlot - this.visibleSlots;
    while (this.notes.length > 0 && this.notes[0].x + this.notes[0].w < cutoff) {
      this.notes.shift();
    }
    this.draw();
  }

  /** Tick mark at a bar boundary so the beat grid stays visible. */
  markBar(barIndex: number): void {
    this.barMarks.push(barIndex * SLOTS_PER_BAR);
    this.barMarks = this.barMarks.filter(
      (s) => s >= this.latestSlot - this.visibleSlots,
    );
    this.draw();
  }

  private draw(): void {
    const ctx = this.element.getContext("2d");
    if (!ctx) return;
    const { width, height } = this.element;
    ctx.clearRect(0, 0, width, height);
    const slotPx = width / this.visibleSlots;
    const offset = Math.max(0, this.latestSlot - this.visibleSlots);
    ctx.strokeStyle = "#333333";
    for (const s of this.barMarks) {
      const x = (s - offset) * slotPx;
      ctx.beginPath();
      ctx.moveTo(x, 0);
      ctx.lineTo(x, height);
      ctx.stroke();
    }
    for (const n of this.notes) {
      ctx.fillStyle = n.color;
      ctx.fillRect(
        (n.x - offset) * slotPx,
        n.y * height,
        Math.max(1, n.w * slotPx - 1),
        Math.max(1, n.h * height - 1),
      );
    }
  }
}
