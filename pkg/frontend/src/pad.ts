/**
 * XY affect pad: valence on x (left = negative), arousal on y (bottom =
 * calm). The coordinate math is a pure function so it can be tested
 * without a DOM.
 */

import { clamp01 } from "./protocol.js";

export interface PadRect {
  left: number;
  top: number;
  width: number;
  height: number;
}

/** Map a pointer position inside (or outside) the pad to clamped affect. */
export function padPositionToAffect(
  rect: PadRect,
  clientX: number,
  clientY: number,
): { v: number; a: number } {
  const v = clamp01((clientX - rect.left) / rect.width);
  // y grows downward on screen; arousal grows upward on the pad
  const a = clamp01(1 - (clientY - rect.top) / rect.height);
  return { v, a };
}

export class AffectPad {
  readonly element: HTMLDivElement;
  private readonly cursor: HTMLDivElement;
  private dragging = false;

  constructor(private readonly onMove: (v: number, a: number) => void) {
    this.element = document.createElement("div");
    this.element.className = "affect-pad";
    this.cursor = document.createElement("div");
    this.cursor.className = "affect-pad-cursor";
    this.element.appendChild(this.cursor);

    this.element.addEventListener("pointerdown", (ev) => {
      this.dragging = true;
      this.element.setPointerCapture(ev.pointerId);
      this.handle(ev);
    });
    this.element.addEventListener("pointermove", (ev) => {
      if (this.dragging) this.handle(ev);
    });
    this.element.addEventListener("pointerup", (ev) => {
      this.dragging = false;
      this.element.releasePointerCapture(ev.pointerId);
    });
  }

  setPosition(v: number, a: number): void {
    this.cursor.style.left = `${v * 100}%`;
    this.cursor.style.top = `${(1 - a) * 100}%`;
  }

  private handle(ev: PointerEvent): void {
    const rect = this.element.getBoundingClientRect();
    const { v, a } = padPositionToAffect(rect, ev.clientX, ev.clientY);
    this.setPosition(v, a);
    this.onMove(v, a);
  }
}
