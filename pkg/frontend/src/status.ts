/**
 * Parameter readouts. Purely mirrors the last inbound bar status — tempo,
 * chord, theme position and doubling are never recomputed client-side.
 */

import { PadState } from "./client.js";
import { BarMessage } from "./protocol.js";

export interface StatusView {
  tempoText: string;
  chordText: string;
  themeText: string;
  marimbaLit: boolean;
  connectionText: string;
}

export function formatStatus(state: {
  connected: boolean;
  lastBar: BarMessage | null;
}): StatusView {
  const bar = state.lastBar;
  return {
    tempoText: bar ? `${Math.round(bar.tempo)} BPM` : "--- BPM",
    chordText: bar ? bar.chord : "--",
    themeText: bar ? `bar ${bar.theme_bar}/8` : "bar -/8",
    marimbaLit: bar !== null && bar.doubled,
    connectionText: state.connected ? "connected" : "disconnected",
  };
}

export class StatusPanel {
  readonly element: HTMLDivElement;
  private readonly tempo: HTMLSpanElement;
  private readonly chord: HTMLSpanElement;
  private readonly theme: HTMLSpanElement;
  private readonly marimba: HTMLSpanElement;
  private readonly connection: HTMLSpanElement;

  constructor() {
    this.element = document.createElement("div");
    this.element.className = "status-panel";
    this.tempo = this.addField("tempo");
    this.chord = this.addField("chord");
    this.theme = this.addField("theme");
    this.marimba = this.addField("marimba");
    this.connection = this.addField("connection");
  }

  update(state: PadState): void {
    const view = formatStatus(state);
    this.tempo.textContent = view.tempoText;
    this.chord.textContent = view.chordText;
    this.theme.textContent = view.themeText;
    this.marimba.textContent = view.marimbaLit ? "marimba on" : "marimba off";
    this.marimba.classList.toggle("lit", view.marimbaLit);
    this.connection.textContent = view.connectionText;
    this.connection.classList.toggle("disconnected", !state.connected);
  }

  private addField(name: string): HTMLSpanElement {
    const span = document.createElement("span");
    span.className = `status-${name}`;
    this.element.appendChild(span);
    return span;
  }
}
