/**
 * Entry point: wires the pad, status panel and piano roll to the live
 * endpoint. Serve the built assets from any static host next to the
 * engine's websocket.
 */

import { SteeringClient } from "./client.js";
import { AffectPad } from "./pad.js";
import { PianoRoll } from "./pianoroll.js";
import { StatusPanel } from "./status.js";

const DEFAULT_URL = `ws://${location.hostname}:8765/ws`;

function start(): void {
  const root = document.getElementById("app");
  if (!root) throw new Error("missing #app container");

  const client = new SteeringClient((url) => new WebSocket(url));
  const pad = new AffectPad((v, a) => client.sendAffect(v, a));
  const status = new StatusPanel();
  const roll = new PianoRoll();
  roll.element.width = 960;
  roll.element.height = 240;

  root.appendChild(status.element);
  root.appendChild(pad.element);
  root.appendChild(roll.element);

  client.onStateChange((state) => {
    status.update(state);
    pad.setPosition(state.v, state.a);
  });
  client.onBar((bar) => roll.markBar(bar.index));
  client.onNote((note) => roll.addNote(note));

  const params = new URLSearchParams(location.search);
  client.connect(params.get("url") ?? DEFAULT_URL);
}

document.addEventListener("DOMContentLoaded", start);
