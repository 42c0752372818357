import { describe, expect, it } from "vitest";

import { padPositionToAffect } from "../src/pad.js";

const RECT = { left: 100, top: 50, width: 320, height: 320 };

describe("padPositionToAffect", () => {
  it("maps the center click to (0.5, 0.5)", () => {
    expect(padPositionToAffect(RECT, 260, 210)).toEqual({ v: 0.5, a: 0.5 });
  });

  it("maps the top-right corner to (1, 1)", () => {
    expect(padPositionToAffect(RECT, 420, 50)).toEqual({ v: 1, a: 1 });
  });

  it("maps the bottom-left corner to (0, 0)", () => {
    expect(padPositionToAffect(RECT, 100, 370)).toEqual({ v: 0, a: 0 });
  });

  it("arousal grows upward on screen", () => {
    const low = padPositionToAffect(RECT, 260, 360);
    const high = padPositionToAffect(RECT, 260, 60);
    expect(high.a).toBeGreaterThan(low.a);
  });

  it("clamps drags that leave the pad", () => {
    expect(padPositionToAffect(RECT, -500, 9999)).toEqual({ v: 0, a: 0 });
    expect(padPositionToAffect(RECT, 9999, -500)).toEqual({ v: 1, a: 1 });
  });
});
