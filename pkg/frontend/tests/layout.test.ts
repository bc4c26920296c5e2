import { describe, expect, it } from "vitest";

import { forceLayout } from "../src/layout.js";

const EDGES: Array<[number, number]> = [
  [1, 2],
  [1, 3],
  [2, 3],
  [3, 7],
];

describe("forceLayout", () => {
  it("is deterministic: two runs give identical positions", () => {
    const a = forceLayout([1, 2, 3, 7], EDGES);
    const b = forceLayout([1, 2, 3, 7], EDGES);
    expect(Object.fromEntries(a)).toEqual(Object.fromEntries(b));
  });

  it("ignores input order and duplicate ids", () => {
    const a = forceLayout([7, 3, 1, 2, 1], EDGES);
    const b = forceLayout([1, 2, 3, 7], EDGES);
    expect(Object.fromEntries(a)).toEqual(Object.fromEntries(b));
  });

  it("gives every node a distinct position", () => {
    const ids = Array.from({ length: 12 }, (_, i) => i);
    const placed = forceLayout(ids, [[0, 1], [1, 2], [2, 0]]);
    const seen = new Set(
      [...placed.values()].map((p) => `${p.x.toFixed(6)},${p.y.toFixed(6)}`),
    );
    expect(seen.size).toBe(ids.length);
  });

  it("keeps nodes inside the frame with a margin", () => {
    const ids = Array.from({ length: 30 }, (_, i) => i);
    const placed = forceLayout(ids, [], { width: 300, height: 200 });
    for (const p of placed.values()) {
      expect(p.x).toBeGreaterThanOrEqual(24);
      expect(p.x).toBeLessThanOrEqual(300 - 24);
      expect(p.y).toBeGreaterThanOrEqual(24);
      expect(p.y).toBeLessThanOrEqual(200 - 24);
    }
  });

  it("centers a single node", () => {
    const placed = forceLayout([42], [], { width: 640, height: 420 });
    expect(placed.get(42)).toEqual({ x: 320, y: 210 });
  });

  it("returns an empty map for no nodes", () => {
    expect(forceLayout([], []).size).toBe(0);
  });

  it("tolerates edges pointing at absent nodes", () => {
    const placed = forceLayout([1, 2], [[1, 99], [2, 2]]);
    expect(placed.size).toBe(2);
    for (const p of placed.values()) {
      expect(Number.isFinite(p.x)).toBe(true);
      expect(Number.isFinite(p.y)).toBe(true);
    }
  });

  it("places connected nodes closer than unconnected ones on a path", () => {
    // chain 0-1-2-3-4: adjacent pairs should sit nearer than the endpoints
    const ids = [0, 1, 2, 3, 4];
    const chain: Array<[number, number]> = [[0, 1], [1, 2], [2, 3], [3, 4]];
    const placed = forceLayout(ids, chain);
    const d = (a: number, b: number) => {
      const pa = placed.get(a)!;
      const pb = placed.get(b)!;
      return Math.hypot(pa.x - pb.x, pa.y - pb.y);
    };
    expect(d(0, 1)).toBeLessThan(d(0, 4));
    expect(d(3, 4)).toBeLessThan(d(0, 4));
  });
});
