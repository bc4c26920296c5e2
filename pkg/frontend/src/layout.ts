/** Deterministic force-directed layout: no randomness, a fixed
 * iteration budget, so the same graph always lands in the same
 * positions (and tests can assert exact equality). */

export interface Point {
  x: number;
  y: number;
}

export interface LayoutOptions {
  width?: number;
  height?: number;
  iterations?: number;
}

export function forceLayout(
  nodeIds: readonly number[],
  edges: ReadonlyArray<readonly [number, number]>,
  options: LayoutOptions = {},
): Map<number, Point> {
  const width = options.width ?? 640;
  const height = options.height ?? 420;
  const iterations = options.iterations ?? 150;

  const ids = [...new Set(nodeIds)].sort((a, b) => a - b);
  const n = ids.length;
  const positions = new Map<number, Point>();
  if (n === 0) return positions;

  const cx = width / 2;
  const cy = height / 2;
  const radius = Math.min(width, height) / 3;
  ids.forEach((id, i) => {
    // seed on a circle in id order: deterministic and collision-free
    const angle = (2 * Math.PI * i) / n;
    positions.set(id, {
      x: cx + radius * Math.cos(angle),
      y: cy + radius * Math.sin(angle),
    });
  });
  if (n === 1) {
    positions.set(ids[0]!, { x: cx, y: cy });
    return positions;
  }

  const index = new Map(ids.map((id, i) => [id, i]));
  const xs = ids.map((id) => positions.get(id)!.x);
  const ys = ids.map((id) => positions.get(id)!.y);
  const springs: Array<[number, number]> = [];
  for (const [src, dst] of edges) {
    const a = index.get(src);
    const b = index.get(dst);
    if (a !== undefined && b !== undefined && a !== b) springs.push([a, b]);
  }

  const area = width * height;
  const k = Math.sqrt(area / n);
  let temperature = Math.min(width, height) / 8;
  const cooling = temperature / (iterations + 1);

  for (let step = 0; step < iterations; step++) {
    const dx = new Array<number>(n).fill(0);
    const dy = new Array<number>(n).fill(0);

    for (let i = 0; i < n; i++) {
      for (let j = i + 1; j < n; j++) {
        let vx = xs[i]! - xs[j]!;
        let vy = ys[i]! - ys[j]!;
        let dist = Math.hypot(vx, vy);
        if (dist < 1e-6) {
          // identical spots: push apart along a fixed, index-derived axis
          vx = 1;
          vy = (i - j) * 0.01;
          dist = 1;
        }
        const force = (k * k) / dist;
        dx[i]! += (vx / dist) * force;
        dy[i]! += (vy / dist) * force;
        dx[j]! -= (vx / dist) * force;
        dy[j]! -= (vy / dist) * force;
      }
    }

    for (const [a, b] of springs) {
      const vx = xs[a]! - xs[b]!;
      const vy = ys[a]! - ys[b]!;
      const dist = Math.max(Math.hypot(vx, vy), 1e-6);
      const force = (dist * dist) / k;
      dx[a]! -= (vx / dist) * force;
      dy[a]! -= (vy / dist) * force;
      dx[b]! += (vx / dist) * force;
      dy[b]! += (vy / dist) * force;
    }

    for (let i = 0; i < n; i++) {
      const len = Math.max(Math.hypot(dx[i]!, dy[i]!), 1e-6);
      const capped = Math.min(len, temperature);
      xs[i] = xs[i]! + (dx[i]! / len) * capped;
      ys[i] = ys[i]! + (dy[i]! / len) * capped;
      // gentle pull toward the center keeps components on screen
      xs[i] = xs[i]! + (cx - xs[i]!) * 0.02;
      ys[i] = ys[i]! + (cy - ys[i]!) * 0.02;
    }
    temperature -= cooling;
  }

  // fit into the frame by shrinking about the center: unlike clamping,
  // a uniform rescale never collapses two distinct nodes onto the edge
  const margin = 24;
  const minX = Math.min(...xs);
  const maxX = Math.max(...xs);
  const minY = Math.min(...ys);
  const maxY = Math.max(...ys);
  const spanX = maxX - minX;
  const spanY = maxY - minY;
  const scale = Math.min(
    1,
    spanX > 0 ? (width - 2 * margin) / spanX : Infinity,
    spanY > 0 ? (height - 2 * margin) / spanY : Infinity,
  );
  const midX = (minX + maxX) / 2;
  const midY = (minY + maxY) / 2;
  ids.forEach((id, i) => {
    positions.set(id, {
      x: cx + (xs[i]! - midX) * scale,
      y: cy + (ys[i]! - midY) * scale,
    });
  });
  return positions;
}
