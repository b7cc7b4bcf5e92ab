import assert from "node:assert/strict";
import { test } from "node:test";

import { fmtTick, logTicks, niceTicks, Panel } from "../src/chart.js";
import { contourLevels, marchingSquares } from "../src/marching.js";

test("nice ticks hit round steps", () => {
  assert.deepEqual(niceTicks(0, 10, 5), [0, 2, 4, 6, 8, 10]);
  assert.deepEqual(niceTicks(0.1, 0.9, 4), [0.2, 0.4, 0.6000000000000001, 0.8]);
});

test("log ticks are the covering decades", () => {
  assert.deepEqual(logTicks(2e-5, 3e-2), [1e-5, 1e-4, 1e-3, 1e-2, 1e-1]);
});

test("tick labels are compact", () => {
  assert.equal(fmtTick(1e-4), "1e-4");
  assert.equal(fmtTick(0.25), "0.25");
  assert.equal(fmtTick(50), "50");
  assert.equal(fmtTick(0), "0");
});

test("log panel maps decades evenly", () => {
  const p = new Panel({
    x0: 0, y0: 0, width: 300, height: 100,
    xRange: [1e-4, 1e-1], yRange: [0, 1], xLog: true,
  });
  assert.ok(Math.abs(p.xOf(1e-4) - 0) < 1e-9);
  assert.ok(Math.abs(p.xOf(1e-3) - 100) < 1e-9);
  assert.ok(Math.abs(p.xOf(1e-1) - 300) < 1e-9);
});

test("equal aspect pads the shorter axis", () => {
  const p = new Panel({
    x0: 0, y0: 0, width: 200, height: 100,
    xRange: [0, 1], yRange: [0, 1], equalAspect: true,
  });
  // y spans 1 over 100px; x must span 2 over 200px, centered on 0.5
  assert.deepEqual(p.o.xRange, [-0.5, 1.5]);
  assert.deepEqual(p.o.yRange, [0, 1]);
});

test("single-cell crossing interpolates linearly", () => {
  // quad corners: (0,0)=0 (1,0)=1 (1,1)=1 (0,1)=0, level 0.25 cuts the
  // bottom edge at x=0.25 and the top edge at x=0.25: one vertical segment
  const segs = marchingSquares([0, 1], [0, 1], [[0, 0], [1, 1]], 0.25);
  assert.equal(segs.length, 1);
  const [x1, y1, x2, y2] = segs[0];
  assert.deepEqual([x1, x2].sort(), [0.25, 0.25]);
  assert.deepEqual([y1, y2].sort(), [0, 1]);
});

test("contour of a radial field stays on the circle", () => {
  const n = 81;
  const xs = Array.from({ length: n }, (_, i) => -1 + (2 * i) / (n - 1));
  const ys = xs.slice();
  const values = xs.map((x) => ys.map((y) => Math.hypot(x, y)));
  const r0 = 0.6;
  const segs = marchingSquares(xs, ys, values, r0);
  assert.ok(segs.length > 40);
  const dx = 2 / (n - 1);
  let total = 0;
  for (const [x1, y1, x2, y2] of segs) {
    assert.ok(Math.abs(Math.hypot(x1, y1) - r0) < dx, `endpoint off circle: ${x1},${y1}`);
    assert.ok(Math.abs(Math.hypot(x2, y2) - r0) < dx);
    total += Math.hypot(x2 - x1, y2 - y1);
  }
  // total contour length approximates the circumference
  assert.ok(Math.abs(total - 2 * Math.PI * r0) < 0.15);
});

test("saddle cells emit two segments", () => {
  // high corners on one diagonal, low on the other
  const segs = marchingSquares([0, 1], [0, 1], [[1, 0], [0, 1]], 0.5);
  assert.equal(segs.length, 2);
});

test("contour levels are strictly interior", () => {
  const ls = contourLevels(0, 1, 3);
  assert.deepEqual(ls, [0.25, 0.5, 0.75]);
});
