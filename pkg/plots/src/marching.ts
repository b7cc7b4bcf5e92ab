/**
 * Marching-squares contour extraction on a rectilinear point grid.
 *
 * values[i][j] is the sample at (xs[i], ys[j]). For each grid quad the
 * four corners are classified against the level; crossing points are
 * placed by linear interpolation along the quad edges. Saddle cases are
 * disambiguated with the cell-center average. Output is an unordered
 * list of line segments [x1, y1, x2, y2] in data coordinates.
 */

export function marchingSquares(
  xs: number[],
  ys: number[],
  values: number[][],
  level: number
): number[][] {
  const segs: number[][] = [];
  const nx = xs.length;
  const ny = ys.length;
  for (let i = 0; i < nx - 1; i++) {
    for (let j = 0; j < ny - 1; j++) {
      // corners counterclockwise from lower-left: a=(i,j) b=(i+1,j) c=(i+1,j+1) d=(i,j+1)
      const a = values[i][j];
      const b = values[i + 1][j];
      const c = values[i + 1][j + 1];
      const d = values[i][j + 1];
      let code = 0;
      if (a >= level) code |= 1;
      if (b >= level) code |= 2;
      if (c >= level) code |= 4;
      if (d >= level) code |= 8;
      if (code === 0 || code === 15) continue;

      const x0 = xs[i], x1 = xs[i + 1];
      const y0 = ys[j], y1 = ys[j + 1];
      const t = (p: number, q: number) => (level - p) / (q - p);
      // edge crossing points: bottom (a-b), right (b-c), top (d-c), left (a-d)
      const bot = (): [number, number] => [x0 + t(a, b) * (x1 - x0), y0];
      const rgt = (): [number, number] => [x1, y0 + t(b, c) * (y1 - y0)];
      const top = (): [number, number] => [x0 + t(d, c) * (x1 - x0), y1];
      const lft = (): [number, number] => [x0, y0 + t(a, d) * (y1 - y0)];
      const put = (p: [number, number], q: [number, number]) =>
        segs.push([p[0], p[1], q[0], q[1]]);

      switch (code) {
        case 1: case 14: put(lft(), bot()); break;
        case 2: case 13: put(bot(), rgt()); break;
        case 3: case 12: put(lft(), rgt()); break;
        case 4: case 11: put(rgt(), top()); break;
        case 6: case 9:  put(bot(), top()); break;
        case 7: case 8:  put(lft(), top()); break;
        case 5: case 10: {
          // saddle: the center average decides which diagonal connects;
          // the two segments then wall off the isolated corner pair
          const center = (a + b + c + d) / 4;
          if ((center >= level) === (code === 5)) {
            put(bot(), rgt());
            put(lft(), top());
          } else {
            put(lft(), bot());
            put(rgt(), top());
          }
          break;
        }
      }
    }
  }
  return segs;
}

/** n levels spaced uniformly strictly inside [lo, hi]. */
export function contourLevels(lo: number, hi: number, n: number): number[] {
  const out: number[] = [];
  for (let k = 1; k <= n; k++) out.push(lo + ((hi - lo) * k) / (n + 1));
  return out;
}
