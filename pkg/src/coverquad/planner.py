"""Greedy hill-climb mission planner with convolution tie-break and
"global warming" mode flattening, plus the synthetic multi-rover path layer.

The search area is split into a square grid (30x30 cells of one search radius
in the reference configuration). A walk starts at the global probability
maximum and repeatedly moves to the best-scoring 8-neighbor; visited cells
score zero afterwards, so revisiting is discouraged but not forbidden. Ties
are broken by the 3x3 box-blur convolution of the field, then by a fixed
neighbor order, so planning is fully deterministic.

The warming schedule subtracts k * C from the field (clamped at zero) for
k = 0..levels-1 with C = p_max / levels, runs the walk on each flattened
field, scores every candidate walk on the original field, and keeps the best.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .geometry import Polyline
from .integrand import Kernel3x3

# fixed neighbor order: N, NE, E, SE, S, SW, W, NW (row = y index, col = x)
_NEIGHBOR_ORDER = (
    (1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1),
)


class MissionGrid:
    """W x H field of probability scores sampled at cell centers."""

    def __init__(self, scores, cell_size, origin=(0.0, 0.0)):
        scores = np.asarray(scores, dtype=float)
        if scores.ndim != 2 or np.any(scores < 0):
            raise ValueError("scores must be a non-negative 2D matrix")
        self.scores = scores
        self.cell_size = float(cell_size)
        self.origin = (float(origin[0]), float(origin[1]))
        self.scores.setflags(write=False)

    @classmethod
    def from_pdm(cls, pdm, cells_per_side=30):
        xmin, ymin, xmax, ymax = pdm.bounds
        cell = (xmax - xmin) / cells_per_side
        xs = xmin + (np.arange(cells_per_side) + 0.5) * cell
        ys = ymin + (np.arange(cells_per_side) + 0.5) * cell
        xx, yy = np.meshgrid(xs, ys)
        scores = pdm(np.column_stack([xx.ravel(), yy.ravel()]))
        return cls(scores.reshape(cells_per_side, cells_per_side), cell, (xmin, ymin))

    @property
    def shape(self):
        return self.scores.shape

    def cell_center(self, cell):
        r, c = cell
        x0, y0 = self.origin
        return (x0 + (c + 0.5) * self.cell_size, y0 + (r + 0.5) * self.cell_size)


@dataclass
class WaypointPath:
    cells: list  # [(row, col), ...], consecutive cells 8-adjacent
    score: float

    def __len__(self):
        return len(self.cells)

    def to_csv(self, path, grid):
        with open(path, "w", newline="") as f:
            w = csv.writer(f)
            w.writerow(["index", "cell_i", "cell_j", "x_m", "y_m", "score_so_far"])
            seen = set()
            acc = 0.0
            for k, cell in enumerate(self.cells):
                if cell not in seen:
                    acc += float(grid.scores[cell])
                    seen.add(cell)
                x, y = grid.cell_center(cell)
                w.writerow([k, cell[0], cell[1], f"{x:.6f}", f"{y:.6f}", f"{acc:.12g}"])


def global_warming(grid, c):
    """Subtract c from every cell, clamping at zero."""
    if c < 0:
        raise ValueError("warming constant must be non-negative")
    return MissionGrid(
        np.where(grid.scores > c, grid.scores - c, 0.0), grid.cell_size, grid.origin
    )


def _conv_field(scores, kernel):
    return ndimage.convolve(scores, kernel.weights, mode="constant", cval=0.0)


def lhc_step(grid, seen, current, kernel=None):
    """Pick the next cell: best unseen 8-neighbor, convolution tie-break,
    fixed neighbor order as the tie-break of last resort."""
    kernel = kernel or Kernel3x3.box()
    rows, cols = grid.shape
    r0, c0 = current
    if not (0 <= r0 < rows and 0 <= c0 < cols):
        raise ValueError("current cell out of bounds")
    masked = np.where(seen, 0.0, grid.scores)
    candidates = []
    for dr, dc in _NEIGHBOR_ORDER:
        r, c = r0 + dr, c0 + dc
        if 0 <= r < rows and 0 <= c < cols:
            candidates.append(((r, c), masked[r, c]))
    best_score = max(s for _, s in candidates)
    tied = [cell for cell, s in candidates if s == best_score]
    if len(tied) == 1:
        return tied[0]
    conv = _conv_field(masked, kernel)
    best_conv = max(conv[cell] for cell in tied)
    tied = [cell for cell in tied if conv[cell] == best_conv]
    return tied[0]  # candidate list is already in fixed neighbor order


def _walk(grid, start, waypoints, kernel):
    seen = np.zeros(grid.shape, dtype=bool)
    cells = [start]
    seen[start] = True
    current = start
    for _ in range(waypoints - 1):
        current = lhc_step(grid, seen, current, kernel)
        cells.append(current)
        seen[current] = True
    return cells


def _score_on(grid, cells):
    """Accumulated probability, each revisited cell counted once."""
    return float(sum(grid.scores[cell] for cell in dict.fromkeys(cells)))


def plan(pdm, waypoints=64, levels=10, seed=0, cells_per_side=30, kernel=None):
    """Full planner: hill-climb each warmed field, score candidates on the
    original field, return the best path of exactly ``waypoints`` cells.

    Planning is deterministic; ``seed`` is accepted for interface symmetry
    with the other pipeline stages but no randomness is consumed.
    """
    if waypoints < 1 or levels < 1:
        raise ValueError("waypoints and levels must be >= 1")
    kernel = kernel or Kernel3x3.box()
    grid = MissionGrid.from_pdm(pdm, cells_per_side)
    p_max = float(grid.scores.max())
    start = tuple(int(i) for i in np.unravel_index(int(np.argmax(grid.scores)), grid.shape))
    c_step = p_max / levels
    best = None
    for k in range(levels):
        warmed = global_warming(grid, k * c_step)
        cells = _walk(warmed, tuple(start), waypoints, kernel)
        score = _score_on(grid, cells)
        if best is None or score > best.score:
            best = WaypointPath(cells, score)
    return best


def _lateral_offsets(points, offset):
    """Offset a polyline sideways by a constant distance (per-vertex normal)."""
    d = np.gradient(points, axis=0)
    norm = np.hypot(d[:, 0], d[:, 1])
    norm[norm == 0] = 1.0
    normals = np.column_stack([-d[:, 1] / norm, d[:, 0] / norm])
    return points + offset * normals


def perturb_paths(
    path,
    rovers,
    spacing,
    seed,
    cell_size=5.0,
    origin=(0.0, 0.0),
    speed=1.0,
    jitter_std=0.3,
    detour_radius=2.0,
):
    """Turn one waypoint path into ``rovers`` timed metric polylines.

    Substitutes the full rover simulation: the route through the cell centers
    is replicated with lateral offsets of +-spacing per rover, smooth seeded
    jitter is added per vertex, and a semicircular avoidance detour of
    ``detour_radius`` is inserted at floor(len/10) random indices per rover.
    The buffered union of the results shows the small holes and ragged
    exterior the real collision-avoiding paths produce. Timestamps assume
    constant speed and start at zero.
    """
    if rovers < 1:
        raise ValueError("need at least one rover")
    x0, y0 = origin
    base = np.array(
        [
            (x0 + (c + 0.5) * cell_size, y0 + (r + 0.5) * cell_size)
            for r, c in path.cells
        ]
    )
    rng = np.random.Generator(np.random.Philox(seed))
    out = []
    for ridx in range(rovers):
        offset = (ridx - (rovers - 1) / 2.0) * spacing
        pts = _lateral_offsets(base, offset)
        if jitter_std > 0:
            pts = pts + rng.normal(0.0, jitter_std, pts.shape)
        n_detours = len(pts) // 10
        if n_detours and detour_radius > 0:
            at = rng.choice(np.arange(1, len(pts) - 1), size=n_detours, replace=False)
            pieces = []
            prev = 0
            for idx in np.sort(at):
                pieces.append(pts[prev:idx])
                # semicircle bulge around the vertex, oriented along the path
                d = pts[idx + 1] - pts[idx - 1]
                ln = np.hypot(*d)
                if ln == 0:
                    prev = idx
                    continue
                t_hat = d / ln
                n_hat = np.array([-t_hat[1], t_hat[0]])
                side = 1.0 if rng.random() < 0.5 else -1.0
                angles = np.linspace(0.0, np.pi, 7)
                arc = (
                    pts[idx]
                    - detour_radius * np.cos(angles)[:, None] * t_hat
                    + side * detour_radius * np.sin(angles)[:, None] * n_hat
                )
                pieces.append(arc)
                prev = idx + 1
            pieces.append(pts[prev:])
            pts = np.concatenate([p for p in pieces if len(p)])
        # drop exact consecutive duplicates left by the splicing
        keep = np.ones(len(pts), dtype=bool)
        keep[1:] = np.any(pts[1:] != pts[:-1], axis=1)
        pts = pts[keep]
        seglen = np.hypot(*np.diff(pts, axis=0).T)
        ts = np.concatenate([[0.0], np.cumsum(seglen)]) / speed
        out.append(Polyline(pts, ts))
    return out


def polylines_to_csv(paths, path):
    """Rows of (rover_id, t_s, x_m, y_m) for a list of timed polylines."""
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["rover_id", "t_s", "x_m", "y_m"])
        for rid, line in enumerate(paths):
            for t, (x, y) in zip(line.timestamps, line.vertices):
                w.writerow([rid, f"{t:.6f}", f"{x:.6f}", f"{y:.6f}"])
