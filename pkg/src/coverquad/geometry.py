"""Planar geometry kernel: polygons with holes, buffering, union, triangulation.

Coordinates are double-precision meters throughout. Polygon sets follow the
usual orientation convention (counter-clockwise outer rings, clockwise holes)
and are immutable once built. Boolean operations and buffering are delegated
to GEOS via shapely; the point-membership predicates live in
:mod:`coverquad.predicates` and are implemented from scratch because they are
one of the things this package benchmarks.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np
import shapely
from shapely.geometry import LineString, MultiPolygon, Point, Polygon


@dataclass(frozen=True)
class Point2:
    x: float
    y: float

    def __post_init__(self):
        if not (np.isfinite(self.x) and np.isfinite(self.y)):
            raise ValueError("point coordinates must be finite")

    def as_array(self):
        return np.array([self.x, self.y], dtype=float)


class Polyline:
    """Open path through 2D space, optionally timestamped per vertex."""

    def __init__(self, vertices, timestamps=None):
        v = np.asarray(vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2 or v.shape[0] < 2:
            raise ValueError("polyline needs at least 2 vertices of shape (n, 2)")
        if not np.all(np.isfinite(v)):
            raise ValueError("polyline coordinates must be finite")
        if np.any(np.all(v[1:] == v[:-1], axis=1)):
            raise ValueError("consecutive duplicate vertices")
        self.vertices = v
        self.vertices.setflags(write=False)
        if timestamps is not None:
            t = np.asarray(timestamps, dtype=float)
            if t.shape != (v.shape[0],):
                raise ValueError("one timestamp per vertex required")
            if np.any(np.diff(t) < 0) or t[0] != 0.0:
                raise ValueError("timestamps must start at 0 and be non-decreasing")
            self.timestamps = t
            self.timestamps.setflags(write=False)
        else:
            self.timestamps = None

    @property
    def t_max(self):
        if self.timestamps is None:
            raise ValueError("untimed path")
        return float(self.timestamps[-1])

    def __len__(self):
        return self.vertices.shape[0]


def _signed_area(vertices):
    x = vertices[:, 0]
    y = vertices[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


class Ring:
    """Closed vertex loop; the closing edge is implicit."""

    def __init__(self, vertices):
        v = np.asarray(vertices, dtype=float)
        if v.shape[0] >= 4 and np.all(v[0] == v[-1]):
            v = v[:-1]
        if v.ndim != 2 or v.shape[1] != 2 or v.shape[0] < 3:
            raise ValueError("ring needs at least 3 vertices")
        if _signed_area(v) == 0.0:
            raise ValueError("ring has zero signed area")
        self.vertices = v
        self.vertices.setflags(write=False)

    @property
    def signed_area(self):
        return _signed_area(self.vertices)

    def reversed(self):
        return Ring(self.vertices[::-1])


class PolygonSet:
    """A planar region: zero or more disjoint polygons, each with holes.

    Outer rings are stored counter-clockwise and holes clockwise; inputs with
    the opposite orientation are flipped on construction.
    """

    def __init__(self, polygons=()):
        normed = []
        for outer, holes in polygons:
            if outer.signed_area < 0:
                outer = outer.reversed()
            fixed_holes = []
            for h in holes:
                if h.signed_area > 0:
                    h = h.reversed()
                fixed_holes.append(h)
            normed.append((outer, tuple(fixed_holes)))
        self.polygons = tuple(normed)
        self._edges = None
        self._bounds = None

    def __len__(self):
        return len(self.polygons)

    @property
    def is_empty(self):
        return len(self.polygons) == 0

    def rings(self):
        for outer, holes in self.polygons:
            yield outer
            yield from holes

    def n_coords(self):
        return sum(r.vertices.shape[0] for r in self.rings())

    def edges(self):
        """All boundary edges as arrays (starts (E,2), ends (E,2)).

        Rings are immutable, so the arrays are built once and reused; the
        point-in-polygon predicates call this in their hot path.
        """
        if self._edges is None:
            starts, ends = [], []
            for ring in self.rings():
                v = ring.vertices
                starts.append(v)
                ends.append(np.roll(v, -1, axis=0))
            if not starts:
                z = np.zeros((0, 2))
                self._edges = (z, z)
            else:
                s, e = np.concatenate(starts), np.concatenate(ends)
                s.setflags(write=False)
                e.setflags(write=False)
                self._edges = (s, e)
        return self._edges

    def bounds(self):
        if self.is_empty:
            raise ValueError("empty polygon set has no bounds")
        if self._bounds is None:
            pts = np.concatenate([r.vertices for r in self.rings()])
            self._bounds = (
                float(pts[:, 0].min()),
                float(pts[:, 1].min()),
                float(pts[:, 0].max()),
                float(pts[:, 1].max()),
            )
        return self._bounds

    def perimeter(self):
        total = 0.0
        for ring in self.rings():
            v = ring.vertices
            total += float(np.sum(np.hypot(*(np.roll(v, -1, axis=0) - v).T)))
        return total

    # --- shapely bridge ---

    def to_shapely(self):
        polys = [
            Polygon(outer.vertices, [h.vertices for h in holes])
            for outer, holes in self.polygons
        ]
        return MultiPolygon(polys) if len(polys) != 1 else polys[0]

    @classmethod
    def from_shapely(cls, geom):
        polys = []
        if geom.is_empty:
            return cls()
        if isinstance(geom, Polygon):
            parts = [geom]
        elif isinstance(geom, MultiPolygon):
            parts = list(geom.geoms)
        else:
            parts = [g for g in geom.geoms if isinstance(g, Polygon)]
        for p in parts:
            if p.is_empty or p.area == 0.0:
                continue
            outer = Ring(np.asarray(p.exterior.coords))
            holes = [Ring(np.asarray(i.coords)) for i in p.interiors]
            polys.append((outer, holes))
        return cls(polys)

    @classmethod
    def from_box(cls, xmin, ymin, xmax, ymax):
        if xmax <= xmin or ymax <= ymin:
            raise ValueError("empty box")
        ring = Ring([(xmin, ymin), (xmax, ymin), (xmax, ymax), (xmin, ymax)])
        return cls([(ring, [])])

    # --- JSON interchange (planner <-> integration backends <-> CLI) ---

    def to_json_dict(self):
        return {
            "polygons": [
                {
                    "outer": outer.vertices.tolist(),
                    "holes": [h.vertices.tolist() for h in holes],
                }
                for outer, holes in self.polygons
            ]
        }

    def to_json(self):
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json_dict(cls, doc):
        polys = []
        for entry in doc["polygons"]:
            outer = Ring(np.asarray(entry["outer"], dtype=float))
            holes = [Ring(np.asarray(h, dtype=float)) for h in entry.get("holes", [])]
            polys.append((outer, holes))
        return cls(polys)

    @classmethod
    def from_json(cls, text):
        return cls.from_json_dict(json.loads(text))


@dataclass(frozen=True)
class Triangle:
    """Counter-clockwise triangle."""

    a: tuple
    b: tuple
    c: tuple

    def __post_init__(self):
        if self.signed_area <= 0.0:
            raise ValueError("triangle must have positive signed area")

    @property
    def signed_area(self):
        (ax, ay), (bx, by), (cx, cy) = self.a, self.b, self.c
        return 0.5 * ((bx - ax) * (cy - ay) - (cx - ax) * (by - ay))

    @property
    def area(self):
        return self.signed_area

    def as_array(self):
        return np.array([self.a, self.b, self.c], dtype=float)


# --- operations ---


def area(region):
    """Shoelace area of a polygon set: outer rings minus holes."""
    total = 0.0
    for outer, holes in region.polygons:
        total += outer.signed_area
        for h in holes:
            total += h.signed_area  # holes are clockwise, hence negative
    return total


def buffer_polyline(path, radius, arc_segments=16):
    """Minkowski sum of a path with a disc of the given radius.

    Caps and joins are approximated with ``arc_segments`` chords per
    quarter-circle. Self-overlapping paths may produce holes.
    """
    if radius <= 0:
        raise ValueError("buffer radius must be positive")
    if arc_segments < 4:
        raise ValueError("arc_segments must be at least 4")
    verts = path.vertices
    if np.all(np.all(verts == verts[0], axis=1)):
        raise ValueError("degenerate polyline")
    geom = LineString(verts).buffer(radius, quad_segs=int(arc_segments))
    return PolygonSet.from_shapely(geom)


def union(sets):
    """Boolean union of polygon sets; empty input yields the empty set."""
    geoms = [s.to_shapely() for s in sets if not s.is_empty]
    if not geoms:
        return PolygonSet()
    merged = shapely.union_all(geoms)
    return PolygonSet.from_shapely(merged)


def clip_to_box(region, bounds):
    """Intersection of a polygon set with an axis-aligned rectangle.

    Buffered paths can overhang the rectangle they were planned in; clipping
    restricts the coverage polygon to it so that grid estimators whose cells
    tile the rectangle measure the same set as the polygon integrators.
    """
    xmin, ymin, xmax, ymax = bounds
    if xmax <= xmin or ymax <= ymin:
        raise ValueError("empty clip rectangle")
    if region.is_empty:
        return PolygonSet()
    clipped = region.to_shapely().intersection(shapely.box(xmin, ymin, xmax, ymax))
    return PolygonSet.from_shapely(clipped)


def _truncate_at_time(path, t):
    """Vertices of the path prefix up to time t, cut vertex interpolated."""
    if path.timestamps is None:
        raise ValueError("untimed path")
    ts = path.timestamps
    v = path.vertices
    if t >= ts[-1]:
        return v
    if t <= ts[0]:
        return v[:1]
    k = int(np.searchsorted(ts, t, side="right"))
    prefix = v[:k]
    t0, t1 = ts[k - 1], ts[k]
    if t1 > t0:
        frac = (t - t0) / (t1 - t0)
        cut = v[k - 1] + frac * (v[k] - v[k - 1])
        if not np.all(cut == prefix[-1]):
            prefix = np.vstack([prefix, cut])
    return prefix


def union_until(paths, t, radius, arc_segments=16):
    """Union of buffered path prefixes truncated at time t."""
    if t < 0:
        raise ValueError("time must be non-negative")
    pieces = []
    for path in paths:
        verts = _truncate_at_time(path, t)
        if verts.shape[0] < 2:
            disc = Point(verts[0]).buffer(radius, quad_segs=int(arc_segments))
            pieces.append(PolygonSet.from_shapely(disc))
        else:
            pieces.append(buffer_polyline(Polyline(verts), radius, arc_segments))
    return union(pieces)


def triangulate(region):
    """Constrained Delaunay triangulation of a polygon set.

    The triangles partition the region: areas sum to the region area and no
    triangle crosses a hole.
    """
    if region.is_empty:
        return []
    geom = region.to_shapely()
    if not geom.is_valid:
        raise ValueError("invalid polygon")
    tris = []
    collection = shapely.constrained_delaunay_triangles(geom)
    for t in collection.geoms:
        coords = np.asarray(t.exterior.coords)[:3]
        if _signed_area(coords) < 0:
            coords = coords[::-1]
        if _signed_area(coords) == 0.0:
            continue
        tris.append(
            Triangle(tuple(coords[0]), tuple(coords[1]), tuple(coords[2]))
        )
    return tris
