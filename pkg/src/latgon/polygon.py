"""Convex lattice polygons with exact integer/rational predicates.

A polygon is stored as the canonical tuple of its vertices: strictly convex
(no three collinear), counterclockwise, starting at the lexicographically
smallest vertex.  Chord computations use exact rationals; nothing here touches
floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .lattice import AffineMap, Lattice2, Vec, contains

#: Integer line a*x + b*y = c, stored as (a, b, c) with (a, b) != (0, 0).
Line = tuple[int, int, int]


def _cross(o: Vec, a: Vec, b: Vec) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


@dataclass(frozen=True)
class Segment:
    """Closed segment between two distinct integer points."""

    a: Vec
    b: Vec

    def __post_init__(self) -> None:
        if self.a == self.b:
            raise ValueError(f"degenerate segment at {self.a}")

    def line(self) -> Line:
        """The supporting line as integer coefficients (a, b, c)."""
        dx = self.b[0] - self.a[0]
        dy = self.b[1] - self.a[1]
        return (-dy, dx, -dy * self.a[0] + dx * self.a[1])


@dataclass(frozen=True)
class LatticePolygon:
    """Strictly convex integer polygon in canonical vertex order."""

    vertices: tuple[Vec, ...]

    def __post_init__(self) -> None:
        vs = self.vertices
        if len(vs) < 3:
            raise ValueError("a polygon needs at least 3 vertices")
        if min(vs) != vs[0]:
            raise ValueError("vertices must start at the lexicographic minimum")
        n = len(vs)
        for i in range(n):
            if _cross(vs[i], vs[(i + 1) % n], vs[(i + 2) % n]) <= 0:
                raise ValueError(
                    "vertices must be strictly convex counterclockwise: "
                    f"{vs[i]}, {vs[(i + 1) % n]}, {vs[(i + 2) % n]}"
                )

    def __len__(self) -> int:
        return len(self.vertices)

    def edges(self) -> list[tuple[Vec, Vec]]:
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def bounding_box(self) -> tuple[int, int, int, int]:
        """(x_min, x_max, y_min, y_max)."""
        xs = [v[0] for v in self.vertices]
        ys = [v[1] for v in self.vertices]
        return (min(xs), max(xs), min(ys), max(ys))

    def translate(self, shift: Vec) -> "LatticePolygon":
        dx, dy = shift
        vs = tuple((x + dx, y + dy) for x, y in self.vertices)
        return LatticePolygon(vs)

    def __str__(self) -> str:
        return "Polygon[" + ", ".join(map(str, self.vertices)) + "]"


def from_points(points) -> LatticePolygon:
    """Convex hull with collinear points dropped, in canonical order.

    Raises ValueError unless the hull has at least 3 vertices and positive
    area (i.e. the input is not empty, a point, or collinear).
    """
    pts = sorted({(int(x), int(y)) for x, y in points})
    if len(pts) < 3:
        raise ValueError(f"need at least 3 distinct points, got {len(pts)}")
    lower: list[Vec] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Vec] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        raise ValueError("points are collinear")
    return LatticePolygon(tuple(hull))


@dataclass(frozen=True)
class CardinalProfile:
    """Extremes of a polygon and the marker points on its extreme lines.

    north/south/west/east are the extreme coordinate values.  For each
    extreme line the lo/hi pair gives the smallest and largest value of the
    *other* coordinate attained on that line; the pair collapses to a single
    point exactly when the corresponding duplication flag m_k is 0.
    Flag order follows the compass walk: m1 south, m2 east, m3 north, m4 west.
    """

    north: int
    south: int
    west: int
    east: int
    south_lo: int
    south_hi: int
    east_lo: int
    east_hi: int
    north_lo: int
    north_hi: int
    west_lo: int
    west_hi: int

    @property
    def m1(self) -> int:
        return 0 if self.south_lo == self.south_hi else 1

    @property
    def m2(self) -> int:
        return 0 if self.east_lo == self.east_hi else 1

    @property
    def m3(self) -> int:
        return 0 if self.north_lo == self.north_hi else 1

    @property
    def m4(self) -> int:
        return 0 if self.west_lo == self.west_hi else 1


def cardinal_profile(P: LatticePolygon) -> CardinalProfile:
    xs = [v[0] for v in P.vertices]
    ys = [v[1] for v in P.vertices]
    north, south = max(ys), min(ys)
    west, east = min(xs), max(xs)
    on_south = [x for x, y in P.vertices if y == south]
    on_north = [x for x, y in P.vertices if y == north]
    on_west = [y for x, y in P.vertices if x == west]
    on_east = [y for x, y in P.vertices if x == east]
    return CardinalProfile(
        north=north, south=south, west=west, east=east,
        south_lo=min(on_south), south_hi=max(on_south),
        east_lo=min(on_east), east_hi=max(on_east),
        north_lo=min(on_north), north_hi=max(on_north),
        west_lo=min(on_west), west_hi=max(on_west),
    )


def contains_point(P: LatticePolygon, point: Vec) -> str:
    """Exact location of an integer point: 'interior', 'boundary', 'outside'."""
    on_edge = False
    vs = P.vertices
    n = len(vs)
    for i in range(n):
        c = _cross(vs[i], vs[(i + 1) % n], point)
        if c < 0:
            return "outside"
        if c == 0:
            on_edge = True
    return "boundary" if on_edge else "interior"


def line_side_range(P: LatticePolygon, line: Line) -> tuple[int, int]:
    """Range (min, max) of a*x + b*y - c over the vertices."""
    a, b, c = line
    if a == 0 and b == 0:
        raise ValueError("degenerate line")
    vals = [a * x + b * y - c for x, y in P.vertices]
    return min(vals), max(vals)


def splits_by_line(P: LatticePolygon, line: Line) -> bool:
    """True iff the polygon has vertices strictly on both sides of the line."""
    lo, hi = line_side_range(P, line)
    return lo < 0 < hi


def meets_line(P: LatticePolygon, line: Line) -> bool:
    """True iff the polygon (including its boundary) meets the line."""
    lo, hi = line_side_range(P, line)
    return lo <= 0 <= hi


def _chord_params(P: LatticePolygon, a: Vec, d: Vec) -> tuple[Fraction, Fraction]:
    """Parameter range of the chord P ∩ {a + t*d} along the line through a.

    Only valid when the line actually splits the polygon (two crossings).
    """
    A, B = -d[1], d[0]
    C = A * a[0] + B * a[1]
    dd = d[0] * d[0] + d[1] * d[1]
    vs = P.vertices
    n = len(vs)
    sides = [A * x + B * y - C for x, y in vs]
    params: list[Fraction] = []
    for i in range(n):
        s0, s1 = sides[i], sides[(i + 1) % n]
        u, v = vs[i], vs[(i + 1) % n]
        if s0 == 0:
            t = Fraction((u[0] - a[0]) * d[0] + (u[1] - a[1]) * d[1], dd)
            params.append(t)
        elif (s0 > 0 > s1) or (s0 < 0 < s1):
            # Exact crossing point u + alpha*(v - u) with alpha = s0/(s0 - s1).
            alpha = Fraction(s0, s0 - s1)
            px = u[0] + alpha * (v[0] - u[0])
            py = u[1] + alpha * (v[1] - u[1])
            t = ((px - a[0]) * d[0] + (py - a[1]) * d[1]) / dd
            params.append(t)
    assert params, "chord requested for a non-crossing line"
    return min(params), max(params)


def splits_by_segment(P: LatticePolygon, seg: Segment) -> bool:
    """True iff the segment's line splits P and the chord lies inside the segment.

    The chord P ∩ line is computed exactly with rational endpoints; the test
    is containment of the closed chord in the closed segment.
    """
    if not splits_by_line(P, seg.line()):
        return False
    d = (seg.b[0] - seg.a[0], seg.b[1] - seg.a[1])
    lo, hi = _chord_params(P, seg.a, d)
    return lo >= 0 and hi <= 1


def splits_by_ray(P: LatticePolygon, origin: Vec, direction: Vec) -> bool:
    """Like splits_by_segment for the half-line origin + t*direction, t >= 0."""
    if direction == (0, 0):
        raise ValueError("zero direction")
    line = (-direction[1], direction[0],
            -direction[1] * origin[0] + direction[0] * origin[1])
    if not splits_by_line(P, line):
        return False
    lo, _hi = _chord_params(P, origin, direction)
    return lo >= 0


def is_free_of(P: LatticePolygon, L: Lattice2) -> bool:
    """True iff no point of L lies in the polygon, boundary included."""
    x_min, x_max, y_min, y_max = P.bounding_box()
    p, q, r = L.p, L.q, L.r
    i = -(-x_min // p)  # first i with i*p >= x_min
    while i * p <= x_max:
        x = i * p
        y0 = i * q
        y = y0 + -((y0 - y_min) // r) * r  # first y >= y_min in the class
        while y <= y_max:
            if contains_point(P, (x, y)) != "outside":
                return False
            y += r
        i += 1
    return True


def area2_and_pick(P: LatticePolygon) -> tuple[int, int, int]:
    """(twice the area, interior point count, boundary point count).

    The area comes from the shoelace sum and the boundary count from edge
    gcds; the interior count is an independent scan of the bounding box, so
    the three values can be cross-checked against each other.
    """
    vs = P.vertices
    n = len(vs)
    area2 = 0
    boundary = 0
    for i in range(n):
        x0, y0 = vs[i]
        x1, y1 = vs[(i + 1) % n]
        area2 += x0 * y1 - x1 * y0
        boundary += gcd(abs(x1 - x0), abs(y1 - y0))
    assert area2 > 0, "canonical polygons are counterclockwise"
    x_min, x_max, y_min, y_max = P.bounding_box()
    interior = 0
    for x in range(x_min + 1, x_max):
        for y in range(y_min + 1, y_max):
            if contains_point(P, (x, y)) == "interior":
                interior += 1
    return area2, interior, boundary


def is_minimal(P: LatticePolygon) -> bool:
    """True iff every edge vector is primitive (no interior boundary points)."""
    for (x0, y0), (x1, y1) in P.edges():
        if gcd(abs(x1 - x0), abs(y1 - y0)) != 1:
            return False
    return True


def transform(P: LatticePolygon, m: AffineMap) -> LatticePolygon:
    """Image polygon under an affine unimodular map, re-canonicalized."""
    return from_points(m.apply(v) for v in P.vertices)


def lattice_points_in(P: LatticePolygon, L: Lattice2) -> list[Vec]:
    """All points of L inside or on the polygon, in scan order."""
    x_min, x_max, y_min, y_max = P.bounding_box()
    p, q, r = L.p, L.q, L.r
    found = []
    i = -(-x_min // p)
    while i * p <= x_max:
        x = i * p
        y0 = i * q
        y = y0 + -((y0 - y_min) // r) * r
        while y <= y_max:
            if contains_point(P, (x, y)) != "outside":
                found.append((x, y))
            y += r
        i += 1
    return found
