"""Slopes: convex chains read in a signed coordinate basis.

A slope is a chain of integer points whose consecutive differences, expressed
in a basis of two signed axes, have positive first and negative second
coordinate and turn counterclockwise.  The four maximal slopes of a convex
polygon are the arcs between its extreme points; the split machinery relates
those arcs to frames (an origin plus a signed basis) whose rays cut the
polygon, and the witness searches certify the edge-count bounds that make the
classification theorems quantitative.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .lattice import SIGNED_AXES, Lattice2, Vec, contains, span_of_points, step_profile
from .polygon import LatticePolygon, cardinal_profile, contains_point, splits_by_ray

#: All eight signed bases (ordered pairs of perpendicular signed axes).
ALL_SIGNED_BASES: tuple[tuple[Vec, Vec], ...] = tuple(
    (f1, f2)
    for f1 in SIGNED_AXES
    for f2 in SIGNED_AXES
    if f1[0] * f2[0] + f1[1] * f2[1] == 0
)


class SlopeError(ValueError):
    """An invalid slope; `violated` names the broken rule."""

    def __init__(self, message: str, violated: str):
        super().__init__(message)
        self.violated = violated


class WitnessNotFound(Exception):
    """No witness exists in the search region: a refutation or a bug."""


@dataclass(frozen=True)
class SignedBasis:
    """An ordered pair of perpendicular signed coordinate axes."""

    f1: Vec
    f2: Vec

    def __post_init__(self) -> None:
        if self.f1 not in SIGNED_AXES or self.f2 not in SIGNED_AXES:
            raise ValueError(f"not signed axes: {self.f1}, {self.f2}")
        if self.f1[0] * self.f2[0] + self.f1[1] * self.f2[1] != 0:
            raise ValueError(f"axes are not perpendicular: {self.f1}, {self.f2}")

    def coords(self, point: Vec) -> Vec:
        """Coordinates of an integer point in this basis."""
        x, y = point
        return (x * self.f1[0] + y * self.f1[1], x * self.f2[0] + y * self.f2[1])

    def point(self, coords: Vec) -> Vec:
        """Inverse of coords()."""
        u, w = coords
        return (u * self.f1[0] + w * self.f2[0], u * self.f1[1] + w * self.f2[1])

    def swapped(self) -> "SignedBasis":
        return SignedBasis(self.f2, self.f1)


@dataclass(frozen=True)
class Slope:
    """A convex chain of integer points, monotone in a signed basis.

    In basis coordinates, each difference of consecutive vertices has first
    coordinate > 0 and second coordinate < 0, and consecutive differences
    have positive determinant (a strict counterclockwise turn).  A single
    point is a valid slope with no edges.
    """

    basis: SignedBasis
    vertices: tuple[Vec, ...]

    def __post_init__(self) -> None:
        vs = self.vertices
        if not vs:
            raise SlopeError("a slope needs at least one vertex", "empty")
        steps = []
        for i in range(1, len(vs)):
            dx = vs[i][0] - vs[i - 1][0]
            dy = vs[i][1] - vs[i - 1][1]
            a = self.basis.coords((dx, dy))
            if a[0] <= 0:
                raise SlopeError(
                    f"edge {i} has non-increasing first coordinate: {a}",
                    "first-coord-not-increasing",
                )
            if a[1] >= 0:
                raise SlopeError(
                    f"edge {i} has non-decreasing second coordinate: {a}",
                    "second-coord-not-decreasing",
                )
            steps.append(a)
        for i in range(1, len(steps)):
            a, b = steps[i - 1], steps[i]
            if a[0] * b[1] - a[1] * b[0] <= 0:
                raise SlopeError(
                    f"edges {i} and {i + 1} do not turn counterclockwise: {a}, {b}",
                    "not-convex",
                )

    @property
    def edge_count(self) -> int:
        return len(self.vertices) - 1

    def steps(self) -> list[Vec]:
        """Edge vectors in basis coordinates."""
        out = []
        for i in range(1, len(self.vertices)):
            dx = self.vertices[i][0] - self.vertices[i - 1][0]
            dy = self.vertices[i][1] - self.vertices[i - 1][1]
            out.append(self.basis.coords((dx, dy)))
        return out

    def total_step(self) -> Vec:
        """Sum of the edge vectors in basis coordinates."""
        first = self.basis.coords(self.vertices[0])
        last = self.basis.coords(self.vertices[-1])
        return (last[0] - first[0], last[1] - first[1])


def validate_slope(basis: SignedBasis, vertices) -> Slope:
    """Construct a slope, raising SlopeError with the violated rule if invalid."""
    return Slope(basis, tuple((int(x), int(y)) for x, y in vertices))


@dataclass(frozen=True)
class Frame:
    """An origin together with a signed basis."""

    origin: Vec
    basis: SignedBasis

    def coords(self, point: Vec) -> Vec:
        return self.basis.coords((point[0] - self.origin[0], point[1] - self.origin[1]))


@dataclass(frozen=True)
class MaximalSlopes:
    """The four maximal slopes of a polygon plus its cardinal profile.

    q1..q4 sit between consecutive extreme markers, numbered by the quadrant
    of their basis: q1 south-to-east in basis (e2, -e1), q2 east-to-north in
    (-e1, -e2), q3 north-to-west in (-e2, e1), q4 west-to-south in (e1, e2).
    """

    q1: Slope
    q2: Slope
    q3: Slope
    q4: Slope
    profile: "object"

    def slopes(self) -> tuple[Slope, Slope, Slope, Slope]:
        return (self.q1, self.q2, self.q3, self.q4)

    def edge_counts(self) -> tuple[int, int, int, int]:
        return tuple(s.edge_count for s in self.slopes())

    def marker_flags(self) -> tuple[int, int, int, int]:
        p = self.profile
        return (p.m1, p.m2, p.m3, p.m4)


#: Slope bases by quadrant index 1..4 (index 0 unused).
QUADRANT_BASES = (
    None,
    SignedBasis((0, 1), (-1, 0)),
    SignedBasis((-1, 0), (0, -1)),
    SignedBasis((0, -1), (1, 0)),
    SignedBasis((1, 0), (0, 1)),
)


def maximal_slopes(P: LatticePolygon) -> MaximalSlopes:
    """Decompose the boundary into four maximal slopes and four marker flags.

    The total edge count of the polygon equals the sum of the four slopes'
    edge counts plus the four duplication flags (asserted here).
    """
    prof = cardinal_profile(P)
    vs = P.vertices
    n = len(vs)
    index = {v: i for i, v in enumerate(vs)}

    def chain(a: Vec, b: Vec) -> list[Vec]:
        i, j = index[a], index[b]
        out = [vs[i]]
        while i != j:
            i = (i + 1) % n
            out.append(vs[i])
        return out

    w_lo = (prof.west, prof.west_lo)
    s_lo = (prof.south_lo, prof.south)
    s_hi = (prof.south_hi, prof.south)
    e_lo = (prof.east, prof.east_lo)
    e_hi = (prof.east, prof.east_hi)
    n_hi = (prof.north_hi, prof.north)
    n_lo = (prof.north_lo, prof.north)
    w_hi = (prof.west, prof.west_hi)

    q4 = Slope(QUADRANT_BASES[4], tuple(chain(w_lo, s_lo)))
    q1 = Slope(QUADRANT_BASES[1], tuple(chain(s_hi, e_lo)))
    q2 = Slope(QUADRANT_BASES[2], tuple(chain(e_hi, n_hi)))
    q3 = Slope(QUADRANT_BASES[3], tuple(chain(n_lo, w_hi)))
    ms = MaximalSlopes(q1, q2, q3, q4, prof)
    total = sum(ms.edge_counts()) + sum(ms.marker_flags())
    assert total == n, f"boundary decomposition miscounts: {total} != {n}"
    return ms


def _oriented_frame_coords(f: Frame, q: Slope) -> list[Vec]:
    """Frame coordinates of the slope's vertices, ordered so u increases.

    The slope's basis must be the frame's basis or its swap; with the swap
    the traversal reverses.
    """
    if q.basis == f.basis:
        ordered = q.vertices
    elif q.basis == f.basis.swapped():
        ordered = tuple(reversed(q.vertices))
    else:
        raise ValueError(
            f"slope basis {q.basis} matches neither the frame basis nor its swap"
        )
    return [f.coords(v) for v in ordered]


def frame_splits(f: Frame, q: Slope) -> bool:
    """Does the slope cross both frame rays with a point between them?

    True iff, in frame coordinates, the chain runs from (u<0, w>0) to
    (u>0, w<0) and its unique crossing of the ray w=0 happens at u > 0.
    """
    uw = _oriented_frame_coords(f, q)
    if len(uw) < 2:
        return False
    v1, v2 = uw[0]
    w1, w2 = uw[-1]
    if not (v1 < 0 < v2 and w2 < 0 < w1):
        return False
    return _crossing_u_positive(uw)


def _crossing_u_positive(uw: list[Vec]) -> bool:
    # w decreases strictly along the chain; find where it reaches 0.
    for i in range(1, len(uw)):
        u0, w0 = uw[i - 1]
        u1, w1 = uw[i]
        if w1 == 0:
            return u1 > 0
        if w1 < 0:
            # Crossing inside this edge at u0 + (u1-u0)*w0/(w0-w1); the
            # denominator is positive, so positivity is an integer test.
            return u1 * w0 - u0 * w1 > 0
    raise AssertionError("no crossing despite sign change")  # pragma: no cover


def forms_small_angle(f: Frame, q: Slope) -> bool:
    """Does the slope cross the ray w=0 at 45 degrees or shallower?

    Defined only when frame_splits(f, q) holds.  When the crossing lands on a
    vertex, either incident edge may realize the small angle; exactly 45
    degrees counts.
    """
    if not frame_splits(f, q):
        raise ValueError("slope does not split the frame")
    uw = _oriented_frame_coords(f, q)
    for i in range(1, len(uw)):
        u0, w0 = uw[i - 1]
        u1, w1 = uw[i]
        if w1 == 0:
            du, dw = u1 - u0, w1 - w0
            if du + dw >= 0:
                return True
            u2, w2 = uw[i + 1]
            return (u2 - u1) + (w2 - w1) >= 0
        if w1 < 0:
            du, dw = u1 - u0, w1 - w0
            return du + dw >= 0
    raise AssertionError("no crossing despite frame_splits")  # pragma: no cover


def check_slp_witness(q: Slope, vertex_lattice: Lattice2 | None = None,
                      shear: tuple[int, int] | None = None) -> int:
    """Smallest s in [0, N] with 2N <= |b1| + s and |b2| >= the s-th bound.

    b is the slope's total step and N its edge count.  Without refinements
    the bound is s(s+1)/2.  With `shear` = (a, m), 1 <= a <= m, the slope's
    vertices must lie in span{f1 - a*f2, m*f2} and the bound tightens to
    a*s + m*s*(s-1)/2.  With `vertex_lattice` given (vertices checked against
    it), a small f1-step above 1 forces the witness s = 0.
    Raises WitnessNotFound when no s works — a refutation or a bug.
    """
    N = q.edge_count
    b1, b2 = q.total_step()
    assert b1 >= N and -b2 >= N
    if vertex_lattice is not None:
        for v in q.vertices:
            if not contains(vertex_lattice, v):
                raise ValueError(f"vertex {v} is not in {vertex_lattice}")
        small = step_profile(vertex_lattice, q.basis.f1, q.basis.f2).small
        if small > 1:
            if 2 * N <= b1:
                return 0
            raise WitnessNotFound(
                f"2N <= |b1| fails ({2 * N} > {b1}) despite small step {small}"
            )
    if shear is not None:
        a, m = shear
        if not 1 <= a <= m:
            raise ValueError(f"shear parameters need 1 <= a <= m, got {shear}")
        for v in q.vertices:
            alpha, beta = q.basis.coords(v)
            if (beta + a * alpha) % m:
                raise ValueError(
                    f"vertex {v} is not in the shear lattice with (a, m) = {shear}"
                )
    for s in range(N + 1):
        if 2 * N > b1 + s:
            continue
        bound = a * s + m * s * (s - 1) // 2 if shear else s * (s + 1) // 2
        if -b2 >= bound:
            return s
    raise WitnessNotFound(f"no witness in [0, {N}] for slope with b=({b1},{b2})")


def check_th36_witness(f: Frame, q: Slope) -> tuple[int, int]:
    """Smallest (s, t) certifying the split edge-count bound for this frame.

    Requires frame_splits(f, q).  Writing (v1, v2) and (w1, w2) for the frame
    coordinates of the first and last vertex and N for the edge count, the
    witness satisfies, for 0 <= s <= t <= v2 + w1:

      * v2 - s >= 0,
      * -v1 < t*s - (s^2 - s)/2 + (v2 - s)*(t + 1),
      * 2N <= v2 + w1 - t + s, strengthened by an extra
        -ceil(-w2/2) + 1 term when the crossing forms a small angle.

    The derived bounds 2N <= v2 + w1 (small angle: minus ceil(-w2/2) - 1),
    and 2N <= v2 + w1 - 1 when the vertices relative to the frame origin
    span a proper subgroup of Z^2, are asserted on the way out.
    """
    if not frame_splits(f, q):
        raise ValueError("slope does not split the frame")
    uw = _oriented_frame_coords(f, q)
    v1, v2 = uw[0]
    w1, w2 = uw[-1]
    N = q.edge_count
    sa = forms_small_angle(f, q)
    ceil_term = (-w2 + 1) // 2
    limit = v2 + w1
    found = None
    for s in range(0, min(v2, limit) + 1):
        for t in range(s, limit + 1):
            if -v1 >= t * s - (s * s - s) // 2 + (v2 - s) * (t + 1):
                continue
            bound = limit - t + s
            ok = 2 * N <= bound - ceil_term + 1 if sa else 2 * N <= bound
            if ok:
                found = (s, t)
                break
        if found:
            break
    if found is None:
        raise WitnessNotFound(
            f"no witness with 0 <= s <= t <= {limit} for N={N}, "
            f"v=({v1},{v2}), w=({w1},{w2})"
        )
    assert 2 * N <= limit
    if sa:
        assert 2 * N <= limit - ceil_term + 1
    rel = [(x - f.origin[0], y - f.origin[1]) for x, y in q.vertices]
    if span_of_points(rel) != 1:
        assert 2 * N <= limit - 1
    return found


#: Which maximal slope a frame splits, by the frame's basis.
_FRAME_QUADRANT = {
    ((-1, 0), (0, 1)): 1, ((0, 1), (-1, 0)): 1,
    ((0, -1), (-1, 0)): 2, ((-1, 0), (0, -1)): 2,
    ((1, 0), (0, -1)): 3, ((0, -1), (1, 0)): 3,
    ((0, 1), (1, 0)): 4, ((1, 0), (0, 1)): 4,
}


def frame_splits_polygon_slope(f: Frame, P: LatticePolygon) -> int:
    """Index k of the maximal slope of P split by the frame.

    Requires the frame origin to lie outside P and both frame rays to split
    it; k is determined by the frame's basis alone, and the corresponding
    maximal slope is verified to split (failure would be a bug or a
    counterexample, so it raises AssertionError).
    """
    if contains_point(P, f.origin) != "outside":
        raise ValueError(f"frame origin {f.origin} must lie outside the polygon")
    for ray in (f.basis.f1, f.basis.f2):
        if not splits_by_ray(P, f.origin, ray):
            raise ValueError(f"frame ray {ray} from {f.origin} does not split")
    k = _FRAME_QUADRANT[(f.basis.f1, f.basis.f2)]
    qk = maximal_slopes(P).slopes()[k - 1]
    assert frame_splits(f, qk), (
        f"maximal slope {k} fails to split the frame: bug or counterexample"
    )
    return k


# ---------------------------------------------------------------------------
# Random instance generators (used by the fuzz suites and the CLI).

def random_slope(rng, basis: SignedBasis | None = None, max_edges: int = 5,
                 coord_range: int = 12) -> Slope:
    """A random valid slope with up to max_edges edges."""
    if basis is None:
        basis = SignedBasis(*ALL_SIGNED_BASES[rng.randrange(len(ALL_SIGNED_BASES))])
    n_edges = rng.randint(0, max_edges)
    by_ratio: dict[tuple[int, int], Vec] = {}
    guard = 0
    while len(by_ratio) < n_edges and guard < 200:
        guard += 1
        a1 = rng.randint(1, 9)
        a2 = rng.randint(-9, -1)
        g = gcd(a1, -a2)
        by_ratio.setdefault((a1 // g, a2 // g), (a1, a2))
    # Increasing ratio a2/a1 is exactly a counterclockwise turn here.
    steps = sorted(by_ratio.values(), key=_ratio_key)
    u = rng.randint(-coord_range, coord_range)
    w = rng.randint(-coord_range, coord_range)
    coords = [(u, w)]
    for a1, a2 in steps:
        u, w = u + a1, w + a2
        coords.append((u, w))
    return Slope(basis, tuple(basis.point(c) for c in coords))


def _ratio_key(a: Vec):
    from fractions import Fraction

    return Fraction(a[1], a[0])


def random_shear_slope(rng, max_edges: int = 4) -> tuple[Slope, tuple[int, int]]:
    """A random slope whose vertices lie in span{f1 - a*f2, m*f2}; returns (a, m)."""
    basis = SignedBasis(*ALL_SIGNED_BASES[rng.randrange(len(ALL_SIGNED_BASES))])
    m = rng.randint(1, 3)
    a = rng.randint(1, m)
    n_edges = rng.randint(0, max_edges)
    by_ratio: dict = {}
    guard = 0
    while len(by_ratio) < n_edges and guard < 300:
        guard += 1
        dx = rng.randint(1, 4)
        dy = rng.randint(-4, 0)
        step = (dx, -a * dx + m * dy)
        if step[1] >= 0:
            continue
        g = gcd(step[0], -step[1])
        by_ratio.setdefault((step[0] // g, step[1] // g), step)
    steps = sorted(by_ratio.values(), key=_ratio_key)
    x0 = rng.randint(-3, 3)
    y0 = rng.randint(-3, 3)
    u, w = x0, -a * x0 + m * y0
    coords = [(u, w)]
    for s1, s2 in steps:
        u, w = u + s1, w + s2
        coords.append((u, w))
    return Slope(basis, tuple(basis.point(c) for c in coords)), (a, m)


def run_fuzz_suite(seed: int, slope_count: int, split_count: int) -> dict:
    """Randomized law checking for slopes, witnesses, and frame splits.

    Uses random.Random(seed) (the stdlib Mersenne Twister) so failures replay
    byte-for-byte across runs.  Returns {"seed", "counts", "failures"}; each
    failure artifact records the offending instance as plain JSON-ready data.
    """
    import random

    rng = random.Random(seed)
    counts = {"slopes": 0, "witnesses": 0, "shear_witnesses": 0,
              "lattice_witnesses": 0, "splits": 0, "split_witnesses": 0,
              "small_angles": 0}
    failures: list[dict] = []

    def slope_data(q: Slope) -> dict:
        return {"basis": {"f1": list(q.basis.f1), "f2": list(q.basis.f2)},
                "vertices": [list(v) for v in q.vertices]}

    for _ in range(slope_count):
        q = random_slope(rng)
        counts["slopes"] += 1
        N = q.edge_count
        b1, b2 = q.total_step()
        try:
            s = check_slp_witness(q)
            assert 0 <= s <= N
            assert 2 * N <= b1 + s
            assert -b2 >= s * (s + 1) // 2
            for smaller in range(s):
                assert not (2 * N <= b1 + smaller
                            and -b2 >= smaller * (smaller + 1) // 2)
            counts["witnesses"] += 1
        except (WitnessNotFound, AssertionError) as exc:
            failures.append({"kind": "edge-count-witness",
                             "slope": slope_data(q), "detail": str(exc)})
        # Doubling all vertices puts them in 2Z^2, whose small step forces s=0.
        doubled = Slope(q.basis, tuple((2 * x, 2 * y) for x, y in q.vertices))
        try:
            from .lattice import scaled_lattice

            assert check_slp_witness(doubled,
                                     vertex_lattice=scaled_lattice(2)) == 0
            counts["lattice_witnesses"] += 1
        except (WitnessNotFound, AssertionError) as exc:
            failures.append({"kind": "coarse-lattice-witness",
                             "slope": slope_data(doubled), "detail": str(exc)})
        qs, (a, m) = random_shear_slope(rng)
        try:
            s = check_slp_witness(qs, shear=(a, m))
            b1s, b2s = qs.total_step()
            Ns = qs.edge_count
            assert 2 * Ns <= b1s + s
            assert -b2s >= a * s + m * s * (s - 1) // 2
            counts["shear_witnesses"] += 1
        except (WitnessNotFound, AssertionError) as exc:
            failures.append({"kind": "shear-witness", "slope": slope_data(qs),
                             "shear": [a, m], "detail": str(exc)})

    for _ in range(split_count):
        f, q = random_split_config(rng)
        counts["splits"] += 1
        frame_data = {"origin": list(f.origin),
                      "basis": {"f1": list(f.basis.f1), "f2": list(f.basis.f2)}}
        try:
            uw = _oriented_frame_coords(f, q)
            v1, v2 = uw[0]
            w1, w2 = uw[-1]
            N = q.edge_count
            s, t = check_th36_witness(f, q)
            assert 0 <= s <= t <= v2 + w1
            assert v2 - s >= 0
            assert -v1 < t * s - (s * s - s) // 2 + (v2 - s) * (t + 1)
            assert 2 * N <= v2 + w1 - t + s
            counts["split_witnesses"] += 1
            if forms_small_angle(f, q):
                counts["small_angles"] += 1
                assert 2 * N <= v2 + w1 - t + s - ((-w2 + 1) // 2) + 1
        except (WitnessNotFound, AssertionError) as exc:
            failures.append({"kind": "split-witness", "frame": frame_data,
                             "slope": slope_data(q), "detail": str(exc)})

    return {"seed": seed, "counts": counts, "failures": failures}


def random_split_config(rng, coord_range: int = 10) -> tuple[Frame, Slope]:
    """A random (frame, slope) pair with frame_splits guaranteed."""
    for _ in range(500):
        basis = SignedBasis(*ALL_SIGNED_BASES[rng.randrange(len(ALL_SIGNED_BASES))])
        origin = (rng.randint(-5, 5), rng.randint(-5, 5))
        f = Frame(origin, basis)
        slope_basis = basis if rng.random() < 0.5 else basis.swapped()
        q = random_slope(rng, basis=slope_basis, max_edges=5,
                         coord_range=coord_range)
        if q.edge_count == 0:
            continue
        # Re-anchor so the chain starts at u < 0 and ends at w < 0, then
        # rejection-test the remaining split conditions.
        uw = _oriented_frame_coords(f, q)
        du = -uw[0][0] - rng.randint(1, coord_range)
        dw = -uw[-1][1] - rng.randint(1, coord_range)
        shift = basis.point((du, dw))
        q = Slope(slope_basis, tuple(
            (x + shift[0], y + shift[1]) for x, y in q.vertices))
        if frame_splits(f, q):
            return f, q
    # Deterministic fallback: a single-edge slope through the positive quadrant.
    basis = SignedBasis((1, 0), (0, 1))
    return Frame((0, 0), basis), Slope(basis, ((-1, 2), (3, -1)))
