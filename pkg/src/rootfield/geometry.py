"""Convex domains in the plane: disks and convex polygons.

Points are complex numbers throughout.  Domains are closed sets, so
boundary points count as inside and all membership comparisons are exact
(deterministic ties).  Epsilon-neighborhoods are never materialized:
membership in K_eps is a distance query against K.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateHull, InvalidEpsilon

_FLAT_TOL = 0.0  # hull collinearity uses exact cross-product comparisons


@dataclass(frozen=True)
class ConvexDomain:
    """Disk (center, radius) or convex polygon (CCW vertex list).

    Polygon input is normalized through a convex hull pass, so the stored
    vertex list is strictly convex and counterclockwise; collinear or
    interior input points are dropped.
    """

    kind: str
    center: complex = 0j
    radius: float = 0.0
    vertices: np.ndarray | None = None

    def __post_init__(self):
        if self.kind == "disk":
            if not (self.radius > 0):
                raise DegenerateHull("disk radius must be positive")
        elif self.kind == "polygon":
            v = np.asarray(self.vertices, dtype=np.complex128)
            hull = _hull_vertices(v)
            object.__setattr__(self, "vertices", hull)
            object.__setattr__(self, "center", complex(hull.mean()))
        else:
            raise ValueError(f"unknown domain kind {self.kind!r}")

    @staticmethod
    def disk(center, radius: float) -> "ConvexDomain":
        return ConvexDomain("disk", center=complex(center), radius=float(radius))

    @staticmethod
    def polygon(vertices) -> "ConvexDomain":
        pts = [complex(p[0], p[1]) if isinstance(p, (list, tuple, np.ndarray))
               else complex(p) for p in vertices]
        return ConvexDomain("polygon",
                            vertices=np.asarray(pts, dtype=np.complex128))

    def to_json(self) -> dict:
        if self.kind == "disk":
            return {"kind": "disk",
                    "center": [self.center.real, self.center.imag],
                    "radius": self.radius}
        return {"kind": "polygon",
                "vertices": [[v.real, v.imag] for v in self.vertices]}

    @staticmethod
    def from_json(obj: dict) -> "ConvexDomain":
        if not isinstance(obj, dict) or "kind" not in obj:
            raise ValueError("domain object needs a 'kind' field")
        if obj["kind"] == "disk":
            c = obj["center"]
            return ConvexDomain.disk(complex(c[0], c[1]), obj["radius"])
        if obj["kind"] == "polygon":
            return ConvexDomain.polygon(obj["vertices"])
        raise ValueError(f"unknown domain kind {obj['kind']!r}")


@dataclass(frozen=True)
class Neighborhood:
    """Closed epsilon-neighborhood of a convex domain (implicit)."""

    base: ConvexDomain
    epsilon: float

    def __post_init__(self):
        if not (self.epsilon > 0):
            raise InvalidEpsilon("epsilon must be strictly positive")

    def contains(self, z) -> bool:
        return bool(distance(self.base, z) <= self.epsilon)


# ---------------------------------------------------------------------------
# hull construction
# ---------------------------------------------------------------------------

def _cross(o: complex, a: complex, b: complex) -> float:
    return (a.real - o.real) * (b.imag - o.imag) - \
           (a.imag - o.imag) * (b.real - o.real)


def _hull_vertices(points: np.ndarray) -> np.ndarray:
    """Monotone-chain hull, CCW, collinear points dropped."""
    pts = sorted(set(map(complex, points)), key=lambda p: (p.real, p.imag))
    if len(pts) < 3:
        raise DegenerateHull("need at least 3 distinct points")
    lower: list[complex] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= _FLAT_TOL:
            lower.pop()
        lower.append(p)
    upper: list[complex] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= _FLAT_TOL:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        raise DegenerateHull("points are collinear")
    return np.asarray(hull, dtype=np.complex128)


def convex_hull(points) -> ConvexDomain:
    """Convex hull of a point multiset as a polygon domain.

    Raises DegenerateHull for fewer than 3 non-collinear points.
    """
    pts = np.atleast_1d(np.asarray(points, dtype=np.complex128))
    return ConvexDomain("polygon", vertices=pts)


# ---------------------------------------------------------------------------
# queries
# ---------------------------------------------------------------------------

def contains(domain: ConvexDomain, z) -> bool:
    """Closed-set membership."""
    zz = complex(z)
    if domain.kind == "disk":
        return abs(zz - domain.center) <= domain.radius
    v = domain.vertices
    w = np.roll(v, -1)
    cr = ((w - v).real * (zz - v).imag - (w - v).imag * (zz - v).real)
    return bool(np.all(cr >= 0))


def contains_many(domain: ConvexDomain, zs: np.ndarray) -> np.ndarray:
    zs = np.asarray(zs, dtype=np.complex128)
    if domain.kind == "disk":
        return np.abs(zs - domain.center) <= domain.radius
    v = domain.vertices
    w = np.roll(v, -1)
    e = (w - v)
    d = zs[..., None] - v
    cr = e.real * d.imag - e.imag * d.real
    return np.all(cr >= 0, axis=-1)


def distance(domain: ConvexDomain, z) -> float:
    """Euclidean distance to the closed domain; 0 inside."""
    return float(distance_many(domain, np.array([complex(z)]))[0])


def distance_many(domain: ConvexDomain, zs: np.ndarray) -> np.ndarray:
    zs = np.asarray(zs, dtype=np.complex128)
    if domain.kind == "disk":
        return np.maximum(np.abs(zs - domain.center) - domain.radius, 0.0)
    v = domain.vertices
    w = np.roll(v, -1)
    e = w - v
    el2 = (e.real ** 2 + e.imag ** 2)
    d = zs[..., None] - v
    t = (d.real * e.real + d.imag * e.imag) / el2
    t = np.clip(t, 0.0, 1.0)
    foot = v + t * e
    seg = np.abs(zs[..., None] - foot)
    dist = np.min(seg, axis=-1)
    dist[contains_many(domain, zs)] = 0.0
    return dist


def diameter(domain: ConvexDomain) -> float:
    """Largest pairwise distance; rotating calipers for polygons."""
    if domain.kind == "disk":
        return 2.0 * domain.radius
    v = domain.vertices
    k = len(v)
    best = 0.0
    j = 1
    for i in range(k):
        ni = (i + 1) % k
        # advance the antipodal pointer while the support triangle grows;
        # the hull is CCW so the cross products are nonnegative
        while _cross(v[i], v[ni], v[(j + 1) % k]) > _cross(v[i], v[ni], v[j]):
            j = (j + 1) % k
        best = max(best, abs(v[i] - v[j]), abs(v[ni] - v[j]))
    return best


def neighborhood_contains(domain: ConvexDomain, epsilon: float, z) -> bool:
    """Membership in the closed epsilon-neighborhood K_eps."""
    if not (epsilon > 0):
        raise InvalidEpsilon("epsilon must be strictly positive")
    return bool(distance(domain, z) <= epsilon)


def bounding_box(domain: ConvexDomain) -> tuple[float, float, float, float]:
    """(xmin, xmax, ymin, ymax) of the domain itself."""
    if domain.kind == "disk":
        c, r = domain.center, domain.radius
        return (c.real - r, c.real + r, c.imag - r, c.imag + r)
    v = domain.vertices
    return (float(v.real.min()), float(v.real.max()),
            float(v.imag.min()), float(v.imag.max()))


def boundary_point(domain: ConvexDomain, s: float) -> complex:
    """Point on the boundary at normalized arclength s in [0, 1)."""
    s = s % 1.0
    if domain.kind == "disk":
        return domain.center + domain.radius * np.exp(2j * np.pi * s)
    v = domain.vertices
    w = np.roll(v, -1)
    lens = np.abs(w - v)
    cum = np.concatenate([[0.0], np.cumsum(lens)])
    target = s * cum[-1]
    i = min(int(np.searchsorted(cum, target, side="right")) - 1, len(v) - 1)
    t = 0.0 if lens[i] == 0 else (target - cum[i]) / lens[i]
    return complex(v[i] + t * (w[i] - v[i]))
