"""Grid extraction of the dominance set A_delta and its components.

A_delta = {z : |q'/q| <= |r'/r| + delta/|r|} contains every critical point
of p = q*r, because q'/q = -r'/r exactly at roots of p'.  The set is
sampled at cell centers on a regular grid, labeled by 4-connected flood
fill, and each component is certified by an argument-principle count of
p' roots along a traced boundary together with a Rouché margin.

Boundaries are not traced along the raw component staircase: critical
points hug the zero level of the indicator, so the contour walks the
"moat" instead — the component dilated by one or more rings of cells that
belong to no component.  On the moat the indicator is strictly positive,
which is what makes the recorded Rouché margins positive and keeps the
roots of p' clear of the samples.  Rings grow (and nearby components are
absorbed) until every root of p' is either deep inside or well outside
the traced region; the Rouché count equality holds for any such union of
cells, so absorption never invalidates a certificate.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from . import contours as _contours
from .errors import (GrowBBox, NonIntegerWinding, RootOnContour, SingularCell,
                     SingularPoint)
from .geometry import ConvexDomain, contains_many, distance_many
from .poly import (Polynomial, RootSplit, SINGULAR_GUARD, critical_points,
                   derivative, phase_logmag)

EQUALITY_TOL = 1e-14   # |g| at or below this counts as inside (closed set)
_RING_LIMIT = 6        # moat growth rings before a component count gives up
_REFINE_FACTOR = 4.0   # contour samples per cell edge
_CHUNK = 1 << 18       # grid cells per evaluation block

_FOUR = np.array([[0, 1, 0], [1, 1, 1], [0, 1, 0]], dtype=int)
_EIGHT = np.ones((3, 3), dtype=int)


@dataclass(frozen=True)
class RegionMask:
    """Signed indicator and component labels on a regular cell grid.

    indicator[i, j] is g at the center of cell (i, j); labels hold a dense
    component id for cells with g <= EQUALITY_TOL and -1 elsewhere.
    """

    bbox: tuple[float, float, float, float]   # xmin, xmax, ymin, ymax
    resolution: float                         # cells per unit length
    delta: float
    indicator: np.ndarray
    labels: np.ndarray
    n_components: int

    @property
    def cell_size(self) -> float:
        return 1.0 / self.resolution

    @property
    def shape(self) -> tuple[int, int]:
        return self.indicator.shape

    def cell_centers(self) -> np.ndarray:
        ny, nx = self.indicator.shape
        h = self.cell_size
        xs = self.bbox[0] + (np.arange(nx) + 0.5) * h
        ys = self.bbox[2] + (np.arange(ny) + 0.5) * h
        return xs[None, :] + 1j * ys[:, None]

    def cell_of(self, z: complex):
        """(row, col) of the cell containing z, or None outside the grid."""
        h = self.cell_size
        j = int(np.floor((z.real - self.bbox[0]) / h))
        i = int(np.floor((z.imag - self.bbox[2]) / h))
        ny, nx = self.indicator.shape
        if 0 <= i < ny and 0 <= j < nx:
            return i, j
        return None


@dataclass(frozen=True)
class ComponentReport:
    component: int
    touches_K: bool
    escapes_Keps: bool
    r_roots_inside: int          # r roots whose cell carries this label
    crit_points_inside: int      # argument-principle count over the moat
    rouche_margin: float         # min |q'r| - |qr'| on the moat samples
    qprime_roots_enclosed: int = 0   # q' roots with cells in the moat
    r_roots_enclosed: int = 0        # r roots with cells in the moat
    absorbed: tuple[int, ...] = ()   # other component ids merged into the moat
    count_error: str | None = None


@dataclass(frozen=True)
class BridgeResult:
    bridged: bool
    component: int | None = None
    path: np.ndarray | None = None   # cell centers from a K cell outward


# ---------------------------------------------------------------------------
# the indicator
# ---------------------------------------------------------------------------

def field_lower_bound(n: int, d: float, diam: float) -> float:
    """Lower bound n*d/(d+diam)^2 for |sum 1/(z-a_k)| with a_k in K."""
    if n < 1:
        raise ValueError("need at least one root")
    if not diam > 0:
        raise ValueError("diameter must be positive")
    if d < 0:
        raise ValueError("distance cannot be negative")
    return n * d / (d + diam) ** 2


def _abs_field_sum(roots: np.ndarray, zs: np.ndarray) -> np.ndarray:
    """|sum 1/(z - root)|; inf where z collides with a root exactly."""
    if roots.size == 0:
        return np.zeros(zs.shape)
    flat = zs.ravel()
    out = np.empty(flat.shape)
    step = max(1, (1 << 22) // roots.size)
    with np.errstate(divide="ignore", invalid="ignore"):
        for lo in range(0, len(flat), step):
            inv = 1.0 / (flat[lo:lo + step, None] - roots)
            out[lo:lo + step] = np.abs(inv.sum(axis=-1))
    return out.reshape(zs.shape)


def _min_root_distance(roots: np.ndarray, zs: np.ndarray) -> np.ndarray:
    if roots.size == 0:
        return np.full(zs.shape, np.inf)
    flat = zs.ravel()
    out = np.empty(flat.shape)
    step = max(1, (1 << 22) // roots.size)
    for lo in range(0, len(flat), step):
        out[lo:lo + step] = np.abs(flat[lo:lo + step, None] - roots
                                   ).min(axis=-1)
    return out.reshape(zs.shape)


def _indicator_terms(split: RootSplit, zs: np.ndarray):
    """(A, B, C) with g = A - B - delta*C, plus a singular-proximity mask."""
    q_roots = split.inside
    r_roots = split.outside
    a = _abs_field_sum(q_roots, zs)
    b = _abs_field_sum(r_roots, zs)
    if r_roots.size:
        _, logmag = phase_logmag(split.outside_poly().coeffs, zs.ravel())
        with np.errstate(over="ignore"):
            c = (2.0 ** (-logmag)).reshape(zs.shape)
    else:
        c = np.ones(zs.shape)  # r is the constant 1
    near = np.minimum(_min_root_distance(q_roots, zs),
                      _min_root_distance(r_roots, zs)) < SINGULAR_GUARD
    return a, b, c, near


def adelta_indicator(split: RootSplit, delta: float, z) -> float:
    """g(z) = |q'/q| - |r'/r| - delta/|r|;  z is in A_delta iff g(z) <= 0."""
    if not delta > 0:
        raise ValueError("delta must be positive")
    zz = np.array([complex(z)])
    a, b, c, near = _indicator_terms(split, zz)
    if near[0]:
        raise SingularPoint(complex(z))
    return float(a[0] - b[0] - delta * c[0])


# ---------------------------------------------------------------------------
# mask construction
# ---------------------------------------------------------------------------

def default_bbox(split: RootSplit, K: ConvexDomain, epsilon: float):
    """Hull of all roots inflated by 2*(epsilon + diam K) on every side."""
    from .geometry import bounding_box, diameter
    roots = np.concatenate([split.inside, split.outside])
    kx0, kx1, ky0, ky1 = bounding_box(K)
    xs = np.concatenate([roots.real, [kx0, kx1]])
    ys = np.concatenate([roots.imag, [ky0, ky1]])
    pad = 2.0 * (epsilon + diameter(K))
    return (float(xs.min() - pad), float(xs.max() + pad),
            float(ys.min() - pad), float(ys.max() + pad))


def build_mask(split: RootSplit, delta: float, bbox, resolution: float,
               ) -> RegionMask:
    """Evaluate the indicator on the grid and label its components."""
    return build_masks(split, [delta], bbox, resolution)[0]


def build_masks(split: RootSplit, deltas, bbox, resolution: float,
                ) -> list[RegionMask]:
    """One mask per delta, sharing the field grids (g = A - B - delta*C)."""
    deltas = [float(d) for d in deltas]
    if any(d <= 0 for d in deltas):
        raise ValueError("delta must be positive")
    xmin, xmax, ymin, ymax = (float(v) for v in bbox)
    if not (xmax > xmin and ymax > ymin):
        raise ValueError("empty bbox")
    h = 1.0 / resolution
    nx = max(4, int(np.ceil((xmax - xmin) * resolution)))
    ny = max(4, int(np.ceil((ymax - ymin) * resolution)))
    xs = xmin + (np.arange(nx) + 0.5) * h
    ys = ymin + (np.arange(ny) + 0.5) * h

    a = np.empty((ny, nx))
    b = np.empty((ny, nx))
    c = np.empty((ny, nx))
    near = np.zeros((ny, nx), dtype=bool)
    row_block = max(1, _CHUNK // nx)
    for lo in range(0, ny, row_block):
        hi = min(ny, lo + row_block)
        zs = xs[None, :] + 1j * ys[lo:hi, None]
        a[lo:hi], b[lo:hi], c[lo:hi], near[lo:hi] = \
            _indicator_terms(split, zs)

    masks = []
    for delta in deltas:
        with np.errstate(invalid="ignore"):
            g = a - b - delta * c
        if np.any(near) or np.any(np.isnan(g)):
            g = _patch_singular_cells(split, delta, g,
                                      near | np.isnan(g), xs, ys, h)
        _far_field_check(g, (xmin, xmax, ymin, ymax))
        inside = g <= EQUALITY_TOL
        labels, count = ndimage.label(inside, structure=_FOUR)
        masks.append(RegionMask((xmin, xmax, ymin, ymax), float(resolution),
                                delta, g, labels.astype(np.int32) - 1,
                                int(count)))
    return masks


def _patch_singular_cells(split, delta, g, bad, xs, ys, h):
    """Re-evaluate cells whose center sits on a root.

    Each such cell is subdivided once; the cell takes the value of the
    nearest non-singular quarter point.  If all four quarter points are
    singular too the configuration is degenerate beyond repair.
    """
    g = g.copy()
    offsets = np.array([-0.25 - 0.25j, 0.25 - 0.25j,
                        -0.25 + 0.25j, 0.25 + 0.25j]) * h
    for i, j in np.argwhere(bad):
        center = xs[j] + 1j * ys[i]
        pts = center + offsets
        aa, bb, cc, nn = _indicator_terms(split, pts)
        vals = aa - bb - delta * cc
        good = ~nn & ~np.isnan(vals)
        if not np.any(good):
            raise SingularCell(center)
        order = np.argsort(np.abs(pts - center), kind="stable")
        pick = order[good[order]][0]
        g[i, j] = vals[pick]
    return g


def _far_field_check(g: np.ndarray, bbox):
    border = np.concatenate([g[0, :], g[-1, :], g[1:-1, 0], g[1:-1, -1]])
    if np.all(border > 0):
        return
    xmin, xmax, ymin, ymax = bbox
    cx, cy = 0.5 * (xmin + xmax), 0.5 * (ymin + ymax)
    w, v = 0.75 * (xmax - xmin), 0.75 * (ymax - ymin)
    suggested = (cx - w, cx + w, cy - v, cy + v)
    raise GrowBBox(bbox, suggested)


def default_delta(split: RootSplit, bbox, resolution: float = 16.0) -> float:
    """1e-3 scaled by the median |r| over a coarse grid on the bbox."""
    if split.m == 0:
        return 1e-3
    xmin, xmax, ymin, ymax = bbox
    nx = max(8, int((xmax - xmin) * resolution))
    ny = max(8, int((ymax - ymin) * resolution))
    xs = np.linspace(xmin, xmax, nx)
    ys = np.linspace(ymin, ymax, ny)
    zs = (xs[None, :] + 1j * ys[:, None]).ravel()
    _, logmag = phase_logmag(split.outside_poly().coeffs, zs)
    med = float(np.median(logmag[np.isfinite(logmag)]))
    return 1e-3 * 2.0 ** med


# ---------------------------------------------------------------------------
# boundary tracing
# ---------------------------------------------------------------------------

def _trace_loops(cells: np.ndarray) -> list[np.ndarray]:
    """Directed-edge boundary loops of a boolean cell set.

    Returns vertex loops in grid units (vertex (vj, vi) as vj + 1j*vi);
    outer loops come out counterclockwise, holes clockwise, so winding
    sums over all loops count geometric membership.  Ties at checkerboard
    corners prefer the left turn, keeping loops simple.
    """
    ny, nx = cells.shape
    pad = np.zeros((ny + 2, nx + 2), dtype=bool)
    pad[1:-1, 1:-1] = cells
    west = cells & ~pad[1:-1, :-2]
    east = cells & ~pad[1:-1, 2:]
    south = cells & ~pad[:-2, 1:-1]
    north = cells & ~pad[2:, 1:-1]

    edges: dict[tuple[int, int], list[tuple[int, int]]] = {}

    def add(v0, v1):
        edges.setdefault(v0, []).append(v1)

    for i, j in np.argwhere(west):
        add((j, i + 1), (j, i))
    for i, j in np.argwhere(east):
        add((j + 1, i), (j + 1, i + 1))
    for i, j in np.argwhere(south):
        add((j, i), (j + 1, i))
    for i, j in np.argwhere(north):
        add((j + 1, i + 1), (j, i + 1))
    for v in edges.values():
        v.sort()

    loops = []
    starts = sorted(edges.keys())
    for start in starts:
        while edges.get(start):
            v0 = start
            v1 = edges[v0].pop()
            loop = [v0, v1]
            while v1 != start:
                options = edges.get(v1, [])
                if not options:
                    raise AssertionError("open boundary chain")
                if len(options) == 1:
                    v2 = options.pop()
                else:
                    # checkerboard corner: prefer the left turn
                    d = (v1[0] - v0[0], v1[1] - v0[1])
                    left = (v1[0] - d[1], v1[1] + d[0])
                    straight = (v1[0] + d[0], v1[1] + d[1])
                    right = (v1[0] + d[1], v1[1] - d[0])
                    for cand in (left, straight, right):
                        if cand in options:
                            options.remove(cand)
                            v2 = cand
                            break
                    else:
                        v2 = options.pop()
                loop.append(v2)
                v0, v1 = v1, v2
            loops.append(np.array([complex(a, b) for a, b in loop]))
    return loops


def _compress_collinear(loop: np.ndarray) -> np.ndarray:
    """Drop interior vertices of straight runs; keep the loop closed."""
    if len(loop) < 4:
        return loop
    open_loop = loop[:-1]
    prev = np.roll(open_loop, 1)
    nxt = np.roll(open_loop, -1)
    keep = (nxt - open_loop) * np.conj(open_loop - prev)
    corner = np.abs(keep.imag) > 1e-12
    if not np.any(corner):
        return loop
    kept = open_loop[corner]
    return np.concatenate([kept, kept[:1]])


def loop_area(loop: np.ndarray) -> float:
    """Signed shoelace area of a closed vertex loop (grid units)."""
    v = loop[:-1]
    w = loop[1:]
    return float(0.5 * np.sum(v.real * w.imag - v.imag * w.real))


def _cells_of_points(mask: RegionMask, pts: np.ndarray) -> np.ndarray:
    """(k, 2) rows of (i, j) cell indices; -1 rows for points off-grid."""
    h = mask.cell_size
    jj = np.floor((pts.real - mask.bbox[0]) / h).astype(int)
    ii = np.floor((pts.imag - mask.bbox[2]) / h).astype(int)
    ny, nx = mask.shape
    bad = (ii < 0) | (ii >= ny) | (jj < 0) | (jj >= nx)
    ii[bad] = -1
    jj[bad] = -1
    return np.stack([ii, jj], axis=1)


def _component_windows(mask: RegionMask) -> list:
    """Bounding slices per component id (one labeled-array pass)."""
    return ndimage.find_objects(mask.labels + 1,
                                max_label=mask.n_components)


def _moat(mask: RegionMask, component: int, protect: np.ndarray,
          windows=None):
    """Dilated component footprint whose boundary clears the protect points.

    Grows one ring at a time into unlabeled cells; when a protect point
    sits on the current boundary and the blocking cells belong to another
    component, that component is absorbed whole.  Dilation runs on a
    window around the involved components — ring growth is bounded by
    _RING_LIMIT, so the window contains every cell the moat can reach.
    Returns (cells, window, absorbed ids, error message or None).
    """
    labels = mask.labels
    ny, nx = mask.shape
    if windows is None:
        windows = _component_windows(mask)
    margin = _RING_LIMIT + 2

    def window_around(ids):
        boxes = [windows[c] for c in ids]
        return (slice(max(0, min(b[0].start for b in boxes) - margin),
                      min(ny, max(b[0].stop for b in boxes) + margin)),
                slice(max(0, min(b[1].start for b in boxes) - margin),
                      min(nx, max(b[1].stop for b in boxes) + margin)))

    win = window_around([component])
    current = labels == component
    absorbed: set[int] = set()
    pcells = _cells_of_points(mask, protect)
    for _ in range(_RING_LIMIT):
        view = current[win]
        grown = ndimage.binary_dilation(view, structure=_EIGHT)
        current[win] = view | (grown & (labels[win] < 0))
        # a protect point is safe when its cell and the 8 surrounding
        # cells are uniformly inside or uniformly outside the moat
        trouble = []
        for i, j in pcells:
            if i < 0:
                continue
            i0, i1 = max(0, i - 1), min(ny, i + 2)
            j0, j1 = max(0, j - 1), min(nx, j + 2)
            block = current[i0:i1, j0:j1]
            if block.any() != block.all():
                trouble.append((i, j))
        if not trouble:
            return current, win, tuple(sorted(absorbed)), None
        # absorb whole neighbouring components that block clean growth
        for i, j in trouble:
            i0, i1 = max(0, i - 1), min(ny, i + 2)
            j0, j1 = max(0, j - 1), min(nx, j + 2)
            for cid in np.unique(labels[i0:i1, j0:j1]):
                if cid >= 0 and cid != component and cid not in absorbed:
                    absorbed.add(int(cid))
                    current = current | (labels == cid)
        win = window_around([component, *absorbed])
    err = "moat growth exhausted with p' roots on the boundary"
    return current, win, tuple(sorted(absorbed)), err


def component_boundaries(mask: RegionMask, component: int,
                         protect: np.ndarray | None = None, windows=None):
    """Moat tracing: (contours, moat cells, absorbed ids, error or None).

    Outer loops are counterclockwise and holes clockwise; summing
    argument-principle counts over all of them yields the number of roots
    inside the traced region.
    """
    if protect is None:
        protect = np.zeros(0, dtype=np.complex128)
    cells, win, absorbed, err = _moat(mask, component, protect, windows)
    loops = _trace_loops(cells[win])
    h = mask.cell_size
    shift = win[1].start + 1j * win[0].start
    origin = mask.bbox[0] + 1j * mask.bbox[2]
    cs = []
    for loop in loops:
        verts = origin + (_compress_collinear(loop) + shift) * h
        cs.append(_contours.grid_boundary(
            verts[:-1], refinement=_REFINE_FACTOR * mask.resolution))
    return cs, cells, absorbed, err


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------

def classify_components(mask: RegionMask, split: RootSplit, K: ConvexDomain,
                        epsilon: float, strict: bool = False,
                        ) -> list[ComponentReport]:
    """Per-component geometry flags, root membership, and Rouché census.

    With strict=True the first contour-counting failure propagates as an
    exception; the default records the failure on the report instead and
    leaves crit_points_inside at 0.
    """
    if not epsilon > 0:
        from .errors import InvalidEpsilon
        raise InvalidEpsilon("epsilon must be strictly positive")
    p = split.product()
    dp = derivative(p)
    crit = critical_points(p) if p.degree >= 2 else np.zeros(0, complex)
    dpoly = Polynomial(dp.coeffs, roots=crit) if dp.degree >= 1 else dp
    q = split.inside_poly()
    r = split.outside_poly()
    qp = derivative(q)
    rp = derivative(r)

    in_k, out_keps = _grid_flags(mask, K, epsilon)
    r_cells = _cells_of_points(mask, split.outside)
    qp_roots = critical_points(q) if q.degree >= 2 else np.zeros(0, complex)
    qp_cells = _cells_of_points(mask, qp_roots)
    windows = _component_windows(mask)

    reports = []
    for cid in range(mask.n_components):
        win = windows[cid]
        sel = mask.labels[win] == cid
        touches = bool(np.any(in_k[win] & sel))
        escapes = bool(np.any(out_keps[win] & sel))
        r_inside = int(sum(1 for i, j in r_cells
                           if i >= 0 and mask.labels[i, j] == cid))
        loops, moat, absorbed, err = component_boundaries(mask, cid,
                                                          protect=crit,
                                                          windows=windows)
        count = 0
        if err is None:
            try:
                count = sum(_contours.count_roots_in(dpoly, c)
                            for c in loops)
            except (RootOnContour, NonIntegerWinding) as exc:
                if strict:
                    raise
                err = f"{type(exc).__name__}: {exc}"
                count = 0
        elif strict:
            raise RootOnContour(0.0, mask.cell_size)
        margin = _rouche_margin(q, qp, r, rp, loops)
        r_enc = int(sum(1 for i, j in r_cells if i >= 0 and moat[i, j]))
        qp_enc = int(sum(1 for i, j in qp_cells if i >= 0 and moat[i, j]))
        reports.append(ComponentReport(
            component=cid, touches_K=touches, escapes_Keps=escapes,
            r_roots_inside=r_inside, crit_points_inside=count,
            rouche_margin=margin, qprime_roots_enclosed=qp_enc,
            r_roots_enclosed=r_enc, absorbed=absorbed, count_error=err))
    return reports


def _rouche_margin(q, qp, r, rp, loops) -> float:
    """min over all loop samples of |q'r| - |qr'| via log2 magnitudes."""
    if not loops:
        return 0.0
    pts = np.concatenate([c.samples for c in loops])
    _, m_qp = phase_logmag(qp.coeffs, pts)
    _, m_r = phase_logmag(r.coeffs, pts)
    _, m_q = phase_logmag(q.coeffs, pts)
    if rp.is_zero:
        m_rp = np.full(pts.shape, -np.inf)
    else:
        _, m_rp = phase_logmag(rp.coeffs, pts)
    return _contours._min_signed_difference(m_qp + m_r, m_q + m_rp)


# ---------------------------------------------------------------------------
# bridging detection
# ---------------------------------------------------------------------------

def _grid_flags(mask: RegionMask, K: ConvexDomain, epsilon: float):
    """(in_K, beyond_K_eps) boolean grids over cell centers, chunked."""
    centers = mask.cell_centers().ravel()
    in_k = np.empty(centers.shape, dtype=bool)
    out_keps = np.empty(centers.shape, dtype=bool)
    for lo in range(0, len(centers), _CHUNK):
        blk = centers[lo:lo + _CHUNK]
        in_k[lo:lo + _CHUNK] = contains_many(K, blk)
        out_keps[lo:lo + _CHUNK] = distance_many(K, blk) > epsilon
    return in_k.reshape(mask.shape), out_keps.reshape(mask.shape)


def bridging_check(split: RootSplit, delta: float, K: ConvexDomain,
                   epsilon: float, mask: RegionMask) -> BridgeResult:
    """Find a component crossing from K to outside K_eps, with a witness.

    The witness is a 4-connected cell-center path inside the component
    from a cell in K to a cell beyond K_eps — the discrete version of the
    path whose endpoints the theorem's field estimates contradict.
    """
    centers = mask.cell_centers()
    in_k, out_keps = _grid_flags(mask, K, epsilon)
    for cid in range(mask.n_components):
        sel = mask.labels == cid
        if not (np.any(sel & in_k) and np.any(sel & out_keps)):
            continue
        path = _cell_path(sel, sel & in_k, sel & out_keps)
        ii, jj = path[:, 0], path[:, 1]
        pts = centers[ii, jj]
        return BridgeResult(True, cid, pts)
    return BridgeResult(False)


def _cell_path(region: np.ndarray, sources: np.ndarray,
               targets: np.ndarray) -> np.ndarray:
    """BFS path through True cells of region from sources to targets."""
    ny, nx = region.shape
    prev = np.full((ny, nx, 2), -1, dtype=int)
    seen = np.zeros((ny, nx), dtype=bool)
    queue = deque()
    for i, j in np.argwhere(sources):
        queue.append((int(i), int(j)))
        seen[i, j] = True
    while queue:
        i, j = queue.popleft()
        if targets[i, j]:
            path = [(i, j)]
            while prev[path[-1]][0] >= 0:
                path.append(tuple(prev[path[-1]]))
            return np.array(path[::-1])
        for di, dj in ((1, 0), (-1, 0), (0, 1), (0, -1)):
            a, b = i + di, j + dj
            if 0 <= a < ny and 0 <= b < nx and region[a, b] \
                    and not seen[a, b]:
                seen[a, b] = True
                prev[a, b] = (i, j)
                queue.append((a, b))
    raise AssertionError("bridge component lost its endpoints")


# ---------------------------------------------------------------------------
# export
# ---------------------------------------------------------------------------

def mask_to_csv(mask: RegionMask, path):
    """Write cell rows: center x, center y, indicator g, component label."""
    centers = mask.cell_centers()
    rows = np.column_stack([centers.real.ravel(), centers.imag.ravel(),
                            mask.indicator.ravel(),
                            mask.labels.ravel().astype(float)])
    header = "x,y,g,label"
    np.savetxt(path, rows, delimiter=",", header=header, comments="",
               fmt=("%.9g", "%.9g", "%.12g", "%d"))
