"""Coulomb potentials of point charges along curves.

Complex field and modulus-sum potentials, dense-sampled curve minima with a
re-sampling certificate, the truncated torus kernel, and the constructive
search for a certified low-potential point on the torus and on a curve.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .errors import (CertificateError, ProjectionDegenerate, SearchExhausted,
                     SingularCurve, SingularPoint)

SINGULAR_GUARD = 1e-12
MIN_SAMPLES = 10_000      # curve sampling floor
SAMPLES_PER_CHARGE = 100
CERT_FACTOR = 4           # certificate re-samples at this density multiple
CERT_REL_TOL = 1e-2
GRID_PER_CHARGE = 100     # torus candidates per charge
DIST_FLOOR = 10.0         # torus point keeps distance >= 1/(10m)
KERNEL_CAP = 20.0         # f_m plateau height 20m inside |x| < 1/(20m)
_CHUNK = 1 << 20          # point-charge pairs per evaluation block
_LIFT_ATTEMPTS = 5


# ---------------------------------------------------------------------------
# types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ChargeSet:
    """Finite multiset of complex point charges (duplicates allowed)."""

    charges: np.ndarray

    def __post_init__(self):
        z = np.atleast_1d(np.asarray(self.charges, dtype=np.complex128))
        if z.ndim != 1 or z.size < 1:
            raise ValueError("need at least one charge")
        object.__setattr__(self, "charges", z)

    @property
    def m(self) -> int:
        return self.charges.size

    def to_json(self) -> dict:
        return {"charges": [[float(z.real), float(z.imag)]
                            for z in self.charges]}

    @classmethod
    def from_json(cls, obj: dict) -> "ChargeSet":
        return cls(np.array([complex(x, y) for x, y in obj["charges"]]))


@dataclass(frozen=True)
class Curve:
    """Polyline gamma with arclength-proportional parameter t in [0, 1].

    Consecutive duplicate vertices are dropped; the polyline must retain
    at least two distinct vertices.
    """

    vertices: np.ndarray

    def __post_init__(self):
        v = np.atleast_1d(np.asarray(self.vertices, dtype=np.complex128))
        if v.size < 2:
            raise ValueError("curve needs at least two vertices")
        keep = np.concatenate([[True], np.abs(np.diff(v)) > 0.0])
        v = v[keep]
        if v.size < 2:
            raise ValueError("curve has zero length")
        object.__setattr__(self, "vertices", v)

    @property
    def _cum(self) -> np.ndarray:
        return np.concatenate([[0.0], np.cumsum(np.abs(np.diff(self.vertices)))])

    @property
    def length(self) -> float:
        return float(self._cum[-1])

    def point(self, t):
        """gamma(t) for scalar or array t, clipped to [0, 1]."""
        tt = np.asarray(t, dtype=float)
        cum = self._cum
        s = np.clip(tt, 0.0, 1.0) * cum[-1]
        k = np.clip(np.searchsorted(cum, s, side="right") - 1,
                    0, self.vertices.size - 2)
        seg = cum[k + 1] - cum[k]
        frac = (s - cum[k]) / seg
        out = self.vertices[k] + frac * (self.vertices[k + 1] - self.vertices[k])
        return complex(out) if tt.ndim == 0 else out

    def clearance(self, charges) -> float:
        """Smallest distance from any charge to the polyline."""
        z = np.atleast_1d(np.asarray(charges, dtype=np.complex128))
        a = self.vertices[:-1][:, None]
        d = np.diff(self.vertices)[:, None]
        frac = np.clip(((z[None, :] - a) * np.conj(d)).real / np.abs(d) ** 2,
                       0.0, 1.0)
        return float(np.abs(z[None, :] - (a + frac * d)).min())

    def is_conjecture_normalized(self, tol: float = 1e-12) -> bool:
        """True when gamma(0) = 0 and gamma(1) = 1."""
        return (abs(self.vertices[0]) <= tol
                and abs(self.vertices[-1] - 1.0) <= tol)

    def to_json(self) -> dict:
        return {"curve": [[float(v.real), float(v.imag)]
                          for v in self.vertices]}

    @classmethod
    def from_json(cls, obj: dict) -> "Curve":
        return cls(np.array([complex(x, y) for x, y in obj["curve"]]))


@dataclass(frozen=True)
class TorusConfig:
    """Charge abscissas wrapped onto the unit torus [0, 1)."""

    points: np.ndarray

    def __post_init__(self):
        x = np.atleast_1d(np.asarray(self.points, dtype=float)) % 1.0
        if x.size < 1:
            raise ValueError("need at least one torus point")
        object.__setattr__(self, "points", x)

    @property
    def m(self) -> int:
        return self.points.size


def torus_distance(a, b):
    """Toroidal distance min(w, 1 - w) with w = (a - b) mod 1."""
    w = np.mod(np.asarray(a, dtype=float) - np.asarray(b, dtype=float), 1.0)
    return np.minimum(w, 1.0 - w)


# ---------------------------------------------------------------------------
# pointwise potentials
# ---------------------------------------------------------------------------

def complex_field(C: ChargeSet, z):
    """Sum of 1/(z - z_l) over the charges; scalar or array z."""
    zz = np.asarray(z, dtype=np.complex128)
    diff = zz[..., None] - C.charges
    if np.abs(diff).min() < SINGULAR_GUARD:
        raise SingularPoint("evaluation point coincides with a charge")
    out = np.sum(1.0 / diff, axis=-1)
    return complex(out) if zz.ndim == 0 else out


def modulus_potential(C: ChargeSet, z):
    """Sum of 1/|z - z_l|; dominates |complex_field| pointwise."""
    zz = np.asarray(z, dtype=np.complex128)
    d = np.abs(zz[..., None] - C.charges)
    if d.min() < SINGULAR_GUARD:
        raise SingularPoint("evaluation point coincides with a charge")
    out = np.sum(1.0 / d, axis=-1)
    return float(out) if zz.ndim == 0 else out


def _along(C: ChargeSet, curve: Curve, ts: np.ndarray, mode: str) -> np.ndarray:
    # blockwise evaluation keeps the point-by-charge matrix bounded
    out = np.empty(ts.size)
    block = max(1, _CHUNK // C.m)
    for k in range(0, ts.size, block):
        pts = np.atleast_1d(curve.point(ts[k:k + block]))
        diff = pts[:, None] - C.charges[None, :]
        if mode == "modulus":
            out[k:k + block] = np.sum(1.0 / np.abs(diff), axis=1)
        else:
            out[k:k + block] = np.abs(np.sum(1.0 / diff, axis=1))
    return out


# ---------------------------------------------------------------------------
# curve minima
# ---------------------------------------------------------------------------

def _sampled_min(C: ChargeSet, curve: Curve, mode: str, n: int):
    ts = np.linspace(0.0, 1.0, int(n))
    vals = _along(C, curve, ts, mode)
    i = int(np.argmin(vals))              # first occurrence -> smaller t
    t_best, v_best = float(ts[i]), float(vals[i])
    if 0 < i < ts.size - 1 and vals[i] < vals[i - 1] and vals[i] < vals[i + 1]:
        res = optimize.minimize_scalar(
            lambda t: float(_along(C, curve, np.atleast_1d(t), mode)[0]),
            bracket=(ts[i - 1], ts[i], ts[i + 1]), method="golden",
            options={"xtol": 1e-12})
        if res.fun < v_best:
            t_best, v_best = float(res.x), float(res.fun)
    return t_best, v_best


def curve_min(C: ChargeSet, curve: Curve, mode: str = "modulus",
              samples: int | None = None):
    """Minimum of the potential along the curve with a 4x re-check.

    Dense arclength-uniform samples seed a golden-section refinement of
    the best bracket; the run is repeated at CERT_FACTOR times the density
    and the two minima must agree to CERT_REL_TOL, else CertificateError.
    Returns (t*, value); exact ties go to the smaller t.
    """
    if mode not in ("field", "modulus"):
        raise ValueError(f"unknown mode {mode!r}")
    if curve.clearance(C.charges) < SINGULAR_GUARD:
        raise SingularCurve("a charge lies on the curve")
    if samples is None:
        samples = max(MIN_SAMPLES, SAMPLES_PER_CHARGE * C.m)
    samples = max(int(samples), 2)
    t1, v1 = _sampled_min(C, curve, mode, samples)
    t4, v4 = _sampled_min(C, curve, mode, CERT_FACTOR * samples)
    if abs(v1 - v4) > CERT_REL_TOL * max(abs(v1), abs(v4), 1e-300):
        raise CertificateError(
            "curve minimum failed the re-sampling certificate",
            {"samples": samples, "value": v1, "recheck": v4})
    return (t4, v4) if v4 < v1 else (t1, v1)


@dataclass(frozen=True)
class SharpExample:
    charges: ChargeSet
    t: float
    value: float
    ratio: float    # value / (m ln m)


def sharp_example(m: int) -> SharpExample:
    """Charges j/m + i/m over the segment [0, 1]: growth like m log m.

    The achieved minimum is checked against the harmonic-sum floor
    m * H_m / (2 sqrt 2), which follows from comparing distances at t = 0.
    """
    if m < 2:
        raise ValueError("m must be at least 2")
    j = np.arange(1, m + 1, dtype=float)
    C = ChargeSet(j / m + 1j / m)
    gamma = Curve(np.array([0.0 + 0.0j, 1.0 + 0.0j]))
    t, value = curve_min(C, gamma, mode="modulus")
    floor = float(m * np.sum(1.0 / j) / (2.0 * np.sqrt(2.0)))
    if value < floor:
        raise CertificateError(
            "sharp-example minimum fell below its harmonic floor",
            {"m": m, "value": value, "floor": floor})
    return SharpExample(C, t, value, value / (m * np.log(m)))


# ---------------------------------------------------------------------------
# torus certificate
# ---------------------------------------------------------------------------

def truncated_kernel(m: int, x):
    """f_m(x): 1/|x| away from zero, capped at 20m for |x| < 1/(20m)."""
    if m < 1:
        raise ValueError("m must be at least 1")
    d = torus_distance(x, 0.0)
    cap = KERNEL_CAP * m
    small = d < 1.0 / cap
    out = np.where(small, cap, 1.0 / np.where(small, 1.0, d))
    return float(out) if np.ndim(x) == 0 else out


def torus_low_potential_point(T: TorusConfig, exclude=()):
    """Grid point at toroidal distance >= 1/(10m) from every charge whose
    potential sum is smallest; certified against 20 m log(20m).

    The uniform grid has GRID_PER_CHARGE * m candidates; the measure
    argument behind the bound leaves at least 7/10 of the torus feasible,
    so the scan cannot come up empty on correct input.
    """
    m = T.m
    n = GRID_PER_CHARGE * m
    grid = np.arange(n, dtype=float) / n
    floor = 1.0 / (DIST_FLOOR * m)
    vals = np.full(n, np.inf)
    block = max(1, _CHUNK // m)
    for k in range(0, n, block):
        d = torus_distance(grid[k:k + block, None], T.points[None, :])
        ok = d.min(axis=1) >= floor
        rows = np.where(ok)[0]
        vals[k + rows] = np.sum(1.0 / d[rows], axis=1)
    for y in exclude:
        vals[np.abs(grid - y) < SINGULAR_GUARD] = np.inf
    i = int(np.argmin(vals))
    if not np.isfinite(vals[i]):
        raise SearchExhausted("no torus grid point clears the distance floor")
    bound = KERNEL_CAP * m * np.log(KERNEL_CAP * m)
    if vals[i] > bound:
        raise SearchExhausted(
            f"best torus potential {vals[i]:.6g} exceeds the certified "
            f"bound {bound:.6g}")
    return float(grid[i]), float(vals[i])


# ---------------------------------------------------------------------------
# curve bound via projection
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LemmaWitness:
    t: float
    point: complex           # on the input curve
    value: float             # modulus potential at point, input frame
    normalized_value: float  # same after mapping endpoints to 0 and 1
    torus_value: float       # certified bound from the grid search
    torus_point: float


def _lift_candidates(rn: np.ndarray, tk: np.ndarray, y: float) -> list[float]:
    # all t with Re gamma_n(t) = y + k for some integer k
    out = set()
    for k in range(rn.size - 1):
        ra, rb = rn[k], rn[k + 1]
        lo, hi = min(ra, rb), max(ra, rb)
        for kk in range(int(np.floor(lo - y)), int(np.ceil(hi - y)) + 1):
            target = y + kk
            if lo <= target <= hi:
                if ra == rb:
                    out.add(float(tk[k]))
                else:
                    frac = (target - ra) / (rb - ra)
                    out.add(float(tk[k] + frac * (tk[k + 1] - tk[k])))
    return sorted(out)


def lemma1_curve_bound(C: ChargeSet, curve: Curve) -> LemmaWitness:
    """Certified low-potential point on the curve.

    Endpoints are mapped to 0 and 1 (translate, rotate, scale; charges
    transformed identically), charge abscissas are wrapped onto the torus,
    and the torus point is lifted back to a curve parameter.  The chain
    2-D potential <= abscissa potential <= torus potential <= 20 m log(20m)
    is re-verified numerically on the witness.
    """
    v0, v1 = curve.vertices[0], curve.vertices[-1]
    s = v1 - v0
    if abs(s) < SINGULAR_GUARD:
        raise ValueError("curve endpoints must be distinct")
    zn = (C.charges - v0) / s
    cfg = TorusConfig(zn.real)
    exclude: list[float] = []
    for _ in range(_LIFT_ATTEMPTS):
        y, torus_value = torus_low_potential_point(cfg, exclude=tuple(exclude))
        if np.abs(zn.real - y).min() < SINGULAR_GUARD:
            exclude.append(y)      # cannot happen while the floor holds
            continue
        break
    else:
        raise ProjectionDegenerate(
            "every candidate point collides with a projected charge")

    rn = ((curve.vertices - v0) / s).real
    cum = curve._cum
    cands = _lift_candidates(rn, cum / cum[-1], y)
    best_t, best_p = None, np.inf
    for t in cands:
        gn = (curve.point(t) - v0) / s
        p = float(np.sum(1.0 / np.abs(gn - zn)))
        if p < best_p:
            best_t, best_p = t, p
    if best_t is None:
        raise ProjectionDegenerate("no curve point projects onto the "
                                   "selected torus point")

    gn = (curve.point(best_t) - v0) / s
    one_d = float(np.sum(1.0 / np.abs(gn.real - zn.real)))
    slack = 1.0 + 1e-9
    if not (best_p <= one_d * slack and one_d <= torus_value * slack):
        raise CertificateError(
            "projection chain inequality failed at the witness",
            {"two_d": best_p, "one_d": one_d, "torus": torus_value})
    return LemmaWitness(
        t=best_t, point=curve.point(best_t), value=best_p / abs(s),
        normalized_value=best_p, torus_value=torus_value, torus_point=y)
