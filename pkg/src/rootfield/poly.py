"""Polynomials with optional root-list provenance.

Coefficients are stored in ascending order (coeffs[k] multiplies z**k).
A polynomial built by `from_roots` keeps its root list, which downstream
code prefers for logarithmic derivatives: the summed form stays finite
where the coefficient quotient would overflow.

High-degree evaluation is the one numerically delicate spot.  A monic
polynomial with a few hundred roots of unit scale has coefficients around
1e150, so plain Horner overflows once |z| grows past ~2.  Internal helpers
therefore switch to the reversed polynomial p(z) = z^n g(1/z) for large
|z| and carry magnitudes in log2 form.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NoConvergence, SingularPoint

ROOT_TOL = 1e-10          # |p(root)| <= ROOT_TOL * scale(p)
LOG_DERIV_TOL = 1e-9      # relative agreement of the two log-derivative paths
SINGULAR_GUARD = 1e-12    # minimum distance from a pole for evaluation
_EVAL_TOL_PER_DEG = 1e-12  # construction residual allowance per unit degree
_ABERTH_SEED = 0x5EEDF00D  # fixed: find_roots must be a pure function
_STEP_TOL = 1e-14
_MAX_ITERS = 500


# ---------------------------------------------------------------------------
# types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Polynomial:
    """Immutable polynomial; `roots` is None unless built from roots."""

    coeffs: np.ndarray
    roots: np.ndarray | None = None

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.coeffs, dtype=np.complex128))
        if c.ndim != 1 or c.size == 0:
            raise ValueError("coeffs must be a non-empty 1-D sequence")
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        # normalize: drop leading (highest-order) zeros, keep >= 1 entry
        nz = np.nonzero(c)[0]
        c = c[: nz[-1] + 1] if nz.size else c[:1]
        object.__setattr__(self, "coeffs", c)
        if self.roots is not None:
            r = np.atleast_1d(np.asarray(self.roots, dtype=np.complex128))
            object.__setattr__(self, "roots", r)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return self.degree == 0 and self.coeffs[0] == 0

    @property
    def scale(self) -> float:
        return float(np.max(np.abs(self.coeffs)))


@dataclass(frozen=True)
class RootSplit:
    """Roots of one polynomial partitioned into an inside and outside part.

    `inside` are the roots assigned to the convex domain, `outside` the
    rest.  The product polynomial is the original; the two factors are
    exposed as polynomials with stored roots.
    """

    inside: np.ndarray
    outside: np.ndarray

    def __post_init__(self):
        object.__setattr__(
            self, "inside",
            np.atleast_1d(np.asarray(self.inside, dtype=np.complex128)))
        object.__setattr__(
            self, "outside",
            np.atleast_1d(np.asarray(self.outside, dtype=np.complex128))
            if len(np.atleast_1d(self.outside)) else
            np.zeros(0, dtype=np.complex128))
        if len(self.inside) == 0:
            raise ValueError("inside root set must be non-empty")

    @property
    def n(self) -> int:
        return len(self.inside)

    @property
    def m(self) -> int:
        return len(self.outside)

    def inside_poly(self) -> Polynomial:
        return from_roots(self.inside)

    def outside_poly(self) -> Polynomial:
        """Outside factor; the empty product is the constant 1."""
        if self.m == 0:
            return Polynomial(np.array([1.0 + 0j]))
        return from_roots(self.outside)

    def product(self) -> Polynomial:
        return from_roots(np.concatenate([self.inside, self.outside]))


# ---------------------------------------------------------------------------
# construction and basic calculus
# ---------------------------------------------------------------------------

def from_roots(roots) -> Polynomial:
    """Monic polynomial with the given roots (multiset, any order).

    Multiplication runs in ascending |root| order to limit cancellation.
    """
    r = np.atleast_1d(np.asarray(roots, dtype=np.complex128))
    if r.size == 0:
        raise ValueError("need at least one root")
    if not np.all(np.isfinite(r)):
        raise ValueError("roots must be finite")
    order = np.argsort(np.abs(r), kind="stable")
    c = np.zeros(r.size + 1, dtype=np.complex128)
    c[0] = 1.0
    deg = 0
    for a in r[order]:
        c[1:deg + 2] = c[0:deg + 1] - a * c[1:deg + 2]
        c[0] = -a * c[0]
        deg += 1
    return Polynomial(c, roots=r)


def evaluate(p: Polynomial, z):
    """Horner evaluation at scalar or array argument.

    Plain double precision: may overflow for extreme degree * |z|; the
    package-internal paths that must survive that regime use
    `phase_logmag` instead.
    """
    zz = np.asarray(z, dtype=np.complex128)
    acc = np.full_like(zz, p.coeffs[-1])
    for k in range(p.degree - 1, -1, -1):
        acc = acc * zz + p.coeffs[k]
    if np.isscalar(z) or zz.ndim == 0:
        return complex(acc)
    return acc


def derivative(p: Polynomial) -> Polynomial:
    """Coefficient-wise derivative; the derivative of a constant is the
    zero polynomial (degree 0, single zero coefficient)."""
    if p.degree == 0:
        return Polynomial(np.array([0.0 + 0j]))
    k = np.arange(1, p.degree + 1)
    return Polynomial(p.coeffs[1:] * k)


def log_derivative(p: Polynomial, z):
    """p'(z)/p(z), as a root sum when roots are stored.

    Raises SingularPoint when z is within SINGULAR_GUARD of a stored root
    (or exactly at a root in the coefficient path).
    """
    scalar = np.isscalar(z) or np.asarray(z).ndim == 0
    zz = np.atleast_1d(np.asarray(z, dtype=np.complex128))
    if p.roots is not None:
        d = zz[:, None] - p.roots[None, :]
        if np.min(np.abs(d)) <= SINGULAR_GUARD:
            raise SingularPoint("evaluation point within guard of a root")
        out = np.sum(1.0 / d, axis=1)
    else:
        if p.is_zero:
            raise SingularPoint("zero polynomial has no log-derivative")
        pv = evaluate(p, zz)
        pv = np.atleast_1d(np.asarray(pv))
        if np.any(pv == 0):
            raise SingularPoint("evaluation point is a root")
        dv = np.atleast_1d(np.asarray(evaluate(derivative(p), zz)))
        out = dv / pv
    return complex(out[0]) if scalar else out


# ---------------------------------------------------------------------------
# overflow-safe evaluation helpers
# ---------------------------------------------------------------------------

def _horner(coeffs: np.ndarray, z: np.ndarray) -> np.ndarray:
    acc = np.full_like(z, coeffs[-1])
    for k in range(len(coeffs) - 2, -1, -1):
        acc = acc * z + coeffs[k]
    return acc


def _split_radius(coeffs: np.ndarray) -> float:
    """|z| threshold below which plain Horner stays within double range."""
    deg = len(coeffs) - 1
    scale = float(np.max(np.abs(coeffs)))
    if deg == 0 or scale == 0:
        return np.inf
    # keep scale * tau^deg below 2^980 (headroom to 2^1023)
    log2_tau = (980.0 - np.log2(scale)) / deg
    return float(max(2.0 ** min(log2_tau, 60.0), 1.25))


def phase_logmag(coeffs, z):
    """Return (unit_phase, log2 magnitude) of p(z), overflow-free.

    unit_phase is exp(i arg p(z)); zero values get phase 1 and -inf logmag.
    """
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    zz = np.atleast_1d(np.asarray(z, dtype=np.complex128))
    deg = len(coeffs) - 1
    tau = _split_radius(coeffs)
    phase = np.ones_like(zz)
    logmag = np.full(zz.shape, -np.inf)
    az = np.abs(zz)
    small = az <= tau
    if np.any(small):
        v = _horner(coeffs, zz[small])
        a = np.abs(v)
        with np.errstate(over="ignore", invalid="ignore"):
            ratio = v / np.where(a > 0, a, 1.0)
        ok = (a > 0) & np.isfinite(ratio)
        phase[small] = np.where(ok, ratio, 1.0)
        with np.errstate(divide="ignore"):
            logmag[small] = np.log2(a)
    big = ~small
    if np.any(big):
        u = 1.0 / zz[big]
        g = _horner(coeffs[::-1], u)
        ag = np.abs(g)
        ang = deg * np.angle(zz[big]) + np.angle(g)
        phase[big] = np.where(ag > 0, np.exp(1j * ang), 1.0)
        with np.errstate(divide="ignore"):
            logmag[big] = deg * np.log2(az[big]) + np.log2(ag)
    return phase, logmag


def majorant_logmag(coeffs, z):
    """log2 of sum_k |c_k| |z|^k, the evaluation-noise majorant.

    |p(z)| computed in doubles carries absolute error of order
    eps * degree * majorant, so residual certificates must be read
    against this quantity rather than against max|c_k| alone.
    """
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    a = np.abs(coeffs)
    az = np.abs(np.atleast_1d(np.asarray(z, dtype=np.complex128)))
    deg = len(coeffs) - 1
    tau = _split_radius(coeffs)
    out = np.empty(az.shape)
    small = az <= tau
    if np.any(small):
        with np.errstate(divide="ignore"):
            out[small] = np.log2(_horner(a.astype(np.complex128),
                                         az[small].astype(np.complex128)).real)
    big = ~small
    if np.any(big):
        u = 1.0 / az[big]
        g = _horner(a[::-1].astype(np.complex128), u.astype(np.complex128)).real
        with np.errstate(divide="ignore"):
            out[big] = deg * np.log2(az[big]) + np.log2(g)
    return out


def newton_ratio(coeffs, dcoeffs, z):
    """p(z)/p'(z) without overflow; inf where p' vanishes but p does not."""
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    dcoeffs = np.asarray(dcoeffs, dtype=np.complex128)
    zz = np.atleast_1d(np.asarray(z, dtype=np.complex128))
    deg = len(coeffs) - 1
    tau = min(_split_radius(coeffs), _split_radius(dcoeffs))
    out = np.empty_like(zz)
    az = np.abs(zz)
    small = az <= tau
    if np.any(small):
        zs = zz[small]
        pv = _horner(coeffs, zs)
        dv = _horner(dcoeffs, zs)
        with np.errstate(divide="ignore", invalid="ignore"):
            r = pv / dv
        r[(dv == 0) & (pv == 0)] = 0.0
        r[(dv == 0) & (pv != 0)] = np.inf
        out[small] = r
    big = ~small
    if np.any(big):
        zb = zz[big]
        u = 1.0 / zb
        rc = coeffs[::-1]
        g = _horner(rc, u)
        if deg >= 1:
            gk = rc[1:] * np.arange(1, deg + 1)
            gp = _horner(gk, u)
        else:
            gp = np.zeros_like(u)
        denom = deg * g - u * gp          # p'/z^(deg-1) evaluated via g
        with np.errstate(divide="ignore", invalid="ignore"):
            r = zb * g / denom
        r[(denom == 0) & (g == 0)] = 0.0
        r[(denom == 0) & (g != 0)] = np.inf
        out[big] = r
    return out


# ---------------------------------------------------------------------------
# root finding (simultaneous Aberth-Ehrlich iteration)
# ---------------------------------------------------------------------------

def _initial_points(coeffs: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Circle initialization with radii from the upper hull of coefficient
    log-magnitudes (one radius cluster per hull segment), angles randomly
    perturbed to break symmetric stalls."""
    deg = len(coeffs) - 1
    a = np.abs(coeffs)
    with np.errstate(divide="ignore"):
        logs = np.where(a > 0, np.log2(a, where=a > 0,
                                       out=np.full_like(a, -np.inf)), -np.inf)
    ks = [k for k in range(deg + 1) if np.isfinite(logs[k])]
    # upper convex hull of (k, logs[k])
    hull: list[int] = []
    for k in ks:
        while len(hull) >= 2:
            k1, k2 = hull[-2], hull[-1]
            # keep if k2 lies strictly above the chord k1 -> k
            if (logs[k2] - logs[k1]) * (k - k1) <= (logs[k] - logs[k1]) * (k2 - k1):
                hull.pop()
            else:
                break
        hull.append(k)
    radii = np.empty(deg)
    pos = 0
    for i in range(len(hull) - 1):
        k1, k2 = hull[i], hull[i + 1]
        width = k2 - k1
        r = 2.0 ** ((logs[k1] - logs[k2]) / width)
        r = min(max(r, 1e-12), 1e12)
        radii[pos: pos + width] = r
        pos += width
    radii[pos:] = radii[pos - 1] if pos else 1.0
    angles = 2.0 * np.pi * (np.arange(deg) + 0.37) / deg
    angles = angles + rng.uniform(-0.5, 0.5, deg) * (np.pi / deg)
    return radii * np.exp(1j * angles)


def find_roots(p: Polynomial, max_iters: int = _MAX_ITERS) -> np.ndarray:
    """All complex roots, with multiplicity, sorted by (real, imag).

    Deterministic: the symmetry-breaking perturbation uses a fixed seed.
    Raises NoConvergence when the residual certificate fails.
    """
    if p.degree < 1:
        raise ValueError("degree must be >= 1")
    coeffs = p.coeffs.copy()
    # deflate exact roots at the origin
    k0 = 0
    while coeffs[k0] == 0:
        k0 += 1
    zero_roots = np.zeros(k0, dtype=np.complex128)
    c = coeffs[k0:]
    d = len(c) - 1
    if d == 0:
        roots = zero_roots
    elif d == 1:
        roots = np.concatenate([zero_roots, [-c[0] / c[1]]])
    elif d == 2:
        roots = np.concatenate([zero_roots, _quadratic(c)])
    else:
        roots = np.concatenate([zero_roots, _aberth(c, max_iters)])
    order = np.lexsort((roots.imag, roots.real))
    return roots[order]


def _quadratic(c: np.ndarray) -> np.ndarray:
    a0, a1, a2 = c
    disc = np.sqrt(a1 * a1 - 4.0 * a2 * a0)
    if (a1.conjugate() * disc).real < 0:
        disc = -disc
    q = -(a1 + disc) / 2.0
    if q == 0:
        return np.array([0.0 + 0j, 0.0 + 0j])
    return np.array([q / a2, a0 / q])


def _aberth(c: np.ndarray, max_iters: int) -> np.ndarray:
    d = len(c) - 1
    dc = c[1:] * np.arange(1, d + 1)
    rng = np.random.default_rng(_ABERTH_SEED)
    x = _initial_points(c, rng)
    scale = float(np.max(np.abs(c)))
    tiny = 0
    best_step = np.inf
    since_improve = 0
    it = 0
    for it in range(max_iters):
        # split exact collisions so the pairwise sum stays finite
        x = _separate_duplicates(x)
        n_ratio = newton_ratio(c, dc, x)
        bad = ~np.isfinite(n_ratio)
        diff = x[:, None] - x[None, :]
        np.fill_diagonal(diff, np.inf)
        s = np.sum(1.0 / diff, axis=1)
        denom = 1.0 - n_ratio * s
        with np.errstate(divide="ignore", invalid="ignore"):
            delta = n_ratio / denom
        delta = np.where(np.isfinite(delta), delta, n_ratio)
        # stalled points (p' = 0 away from a root): nudge deterministically
        delta = np.where(bad, 1e-6 * (1.0 + np.abs(x)) * np.exp(1j * 0.618 * it),
                         delta)
        x = x - delta
        step = float(np.max(np.abs(delta) / (1.0 + np.abs(x))))
        tiny = tiny + 1 if step < _STEP_TOL else 0
        if tiny >= 2:
            break
        # ill-conditioned clusters plateau above _STEP_TOL; stop once the
        # step size has stopped improving and let the certificate decide
        if step < 0.5 * best_step:
            best_step = step
            since_improve = 0
        else:
            best_step = min(best_step, step)
            since_improve += 1
        if since_improve >= 25 and step < 1e-6:
            break
    _, logmag = phase_logmag(c, x)
    allowed = np.log2(ROOT_TOL) + np.maximum(majorant_logmag(c, x),
                                             np.log2(scale))
    excess = logmag - allowed
    worst_log = float(np.max(excess))
    if np.isnan(worst_log) or worst_log > 0.0:
        raise NoConvergence(float(ROOT_TOL * 2.0 ** min(worst_log, 1000.0)),
                            it + 1)
    return x


def _separate_duplicates(x: np.ndarray) -> np.ndarray:
    diff = x[:, None] - x[None, :]
    np.fill_diagonal(diff, np.inf)
    dup_rows = np.where(np.min(np.abs(diff), axis=1) == 0.0)[0]
    if dup_rows.size:
        x = x.copy()
        bump = 1e-9 * (1.0 + np.abs(x[dup_rows]))
        x[dup_rows] += bump * np.exp(2j * np.pi * np.arange(dup_rows.size)
                                     / max(dup_rows.size, 1))
    return x


def critical_points(p: Polynomial) -> np.ndarray:
    """Roots of p'; empty for degree-1 input.

    When the root list is available the coefficient solution is polished
    against the summed form q'/q = sum 1/(z - r_i), whose zeros do not
    inherit the (severe, at high degree) coefficient conditioning.
    """
    if p.degree < 1:
        raise ValueError("degree must be >= 1")
    if p.degree == 1:
        return np.zeros(0, dtype=np.complex128)
    w = find_roots(derivative(p))
    if p.roots is not None and p.roots.size == p.degree:
        w = _polish_critical(p.roots, w)
        idx = np.lexsort((w.imag, w.real))
        w = w[idx]
    return w


def _log_deriv_rel(roots: np.ndarray, w: np.ndarray):
    """(|sum 1/(w-r)|, sum |1/(w-r)|): residual and its cancellation scale."""
    with np.errstate(divide="ignore", invalid="ignore"):
        inv = 1.0 / (w[:, None] - roots[None, :])
    s = inv.sum(axis=1)
    return np.abs(s), np.abs(inv).sum(axis=1)


def _polish_critical(roots: np.ndarray, w0: np.ndarray,
                     max_iters: int = 60) -> np.ndarray:
    """Newton/Aberth on R(z) = sum 1/(z - r_i) starting from w0.

    Uses q'/q'' = R / (R**2 + R') so nothing large is ever formed.  Each
    point is kept only if its relative residual actually improves, which
    makes repeated roots (poles of R coinciding with critical points)
    fall back to the coefficient answer automatically.
    """
    w = np.array(w0, dtype=np.complex128)
    for _ in range(max_iters):
        w = _separate_duplicates(w)
        with np.errstate(divide="ignore", invalid="ignore"):
            inv = 1.0 / (w[:, None] - roots[None, :])
            r_val = inv.sum(axis=1)
            r_der = -(inv * inv).sum(axis=1)
            n_ratio = r_val / (r_val * r_val + r_der)
            diff = w[:, None] - w[None, :]
            np.fill_diagonal(diff, np.inf)
            s = (1.0 / diff).sum(axis=1)
            delta = n_ratio / (1.0 - n_ratio * s)
        delta = np.where(np.isfinite(delta), delta, 0.0)
        w = w - delta
        if float(np.max(np.abs(delta) / (1.0 + np.abs(w)))) < _STEP_TOL:
            break
    res0, scale0 = _log_deriv_rel(roots, np.asarray(w0))
    res1, scale1 = _log_deriv_rel(roots, w)
    with np.errstate(invalid="ignore", divide="ignore"):
        better = res1 / scale1 <= res0 / scale0
    better &= np.isfinite(w)
    return np.where(better, w, w0)


def construction_residual(p: Polynomial) -> float:
    """Largest |p(root)| relative to the evaluation majorant at that root.

    Returns max_i |p(r_i)| / max(M(r_i), scale(p)) over stored roots,
    where M(x) = sum_k |c_k| |x|^k.  Horner evaluation carries error of
    order eps * degree * M(x), so this ratio — not |p(r)| / scale alone —
    is the quantity a construction can actually keep small once roots
    leave the unit disk.  0 when no roots are stored.
    """
    if p.roots is None or p.roots.size == 0:
        return 0.0
    _, logmag = phase_logmag(p.coeffs, p.roots)
    floor = np.maximum(majorant_logmag(p.coeffs, p.roots), np.log2(p.scale))
    return float(2.0 ** np.max(logmag - floor))


def eval_tolerance(degree: int) -> float:
    """Allowed construction residual for a degree-d from_roots polynomial."""
    return _EVAL_TOL_PER_DEG * (degree + 1)
