"""Univariate root finding and root-path tracking.

Two numeric workhorses live here: an Aberth–Ehrlich simultaneous iteration
(single polynomial or vectorized batches of equal degree), and a continuation
routine that transports the root fiber of f(z1, z2) = 0 in z2 along a path of
z1 values, matching consecutive fibers by a distance-minimal assignment.  The
tracker refuses to jump: when the best pairing moves a root more than half the
minimum root separation, the parameter step is bisected.

Everything is deterministic for fixed inputs; no RNG is used.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .polyalg import BiPoly, UniPoly

TOL_RES = 1e-10
MAX_SWEEPS = 200
CLUSTER_RADIUS = 1e-7
LEAD_DEGENERACY = 1e-12
SEPARATION_FACTOR = 0.5
MAX_BISECTIONS = 48


class RootFindError(RuntimeError):
    """Aberth iteration failed to converge; carries the best iterate."""

    def __init__(self, msg: str, best: np.ndarray, residuals: np.ndarray):
        super().__init__(msg)
        self.best = best
        self.residuals = residuals


class TrackError(RuntimeError):
    """Root continuation could not maintain an unambiguous pairing."""


def _as_coeff_array(f) -> np.ndarray:
    if isinstance(f, UniPoly):
        return f.to_complex()
    a = np.asarray(f, dtype=np.complex128).ravel()
    if a.size == 0:
        a = np.zeros(1, dtype=np.complex128)
    return a


def _polyval_batch(coeffs: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Horner evaluation; coeffs (B, n+1) ascending, x (B, m) -> (B, m)."""
    acc = np.zeros_like(x)
    for k in range(coeffs.shape[1] - 1, -1, -1):
        acc = acc * x + coeffs[:, k, None]
    return acc


def _aberth_batch(
    coeffs: np.ndarray,
    tol_res: float = TOL_RES,
    max_sweeps: int = MAX_SWEEPS,
):
    """Aberth–Ehrlich on a batch of same-degree polynomials.

    coeffs: (B, n+1) ascending complex, leading column nonzero.
    Returns (roots (B, n), residuals (B, n), converged (B, n) bool).
    """
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    B, n1 = coeffs.shape
    n = n1 - 1
    lead = coeffs[:, -1]
    mono = coeffs / lead[:, None]
    scale = 1.0 + np.max(np.abs(coeffs), axis=1)

    dcoeffs = mono[:, 1:] * np.arange(1, n1)

    if n == 1:
        roots = (-mono[:, 0])[:, None]
        res = np.abs(_polyval_batch(coeffs, roots))
        return roots, res, np.ones_like(res, dtype=bool)

    cauchy = 1.0 + np.max(np.abs(mono[:, :-1]), axis=1)
    angles = 2.0 * np.pi * np.arange(n) / n + 0.37659
    x = cauchy[:, None] * np.exp(1j * angles)[None, :]
    diag = np.arange(n)

    done = np.zeros((B, n), dtype=bool)
    for attempt in range(3):
        for _ in range(max_sweeps):
            p = _polyval_batch(mono, x)
            dp = _polyval_batch(dcoeffs, x)
            with np.errstate(divide="ignore", invalid="ignore"):
                newton = p / dp
                diff = x[:, :, None] - x[:, None, :]
                diff[:, diag, diag] = np.inf
                repulse = np.sum(1.0 / diff, axis=2)
                w = newton / (1.0 - newton * repulse)
            bad = ~np.isfinite(w)
            if bad.any():
                # escape coincident iterates with a deterministic nudge
                w = np.where(bad, 1e-6 * (1.0 + np.abs(x)) * np.exp(0.91j), w)
            w = np.where(done, 0.0, w)
            x = x - w
            presid = np.abs(_polyval_batch(mono, x)) * np.abs(lead)[:, None]
            small_step = np.abs(w) <= 1e-15 * (1.0 + np.abs(x))
            done = done | (presid <= tol_res * scale[:, None]) | small_step
            if done.all():
                break
        if done.all():
            break
        # restart stragglers from a rotated circle
        cauchy = 1.0 + np.max(np.abs(mono[:, :-1]), axis=1)
        angles = 2.0 * np.pi * np.arange(n) / n + 0.37659 + 0.83 * (attempt + 1)
        fresh = (cauchy * (1.1 + 0.2 * attempt))[:, None] * np.exp(1j * angles)[None, :]
        x = np.where(done, x, fresh)

    # polish with Newton on p/p', whose zeros are simple regardless of
    # multiplicity; sharpens both simple and multiple roots to noise floor
    ddcoeffs = dcoeffs[:, 1:] * np.arange(1, n) if n >= 2 else None
    for _ in range(3):
        p = _polyval_batch(mono, x)
        dp = _polyval_batch(dcoeffs, x)
        if ddcoeffs is not None and ddcoeffs.shape[1] > 0:
            ddp = _polyval_batch(ddcoeffs, x)
        else:
            ddp = np.zeros_like(x)
        with np.errstate(divide="ignore", invalid="ignore"):
            step = p * dp / (dp * dp - p * ddp)
        ok_step = np.isfinite(step) & done & (
            np.abs(step) <= 1e-3 * (1.0 + np.abs(x))
        )
        x = x - np.where(ok_step, step, 0.0)

    residuals = np.abs(_polyval_batch(coeffs, x))
    order = np.lexsort((x.imag, x.real), axis=1)
    idx = np.arange(B)[:, None]
    return x[idx, order], residuals[idx, order], done[idx, order]


def _cluster(roots: np.ndarray) -> tuple[np.ndarray, list[tuple[int, ...]]]:
    """Merge roots closer than CLUSTER_RADIUS (single linkage) to centroids."""
    n = roots.size
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(roots[i] - roots[j]) <= CLUSTER_RADIUS:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    out = roots.copy()
    clusters = []
    for members in groups.values():
        if len(members) > 1:
            centroid = np.mean(roots[members])
            for m in members:
                out[m] = centroid
            clusters.append(tuple(members))
    order = np.lexsort((out.imag, out.real))
    remap = {old: new for new, old in enumerate(order)}
    clusters = [tuple(sorted(remap[m] for m in members)) for members in clusters]
    return out[order], sorted(clusters)


@dataclass(frozen=True)
class RootSet:
    """All roots of one univariate polynomial, with residual evidence."""

    roots: tuple[complex, ...]
    residuals: tuple[float, ...]
    degree: int
    clusters: tuple[tuple[int, ...], ...] = ()

    def as_array(self) -> np.ndarray:
        return np.array(self.roots, dtype=np.complex128)

    def max_residual(self) -> float:
        return max(self.residuals, default=0.0)


def all_roots(
    f, tol_res: float = TOL_RES, max_sweeps: int = MAX_SWEEPS
) -> RootSet:
    """Every complex root of f, by Aberth–Ehrlich simultaneous iteration.

    f may be a UniPoly or an ascending complex coefficient array.  Requires
    degree >= 1 and a leading coefficient above the degeneracy threshold.
    Raises RootFindError (carrying the best iterate) on non-convergence.
    """
    a = _as_coeff_array(f)
    while a.size > 1 and a[-1] == 0:
        a = a[:-1]
    n = a.size - 1
    if n < 1:
        raise ValueError("all_roots needs degree >= 1")
    if abs(a[-1]) <= LEAD_DEGENERACY * np.max(np.abs(a)):
        raise ValueError("leading coefficient below degeneracy threshold")
    roots, res, ok = _aberth_batch(a[None, :], tol_res, max_sweeps)
    if not ok.all():
        bad = ~ok[0]
        raise RootFindError(
            f"Aberth iteration left {int(bad.sum())} root(s) unconverged "
            f"(worst residual {res[0][bad].max():.3e})",
            roots[0],
            res[0],
        )
    clustered, clusters = _cluster(roots[0])
    resid = np.abs(_polyval_batch(a[None, :], clustered[None, :])[0])
    return RootSet(
        roots=tuple(clustered.tolist()),
        residuals=tuple(resid.tolist()),
        degree=n,
        clusters=tuple(clusters),
    )


# ---------------------------------------------------------------------------
# fibers of a bivariate polynomial over z1
# ---------------------------------------------------------------------------


class FiberPoly:
    """f(z1, z2) viewed as a z2-polynomial with z1-dependent coefficients."""

    def __init__(self, f: BiPoly):
        if f.is_zero:
            raise ValueError("fiber of the zero polynomial")
        self._rows = [u.to_complex() for u in f.z2_coeffs()]
        self.deg2 = len(self._rows) - 1

    def coeff_rows(self, z1: np.ndarray) -> np.ndarray:
        """Ascending z2-coefficients at each z1; shape (B, deg2+1)."""
        z1 = np.asarray(z1, dtype=np.complex128).ravel()
        out = np.empty((z1.size, self.deg2 + 1), dtype=np.complex128)
        for b, row in enumerate(self._rows):
            acc = np.full_like(z1, row[-1])
            for c in row[-2::-1]:
                acc = acc * z1 + c
            out[:, b] = acc
        return out

    def coeffs_at(self, z1: complex) -> np.ndarray:
        return self.coeff_rows(np.array([z1]))[0]


def solve_fibers(
    fp: FiberPoly, z1s: np.ndarray, tol_res: float = TOL_RES
) -> tuple[list[np.ndarray], list[np.ndarray]]:
    """Roots in z2 above each z1 sample; tolerant of degree drops.

    Near-vanishing leading coefficients are stripped (those roots escape to
    infinity and carry no information about bounded domains).  Returns ragged
    lists (roots_i, converged_i) aligned with z1s.
    """
    z1s = np.asarray(z1s, dtype=np.complex128).ravel()
    rows = fp.coeff_rows(z1s)
    B = z1s.size
    norms = np.max(np.abs(rows), axis=1)
    eff_deg = np.full(B, -1, dtype=int)
    for i in range(B):
        if norms[i] == 0:
            continue
        d = fp.deg2
        while d >= 0 and abs(rows[i, d]) <= LEAD_DEGENERACY * norms[i]:
            d -= 1
        eff_deg[i] = d

    roots_out: list[np.ndarray] = [np.empty(0, dtype=np.complex128)] * B
    conv_out: list[np.ndarray] = [np.empty(0, dtype=bool)] * B
    for d in np.unique(eff_deg):
        if d < 1:
            continue
        sel = np.nonzero(eff_deg == d)[0]
        batch = rows[sel, : d + 1]
        r, _, ok = _aberth_batch(batch, tol_res)
        for pos, i in enumerate(sel):
            roots_out[i] = r[pos]
            conv_out[i] = ok[pos]
    return roots_out, conv_out


# ---------------------------------------------------------------------------
# path construction helpers
# ---------------------------------------------------------------------------


def segment_samples(a: complex, b: complex, n: int) -> np.ndarray:
    """n+1 points from a to b inclusive."""
    t = np.linspace(0.0, 1.0, n + 1)
    return a + (b - a) * t


def circle_samples(
    center: complex, radius: float, n: int, start_angle: float = 0.0
) -> np.ndarray:
    """Closed circle: n+1 samples, first == last, counterclockwise."""
    th = start_angle + 2.0 * np.pi * np.linspace(0.0, 1.0, n + 1)
    return center + radius * np.exp(1j * th)


def loop_samples(base: complex, center: complex, radius: float, n_circle: int = 64,
                 n_leg: int = 24) -> np.ndarray:
    """Base -> circle entry -> full circle -> back to base (a loop bouquet petal).

    The entry point is the circle point nearest the base along the ray from
    the center, so the legs stay radial and never cross the circle.
    """
    v = base - center
    if abs(v) <= radius:
        raise ValueError("base point must lie outside the loop circle")
    entry = center + radius * v / abs(v)
    ang = float(np.angle(entry - center))
    leg_in = segment_samples(base, entry, n_leg)
    circ = circle_samples(center, radius, n_circle, start_angle=ang)
    leg_out = segment_samples(entry, base, n_leg)
    return np.concatenate([leg_in, circ[1:], leg_out[1:]])


# ---------------------------------------------------------------------------
# tracking
# ---------------------------------------------------------------------------


@dataclass
class TrackedPath:
    """A fiber of z2-roots transported along a z1 path, rows kept aligned."""

    samples: np.ndarray  # (S,) complex z1 values after refinement
    fibers: np.ndarray  # (S, m) roots; row k+1 continues row k entrywise
    refinements: int = 0

    @property
    def start(self) -> np.ndarray:
        return self.fibers[0]

    @property
    def end(self) -> np.ndarray:
        return self.fibers[-1]

    def loop_permutation(self) -> tuple[int, ...]:
        """perm[i] = index of the start root the i-th sheet lands on.

        Only meaningful when the path closes up (last sample == first).
        """
        if abs(self.samples[-1] - self.samples[0]) > 1e-12:
            raise ValueError("path is not a closed loop")
        start, end = self.fibers[0], self.fibers[-1]
        cost = np.abs(end[:, None] - start[None, :])
        rows, cols = linear_sum_assignment(cost)
        perm = [0] * len(start)
        for r, c in zip(rows, cols):
            perm[r] = int(c)
        return tuple(perm)


def _min_separation(roots: np.ndarray) -> float:
    m = roots.size
    if m < 2:
        return np.inf
    d = np.abs(roots[:, None] - roots[None, :])
    np.fill_diagonal(d, np.inf)
    return float(d.min())


def _fiber_at(fp: FiberPoly, z1: complex, tol_res: float) -> np.ndarray:
    row = fp.coeffs_at(z1)
    top = np.max(np.abs(row))
    if top == 0 or abs(row[-1]) <= LEAD_DEGENERACY * top:
        raise TrackError(
            f"leading z2-coefficient degenerates at z1={z1:.6g}; "
            "path passes too close to a pole of the fiber"
        )
    roots, res, ok = _aberth_batch(row[None, :], tol_res)
    if not ok.all():
        raise TrackError(f"fiber solve failed to converge at z1={z1:.6g}")
    return roots[0]


def track(
    f,
    path,
    fiber0: RootSet | None = None,
    tol_res: float = TOL_RES,
    max_bisections: int = MAX_BISECTIONS,
) -> TrackedPath:
    """Transport the z2-root fiber of f along a path of z1 samples.

    f is a BiPoly or FiberPoly; path an array of complex z1 values (closed
    loop when first == last).  Consecutive fibers are paired by a
    distance-minimal assignment; a step whose maximum movement reaches half
    the minimum root separation is bisected, and the whole track fails with
    TrackError if bisection bottoms out.
    """
    fp = f if isinstance(f, FiberPoly) else FiberPoly(f)
    path = np.asarray(path, dtype=np.complex128).ravel()
    if path.size < 2:
        raise ValueError("path needs at least two samples")
    if fp.deg2 < 1:
        raise ValueError("polynomial has no z2 dependence to track")

    if fiber0 is not None:
        cur = np.asarray(fiber0.roots if isinstance(fiber0, RootSet) else fiber0,
                         dtype=np.complex128)
        if cur.size != fp.deg2:
            raise ValueError("fiber0 does not match the z2-degree")
    else:
        cur = _fiber_at(fp, path[0], tol_res)

    samples = [path[0]]
    fibers = [cur.copy()]
    refinements = 0

    for seg_end_idx in range(1, path.size):
        stack = [(path[seg_end_idx - 1], path[seg_end_idx], 0)]
        while stack:
            a, b, depth = stack.pop()
            new = _fiber_at(fp, b, tol_res)
            cost = np.abs(cur[:, None] - new[None, :])
            rows, cols = linear_sum_assignment(cost)
            matched = new[cols[np.argsort(rows)]]
            moved = float(np.max(np.abs(cur - matched)))
            sep = min(_min_separation(cur), _min_separation(new))
            if moved >= SEPARATION_FACTOR * sep:
                if depth >= max_bisections:
                    raise TrackError(
                        f"pairing stayed ambiguous after {max_bisections} "
                        f"bisections near z1={b:.6g}"
                    )
                mid = 0.5 * (a + b)
                stack.append((mid, b, depth + 1))
                stack.append((a, mid, depth + 1))
                refinements += 1
                continue
            cur = matched
            samples.append(b)
            fibers.append(cur.copy())

    return TrackedPath(
        samples=np.array(samples), fibers=np.array(fibers), refinements=refinements
    )
