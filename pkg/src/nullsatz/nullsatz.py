"""Closure/density classification of polynomial ideals in the Bergman space.

The dichotomy being computed: a polynomial ideal is closed exactly when every
irreducible component of its zero set meets the open domain Omega_{p,q}, and
its closure is the whole space exactly when no component does.  Mixed
intersection patterns give NEITHER.  All intersection tests are numeric with
a delta band around the gauge value 1, so boundary-grazing components report
INCONCLUSIVE rather than a guessed verdict.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment, minimize

from .bergman import DensityCertificate, DomainSpec, density_certificate
from .decompose import (
    CurveComponent,
    DecomposeError,
    IsolatedPoint,
    VarietyDecomposition,
    decompose_ideal,
)
from .polyalg import BiPoly, content_pp_z2
from .rootfind import FiberPoly, TrackError, segment_samples, solve_fibers, track

INTERSECTS = "INTERSECTS"
MISSES = "MISSES"
INCONCLUSIVE = "INCONCLUSIVE"

CLOSED = "CLOSED"
DENSE = "DENSE"
NEITHER = "NEITHER"

DELTA = 1e-6
GRID_PITCH = 0.01
TOL_POINT = 1e-8
ONCOMP_TOL = 1e-6


@dataclass(frozen=True)
class IntersectionResult:
    """Outcome of testing one component against the domain."""

    kind: str  # "curve" | "point"
    component: CurveComponent | IsolatedPoint
    min_phi: float
    argmin: tuple[complex, complex] | None
    verdict: str
    trace: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "verdict": self.verdict,
            "min_phi": self.min_phi,
            "argmin": None
            if self.argmin is None
            else [
                [self.argmin[0].real, self.argmin[0].imag],
                [self.argmin[1].real, self.argmin[1].imag],
            ],
            "trace": self.trace,
            "component": self.component.to_json_dict(),
        }


@dataclass(frozen=True)
class ClosureVerdict:
    """Aggregated intersection results with the fired dichotomy clause."""

    results: tuple[IntersectionResult, ...]
    overall: str
    justification: str
    domain: DomainSpec
    witness: tuple[complex, complex] | None = None
    certificate: DensityCertificate | None = None
    decomposition: VarietyDecomposition | None = None
    trace: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {
            "kind": "closure_verdict",
            "overall": self.overall,
            "justification": self.justification,
            "domain": self.domain.to_json_dict(),
            "witness": None
            if self.witness is None
            else [
                [self.witness[0].real, self.witness[0].imag],
                [self.witness[1].real, self.witness[1].imag],
            ],
            "components": [r.to_json_dict() for r in self.results],
            "certificate": None
            if self.certificate is None
            else self.certificate.to_json_dict(),
            "decomposition": None
            if self.decomposition is None
            else self.decomposition.to_json_dict(),
            "trace": self.trace,
        }


def _band_verdict(phi: float, delta: float) -> str:
    if phi <= 1.0 - delta:
        return INTERSECTS
    if phi >= 1.0 + delta:
        return MISSES
    return INCONCLUSIVE


def intersect_point(
    pt: IsolatedPoint, domain: DomainSpec, delta: float = DELTA
) -> IntersectionResult:
    """Gauge test of a single residual-verified point."""
    z1, z2 = pt.location
    phi = float(domain.phi(z1, z2))
    return IntersectionResult(
        kind="point",
        component=pt,
        min_phi=phi,
        argmin=(z1, z2),
        verdict=_band_verdict(phi, delta),
        trace={"method": "direct", "delta": delta},
    )


class _CoeffFiber:
    """Fiber view of an interpolated (float) coefficient matrix C[a, b]."""

    def __init__(self, C: np.ndarray):
        self._C = np.asarray(C, dtype=np.complex128)
        self.deg2 = self._C.shape[1] - 1

    def coeff_rows(self, z1) -> np.ndarray:
        z1 = np.asarray(z1, dtype=np.complex128).ravel()
        out = np.empty((z1.size, self.deg2 + 1), dtype=np.complex128)
        for b in range(self.deg2 + 1):
            col = self._C[:, b]
            acc = np.full_like(z1, col[-1])
            for c in col[-2::-1]:
                acc = acc * z1 + c
            out[:, b] = acc
        return out

    def coeffs_at(self, z1: complex) -> np.ndarray:
        return self.coeff_rows(np.array([z1]))[0]


def _disk_grid(pitch: float) -> np.ndarray:
    n = int(round(2.0 / pitch)) + 1
    ax = np.linspace(-1.0, 1.0, n)
    X, Y = np.meshgrid(ax, ax)
    Z = (X + 1j * Y).ravel()
    return Z[np.abs(Z) <= 1.0 + 1e-12]


def _sheet_phis(fiber: _CoeffFiber, domain: DomainSpec, z1s: np.ndarray):
    """Min gauge value over the component's sheets above each z1 sample."""
    roots, conv = solve_fibers(fiber, z1s)
    best_phi = np.inf
    best = None
    for k, z1 in enumerate(z1s):
        r = roots[k][conv[k]]
        if r.size == 0:
            continue
        phis = domain.phi(z1, r)
        j = int(np.argmin(phis))
        if phis[j] < best_phi:
            best_phi = float(phis[j])
            best = (complex(z1), complex(r[j]))
    return best_phi, best


def _newton_z2(coeffs: np.ndarray, z2: complex, iters: int = 12) -> complex:
    """Polish a z2 root of an ascending univariate slice."""
    d = np.arange(1, coeffs.size) * coeffs[1:]
    for _ in range(iters):
        p = complex(np.polyval(coeffs[::-1], z2))
        dp = complex(np.polyval(d[::-1], z2)) if d.size else 0.0
        if dp == 0:
            break
        step = p / dp
        z2 -= step
        if abs(step) < 1e-15 * (1.0 + abs(z2)):
            break
    return z2


def _continuation_check(
    comp: CurveComponent, pp: BiPoly, z1: complex, z2: complex
) -> bool:
    """Confirm (z1, z2) sits on this orbit by tracking from the base point.

    The witness must lie on the component's interpolated sheet family, and
    that family must agree with true continuation from the base fiber at a
    regular point next to the witness.  The detour around the witness itself
    matters: at an exact branch point the sheets coincide and direct
    tracking cannot terminate.
    """
    fiber = _CoeffFiber(comp.defining)
    local = 1.0 + float(np.abs(fiber.coeffs_at(z1)).max()) * (1.0 + abs(z2)) ** fiber.deg2
    if abs(comp.eval_defining(z1, z2)) > ONCOMP_TOL * local:
        return False
    fp = FiberPoly(pp)
    for off in (1e-3, 1e-3j, -1e-3, 2e-2):
        target = z1 + off * (1.0 + abs(z1))
        try:
            path = segment_samples(comp.base_point, target, 16)
            tracked = track(fp, path, fiber0=np.array(comp.base_fiber))
        except TrackError:
            continue
        true_sheets = tracked.end[list(comp.orbit)]
        roots, conv = solve_fibers(fiber, np.array([target]))
        interp_sheets = roots[0][conv[0]]
        if interp_sheets.size != true_sheets.size:
            continue
        cost = np.abs(interp_sheets[:, None] - true_sheets[None, :])
        rows, cols = linear_sum_assignment(cost)
        if cost[rows, cols].max() < ONCOMP_TOL * (1.0 + np.abs(true_sheets).max()):
            return True
    return False


def intersect_curve(
    comp: CurveComponent,
    domain: DomainSpec,
    delta: float = DELTA,
    pitch: float = GRID_PITCH,
    refine: bool = True,
) -> IntersectionResult:
    """Minimize the gauge over one curve component.

    The search runs over |z1| <= 1 only: outside that disk the gauge already
    exceeds 1.  Sheets come from the interpolated defining polynomial; an
    INTERSECTS argmin is re-verified against the exact parent factor and by
    continuation from the component's base fiber.
    """
    if comp.vertical:
        c = comp.base_point
        phi = float(domain.phi(c, 0.0))
        return IntersectionResult(
            kind="curve",
            component=comp,
            min_phi=phi,
            argmin=(c, 0.0 + 0j),
            verdict=_band_verdict(phi, delta),
            trace={"method": "vertical-closed-form", "delta": delta},
        )

    fiber = _CoeffFiber(comp.defining)
    grid = _disk_grid(pitch)
    best_phi, best = _sheet_phis(fiber, domain, grid)
    trace = {
        "method": "grid+descent",
        "grid_points": int(grid.size),
        "pitch": pitch,
        "delta": delta,
        "refine_steps": 0,
    }
    if best is None:
        return IntersectionResult(
            kind="curve",
            component=comp,
            min_phi=float("inf"),
            argmin=None,
            verdict=INCONCLUSIVE,
            trace={**trace, "note": "no sheet values found over the disk"},
        )

    if refine:

        def objective(xy):
            z1 = complex(xy[0], xy[1])
            phi, _ = _sheet_phis(fiber, domain, np.array([z1]))
            return phi

        res = minimize(
            objective,
            x0=[best[0].real, best[0].imag],
            method="Nelder-Mead",
            options={"xatol": 1e-9, "fatol": 1e-12, "maxiter": 200},
        )
        trace["refine_steps"] = int(res.nit)
        if res.fun < best_phi:
            z1r = complex(res.x[0], res.x[1])
            _, cand = _sheet_phis(fiber, domain, np.array([z1r]))
            if cand is not None:
                best_phi, best = float(res.fun), cand

    # polish the candidate onto the exact curve before judging
    _, pp = content_pp_z2(comp.parent)
    z1s, z2s = best
    z2s = _newton_z2(FiberPoly(pp).coeffs_at(z1s), z2s)
    best_phi = float(domain.phi(z1s, z2s))
    best = (z1s, z2s)

    verdict = _band_verdict(best_phi, delta)
    if verdict == INTERSECTS:
        ok = _continuation_check(comp, pp, z1s, z2s)
        if not ok:
            return IntersectionResult(
                kind="curve",
                component=comp,
                min_phi=best_phi,
                argmin=best,
                verdict=INCONCLUSIVE,
                trace={**trace, "note": "continuation to the argmin failed"},
            )
        trace["continuation_verified"] = True
    return IntersectionResult(
        kind="curve",
        component=comp,
        min_phi=best_phi,
        argmin=best,
        verdict=verdict,
        trace=trace,
    )


def aggregate_verdicts(verdicts: list[str]) -> tuple[str, str]:
    """The dichotomy table: all-in CLOSED, all-out DENSE, mixed NEITHER."""
    if not verdicts:
        return DENSE, "zero set is empty; nothing obstructs density"
    if any(v == INCONCLUSIVE for v in verdicts):
        return INCONCLUSIVE, "at least one component test was inconclusive"
    hits = sum(v == INTERSECTS for v in verdicts)
    if hits == len(verdicts):
        return CLOSED, "every component of the zero set meets the open domain"
    if hits == 0:
        return DENSE, "no component of the zero set meets the open domain"
    return NEITHER, "some components meet the domain and some do not"


def classify(
    generators: list[BiPoly],
    domain: DomainSpec,
    seed: int = 0,
    delta: float = DELTA,
    pitch: float = GRID_PITCH,
    threads: int | None = None,
    with_certificate: bool = True,
    mc_samples: int = 100000,
    n_max: int = 20,
) -> ClosureVerdict:
    """Full pipeline: decompose the variety, test every component, aggregate.

    CLOSED verdicts name a common zero inside the domain (the point whose
    maximal ideal contains the input); DENSE verdicts on principal inputs
    attach a density certificate for the generator.
    """
    gens = [g for g in generators if not g.is_zero]
    if not gens:
        raise ValueError("classify needs at least one nonzero generator")
    base_trace = {
        "seed": seed,
        "delta": delta,
        "pitch": pitch,
        "tol_point": TOL_POINT,
    }

    try:
        dec = decompose_ideal(gens, seed=seed)
    except DecomposeError as exc:
        return ClosureVerdict(
            results=(),
            overall=INCONCLUSIVE,
            justification=f"decomposition failed: {exc}",
            domain=domain,
            trace=base_trace,
        )

    tasks = [
        (lambda c=c: intersect_curve(c, domain, delta=delta, pitch=pitch))
        for c in dec.curve_components
    ] + [
        (lambda p=p: intersect_point(p, domain, delta=delta))
        for p in dec.points
    ]

    if tasks:
        workers = threads or min(8, os.cpu_count() or 1, len(tasks))
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                results = tuple(pool.map(lambda t: t(), tasks))
        else:
            results = tuple(t() for t in tasks)
    else:
        results = ()

    overall, justification = aggregate_verdicts([r.verdict for r in results])

    witness = None
    if overall == CLOSED:
        for r in results:
            if r.verdict != INTERSECTS or r.argmin is None:
                continue
            w1, w2 = r.argmin
            resid = max(abs(g.eval(w1, w2)) for g in gens)
            if resid < TOL_POINT and domain.phi(w1, w2) < 1.0 - delta:
                witness = (w1, w2)
                break
        if witness is None:
            overall = INCONCLUSIVE
            justification = (
                "intersections found but no argmin satisfied the generator "
                "residual bound"
            )

    certificate = None
    if overall == DENSE and with_certificate and len(gens) == 1:
        certificate = density_certificate(
            gens[0],
            domain,
            N_max=n_max,
            mc_samples=mc_samples,
            seed=seed,
        )

    return ClosureVerdict(
        results=results,
        overall=overall,
        justification=justification,
        domain=domain,
        witness=witness,
        certificate=certificate,
        decomposition=dec,
        trace=base_trace,
    )
