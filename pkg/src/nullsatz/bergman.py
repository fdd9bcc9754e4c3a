"""Bergman-space geometry of the domains |z1|^p + |z2|^q < 1.

Monomials are pairwise orthogonal on these Reinhardt domains, so the whole
Hilbert-space side reduces to the squared monomial norms

    nu_ab = (2 pi)^2 / (p q) * Gamma(alpha) Gamma(beta) / Gamma(alpha+beta+1),
    alpha = (2a+2)/p,  beta = (2b+2)/q,

computed in log space.  On top of the norm table sit inner products, the
reproducing-kernel diagonal, least-squares projection distances
d_N = dist(1, p * P_N), the dilation family p(z)/p(rz) with its 2^d ratio
bound, and the density certificate that packages the observables.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln
from scipy.stats import beta as beta_dist
from scipy.stats import qmc

from .polyalg import BiPoly, poly_to_json

R_GRID_DEFAULT = (0.51, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99)
RATIO_SLACK = 1e-9
DENOM_FLOOR = 1e-14
BOUNDARY_FRACTION = 0.25
CORNER_PHASES = 128


class DomainError(ValueError):
    """A point or parameter falls outside the domain contract."""


class MissingNormError(KeyError):
    """An inner product touched an exponent the norm table does not cover."""


class RankDeficiencyWarning(UserWarning):
    """Least-squares system was rank deficient; solution is regularized."""


@dataclass(frozen=True)
class DomainSpec:
    """The Reinhardt domain |z1|^p + |z2|^q < 1."""

    p: float
    q: float

    def __post_init__(self):
        for name, v in (("p", self.p), ("q", self.q)):
            if not (0 < v < math.inf) or math.isnan(v):
                raise DomainError(f"domain exponent {name} must be in (0, inf), got {v}")

    @property
    def is_ball(self) -> bool:
        return self.p == 2.0 and self.q == 2.0

    @classmethod
    def ball(cls) -> "DomainSpec":
        return cls(2.0, 2.0)

    @classmethod
    def parse(cls, text: str) -> "DomainSpec":
        """Accepts 'ball' or 'p,q' with positive numeric entries."""
        t = text.strip().lower()
        if t == "ball":
            return cls.ball()
        parts = t.split(",")
        if len(parts) != 2:
            raise DomainError(f"domain must be 'ball' or 'p,q', got {text!r}")
        try:
            p, q = float(parts[0]), float(parts[1])
        except ValueError:
            raise DomainError(f"domain exponents must be numeric, got {text!r}") from None
        return cls(p, q)

    def phi(self, z1, z2):
        """|z1|^p + |z2|^q, the defining gauge; inside iff < 1."""
        return np.abs(z1) ** self.p + np.abs(z2) ** self.q

    def contains(self, z1, z2, slack: float = 0.0):
        return self.phi(z1, z2) < 1.0 - slack

    def to_json_dict(self) -> dict:
        return {"p": self.p, "q": self.q}


def _log_norm(domain: DomainSpec, a, b):
    """log nu_ab, vectorized over integer arrays a, b."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    alpha = (2.0 * a + 2.0) / domain.p
    beta = (2.0 * b + 2.0) / domain.q
    base = 2.0 * math.log(2.0 * math.pi) - math.log(domain.p) - math.log(domain.q)
    return base + gammaln(alpha) + gammaln(beta) - gammaln(alpha + beta + 1.0)


def monomial_norm(domain: DomainSpec, a: int, b: int) -> float:
    """nu_ab = squared Bergman norm of z1^a z2^b on the domain.

    Evaluated in log space so large exponents cannot overflow.
    """
    if a < 0 or b < 0:
        raise ValueError(f"exponents must be nonnegative, got ({a}, {b})")
    v = float(np.exp(_log_norm(domain, a, b)))
    if v == 0.0:
        raise OverflowError(f"nu_({a},{b}) underflows double precision")
    return v


def volume(domain: DomainSpec) -> float:
    """Euclidean volume of the domain (= nu_00)."""
    return monomial_norm(domain, 0, 0)


class MonomialNormTable:
    """All nu_ab with a + b <= N, for inner products and projections."""

    def __init__(self, domain: DomainSpec, max_total_degree: int):
        if max_total_degree < 0:
            raise ValueError("max_total_degree must be >= 0")
        self.domain = domain
        self.max_total_degree = max_total_degree
        self.norms: dict[tuple[int, int], float] = {}
        for s in range(max_total_degree + 1):
            a = np.arange(s + 1)
            vals = np.exp(_log_norm(domain, a, s - a))
            for ai, v in zip(a, vals):
                self.norms[(int(ai), int(s - ai))] = float(v)

    @classmethod
    def build(cls, domain: DomainSpec, max_total_degree: int) -> "MonomialNormTable":
        return cls(domain, max_total_degree)

    def norm(self, a: int, b: int) -> float:
        try:
            return self.norms[(a, b)]
        except KeyError:
            raise MissingNormError(
                f"norm table (N={self.max_total_degree}) has no entry for "
                f"exponent ({a}, {b})"
            ) from None

    def covers(self, f: BiPoly) -> bool:
        return all(a + b <= self.max_total_degree for a, b in f.terms)


def inner(f: BiPoly, g: BiPoly, table: MonomialNormTable) -> complex:
    """Bergman inner product <f, g>; monomial orthogonality makes it a sum."""
    acc = 0j
    small, big = (f, g) if len(f.terms) <= len(g.terms) else (g, f)
    for (a, b) in small.terms:
        cf = f.coeff(a, b)
        cg = g.coeff(a, b)
        if cf.is_zero or cg.is_zero:
            continue
        acc += complex(cf) * complex(cg).conjugate() * table.norm(a, b)
    return acc


def norm_sq(f: BiPoly, table: MonomialNormTable) -> float:
    return inner(f, f, table).real


def kernel_diag(domain: DomainSpec, w: tuple[complex, complex],
                tol: float = 1e-12, max_shells: int = 200_000) -> float:
    """Reproducing-kernel diagonal K(w, w) = sum |w1|^2a |w2|^2b / nu_ab.

    Summed by total-degree shells until two consecutive shells each add less
    than tol times the partial sum.  Requires w strictly inside the domain.
    """
    w1, w2 = complex(w[0]), complex(w[1])
    gauge = domain.phi(w1, w2)
    if not gauge < 1.0:
        raise DomainError(
            f"kernel diagonal needs a point strictly inside the domain; "
            f"|w1|^p+|w2|^q = {gauge:.6g}"
        )
    r1, r2 = abs(w1), abs(w2)
    l1 = math.log(r1) if r1 > 0 else -math.inf
    l2 = math.log(r2) if r2 > 0 else -math.inf
    total = 0.0
    quiet = 0
    for s in range(max_shells + 1):
        a = np.arange(s + 1)
        b = s - a
        keep = np.ones(s + 1, dtype=bool)
        if r1 == 0.0:
            keep &= a == 0  # |w1|^{2a} kills every other term
        if r2 == 0.0:
            keep &= b == 0
        a, b = a[keep], b[keep]
        if a.size == 0:
            shell = 0.0
        else:
            logt = -_log_norm(domain, a, b)
            if r1 > 0:
                logt = logt + 2.0 * a * l1
            if r2 > 0:
                logt = logt + 2.0 * b * l2
            shell = float(np.exp(logt).sum())
        total += shell
        if s >= 1 and shell < tol * total:
            quiet += 1
            if quiet >= 2:
                return total
        else:
            quiet = 0
    raise DomainError(
        f"kernel series did not settle within {max_shells} shells "
        f"(gauge {gauge:.6g} too close to 1?)"
    )


def kernel_lower_bound(domain: DomainSpec, w: tuple[complex, complex],
                       tol: float = 1e-12) -> float:
    """K(w,w)^{-1/2}: no function with f(w)=0 gets closer to 1 than this."""
    return 1.0 / math.sqrt(kernel_diag(domain, w, tol))


# ---------------------------------------------------------------------------
# projection distances
# ---------------------------------------------------------------------------


def projection_distance(p: BiPoly, N: int, table: MonomialNormTable) -> float:
    """d_N = min over q of total degree <= N of the norm of 1 - p*q.

    Solved as complex least squares in coordinates where each monomial
    z1^a z2^b is scaled by sqrt(nu_ab), making the basis orthonormal.
    """
    if p.is_zero:
        raise ValueError("projection distance needs a nonzero polynomial")
    if N < 0:
        raise ValueError("N must be >= 0")
    cols = [(c, d) for c in range(N + 1) for d in range(N + 1 - c)]
    row_set = {(0, 0)}
    for (a, b) in p.terms:
        for (c, d) in cols:
            row_set.add((a + c, b + d))
    rows = sorted(row_set)
    row_index = {e: i for i, e in enumerate(rows)}
    scale = np.array([math.sqrt(table.norm(a, b)) for a, b in rows])

    A = np.zeros((len(rows), len(cols)), dtype=np.complex128)
    for j, (c, d) in enumerate(cols):
        for (a, b), coef in p.terms.items():
            i = row_index[(a + c, b + d)]
            A[i, j] += complex(coef)
    A *= scale[:, None]
    rhs = np.zeros(len(rows), dtype=np.complex128)
    rhs[row_index[(0, 0)]] = scale[row_index[(0, 0)]]

    x, _, rank, _ = np.linalg.lstsq(A, rhs, rcond=1e-12)
    if rank < len(cols):
        warnings.warn(
            f"projection system rank {rank} < {len(cols)} columns; "
            "solution regularized",
            RankDeficiencyWarning,
            stacklevel=2,
        )
    return float(np.linalg.norm(rhs - A @ x))


# ---------------------------------------------------------------------------
# sampling
# ---------------------------------------------------------------------------


def eval_grid(f: BiPoly, z1: np.ndarray, z2: np.ndarray) -> np.ndarray:
    """Evaluate f at paired sample arrays (vectorized double Horner)."""
    z1 = np.asarray(z1, dtype=np.complex128)
    z2 = np.asarray(z2, dtype=np.complex128)
    C = f.coeff_matrix()
    rows = np.empty((C.shape[1],) + z1.shape, dtype=np.complex128)
    for b in range(C.shape[1]):
        acc = np.full_like(z1, C[-1, b])
        for a in range(C.shape[0] - 2, -1, -1):
            acc = acc * z1 + C[a, b]
        rows[b] = acc
    out = rows[-1]
    for b in range(C.shape[1] - 2, -1, -1):
        out = out * z2 + rows[b]
    return out


def sample_closure(domain: DomainSpec, n: int, seed: int) -> tuple[np.ndarray, np.ndarray]:
    """Quasi-random points of the closed domain, boundary-heavy.

    A fixed fraction sits exactly on the boundary shell, the rest fills the
    interior with a bias toward the boundary.  Deterministic corner circles
    ({|z1| = 1, z2 = 0} and {z1 = 0, |z2| = 1}) and the origin are always
    included, so extreme points of one-variable factors are hit exactly.
    """
    if n < 2 * CORNER_PHASES + 1:
        raise ValueError(f"need at least {2 * CORNER_PHASES + 1} samples")
    m = n - 2 * CORNER_PHASES - 1
    u = qmc.Halton(d=4, seed=seed).random(m)
    t, mix, th1, th2 = u[:, 0], u[:, 1], u[:, 2], u[:, 3]
    interior = np.clip(
        (t - BOUNDARY_FRACTION) / (1.0 - BOUNDARY_FRACTION), 0.0, 1.0
    ) ** 0.25
    w = np.where(t < BOUNDARY_FRACTION, 1.0, interior)
    part1 = w * mix
    part2 = w * (1.0 - mix)
    s1 = part1 ** (1.0 / domain.p)
    s2 = part2 ** (1.0 / domain.q)
    z1 = s1 * np.exp(2j * np.pi * th1)
    z2 = s2 * np.exp(2j * np.pi * th2)

    phases = np.exp(2j * np.pi * np.arange(CORNER_PHASES) / CORNER_PHASES)
    zeros = np.zeros(CORNER_PHASES, dtype=np.complex128)
    z1 = np.concatenate([z1, phases, zeros, [0.0 + 0j]])
    z2 = np.concatenate([z2, zeros, phases, [0.0 + 0j]])
    return z1, z2


def sample_interior(domain: DomainSpec, n: int, seed: int) -> tuple[np.ndarray, np.ndarray]:
    """Quasi-random points distributed by the domain's volume measure.

    In gauge coordinates u = |z1|^p, v = |z2|^q the volume element is a
    Dirichlet(2/p, 2/q, 1) density on the simplex; inverse-transform the
    Halton sequence through the two conditional Beta marginals.
    """
    u = qmc.Halton(d=4, seed=seed).random(n)
    a1, a2, a3 = 2.0 / domain.p, 2.0 / domain.q, 1.0
    gu = beta_dist.ppf(u[:, 0], a1, a2 + a3)
    gv = (1.0 - gu) * beta_dist.ppf(u[:, 1], a2, a3)
    s1 = gu ** (1.0 / domain.p)
    s2 = gv ** (1.0 / domain.q)
    z1 = s1 * np.exp(2j * np.pi * u[:, 2])
    z2 = s2 * np.exp(2j * np.pi * u[:, 3])
    return z1, z2


def mean_norm_sq(f: BiPoly, domain: DomainSpec, n: int, seed: int) -> float:
    """Quasi-Monte Carlo estimate of the squared Bergman norm of f."""
    z1, z2 = sample_interior(domain, n, seed)
    vals = eval_grid(f, z1, z2)
    return volume(domain) * float(np.mean(np.abs(vals) ** 2))


# ---------------------------------------------------------------------------
# dilation family and ratio bound
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DilationFamily:
    """f_r(z) = p(z1, z2) / p(r z1, r z2) for r in (1/2, 1)."""

    poly: BiPoly
    r: float

    def __post_init__(self):
        if not (0.5 < self.r < 1.0):
            raise DomainError(f"dilation parameter must be in (1/2, 1), got {self.r}")
        if self.poly.is_zero:
            raise ValueError("dilation family needs a nonzero polynomial")

    def __call__(self, z1, z2):
        num = eval_grid(self.poly, z1, z2)
        den = eval_grid(self.poly, self.r * np.asarray(z1), self.r * np.asarray(z2))
        tiny = np.abs(den) < DENOM_FLOOR
        if np.any(tiny):
            idx = int(np.argmax(tiny))
            zz1 = np.asarray(z1).ravel()[idx]
            zz2 = np.asarray(z2).ravel()[idx]
            raise DomainError(
                f"dilation denominator vanishes near ({self.r * zz1:.6g}, "
                f"{self.r * zz2:.6g}); polynomial has a zero inside the domain"
            )
        return num / den


@dataclass
class RatioBoundReport:
    """Sampled sup of |p(z)/p(rz)| against the 2^d bound."""

    poly: BiPoly
    domain: DomainSpec
    r_grid: tuple[float, ...]
    samples: int
    seed: int
    degree_sum: int
    bound: float
    sup: float
    sup_point: tuple[complex, complex]
    sup_r: float
    passed: bool
    violations: list[dict] = field(default_factory=list)

    def to_json_dict(self) -> dict:
        return {
            "kind": "ratio_bound",
            "polynomial": poly_to_json(self.poly),
            "domain": self.domain.to_json_dict(),
            "r_grid": list(self.r_grid),
            "samples": self.samples,
            "seed": self.seed,
            "degree_sum": self.degree_sum,
            "bound": self.bound,
            "sup": self.sup,
            "sup_point": {
                "z1": [self.sup_point[0].real, self.sup_point[0].imag],
                "z2": [self.sup_point[1].real, self.sup_point[1].imag],
            },
            "sup_r": self.sup_r,
            "pass": self.passed,
            "violations": self.violations,
        }


def ratio_sup(
    p: BiPoly,
    domain: DomainSpec,
    r_grid: tuple[float, ...] = R_GRID_DEFAULT,
    samples: int = 20000,
    seed: int = 0,
) -> RatioBoundReport:
    """Sampled sup over the closed domain of |p(z)/p(rz)| for each r.

    For p zero-free on the closure the sup must stay below 2^(deg1+deg2).
    Near-zero denominators are recorded as bound-violation evidence; they
    mean p vanishes somewhere in the domain and the hypothesis fails.
    """
    if p.is_zero:
        raise ValueError("ratio_sup needs a nonzero polynomial")
    for r in r_grid:
        if not (0.5 < r < 1.0):
            raise DomainError(f"r-grid entry {r} outside (1/2, 1)")
    z1, z2 = sample_closure(domain, samples, seed)
    num = np.abs(eval_grid(p, z1, z2))
    d = p.degree_sum()
    bound = float(2.0**d)
    sup = 0.0
    sup_idx, sup_r = 0, r_grid[0]
    violations: list[dict] = []
    for r in r_grid:
        den = np.abs(eval_grid(p, r * z1, r * z2))
        tiny = den < DENOM_FLOOR
        if np.any(tiny):
            for idx in np.nonzero(tiny)[0][:10]:
                violations.append(
                    {
                        "z1": [float(z1[idx].real), float(z1[idx].imag)],
                        "z2": [float(z2[idx].real), float(z2[idx].imag)],
                        "r": r,
                        "denominator": float(den[idx]),
                    }
                )
        ratio = np.where(tiny, np.inf, num / np.where(tiny, 1.0, den))
        k = int(np.argmax(ratio))
        if ratio[k] > sup:
            sup, sup_idx, sup_r = float(ratio[k]), k, r
    passed = not violations and sup <= bound + RATIO_SLACK
    return RatioBoundReport(
        poly=p,
        domain=domain,
        r_grid=tuple(r_grid),
        samples=samples,
        seed=seed,
        degree_sum=d,
        bound=bound,
        sup=sup,
        sup_point=(complex(z1[sup_idx]), complex(z2[sup_idx])),
        sup_r=sup_r,
        passed=passed,
        violations=violations,
    )


# ---------------------------------------------------------------------------
# density certificate
# ---------------------------------------------------------------------------

DENSE_TOL = 1e-6

STATUS_DENSE = "DENSE"
STATUS_NOT_DENSE = "NOT_DENSE"
STATUS_UNDECIDED = "UNDECIDED"


@dataclass
class DensityCertificate:
    """Observable evidence for or against density of p * (Bergman space)."""

    poly: BiPoly
    domain: DomainSpec
    profile: list[tuple[int, float]]  # (N, d_N)
    dilation_profile: list[tuple[float, float]]  # (r, ||1 - f_r||)
    kernel_bound: float | None
    zero_witness: tuple[complex, complex] | None
    status: str
    mc_samples: int
    seed: int

    def min_distance(self) -> float:
        return min(d for _, d in self.profile)

    def to_json_dict(self) -> dict:
        w = self.zero_witness
        return {
            "kind": "density_certificate",
            "polynomial": poly_to_json(self.poly),
            "domain": self.domain.to_json_dict(),
            "projection_profile": [[n, d] for n, d in self.profile],
            "dilation_profile": [[r, v] for r, v in self.dilation_profile],
            "kernel_lower_bound": self.kernel_bound,
            "zero_witness": None
            if w is None
            else {"z1": [w[0].real, w[0].imag], "z2": [w[1].real, w[1].imag]},
            "status": self.status,
            "mc_samples": self.mc_samples,
            "seed": self.seed,
        }


def density_certificate(
    p: BiPoly,
    domain: DomainSpec,
    N_max: int = 20,
    r_grid: tuple[float, ...] = R_GRID_DEFAULT,
    zero_w: tuple[complex, complex] | None = None,
    mc_samples: int = 100_000,
    seed: int = 0,
    dense_tol: float = DENSE_TOL,
) -> DensityCertificate:
    """Assemble the density observables for the principal ideal of p.

    The projection profile d_N measures how well 1 is approximated from
    p * (polynomials of degree <= N); the dilation profile measures
    ||1 - p(z)/p(rz)|| as r -> 1.  A supplied zero of p inside the domain
    converts into the reproducing-kernel lower bound that blocks density.
    """
    if p.is_zero:
        raise ValueError("density certificate needs a nonzero polynomial")
    table = MonomialNormTable.build(domain, p.deg1 + p.deg2 + 2 * N_max + 2)
    profile = [(N, projection_distance(p, N, table)) for N in range(N_max + 1)]

    dilation: list[tuple[float, float]] = []
    z1, z2 = sample_interior(domain, mc_samples, seed)
    vol = volume(domain)
    pnum = eval_grid(p, z1, z2)
    for r in r_grid:
        if not (0.5 < r < 1.0):
            raise DomainError(f"r-grid entry {r} outside (1/2, 1)")
        den = eval_grid(p, r * z1, r * z2)
        tiny = np.abs(den) < DENOM_FLOOR
        if np.any(tiny):
            dilation.append((r, math.inf))
            continue
        vals = np.abs(1.0 - pnum / den) ** 2
        dilation.append((r, math.sqrt(vol * float(np.mean(vals)))))

    kernel_bound = None
    if zero_w is not None:
        w1, w2 = complex(zero_w[0]), complex(zero_w[1])
        if not domain.contains(w1, w2):
            raise DomainError("zero witness must lie strictly inside the domain")
        pw = eval_grid(p, np.array([w1]), np.array([w2]))[0]
        if abs(pw) > 1e-6 * (1.0 + max(abs(complex(c)) for c in p.terms.values())):
            raise ValueError(
                f"claimed zero witness is not a zero: |p(w)| = {abs(pw):.3g}"
            )
        kernel_bound = kernel_lower_bound(domain, (w1, w2))

    dmin = min(d for _, d in profile)
    if dmin <= dense_tol and kernel_bound is not None:
        raise ArithmeticError(
            f"inconsistent evidence: d_N reached {dmin:.3g} but kernel bound "
            f"{kernel_bound:.3g} forbids density"
        )
    if dmin <= dense_tol:
        status = STATUS_DENSE
    elif kernel_bound is not None:
        status = STATUS_NOT_DENSE
    else:
        status = STATUS_UNDECIDED

    return DensityCertificate(
        poly=p,
        domain=domain,
        profile=profile,
        dilation_profile=dilation,
        kernel_bound=kernel_bound,
        zero_witness=None if zero_w is None else (complex(zero_w[0]), complex(zero_w[1])),
        status=status,
        mc_samples=mc_samples,
        seed=seed,
    )
