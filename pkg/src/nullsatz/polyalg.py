"""Exact bivariate polynomial arithmetic over the Gaussian rationals.

Polynomials in z1, z2 carry coefficients in Q(i), stored as pairs of
``fractions.Fraction``.  All structural algebra (gcd, square-free splitting,
resultants) happens exactly here; floating point enters only when a polynomial
is exported through :meth:`BiPoly.coeff_matrix` or :meth:`UniPoly.to_complex`
for the numeric stages.

Conventions:

* term maps never store zero coefficients,
* gcds and square-free factors are normalized so the coefficient of the
  lexicographic leading term (ordered by z2-degree, then z1-degree) is 1,
* the Sylvester resultant is taken with respect to z2 and returned as an
  exact univariate polynomial in z1.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Mapping

import numpy as np


class PolyFormatError(ValueError):
    """Raised for malformed polynomial/ideal JSON input."""


class ZeroPolynomialError(ValueError):
    """Raised when an operation requires a nonzero (or nonconstant) input."""


class ExactDivisionError(ArithmeticError):
    """Raised when an exact polynomial division leaves a remainder."""


_RatLike = "int | Fraction | str"


def _to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise PolyFormatError(f"cannot parse rational {x!r}: {exc}") from None
    raise PolyFormatError(f"expected int or rational string, got {type(x).__name__}")


class GaussRational:
    """An element of Q(i): exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _to_fraction(re))
        object.__setattr__(self, "im", _to_fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussRational is immutable")

    @property
    def is_zero(self) -> bool:
        return not self.re and not self.im

    def conjugate(self) -> "GaussRational":
        return GaussRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        """|c|^2 as an exact Fraction."""
        return self.re * self.re + self.im * self.im

    @staticmethod
    def _coerce(other):
        if isinstance(other, GaussRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussRational(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussRational(o.re - self.re, o.im - self.im)

    def __neg__(self):
        return GaussRational(-self.re, -self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussRational(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = o.abs2()
        if not n:
            raise ZeroDivisionError("division by zero GaussRational")
        return GaussRational(
            (self.re * o.re + self.im * o.im) / n,
            (self.im * o.re - self.re * o.im) / n,
        )

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}i)"

    @classmethod
    def parse(cls, re, im=0) -> "GaussRational":
        """Build from strings/ints; decimal strings convert exactly."""
        return cls(_to_fraction(re), _to_fraction(im))


GR_ZERO = GaussRational(0)
GR_ONE = GaussRational(1)


class UniPoly:
    """Univariate polynomial over Q(i); coefficient index = power."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[GaussRational] = ()):
        cs = [c if isinstance(c, GaussRational) else GaussRational(c) for c in coeffs]
        while cs and cs[-1].is_zero:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree, or -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> GaussRational:
        if self.is_zero:
            raise ZeroPolynomialError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def is_constant(self) -> bool:
        return self.degree <= 0

    def __eq__(self, other):
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "UniPoly") -> "UniPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return UniPoly(out)

    def __neg__(self) -> "UniPoly":
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (GaussRational, int, Fraction)):
            k = other if isinstance(other, GaussRational) else GaussRational(other)
            return UniPoly([c * k for c in self.coeffs])
        if not isinstance(other, UniPoly):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return UniPoly()
        out = [GR_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def shift(self, k: int) -> "UniPoly":
        """Multiply by x^k."""
        if self.is_zero:
            return self
        return UniPoly([GR_ZERO] * k + list(self.coeffs))

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if other.is_zero:
            raise ZeroDivisionError("UniPoly division by zero")
        q = [GR_ZERO] * max(0, self.degree - other.degree + 1)
        rem = list(self.coeffs)
        d, lc = other.degree, other.lead
        while len(rem) - 1 >= d and rem:
            while rem and rem[-1].is_zero:
                rem.pop()
            if len(rem) - 1 < d:
                break
            k = len(rem) - 1 - d
            c = rem[-1] / lc
            q[k] = c
            for i, b in enumerate(other.coeffs):
                rem[k + i] = rem[k + i] - c * b
            rem.pop()
        return UniPoly(q), UniPoly(rem)

    def exact_div(self, other: "UniPoly") -> "UniPoly":
        q, r = self.divmod(other)
        if not r.is_zero:
            raise ExactDivisionError("univariate division left a remainder")
        return q

    def monic(self) -> "UniPoly":
        if self.is_zero:
            return self
        return self * (GR_ONE / self.lead)

    def deriv(self) -> "UniPoly":
        return UniPoly([c * k for k, c in enumerate(self.coeffs)][1:])

    def eval(self, x):
        """Horner evaluation; exact for GaussRational x, float for complex x."""
        if isinstance(x, (complex, float)):
            acc = 0j
            for c in reversed(self.coeffs):
                acc = acc * x + complex(c)
            return acc
        acc = GR_ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def to_complex(self) -> np.ndarray:
        if self.is_zero:
            return np.zeros(1, dtype=np.complex128)
        return np.array([complex(c) for c in self.coeffs], dtype=np.complex128)

    def __repr__(self):
        if self.is_zero:
            return "UniPoly(0)"
        parts = [f"{c!r}*x^{k}" for k, c in enumerate(self.coeffs) if not c.is_zero]
        return "UniPoly(" + " + ".join(parts) + ")"


def unipoly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd in Q(i)[x] by the Euclidean algorithm."""
    while not b.is_zero:
        _, r = a.divmod(b)
        a, b = b, r
    return a.monic() if not a.is_zero else a


class BiPoly:
    """Bivariate polynomial over Q(i), stored as {(a, b): coeff} with no zeros."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], GaussRational] | None = None):
        clean = {}
        if terms:
            for (a, b), c in terms.items():
                if not isinstance(c, GaussRational):
                    c = GaussRational(c)
                if a < 0 or b < 0:
                    raise ValueError(f"negative exponent ({a},{b})")
                if not c.is_zero:
                    clean[(int(a), int(b))] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("BiPoly is immutable; build a new one")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "BiPoly":
        return cls()

    @classmethod
    def constant(cls, c) -> "BiPoly":
        return cls({(0, 0): c if isinstance(c, GaussRational) else GaussRational(c)})

    @classmethod
    def var(cls, which: int) -> "BiPoly":
        """The polynomial z1 (which=1) or z2 (which=2)."""
        if which == 1:
            return cls({(1, 0): GR_ONE})
        if which == 2:
            return cls({(0, 1): GR_ONE})
        raise ValueError("variable index must be 1 or 2")

    # -- structure ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_constant(self) -> bool:
        return all(k == (0, 0) for k in self.terms)

    @property
    def deg1(self) -> int:
        """Degree in z1 (-1 for the zero polynomial)."""
        return max((a for a, _ in self.terms), default=-1)

    @property
    def deg2(self) -> int:
        """Degree in z2 (-1 for the zero polynomial)."""
        return max((b for _, b in self.terms), default=-1)

    def coeff(self, a: int, b: int) -> GaussRational:
        return self.terms.get((a, b), GR_ZERO)

    def degree_sum(self) -> int:
        """Sum of the per-variable degrees, the exponent in the 2^d dilation bound."""
        if self.is_zero:
            raise ZeroPolynomialError("degree of the zero polynomial is undefined")
        return self.deg1 + self.deg2

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (GaussRational, int, Fraction)):
            other = BiPoly.constant(other)
        if not isinstance(other, BiPoly):
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, GR_ZERO) + c
            if s.is_zero:
                out.pop(k, None)
            else:
                out[k] = s
        return BiPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (GaussRational, int, Fraction)):
            other = BiPoly.constant(other)
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (GaussRational, int, Fraction)):
            k = other if isinstance(other, GaussRational) else GaussRational(other)
            return BiPoly({e: c * k for e, c in self.terms.items()})
        if not isinstance(other, BiPoly):
            return NotImplemented
        out: dict[tuple[int, int], GaussRational] = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                k = (a1 + a2, b1 + b2)
                s = out.get(k, GR_ZERO) + c1 * c2
                if s.is_zero:
                    out.pop(k, None)
                else:
                    out[k] = s
        return BiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = BiPoly.constant(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GaussRational)):
            other = BiPoly.constant(other)
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def deriv(self, which: int) -> "BiPoly":
        """Partial derivative with respect to z1 (which=1) or z2 (which=2)."""
        out = {}
        for (a, b), c in self.terms.items():
            if which == 1 and a > 0:
                out[(a - 1, b)] = c * a
            elif which == 2 and b > 0:
                out[(a, b - 1)] = c * b
        return BiPoly(out)

    def swap_vars(self) -> "BiPoly":
        return BiPoly({(b, a): c for (a, b), c in self.terms.items()})

    # -- evaluation & numeric export ----------------------------------------

    def eval(self, x1, x2):
        """Evaluate at a point; exact for GaussRational inputs, complex otherwise."""
        if isinstance(x1, (complex, float)) or isinstance(x2, (complex, float)):
            cs = [u.eval(complex(x1)) for u in self.z2_coeffs()]
            acc = 0j
            for c in reversed(cs):
                acc = acc * complex(x2) + c
            return acc
        if isinstance(x1, int):
            x1 = GaussRational(x1)
        if isinstance(x2, int):
            x2 = GaussRational(x2)
        cs = [u.eval(x1) for u in self.z2_coeffs()]
        acc = GR_ZERO
        for c in reversed(cs):
            acc = acc * x2 + c
        return acc

    def coeff_matrix(self) -> np.ndarray:
        """Complex coefficient array C with C[a, b] multiplying z1^a z2^b."""
        m = np.zeros((max(self.deg1, 0) + 1, max(self.deg2, 0) + 1), dtype=np.complex128)
        for (a, b), c in self.terms.items():
            m[a, b] = complex(c)
        return m

    def z2_coeffs(self) -> list[UniPoly]:
        """Coefficients as polynomials in z1; index = z2 power."""
        if self.is_zero:
            return []
        buckets: list[dict[int, GaussRational]] = [dict() for _ in range(self.deg2 + 1)]
        for (a, b), c in self.terms.items():
            buckets[b][a] = c
        out = []
        for bucket in buckets:
            n = max(bucket, default=-1) + 1
            out.append(UniPoly([bucket.get(i, GR_ZERO) for i in range(n)]))
        return out

    @classmethod
    def from_z2_coeffs(cls, cs: Iterable[UniPoly]) -> "BiPoly":
        terms = {}
        for b, u in enumerate(cs):
            for a, c in enumerate(u.coeffs):
                if not c.is_zero:
                    terms[(a, b)] = c
        return cls(terms)

    @classmethod
    def from_unipoly_z1(cls, u: UniPoly) -> "BiPoly":
        return cls({(a, 0): c for a, c in enumerate(u.coeffs) if not c.is_zero})

    def as_unipoly_z1(self) -> UniPoly:
        if self.deg2 > 0:
            raise ValueError("polynomial involves z2")
        n = self.deg1 + 1
        return UniPoly([self.coeff(a, 0) for a in range(max(n, 0))])

    def as_unipoly_z2(self) -> UniPoly:
        if self.deg1 > 0:
            raise ValueError("polynomial involves z1")
        n = self.deg2 + 1
        return UniPoly([self.coeff(0, b) for b in range(max(n, 0))])

    # -- display -------------------------------------------------------------

    def __repr__(self):
        if self.is_zero:
            return "0"
        parts = []
        for (a, b) in sorted(self.terms, key=lambda t: (-t[1], -t[0])):
            c = self.terms[(a, b)]
            mono = "*".join(
                s
                for s in (
                    f"z1^{a}" if a > 1 else ("z1" if a == 1 else ""),
                    f"z2^{b}" if b > 1 else ("z2" if b == 1 else ""),
                )
                if s
            )
            if not mono:
                parts.append(repr(c))
            elif c == GR_ONE:
                parts.append(mono)
            else:
                parts.append(f"{c!r}*{mono}")
        return " + ".join(parts)


# ---------------------------------------------------------------------------
# exact division, gcd, square-free decomposition
# ---------------------------------------------------------------------------


def _lex_lead(f: BiPoly) -> tuple[int, int]:
    # leading term under lex order with z2 before z1
    return max(f.terms, key=lambda t: (t[1], t[0]))


def lex_monic(f: BiPoly) -> BiPoly:
    """Scale so the lex-leading (z2 first, then z1) coefficient is 1."""
    if f.is_zero:
        return f
    lead = f.terms[_lex_lead(f)]
    if lead == GR_ONE:
        return f
    return f * (GR_ONE / lead)


def exact_div(f: BiPoly, g: BiPoly) -> BiPoly:
    """Exact quotient f/g; raises ExactDivisionError if g does not divide f."""
    if g.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    if f.is_zero:
        return BiPoly.zero()
    ga, gb = _lex_lead(g)
    gc = g.terms[(ga, gb)]
    rem = dict(f.terms)
    quot: dict[tuple[int, int], GaussRational] = {}
    while rem:
        a, b = max(rem, key=lambda t: (t[1], t[0]))
        if a < ga or b < gb:
            raise ExactDivisionError("not an exact divisor")
        qe = (a - ga, b - gb)
        qc = rem[(a, b)] / gc
        quot[qe] = quot.get(qe, GR_ZERO) + qc
        for (ea, eb), c in g.terms.items():
            k = (qe[0] + ea, qe[1] + eb)
            s = rem.get(k, GR_ZERO) - qc * c
            if s.is_zero:
                rem.pop(k, None)
            else:
                rem[k] = s
    return BiPoly(quot)


def divides(g: BiPoly, f: BiPoly) -> bool:
    try:
        exact_div(f, g)
        return True
    except ExactDivisionError:
        return False


def content_pp_z2(f: BiPoly) -> tuple[UniPoly, BiPoly]:
    """Split f into (content, primitive part) viewing f in (Q(i)[z1])[z2].

    The content is the monic gcd in Q(i)[z1] of the z2-coefficients; the
    primitive part is the exact quotient.
    """
    if f.is_zero:
        raise ZeroPolynomialError("content of the zero polynomial")
    cs = f.z2_coeffs()
    cont = UniPoly()
    for u in cs:
        cont = unipoly_gcd(cont, u)
        if cont.degree == 0:
            break
    cont = cont.monic()
    if cont.degree == 0:
        return cont, f
    pp = BiPoly.from_z2_coeffs([u.exact_div(cont) for u in cs])
    return cont, pp


def _prem_z2(A: BiPoly, B: BiPoly) -> BiPoly:
    """Pseudo-remainder of A by B with respect to z2, coefficients in Q(i)[z1]."""
    a = A.z2_coeffs()
    b = B.z2_coeffs()
    db = len(b) - 1
    lcb = b[-1]
    r = list(a)
    while len(r) - 1 >= db and r:
        while r and r[-1].is_zero:
            r.pop()
        if len(r) - 1 < db:
            break
        lr = r[-1]
        k = len(r) - 1 - db
        # r <- lc(B)*r - lr*z2^k*B  : degree in z2 strictly drops
        r = [lcb * c for c in r]
        for i in range(db + 1):
            r[k + i] = r[k + i] - lr * b[i]
        r.pop()
    return BiPoly.from_z2_coeffs(r)


def gcd2(f: BiPoly, g: BiPoly) -> BiPoly:
    """Exact gcd in Q(i)[z1, z2], normalized lex-monic (z2 before z1).

    Uses content/primitive-part splitting in (Q(i)[z1])[z2] and a primitive
    pseudo-remainder sequence, so coefficient growth stays tame.
    """
    if f.is_zero and g.is_zero:
        raise ZeroPolynomialError("gcd(0, 0) is undefined")
    if f.is_zero:
        return lex_monic(g)
    if g.is_zero:
        return lex_monic(f)
    if f.deg2 == 0 and g.deg2 == 0:
        u = unipoly_gcd(f.as_unipoly_z1(), g.as_unipoly_z1())
        return lex_monic(BiPoly.from_unipoly_z1(u))
    if f.deg2 == 0:
        cg, _ = content_pp_z2(g)
        u = unipoly_gcd(f.as_unipoly_z1(), cg)
        return lex_monic(BiPoly.from_unipoly_z1(u))
    if g.deg2 == 0:
        return gcd2(g, f)

    cf, pf = content_pp_z2(f)
    cg, pg = content_pp_z2(g)
    cont = unipoly_gcd(cf, cg)

    A, B = (pf, pg) if pf.deg2 >= pg.deg2 else (pg, pf)
    while True:
        if B.is_zero:
            gpp = A
            break
        if B.deg2 == 0:
            gpp = BiPoly.constant(1)
            break
        R = _prem_z2(A, B)
        if R.is_zero:
            A, B = B, R
            continue
        _, Rpp = content_pp_z2(R)
        A, B = B, Rpp

    _, gpp = content_pp_z2(gpp) if gpp.deg2 > 0 else (None, lex_monic(gpp))
    result = BiPoly.from_unipoly_z1(cont) * gpp
    return lex_monic(result)


def gcd_many(polys: Iterable[BiPoly]) -> BiPoly:
    """Iterated gcd of a nonempty collection (zero entries are ignored)."""
    acc = BiPoly.zero()
    for p in polys:
        if p.is_zero:
            continue
        acc = p if acc.is_zero else gcd2(acc, p)
        if acc.is_constant and not acc.is_zero:
            return BiPoly.constant(1)
    if acc.is_zero:
        raise ZeroPolynomialError("gcd of all-zero collection")
    return lex_monic(acc)


def squarefree(f: BiPoly) -> list[tuple[BiPoly, int]]:
    """Square-free decomposition: list of (factor, multiplicity).

    The product of factor^multiplicity equals f up to a nonzero constant;
    factors are pairwise coprime, square-free, and lex-monic.
    """
    if f.is_zero or f.is_constant:
        raise ZeroPolynomialError("square-free decomposition needs a nonconstant input")
    c = gcd2(f, f.deriv(1))
    c = gcd2(c, f.deriv(2))
    w = exact_div(f, c)  # radical of f, up to a constant
    out: list[tuple[BiPoly, int]] = []
    i = 1
    while not w.is_constant:
        y = gcd2(w, c)
        a = exact_div(w, y)
        if not a.is_constant:
            out.append((lex_monic(a), i))
        w = y
        if not c.is_constant:
            c = exact_div(c, y)
        i += 1
    return out


# ---------------------------------------------------------------------------
# Sylvester resultant with respect to z2
# ---------------------------------------------------------------------------


def _det_gauss(mat: list[list[GaussRational]]) -> GaussRational:
    """Exact determinant over Q(i) by Gaussian elimination with pivoting."""
    n = len(mat)
    m = [row[:] for row in mat]
    det = GR_ONE
    for col in range(n):
        piv = next((r for r in range(col, n) if not m[r][col].is_zero), None)
        if piv is None:
            return GR_ZERO
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        pc = m[col][col]
        det = det * pc
        inv = GR_ONE / pc
        for r in range(col + 1, n):
            factor = m[r][col] * inv
            if factor.is_zero:
                continue
            for cidx in range(col, n):
                m[r][cidx] = m[r][cidx] - factor * m[col][cidx]
    return det


def _newton_interp(xs: list[GaussRational], ys: list[GaussRational]) -> UniPoly:
    """Exact Newton interpolation through (xs[i], ys[i]) with distinct xs."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = UniPoly()
    basis = UniPoly([GR_ONE])
    for i in range(n):
        poly = poly + basis * coef[i]
        basis = basis * UniPoly([-xs[i], GR_ONE])
    return poly


def resultant_z2(f: BiPoly, g: BiPoly) -> UniPoly:
    """Exact Sylvester resultant Res_{z2}(f, g) as a polynomial in z1.

    Formal z2-degrees fix the matrix shape; the determinant is recovered by
    evaluating at integer z1 nodes and interpolating, which keeps every step
    inside Q(i).  Vanishes exactly where f and g share a z2-root or both
    leading z2-coefficients vanish.
    """
    if f.is_zero or g.is_zero:
        raise ZeroPolynomialError("resultant with a zero polynomial")
    df, dg = f.deg2, g.deg2
    if df < 1 and dg < 1:
        raise ValueError("resultant needs z2-degree >= 1 in at least one argument")
    fc = f.z2_coeffs()  # index = z2 power
    gc = g.z2_coeffs()
    d1f = max(f.deg1, 0)
    d1g = max(g.deg1, 0)
    bound = df * d1g + dg * d1f
    n = df + dg

    def node(k: int) -> GaussRational:
        # 0, 1, -1, 2, -2, ...
        if k == 0:
            return GR_ZERO
        half = (k + 1) // 2
        return GaussRational(half if k % 2 == 1 else -half)

    xs = [node(k) for k in range(bound + 1)]
    ys = []
    for t in xs:
        fv = [u.eval(t) for u in fc]  # ascending z2 powers
        gv = [u.eval(t) for u in gc]
        mat = [[GR_ZERO] * n for _ in range(n)]
        for row in range(dg):  # rows of f coefficients (descending powers)
            for j in range(df + 1):
                mat[row][row + j] = fv[df - j]
        for row in range(df):  # rows of g coefficients
            for j in range(dg + 1):
                mat[dg + row][row + j] = gv[dg - j]
        ys.append(_det_gauss(mat))
    return _newton_interp(xs, ys)


# ---------------------------------------------------------------------------
# JSON text format
# ---------------------------------------------------------------------------

VARS = ["z1", "z2"]


def poly_to_json(f: BiPoly) -> dict:
    """Lossless JSON form: coefficients as exact rational strings."""
    terms = []
    for (a, b) in sorted(f.terms):
        c = f.terms[(a, b)]
        terms.append({"a": a, "b": b, "re": str(c.re), "im": str(c.im)})
    return {"vars": list(VARS), "terms": terms}


def poly_from_json(obj) -> BiPoly:
    """Parse the shared polynomial text format; decimal strings convert exactly."""
    if not isinstance(obj, dict):
        raise PolyFormatError("polynomial must be a JSON object")
    vars_ = obj.get("vars", VARS)
    if vars_ != VARS:
        raise PolyFormatError(f"unsupported variable list {vars_!r}; expected {VARS}")
    raw = obj.get("terms")
    if not isinstance(raw, list):
        raise PolyFormatError('polynomial object needs a "terms" list')
    terms: dict[tuple[int, int], GaussRational] = {}
    for idx, t in enumerate(raw):
        if not isinstance(t, dict):
            raise PolyFormatError(f"term #{idx} is not an object: {t!r}")
        try:
            a, b = t["a"], t["b"]
        except KeyError as exc:
            raise PolyFormatError(f"term #{idx} is missing exponent {exc}") from None
        if not isinstance(a, int) or not isinstance(b, int) or a < 0 or b < 0:
            raise PolyFormatError(f"term #{idx} has bad exponents a={a!r} b={b!r}")
        if isinstance(t.get("re"), float) or isinstance(t.get("im"), float):
            raise PolyFormatError(
                f"term #{idx}: float coefficients are not exact; "
                'pass strings like "3/4" or "0.25"'
            )
        try:
            c = GaussRational.parse(t.get("re", 0), t.get("im", 0))
        except PolyFormatError as exc:
            raise PolyFormatError(f"term #{idx}: {exc}") from None
        key = (a, b)
        prev = terms.get(key, GR_ZERO) + c
        if prev.is_zero:
            terms.pop(key, None)
        else:
            terms[key] = prev
    return BiPoly(terms)


def ideal_from_json(obj) -> list[BiPoly]:
    """Parse an ideal file: {"generators": [poly, ...]} or a bare polynomial."""
    if isinstance(obj, dict) and "generators" in obj:
        gens = obj["generators"]
        if not isinstance(gens, list) or not gens:
            raise PolyFormatError('"generators" must be a nonempty list')
        return [poly_from_json(g) for g in gens]
    return [poly_from_json(obj)]


def load_poly(path: str) -> BiPoly:
    with open(path, "r", encoding="utf-8") as fh:
        return poly_from_json(json.load(fh))


def load_ideal(path: str) -> list[BiPoly]:
    with open(path, "r", encoding="utf-8") as fh:
        return ideal_from_json(json.load(fh))
