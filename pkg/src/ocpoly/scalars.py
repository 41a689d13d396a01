"""Ground-field scalars (exact rationals / tolerance-carrying floats) and
root finding for central, scalar-coefficient polynomials.

Scalars themselves are plain ``fractions.Fraction`` (exact mode) or ``float``
(real mode); a :class:`Field` instance carries the mode and the comparison
tolerance and does coercion, parsing and equality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import InvalidInput, NoConvergence, UnsupportedDegree

DEFAULT_EPS = 1e-9


@dataclass(frozen=True)
class Field:
    """Scalar mode: exact rational arithmetic or floats with tolerance eps."""

    exact: bool
    eps: float = DEFAULT_EPS

    def coerce(self, x):
        if isinstance(x, str):
            return self.parse(x)
        if self.exact:
            if isinstance(x, float) and not x.is_integer():
                raise InvalidInput(f"non-integral float {x!r} in exact mode")
            return Fraction(x)
        return float(x)

    def parse(self, text: str):
        """Parse a decimal or 'p/q' scalar literal."""
        text = text.strip()
        try:
            frac = Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            if not self.exact:
                try:
                    return float(text)
                except ValueError:
                    pass
            raise InvalidInput(f"bad scalar literal {text!r}") from exc
        return frac if self.exact else float(frac)

    def eq(self, a, b) -> bool:
        if self.exact:
            return a == b
        return abs(a - b) <= self.eps * max(1.0, abs(a), abs(b))

    def is_zero(self, a) -> bool:
        if self.exact:
            return a == 0
        return abs(a) <= self.eps

    def sqrt(self, a):
        if self.exact:
            raise InvalidInput("sqrt is a real-mode operation")
        return math.sqrt(a)

    def zero(self):
        return Fraction(0) if self.exact else 0.0

    def one(self):
        return Fraction(1) if self.exact else 1.0

    def to_json(self, a):
        return str(a) if self.exact else float(a)


EXACT = Field(exact=True)
REAL = Field(exact=False)


@dataclass(frozen=True)
class CentralPoly:
    """Polynomial with scalar coefficients, degree-ascending."""

    field: Field
    coeffs: tuple

    @classmethod
    def make(cls, field: Field, coeffs) -> "CentralPoly":
        cs = [field.coerce(c) for c in coeffs]
        while cs and field.is_zero(cs[-1]) and (field.exact or cs[-1] == 0):
            cs.pop()
        return cls(field, tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def eval(self, z):
        acc = 0 * z if self.coeffs else self.field.zero()
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for t, c in enumerate(self.coeffs):
            if self.field.is_zero(c) and self.field.exact:
                continue
            terms.append(f"({c})x^{t}" if t else f"({c})")
        return " + ".join(terms) or "0"


@dataclass(frozen=True)
class ClassCandidate:
    """A root candidate of a central polynomial: either a single central root
    r, or an irreducible quadratic factor x^2 - T x + N encoding a conjugacy
    class with trace T and norm N."""

    kind: str  # "central-root" | "quadratic-class"
    multiplicity: int = 1
    r: object = None
    T: object = None
    N: object = None

    @classmethod
    def central(cls, r, multiplicity=1):
        return cls("central-root", multiplicity, r=r)

    @classmethod
    def quadratic(cls, T, N, multiplicity=1):
        return cls("quadratic-class", multiplicity, T=T, N=N)


# ---------------------------------------------------------------------------
# Real-mode solver: Aberth-style simultaneous iteration.

_MAX_ITER = 1000
_RESTARTS = 4


def _aberth(coeffs: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """All complex roots of the polynomial with ascending float coefficients."""
    n = len(coeffs) - 1
    p = np.polynomial.Polynomial(coeffs)
    dp = p.deriv()
    scale = np.max(np.abs(coeffs))
    target = 1e-12 * max(1.0, scale)
    radius = 1.0 + np.max(np.abs(coeffs[:-1])) / abs(coeffs[-1])
    for attempt in range(_RESTARTS):
        phases = 2 * np.pi * (np.arange(n) / n + rng.uniform(0, 1))
        z = radius * (0.4 + 0.6 * rng.uniform(size=n) if attempt else 0.9) \
            * np.exp(1j * phases)
        for _ in range(_MAX_ITER):
            pv = p(z)
            if np.max(np.abs(pv)) < target:
                return z
            dv = dp(z)
            # Newton correction with a guard against p'(z) = 0
            bad = np.abs(dv) < 1e-300
            dv[bad] = 1.0
            w = pv / dv
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, np.inf)
            s = np.sum(1.0 / diff, axis=1)
            denom = 1.0 - w * s
            denom[np.abs(denom) < 1e-300] = 1.0
            z = z - w / denom
        # perturb and retry
    raise NoConvergence(f"Aberth solver failed for degree {n}")


def _cluster_real(candidates, field):
    """Merge candidates that coincide within tolerance, summing multiplicity."""
    merged = []
    for cand in candidates:
        for m in merged:
            if m.kind != cand.kind:
                continue
            if cand.kind == "central-root":
                if abs(m.r - cand.r) <= 1e-6 * (1.0 + abs(m.r)):
                    merged[merged.index(m)] = ClassCandidate.central(
                        m.r, m.multiplicity + cand.multiplicity)
                    break
            else:
                if (abs(m.T - cand.T) <= 1e-6 * (1.0 + abs(m.T))
                        and abs(m.N - cand.N) <= 1e-6 * (1.0 + abs(m.N))):
                    merged[merged.index(m)] = ClassCandidate.quadratic(
                        m.T, m.N, m.multiplicity + cand.multiplicity)
                    break
        else:
            merged.append(cand)
    return merged


def _central_roots_real(p: CentralPoly, seed: int) -> list:
    rng = np.random.default_rng(seed)
    coeffs = np.array([float(c) for c in p.coeffs])
    if p.degree == 0:
        return []
    roots = _aberth(coeffs, rng)
    scale = max(1.0, float(np.max(np.abs(roots))))
    # A root of multiplicity m is only located to ~(residual)^(1/m), so first
    # collapse nearby iterates into clusters; the cluster centroid cancels the
    # leading splitting error and is far more accurate than its members.
    cluster_tol = 1e-5 * scale
    remaining = list(roots)
    centers = []  # (centroid, multiplicity)
    while remaining:
        z = remaining.pop()
        group = [z]
        group += [w for w in remaining if abs(w - z) <= cluster_tol]
        remaining = [w for w in remaining if abs(w - z) > cluster_tol]
        centers.append((sum(group) / len(group), len(group)))

    pair_tol = 1e-8 * scale
    out = []
    used = [False] * len(centers)
    for idx, (z, mult) in enumerate(centers):
        if used[idx]:
            continue
        used[idx] = True
        if abs(z.imag) <= pair_tol:
            out.append(ClassCandidate.central(float(z.real), mult))
            continue
        best, bestd = None, np.inf
        for jdx, (w, wmult) in enumerate(centers):
            if used[jdx] or wmult != mult:
                continue
            d = abs(w - np.conj(z))
            if d < bestd:
                best, bestd = jdx, d
        if best is None or bestd > pair_tol:
            # unpaired complex root: record the class of (z, conj z) anyway;
            # with real coefficients this only happens from noise
            out.append(ClassCandidate.quadratic(float(2 * z.real), float(abs(z) ** 2), mult))
            continue
        used[best] = True
        zz = 0.5 * (z + np.conj(centers[best][0]))
        out.append(ClassCandidate.quadratic(float(2 * zz.real), float(abs(zz) ** 2), mult))
    return _cluster_real(out, p.field)


def _central_roots_exact(p: CentralPoly) -> list:
    import sympy

    if p.degree > 4:
        raise UnsupportedDegree(
            f"exact mode supports degree <= 4, got {p.degree}")
    x = sympy.Symbol("x")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * x ** t
               for t, c in enumerate(p.coeffs))
    _, factors = sympy.factor_list(sympy.Poly(expr, x, domain="QQ"))
    out = []
    for fac, mult in factors:
        fac = sympy.Poly(fac, x)
        cs = [Fraction(int(c.p), int(c.q)) for c in reversed(fac.all_coeffs())]
        if fac.degree() == 1:
            out.append(ClassCandidate.central(-cs[0] / cs[1], mult))
        elif fac.degree() == 2:
            T = -cs[1] / cs[2]
            N = cs[0] / cs[2]
            out.append(ClassCandidate.quadratic(T, N, mult))
        else:
            raise UnsupportedDegree(
                f"irreducible factor of degree {fac.degree()} over Q; "
                "no rational conjugacy-class data")
    return out


def central_roots(p: CentralPoly, seed: int = 0) -> list:
    """Root candidates of a central polynomial: real roots as central-root
    entries, conjugate pairs merged into quadratic-class (T, N) entries."""
    if p.is_zero():
        raise InvalidInput("zero polynomial has no well-defined root set")
    if p.field.exact:
        return _central_roots_exact(p)
    return _central_roots_real(p, seed)
