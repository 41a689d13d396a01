"""Parametric quaternion/octonion arithmetic via Cayley doubling.

Elements are 8-vectors over the ground field w.r.t. the ordered basis
(1, i, j, k, l, il, jl, kl) with i^2 = alpha, j^2 = beta, ij = -ji = k and
l^2 = gamma.  Multiplication is generated from the doubling rule

    (q + r*l)(s + t*l) = q s + gamma * conj(t) r + (t q + r conj(s)) l,

applied recursively, so the structure constants are never hand-entered.
"""

from __future__ import annotations

import functools
import random
import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import (DegenerateCommutative, InvalidInput, NotConjugate,
                     NotInvertible, ParseError, WitnessFailure)
from .scalars import EXACT, REAL, Field

BASIS_NAMES = ("1", "i", "j", "k", "l", "il", "jl", "kl")


@dataclass(frozen=True)
class AlgebraParams:
    """Structure constants of the algebra: i^2=alpha, j^2=beta, l^2=gamma."""

    field: Field
    alpha: object
    beta: object
    gamma: object

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma"):
            object.__setattr__(self, name, self.field.coerce(getattr(self, name)))
        if any(self.field.is_zero(getattr(self, n))
               for n in ("alpha", "beta", "gamma")):
            raise InvalidInput("structure constants must be nonzero")

    @classmethod
    def octonions(cls, field: Field = REAL) -> "AlgebraParams":
        """The standard instance (-1, -1, -1): H and O."""
        return cls(field, -1, -1, -1)

    @property
    def gammas(self):
        return (self.alpha, self.beta, self.gamma)


def _cd_conj(x: tuple) -> tuple:
    if len(x) == 1:
        return x
    h = len(x) // 2
    return _cd_conj(x[:h]) + tuple(-c for c in x[h:])


def _cd_mul(x: tuple, y: tuple, gammas) -> tuple:
    if len(x) == 1:
        return (x[0] * y[0],)
    h = len(x) // 2
    g = gammas[len(gammas) - 1]
    gs = gammas[:-1]
    q, r = x[:h], x[h:]
    s, t = y[:h], y[h:]
    top1 = _cd_mul(q, s, gs)
    top2 = _cd_mul(_cd_conj(t), r, gs)
    bot1 = _cd_mul(t, q, gs)
    bot2 = _cd_mul(r, _cd_conj(s), gs)
    return (tuple(a + g * b for a, b in zip(top1, top2))
            + tuple(a + b for a, b in zip(bot1, bot2)))


@functools.lru_cache(maxsize=32)
def _norm_diag(params: "AlgebraParams") -> tuple:
    """Diagonal of the norm form: norm(sum c_a e_a) = sum diag[a] * c_a^2."""
    diag = []
    for a in range(8):
        e = [params.field.zero()] * 8
        e[a] = params.field.one()
        prod = _cd_mul(tuple(e), _cd_conj(tuple(e)), params.gammas)
        diag.append(prod[0])
    return tuple(diag)


@functools.lru_cache(maxsize=32)
def mult_table(params: "AlgebraParams"):
    """(index, coefficient) arrays with e_a e_b = val[a,b] * e_{idx[a,b]}."""
    idx = np.zeros((8, 8), dtype=np.int64)
    val = np.zeros((8, 8), dtype=np.float64)
    one = params.field.one()
    zero = params.field.zero()
    for a in range(8):
        for b in range(8):
            ea = [zero] * 8
            eb = [zero] * 8
            ea[a] = one
            eb[b] = one
            prod = _cd_mul(tuple(ea), tuple(eb), params.gammas)
            nz = [c for c, v in enumerate(prod) if v != 0]
            assert len(nz) == 1, "basis product must be a single monomial"
            idx[a, b] = nz[0]
            val[a, b] = float(prod[nz[0]])
    return idx, val


@dataclass(frozen=True)
class Octonion:
    """Immutable element of the algebra defined by ``params``."""

    coords: tuple
    params: AlgebraParams

    # -- constructors -------------------------------------------------------

    @classmethod
    def make(cls, params: AlgebraParams, coords) -> "Octonion":
        cs = list(coords)
        if len(cs) > 8 or not cs:
            raise InvalidInput(f"need 1..8 coordinates, got {len(cs)}")
        cs += [0] * (8 - len(cs))
        return cls(tuple(params.field.coerce(c) for c in cs), params)

    @classmethod
    def zero(cls, params: AlgebraParams) -> "Octonion":
        return cls.make(params, [0])

    @classmethod
    def one(cls, params: AlgebraParams) -> "Octonion":
        return cls.make(params, [1])

    @classmethod
    def scalar(cls, params: AlgebraParams, s) -> "Octonion":
        return cls.make(params, [s])

    @classmethod
    def basis(cls, params: AlgebraParams, a: int) -> "Octonion":
        coords = [0] * 8
        coords[a] = 1
        return cls.make(params, coords)

    # -- ring operations ----------------------------------------------------

    def _check(self, other: "Octonion"):
        if self.params != other.params:
            raise InvalidInput("operands live in different algebras")

    def __add__(self, other):
        if isinstance(other, Octonion):
            self._check(other)
            return Octonion(tuple(a + b for a, b in
                                  zip(self.coords, other.coords)), self.params)
        return self + Octonion.scalar(self.params, other)

    __radd__ = __add__

    def __neg__(self):
        return Octonion(tuple(-a for a in self.coords), self.params)

    def __sub__(self, other):
        if not isinstance(other, Octonion):
            other = Octonion.scalar(self.params, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Octonion):
            self._check(other)
            return Octonion(_cd_mul(self.coords, other.coords,
                                    self.params.gammas), self.params)
        s = self.params.field.coerce(other)
        return Octonion(tuple(a * s for a in self.coords), self.params)

    def __rmul__(self, other):
        # scalar * octonion (scalars are central)
        return self * other

    def __truediv__(self, s):
        s = self.params.field.coerce(s)
        return Octonion(tuple(a / s for a in self.coords), self.params)

    # -- involution, trace, norm -------------------------------------------

    def conj(self) -> "Octonion":
        return Octonion(_cd_conj(self.coords), self.params)

    def trace(self):
        return 2 * self.coords[0]

    def re(self):
        return self.coords[0]

    def im(self) -> "Octonion":
        return Octonion((self.params.field.zero(),) + self.coords[1:],
                        self.params)

    def norm(self):
        diag = _norm_diag(self.params)
        return sum(d * c * c for d, c in zip(diag, self.coords))

    def abs(self) -> float:
        return self.params.field.sqrt(self.norm())

    def inverse(self) -> "Octonion":
        n = self.norm()
        if self.params.field.is_zero(n):
            raise NotInvertible("zero or isotropic element")
        return self.conj() / n

    def commutator(self, other: "Octonion") -> "Octonion":
        return self * other - other * self

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        f = self.params.field
        return all(f.is_zero(c) for c in self.coords)

    def is_central(self) -> bool:
        return self.im().is_zero()

    def isclose(self, other: "Octonion", tol: float | None = None) -> bool:
        self._check(other)
        f = self.params.field
        if f.exact:
            return self.coords == other.coords
        tol = f.eps if tol is None else tol
        scale = max(1.0, max(abs(c) for c in self.coords),
                    max(abs(c) for c in other.coords))
        return all(abs(a - b) <= tol * scale
                   for a, b in zip(self.coords, other.coords))

    # -- formatting ---------------------------------------------------------

    def __str__(self) -> str:
        return format_octonion(self)

    def to_json(self):
        f = self.params.field
        return [f.to_json(c) for c in self.coords]

    @classmethod
    def from_json(cls, data, params: "AlgebraParams") -> "Octonion":
        try:
            coords = [params.field.coerce(v) for v in data]
        except (TypeError, ValueError) as exc:
            raise ParseError(f"bad element JSON: {exc}") from exc
        return cls.make(params, coords)


def polar_form(x: Octonion, y: Octonion):
    """Polar bilinear form of the norm: b(x,y) = norm(x+y)-norm(x)-norm(y)."""
    x._check(y)
    diag = _norm_diag(x.params)
    return sum(2 * d * a * b for d, a, b in zip(diag, x.coords, y.coords))


# ---------------------------------------------------------------------------
# Parsing / formatting of the element text format
# "c0 + c1 i + c2 j + c3 k + c4 l + c5 il + c6 jl + c7 kl".

_TERM_RE = re.compile(
    r"\s*(?P<sign>[+-])?\s*"
    r"(?P<coeff>\d+/\d+|\d+(?:\.\d+)?(?:[eE][+-]?\d+)?)?\s*"
    r"(?:\*\s*)?(?P<basis>il|jl|kl|ij|[ijkl1])?\s*")


def parse_octonion(text: str, params: AlgebraParams) -> Octonion:
    """Parse the element text format; zero terms may be omitted, 'ij' is an
    accepted alias for 'k'."""
    coords = [params.field.zero()] * 8
    pos = 0
    text = text.strip()
    if not text:
        raise ParseError("empty element")
    seen = False
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if not m or m.end() == pos or (m.group("coeff") is None
                                       and m.group("basis") is None):
            raise ParseError(f"bad element syntax at column {pos}: {text!r}")
        sign = -1 if m.group("sign") == "-" else 1
        if m.group("sign") is None and seen:
            raise ParseError(f"missing +/- at column {pos}: {text!r}")
        coeff = params.field.one() if m.group("coeff") is None \
            else params.field.parse(m.group("coeff"))
        basis = m.group("basis") or "1"
        if basis == "ij":
            basis = "k"
        a = BASIS_NAMES.index(basis)
        coords[a] = coords[a] + sign * coeff
        pos = m.end()
        seen = True
    return Octonion.make(params, coords)


def format_octonion(x: Octonion) -> str:
    f = x.params.field
    parts = []
    for a, c in enumerate(x.coords):
        if f.exact and c == 0:
            continue
        if not f.exact and c == 0.0:
            continue
        mag = abs(c)
        s = "-" if c < 0 else "+"
        if a == 0:
            body = str(mag)
        elif mag == 1:
            body = BASIS_NAMES[a]
        else:
            body = f"{mag} {BASIS_NAMES[a]}"
        parts.append((s, body))
    if not parts:
        return "0"
    first_sign, first_body = parts[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for s, body in parts[1:]:
        out += f" {s} {body}"
    return out


# ---------------------------------------------------------------------------
# Exact nullspace (Gauss-Jordan over Fraction)

def _nullspace_exact(rows: list) -> list:
    """Basis of the right nullspace of a matrix with Fraction entries."""
    m = [list(r) for r in rows]
    nrows, ncols = len(m), len(m[0])
    pivots = []
    prow = 0
    for col in range(ncols):
        piv = next((r for r in range(prow, nrows) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[prow], m[piv] = m[piv], m[prow]
        inv = Fraction(1) / m[prow][col]
        m[prow] = [v * inv for v in m[prow]]
        for r in range(nrows):
            if r != prow and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [v - factor * w for v, w in zip(m[r], m[prow])]
        pivots.append(col)
        prow += 1
        if prow == nrows:
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for prow_i, pc in enumerate(pivots):
            vec[pc] = -m[prow_i][fc]
        basis.append(vec)
    return basis


def _nullspace_real(rows: list) -> list:
    a = np.array(rows, dtype=np.float64)
    _, s, vt = np.linalg.svd(a)
    smax = s[0] if len(s) else 0.0
    rank = int(np.sum(s > 1e-10 * max(1.0, smax)))
    return [list(vt[r]) for r in range(rank, vt.shape[0])]


def conjugating_element(lam: Octonion, mu: Octonion, seed: int = 0) -> Octonion:
    """A trace-zero invertible delta with delta*lam = mu*delta, i.e.
    mu = delta lam delta^{-1}.  Exists whenever lam and mu share trace and
    norm over a division algebra."""
    lam._check(mu)
    params = lam.params
    f = params.field
    if not (f.eq(lam.trace(), mu.trace()) and f.eq(lam.norm(), mu.norm())):
        raise NotConjugate("trace or norm mismatch")
    if lam.is_central():
        if lam.isclose(mu):
            return Octonion.basis(params, 1)
        raise NotConjugate("central element conjugates only to itself")
    # unknowns: coords 1..7 of delta (trace zero); equations: delta*lam-mu*delta=0
    cols = []
    for b in range(1, 8):
        e = Octonion.basis(params, b)
        cols.append((e * lam - mu * e).coords)
    rows = [[cols[b][r] for b in range(7)] for r in range(8)]
    basis = _nullspace_exact(rows) if f.exact else _nullspace_real(rows)
    if not basis:
        raise WitnessFailure("conjugation system has trivial nullspace")

    def embed(vec) -> Octonion:
        return Octonion.make(params, [0] + list(vec))

    candidates = [embed(v) for v in basis]
    best = max(candidates, key=lambda d: abs(float(d.norm())))
    if f.is_zero(best.norm()):
        rng = random.Random(seed)
        for _ in range(64):
            combo = Octonion.zero(params)
            for c in candidates:
                w = Fraction(rng.randint(-5, 5)) if f.exact \
                    else rng.uniform(-1, 1)
                combo = combo + c * w
            if not f.is_zero(combo.norm()):
                best = combo
                break
        else:
            raise WitnessFailure("no anisotropic conjugator found; "
                                 "is the algebra split?")
    if not (best * lam).isclose(mu * best, tol=1e-7):
        raise WitnessFailure("conjugation residual too large")
    return best


# ---------------------------------------------------------------------------
# Quaternion subalgebra containing two given elements

@dataclass(frozen=True)
class QuatSubalgebra:
    """A quaternion subalgebra Q = span(1, u, v, uv) plus a doubling unit
    ell orthogonal to Q, so that the ambient algebra is Q + Q*ell with
    ell^2 = gamma_eff."""

    basis: tuple  # (1, u, v, uv)
    ell: Octonion
    gamma_eff: object

    @property
    def params(self) -> AlgebraParams:
        return self.ell.params

    def element(self, cs) -> Octonion:
        out = Octonion.zero(self.params)
        for c, e in zip(cs, self.basis):
            out = out + e * self.params.field.coerce(c)
        return out

    def project_coeffs(self, x: Octonion) -> list:
        return [polar_form(x, e) / polar_form(e, e) for e in self.basis]

    def project(self, x: Octonion) -> Octonion:
        return self.element(self.project_coeffs(x))

    def complement(self, x: Octonion) -> Octonion:
        return x - self.project(x)

    def contains(self, x: Octonion, tol: float = 1e-8) -> bool:
        rem = self.complement(x)
        if self.params.field.exact:
            return rem.is_zero()
        return float(rem.norm()) <= tol


def _orthogonalize(x: Octonion, against: list) -> Octonion:
    for e in against:
        x = x - e * (polar_form(x, e) / polar_form(e, e))
    return x


def _unit(x: Octonion) -> Octonion:
    if x.params.field.exact:
        return x
    return x / x.abs()


def quat_subalgebra_containing(E: Octonion, G: Octonion) -> QuatSubalgebra:
    """A quaternion subalgebra Q containing E and G, with a doubling unit.

    In real mode u, v and ell are normalized; in exact mode vectors are kept
    unnormalized (square roots leave Q) and gamma_eff records ell^2.
    """
    E._check(G)
    params = E.params
    f = params.field
    im_e, im_g = E.im(), G.im()
    if im_e.is_zero() and im_g.is_zero():
        raise DegenerateCommutative("both elements are central")
    u = im_e if not im_e.is_zero() else im_g
    u = _unit(u)
    v = _orthogonalize(im_g, [u])
    if v.is_zero() or f.is_zero(v.norm()):
        for a in range(1, 8):
            cand = _orthogonalize(Octonion.basis(params, a), [u])
            if not cand.is_zero() and not f.is_zero(cand.norm()):
                v = cand
                break
        else:
            raise WitnessFailure("no anisotropic complement to u found")
    v = _unit(v)
    uv = u * v
    one = Octonion.one(params)
    span = [one, u, v, uv]
    ell = None
    for a in range(1, 8):
        cand = _orthogonalize(Octonion.basis(params, a), span)
        if not cand.is_zero() and not f.is_zero(cand.norm()):
            ell = _unit(cand)
            break
    if ell is None:
        raise WitnessFailure("no anisotropic doubling unit found")
    gamma_eff = (ell * ell).re()
    return QuatSubalgebra(basis=tuple(span), ell=ell, gamma_eff=gamma_eff)


def random_octonion(params: AlgebraParams, rng, span: int = 4) -> Octonion:
    """Random element: small integers in exact mode, uniforms in real mode."""
    if params.field.exact:
        return Octonion.make(params,
                             [Fraction(rng.randint(-span, span))
                              for _ in range(8)])
    return Octonion.make(params, [rng.uniform(-span, span) for _ in range(8)])
