"""Root computation via conjugacy-class reduction, and the machinery for the
root sets of right/left scalar multiples (RMR / LMR).

On a fixed conjugacy class (trace T, norm N) the relation
lam^2 = T*lam - N collapses f(lam) = 0 to a linear equation
E*lam + G = 0; the class either contributes the single point
-E^{-1} G, or (E = G = 0) lies entirely in the root set.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from .algebra import (Octonion, QuatSubalgebra, conjugating_element,
                      polar_form, quat_subalgebra_containing)
from .errors import (InvalidInput, ModeMismatch, NotInRMR, WholeClass)
from .opoly import OPolynomial
from .scalars import central_roots


@dataclass(frozen=True)
class ConjClass:
    """Conjugacy class encoded by trace and norm; central classes are the
    singletons {r} with T = 2r, N = r^2."""

    T: object
    N: object
    central: bool = False

    @property
    def r(self):
        if not self.central:
            raise InvalidInput("not a central class")
        return self.T / 2

    def matches(self, mu: Octonion, tol: float = 1e-8) -> bool:
        f = mu.params.field
        if f.exact:
            return mu.trace() == self.T and mu.norm() == self.N
        scale = max(1.0, abs(self.T), abs(self.N))
        return (abs(mu.trace() - self.T) <= tol * scale
                and abs(mu.norm() - self.N) <= tol * scale)

    def to_json(self, f):
        return {"T": f.to_json(self.T), "N": f.to_json(self.N),
                "central": self.central}


def _classes_of(p: OPolynomial, seed: int = 0) -> list:
    """Conjugacy classes of the companion polynomial's roots."""
    out = []
    for cand in central_roots(p.companion(), seed=seed):
        if cand.kind == "central-root":
            out.append(ConjClass(T=2 * cand.r, N=cand.r * cand.r, central=True))
        else:
            out.append(ConjClass(T=cand.T, N=cand.N))
    return out


@dataclass(frozen=True)
class LinearReduction:
    E: Octonion
    G: Octonion
    cls: ConjClass


def reduce_linear(f: OPolynomial, cls: ConjClass) -> LinearReduction:
    """E, G with f(lam) = E*lam + G for every lam of trace T and norm N.

    Uses the central recursion lam^{t+1} = (T p_t + q_t) lam - N p_t with
    lam^t = p_t lam + q_t.
    """
    fld = f.params.field
    T, N = fld.coerce(cls.T), fld.coerce(cls.N)
    p, q = fld.zero(), fld.one()   # lam^0 = 0*lam + 1
    E = Octonion.zero(f.params)
    G = Octonion.zero(f.params)
    for a in f.coeffs:
        E = E + a * p
        G = G + a * q
        p, q = T * p + q, -N * p
    return LinearReduction(E=E, G=G, cls=cls)


@dataclass(frozen=True)
class RootSet:
    isolated: tuple       # of (Octonion, ConjClass)
    spherical: tuple      # of ConjClass
    anomalies: tuple      # of (ConjClass, reason)

    def to_json(self, fld) -> dict:
        return {
            "isolated": [{"root": lam.to_json(), "class": c.to_json(fld)}
                         for lam, c in self.isolated],
            "spherical": [c.to_json(fld) for c in self.spherical],
            "anomalies": [{"class": c.to_json(fld), "reason": reason}
                          for c, reason in self.anomalies],
        }


def _residual_tol(f: OPolynomial) -> float:
    scale = max([1.0] + [abs(v) for c in f.coeffs for v in c.coords])
    return 1e-8 * scale


def _negligible(x: Octonion, f: OPolynomial) -> bool:
    """Zero test for E/G of a linear reduction: class data carries the
    root-finder's error, so the threshold is looser than element equality."""
    if f.params.field.exact:
        return x.is_zero()
    scale = max([1.0] + [abs(v) for c in f.coeffs for v in c.coords])
    return float(x.norm()) <= (1e-6 * scale) ** 2


def roots(f: OPolynomial, seed: int = 0) -> RootSet:
    """The root set of f, organized by companion conjugacy class."""
    if f.is_zero() or f.degree < 1:
        raise InvalidInput("need a nonzero polynomial of degree >= 1")
    fld = f.params.field
    tol = _residual_tol(f)
    isolated, spherical, anomalies = [], [], []
    for cls in _classes_of(f, seed=seed):
        if cls.central:
            lam = Octonion.scalar(f.params, cls.r)
            val = f.eval(lam)
            if (val.is_zero() if fld.exact else float(val.norm()) <= tol ** 2):
                isolated.append((lam, cls))
            else:
                anomalies.append((cls, "central candidate fails evaluation"))
            continue
        red = reduce_linear(f, cls)
        e_zero = _negligible(red.E, f)
        g_zero = _negligible(red.G, f)
        if e_zero and g_zero:
            spherical.append(cls)
            continue
        if e_zero:
            anomalies.append((cls, "E = 0 but G != 0"))
            continue
        lam = -(red.E.inverse() * red.G)
        ok = cls.matches(lam)
        val = f.eval(lam)
        ok = ok and (val.is_zero() if fld.exact
                     else float(val.norm()) <= tol ** 2)
        if ok:
            isolated.append((lam, cls))
        else:
            anomalies.append((cls, "candidate -E^-1 G fails verification"))
    return RootSet(tuple(isolated), tuple(spherical), tuple(anomalies))


# ---------------------------------------------------------------------------
# RMR: roots of right scalar multiples

def rmr_classes(f: OPolynomial, seed: int = 0) -> list:
    return _classes_of(f, seed=seed)


def rmr_contains(f: OPolynomial, mu: Octonion, seed: int = 0) -> bool:
    return any(c.matches(mu) for c in rmr_classes(f, seed=seed))


def rmr_witness(f: OPolynomial, mu: Octonion, seed: int = 0) -> Octonion:
    """A scalar c such that mu is a root of f(x)*c.

    For an isolated root lam conjugate to mu, c = delta^{-1} where delta is a
    trace-zero conjugator with mu = delta lam delta^{-1}.
    """
    rs = roots(f, seed=seed)
    for cls in rs.spherical:
        if cls.matches(mu):
            return Octonion.one(f.params)
    for lam, cls in rs.isolated:
        if cls.matches(mu):
            if lam.isclose(mu):
                return Octonion.one(f.params)
            delta = conjugating_element(lam, mu, seed=seed)
            c = delta.inverse()
            val = f.scale_right(c).eval(mu)
            if not (val.is_zero() if f.params.field.exact
                    else float(val.norm()) <= (_residual_tol(f) * 10) ** 2):
                raise NotInRMR("witness verification failed")
            return c
    raise NotInRMR("element matches no root class of f")


def multiple_root(f: OPolynomial, cls: ConjClass, c: Octonion,
                  side: str) -> Octonion:
    """The root, inside the given class, of f(x)*c (side='right') or of
    c*f(x) (side='left'); bracketing follows the reduction identities."""
    red = reduce_linear(f, cls)
    if _negligible(red.E, f):
        raise WholeClass("E = 0: the whole class consists of roots")
    Einv = red.E.inverse()
    cinv = c.inverse()
    if side == "right":
        return -((cinv * Einv) * (red.G * c))
    if side == "left":
        return -((Einv * cinv) * (c * red.G))
    raise InvalidInput("side must be 'left' or 'right'")


# ---------------------------------------------------------------------------
# LMR: roots of left scalar multiples

@dataclass(frozen=True)
class LMRClassDescription:
    cls: ConjClass
    kind: str  # "whole-class" | "single-point" | "parametrized"
    E: Octonion | None = None
    G: Octonion | None = None
    point: Octonion | None = None
    Q: QuatSubalgebra | None = None
    e_inv_g: Octonion | None = None
    g_e_inv: Octonion | None = None
    comm_norm: object = None  # norm([conj(G), E^-1])

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        if self.point is not None:
            out["point"] = self.point.to_json()
            out["class"] = self.cls.to_json(self.point.params.field)
        if self.e_inv_g is not None:
            fld = self.e_inv_g.params.field
            out["class"] = self.cls.to_json(fld)
            out["EinvG"] = self.e_inv_g.to_json()
            out["GEinv"] = self.g_e_inv.to_json()
            out["commNorm"] = fld.to_json(self.comm_norm)
        return out


def lmr_describe_class(f: OPolynomial, cls: ConjClass) -> LMRClassDescription:
    """LMR description of one conjugacy class."""
    if cls.central:
        lam = Octonion.scalar(f.params, cls.r)
        return LMRClassDescription(cls=cls, kind="single-point", point=lam)
    red = reduce_linear(f, cls)
    if _negligible(red.E, f):
        return LMRClassDescription(cls=cls, kind="whole-class",
                                   E=red.E, G=red.G)
    Einv = red.E.inverse()
    comm = red.G.conj().commutator(Einv)
    e_inv_g = Einv * red.G
    g_e_inv = red.G * Einv
    if _negligible(comm, f):
        return LMRClassDescription(cls=cls, kind="single-point",
                                   E=red.E, G=red.G, point=-e_inv_g)
    Q = quat_subalgebra_containing(red.E, red.G)
    return LMRClassDescription(cls=cls, kind="parametrized", E=red.E,
                               G=red.G, Q=Q, e_inv_g=e_inv_g,
                               g_e_inv=g_e_inv, comm_norm=comm.norm())


def lmr_describe(f: OPolynomial, seed: int = 0) -> list:
    return [lmr_describe_class(f, cls) for cls in _classes_of(f, seed=seed)]


def _draw_q_pair(desc: LMRClassDescription, rng):
    """Random (a, b) in Q x Q, not both zero."""
    fld = desc.Q.params.field
    while True:
        if fld.exact:
            from fractions import Fraction
            cs = [Fraction(rng.randint(-4, 4)) for _ in range(8)]
        else:
            cs = [rng.uniform(-2, 2) for _ in range(8)]
        a = desc.Q.element(cs[:4])
        b = desc.Q.element(cs[4:])
        c = a + b * desc.Q.ell
        if not fld.is_zero(c.norm()):
            return a, b


def lmr_point(desc: LMRClassDescription, a: Octonion, b: Octonion) -> Octonion:
    """The LMR point generated by c = a + b*ell, a, b in Q:

    -1/norm(c) * (norm(a) E^-1 G - gamma norm(b) G E^-1
                  + (b [conj(G), E^-1] conj(a)) ell).
    """
    if desc.kind != "parametrized":
        raise InvalidInput("point formula needs a parametrized class")
    Q = desc.Q
    c = a + b * Q.ell
    n = c.norm()
    comm = desc.G.conj().commutator(desc.E.inverse())
    core = (desc.e_inv_g * a.norm()
            - desc.g_e_inv * (Q.gamma_eff * b.norm())
            + ((b * (comm * a.conj())) * Q.ell))
    return -(core / n)


def lmr_sample_detailed(desc: LMRClassDescription, count: int,
                        seed: int = 0) -> list:
    """count tuples (a, b, c, point) drawn with a seeded RNG."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        a, b = _draw_q_pair(desc, rng)
        out.append((a, b, a + b * desc.Q.ell, lmr_point(desc, a, b)))
    return out


def lmr_sample(desc: LMRClassDescription, count: int, seed: int = 0) -> list:
    if desc.kind == "single-point":
        return [desc.point] * count
    if desc.kind == "whole-class":
        raise InvalidInput("whole-class descriptions are sampled by "
                           "sampling the conjugacy class itself")
    return [p for _, _, _, p in lmr_sample_detailed(desc, count, seed)]


def lmr_contains(desc: LMRClassDescription, mu: Octonion) -> bool:
    """Membership test in the simplified real-mode parametrization
    {-x E^-1 G + (x-1) G E^-1 + z*ell : 0 <= x <= 1,
     norm(z) = x(1-x) norm([conj(G), E^-1])}."""
    fld = mu.params.field
    if fld.exact:
        raise ModeMismatch("lmr_contains is a real-mode operation")
    eps = max(fld.eps, 1e-9)
    if desc.kind == "whole-class":
        return desc.cls.matches(mu)
    if desc.kind == "single-point":
        return desc.point.isclose(mu, tol=1e-7)
    if not desc.cls.matches(mu):
        return False
    Q = desc.Q
    u = Q.project(mu)
    w = mu - u
    # u = x*(GE^-1 - E^-1 G) - GE^-1, solved by least squares in x
    d = desc.g_e_inv - desc.e_inv_g
    rhs = u + desc.g_e_inv
    dd = polar_form(d, d)
    if fld.is_zero(dd):
        return False
    x = polar_form(rhs, d) / dd
    resid = rhs - d * x
    scale = max(1.0, float(mu.norm()), float(desc.comm_norm))
    if float(resid.norm()) > (1e-6 * scale) ** 2:
        return False
    if x < -eps or x > 1 + eps:
        return False
    target = x * (1 - x) * desc.comm_norm
    return abs(float(w.norm()) - float(target)) <= 1e-6 * scale


def class_member(cls: ConjClass, params, rng) -> Octonion:
    """Random member of a (real-mode) conjugacy class: T/2 + rho*u with u a
    random unit pure-imaginary direction and rho^2 = N - T^2/4."""
    fld = params.field
    if cls.central:
        return Octonion.scalar(params, cls.r)
    if fld.exact:
        raise ModeMismatch("random class members need real mode")
    disc = float(cls.N) - float(cls.T) ** 2 / 4
    if disc < 0:
        raise InvalidInput("isotropic class in real mode")
    while True:
        dirv = Octonion.make(params, [0] + [rng.uniform(-1, 1)
                                            for _ in range(7)])
        n = float(dirv.norm())
        if n > 1e-6:
            break
    u = dirv / dirv.abs()
    return Octonion.scalar(params, cls.T / 2) + u * (disc ** 0.5)
