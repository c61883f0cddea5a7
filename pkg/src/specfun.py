"""
Numerical special functions.

Complex gamma, generalized hypergeometric series, Gauss 2F1 on (-inf, 1),
Meijer G by its hypergeometric expansion (series route) and by the inverse
Mellin integral (contour route), Jacobi polynomials and explicit solid
harmonic bases for d <= 3.
"""

import cmath
import logging
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy import integrate
from scipy.special import loggamma as sp_loggamma

from errors import (
    DivergentSeries,
    NoAdmissibleContour,
    PoleError,
    RegionError,
    SlowDecay,
    UndefinedAtOne,
    UnsupportedDimension,
)
from gammafn import gamma, loggamma, rgamma
from gfun import (
    GSpec,
    HypSpec,
    classify,
    ensure_valid,
    integer_b_pairs,
    invert_argument,
    mellin_kernel,
    to_hyp_expansion,
)
from params import Param, ParamLike

logger = logging.getLogger(__name__)

EPS = 2.220446049250313e-16
SERIES_TOL = 1e-16
SERIES_MAX_TERMS = 200000
PERTURBATION = 1e-6
TRAPEZOID_STEP = 0.05

__all__ = [
    "EvalResult",
    "gamma_complex",
    "hyp_pfq",
    "hyp_2f1",
    "meijer_g_series",
    "meijer_g_contour",
    "meijer_g",
    "mellin_kernel",
    "jacobi_poly",
    "harmonic_dimension",
    "harmonic_basis",
    "sphere_rule",
    "SolidHarmonic",
    "HarmonicBasis",
]


@dataclass(frozen=True)
class EvalResult:
    """
    A numerical value with its error estimate and the route that produced it:
    "series", "contour" or "perturbed-series" for special functions,
    "quadrature" for the integral oracles.
    """

    value: complex
    est_abs_error: float
    route: str
    flags: Tuple[str, ...] = ()

    @property
    def real(self) -> float:
        return float(np.real(self.value))

    def flagged(self, *flags: str) -> "EvalResult":
        return EvalResult(self.value, self.est_abs_error, self.route, self.flags + flags)


def gamma_complex(z: complex) -> EvalResult:
    """
    Gamma(z) by the Lanczos approximation.

    Raises:
        PoleError: at non-positive integers
    """
    value = complex(gamma(complex(z)))
    return EvalResult(value, 1e-13 * abs(value), "series")


# ----------------------------------------------------------------------
# hypergeometric series
# ----------------------------------------------------------------------


def _is_nonpositive_int(z: complex) -> bool:
    return z.imag == 0 and z.real <= 0 and z.real == round(z.real)


def _pfq_series(
    upper: Sequence[complex],
    lower: Sequence[complex],
    z: complex,
    regularized: bool,
) -> Tuple[complex, float]:
    """Sum of pFq (or its regularized form) at z; returns (value, abs error)."""
    if len(upper) == len(lower) + 1 and abs(z) >= 1:
        raise DivergentSeries(f"p = q+1 series diverges at |r| = {abs(z):g} >= 1")
    if not regularized:
        for c in lower:
            if _is_nonpositive_int(c):
                raise PoleError(f"lower parameter {c.real:g} is a non-positive integer")
    start = 0
    if regularized:
        for c in lower:
            if _is_nonpositive_int(c):
                start = max(start, 1 - int(round(c.real)))
    # the first nonzero term
    term = complex(z) ** start / factorial(start)
    for c in upper:
        for j in range(start):
            term *= c + j
    if regularized:
        for c in lower:
            term *= rgamma(c + start)
    if term == 0:
        return 0j, 0.0

    total = 0j
    biggest = 0.0
    small_run = 0
    k = start
    while True:
        total += term
        biggest = max(biggest, abs(term))
        if abs(term) <= SERIES_TOL * abs(total):
            small_run += 1
            if small_run >= 3:
                break
        else:
            small_run = 0
        ratio = z / (k + 1)
        for c in upper:
            ratio *= c + k
        for c in lower:
            ratio /= c + k
        term *= ratio
        k += 1
        if term == 0:
            break
        if k - start > SERIES_MAX_TERMS:
            raise DivergentSeries(
                f"series did not converge within {SERIES_MAX_TERMS} terms at r = {z}"
            )
    error = EPS * biggest * math.sqrt(k - start + 1) + abs(term)
    return total, error


def hyp_pfq(h: HypSpec, r: complex) -> EvalResult:
    """
    Evaluate coeff * pFq(upper; lower | sign * r) by its defining series.

    Args:
        h: hypergeometric record
        r: argument (before the record's sign is applied)

    Returns:
        EvalResult with route "series"
    """
    z = h.sign * complex(r)
    value, error = _pfq_series(
        [c.value for c in h.upper], [c.value for c in h.lower], z, h.regularized
    )
    return EvalResult(h.coeff * value, abs(h.coeff) * error, "series")


def _f21_connection(a: complex, b: complex, c: complex, z: complex) -> Tuple[complex, float]:
    """Regularized 2F1 for 1/2 < z < 1 through the z -> 1-z connection formula."""
    s = c - a - b
    w = 1.0 - z
    f1, e1 = _pfq_series([a, b], [1 - s], w, True)
    f2, e2 = _pfq_series([c - a, c - b], [1 + s], w, True)
    factor = math.pi / cmath.sin(math.pi * s)
    g1 = rgamma(c - a) * rgamma(c - b)
    g2 = rgamma(a) * rgamma(b) * w**s
    value = factor * (f1 * g1 - f2 * g2)
    error = abs(factor) * (e1 * abs(g1) + e2 * abs(g2)) + EPS * abs(factor) * (
        abs(f1 * g1) + abs(f2 * g2)
    )
    return value, error


def _f21_regularized(a: complex, b: complex, c: complex, z: float) -> Tuple[complex, float]:
    if _is_nonpositive_int(a) or _is_nonpositive_int(b) or abs(z) <= 0.5:
        return _pfq_series([a, b], [c], z, True)
    if z < -0.5:
        # Pfaff: (1-z)^{-a} 2F1(a, c-b; c; z/(z-1))
        value, error = _f21_regularized(a, c - b, c, z / (z - 1.0))
        factor = (1.0 - z) ** (-a)
        return factor * value, abs(factor) * error
    s = c - a - b
    if s.imag == 0 and abs(s.real - round(s.real)) < 1e-9:
        logger.debug("2F1: integer c-a-b = %g, perturbing b", s.real)
        return _richardson(lambda eps: _f21_connection(a, b + eps, c, z))
    return _f21_connection(a, b, c, z)


def _richardson(evaluate) -> Tuple[complex, float]:
    """Symmetric +-eps evaluations combined over eps and eps/2."""

    def symmetric(eps):
        up, e_up = evaluate(eps)
        down, e_down = evaluate(-eps)
        return 0.5 * (up + down), 0.5 * (e_up + e_down)

    coarse, e1 = symmetric(PERTURBATION)
    fine, e2 = symmetric(PERTURBATION / 2)
    value = (4.0 * fine - coarse) / 3.0
    return value, abs(value - fine) + e1 + e2


def hyp_2f1(
    a: ParamLike, b: ParamLike, c: ParamLike, r: float, regularized: bool = False
) -> EvalResult:
    """
    Gauss hypergeometric function on r < 1.

    Direct series for |r| <= 1/2, Pfaff transformation below -1/2, the
    1 - r connection formula on (1/2, 1) (perturbed when c - a - b is an
    integer).

    Raises:
        RegionError: r >= 1
        PoleError: unregularized evaluation at a non-positive integer c
    """
    r = float(r)
    if r >= 1.0:
        raise RegionError(f"2F1 is evaluated on r < 1 only, got r = {r}")
    av, bv, cv = (Param.of(x).value for x in (a, b, c))
    value, error = _f21_regularized(av, bv, cv, r)
    if not regularized:
        if _is_nonpositive_int(cv):
            raise PoleError(f"2F1 with c = {cv.real:g} needs the regularized form")
        scale = gamma(cv)
        value, error = value * scale, error * abs(scale)
    return EvalResult(complex(value), float(error), "series")


# ----------------------------------------------------------------------
# Meijer G
# ----------------------------------------------------------------------


def _power(x: float, b: Param) -> complex:
    if x == 0:
        if b.re == 0 and b.im == 0:
            return 1.0 + 0j
        if b.re > 0:
            return 0j
        raise RegionError(f"r^{b} is singular at r = 0")
    return complex(x) ** b.value


def _sum_expansion(g: GSpec, x: float) -> Tuple[complex, float]:
    total, error = 0j, 0.0
    for power, hyp in to_hyp_expansion(g):
        part = hyp_pfq(hyp, x)
        scale = _power(x, power)
        total += scale * part.value
        error += abs(scale) * part.est_abs_error
    return total, error + EPS * abs(total)


def _b_clusters(g: GSpec) -> List[List[int]]:
    """First-block indices grouped by integer differences."""
    parent = list(range(g.m))

    def root(i):
        while parent[i] != i:
            i = parent[i]
        return i

    for j, k in integer_b_pairs(g):
        parent[root(k)] = root(j)
    groups: Dict[int, List[int]] = {}
    for i in range(g.m):
        groups.setdefault(root(i), []).append(i)
    return [grp for grp in groups.values() if len(grp) > 1]


def _perturbed(g: GSpec, clusters: List[List[int]], eps: float) -> GSpec:
    b = list(g.b)
    for grp in clusters:
        centre = (len(grp) - 1) / 2.0
        for pos, i in enumerate(grp):
            b[i] = Param.of(b[i].value + (pos - centre) * eps)
    return GSpec(g.m, g.n, g.p, g.q, g.a, tuple(b), g.coeff)


def meijer_g_series(g: GSpec, r: float) -> EvalResult:
    """
    Evaluate coeff * G(a; b | r) through its hypergeometric expansion.

    Records with p > q, or p = q and r > 1, are evaluated at 1/r after
    inverting the argument. Integer differences among the first-block
    b-parameters are handled by a balanced perturbation of size 1e-6 and
    1e-6/2 combined by Richardson extrapolation.

    Raises:
        UndefinedAtOne: class B at r = 1 with nu <= 1
        RegionError: r = 1 for p = q otherwise (use the contour route), r < 0
    """
    ensure_valid(g)
    r = float(r)
    if r < 0:
        raise RegionError(f"G is evaluated on r >= 0, got {r}")
    if g.p == g.q and r == 1.0:
        report = classify(g)
        if report.condition == "B" and report.nu <= 1:
            raise UndefinedAtOne(f"class {report.condition} at r = 1 with nu = {report.nu} <= 1")
        raise RegionError("the series route does not converge at r = 1; use the contour route")
    spec, x = g, r
    if g.p > g.q or (g.p == g.q and r > 1.0):
        if r == 0:
            raise RegionError("inverted argument is infinite at r = 0")
        spec, x = invert_argument(g), 1.0 / r
        logger.debug("meijer_g_series: evaluating the inverted record at %g", x)
    clusters = _b_clusters(spec)
    if not clusters:
        value, error = _sum_expansion(spec, x)
        return EvalResult(value, error, "series")
    logger.debug("meijer_g_series: perturbing b clusters %s", clusters)
    coarse, e1 = _sum_expansion(_perturbed(spec, clusters, PERTURBATION), x)
    fine, e2 = _sum_expansion(_perturbed(spec, clusters, PERTURBATION / 2), x)
    value = 2.0 * fine - coarse
    return EvalResult(value, abs(value - fine) + e1 + e2, "perturbed-series")


def _log_kernel(g: GSpec, s: np.ndarray) -> np.ndarray:
    """log of coeff * Mellin kernel on an array of s (any branch)."""
    total = np.full(s.shape, cmath.log(g.coeff) if g.coeff != 0 else -np.inf, dtype=complex)
    for x in g.b_first:
        total += sp_loggamma(x.value + s)
    for x in g.a_first:
        total += sp_loggamma(1 - x.value - s)
    for x in g.b_last:
        total -= sp_loggamma(1 - x.value - s)
    for x in g.a_last:
        total -= sp_loggamma(x.value + s)
    return total


def _pick_lambda(lo: float, hi: float) -> float:
    if math.isfinite(lo) and math.isfinite(hi):
        return 0.5 * (lo + hi)
    if math.isfinite(lo):
        return lo + 0.5
    if math.isfinite(hi):
        return hi - 0.5
    return 0.0


def _contour_trapezoid(g: GSpec, r: float, lam: float, dist: float) -> Tuple[complex, float]:
    """Class A: exponentially decaying integrand, spectrally accurate trapezoid."""
    log_r = math.log(r)
    h = min(TRAPEZOID_STEP, 1.0 / (4.0 * (1.0 + abs(log_r))), 2.0 * math.pi * dist / 36.0)

    def log_integrand(t):
        s = lam + 1j * t
        return _log_kernel(g, s) - s * log_r

    samples = np.linspace(-8.0, 8.0, 161)
    peak = np.max(log_integrand(samples).real)
    limit = 8.0
    while limit < 5000.0:
        edge = log_integrand(np.array([-limit, limit])).real
        if np.all(edge < peak + math.log(1e-17)):
            break
        limit *= 1.5
    count = int(math.ceil(limit / h))
    t = h * np.arange(-count, count + 1)
    values = np.exp(log_integrand(t))
    total = h * np.sum(values) / (2.0 * math.pi)
    tail = math.exp(peak) * 1e-17 * limit
    error = 1e-15 * h * np.sum(np.abs(values)) / (2.0 * math.pi) + tail
    logger.debug("contour trapezoid: lambda=%g h=%g T=%g", lam, h, limit)
    return complex(total), float(error)


def _fourier_quad(func, omega: float, kind: str) -> Tuple[float, float]:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        if omega == 0.0:
            if kind == "sin":
                return 0.0, 0.0
            res = integrate.quad(func, 0.0, np.inf, epsabs=1e-13, epsrel=1e-12, limit=500, full_output=1)
        else:
            res = integrate.quad(
                func, 0.0, np.inf, weight=kind, wvar=abs(omega), epsabs=1e-13, limlst=200, limit=500, full_output=1
            )
    value, error = res[0], res[1]
    if len(res) > 3:
        logger.warning("contour quadrature: %s", res[3])
        error = max(error, 1e-8 * (1.0 + abs(value)))
    if kind == "sin" and omega < 0:
        value = -value
    return value, error


def _contour_fourier(g: GSpec, r: float, lam: float) -> Tuple[complex, float]:
    """Classes B, C, D: power-law tails, integrated with Fourier weights."""
    omega = math.log(r)

    def kernel(t, sgn):
        return np.exp(_log_kernel(g, np.array([lam + sgn * 1j * t]))[0])

    def u(t):
        return kernel(t, 1) + kernel(t, -1)

    def v(t):
        return -1j * (kernel(t, 1) - kernel(t, -1))

    value = 0j
    error = 0.0
    for part, kind in ((u, "cos"), (v, "sin")):
        re, e_re = _fourier_quad(lambda t: part(t).real, omega, kind)
        im, e_im = _fourier_quad(lambda t: part(t).imag, omega, kind)
        value += re + 1j * im
        error += e_re + e_im
    scale = r ** (-lam) / (2.0 * math.pi)
    return value * scale, error * scale


def meijer_g_contour(g: GSpec, r: float, lam: Optional[float] = None) -> EvalResult:
    """
    Evaluate coeff * G(a; b | r) = (1/2 pi) int kernel(lam + it) r^{-lam-it} dt.

    Args:
        g: valid record
        r: argument, r > 0
        lam: abscissa of the vertical line, strictly inside (lambda_under,
            lambda_over); chosen automatically when omitted

    Raises:
        NoAdmissibleContour: empty strip or lam outside it
        SlowDecay: class B with nu <= 1 (integrand not absolutely integrable)
    """
    report = classify(g)
    r = float(r)
    if r <= 0:
        raise RegionError(f"the contour route needs r > 0, got {r}")
    if not report.has_contour:
        raise NoAdmissibleContour(
            f"no vertical contour: lambda_under = {report.lambda_under}, "
            f"lambda_over = {report.lambda_over} (class {report.condition})"
        )
    lo, hi = float(report.lambda_under), float(report.lambda_over)
    if lam is None:
        lam = _pick_lambda(lo, hi)
    elif not lo < lam < hi:
        raise NoAdmissibleContour(f"lambda = {lam} outside ({lo}, {hi})")
    if report.condition == "B" and report.nu <= 1:
        raise SlowDecay(f"class B with nu = {report.nu} <= 1: kernel decays too slowly")
    if report.condition == "A":
        dist = min(lam - lo, hi - lam)
        if not math.isfinite(dist):
            dist = 1.0
        value, error = _contour_trapezoid(g, r, lam, min(dist, 1.0))
    else:
        value, error = _contour_fourier(g, r, lam)
    return EvalResult(value, error, "contour")


def meijer_g(g: GSpec, r: float, route: str = "auto", lam: Optional[float] = None) -> EvalResult:
    """Series route by default; the contour route at r = 1 or on request."""
    if route == "series":
        return meijer_g_series(g, r)
    if route == "contour":
        return meijer_g_contour(g, r, lam)
    if g.p == g.q and float(r) == 1.0:
        return meijer_g_contour(g, r, lam)
    return meijer_g_series(g, r)


# ----------------------------------------------------------------------
# Jacobi polynomials
# ----------------------------------------------------------------------


def jacobi_poly(n: int, a: float, b: float, z):
    """
    P_n^{(a,b)}(z) by the three-term recurrence; z may be an array.
    """
    z = np.asarray(z, dtype=float)
    a, b = float(a), float(b)
    prev = np.ones_like(z)
    if n == 0:
        return prev if prev.ndim else float(prev)
    cur = (a + 1.0) + (a + b + 2.0) * (z - 1.0) / 2.0
    for k in range(1, n):
        s = 2 * k + a + b
        c1 = 2.0 * (k + 1) * (k + a + b + 1) * s
        c2 = (s + 1) * ((s + 2) * s * z + a * a - b * b)
        c3 = 2.0 * (k + a) * (k + b) * (s + 2)
        prev, cur = cur, (c2 * cur - c3 * prev) / c1
    return cur if cur.ndim else float(cur)


# ----------------------------------------------------------------------
# solid harmonics
# ----------------------------------------------------------------------

Monomial = Tuple[int, ...]
Poly = Dict[Monomial, Fraction]


def _poly_mul(p1: Poly, p2: Poly) -> Poly:
    out: Poly = {}
    for e1, c1 in p1.items():
        for e2, c2 in p2.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            out[e] = out.get(e, Fraction(0)) + c1 * c2
    return {e: c for e, c in out.items() if c != 0}


def _poly_pow(base: Poly, k: int, d: int) -> Poly:
    out: Poly = {(0,) * d: Fraction(1)}
    for _ in range(k):
        out = _poly_mul(out, base)
    return out


@dataclass(frozen=True)
class SolidHarmonic:
    """scale * sum_c c * x^e: a homogeneous harmonic polynomial of degree l."""

    d: int
    l: int
    terms: Tuple[Tuple[Monomial, Fraction], ...]
    scale: float = 1.0
    label: str = ""

    @property
    def coefficients(self) -> Poly:
        return dict(self.terms)

    def __call__(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape[-1] != self.d:
            raise ValueError(f"points must have {self.d} coordinates, got shape {x.shape}")
        out = np.zeros(x.shape[:-1])
        for exps, c in self.terms:
            mono = np.ones(x.shape[:-1])
            for i, e in enumerate(exps):
                if e:
                    mono = mono * x[..., i] ** e
            out = out + float(c) * mono
        return self.scale * out

    def laplacian(self) -> Poly:
        out: Poly = {}
        for exps, c in self.terms:
            for i, e in enumerate(exps):
                if e >= 2:
                    new = list(exps)
                    new[i] -= 2
                    key = tuple(new)
                    out[key] = out.get(key, Fraction(0)) + c * e * (e - 1)
        return {k: v for k, v in out.items() if v != 0}

    def is_homogeneous(self) -> bool:
        return all(sum(e) == self.l for e, _ in self.terms)


@dataclass(frozen=True)
class HarmonicBasis:
    d: int
    l: int
    size: int
    polynomials: Tuple[SolidHarmonic, ...] = field(default_factory=tuple)


def harmonic_dimension(d: int, l: int) -> int:
    """M_{d,l}: dimension of the degree-l solid harmonics in R^d."""
    if d < 1 or l < 0:
        raise UnsupportedDimension(f"d={d}, l={l}")
    if d == 1:
        return 1 if l in (0, 1) else 0
    if l == 0:
        return 1
    value = Fraction(d + 2 * l - 2, d + l - 2) * comb(d + l - 2, l)
    return int(value)


def sphere_rule(d: int, polar: int = 32, azimuth: int = 64) -> Tuple[np.ndarray, np.ndarray]:
    """
    Nodes and weights on the unit sphere S^{d-1} (total weight = surface area).

    d=1: the two points +-1; d=2: trapezoid on the circle; d=3: Gauss-Legendre
    in cos(theta) times trapezoid in phi.
    """
    if d == 1:
        return np.array([[1.0], [-1.0]]), np.array([1.0, 1.0])
    phi = 2.0 * np.pi * np.arange(azimuth) / azimuth
    if d == 2:
        nodes = np.stack([np.cos(phi), np.sin(phi)], axis=-1)
        return nodes, np.full(azimuth, 2.0 * np.pi / azimuth)
    if d == 3:
        t, wt = np.polynomial.legendre.leggauss(polar)
        tt, pp = np.meshgrid(t, phi, indexing="ij")
        st = np.sqrt(1.0 - tt**2)
        nodes = np.stack([st * np.cos(pp), st * np.sin(pp), tt], axis=-1).reshape(-1, 3)
        weights = np.outer(wt, np.full(azimuth, 2.0 * np.pi / azimuth)).reshape(-1)
        return nodes, weights
    raise UnsupportedDimension(f"no sphere rule for d={d}")


def _legendre_derivative_terms(l: int, m: int) -> List[Tuple[int, Fraction]]:
    """(power of t, coefficient) of the m-th derivative of P_l(t)."""
    out = []
    for k in range(l // 2 + 1):
        power = l - 2 * k
        if power < m:
            continue
        c = Fraction((-1) ** k * comb(l, k) * comb(2 * l - 2 * k, l), 2**l)
        c *= Fraction(factorial(power), factorial(power - m))
        out.append((power - m, c))
    return out


def _complex_power_parts(m: int) -> Tuple[Poly, Poly]:
    """Real and imaginary parts of (x + i y)^m as polynomials in (x, y, z)."""
    re: Poly = {}
    im: Poly = {}
    for j in range(m + 1):
        c = Fraction(comb(m, j))
        key = (m - j, j, 0)
        if j % 2 == 0:
            re[key] = c * (-1) ** (j // 2)
        else:
            im[key] = c * (-1) ** ((j - 1) // 2)
    return re, im


def _raw_harmonics(d: int, l: int) -> List[Tuple[Poly, str]]:
    if d == 1:
        if l > 1:
            return []
        return [({(l,): Fraction(1)}, f"x^{l}")]
    if d == 2:
        if l == 0:
            return [({(0, 0): Fraction(1)}, "1")]
        re: Poly = {}
        im: Poly = {}
        for j in range(l + 1):
            c = Fraction(comb(l, j))
            if j % 2 == 0:
                re[(l - j, j)] = c * (-1) ** (j // 2)
            else:
                im[(l - j, j)] = c * (-1) ** ((j - 1) // 2)
        return [(re, f"Re(x+iy)^{l}"), (im, f"Im(x+iy)^{l}")]
    if d == 3:
        r2: Poly = {(2, 0, 0): Fraction(1), (0, 2, 0): Fraction(1), (0, 0, 2): Fraction(1)}
        out = []
        for m in range(l + 1):
            radial: Poly = {}
            for power, c in _legendre_derivative_terms(l, m):
                k = (l - m - power) // 2
                piece = _poly_mul({(0, 0, power): c}, _poly_pow(r2, k, 3))
                for e, v in piece.items():
                    radial[e] = radial.get(e, Fraction(0)) + v
            radial = {e: v for e, v in radial.items() if v != 0}
            if m == 0:
                out.append((radial, f"l={l},m=0"))
                continue
            re, im = _complex_power_parts(m)
            out.append((_poly_mul(re, radial), f"l={l},m={m},cos"))
            out.append((_poly_mul(im, radial), f"l={l},m={m},sin"))
        return out
    raise UnsupportedDimension(f"explicit harmonic bases exist for d <= 3, got d={d}")


def harmonic_basis(d: int, l: int) -> HarmonicBasis:
    """
    Orthonormal basis (surface measure on S^{d-1}) of degree-l solid harmonics.

    Raises:
        UnsupportedDimension: d > 3
    """
    if d < 1 or d > 3:
        raise UnsupportedDimension(f"explicit harmonic bases exist for d <= 3, got d={d}")
    nodes, weights = sphere_rule(d, polar=max(32, l + 2), azimuth=max(64, 2 * l + 4))
    polys = []
    for raw, label in _raw_harmonics(d, l):
        terms = tuple(sorted(raw.items()))
        unit = SolidHarmonic(d, l, terms, 1.0, label)
        norm = float(np.sum(weights * unit(nodes) ** 2))
        polys.append(SolidHarmonic(d, l, terms, 1.0 / math.sqrt(norm), label))
    return HarmonicBasis(d, l, len(polys), tuple(polys))
