"""
Brute-force fractional Laplacian and Riesz potential from their integral
definitions, in dimensions 1 to 3.

Every operator is written as a radial integral

    int_0^R rho^e A(rho) d rho,   A(rho) = sum_c w_c int_S f(x + c rho w) dw

over a difference stencil {(w_c, c)}. Radial panels are Gauss-Legendre and
graded geometrically toward the origin and toward the radii where the
sphere |y - x| = rho touches a kink sphere of f; angular rules split at
the crossing angles. The piece below the innermost excision radius and the
far tail are added from the local and asymptotic behaviour.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from functools import lru_cache
from math import comb
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from scipy import special
from scipy.interpolate import CubicSpline

from errors import (
    ConditionViolation,
    NonSmoothAtPoint,
    NotIntegrable,
    QuadratureFailure,
    SlowDecay,
    UnsupportedDimension,
    ValidationError,
)
from fractransform import chi_dk, gamma_d
from specfun import EvalResult, SolidHarmonic, jacobi_poly

logger = logging.getLogger(__name__)

DEFAULT_REL_TOL = {1: 1e-6, 2: 1e-5, 3: 1e-4}
SPHERE_AREA = {1: 2.0, 2: 2.0 * math.pi, 3: 4.0 * math.pi}
REPORT_COLUMNS = ["point", "symbolic", "oracle", "abs_err", "rel_err", "pass"]


@dataclass(frozen=True)
class QuadratureConfig:
    """Fixed quadrature rules and tolerances of the oracle."""

    rel_tol: float = 1e-6
    abs_tol: float = 1e-7
    max_subdivisions: int = 200000
    eps_inner: Tuple[float, ...] = (1e-4, 1e-5, 1e-6)
    gauss_order: int = 12
    grading_levels: int = 14
    grading_ratio: float = 0.25
    circle_points: int = 64
    polar_points: int = 32
    azimuth_points: int = 64
    angular_order: int = 6
    angular_levels: int = 8
    rapid_radius: float = 12.0
    max_radius: float = 1e6

    def __post_init__(self):
        violations = []
        if self.rel_tol < 1e-12:
            violations.append(f"rel_tol={self.rel_tol} below 1e-12")
        if self.abs_tol <= 0:
            violations.append(f"abs_tol={self.abs_tol} must be positive")
        eps = self.eps_inner
        if not eps or any(e <= 0 for e in eps) or any(b >= a for a, b in zip(eps, eps[1:])):
            violations.append(f"eps_inner {eps} must be positive and strictly decreasing")
        if violations:
            raise ValidationError(violations)

    @classmethod
    def for_dimension(cls, d: int, rel_tol: Optional[float] = None) -> "QuadratureConfig":
        if d not in DEFAULT_REL_TOL:
            raise UnsupportedDimension(f"the oracle runs in d <= 3, got d={d}")
        tol = DEFAULT_REL_TOL[d] if rel_tol is None else float(rel_tol)
        return cls(rel_tol=tol, abs_tol=tol / 10.0)


@dataclass(frozen=True)
class PointwiseFn:
    """
    A vectorized function on R^d with the facts the oracle needs: kink
    spheres (radii about ``center`` where f is not smooth, 0 for a point
    singularity), decay exponent at infinity, support radius, period of
    oscillation, radial symmetry and an asymptotic tail sum c |y|^{-p}.
    """

    func: Callable[[np.ndarray], np.ndarray]
    d: int
    kinks: Tuple[float, ...] = ()
    decay: float = math.inf
    support_radius: Optional[float] = None
    period: Optional[float] = None
    radial: bool = False
    center: Tuple[float, ...] = ()
    tail: Tuple[Tuple[float, float], ...] = ()
    tail_radius: Optional[float] = None
    label: str = ""

    def __post_init__(self):
        if self.d not in SPHERE_AREA:
            raise UnsupportedDimension(f"the oracle runs in d <= 3, got d={self.d}")
        if not self.center:
            object.__setattr__(self, "center", (0.0,) * self.d)
        if len(self.center) != self.d:
            raise ValidationError([f"center must have {self.d} coordinates"])

    def __call__(self, y) -> np.ndarray:
        return np.asarray(self.func(np.asarray(y, dtype=float)), dtype=float)

    def translated(self, h) -> "PointwiseFn":
        """y -> f(y - h)."""
        h = np.atleast_1d(np.asarray(h, dtype=float))
        func = self.func
        return replace(
            self,
            func=lambda y: func(y - h),
            center=tuple(np.asarray(self.center) + h),
            label=f"{self.label} shifted",
        )

    def scaled(self, c: float) -> "PointwiseFn":
        """y -> f(c y)."""
        func = self.func
        return replace(
            self,
            func=lambda y: func(c * y),
            kinks=tuple(k / c for k in self.kinks),
            support_radius=None if self.support_radius is None else self.support_radius / c,
            period=None if self.period is None else self.period / c,
            center=tuple(np.asarray(self.center) / c),
            tail=tuple((coef * c ** (-p), p) for coef, p in self.tail),
            tail_radius=None if self.tail_radius is None else self.tail_radius / c,
            label=f"{self.label} scaled",
        )


# ----------------------------------------------------------------------
# rules
# ----------------------------------------------------------------------


@lru_cache(maxsize=None)
def _gauss(n: int) -> Tuple[np.ndarray, np.ndarray]:
    return np.polynomial.legendre.leggauss(n)


def _map_panels(panels: Sequence[Tuple[float, float]], n: int) -> Tuple[np.ndarray, np.ndarray]:
    t, w = _gauss(n)
    edges = np.asarray(panels, dtype=float)
    if edges.size == 0:
        return np.empty(0), np.empty(0)
    lo, hi = edges[:, :1], edges[:, 1:]
    half = 0.5 * (hi - lo)
    nodes = (lo + hi) / 2.0 + half * t
    weights = half * w
    return nodes.ravel(), weights.ravel()


def _toward(u: float, v: float, side: str, levels: int, ratio: float) -> List[Tuple[float, float]]:
    """Panels on [u, v] shrinking geometrically toward one end."""
    width = v - u
    cuts = [width * ratio**k for k in range(levels, 0, -1)]
    if side == "left":
        edges = [u] + [u + c for c in cuts] + [v]
    else:
        edges = [u] + [v - c for c in reversed(cuts)] + [v]
    return list(zip(edges[:-1], edges[1:]))


def _both(u: float, v: float, levels: int, ratio: float) -> List[Tuple[float, float]]:
    mid = 0.5 * (u + v)
    return _toward(u, mid, "left", levels, ratio) + _toward(mid, v, "right", levels, ratio)


def _radial_panels(
    breaks: Sequence[float], eps: float, R: float, period: Optional[float], cfg: QuadratureConfig
) -> List[Tuple[float, float]]:
    pts = sorted({b for b in breaks if eps < b < R and b > 0})
    levels, ratio = cfg.grading_levels, cfg.grading_ratio
    first = pts[0] if pts else min(R, 1.0)
    panels = []
    # origin: doubling from the excision radius
    edge = eps
    while 2.0 * edge < first / 2.0:
        panels.append((edge, 2.0 * edge))
        edge *= 2.0
    if pts:
        panels += _toward(edge, first, "right", levels, ratio)
    else:
        panels.append((edge, first))
    for u, v in zip(pts, pts[1:]):
        panels += _both(u, v, levels, ratio)
    start = first
    if pts and start < R:
        window = min(R - start, max(start, 0.5))
        panels += _toward(start, start + window, "left", levels, ratio)
        start += window
    if period is not None:
        count = int(math.ceil((R - start) / (period / 2.0)))
        if count > cfg.max_subdivisions:
            raise QuadratureFailure(f"{count} oscillation panels exceed max_subdivisions")
        grid = np.linspace(start, R, count + 1) if count else np.array([start, R])
        panels += list(zip(grid[:-1], grid[1:]))
    else:
        while start < R:
            stop = min(R, 2.0 * start)
            panels.append((start, stop))
            start = stop
    if len(panels) > cfg.max_subdivisions:
        raise QuadratureFailure(f"{len(panels)} radial panels exceed max_subdivisions")
    return [(u, v) for u, v in panels if v > u]


def _frame(x_rel: np.ndarray, d: int) -> np.ndarray:
    """Orthonormal rows whose last row points along x (any frame at x = 0)."""
    norm = float(np.linalg.norm(x_rel))
    e = x_rel / norm if norm > 0 else np.eye(d)[-1]
    if d == 1:
        return e.reshape(1, 1)
    if d == 2:
        return np.array([[-e[1], e[0]], e])
    helper = np.eye(3)[int(np.argmin(np.abs(e)))]
    u1 = np.cross(e, helper)
    u1 /= np.linalg.norm(u1)
    u2 = np.cross(e, u1)
    return np.array([u1, u2, e])


def _crossings(x_norm: float, stencil, kinks, rho: float) -> List[float]:
    """cos(angle to x) at which |x + c rho w| meets a kink radius."""
    out = []
    if x_norm == 0.0:
        return out
    for _, c in stencil:
        if c == 0.0:
            continue
        for kappa in kinks:
            t = (kappa**2 - x_norm**2 - (c * rho) ** 2) / (2.0 * c * rho * x_norm)
            if -1.0 < t < 1.0:
                out.append(t)
    return sorted(set(out))


def _angular_rule(
    d: int, frame: np.ndarray, splits: List[float], radial: bool, cfg: QuadratureConfig
) -> Tuple[np.ndarray, np.ndarray]:
    """Directions (K, d) and weights (K,) on the unit sphere, split at cos(angle) values."""
    if d == 1:
        return np.array([[1.0], [-1.0]]), np.array([1.0, 1.0])
    order, levels, ratio = cfg.angular_order, cfg.angular_levels, cfg.grading_ratio
    if d == 2:
        if not splits:
            n = cfg.circle_points
            theta = 2.0 * np.pi * np.arange(n) / n
            weights = np.full(n, 2.0 * np.pi / n)
        else:
            angles = sorted({float(np.arccos(t)) for t in splits} | {float(2 * np.pi - np.arccos(t)) for t in splits})
            arcs = list(zip(angles, angles[1:] + [angles[0] + 2.0 * np.pi]))
            panels = []
            for u, v in arcs:
                panels += _both(u, v, levels, ratio)
            theta, weights = _map_panels(panels, order)
        local = np.stack([np.sin(theta), np.cos(theta)], axis=-1)
        return local @ frame, weights
    # d == 3: t = cos(angle to x), phi around x
    if not splits:
        t, wt = _gauss(cfg.polar_points)
    else:
        edges = [-1.0] + list(splits) + [1.0]
        panels = []
        for i, (u, v) in enumerate(zip(edges, edges[1:])):
            if i == 0:
                panels += _toward(u, v, "right", levels, ratio)
            elif i == len(edges) - 2:
                panels += _toward(u, v, "left", levels, ratio)
            else:
                panels += _both(u, v, levels, ratio)
        t, wt = _map_panels(panels, order)
    if radial:
        phi, wp = np.zeros(1), np.array([2.0 * np.pi])
    else:
        n = cfg.azimuth_points
        phi, wp = 2.0 * np.pi * np.arange(n) / n, np.full(n, 2.0 * np.pi / n)
    tt, pp = np.meshgrid(t, phi, indexing="ij")
    st = np.sqrt(np.clip(1.0 - tt**2, 0.0, None))
    local = np.stack([st * np.cos(pp), st * np.sin(pp), tt], axis=-1).reshape(-1, 3)
    return local @ frame, np.outer(wt, wp).ravel()


# ----------------------------------------------------------------------
# the radial integral
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class _Problem:
    f: PointwiseFn
    x: np.ndarray
    stencil: Tuple[Tuple[float, float], ...]
    exponent: float
    order: int
    scale: float


def _sphere_average(prob: _Problem, rhos: np.ndarray, cfg: QuadratureConfig) -> np.ndarray:
    """A(rho) for an array of radii."""
    f, x, d = prob.f, prob.x, prob.f.d
    x_rel = x - np.asarray(f.center)
    x_norm = float(np.linalg.norm(x_rel))
    frame = _frame(x_rel, d)
    fx = float(f(x[None, :])[0])
    const = sum(w for w, c in prob.stencil if c == 0.0) * SPHERE_AREA[d] * fx
    moving = [(w, c) for w, c in prob.stencil if c != 0.0]
    out = np.full(rhos.shape, const)

    def accumulate(idx: np.ndarray, dirs: np.ndarray, weights: np.ndarray):
        r = rhos[idx]
        for w, c in moving:
            pts = x[None, None, :] + c * r[:, None, None] * dirs[None, :, :]
            vals = f(pts.reshape(-1, d)).reshape(len(r), len(weights))
            out[idx] += w * (vals @ weights)

    if d == 1 or not f.kinks or x_norm == 0.0:
        plain = list(range(len(rhos)))
    else:
        plain = []
        for i, rho in enumerate(rhos):
            splits = _crossings(x_norm, moving, f.kinks, float(rho))
            if splits:
                dirs, weights = _angular_rule(d, frame, splits, f.radial, cfg)
                accumulate(np.array([i]), dirs, weights)
            else:
                plain.append(i)
    if plain:
        dirs, weights = _angular_rule(d, frame, [], f.radial, cfg)
        idx = np.array(plain)
        for chunk in np.array_split(idx, max(1, len(idx) * len(weights) // 200000 + 1)):
            if len(chunk):
                accumulate(chunk, dirs, weights)
    return out


def _breakpoints(prob: _Problem) -> List[float]:
    x_norm = float(np.linalg.norm(prob.x - np.asarray(prob.f.center)))
    out = []
    for _, c in prob.stencil:
        if c == 0.0:
            continue
        for kappa in prob.f.kinks:
            for r in (abs(kappa - x_norm), kappa + x_norm):
                if r > 0:
                    out.append(r / abs(c))
    return out


def _outer_radius(prob: _Problem, cfg: QuadratureConfig) -> Tuple[float, float]:
    """Truncation radius and a bound on the neglected tail."""
    f = prob.f
    x_norm = float(np.linalg.norm(prob.x - np.asarray(f.center)))
    c_min = min(abs(c) for _, c in prob.stencil if c != 0.0)
    if f.support_radius is not None:
        return (f.support_radius + x_norm) / c_min, 0.0
    if f.tail_radius is not None:
        return (f.tail_radius + x_norm) / c_min, 0.0
    if math.isinf(f.decay):
        return (x_norm + cfg.rapid_radius) / c_min, 0.0
    gain = 1.0 if (f.period is not None and f.decay == 0) else 0.0
    tau = f.decay + gain - (prob.exponent + 1.0)
    if tau <= 0:
        raise QuadratureFailure(f"tail of {f.label or 'f'} does not decay (exponent {tau:g})")
    R = max(x_norm + 1.0, (10.0 / cfg.abs_tol) ** (1.0 / tau)) / c_min
    if R > cfg.max_radius:
        logger.warning("truncation radius %.3g capped at %.3g", R, cfg.max_radius)
        R = cfg.max_radius
    return R, R ** (-tau)


def _tail_integral(prob: _Problem, R: float) -> float:
    """Analytic part of int_R^inf rho^e A(rho): the c = 0 term and declared tail terms."""
    e = prob.exponent
    d, f = prob.f.d, prob.f
    total = 0.0
    w0 = sum(w for w, c in prob.stencil if c == 0.0)
    if w0:
        fx = float(f(prob.x[None, :])[0])
        total += w0 * SPHERE_AREA[d] * fx * R ** (e + 1.0) / (-(e + 1.0))
    if f.tail and f.support_radius is None:
        for w, c in prob.stencil:
            if c == 0.0:
                continue
            for coef, p in f.tail:
                total += w * SPHERE_AREA[d] * coef * abs(c) ** (-p) * R ** (e + 1.0 - p) / (p - e - 1.0)
    return total


def _integrate(prob: _Problem, eps: float, order: int, cfg: QuadratureConfig) -> float:
    R, _ = _outer_radius(prob, cfg)
    panels = _radial_panels(_breakpoints(prob), eps, R, prob.f.period, cfg)
    rho, w = _map_panels(panels, order)
    body = float(np.sum(w * rho**prob.exponent * _sphere_average(prob, rho, cfg)))
    a_eps = float(_sphere_average(prob, np.array([eps]), cfg)[0])
    inner = a_eps * eps ** (prob.exponent + 1.0) / (prob.exponent + 1.0 + prob.order)
    return body + inner + _tail_integral(prob, R)


def _solve(prob: _Problem, cfg: QuadratureConfig) -> EvalResult:
    eps = cfg.eps_inner[-1]
    value = _integrate(prob, eps, cfg.gauss_order, cfg)
    coarse = _integrate(prob, eps, max(2, cfg.gauss_order // 2), cfg)
    error = abs(value - coarse)
    if len(cfg.eps_inner) > 1:
        error += abs(value - _integrate(prob, cfg.eps_inner[-2], cfg.gauss_order, cfg))
    _, neglected = _outer_radius(prob, cfg)
    error += neglected
    logger.debug("oracle %s at %s: %.15g +- %.2g", prob.f.label, prob.x, prob.scale * value, error)
    return EvalResult(prob.scale * value, abs(prob.scale) * error, "quadrature")


def _point(x, d: int) -> np.ndarray:
    point = np.atleast_1d(np.asarray(x, dtype=float))
    if point.shape != (d,):
        raise ValueError(f"expected a point in R^{d}, got shape {point.shape}")
    return point


def _require_smooth(f: PointwiseFn, x: np.ndarray):
    x_norm = float(np.linalg.norm(x - np.asarray(f.center)))
    for kappa in f.kinks:
        if abs(x_norm - kappa) <= 1e-12:
            raise NonSmoothAtPoint(f"{f.label or 'f'} is not smooth at |x| = {kappa}")


def _check_decay(f: PointwiseFn, growth: float, err):
    if f.support_radius is not None or math.isinf(f.decay):
        return
    gain = 1.0 if (f.period is not None and f.decay == 0) else 0.0
    if f.decay + gain + growth <= 0:
        raise err(f"decay exponent {f.decay} too small for the integral to converge")


def fraclap_singular(
    f: PointwiseFn, x, alpha: float, cfg: Optional[QuadratureConfig] = None
) -> EvalResult:
    """
    (1/|gamma_d(-alpha)|) p.v. int (f(x) - f(x-y)) / |y|^{d+alpha} dy for
    0 < alpha < 2, integrated in the symmetrized form
    f(x) - (f(x+y) + f(x-y))/2.

    Raises:
        NonSmoothAtPoint: x on a declared kink sphere
        SlowDecay: f does not decay fast enough
    """
    alpha = float(alpha)
    if not 0 < alpha < 2:
        raise ConditionViolation(f"0 < alpha < 2 violated (alpha={alpha})")
    cfg = cfg or QuadratureConfig.for_dimension(f.d)
    x = _point(x, f.d)
    _require_smooth(f, x)
    _check_decay(f, alpha, SlowDecay)
    stencil = ((1.0, 0.0), (-0.5, 1.0), (-0.5, -1.0))
    scale = 1.0 / abs(gamma_d(f.d, -alpha))
    return _solve(_Problem(f, x, stencil, -1.0 - alpha, 2, scale), cfg)


def fraclap_hypersingular(
    f: PointwiseFn, x, alpha: float, k: int = 2, cfg: Optional[QuadratureConfig] = None
) -> EvalResult:
    """
    (1/chi_{d,k}(alpha)) int -Delta^k_y f(x) / |y|^{d+alpha} dy with the
    centered difference Delta^k_y f(x) = sum_j (-1)^j C(k,j) f(x + (k/2 - j) y),
    k even and k > alpha.
    """
    alpha = float(alpha)
    if k % 2 or k <= alpha or alpha <= 0:
        raise ConditionViolation(f"even k > alpha > 0 violated (k={k}, alpha={alpha})")
    cfg = cfg or QuadratureConfig.for_dimension(f.d)
    x = _point(x, f.d)
    _require_smooth(f, x)
    _check_decay(f, alpha, SlowDecay)
    stencil = tuple((-float((-1) ** j * comb(k, j)), k / 2.0 - j) for j in range(k + 1))
    scale = 1.0 / chi_dk(f.d, k, alpha)
    return _solve(_Problem(f, x, stencil, -1.0 - alpha, k, scale), cfg)


def riesz_quadrature(
    f: PointwiseFn, x, alpha: float, cfg: Optional[QuadratureConfig] = None
) -> EvalResult:
    """
    (1/gamma_d(alpha)) int f(x - y) |y|^{alpha-d} dy for 0 < alpha < d.

    Raises:
        NotIntegrable: f decays no faster than |y|^{-alpha}
    """
    alpha = float(alpha)
    if not 0 < alpha < f.d:
        raise ConditionViolation(f"0 < alpha < d violated (alpha={alpha}, d={f.d})")
    cfg = cfg or QuadratureConfig.for_dimension(f.d)
    x = _point(x, f.d)
    _check_decay(f, -alpha, NotIntegrable)
    stencil = ((1.0, -1.0),)
    scale = 1.0 / gamma_d(f.d, alpha)
    return _solve(_Problem(f, x, stencil, alpha - 1.0, 0, scale), cfg)


# ----------------------------------------------------------------------
# nested potentials
# ----------------------------------------------------------------------


def radial_potential(
    f: PointwiseFn,
    alpha: float,
    r_max: float = 6.0,
    nodes: int = 40,
    cfg: Optional[QuadratureConfig] = None,
) -> PointwiseFn:
    """
    Riesz potential of a radial f, tabulated on [0, r_max] with a cubic
    spline and continued by the fit c1 r^{alpha-d} + c2 r^{alpha-d-2}.
    """
    if not f.radial:
        raise ConditionViolation("tabulated potentials need a radial function")
    d = f.d
    cfg = cfg or QuadratureConfig.for_dimension(d)
    radii = r_max * (1.0 - np.cos(np.linspace(0.0, np.pi / 2.0, nodes)))
    axis = np.eye(d)[-1]
    values = np.array([riesz_quadrature(f, r * axis, alpha, cfg).real for r in radii])
    spline = CubicSpline(radii, values, bc_type=((1, 0.0), "not-a-knot"))
    fit_r = radii[-6:]
    design = np.stack([fit_r ** (alpha - d), fit_r ** (alpha - d - 2.0)], axis=-1)
    (c1, c2), *_ = np.linalg.lstsq(design, values[-6:], rcond=None)
    logger.debug("radial_potential: tail fit %.6g r^%g + %.6g r^%g", c1, alpha - d, c2, alpha - d - 2)

    def potential(y):
        r = np.linalg.norm(y, axis=-1)
        inside = spline(np.minimum(r, r_max))
        outside = c1 * np.maximum(r, r_max) ** (alpha - d) + c2 * np.maximum(r, r_max) ** (alpha - d - 2.0)
        return np.where(r <= r_max, inside, outside)

    return PointwiseFn(
        potential,
        d,
        decay=d - alpha,
        radial=True,
        tail=((float(c1), d - alpha), (float(c2), d - alpha + 2.0)),
        tail_radius=r_max,
        label=f"I_{alpha:g} {f.label}",
    )


def semigroup_check(
    f: PointwiseFn, x, alpha: float, beta: float, cfg: Optional[QuadratureConfig] = None
) -> Tuple[EvalResult, EvalResult]:
    """(I_alpha (I_beta f))(x) and (I_{alpha+beta} f)(x) for a radial f."""
    cfg = cfg or QuadratureConfig.for_dimension(f.d)
    inner = radial_potential(f, beta, cfg=cfg)
    nested = riesz_quadrature(inner, x, alpha, cfg)
    direct = riesz_quadrature(f, x, alpha + beta, cfg)
    return nested, direct


# ----------------------------------------------------------------------
# reports
# ----------------------------------------------------------------------


def format_point(x) -> str:
    arr = np.atleast_1d(np.asarray(x, dtype=float))
    if arr.size == 1:
        return f"{arr[0]:g}"
    return "(" + ",".join(f"{v:g}" for v in arr) + ")"


@dataclass
class Report:
    """Per-point comparison of a symbolic route against the oracle."""

    rows: List[dict] = field(default_factory=list)
    rel_tol: float = 1e-6
    label: str = ""

    @property
    def frame(self) -> pd.DataFrame:
        df = pd.DataFrame(self.rows)
        if df.empty:
            return pd.DataFrame(columns=REPORT_COLUMNS)
        return df[REPORT_COLUMNS + [c for c in df.columns if c not in REPORT_COLUMNS]]

    @property
    def all_passed(self) -> bool:
        return bool(self.rows) and all(row["pass"] for row in self.rows)

    def to_csv(self) -> str:
        return self.frame[REPORT_COLUMNS].to_csv(index=False, float_format="%.12g", lineterminator="\n")

    def to_text(self) -> str:
        return self.frame.to_string(index=False)


def _symbolic_value(symbolic, x) -> EvalResult:
    if hasattr(symbolic, "evaluate"):
        return symbolic.evaluate(x)
    value = symbolic(x)
    if isinstance(value, EvalResult):
        return value
    return EvalResult(complex(value), 0.0, "series")


def compare(
    symbolic,
    oracle_op: Callable[[np.ndarray], EvalResult],
    points: Sequence,
    cfg: QuadratureConfig,
    workers: int = 1,
    label: str = "",
) -> Report:
    """
    Evaluate the symbolic route and the oracle at each point and tabulate the
    discrepancies. A row passes when abs_err <= rel_tol * max(1, |symbolic|)
    and the point lies inside the symbolic result's validity domain.
    """

    def row(x):
        sym = _symbolic_value(symbolic, x)
        ora = oracle_op(x)
        s, o = float(np.real(sym.value)), float(np.real(ora.value))
        abs_err = abs(s - o)
        rel_err = abs_err / max(abs(s), 1e-300)
        outside = "outside-validity" in sym.flags
        passed = (not outside) and abs_err <= cfg.rel_tol * max(1.0, abs(s))
        return {
            "point": format_point(x),
            "symbolic": s,
            "oracle": o,
            "abs_err": abs_err,
            "rel_err": rel_err,
            "pass": passed,
            "flags": "outside validity" if outside else "",
            "oracle_err": ora.est_abs_error,
        }

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(row, points))
    else:
        rows = [row(x) for x in points]
    report = Report(rows, cfg.rel_tol, label)
    logger.info("compare %s: %d/%d rows pass", label, sum(r["pass"] for r in rows), len(rows))
    return report


# ----------------------------------------------------------------------
# test functions
# ----------------------------------------------------------------------


def _radius2(y: np.ndarray) -> np.ndarray:
    return np.sum(y * y, axis=-1)


def power_ball_fn(rho: float, sigma: float, d: int) -> PointwiseFn:
    """|y|^{2 rho} (1 - |y|^2)_+^sigma."""
    rho, sigma = float(rho), float(sigma)

    def func(y):
        r2 = _radius2(y)
        inside = r2 < 1.0
        out = np.zeros(r2.shape)
        out[inside] = r2[inside] ** rho * (1.0 - r2[inside]) ** sigma
        return out

    kinks = (1.0,) if rho >= 0 else (0.0, 1.0)
    return PointwiseFn(func, d, kinks=kinks, support_radius=1.0, radial=True, label="power-ball")


def getoor_fn(d: int, alpha: float) -> PointwiseFn:
    """(1 - |y|^2)_+^{alpha/2}."""
    return replace(power_ball_fn(0.0, float(alpha) / 2.0, d), label="getoor")


def smooth_ball_fn(d: int, power: int = 4) -> PointwiseFn:
    """(1 - |y|^2)_+^power, C^{power-1} across the unit sphere."""
    return replace(power_ball_fn(0.0, float(power), d), label="smooth-ball")


def jacobi_fn(n: int, l: int, d: int, alpha: float, harmonic: Optional[SolidHarmonic] = None) -> PointwiseFn:
    """(1-|y|^2)_+^{alpha/2} V(y) P_n^{(alpha/2, d/2+l-1)}(2|y|^2 - 1)."""
    alpha = float(alpha)
    if l > 0 and harmonic is None:
        raise ValidationError([f"a harmonic factor of degree {l} is required"])

    def func(y):
        r2 = _radius2(y)
        vals = jacobi_poly(n, alpha / 2.0, d / 2.0 + l - 1.0, 2.0 * r2 - 1.0)
        if harmonic is not None:
            vals = vals * harmonic(y)
        return np.where(r2 < 1.0, vals * np.clip(1.0 - r2, 0.0, None) ** (alpha / 2.0), 0.0)

    return PointwiseFn(func, d, kinks=(1.0,), support_radius=1.0, radial=(l == 0), label=f"jacobi-{n}")


def cosine_fn() -> PointwiseFn:
    """cos(y) on the line."""
    return PointwiseFn(lambda y: np.cos(y[..., 0]), 1, decay=0.0, period=2.0 * np.pi, label="cosine")


def cauchy_fn(d: int = 1) -> PointwiseFn:
    """(1 + |y|^2)^{-1}."""
    return PointwiseFn(lambda y: 1.0 / (1.0 + _radius2(y)), d, decay=2.0, radial=True, label="cauchy")


def gaussian_fn(d: int) -> PointwiseFn:
    """exp(-|y|^2)."""
    return PointwiseFn(lambda y: np.exp(-_radius2(y)), d, radial=True, label="gaussian")


def harmonic_ball_fn(d: int, alpha: float) -> PointwiseFn:
    """(1-|y|^2)_+^{alpha/2} 2F~1(1, d/2; 1+alpha/2 | 1-|y|^2), singular at 0."""
    alpha = float(alpha)
    norm = 1.0 / special.gamma(1.0 + alpha / 2.0)

    def func(y):
        r2 = _radius2(y)
        out = np.zeros(r2.shape)
        inside = (r2 < 1.0) & (r2 > 0.0)
        w = 1.0 - r2[inside]
        out[inside] = norm * w ** (alpha / 2.0) * special.hyp2f1(1.0, d / 2.0, 1.0 + alpha / 2.0, w)
        return out

    return PointwiseFn(func, d, kinks=(0.0, 1.0), support_radius=1.0, radial=True, label="harmonic-ball")
