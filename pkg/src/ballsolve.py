"""
Spectral solution of (-Delta)^{alpha/2}(w u) = g on the unit ball, u = 0
outside, with w(x) = (1 - |x|^2)_+^{alpha/2}.

The weighted polynomials w V_{l,m}(x) P_n^{(alpha/2, d/2+l-1)}(2|x|^2 - 1)
are eigenfunctions with eigenvalue jacobi_eigenvalue(n, l, d, alpha) and
the unweighted ones are orthogonal in L^2(w). Coefficients come from a
tensor rule: Gauss-Jacobi in t = 2r^2 - 1 times the sphere rule.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, List, Tuple

import numpy as np
from scipy import special

from errors import ConditionViolation, QuadratureFailure, UnsupportedDimension
from fractransform import jacobi_eigenvalue
from oracle import PointwiseFn
from specfun import HarmonicBasis, harmonic_basis, harmonic_dimension, jacobi_poly, sphere_rule

logger = logging.getLogger(__name__)

DEFAULT_L_MAX = 2
DEFAULT_N_MAX = 16
PROJECTION_TOL = 1e-8


@dataclass(frozen=True, order=True)
class EigenIndex:
    l: int
    m: int
    n: int
    lam: float = field(compare=False)

    @classmethod
    def make(cls, l: int, m: int, n: int, d: int, alpha: float) -> "EigenIndex":
        size = harmonic_dimension(d, l)
        if not 1 <= m <= size:
            raise ConditionViolation(f"m={m} outside [1, {size}] for d={d}, l={l}")
        return cls(l, m, n, jacobi_eigenvalue(n, l, d, alpha))

    @property
    def key(self) -> Tuple[int, int, int]:
        return (self.l, self.m, self.n)


@dataclass
class SpectralExpansion:
    """Coefficients of a function in the basis V_{l,m} P_n, truncated at (L_max, N_max)."""

    d: int
    alpha: float
    coefficients: Dict[EigenIndex, float] = field(default_factory=dict)
    truncation: Tuple[int, int] = (DEFAULT_L_MAX, DEFAULT_N_MAX)

    def __post_init__(self):
        l_max, n_max = self.truncation
        for idx in self.coefficients:
            if idx.l > l_max or idx.n > n_max:
                raise ConditionViolation(f"{idx.key} outside truncation {self.truncation}")

    def __len__(self) -> int:
        return len(self.coefficients)

    def coefficient(self, l: int, m: int, n: int) -> float:
        for idx, c in self.coefficients.items():
            if idx.key == (l, m, n):
                return c
        return 0.0

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "alpha": self.alpha,
            "terms": [
                {"l": idx.l, "m": idx.m, "n": idx.n, "coeff": c, "lambda": idx.lam}
                for idx, c in sorted(self.coefficients.items())
            ],
        }

    def as_pointwise(self) -> PointwiseFn:
        """w times the expansion, as an oracle input."""
        radial = all(idx.l == 0 for idx in self.coefficients)
        return PointwiseFn(
            lambda y: evaluate_solution(self, y, weighted=True),
            self.d,
            kinks=(1.0,),
            support_radius=1.0,
            radial=radial,
            label="expansion",
        )


@lru_cache(maxsize=None)
def _harmonics(d: int, l: int) -> HarmonicBasis:
    return harmonic_basis(d, l)


def _check_dimension(d: int):
    if d < 1 or d > 3:
        raise UnsupportedDimension(f"ball solver runs in d <= 3, got d={d}")


def basis_fn(idx: EigenIndex, x, d: int, alpha: float, weighted: bool = False):
    """V_{l,m}(x) P_n^{(alpha/2, d/2+l-1)}(2|x|^2 - 1), times w(x) when weighted."""
    _check_dimension(d)
    x = np.asarray(x, dtype=float)
    if x.ndim == 0:
        x = x.reshape(1)
    r2 = np.sum(x * x, axis=-1)
    harmonic = _harmonics(d, idx.l).polynomials[idx.m - 1]
    value = harmonic(x) * jacobi_poly(idx.n, alpha / 2.0, d / 2.0 + idx.l - 1.0, 2.0 * r2 - 1.0)
    if weighted:
        value = np.where(r2 < 1.0, value * np.clip(1.0 - r2, 0.0, None) ** (alpha / 2.0), 0.0)
    return float(value) if np.ndim(value) == 0 else value


def _tensor_rule(d: int, alpha: float, count: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Points and weights for int_B F(x) (1-|x|^2)^{alpha/2} dx.

    With t = 2r^2 - 1 the radial measure r^{d-1} (1-r^2)^{alpha/2} dr becomes
    2^{-(alpha+d)/2 - 1} (1-t)^{alpha/2} (1+t)^{d/2-1} dt.
    """
    t, wt = special.roots_jacobi(count, alpha / 2.0, d / 2.0 - 1.0)
    radii = np.sqrt((1.0 + t) / 2.0)
    wt = wt * 2.0 ** (-(alpha + d) / 2.0 - 1.0)
    dirs, ws = sphere_rule(d)
    points = radii[:, None, None] * dirs[None, :, :]
    return points.reshape(-1, d), np.outer(wt, ws).ravel()


def _indices(d: int, alpha: float, l_max: int, n_max: int) -> List[EigenIndex]:
    out = []
    for l in range(l_max + 1):
        for m in range(1, harmonic_dimension(d, l) + 1):
            for n in range(n_max + 1):
                out.append(EigenIndex.make(l, m, n, d, alpha))
    return out


def _coefficients(
    values: np.ndarray, points: np.ndarray, weights: np.ndarray, indices: List[EigenIndex], d, alpha, workers
) -> Dict[EigenIndex, float]:
    def one(idx):
        basis = basis_fn(idx, points, d, alpha)
        num = float(np.sum(weights * values * basis))
        den = float(np.sum(weights * basis * basis))
        return idx, num / den

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return dict(pool.map(one, indices))
    return dict(one(idx) for idx in indices)


def project(
    g: Callable,
    d: int,
    alpha: float,
    l_max: int = DEFAULT_L_MAX,
    n_max: int = DEFAULT_N_MAX,
    tol: float = PROJECTION_TOL,
    workers: int = 1,
) -> SpectralExpansion:
    """
    c_idx = <g, P_idx>_w / <P_idx, P_idx>_w for every index up to (l_max, n_max).

    The projection is repeated on a finer rule; a change above tol relative to
    the largest coefficient raises QuadratureFailure.
    """
    _check_dimension(d)
    alpha = float(alpha)
    if alpha <= 0:
        raise ConditionViolation(f"alpha > 0 violated (alpha={alpha})")
    indices = _indices(d, alpha, l_max, n_max)
    count = 2 * n_max + 8

    points, weights = _tensor_rule(d, alpha, count)
    coeffs = _coefficients(np.asarray(g(points), dtype=float), points, weights, indices, d, alpha, workers)
    fine_points, fine_weights = _tensor_rule(d, alpha, count + 8)
    fine = _coefficients(np.asarray(g(fine_points), dtype=float), fine_points, fine_weights, indices, d, alpha, workers)

    scale = max([1.0] + [abs(c) for c in fine.values()])
    error = max(abs(fine[idx] - coeffs[idx]) for idx in indices)
    logger.debug("project: %d coefficients, refinement change %.3g", len(indices), error)
    if error > tol * scale:
        raise QuadratureFailure(f"projection changed by {error:.3g} under refinement (tol {tol:g})")
    return SpectralExpansion(d, alpha, fine, (l_max, n_max))


def solve(
    g: Callable,
    d: int,
    alpha: float,
    l_max: int = DEFAULT_L_MAX,
    n_max: int = DEFAULT_N_MAX,
    tol: float = PROJECTION_TOL,
    workers: int = 1,
) -> SpectralExpansion:
    """u with (-Delta)^{alpha/2}(w u) = g in the truncated sense: u_idx = c_idx / lambda_idx."""
    rhs = project(g, d, alpha, l_max, n_max, tol, workers)
    coeffs = {idx: c / idx.lam for idx, c in rhs.coefficients.items()}
    logger.info("solve: d=%d alpha=%g truncation=%s", d, alpha, rhs.truncation)
    return SpectralExpansion(d, rhs.alpha, coeffs, rhs.truncation)


def evaluate_solution(e: SpectralExpansion, x, weighted: bool = False):
    """sum coeff P_idx(x), times w(x) when weighted. Accepts a point or an array of points."""
    x = np.asarray(x, dtype=float)
    if x.ndim == 0:
        x = x.reshape(1)
    total = np.zeros(x.shape[:-1])
    for idx, c in e.coefficients.items():
        if c:
            total = total + c * basis_fn(idx, x, e.d, e.alpha, weighted)
    return float(total) if total.ndim == 0 else total


def truncate(e: SpectralExpansion, threshold: float = 0.0) -> SpectralExpansion:
    """Drop coefficients with magnitude at most threshold."""
    kept = {idx: c for idx, c in e.coefficients.items() if abs(c) > threshold}
    return SpectralExpansion(e.d, e.alpha, kept, e.truncation)


def weight(x, alpha: float):
    """(1 - |x|^2)_+^{alpha/2}."""
    x = np.asarray(x, dtype=float)
    r2 = np.sum(x * x, axis=-1)
    return np.clip(1.0 - r2, 0.0, None) ** (alpha / 2.0)


def rhs_from_name(name: str, d: int) -> Callable[[np.ndarray], np.ndarray]:
    """Named right-hand sides for the command line: one, r2, x1."""
    table = {
        "one": lambda y: np.ones(np.asarray(y).shape[:-1]),
        "r2": lambda y: np.sum(np.asarray(y) ** 2, axis=-1),
        "x1": lambda y: np.asarray(y)[..., 0],
    }
    if name not in table:
        raise ConditionViolation(f"unknown right-hand side {name!r}; choose from {sorted(table)}")
    return table[name]
