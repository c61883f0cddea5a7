"""
Fractional Laplacian and Riesz potential as transforms of G-function profiles.

A function f(x) = V(x) * phi(|x|^2) with V a solid harmonic of degree l in
R^d and phi = coeff * G(a; b | r) is mapped to the same shape: the operator
adds one parameter to each block, shifts the rest by -alpha/2 and multiplies
the coefficient by 2^alpha. Negative alpha gives the Riesz potential of
order -alpha through the same rows.

The closed families (power kernels on the full space, the ball and its
complement, hypergeometric profiles, the 2F1 ball identity), the Jacobi
eigenvalues of the weighted ball problem, the dimension lift and the Green
function of the ball live here as well.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Callable, Optional, Tuple

import numpy as np
from scipy import integrate

from errors import (
    CoincidentPoints,
    ConditionViolation,
    PoleError,
    ValidationError,
    WrongRegion,
)
from gammafn import gamma, loggamma, rgamma
from gfun import (
    GSpec,
    HypSpec,
    classify,
    encode_power_kernel,
    reduce,
    swap_integer_pair,
    to_hyp_expansion,
)
from params import MATCH_TOL, Param, ParamLike, strictly_less
from specfun import (
    EvalResult,
    SolidHarmonic,
    harmonic_basis,
    hyp_2f1,
    hyp_pfq,
    meijer_g,
)

logger = logging.getLogger(__name__)

# offset used for chi_{d,k} at even integer alpha
CHI_OFFSET = 1e-7


# ----------------------------------------------------------------------
# types
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class RadialHarmonicFn:
    """f(x) = V(x) * profile(|x|^2) in R^d, V solid harmonic of degree l."""

    d: int
    l: int
    profile: GSpec
    harmonic: Optional[SolidHarmonic] = None
    label: str = ""

    def __post_init__(self):
        violations = []
        if self.d < 1:
            violations.append(f"dimension d={self.d} must be >= 1")
        if self.l < 0:
            violations.append(f"degree l={self.l} must be >= 0")
        if self.harmonic is not None:
            if self.harmonic.d != self.d or self.harmonic.l != self.l:
                violations.append(
                    f"harmonic factor has (d, l) = ({self.harmonic.d}, {self.harmonic.l}), "
                    f"expected ({self.d}, {self.l})"
                )
        if violations:
            raise ValidationError(violations)

    @classmethod
    def make(
        cls,
        d: int,
        l: int,
        profile: GSpec,
        harmonic: Optional[SolidHarmonic] = None,
        label: str = "",
    ) -> "RadialHarmonicFn":
        """Attach the first basis harmonic of degree l when none is given (d <= 3)."""
        if harmonic is None and l > 0 and d <= 3:
            harmonic = harmonic_basis(d, l).polynomials[0]
        return cls(d, l, profile, harmonic, label)

    @property
    def delta(self) -> int:
        return self.d + 2 * self.l

    def with_profile(self, profile: GSpec) -> "RadialHarmonicFn":
        return RadialHarmonicFn(self.d, self.l, profile, self.harmonic, self.label)

    def harmonic_value(self, x: np.ndarray) -> float:
        if self.harmonic is not None:
            return float(self.harmonic(x))
        if self.l == 0:
            return 1.0
        raise ValidationError([f"no explicit harmonic factor of degree {self.l} in d={self.d}"])

    def evaluate(self, x, route: str = "auto") -> EvalResult:
        x = _as_point(x, self.d)
        v = self.harmonic_value(x)
        if v == 0.0:
            return EvalResult(0j, 0.0, "series")
        res = meijer_g(self.profile, float(np.dot(x, x)), route)
        return EvalResult(v * res.value, abs(v) * res.est_abs_error, res.route, res.flags)

    def __call__(self, x) -> float:
        return float(np.real(self.evaluate(x).value))


@dataclass(frozen=True)
class Validity:
    """Where a transform formula holds."""

    origin: bool = False
    sphere: bool = True
    region: str = "all"
    clause: str = ""

    def contains(self, norm: float) -> bool:
        if norm == 0.0 and not self.origin:
            return False
        if abs(norm - 1.0) <= MATCH_TOL and not self.sphere:
            return False
        if self.region == "ball":
            return norm < 1.0
        if self.region == "complement":
            return norm > 1.0
        return True

    def describe(self) -> str:
        parts = []
        if self.region == "ball":
            parts.append("|x| < 1")
        elif self.region == "complement":
            parts.append("|x| > 1")
        if not self.origin and self.region != "complement":
            parts.append("x != 0")
        if not self.sphere and self.region == "all":
            parts.append("|x| != 1")
        text = ", ".join(parts) if parts else "all x"
        if self.clause:
            text += f" ({self.clause})"
        return text

    def __str__(self) -> str:
        return self.describe()


@dataclass(frozen=True)
class TransformResult:
    """Output of a transform together with its validity domain."""

    input: RadialHarmonicFn
    output: RadialHarmonicFn
    alpha: Param
    validity: Validity
    condition: str
    operator: str = "fraclap"
    unreduced: Optional[GSpec] = None
    closed_form: Tuple[Tuple[Param, HypSpec], ...] = ()
    notes: Tuple[str, ...] = ()

    def evaluate(self, x, route: str = "auto") -> EvalResult:
        """Value of the transformed function at x; flagged outside the validity domain."""
        point = _as_point(x, self.output.d)
        res = self.output.evaluate(point, route)
        norm = float(np.linalg.norm(point))
        if not self.validity.contains(norm):
            logger.warning("evaluating at |x| = %g outside validity: %s", norm, self.validity)
            res = res.flagged("outside-validity")
        return res

    def evaluate_closed_form(self, x) -> EvalResult:
        """Sum of the hypergeometric closed form, when one is attached."""
        if not self.closed_form:
            raise WrongRegion("no closed form attached to this result")
        point = _as_point(x, self.output.d)
        r = float(np.dot(point, point))
        v = self.output.harmonic_value(point)
        total, error = 0j, 0.0
        for power, hyp in self.closed_form:
            part = hyp_pfq(hyp, r)
            scale = r ** power.value
            total += scale * part.value
            error += abs(scale) * part.est_abs_error
        return EvalResult(v * total, abs(v) * error, "series")


@dataclass(frozen=True)
class HypTransformResult:
    """V(x) * pF~q(a; b', delta/2 | -scale |x|^2) before and after the operator."""

    d: int
    l: int
    alpha: Param
    scale: float
    input: HypSpec
    output: HypSpec
    harmonic: Optional[SolidHarmonic] = None
    validity: Validity = field(default_factory=lambda: Validity(origin=True))

    def evaluate(self, x) -> EvalResult:
        point = _as_point(x, self.d)
        if self.harmonic is not None:
            v = float(self.harmonic(point))
        elif self.l == 0:
            v = 1.0
        else:
            raise ValidationError([f"no explicit harmonic factor of degree {self.l}"])
        res = hyp_pfq(self.output, self.scale * float(np.dot(point, point)))
        return EvalResult(v * res.value, abs(v) * res.est_abs_error, res.route)


def _as_point(x, d: int) -> np.ndarray:
    point = np.atleast_1d(np.asarray(x, dtype=float))
    if point.shape != (d,):
        raise ValueError(f"expected a point in R^{d}, got shape {point.shape}")
    return point


# ----------------------------------------------------------------------
# constants
# ----------------------------------------------------------------------


def gamma_d(d: int, alpha: float) -> float:
    """gamma_d(alpha) = 2^alpha pi^{d/2} Gamma(alpha/2) / Gamma((d - alpha)/2)."""
    alpha = float(alpha)
    denom = (d - alpha) / 2.0
    if denom <= 0 and denom == round(denom):
        raise PoleError(f"Gamma((d-alpha)/2) has a pole at {denom:g}")
    return float(2.0**alpha * math.pi ** (d / 2.0) * gamma(alpha / 2.0) / gamma(denom))


def _chi_sum(k: int, alpha: float) -> float:
    return sum((-1) ** j * comb(k, j) * abs(k / 2.0 - j) ** alpha for j in range(k + 1))


def chi_dk(d: int, k: int, alpha: float) -> float:
    """
    chi_{d,k}(alpha) = -gamma_d(-alpha) sum_j (-1)^j C(k,j) |k/2 - j|^alpha.

    Raises:
        ConditionViolation: k odd or alpha outside (0, k)
    """
    alpha = float(alpha)
    if k % 2 or not 0 < alpha < k:
        raise ConditionViolation(f"chi_{{d,k}} needs even k and 0 < alpha < k (k={k}, alpha={alpha})")
    if alpha % 2 == 0:
        # pole of gamma_d(-alpha) cancelled by a zero of the sum
        lo, hi = alpha - CHI_OFFSET, alpha + CHI_OFFSET
        return 0.5 * (-gamma_d(d, -lo) * _chi_sum(k, lo) - gamma_d(d, -hi) * _chi_sum(k, hi))
    return -gamma_d(d, -alpha) * _chi_sum(k, alpha)


def mellin_multiplier(s: complex, alpha: float, delta: float) -> complex:
    """Gamma(s) Gamma((delta-alpha)/2 - s) / (2^alpha Gamma(alpha/2 + s) Gamma(delta/2 - s))."""
    s = complex(s)
    alpha, delta = float(alpha), float(delta)
    value = gamma(s) * gamma((delta - alpha) / 2.0 - s)
    value *= rgamma(alpha / 2.0 + s) * rgamma(delta / 2.0 - s)
    return complex(value / 2.0**alpha)


def semigroup_constant(d: int, alpha: float, beta: float) -> float:
    """gamma_d(alpha) gamma_d(beta) / gamma_d(alpha + beta)."""
    if not (alpha > 0 and beta > 0 and alpha + beta < d):
        raise ConditionViolation(f"need alpha, beta > 0 and alpha + beta < d (d={d})")
    return gamma_d(d, alpha) * gamma_d(d, beta) / gamma_d(d, alpha + beta)


def jacobi_eigenvalue(n: int, l: int, d: int, alpha: float) -> float:
    """2^alpha Gamma(1+alpha/2+n) Gamma((delta+alpha)/2+n) / (n! Gamma(delta/2+n))."""
    alpha = float(alpha)
    if alpha <= 0 or n < 0 or l < 0:
        raise ConditionViolation(f"need alpha > 0, n, l >= 0 (alpha={alpha}, n={n}, l={l})")
    delta = d + 2 * l
    log_value = (
        alpha * math.log(2.0)
        + loggamma(1.0 + alpha / 2.0 + n).real
        + loggamma((delta + alpha) / 2.0 + n).real
        - math.lgamma(n + 1)
        - loggamma(delta / 2.0 + n).real
    )
    return math.exp(log_value)


# ----------------------------------------------------------------------
# the operator on G-profiles
# ----------------------------------------------------------------------


def operator_rows(profile: GSpec, delta: ParamLike, alpha: ParamLike) -> GSpec:
    """
    Unreduced output profile of (-Delta)^{alpha/2} (alpha > 0) or of the
    Riesz potential of order -alpha (alpha < 0):

        2^alpha G^{m+1,n+1}_{p+2,q+2}(1-(delta+alpha)/2, a-alpha/2, -alpha/2;
                                      0, b-alpha/2, 1-delta/2)
    """
    delta, alpha = Param.of(delta), Param.of(alpha)
    half = alpha / 2
    a = (
        [1 - (delta + alpha) / 2]
        + [x - half for x in profile.a_first]
        + [x - half for x in profile.a_last]
        + [-half]
    )
    b = (
        [Param.of(0)]
        + [x - half for x in profile.b_first]
        + [x - half for x in profile.b_last]
        + [1 - delta / 2]
    )
    coeff = profile.coeff * 2.0 ** float(alpha.re)
    return GSpec.make(profile.m + 1, profile.n + 1, a, b, coeff)


def _real_alpha(alpha: ParamLike) -> Param:
    alpha = Param.of(alpha)
    if not alpha.is_real:
        raise ConditionViolation(f"alpha must be real, got {alpha}")
    return alpha


def _less(lhs, rhs, exact: bool, name: str):
    if not strictly_less(lhs, rhs, exact):
        raise ConditionViolation(f"{name} violated ({_num(lhs)} vs {_num(rhs)})")


def _num(x) -> str:
    if isinstance(x, Fraction):
        return str(x)
    return f"{float(x):.12g}"


def _check_hypotheses(f: RadialHarmonicFn, alpha: Param, riesz: bool):
    """Hypotheses of the general transforms; raises naming the failed inequality."""
    report = classify(f.profile)
    exact = report.exact and alpha.exact
    a = alpha.re
    d, l = f.d, f.l
    shift = a if riesz else -a
    sign = "" if riesz else "-"
    if report.condition == "A":
        _less(shift + l, 2 * (1 - report.a_bar), exact, f"2(1 - a_bar) > {sign}alpha + l")
        _less(-2 * report.b_under, d + l, exact, "-2 b_under < d + l")
    else:
        _less(shift + l, 2 * report.lambda_over, exact, f"2 lambda_over > {sign}alpha + l")
        _less(2 * report.lambda_under, d + l, exact, "2 lambda_under < d + l")
        if report.condition == "B":
            _less(0, report.nu, exact, "nu > 0 (condition B)")
    return report


def _leading_exponent_continuous(g: GSpec, l: int) -> bool:
    """V(x) g(|x|^2) continuous at 0, judged from the leading power r^{b_under}."""
    if g.m == 0:
        return g.p == g.q
    b_min = min(x.re for x in g.b_first)
    lead = l + 2 * b_min
    if g.exact:
        if lead > 0:
            return True
        count = sum(1 for x in g.b_first if x.re == b_min and x.im == 0)
        return lead == 0 and l == 0 and count == 1
    lead = float(lead)
    if lead > MATCH_TOL:
        return True
    count = sum(1 for x in g.b_first if abs(float(x.re) - float(b_min)) <= MATCH_TOL)
    return abs(lead) <= MATCH_TOL and l == 0 and count == 1


def riesz_transform(f: RadialHarmonicFn, alpha: ParamLike) -> TransformResult:
    """
    Riesz potential (-Delta)^{-alpha/2} f for 0 < alpha < d.

    Raises:
        ConditionViolation: naming the failed hypothesis
    """
    alpha = _real_alpha(alpha)
    if not (0 < alpha.re < f.d):
        raise ConditionViolation(f"0 < alpha < d violated (alpha={alpha}, d={f.d})")
    report = _check_hypotheses(f, alpha, riesz=True)
    rows = operator_rows(f.profile, f.delta, -alpha)
    out = reduce(rows)
    sphere, clause = True, ""
    if report.condition == "B":
        sphere = strictly_less(1, report.nu + alpha.re, report.exact and alpha.exact)
        clause = f"|x| = 1 needs nu + alpha > 1, nu = {_num(report.nu)}"
    validity = Validity(origin=False, sphere=sphere, clause=clause)
    logger.debug("riesz_transform: %s -> %s", f.profile, out)
    return TransformResult(
        f, f.with_profile(out), alpha, validity, report.condition, "riesz", rows
    )


def fraclap_transform(f: RadialHarmonicFn, alpha: ParamLike) -> TransformResult:
    """
    Fractional Laplacian (-Delta)^{alpha/2} f for alpha > 0.

    The result holds for x != 0; at x = 0 when both f and the output are
    continuous there; at |x| = 1 for condition B only when nu > 1 + alpha.

    Raises:
        ConditionViolation: naming the failed hypothesis
    """
    alpha = _real_alpha(alpha)
    if alpha.re <= 0:
        raise ConditionViolation(f"alpha > 0 violated (alpha={alpha})")
    report = _check_hypotheses(f, alpha, riesz=False)
    rows = operator_rows(f.profile, f.delta, alpha)
    out = reduce(rows)
    sphere, clause = True, ""
    if report.condition == "B":
        sphere = strictly_less(1 + alpha.re, report.nu, report.exact and alpha.exact)
        clause = f"|x| = 1 needs nu > 1 + alpha, nu = {_num(report.nu)}"
    origin = _leading_exponent_continuous(f.profile, f.l) and _leading_exponent_continuous(out, f.l)
    validity = Validity(origin=origin, sphere=sphere, clause=clause)
    logger.debug("fraclap_transform: %s -> %s", f.profile, out)
    return TransformResult(
        f, f.with_profile(out), alpha, validity, report.condition, "fraclap", rows
    )


def _identity(f: RadialHarmonicFn) -> TransformResult:
    return TransformResult(
        f, f, Param.of(0), Validity(origin=True), classify(f.profile).condition, "identity"
    )


def apply_operator(f: RadialHarmonicFn, alpha: ParamLike) -> TransformResult:
    """alpha < 0: Riesz potential of order |alpha|; 0: identity; alpha > 0: fractional Laplacian."""
    alpha = _real_alpha(alpha)
    if alpha.re == 0:
        return _identity(f)
    if alpha.re < 0:
        return riesz_transform(f, -alpha)
    return fraclap_transform(f, alpha)


# ----------------------------------------------------------------------
# kernel families
# ----------------------------------------------------------------------


def _check_alpha_range(alpha: Param, d: int):
    if not (alpha.re > 0 or -d < alpha.re < 0):
        raise ConditionViolation(f"-d < alpha < 0 or alpha > 0 violated (alpha={alpha}, d={d})")


def _even_integer_at_least(value, bound) -> bool:
    if isinstance(value, Fraction):
        return value.denominator == 1 and value.numerator % 2 == 0 and value >= bound
    v = float(value)
    return abs(v - round(v)) <= MATCH_TOL and round(v) % 2 == 0 and v >= bound - MATCH_TOL


def _kernel_result(
    f: RadialHarmonicFn, alpha: Param, validity: Validity, condition: str, closed: bool = False
) -> TransformResult:
    rows = operator_rows(f.profile, f.delta, alpha)
    out = reduce(rows)
    closed_form: Tuple = ()
    if closed:
        closed_form = tuple(to_hyp_expansion(out))
    operator = "fraclap" if alpha.re > 0 else "riesz"
    return TransformResult(
        f, f.with_profile(out), alpha, validity, condition, operator, rows, closed_form
    )


def power_function(
    rho: ParamLike,
    sigma: ParamLike,
    region: str,
    d: int,
    l: int = 0,
    harmonic: Optional[SolidHarmonic] = None,
) -> RadialHarmonicFn:
    """V(x) |x|^{2 rho} times (1+|x|^2)^sigma, (1-|x|^2)_+^sigma or (|x|^2-1)_+^sigma."""
    profile = encode_power_kernel(rho, sigma, region)
    return RadialHarmonicFn.make(d, l, profile, harmonic, f"power-{region}")


def power_fullspace(
    rho: ParamLike,
    sigma: ParamLike,
    d: int,
    l: int,
    alpha: ParamLike,
    harmonic: Optional[SolidHarmonic] = None,
) -> TransformResult:
    """
    (-Delta)^{alpha/2} of V(x) |x|^{2 rho} (1+|x|^2)^sigma:

        2^alpha / Gamma(-sigma) V(x) G^{22}_{33}(1-(delta+alpha)/2, 1+rho+sigma-alpha/2, -alpha/2;
                                                 0, rho-alpha/2, 1-delta/2 | |x|^2)

    Raises:
        ConditionViolation: 2 rho > -d-l or 2 rho + 2 sigma < alpha - l fails
    """
    rho, sigma, alpha = Param.of(rho), Param.of(sigma), _real_alpha(alpha)
    f = power_function(rho, sigma, "full", d, l, harmonic)
    if alpha.re == 0:
        return _identity(f)
    _check_alpha_range(alpha, d)
    exact = rho.exact and sigma.exact and alpha.exact
    _less(-d - l, 2 * rho.re, exact, "2 rho > -d - l")
    _less(2 * rho.re + 2 * sigma.re, alpha.re - l, exact, "2 rho + 2 sigma < alpha - l")
    origin = strictly_less(alpha.re - l, 2 * rho.re, exact) or _even_integer_at_least(2 * rho.re, -l)
    validity = Validity(origin=origin, clause="x = 0 needs 2 rho > alpha - l or 2 rho even >= -l")
    return _kernel_result(f, alpha, validity, "A")


def power_ball(
    rho: ParamLike,
    sigma: ParamLike,
    d: int,
    l: int,
    alpha: ParamLike,
    region: str = "ball",
    harmonic: Optional[SolidHarmonic] = None,
) -> TransformResult:
    """
    (-Delta)^{alpha/2} of V(x) |x|^{2 rho} (1-|x|^2)_+^sigma (region "ball",
    output G^{21}_{33}) or V(x) |x|^{2 rho} (|x|^2-1)_+^sigma (region
    "complement", output G^{12}_{33}), coefficient 2^alpha Gamma(1+sigma).
    """
    if region not in ("ball", "complement"):
        raise ConditionViolation(f"region must be 'ball' or 'complement', got {region!r}")
    rho, sigma, alpha = Param.of(rho), Param.of(sigma), _real_alpha(alpha)
    exact = rho.exact and sigma.exact and alpha.exact
    _less(-1, sigma.re, exact, "sigma > -1")
    f = power_function(rho, sigma, region, d, l, harmonic)
    if alpha.re == 0:
        return _identity(f)
    _check_alpha_range(alpha, d)
    if region == "ball":
        _less(-d - l, 2 * rho.re, exact, "2 rho > -d - l")
        origin = strictly_less(alpha.re - l, 2 * rho.re, exact) or _even_integer_at_least(
            2 * rho.re, -l
        )
        validity = Validity(
            origin=origin, sphere=False, clause="x = 0 needs 2 rho > alpha - l or 2 rho even >= -l"
        )
    else:
        _less(2 * rho.re + 2 * sigma.re, alpha.re - l, exact, "2 rho + 2 sigma < alpha - l")
        validity = Validity(origin=True, sphere=False)
    return _kernel_result(f, alpha, validity, "B")


def ball_2f1_profile(rho: ParamLike, sigma: ParamLike, alpha: ParamLike) -> GSpec:
    """
    (1-r)_+^sigma 2F~1(1+sigma-alpha/2, alpha/2-rho; 1+sigma | 1-r)
        = G^{20}_{22}(alpha/2, 1+rho+sigma-alpha/2; 0, rho | r).
    """
    rho, sigma, alpha = Param.of(rho), Param.of(sigma), Param.of(alpha)
    return GSpec.make(2, 0, [alpha / 2, 1 + rho + sigma - alpha / 2], [0, rho])


def ball_2f1_transform(
    rho: ParamLike,
    sigma: ParamLike,
    d: int,
    l: int,
    alpha: ParamLike,
    harmonic: Optional[SolidHarmonic] = None,
) -> TransformResult:
    """
    (-Delta)^{alpha/2} of V(x) (1-|x|^2)_+^sigma 2F~1(1+sigma-alpha/2, alpha/2-rho; 1+sigma | 1-|x|^2).

    On 0 < |x| < 1 the output is

        2^alpha Gamma(rho+delta/2) / Gamma(1+sigma-alpha/2) V(x) |x|^{2 rho - alpha}
            2F~1(rho+delta/2, alpha/2-sigma; rho+(delta-alpha)/2 | |x|^2),

    attached as the closed form of the result.
    """
    rho, sigma, alpha = Param.of(rho), Param.of(sigma), _real_alpha(alpha)
    exact = rho.exact and sigma.exact and alpha.exact
    _less(-1, sigma.re, exact, "sigma > -1")
    _less(-d - l, 2 * rho.re, exact, "2 rho > -d - l")
    f = RadialHarmonicFn.make(d, l, ball_2f1_profile(rho, sigma, alpha), harmonic, "ball-2f1")
    if alpha.re == 0:
        return _identity(f)
    _check_alpha_range(alpha, d)
    validity = Validity(
        origin=strictly_less(alpha.re - l, 2 * rho.re, exact),
        sphere=False,
        region="ball",
        clause="x = 0 needs 2 rho > alpha - l",
    )
    return _kernel_result(f, alpha, validity, "B", closed=True)


def harmonic_ball_function(d: int, alpha: ParamLike, l: int = 0) -> RadialHarmonicFn:
    """
    V(x) (1-|x|^2)_+^{alpha/2} 2F~1(1, delta/2; 1+alpha/2 | 1-|x|^2): the
    2F1 ball function with sigma = alpha/2, 2 rho = alpha - delta, annihilated
    by (-Delta)^{alpha/2} inside the punctured ball.
    """
    alpha = Param.of(alpha)
    rho = (alpha - (d + 2 * l)) / 2
    return RadialHarmonicFn.make(d, l, ball_2f1_profile(rho, alpha / 2, alpha), None, "harmonic-ball")


def with_delta_half(h: HypSpec, d: int, l: int = 0) -> HypSpec:
    """pF~q(a; b | z) = Gamma(delta/2) p+1F~q+1(a, delta/2; b, delta/2 | z) (no factor unregularized)."""
    dh = Param.of(Fraction(d + 2 * l, 2))
    coeff = h.coeff
    if h.regularized:
        coeff *= complex(gamma(float(dh.re)))
    return HypSpec(h.upper + (dh,), h.lower + (dh,), h.regularized, coeff, h.sign)


def hyp_transform(
    h: HypSpec,
    d: int,
    l: int,
    alpha: ParamLike,
    scale: float = 1.0,
    harmonic: Optional[SolidHarmonic] = None,
) -> HypTransformResult:
    """
    (-Delta)^{alpha/2} of V(x) pF~q(a; b', delta/2 | -scale |x|^2), alpha > -d:

        2^alpha scale^{alpha/2} prod Gamma(a + alpha/2) / prod Gamma(a)
            V(x) pF~q(a + alpha/2; b' + alpha/2, delta/2 | -scale |x|^2)

    For the unregularized series the coefficient also carries
    prod Gamma(b') / prod Gamma(b' + alpha/2). Valid for all x.

    Raises:
        WrongRegion: argument sign is not -1
        ConditionViolation: last lower parameter is not delta/2, p not in
            {q-1, q, q+1}, or 2 min Re a > -alpha + l fails
    """
    alpha = _real_alpha(alpha)
    if h.sign != -1:
        raise WrongRegion("hyp_transform acts on pF~q(...| -|x|^2); argument sign must be -1")
    if scale <= 0:
        raise ConditionViolation(f"argument scale must be positive, got {scale}")
    delta_half = Param.of(Fraction(d + 2 * l, 2))
    if not h.lower or not h.lower[-1].matches(delta_half):
        raise ConditionViolation(
            f"last lower parameter must equal delta/2 = {delta_half}; use with_delta_half"
        )
    exact = alpha.exact and all(x.exact for x in h.upper)
    _less(-d, alpha.re, exact, "alpha > -d")
    if h.p not in (h.q - 1, h.q, h.q + 1):
        raise ConditionViolation(f"p in {{q-1, q, q+1}} violated (p={h.p}, q={h.q})")
    if h.upper:
        a_min = min(x.re for x in h.upper)
        _less(-alpha.re + l, 2 * a_min, exact, "2 min Re a > -alpha + l")
    half = alpha / 2
    av = float(alpha.re)
    coeff = h.coeff * 2.0**av * scale ** (av / 2.0)
    for x in h.upper:
        if x.is_nonpositive_integer():
            logger.debug("hyp_transform: upper %s is a non-positive integer, prefactor vanishes", x)
        coeff *= gamma((x + half).value) * rgamma(x.value)
    lower_head = h.lower[:-1]
    if not h.regularized:
        for x in lower_head:
            coeff *= gamma(x.value) * rgamma((x + half).value)
    out = HypSpec(
        tuple(x + half for x in h.upper),
        tuple(x + half for x in lower_head) + (h.lower[-1],),
        h.regularized,
        complex(coeff),
        -1,
    )
    if harmonic is None and l > 0 and d <= 3:
        harmonic = harmonic_basis(d, l).polynomials[0]
    return HypTransformResult(d, l, alpha, float(scale), h, out, harmonic, Validity(origin=True))


# ----------------------------------------------------------------------
# Jacobi eigenfunctions, lift, Green function
# ----------------------------------------------------------------------


def jacobi_profile(n: int, l: int, d: int, alpha: ParamLike) -> GSpec:
    """
    G-form of (1-r)_+^{alpha/2} P_n^{(alpha/2, delta/2-1)}(2r-1):

        Gamma(1+alpha/2+n)/n! G^{20}_{22}(1+alpha/2+n, 1-delta/2-n; 0, 1-delta/2 | r)
      = (-1)^n Gamma(1+alpha/2+n)/n! G^{11}_{22}(1-delta/2-n, 1+alpha/2+n; 0, 1-delta/2 | r)
    """
    alpha = Param.of(alpha)
    delta = Param.of(d + 2 * l)
    coeff = complex(gamma((1 + alpha / 2 + n).value)) / factorial(n)
    base = GSpec.make(
        2, 0, [1 + alpha / 2 + n, 1 - delta / 2 - n], [0, 1 - delta / 2], coeff
    )
    return swap_integer_pair(base, 1, 1)


def jacobi_function(
    n: int, l: int, d: int, alpha: ParamLike, harmonic: Optional[SolidHarmonic] = None
) -> RadialHarmonicFn:
    """p(x) = V(x) (1-|x|^2)_+^{alpha/2} P_n^{(alpha/2, d/2+l-1)}(2|x|^2 - 1)."""
    return RadialHarmonicFn.make(d, l, jacobi_profile(n, l, d, alpha), harmonic, f"jacobi-{n}")


def bochner_lift(f: RadialHarmonicFn) -> RadialHarmonicFn:
    """The radial function in R^{d+2l} with the same profile."""
    return RadialHarmonicFn(f.d + 2 * f.l, 0, f.profile, None, f.label)


def green_function_ball(x, y, d: int, alpha: float) -> float:
    """
    Green function of (-Delta)^{alpha/2} in the unit ball, 0 < alpha < min(2, d):

        Gamma(d/2) (1-|x|^2)^{alpha/2} (1-|y|^2)^{alpha/2} / (2^alpha pi^{d/2} Gamma(alpha/2) |x-y|^d)
            2F~1(d/2, alpha/2; 1+alpha/2 | -(1-|x|^2)(1-|y|^2)/|x-y|^2)

    Raises:
        CoincidentPoints: x = y
        ConditionViolation: alpha or the points out of range
    """
    alpha = float(alpha)
    if not 0 < alpha < min(2, d):
        raise ConditionViolation(f"0 < alpha < min(2, d) violated (alpha={alpha}, d={d})")
    x, y = _as_point(x, d), _as_point(y, d)
    wx, wy = 1.0 - float(np.dot(x, x)), 1.0 - float(np.dot(y, y))
    if wx <= 0 or wy <= 0:
        raise ConditionViolation("|x| < 1 and |y| < 1 required")
    dist = float(np.linalg.norm(x - y))
    if dist == 0:
        raise CoincidentPoints("Green function is singular at x = y")
    prefactor = gamma(d / 2.0) * (wx * wy) ** (alpha / 2.0)
    prefactor /= 2.0**alpha * math.pi ** (d / 2.0) * gamma(alpha / 2.0) * dist**d
    hyp = hyp_2f1(d / 2.0, alpha / 2.0, 1.0 + alpha / 2.0, -wx * wy / dist**2, regularized=True)
    return float(prefactor * hyp.value.real)


def fourier_fraclap_1d(f_hat: Callable[[float], float], x: float, alpha: float) -> EvalResult:
    """
    (1/pi) int_0^inf xi^alpha f_hat(xi) cos(x xi) d xi: the Fourier multiplier
    |xi|^alpha applied to an even function given by its transform.
    """
    x, alpha = float(x), float(alpha)

    def integrand(xi):
        return xi**alpha * f_hat(xi)

    if x == 0.0:
        value, error = integrate.quad(integrand, 0.0, np.inf, epsabs=1e-13, epsrel=1e-12, limit=500)
    else:
        value, error = integrate.quad(
            integrand, 0.0, np.inf, weight="cos", wvar=abs(x), epsabs=1e-13, limlst=100
        )
    return EvalResult(value / math.pi, error / math.pi, "quadrature")
