"""
Parameter algebra for Meijer G representations.

A radial profile is stored as coeff * G^{m,n}_{p,q}(a; b | r) with the
parameter rows split into blocks

    a = (a_1 .. a_n | a_{n+1} .. a_p),   b = (b_1 .. b_m | b_{m+1} .. b_q).

Permutations inside a block do not change the function. The structural
identities here (shift, inversion, reduction, integer swap, hypergeometric
expansion) are exact on the parameter records; numerical evaluation lives
in specfun.
"""

import cmath
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from errors import (
    ConditionViolation,
    IntegerBDifference,
    NonPositiveIntegerUpper,
    ValidationError,
    WrongRegion,
)
from gammafn import gamma, rgamma
from params import Param, ParamLike, as_params, strictly_less

logger = logging.getLogger(__name__)

INF = math.inf
ExtReal = Union[Fraction, float]

REGIONS = ("full", "ball", "complement")


@dataclass(frozen=True)
class GSpec:
    """coeff * G^{m,n}_{p,q}(a; b | r)."""

    m: int
    n: int
    p: int
    q: int
    a: Tuple[Param, ...]
    b: Tuple[Param, ...]
    coeff: complex = 1.0 + 0j

    def __post_init__(self):
        object.__setattr__(self, "a", as_params(self.a))
        object.__setattr__(self, "b", as_params(self.b))
        object.__setattr__(self, "coeff", complex(self.coeff))
        if len(self.a) != self.p or len(self.b) != self.q:
            raise ValidationError(
                [f"row lengths ({len(self.a)}, {len(self.b)}) do not match p={self.p}, q={self.q}"]
            )

    @classmethod
    def make(
        cls,
        m: int,
        n: int,
        a: Sequence[ParamLike],
        b: Sequence[ParamLike],
        coeff: complex = 1.0,
    ) -> "GSpec":
        return cls(m, n, len(a), len(b), tuple(a), tuple(b), coeff)

    @property
    def a_first(self) -> Tuple[Param, ...]:
        return self.a[: self.n]

    @property
    def a_last(self) -> Tuple[Param, ...]:
        return self.a[self.n :]

    @property
    def b_first(self) -> Tuple[Param, ...]:
        return self.b[: self.m]

    @property
    def b_last(self) -> Tuple[Param, ...]:
        return self.b[self.m :]

    @property
    def exact(self) -> bool:
        return all(x.exact for x in self.a + self.b)

    def with_coeff(self, coeff: complex) -> "GSpec":
        return GSpec(self.m, self.n, self.p, self.q, self.a, self.b, coeff)

    def scaled(self, factor: complex) -> "GSpec":
        return self.with_coeff(self.coeff * factor)

    def same_record(self, other: "GSpec", rel_tol: float = 1e-12) -> bool:
        """Parameter rows equal block-wise as multisets, coefficients to rel_tol."""
        if (self.m, self.n, self.p, self.q) != (other.m, other.n, other.p, other.q):
            return False
        blocks = [
            (self.a_first, other.a_first),
            (self.a_last, other.a_last),
            (self.b_first, other.b_first),
            (self.b_last, other.b_last),
        ]
        if not all(_same_multiset(x, y) for x, y in blocks):
            return False
        scale = max(abs(self.coeff), abs(other.coeff), 1e-300)
        return abs(self.coeff - other.coeff) <= rel_tol * scale

    def __str__(self) -> str:
        def row(first, last):
            text = ", ".join(str(x) for x in first)
            if last:
                text += " | " + ", ".join(str(x) for x in last)
            return text

        return (
            f"{self.coeff:.12g} * G^{{{self.m},{self.n}}}_{{{self.p},{self.q}}}"
            f"(({row(self.a_first, self.a_last)}); ({row(self.b_first, self.b_last)}))"
        )


def _same_multiset(xs: Sequence[Param], ys: Sequence[Param]) -> bool:
    if len(xs) != len(ys):
        return False
    pool = list(ys)
    for x in xs:
        for k, y in enumerate(pool):
            if x.matches(y):
                del pool[k]
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class HypSpec:
    """
    coeff * pFq(upper; lower | sign * r), regularized (divided by prod Gamma(lower))
    when ``regularized`` is set.
    """

    upper: Tuple[Param, ...]
    lower: Tuple[Param, ...]
    regularized: bool = True
    coeff: complex = 1.0 + 0j
    sign: int = 1

    def __post_init__(self):
        object.__setattr__(self, "upper", as_params(self.upper))
        object.__setattr__(self, "lower", as_params(self.lower))
        object.__setattr__(self, "coeff", complex(self.coeff))
        violations = []
        if len(self.upper) > len(self.lower) + 1:
            violations.append(
                f"len(upper)={len(self.upper)} exceeds len(lower)+1={len(self.lower) + 1}"
            )
        if not self.regularized:
            for j, c in enumerate(self.lower):
                if c.is_nonpositive_integer():
                    violations.append(
                        f"lower parameter {j + 1} = {c} is a non-positive integer"
                    )
        if self.sign not in (1, -1):
            violations.append(f"argument sign must be +1 or -1, got {self.sign}")
        if violations:
            raise ValidationError(violations)

    @property
    def p(self) -> int:
        return len(self.upper)

    @property
    def q(self) -> int:
        return len(self.lower)

    def __str__(self) -> str:
        name = "F~" if self.regularized else "F"
        up = ", ".join(str(x) for x in self.upper) or "-"
        lo = ", ".join(str(x) for x in self.lower) or "-"
        arg = "r" if self.sign > 0 else "-r"
        return f"{self.coeff:.12g} * {self.p}{name}{self.q}({up}; {lo} | {arg})"


@dataclass
class ValidationResult:
    ok: bool
    violations: List[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class ConditionReport:
    """Classification of a GSpec by the pole-separation and balance conditions."""

    cond_s: bool
    condition: str
    nu: ExtReal
    a_bar: ExtReal
    b_under: ExtReal
    lambda_under: ExtReal
    lambda_over: ExtReal
    exact: bool = True

    @property
    def has_contour(self) -> bool:
        return (
            self.condition != "none"
            and self.cond_s
            and strictly_less(self.lambda_under, self.lambda_over, self.exact)
        )


def validate(g: GSpec) -> ValidationResult:
    """
    Check the standing assumptions on a G-function record.

    Args:
        g: the record to check

    Returns:
        ValidationResult with every violated invariant listed
    """
    violations = []
    if not 0 <= g.m <= g.q:
        violations.append(f"m={g.m} outside [0, q={g.q}]")
    if not 0 <= g.n <= g.p:
        violations.append(f"n={g.n} outside [0, p={g.p}]")
    if g.p + g.q > 2 * g.m + 2 * g.n:
        violations.append(f"p+q > 2m+2n ({g.p + g.q} > {2 * g.m + 2 * g.n})")
    for j, aj in enumerate(g.a_first):
        for i, bi in enumerate(g.b_first):
            diff = aj - bi
            if diff.is_integer() and diff.nearest_int() >= 1:
                violations.append(
                    f"a{j + 1}-b{i + 1} = {diff.nearest_int()} is a positive integer"
                )
    return ValidationResult(not violations, violations)


def ensure_valid(g: GSpec) -> GSpec:
    result = validate(g)
    if not result:
        raise ValidationError(result.violations)
    return g


def _sum_re(values: Sequence[Param]) -> ExtReal:
    return sum((x.re for x in values), Fraction(0))


def classify(g: GSpec) -> ConditionReport:
    """
    Classify a valid record: Condition S, class A/B/C/D, nu, a_bar, b_under
    and the index bounds lambda_under / lambda_over.
    """
    ensure_valid(g)
    exact = g.exact
    nu = _sum_re(g.a) - _sum_re(g.b)
    a_bar = max((x.re for x in g.a_first), default=-INF)
    b_under = min((x.re for x in g.b_first), default=INF)
    cond_s = strictly_less(-b_under, 1 - a_bar, exact)

    balance = 2 * g.m + 2 * g.n
    if g.p + g.q < balance:
        condition = "A"
    elif g.p + g.q > balance:
        condition = "none"
    elif g.p == g.q:
        condition = "B"
    elif g.p < g.q:
        condition = "C"
    else:
        condition = "D"

    lambda_under = -b_under
    lambda_over = 1 - a_bar
    if condition == "C":
        lambda_over = min(lambda_over, Fraction(1, 2) + (nu - 1) / (g.q - g.p))
    elif condition == "D":
        lambda_under = max(lambda_under, Fraction(1, 2) - (nu - 1) / (g.p - g.q))

    if not exact:
        nu, a_bar, b_under = float(nu), float(a_bar), float(b_under)
        lambda_under, lambda_over = float(lambda_under), float(lambda_over)
    return ConditionReport(
        cond_s, condition, nu, a_bar, b_under, lambda_under, lambda_over, exact
    )


def shift_power(g: GSpec, c: ParamLike) -> GSpec:
    """r^c * G(a; b | r) = G(a + c; b + c | r)."""
    c = Param.of(c)
    return GSpec(
        g.m, g.n, g.p, g.q, tuple(x + c for x in g.a), tuple(x + c for x in g.b), g.coeff
    )


def invert_argument(g: GSpec) -> GSpec:
    """G^{m,n}_{p,q}(a; b | 1/r) = G^{n,m}_{q,p}(1 - b; 1 - a | r)."""
    return GSpec(
        g.n,
        g.m,
        g.q,
        g.p,
        tuple(1 - x for x in g.b),
        tuple(1 - x for x in g.a),
        g.coeff,
    )


def _find_pair(xs: Sequence[Param], ys: Sequence[Param]) -> Optional[Tuple[int, int]]:
    for i, x in enumerate(xs):
        for j, y in enumerate(ys):
            if x.matches(y):
                return i, j
    return None


def reduce(g: GSpec) -> GSpec:
    """
    Cancel every parameter that appears both in the first a-block and the
    last b-block, or in the last a-block and the first b-block.
    """
    m, n = g.m, g.n
    a_first, a_last = list(g.a_first), list(g.a_last)
    b_first, b_last = list(g.b_first), list(g.b_last)
    while True:
        pair = _find_pair(a_first, b_last)
        if pair is not None:
            logger.debug("reduce: cancel %s (first a-block, last b-block)", a_first[pair[0]])
            del a_first[pair[0]]
            del b_last[pair[1]]
            n -= 1
            continue
        pair = _find_pair(a_last, b_first)
        if pair is not None:
            logger.debug("reduce: cancel %s (last a-block, first b-block)", a_last[pair[0]])
            del a_last[pair[0]]
            del b_first[pair[1]]
            m -= 1
            continue
        break
    return GSpec.make(m, n, a_first + a_last, b_first + b_last, g.coeff)


def swap_integer_pair(g: GSpec, i: int, j: int) -> GSpec:
    """
    Move a pair (a_i, b_j) with integer difference k = b_j - a_i across blocks:

        G^{m,n}_{p,q}(c, a'; b', c+k) = (-1)^k G^{m+1,n-1}_{p,q}(a', c; c+k, b')

    applied forwards when a_i is in the first a-block and b_j in the last
    b-block, backwards when a_i is in the last a-block and b_j in the first
    b-block. Indices are 0-based positions in the full rows.
    """
    if not (0 <= i < g.p and 0 <= j < g.q):
        raise ConditionViolation(f"swap indices ({i}, {j}) out of range")
    diff = g.b[j] - g.a[i]
    if not diff.is_integer():
        raise ConditionViolation(f"b{j + 1}-a{i + 1} = {diff} is not an integer")
    sign = -1 if diff.nearest_int() % 2 else 1
    a, b = list(g.a), list(g.b)
    ai, bj = a[i], b[j]
    if i < g.n and j >= g.m:
        first_a = [x for k, x in enumerate(a[: g.n]) if k != i]
        last_a = [ai] + a[g.n :]
        first_b = b[: g.m] + [bj]
        last_b = [x for k, x in enumerate(b[g.m :], start=g.m) if k != j]
        m, n = g.m + 1, g.n - 1
    elif i >= g.n and j < g.m:
        first_a = a[: g.n] + [ai]
        last_a = [x for k, x in enumerate(a[g.n :], start=g.n) if k != i]
        first_b = [x for k, x in enumerate(b[: g.m]) if k != j]
        last_b = [bj] + b[g.m :]
        m, n = g.m - 1, g.n + 1
    else:
        raise ConditionViolation(
            f"a{i + 1} and b{j + 1} are not in opposite blocks (n={g.n}, m={g.m})"
        )
    return GSpec.make(m, n, first_a + last_a, first_b + last_b, g.coeff * sign)


def integer_b_pairs(g: GSpec) -> List[Tuple[int, int]]:
    """Pairs (j, k), j < k < m, with b_j - b_k an integer."""
    pairs = []
    for j in range(g.m):
        for k in range(j + 1, g.m):
            if (g.b[j] - g.b[k]).is_integer():
                pairs.append((j, k))
    return pairs


def to_hyp_expansion(g: GSpec) -> List[Tuple[Param, HypSpec]]:
    """
    Expand G into m hypergeometric terms r^{b_k} * p F~ q-1(...).

    Args:
        g: record with p <= q and non-integer b-differences in the first block

    Returns:
        list of (power b_k, HypSpec) pairs; the HypSpec carries the term's
        coefficient and the argument sign (-1)^{p-m-n}

    Raises:
        WrongRegion: p > q (invert the argument first)
        IntegerBDifference: coincident poles need the perturbation path
    """
    if g.p > g.q:
        raise WrongRegion(f"p={g.p} > q={g.q}: invert the argument first")
    pairs = integer_b_pairs(g)
    if pairs:
        raise IntegerBDifference(
            "b-differences in the first block are integers: "
            + ", ".join(f"b{j + 1}-b{k + 1}" for j, k in pairs),
            pairs,
        )
    sign = -1 if (g.p - g.m - g.n) % 2 else 1
    terms = []
    for k in range(g.m):
        bk = g.b[k]
        bkv = bk.value
        coeff = g.coeff * math.pi ** (g.m - 1)
        for aj in g.a_first:
            coeff *= gamma(1 + bkv - aj.value)
        for j in range(g.m):
            if j != k:
                coeff /= cmath.sin((g.b[j].value - bkv) * math.pi)
        for aj in g.a_last:
            coeff *= rgamma(aj.value - bkv)
        upper = tuple(1 + bk - aj for aj in g.a)
        lower = tuple(1 + bk - g.b[j] for j in range(g.q) if j != k)
        terms.append((bk, HypSpec(upper, lower, True, complex(coeff), sign)))
    return terms


def from_hyp(h: HypSpec, delta_half: Optional[ParamLike] = None) -> GSpec:
    """
    Write coeff * pF~q(a; b | -r) as G^{1,p}_{p,q+1}(1 - a; 0, 1 - b | r).

    Args:
        h: hypergeometric record with argument sign -1
        delta_half: if given, append it to both rows first (so the last lower
            parameter becomes delta/2)

    Returns:
        GSpec with coefficient coeff / prod Gamma(a)
    """
    if h.sign != -1:
        raise WrongRegion("from_hyp represents pF~q(a; b | -r); argument sign must be -1")
    upper, lower, coeff = list(h.upper), list(h.lower), h.coeff
    if not h.regularized:
        for c in lower:
            coeff *= gamma(c.value)
    if delta_half is not None:
        dh = Param.of(delta_half)
        upper.append(dh)
        lower.append(dh)
        coeff *= gamma(dh.value)
    for c in upper:
        if c.is_nonpositive_integer():
            raise NonPositiveIntegerUpper(f"upper parameter {c} is a non-positive integer")
        coeff /= gamma(c.value)
    return GSpec.make(
        1,
        len(upper),
        [1 - c for c in upper],
        [Param(Fraction(0))] + [1 - c for c in lower],
        complex(coeff),
    )


def encode_power_kernel(rho: ParamLike, sigma: ParamLike, region: str) -> GSpec:
    """
    G-form of r^rho (1+r)^sigma (full), r^rho (1-r)_+^sigma (ball) or
    r^rho (r-1)_+^sigma (complement).
    """
    rho, sigma = Param.of(rho), Param.of(sigma)
    if region not in REGIONS:
        raise ConditionViolation(f"region must be one of {REGIONS}, got {region!r}")
    top = 1 + rho + sigma
    if region == "full":
        if sigma.is_integer() and sigma.nearest_int() >= 0:
            raise ConditionViolation(
                f"sigma = {sigma} is a nonnegative integer: (1+r)^sigma is not of G^11_11 type"
            )
        return GSpec.make(1, 1, [top], [rho], complex(rgamma(-sigma.value)))
    if not strictly_less(-1, sigma.re, sigma.exact):
        raise ConditionViolation(f"sigma > -1 violated (sigma = {sigma})")
    coeff = complex(gamma(1 + sigma.value))
    if region == "ball":
        return GSpec.make(1, 0, [top], [rho], coeff)
    return GSpec.make(0, 1, [top], [rho], coeff)


def mellin_kernel(g: GSpec, s: complex) -> complex:
    """coeff * (Mellin kernel of G) at s."""
    s = complex(s)
    num = [x.value + s for x in g.b_first] + [1 - x.value - s for x in g.a_first]
    den = [1 - x.value - s for x in g.b_last] + [x.value + s for x in g.a_last]
    value = g.coeff
    for z in num:
        value *= gamma(z)
    for z in den:
        value *= rgamma(z)
    return complex(value)
