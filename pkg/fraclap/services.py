"""
Fractional Laplacian Service Module

Turns the flags of a management command into calls of the library in src/
and renders the results as JSON, CSV or text. Numeric flags are parsed as
exact rationals where they are written as such ("3/2", "0.25").
"""

import json
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from django.conf import settings
from rest_framework.renderers import JSONRenderer

from ballsolve import evaluate_solution, rhs_from_name, solve, truncate
from errors import ConditionViolation, UnsupportedDimension, ValidationError
from fractransform import (
    HypTransformResult,
    RadialHarmonicFn,
    TransformResult,
    apply_operator,
    ball_2f1_transform,
    fraclap_transform,
    hyp_transform,
    jacobi_eigenvalue,
    jacobi_function,
    power_ball,
    power_fullspace,
    with_delta_half,
)
from gfun import GSpec, HypSpec
from oracle import (
    REPORT_COLUMNS,
    QuadratureConfig,
    cauchy_fn,
    compare,
    cosine_fn,
    format_point,
    fraclap_hypersingular,
    fraclap_singular,
    getoor_fn,
    harmonic_ball_fn,
    jacobi_fn,
    radial_potential,
    riesz_quadrature,
    smooth_ball_fn,
)
from params import Param
from specfun import EvalResult, harmonic_dimension, meijer_g

from .serializers import (
    EvalResultSerializer,
    GSpecSerializer,
    HypSpecSerializer,
    HypTransformResultSerializer,
    SpectralExpansionSerializer,
    TransformResultSerializer,
)

logger = logging.getLogger(__name__)

KERNELS = ("full", "ball", "complement", "hyp", "2f1")
CASES = ("getoor", "cosine", "cauchy", "green-harmonic", "eigen", "semigroup")
ROUTES = ("auto", "series", "contour")
RIGHT_HAND_SIDES = ("one", "r2", "x1")
TABLES = ("eigen", "getoor", "harmonic-dims")

# pass threshold of the cases whose functions are singular or nested
CASE_REL_TOL = {"cosine": 1e-5, "green-harmonic": 1e-4, "eigen": 1e-4, "semigroup": 1e-4}

SOLUTION_THRESHOLD = 1e-13


@dataclass
class Job:
    """One command-line invocation: subcommand, parsed flags and output format."""

    subcommand: str
    params: Dict[str, Any] = field(default_factory=dict)
    output_format: str = "json"

    def get(self, name: str, default: Any = None) -> Any:
        value = self.params.get(name)
        return default if value is None else value


@dataclass
class JobOutput:
    text: str
    ok: bool = True
    message: str = ""


# ----------------------------------------------------------------------
# parsing
# ----------------------------------------------------------------------


def parse_param(text, name: str = "value") -> Param:
    try:
        return Param.parse(str(text))
    except ValueError as exc:
        raise ValidationError([f"--{name}: {exc}"]) from exc


def parse_real(text, name: str) -> float:
    value = parse_param(text, name)
    if not value.is_real:
        raise ValidationError([f"--{name} must be real, got {value}"])
    return float(value.re)


def parse_points(text: str, d: int) -> List[np.ndarray]:
    """
    "0.2,0.5" is a list of radii along the first axis; "0.1,0.2;0.3,0.4"
    is a list of points with d coordinates each.
    """
    text = str(text).strip()
    if not text:
        raise ValidationError(["--points is empty"])
    points = []
    if ";" in text:
        for chunk in text.split(";"):
            coords = [parse_real(v, "points") for v in chunk.split(",")]
            if len(coords) != d:
                raise ValidationError([f"--points: {chunk!r} does not have {d} coordinates"])
            points.append(np.array(coords))
    else:
        for v in text.split(","):
            point = np.zeros(d)
            point[0] = parse_real(v, "points")
            points.append(point)
    return points


def _load_json(text: str, name: str) -> dict:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError([f"--{name} is not valid JSON: {exc}"]) from exc
    if not isinstance(data, dict):
        raise ValidationError([f"--{name} must be a JSON object"])
    return data


def _serializer_violations(errors) -> List[str]:
    out = []
    for key, messages in errors.items():
        for message in messages if isinstance(messages, list) else [messages]:
            out.append(f"{key}: {message}")
    return out


def parse_gspec(text: str) -> GSpec:
    serializer = GSpecSerializer(data=_load_json(text, "g"))
    if not serializer.is_valid():
        raise ValidationError(_serializer_violations(serializer.errors))
    return serializer.save()


def parse_hypspec(text: str) -> Tuple[HypSpec, float]:
    serializer = HypSpecSerializer(data=_load_json(text, "g"))
    if not serializer.is_valid():
        raise ValidationError(_serializer_violations(serializer.errors))
    scale = serializer.validated_data["scale"]
    return serializer.save(), scale


def quadrature_config(d: int, tol: Optional[float] = None, fallback: Optional[float] = None) -> QuadratureConfig:
    """--tol, then FRACLAP_QUAD_TOL, then the case threshold, then the dimension default."""
    rel_tol = tol
    if rel_tol is None:
        rel_tol = settings.FRACLAP.get("QUAD_TOL")
    if rel_tol is None:
        rel_tol = fallback
    return QuadratureConfig.for_dimension(d, rel_tol)


def worker_count() -> int:
    return max(1, int(settings.FRACLAP.get("WORKERS", 1)))


def _map(fn: Callable, items: Sequence) -> list:
    """Ordered map, threaded when more than one worker is configured."""
    workers = worker_count()
    if workers > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, items))
    return [fn(item) for item in items]


# ----------------------------------------------------------------------
# rendering
# ----------------------------------------------------------------------


def render_json(data) -> str:
    return JSONRenderer().render(data).decode("utf-8") + "\n"


def render_frame(df: pd.DataFrame, fmt: str) -> str:
    if fmt == "csv":
        return df.to_csv(index=False, float_format="%.12g", lineterminator="\n")
    if fmt == "json":
        return render_json(df.to_dict(orient="records"))
    return df.to_string(index=False) + "\n"


def _eval_row(point: str, res: EvalResult) -> dict:
    value = complex(res.value)
    return {
        "point": point,
        "re": value.real,
        "im": value.imag,
        "err": res.est_abs_error,
        "route": res.route,
        "flags": " ".join(res.flags),
    }


# ----------------------------------------------------------------------
# transform
# ----------------------------------------------------------------------


def build_transform(job: Job):
    """The TransformResult (or HypTransformResult) named by --kernel / --g."""
    d, l = int(job.get("d", 1)), int(job.get("l", 0))
    alpha = parse_param(job.get("alpha", "1"), "alpha")
    kernel, g = job.get("kernel"), job.get("g")
    if kernel == "hyp":
        if g is None:
            raise ConditionViolation("--kernel hyp needs the hypergeometric profile in --g")
        h, scale = parse_hypspec(g)
        delta_half = Param.of(Fraction(d + 2 * l, 2))
        if not h.lower or not h.lower[-1].matches(delta_half):
            h = with_delta_half(h, d, l)
        return hyp_transform(h, d, l, alpha, scale)
    if g is not None:
        if kernel is not None:
            raise ConditionViolation("--g takes a G-function profile; combine it with --kernel hyp only")
        return apply_operator(RadialHarmonicFn.make(d, l, parse_gspec(g), label="g"), alpha)
    rho = parse_param(job.get("rho", "0"), "rho")
    sigma = parse_param(job.get("sigma", "0"), "sigma")
    if kernel == "full":
        return power_fullspace(rho, sigma, d, l, alpha)
    if kernel in ("ball", "complement"):
        return power_ball(rho, sigma, d, l, alpha, region=kernel)
    if kernel == "2f1":
        return ball_2f1_transform(rho, sigma, d, l, alpha)
    raise ConditionViolation("one of --kernel or --g is required")


def describe_transform(result) -> str:
    if isinstance(result, HypTransformResult):
        lines = [
            f"operator:  hyp (alpha = {result.alpha}, d = {result.d}, l = {result.l}, scale = {result.scale:g})",
            f"input:     {result.input}",
            f"output:    {result.output}",
            f"validity:  {result.validity}",
        ]
    else:
        lines = [
            f"operator:  {result.operator} (alpha = {result.alpha}, d = {result.input.d}, l = {result.input.l})",
            f"input:     {result.input.profile}",
            f"output:    {result.output.profile}",
            f"validity:  {result.validity}",
            f"condition: {result.condition}",
        ]
        lines += [f"closed:    |x|^(2*{power}) {hyp}" for power, hyp in result.closed_form]
    return "\n".join(lines) + "\n"


def transform_job(job: Job) -> JobOutput:
    result = build_transform(job)
    if job.output_format == "text":
        return JobOutput(describe_transform(result))
    if isinstance(result, HypTransformResult):
        return JobOutput(render_json(HypTransformResultSerializer(result).data))
    return JobOutput(render_json(TransformResultSerializer(result).data))


# ----------------------------------------------------------------------
# eval
# ----------------------------------------------------------------------


def eval_job(job: Job) -> JobOutput:
    """
    With --alpha: the transformed function at the points x. Without: the
    G-function of --g at the arguments r >= 0 listed in --points.
    """
    points = job.get("points")
    if points is None:
        raise ConditionViolation("--points is required")
    route = job.get("route", "auto")
    if job.get("alpha") is not None:
        result = build_transform(job)
        d = result.d if isinstance(result, HypTransformResult) else result.output.d

        def one(x):
            res = result.evaluate(x) if isinstance(result, HypTransformResult) else result.evaluate(x, route)
            return format_point(x), res

        pairs = _map(one, parse_points(points, d))
    else:
        if job.get("g") is None:
            raise ConditionViolation("eval needs --g, or --alpha with a transform")
        g = parse_gspec(job.get("g"))
        args = [parse_real(v, "points") for v in str(points).split(",")]

        def one(r):
            if r < 0:
                raise ConditionViolation(f"G-function argument r >= 0 violated (r={r:g})")
            return format_point(r), meijer_g(g, r, route)

        pairs = _map(one, args)
    if job.output_format == "json":
        data = [{"point": p, **EvalResultSerializer(res).data} for p, res in pairs]
        return JobOutput(render_json(data))
    frame = pd.DataFrame([_eval_row(p, res) for p, res in pairs], columns=["point", "re", "im", "err", "route", "flags"])
    return JobOutput(render_frame(frame, job.output_format))


# ----------------------------------------------------------------------
# verify
# ----------------------------------------------------------------------


@dataclass
class Check:
    """A symbolic route and the oracle for the same quantity."""

    symbolic: Any
    oracle: Callable[[np.ndarray], EvalResult]
    points: str


def _fraclap_oracle(f, alpha: float, cfg: QuadratureConfig) -> Callable:
    if alpha < 2:
        return lambda x: fraclap_singular(f, x, alpha, cfg)
    k = 2 * (int(alpha // 2) + 1)
    return lambda x: fraclap_hypersingular(f, x, alpha, k, cfg)


def _closed_form_route(result: TransformResult) -> Callable[[np.ndarray], EvalResult]:
    def evaluate(x):
        res = result.evaluate_closed_form(x)
        if not result.validity.contains(float(np.linalg.norm(x))):
            res = res.flagged("outside-validity")
        return res

    return evaluate


def _getoor_check(d, alpha, cfg, job) -> Check:
    symbolic = power_ball(0, alpha / 2, d, 0, alpha)
    return Check(symbolic, _fraclap_oracle(getoor_fn(d, float(alpha)), float(alpha), cfg), "0.2,0.5,0.8")


def _cosine_check(d, alpha, cfg, job) -> Check:
    if d != 1:
        raise UnsupportedDimension(f"the cosine case runs in d = 1, got d={d}")
    h = HypSpec((), (Fraction(1, 2),), True, math.sqrt(math.pi), -1)
    symbolic = hyp_transform(h, 1, 0, alpha, scale=0.25)
    return Check(symbolic, _fraclap_oracle(cosine_fn(), float(alpha), cfg), "0,0.3,1")


def _cauchy_check(d, alpha, cfg, job) -> Check:
    symbolic = power_fullspace(0, -1, d, 0, alpha)
    return Check(symbolic, _fraclap_oracle(cauchy_fn(d), float(alpha), cfg), "0,0.5,2")


def _green_harmonic_check(d, alpha, cfg, job) -> Check:
    result = ball_2f1_transform((alpha - d) / 2, alpha / 2, d, 0, alpha)
    points = "-0.6,-0.3,0.3,0.6" if d == 1 else "0.3,0.6"
    return Check(_closed_form_route(result), _fraclap_oracle(harmonic_ball_fn(d, float(alpha)), float(alpha), cfg), points)


def _eigen_check(d, alpha, cfg, job) -> Check:
    n, l = int(job.get("n", 1)), int(job.get("l", 0))
    f = jacobi_function(n, l, d, alpha)
    symbolic = fraclap_transform(f, alpha)
    oracle_fn = jacobi_fn(n, l, d, float(alpha), harmonic=f.harmonic)
    points = "-0.7,-0.3,0.1,0.45,0.8" if d == 1 else "0.1,0.45,0.8"
    return Check(symbolic, _fraclap_oracle(oracle_fn, float(alpha), cfg), points)


def _semigroup_check(d, alpha, cfg, job) -> Check:
    beta = parse_real(job.get("beta", "1"), "beta")
    a = float(alpha)
    if not (a > 0 and beta > 0 and a + beta < d):
        raise ConditionViolation(f"0 < alpha, 0 < beta, alpha + beta < d violated (alpha={a:g}, beta={beta:g}, d={d})")
    f = smooth_ball_fn(d)
    inner = radial_potential(f, beta, cfg=cfg)
    return Check(
        lambda x: riesz_quadrature(f, x, a + beta, cfg),
        lambda x: riesz_quadrature(inner, x, a, cfg),
        "0,0.5,1.5",
    )


CHECKS = {
    "getoor": _getoor_check,
    "cosine": _cosine_check,
    "cauchy": _cauchy_check,
    "green-harmonic": _green_harmonic_check,
    "eigen": _eigen_check,
    "semigroup": _semigroup_check,
}


def verify_job(job: Job) -> JobOutput:
    """Symbolic route against the quadrature oracle for one built-in case."""
    case = job.get("case")
    if case not in CHECKS:
        raise ConditionViolation(f"unknown case {case!r}; choose from {', '.join(CASES)}")
    d = int(job.get("d", 3 if case == "semigroup" else 1))
    alpha = parse_param(job.get("alpha", "1"), "alpha")
    tol = job.get("tol")
    cfg = quadrature_config(d, None if tol is None else float(tol), CASE_REL_TOL.get(case))
    check = CHECKS[case](d, alpha, cfg, job)
    points = parse_points(job.get("points", check.points), d)
    report = compare(check.symbolic, check.oracle, points, cfg, worker_count(), case)
    if job.output_format == "csv":
        text = report.to_csv()
    elif job.output_format == "json":
        text = render_json(report.frame[REPORT_COLUMNS].to_dict(orient="records"))
    else:
        text = report.to_text() + "\n"
    failed = sum(1 for row in report.rows if not row["pass"])
    if failed:
        return JobOutput(text, False, f"{case}: {failed} of {len(report.rows)} points outside tolerance {cfg.rel_tol:g}")
    return JobOutput(text)


# ----------------------------------------------------------------------
# solve
# ----------------------------------------------------------------------


def solve_job(job: Job) -> JobOutput:
    d = int(job.get("d", 1))
    alpha = parse_real(job.get("alpha", "1"), "alpha")
    g = rhs_from_name(job.get("rhs", "one"), d)
    l_max, n_max = int(job.get("lmax", 2)), int(job.get("nmax", 16))
    u = truncate(solve(g, d, alpha, l_max, n_max, workers=worker_count()), SOLUTION_THRESHOLD)
    values = []
    if job.get("points") is not None:
        for x in parse_points(job.get("points"), d):
            values.append(
                {
                    "point": format_point(x),
                    "u": evaluate_solution(u, x),
                    "wu": evaluate_solution(u, x, weighted=True),
                }
            )
    if job.output_format == "json":
        data = dict(SpectralExpansionSerializer(u).data)
        if values:
            data["values"] = values
        return JobOutput(render_json(data))
    if values:
        return JobOutput(render_frame(pd.DataFrame(values), job.output_format))
    terms = pd.DataFrame(u.to_dict()["terms"], columns=["l", "m", "n", "coeff", "lambda"])
    return JobOutput(render_frame(terms, job.output_format))


# ----------------------------------------------------------------------
# table
# ----------------------------------------------------------------------


def table_job(job: Job) -> JobOutput:
    which = job.get("table")
    if which == "eigen":
        d, l = int(job.get("d", 1)), int(job.get("l", 0))
        alpha = parse_real(job.get("alpha", "1"), "alpha")
        ns = list(range(int(job.get("nmax", 4)) + 1))
        lams = _map(lambda n: jacobi_eigenvalue(n, l, d, alpha), ns)
        frame = pd.DataFrame({"n": ns, "lambda": lams})
    elif which == "getoor":
        alphas = [parse_real(v, "alpha") for v in str(job.get("alpha", "0.5,1,1.5")).split(",")]
        dims = [int(job.get("d"))] if job.get("d") is not None else [1, 2, 3]
        cells = [(d, a) for d in dims for a in alphas]
        constants = _map(lambda cell: jacobi_eigenvalue(0, 0, cell[0], cell[1]), cells)
        frame = pd.DataFrame(
            {"d": [c[0] for c in cells], "alpha": [c[1] for c in cells], "constant": constants}
        )
    elif which == "harmonic-dims":
        dims = [int(job.get("d"))] if job.get("d") is not None else [1, 2, 3]
        cells = [(d, l) for d in dims for l in range(int(job.get("lmax", 4)) + 1)]
        frame = pd.DataFrame(
            {
                "d": [c[0] for c in cells],
                "l": [c[1] for c in cells],
                "dimension": [harmonic_dimension(d, l) for d, l in cells],
            }
        )
    else:
        raise ConditionViolation(f"unknown table {which!r}; choose from {', '.join(TABLES)}")
    return JobOutput(render_frame(frame, job.output_format))


RUNNERS = {
    "transform": transform_job,
    "eval": eval_job,
    "verify": verify_job,
    "solve": solve_job,
    "table": table_job,
}


def run_job(job: Job) -> JobOutput:
    if job.subcommand not in RUNNERS:
        raise ValidationError([f"unknown subcommand {job.subcommand!r}"])
    logger.debug("run_job: %s %s", job.subcommand, job.params)
    return RUNNERS[job.subcommand](job)
