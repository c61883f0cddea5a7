import json
import math
from io import StringIO
from unittest import mock

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, override_settings

from errors import ValidationError
from fraclap.serializers import GSpecSerializer, HypSpecSerializer
from fraclap.services import CASES, KERNELS, Job, parse_param, parse_points, quadrature_config, run_job
from gfun import GSpec
from oracle import REPORT_COLUMNS, Report

SQRT_PI = math.sqrt(math.pi)
COSINE_HYP = json.dumps({"upper": [], "lower": ["1/2"], "coeff": SQRT_PI, "scale": 0.25})
ENGINE_DEFAULTS = {"QUAD_TOL": None, "WORKERS": 1, "LOG_LEVEL": "WARNING"}


def run(*args):
    out = StringIO()
    call_command(*args, stdout=out)
    return out.getvalue()


class TransformCommandTests(SimpleTestCase):

    def test_getoor_chain(self):
        """(1-x^2)_+^{1/2} in d = 1 is sent to the constant G^{11}_{22}((0|1);(0|1/2)) with coefficient sqrt(pi)."""
        data = json.loads(
            run("transform", "--d", "1", "--l", "0", "--alpha", "1", "--kernel", "ball", "--rho", "0", "--sigma", "1/2")
        )
        out = data["output"]
        self.assertEqual((out["m"], out["n"], out["p"], out["q"]), (1, 1, 2, 2))
        self.assertEqual(out["a"], ["0", "1"])
        self.assertEqual(out["b"], ["0", "1/2"])
        self.assertAlmostEqual(out["coeff"][0], 2 * math.gamma(1.5), places=12)
        self.assertEqual(out["coeff"][1], 0.0)
        self.assertEqual(data["unreduced"]["p"], 3)
        self.assertEqual(data["operator"], "fraclap")
        self.assertEqual(data["alpha"], "1")
        self.assertFalse(data["validity"]["sphere"])

    def test_json_round_trip(self):
        data = json.loads(run("transform", "--kernel", "ball", "--sigma", "1/2", "--alpha", "1"))
        serializer = GSpecSerializer(data=data["output"])
        self.assertTrue(serializer.is_valid(), serializer.errors)
        spec = serializer.save()
        self.assertEqual(GSpecSerializer(spec).data["a"], data["output"]["a"])
        expected = GSpec.make(1, 1, [0, 1], [0, "1/2"], SQRT_PI)
        self.assertTrue(spec.same_record(expected))

    def test_profile_from_json(self):
        """The ball kernel given as a raw G record goes through the general transform."""
        g = json.dumps({"m": 1, "n": 0, "a": ["3/2"], "b": ["0"], "coeff": math.gamma(1.5)})
        data = json.loads(run("transform", "--g", g, "--alpha", "1"))
        self.assertEqual(data["output"]["a"], ["0", "1"])
        self.assertEqual(data["output"]["b"], ["0", "1/2"])

    def test_hyp_kernel(self):
        data = json.loads(run("transform", "--kernel", "hyp", "--g", COSINE_HYP, "--alpha", "1/2"))
        self.assertEqual(data["operator"], "hyp")
        self.assertEqual(data["output"]["lower"], ["1/2"])
        self.assertAlmostEqual(data["output"]["coeff"][0], SQRT_PI, places=13)

    def test_closed_form(self):
        data = json.loads(run("transform", "--kernel", "2f1", "--rho", "1/4", "--sigma", "1/2"))
        self.assertEqual(len(data["closed_form"]), 1)
        self.assertEqual(data["validity"]["region"], "ball")

    def test_text(self):
        text = run("transform", "--kernel", "full", "--sigma", "-1", "--format", "text")
        self.assertIn("validity:", text)
        self.assertTrue(text.startswith("operator:  fraclap"))

    def test_every_kernel(self):
        cases = {
            "full": ["--rho", "0", "--sigma", "-1"],
            "ball": ["--rho", "0", "--sigma", "1/2"],
            "complement": ["--rho", "-1", "--sigma", "1/2"],
            "2f1": ["--rho", "1/4", "--sigma", "1/2"],
            "hyp": ["--g", COSINE_HYP],
        }
        self.assertEqual(set(cases), set(KERNELS))
        for kernel, extra in cases.items():
            data = json.loads(run("transform", "--kernel", kernel, "--alpha", "1", *extra))
            self.assertIn("output", data, kernel)

    def test_condition_violation(self):
        with self.assertRaises(CommandError) as cm:
            run("transform", "--kernel", "full", "--rho", "-1", "--sigma", "-2")
        self.assertEqual(cm.exception.returncode, 2)
        self.assertIn("2 rho > -d - l", str(cm.exception))

    def test_bad_input(self):
        for args in (
            ["--g", "{"],
            ["--g", json.dumps({"m": 1, "n": 1, "a": ["1"], "b": ["0"]})],
            ["--kernel", "ball", "--sigma", "x/2"],
            [],
        ):
            with self.assertRaises(CommandError) as cm:
                run("transform", *args)
            self.assertEqual(cm.exception.returncode, 2, args)


class EvalCommandTests(SimpleTestCase):

    COSINE_G = json.dumps({"m": 1, "n": 0, "a": [], "b": ["0", "1/2"]})

    def test_series(self):
        data = json.loads(run("eval", "--g", self.COSINE_G, "--points", "1", "--route", "series", "--format", "json"))
        self.assertAlmostEqual(data[0]["value"][0], math.cos(2) / SQRT_PI, places=12)
        self.assertEqual(data[0]["route"], "series")
        self.assertEqual(data[0]["point"], "1")

    def test_no_contour(self):
        with self.assertRaises(CommandError) as cm:
            run("eval", "--g", self.COSINE_G, "--points", "1", "--route", "contour")
        self.assertEqual(cm.exception.returncode, 2)

    def test_transformed_cauchy(self):
        """(-Delta)^{1/2} (1+x^2)^{-1} = (1-x^2)/(1+x^2)^2."""
        data = json.loads(
            run(
                "eval", "--kernel", "full", "--sigma", "-1", "--alpha", "1",
                "--points", "0,0.5,2", "--format", "json",
            )
        )
        for row, x in zip(data, (0.0, 0.5, 2.0)):
            self.assertAlmostEqual(row["value"][0], (1 - x * x) / (1 + x * x) ** 2, delta=1e-8)

    def test_csv(self):
        text = run("eval", "--g", self.COSINE_G, "--points", "0.25,1")
        lines = text.splitlines()
        self.assertEqual(lines[0], "point,re,im,err,route,flags")
        self.assertEqual(len(lines), 3)

    def test_negative_argument(self):
        with self.assertRaises(CommandError) as cm:
            run("eval", "--g", self.COSINE_G, "--points", "-1")
        self.assertEqual(cm.exception.returncode, 2)


@override_settings(FRACLAP=ENGINE_DEFAULTS)
class VerifyCommandTests(SimpleTestCase):

    def test_getoor(self):
        text = run("verify", "--case", "getoor", "--d", "1", "--alpha", "1", "--points", "0.2,0.5,0.8")
        lines = text.splitlines()
        self.assertEqual(lines[0], ",".join(REPORT_COLUMNS))
        self.assertEqual(len(lines), 4)
        self.assertTrue(all(line.endswith(",True") for line in lines[1:]), text)

    def test_every_case(self):
        extra = {
            "getoor": [],
            "cosine": ["--alpha", "1/2"],
            "cauchy": [],
            "green-harmonic": ["--alpha", "1/2"],
            "eigen": ["--n", "2"],
            "semigroup": ["--points", "0", "--tol", "1e-3"],
        }
        self.assertEqual(set(extra), set(CASES))
        for case, args in extra.items():
            text = run("verify", "--case", case, *args)
            self.assertTrue(text.startswith("point,symbolic,oracle"), case)

    def test_json(self):
        data = json.loads(run("verify", "--case", "cauchy", "--points", "0.5", "--format", "json"))
        self.assertEqual(list(data[0]), REPORT_COLUMNS)
        self.assertTrue(data[0]["pass"])

    def test_unsupported_dimension(self):
        with self.assertRaises(CommandError) as cm:
            run("verify", "--case", "cosine", "--d", "2")
        self.assertEqual(cm.exception.returncode, 2)

    def test_semigroup_default(self):
        """Defaults: d = 3, alpha = beta = 1 on (1-|x|^2)_+^4, where I_2 f(0) = 1/10."""
        data = json.loads(run("verify", "--case", "semigroup", "--points", "0", "--format", "json"))
        self.assertEqual(len(data), 1)
        self.assertAlmostEqual(data[0]["symbolic"], 0.1, delta=1e-4)
        self.assertTrue(data[0]["pass"], data)

    def test_semigroup_orders(self):
        with self.assertRaises(CommandError) as cm:
            run("verify", "--case", "semigroup", "--alpha", "2", "--beta", "1")
        self.assertEqual(cm.exception.returncode, 2)

    def test_failed_rows(self):
        row = {
            "point": "0.5", "symbolic": 1.0, "oracle": 2.0, "abs_err": 1.0,
            "rel_err": 1.0, "pass": False, "flags": "",
        }
        out = StringIO()
        with mock.patch("fraclap.services.compare", return_value=Report([row], 1e-6, "cauchy")):
            with self.assertRaises(CommandError) as cm:
                call_command("verify", "--case", "cauchy", stdout=out)
        self.assertEqual(cm.exception.returncode, 3)
        self.assertIn("1 of 1 points", str(cm.exception))
        self.assertTrue(out.getvalue().startswith("point,"))

    def test_deterministic(self):
        args = ("verify", "--case", "cauchy", "--points", "0,0.5")
        self.assertEqual(run(*args), run(*args))

    def test_workers(self):
        args = ("verify", "--case", "cauchy", "--points", "0,0.5,2")
        serial = run(*args)
        with override_settings(FRACLAP={"QUAD_TOL": None, "WORKERS": 3, "LOG_LEVEL": "WARNING"}):
            self.assertEqual(run(*args), serial)


class SolveCommandTests(SimpleTestCase):

    def test_constant(self):
        """g = 1 in d = 1, alpha = 1 has the single coefficient sqrt(2) on V_{0,1} P_0."""
        data = json.loads(run("solve", "--d", "1", "--alpha", "1", "--rhs", "one", "--points", "0,0.5"))
        self.assertEqual(data["d"], 1)
        self.assertEqual(data["truncation"], [2, 16])
        self.assertEqual(len(data["terms"]), 1)
        term = data["terms"][0]
        self.assertEqual((term["l"], term["m"], term["n"]), (0, 1, 0))
        self.assertAlmostEqual(term["coeff"], math.sqrt(2), places=12)
        self.assertAlmostEqual(term["lambda"], 1.0, places=12)
        for value in data["values"]:
            self.assertAlmostEqual(value["u"], 1.0, places=12)

    def test_csv(self):
        text = run("solve", "--d", "2", "--alpha", "3/2", "--rhs", "r2", "--nmax", "4", "--format", "csv")
        self.assertEqual(text.splitlines()[0], "l,m,n,coeff,lambda")

    def test_dimension(self):
        with self.assertRaises(CommandError) as cm:
            run("solve", "--d", "4")
        self.assertEqual(cm.exception.returncode, 2)


class TableCommandTests(SimpleTestCase):

    def test_eigen(self):
        text = run("table", "--eigen", "--d", "1", "--alpha", "1", "--nmax", "2")
        self.assertEqual(text, "n,lambda\n0,1\n1,3\n2,5\n")

    def test_getoor(self):
        text = run("table", "--getoor", "--d", "3", "--alpha", "1")
        self.assertEqual(text, "d,alpha,constant\n3,1,2\n")
        self.assertEqual(len(run("table", "--getoor").splitlines()), 10)

    def test_harmonic_dims(self):
        text = run("table", "--harmonic-dims", "--d", "3", "--lmax", "2")
        self.assertEqual(text, "d,l,dimension\n3,0,1\n3,1,3\n3,2,5\n")

    def test_json(self):
        data = json.loads(run("table", "--eigen", "--nmax", "1", "--format", "json"))
        self.assertEqual([row["n"] for row in data], [0, 1])

    def test_deterministic(self):
        args = ("table", "--getoor", "--alpha", "1/2,3/2")
        with override_settings(FRACLAP={"QUAD_TOL": None, "WORKERS": 2, "LOG_LEVEL": "WARNING"}):
            self.assertEqual(run(*args), run(*args))


class ServiceTests(SimpleTestCase):

    def test_points(self):
        points = parse_points("0.1,0.2;0.3,0.4", 2)
        self.assertEqual([p.tolist() for p in points], [[0.1, 0.2], [0.3, 0.4]])
        self.assertEqual(parse_points("0.5", 3)[0].tolist(), [0.5, 0.0, 0.0])
        with self.assertRaises(ValidationError):
            parse_points("0.1;0.2", 2)

    def test_rational_flags(self):
        self.assertTrue(parse_param("3/2").exact)
        self.assertEqual(str(parse_param("0.25")), "1/4")
        with self.assertRaises(ValidationError):
            parse_param("three")

    @override_settings(FRACLAP=ENGINE_DEFAULTS)
    def test_tolerance_defaults(self):
        self.assertEqual(quadrature_config(2).rel_tol, 1e-5)
        self.assertEqual(quadrature_config(3, fallback=1e-3).rel_tol, 1e-3)

    @override_settings(FRACLAP={"QUAD_TOL": 1e-4, "WORKERS": 1, "LOG_LEVEL": "WARNING"})
    def test_tolerance_from_environment(self):
        self.assertEqual(quadrature_config(1).rel_tol, 1e-4)
        self.assertEqual(quadrature_config(1, fallback=1e-2).rel_tol, 1e-4)
        self.assertEqual(quadrature_config(1, tol=1e-3).rel_tol, 1e-3)

    def test_hyp_serializer(self):
        serializer = HypSpecSerializer(data=json.loads(COSINE_HYP))
        self.assertTrue(serializer.is_valid(), serializer.errors)
        h = serializer.save()
        self.assertEqual((h.p, h.q, h.sign), (0, 1, -1))
        self.assertEqual(serializer.validated_data["scale"], 0.25)

    def test_unknown_subcommand(self):
        with self.assertRaises(ValidationError):
            run_job(Job("plot"))
