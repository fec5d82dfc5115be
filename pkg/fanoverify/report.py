"""
Verification reports: the verdict of every table check and claim, with the
evidence behind it.

Verdicts are the strings "pass", "fail", "inconclusive" and "skipped". A
report's structured form is `object()`; `VerificationReport.from_object()`
reads it back.
"""

import collections
import fractions

from .ideals import Status
from .records import Finding
from .singularity import Basket

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"
SKIPPED = "skipped"

VERDICTS = (PASS, FAIL, INCONCLUSIVE, SKIPPED)

# Exit status of the command line tool for each overall verdict.
EXIT_CODES = {PASS: 0, SKIPPED: 0, FAIL: 1, INCONCLUSIVE: 2}


def from_status(status):
    return {Status.TRUE: PASS, Status.FALSE: FAIL, Status.INCONCLUSIVE: INCONCLUSIVE}[status]


def combine(verdicts):
    """
    Any fail gives fail, then any inconclusive gives inconclusive. Only
    skipped verdicts (or none at all) give skipped.
    """
    verdicts = list(verdicts)
    if FAIL in verdicts:
        return FAIL
    if INCONCLUSIVE in verdicts:
        return INCONCLUSIVE
    if all(v == SKIPPED for v in verdicts):
        return SKIPPED
    return PASS


def exit_code(verdicts):
    return EXIT_CODES[combine(verdicts)]


class CheckResult:
    """
    A table level check such as the ambient weight reproduction.
    """

    def __init__(self, name, verdict, detail=""):
        self.name = name
        self.verdict = verdict
        self.detail = detail

    def __str__(self):
        if self.detail:
            return "{}: {} ({})".format(self.name, self.verdict, self.detail)
        return "{}: {}".format(self.name, self.verdict)

    def object(self):
        out = collections.OrderedDict([("name", self.name), ("verdict", self.verdict)])
        if self.detail:
            out["detail"] = self.detail
        return out

    @classmethod
    def from_object(cls, obj):
        return cls(obj["name"], obj["verdict"], obj.get("detail", ""))


class ChartResult:
    """
    Outcome of one step of a chart plan: the Groebner status of its ideal
    and the points found there.
    """

    def __init__(self, step, verdict, detail="", points=()):
        self.step = step
        self.verdict = verdict
        self.detail = detail
        self.points = list(points)

    def __str__(self):
        out = "{}: {}".format(self.step, self.verdict)
        if self.detail:
            out += " ({})".format(self.detail)
        return out

    def object(self):
        out = collections.OrderedDict([("step", self.step), ("verdict", self.verdict)])
        if self.detail:
            out["detail"] = self.detail
        if self.points:
            out["points"] = list(self.points)
        return out

    @classmethod
    def from_object(cls, obj):
        return cls(obj["step"], obj["verdict"], obj.get("detail", ""), obj.get("points", []))


class ClaimResult:
    """
    Verdict of one claim, per seed and combined, with per chart evidence
    from the first seed.
    """

    def __init__(self, name, verdict=SKIPPED, detail="", charts=(), seeds=None):
        self.name = name
        self.verdict = verdict
        self.detail = detail
        self.charts = list(charts)
        self.seeds = collections.OrderedDict(seeds or {})

    @classmethod
    def skipped(cls, name, reason):
        return cls(name, SKIPPED, reason)

    def __str__(self):
        out = "{}:{}".format(self.name, self.verdict)
        if self.detail:
            out += " ({})".format(self.detail)
        return out

    def object(self):
        out = collections.OrderedDict([("name", self.name), ("verdict", self.verdict)])
        if self.detail:
            out["detail"] = self.detail
        if self.seeds:
            out["seeds"] = collections.OrderedDict((str(k), v) for k, v in self.seeds.items())
        if self.charts:
            out["charts"] = [c.object() for c in self.charts]
        return out

    @classmethod
    def from_object(cls, obj):
        return cls(
            obj["name"],
            obj["verdict"],
            obj.get("detail", ""),
            [ChartResult.from_object(c) for c in obj.get("charts", [])],
            collections.OrderedDict((int(k), v) for k, v in obj.get("seeds", {}).items()),
        )


class VerificationReport:
    """
    Everything `verify_candidate` found out about one class.
    """

    CLAIMS = ("A", "B", "C")

    def __init__(
        self,
        number,
        key,
        depth,
        seeds=(),
        characteristic=None,
        checks=(),
        claims=None,
        ambient=None,
        expected_ambient=None,
        basket=None,
        expected_basket=None,
        findings=(),
        expected_findings=(),
        numerical=None,
    ):
        self.number = int(number)
        self.key = key
        self.depth = depth
        self.seeds = list(seeds)
        self.characteristic = characteristic
        self.checks = list(checks)
        self.claims = collections.OrderedDict()
        for name in self.CLAIMS:
            self.claims[name] = (claims or {}).get(name) or ClaimResult.skipped(
                name, "not run"
            )
        self.ambient = None if ambient is None else sorted(ambient)
        self.expected_ambient = None if expected_ambient is None else sorted(expected_ambient)
        self.basket = basket
        self.expected_basket = expected_basket if expected_basket is not None else Basket()
        self.findings = list(findings)
        self.expected_findings = list(expected_findings)
        self.numerical = collections.OrderedDict(numerical or {})

    def check(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        return None

    def overall(self):
        """
        Combined verdict of the checks and the claims. Skipped claims do
        not fail a tables-only run.
        """
        return combine(
            [c.verdict for c in self.checks] + [c.verdict for c in self.claims.values()]
        )

    def claim_summary(self):
        return " ".join("{}:{}".format(k, v.verdict) for k, v in self.claims.items())

    def basket_diff(self):
        """
        `(missing, extra)` of the computed basket against the expected one,
        or None if no basket was computed.
        """
        if self.basket is None:
            return None
        return self.basket.symmetric_difference(self.expected_basket)

    def findings_diff(self):
        """
        `(missing, extra)` lists of findings, matched on chart and type with
        counts compared.
        """
        expected = collections.Counter()
        for f in self.expected_findings:
            expected[f.key()] += f.count
        computed = collections.Counter()
        for f in self.findings:
            computed[f.key()] += f.count
        missing = [(k, n) for k, n in sorted((expected - computed).items())]
        extra = [(k, n) for k, n in sorted((computed - expected).items())]
        return missing, extra

    def __str__(self):
        return "No.{} {}: {}".format(self.number, self.overall(), self.claim_summary())

    def object(self):
        out = collections.OrderedDict()
        out["number"] = self.number
        out["key"] = self.key
        out["depth"] = self.depth
        out["verdict"] = self.overall()
        out["seeds"] = self.seeds
        if self.characteristic is not None:
            out["characteristic"] = self.characteristic
        if self.ambient is not None:
            out["ambient"] = self.ambient
        if self.expected_ambient is not None:
            out["expected_ambient"] = self.expected_ambient
        out["expected_basket"] = self.expected_basket.object()
        if self.basket is not None:
            out["basket"] = self.basket.object()
            missing, extra = self.basket_diff()
            out["basket_diff"] = collections.OrderedDict(
                [("missing", missing.object()), ("extra", extra.object())]
            )
        if self.numerical:
            out["numerical"] = self.numerical
        out["checks"] = [c.object() for c in self.checks]
        out["claims"] = [c.object() for c in self.claims.values()]
        if self.findings:
            out["findings"] = [f.object() for f in self.findings]
        if self.expected_findings:
            out["expected_findings"] = [f.object() for f in self.expected_findings]
        return out

    @classmethod
    def from_object(cls, obj):
        basket = obj.get("basket")
        return cls(
            obj["number"],
            obj["key"],
            obj["depth"],
            seeds=obj.get("seeds", []),
            characteristic=obj.get("characteristic"),
            checks=[CheckResult.from_object(c) for c in obj.get("checks", [])],
            claims={c["name"]: ClaimResult.from_object(c) for c in obj.get("claims", [])},
            ambient=obj.get("ambient"),
            expected_ambient=obj.get("expected_ambient"),
            basket=None if basket is None else Basket.parse(basket),
            expected_basket=Basket.parse(obj.get("expected_basket", [])),
            findings=[Finding.from_object(f) for f in obj.get("findings", [])],
            expected_findings=[Finding.from_object(f) for f in obj.get("expected_findings", [])],
            numerical=obj.get("numerical"),
        )


def fraction_string(value):
    value = fractions.Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return "{}/{}".format(value.numerator, value.denominator)
