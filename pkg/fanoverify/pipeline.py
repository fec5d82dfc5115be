"""
End to end verification of one candidate class.

`build_X`, `build_T` and `build_C` turn a key variety and a section table
into explicit equations over GF(p). The claims then run chart by chart:

- Claim A: T has no singular point on the cone away from the vertex.
- Claim B: the fixed points of the residual actions on T give exactly the
  expected basket.
- Claim C: X cut by the primality witness has isolated singularities.

`Verifier` holds the layered settings, loops over seeds and assembles a
`VerificationReport`.
"""

import collections
import copy
import fractions
import logging

from . import dataset as dataset_module
from . import helpers
from . import hilbert
from . import records
from . import report
from .exceptions import ExtensionTooLarge, FanoVerifyException
from .fields import DEFAULT_CHARACTERISTIC
from .ideals import Ideal, Status, singular_locus_ideal
from .points import solve_zero_dimensional
from .poly import CoordinateRing, parameter_values
from .records import ChartStep, Finding, section_space
from .singularity import (
    Basket,
    LocalizedSystem,
    LPCFailure,
    QuotientSingularity,
    Smooth,
    lpc_classify,
    residue_check,
)


class System:
    """
    Equations of a projective variety of dimension `dimension` in the
    weighted projective space `space`. `ring` has the coordinates of
    `space` in the same order. `witness` is the primality witness carried
    through the same substitutions, if the key has one. `sections` lists
    `(coordinate, weight, rhs)` for the eliminated coordinates, with `rhs`
    a polynomial of `ring`, and `presubstitution` the `(ring, equations)`
    the rows were substituted into.
    """

    def __init__(
        self,
        ring,
        equations,
        space,
        dimension,
        witness=None,
        label="",
        sections=(),
        presubstitution=None,
    ):
        self.ring = ring
        self.equations = [f for f in equations if f]
        self.space = space
        self.dimension = dimension
        self.witness = witness
        self.label = label
        self.sections = list(sections)
        self.presubstitution = presubstitution

    def chart_equations(self, coordinate):
        """
        `(chart ring, equations)` on the chart where `coordinate` is 1.
        """
        chart_ring = self.ring.without([coordinate])
        equations = [self.ring.substitute(f, {coordinate: 1}, chart_ring) for f in self.equations]
        return chart_ring, [f for f in equations if f]

    def truncated_chart_equations(self, coordinate):
        """
        Like `chart_equations`, but with every section row cut down to its
        terms of degree one before it is substituted. None without rows.
        """
        if not self.sections or self.presubstitution is None:
            return None
        ring, equations = self.presubstitution
        bindings = {name: self.ring.linear_part(rhs) for name, _, rhs in self.sections}
        equations = [ring.substitute(f, bindings, self.ring) for f in equations]
        chart_ring = self.ring.without([coordinate])
        equations = [self.ring.substitute(f, {coordinate: 1}, chart_ring) for f in equations]
        return chart_ring, [f for f in equations if f]

    def cut(self, polynomial, label=""):
        """
        This variety intersected with `{polynomial = 0}`.
        """
        return System(
            self.ring,
            self.equations + [polynomial],
            self.space,
            self.dimension - 1,
            None,
            label or "{} cut".format(self.label),
            self.sections,
        )

    def __str__(self):
        return "{} in {} ({} equations)".format(self.label, self.space, len(self.equations))


################################################################################
## Building X, T, C
################################################################################


def derive_T_profile(profile):
    """
    Profile of T = X cut by one more general hypersurface of weight one.
    """
    profile = [(int(a), int(m)) for a, m in profile]
    if profile and profile[0][0] == 1:
        return [(1, profile[0][1] + 1)] + profile[1:]
    return [(1, 1)] + profile


def _table_values(table, space, seed, characteristic):
    names = table.used_parameters(list(space.names) + list(space.affine))
    return parameter_values(names, seed, characteristic)


def _build(key, record, rows, seed, characteristic, label):
    space = key.space_for(record)
    ring = CoordinateRing(space.names, space.weights, characteristic)
    key_values = parameter_values(
        key.parameters + key.affine, "{}:key".format(seed), characteristic
    )
    equations = [ring.parse(e, key_values) for e in key.equations]
    witness = ring.parse(key.witness, key_values) if key.witness else None

    table = record.table
    if table is not None and table.coordinate_change:
        changed = records.changed_space(key, record)
        values = _table_values(table, space, seed, characteristic)
        target = CoordinateRing(changed.names, changed.weights, characteristic)
        bindings = {
            old: target.parse(text, values) for old, text in table.coordinate_change.items()
        }
        equations = [ring.substitute(f, bindings, target) for f in equations]
        if witness is not None:
            witness = ring.substitute(witness, bindings, target)
        space, ring = changed, target

    if rows:
        values = _table_values(table, space, seed, characteristic)
        presubstitution = (ring, list(equations))
        eliminated = [row.coordinate for row in rows]
        target_space = space.without(eliminated)
        target = CoordinateRing(target_space.names, target_space.weights, characteristic)
        bindings = {row.coordinate: target.parse(row.rhs, values) for row in rows}
        equations = [ring.substitute(f, bindings, target) for f in equations]
        if witness is not None:
            witness = ring.substitute(witness, bindings, target)
        sections = [(row.coordinate, row.weight, bindings[row.coordinate]) for row in rows]
        space, ring = target_space, target
    else:
        sections = []
        presubstitution = None

    logging.debug(
        "Built {} for class {}: {} with {} equations".format(
            label, record.number, space, len(equations)
        )
    )
    return System(
        ring,
        equations,
        space,
        key.dimension - len(rows),
        witness,
        label,
        sections,
        presubstitution,
    )


def _rows(record, level):
    if record.table is None:
        return []
    return record.table.rows_for(level)


def build_X(key, record, seed=1, characteristic=DEFAULT_CHARACTERISTIC):
    """
    Key equations with the X rows of the section table substituted. The
    ambient is the key ambient minus the eliminated coordinates.
    """
    return _build(key, record, _rows(record, "X"), seed, characteristic, "X")


def build_T(key, record, seed=1, characteristic=DEFAULT_CHARACTERISTIC):
    return _build(key, record, _rows(record, "T"), seed, characteristic, "T")


def build_C(key, record, seed=1, characteristic=DEFAULT_CHARACTERISTIC):
    return _build(key, record, _rows(record, "C"), seed, characteristic, "C")


def intermediate(key, record, i, seed=1, characteristic=DEFAULT_CHARACTERISTIC):
    """
    The intermediate variety cut by the T rows of weight at most `b_i`,
    where `b_1 < ... < b_l` are the weights of the T profile. `i = 0`
    gives the key variety itself.
    """
    weights = [b for b, _ in derive_T_profile(record.profile)]
    if not 0 <= i <= len(weights):
        raise FanoVerifyException(
            "Intermediate index {} out of range 0..{}".format(i, len(weights))
        )
    rows = [row for row in _rows(record, "T") if i > 0 and row.weight <= weights[i - 1]]
    return _build(key, record, rows, seed, characteristic, "K({})".format(i))


################################################################################
## Chart plans
################################################################################


def default_chart_plan(space, leading=()):
    """
    Stratify by the `leading` coordinates, then by the remaining ones in
    ascending weight: chart x1, chart x2 on {x1=0}, and so on.
    """
    leading = [c for c in leading if c in space]
    rest = [n for n in space.names if n not in leading]
    rest.sort(key=space.weight)
    order = leading + rest
    return [ChartStep(c, order[:i]) for i, c in enumerate(order)]


def validate_chart_plan(system, plan, **budget):
    """
    Every restriction set must consist of earlier chart coordinates, and
    the locus where all chart coordinates vanish must be the vertex.
    Raises `FanoVerifyException` on a gap; returns a `Status` for the
    algebraic part.
    """
    charts = []
    for step in plan:
        if step.chart not in system.space:
            raise FanoVerifyException("Chart plan uses unknown coordinate '{}'".format(step.chart))
        for z in step.zero:
            if z not in charts:
                raise FanoVerifyException(
                    "Step {} restricts to {}=0, which is not an earlier chart".format(step, z)
                )
        charts.append(step.chart)
    if set(charts) == set(system.space.names):
        return Status.TRUE
    if not system.equations:
        raise FanoVerifyException(
            "Chart plan misses {} and there are no equations to show the gap is empty".format(
                ", ".join(n for n in system.space.names if n not in charts)
            )
        )
    ring = system.ring
    ideal = Ideal(system.equations + [ring.gen(c) for c in charts], ring)
    return ideal.is_zero_dimensional(**budget)


def _step_label(step):
    return str(step)


################################################################################
## Claim A
################################################################################


def _chart_context(system, step):
    chart = system.space.chart_of(step.chart)
    chart_ring, equations = system.chart_equations(step.chart)
    zero = [chart_ring.gen(z) for z in step.zero if z in chart_ring]
    return chart, chart_ring, equations, zero


def _base_locus_generators(system, weight, chart_ring, chart_coordinate):
    ideal = system.space.base_locus_ideal(weight, system.ring)
    return [
        system.ring.substitute(g, {chart_coordinate: 1}, chart_ring) for g in ideal.generators
    ]


def _classify(chart, chart_ring, equations, point, dimension):
    stabilizer = chart.stabilizer_order(point.nonzero_coordinates())
    localized = LocalizedSystem.from_equations(
        chart_ring,
        equations,
        point.coordinates,
        point.field,
        chart.residuals,
        stabilizer,
        label=str(point),
    )
    return stabilizer, lpc_classify(localized, dimension)


def classify_truncated(system, chart, point, stabilizer):
    """
    Type the chart origin with every section row cut down to its terms of
    degree one before substitution. This agrees with the full computation
    when the chart coordinate does not appear in the rows. Returns None
    when `point` is not the origin or `system` has no rows.
    """
    if point.nonzero_coordinates():
        return None
    truncated = system.truncated_chart_equations(chart.coordinate)
    if truncated is None:
        return None
    chart_ring, equations = truncated
    try:
        localized = LocalizedSystem.from_equations(
            chart_ring,
            equations,
            point.coordinates,
            point.field,
            chart.residuals,
            stabilizer,
            label="{} truncated".format(point),
        )
    except FanoVerifyException:
        return LPCFailure("truncated equations do not pass through {}".format(point))
    return lpc_classify(localized, system.dimension)


def claim_A(system, plan, seed=1, base_weights=None, max_extension_degree=4, **budget):
    """
    Quasi-smoothness of `system` on each step of `plan`. With
    `base_weights`, each step only looks at the base loci of those weights
    (one ideal per weight).

    Returns `(verdict, [ChartResult])`.
    """
    charts = []
    for step in plan:
        chart, chart_ring, equations, zero = _chart_context(system, step)
        codim = len(chart_ring) - system.dimension
        singular = singular_locus_ideal(chart_ring, equations, chart_ring.names, codim)
        if base_weights:
            ideals = [
                singular + zero + _base_locus_generators(system, b, chart_ring, step.chart)
                for b in base_weights
            ]
        else:
            ideals = [singular + zero]

        verdicts = []
        details = []
        found = []
        for ideal in ideals:
            empty = ideal.is_empty(**budget)
            if empty == Status.TRUE:
                verdicts.append(report.PASS)
                continue
            dimension_status = ideal.is_zero_dimensional(**budget)
            if dimension_status == Status.INCONCLUSIVE or empty == Status.INCONCLUSIVE:
                verdicts.append(report.INCONCLUSIVE)
                details.append("Groebner budget exceeded")
                continue
            if dimension_status == Status.FALSE:
                verdicts.append(report.FAIL)
                details.append("singular locus has positive dimension")
                continue
            points = solve_zero_dimensional(
                ideal, seed=seed, max_extension_degree=max_extension_degree, **budget
            )
            for point in points:
                _, result = _classify(chart, chart_ring, equations, point, system.dimension)
                found.append("{} {}".format(point, result))
                if isinstance(result, (Smooth, QuotientSingularity)):
                    verdicts.append(report.PASS)
                else:
                    verdicts.append(report.FAIL)
                    details.append("{} at {}".format(result, point))
        verdict = report.combine(verdicts) if verdicts else report.PASS
        if verdict == report.SKIPPED:
            verdict = report.PASS
        logging.debug("Claim A on {}: {}".format(step, verdict))
        charts.append(report.ChartResult(_step_label(step), verdict, "; ".join(details), found))
    return report.combine([c.verdict for c in charts]), charts


################################################################################
## Claim B
################################################################################


def _owned_by_earlier(plan, index, step_chart, point):
    """
    True iff an earlier step of `plan` already covers `point` of the
    current step's chart.
    """
    def value_is_zero(name):
        if name == step_chart:
            return False
        return point.field.is_zero(point.coordinates[name])

    for earlier in plan[:index]:
        if value_is_zero(earlier.chart):
            continue
        if all(value_is_zero(z) for z in earlier.zero):
            return True
    return False


def fixed_point_findings(
    system, plan, seed=1, max_extension_degree=4, truncate=False, **budget
):
    """
    Classify the points of `system` with nontrivial stabilizer on every
    chart of index at least 2. With `truncate`, chart origins are also
    classified with the section rows cut down to their linear parts
    (`classify_truncated`), and the two types must agree.

    Returns `(verdict, [Finding], [ChartResult])`; the verdict is fail if a
    fixed locus is not isolated or a fixed point is not a quotient
    singularity.
    """
    counts = collections.OrderedDict()
    charts = []
    for index, step in enumerate(plan):
        chart, chart_ring, equations, zero = _chart_context(system, step)
        if chart.index < 2:
            continue
        verdicts = []
        details = []
        found = []
        for d, subspace in chart.fixed_loci():
            ideal = Ideal(equations, chart_ring) + zero + subspace.ideal(chart_ring).generators
            empty = ideal.is_empty(**budget)
            if empty == Status.TRUE:
                continue
            zero_dimensional = ideal.is_zero_dimensional(**budget)
            if Status.INCONCLUSIVE in (empty, zero_dimensional):
                verdicts.append(report.INCONCLUSIVE)
                details.append("Groebner budget exceeded on Z/{} locus".format(d))
                continue
            if zero_dimensional == Status.FALSE:
                verdicts.append(report.FAIL)
                details.append("Z/{} fixed locus {} is not isolated".format(d, subspace))
                continue
            points = solve_zero_dimensional(
                ideal, seed=seed, max_extension_degree=max_extension_degree, **budget
            )
            locus = "{}-point".format(step.chart) if subspace.is_origin() else str(subspace)
            for point in points:
                if _owned_by_earlier(plan, index, step.chart, point):
                    continue
                stabilizer, result = _classify(
                    chart, chart_ring, equations, point, system.dimension
                )
                if stabilizer != d:
                    continue
                if truncate:
                    shortcut = classify_truncated(system, chart, point, stabilizer)
                    if shortcut is not None and shortcut != result:
                        result = LPCFailure(
                            "truncated localisation gives {}, full gives {}".format(
                                shortcut, result
                            )
                        )
                found.append("{} {}".format(point, result))
                if not isinstance(result, QuotientSingularity):
                    verdicts.append(report.FAIL)
                    details.append("{} at {}".format(result, point))
                    continue
                verdicts.append(report.PASS)
                slot = (step.chart, result, locus)
                # Each projective point has index/stabilizer affine lifts.
                counts[slot] = counts.get(slot, 0) + fractions.Fraction(
                    point.degree * stabilizer, chart.index
                )
        verdict = report.combine(verdicts) if verdicts else report.PASS
        if verdict == report.SKIPPED:
            verdict = report.PASS
        charts.append(report.ChartResult(_step_label(step), verdict, "; ".join(details), found))

    findings = []
    for (chart_name, singularity, locus), count in counts.items():
        if count.denominator != 1:
            charts.append(
                report.ChartResult(
                    "{}-chart".format(chart_name),
                    report.FAIL,
                    "{} lifts of {} do not form whole orbits".format(count, singularity),
                )
            )
            continue
        findings.append(Finding(chart_name, singularity, int(count), locus))
    verdict = report.combine([c.verdict for c in charts]) if charts else report.PASS
    if verdict == report.SKIPPED:
        verdict = report.PASS
    return verdict, findings, charts


def claim_B(findings, record):
    """
    Compare the basket assembled from `findings` (surface types promoted to
    3-fold types) with the record basket, and run the residue check on
    every entry. Returns `(verdict, detail, basket)`.
    """
    basket = Basket()
    for finding in findings:
        basket.add(finding.singularity.promote(), finding.count)
    missing, extra = basket.symmetric_difference(record.basket)
    problems = []
    if len(missing) or len(extra):
        problems.append("missing {} extra {}".format(missing, extra))
    for singularity in basket.counts:
        if not residue_check(singularity, record.ambient):
            problems.append("{} fails the residue check".format(singularity))
    if problems:
        return report.FAIL, "; ".join(problems), basket
    return report.PASS, "", basket


################################################################################
## Claim C
################################################################################


def claim_C(system, plan, base_weights=None, **budget):
    """
    The singular locus of `system` (already cut by the witness) has
    dimension at most zero on every step of `plan`. With `base_weights` the
    check runs along the base loci of those weights only.

    Returns `(verdict, [ChartResult])`.
    """
    charts = []
    for step in plan:
        chart, chart_ring, equations, zero = _chart_context(system, step)
        codim = len(chart_ring) - system.dimension
        singular = singular_locus_ideal(chart_ring, equations, chart_ring.names, codim)
        if base_weights:
            ideals = [
                singular + zero + _base_locus_generators(system, b, chart_ring, step.chart)
                for b in base_weights
            ]
        else:
            ideals = [singular + zero]
        verdicts = [report.from_status(i.is_zero_dimensional(**budget)) for i in ideals]
        verdict = report.combine(verdicts)
        detail = "singular locus has positive dimension" if verdict == report.FAIL else ""
        charts.append(report.ChartResult(_step_label(step), verdict, detail))
    return report.combine([c.verdict for c in charts]), charts


################################################################################
## Verifier
################################################################################


class Verifier:
    """
    Run table checks and claims over classes of a dataset.
    """

    # Settings are applied iteratively:
    #
    # 1. Default settings
    # 2. Key variety specific settings
    # 3. Class specific settings (built in, then the `settings` table of the
    #    class file)
    # 4. Command line flags
    #
    # Options
    # -------
    # - `characteristic`:        Prime p; all equations are reduced mod p.
    # - `seeds`:                 Seeds for the random section parameters.
    # - `max_pairs`:             Buchberger pair budget per Groebner basis.
    # - `max_degree`:            Degree cap for S-polynomials.
    # - `max_extension_degree`:  Largest GF(p^k) a point may need before the
    #                            seed is resampled.
    # - `resample`:              How often to resample a seed.
    # - `claim_c_mode`:          "direct" on X cut by the witness, or
    #                            "base-loci" on T cut by the witness.
    # - `restrict_to_base_loci`: Look for singular points of T only along
    #                            the base loci of the cuts, when the key's
    #                            singular locus is small enough.
    # - `u_point_truncation`:    Replace the section equations by their
    #                            linear parts when typing fixed points.
    # - `depth`:                 "tables-only" or "full".
    FANOVERIFY_SETTINGS = {
        "default": {
            "characteristic": DEFAULT_CHARACTERISTIC,
            "seeds": [1, 2, 3],
            "max_pairs": 20000,
            "max_degree": 64,
            "max_extension_degree": 4,
            "resample": 3,
            "claim_c_mode": "direct",
            "restrict_to_base_loci": True,
            "u_point_truncation": False,
            "depth": "tables-only",
        },
        "keys": {
            "Sigma12": {},
            "Pi13": {},
            "Pi14": {},
        },
        "classes": {
            # The u-point types of the two classes without printed tables
            # are read off the linear parts of the sections.
            11004: {"u_point_truncation": True},
            16227: {"u_point_truncation": True},
        },
    }

    DEPTHS = ("tables-only", "full")

    def __init__(self, dataset=None, overrides=None, quiet=False):
        self.dataset = dataset
        self.overrides = {k: v for k, v in (overrides or {}).items() if v is not None}
        self.quiet = quiet

    def settings_for(self, record):
        settings = copy.deepcopy(self.FANOVERIFY_SETTINGS["default"])
        settings.update(self.FANOVERIFY_SETTINGS["keys"].get(record.key, {}))
        settings.update(self.FANOVERIFY_SETTINGS["classes"].get(record.number, {}))
        settings.update(record.settings)
        settings.update(self.overrides)
        if settings["depth"] not in self.DEPTHS:
            raise FanoVerifyException("Unknown depth '{}'".format(settings["depth"]))
        if settings["claim_c_mode"] not in ("direct", "base-loci"):
            raise FanoVerifyException(
                "Unknown Claim C mode '{}'".format(settings["claim_c_mode"])
            )
        if not settings["seeds"]:
            raise FanoVerifyException("At least one seed is needed")
        return settings

    @staticmethod
    def _budget(settings):
        return {"max_pairs": settings["max_pairs"], "max_degree": settings["max_degree"]}

    def key_for(self, record):
        return self.dataset.key_for(record)

    ################################################################################
    ## Table checks
    ################################################################################

    def table_checks(self, record, key=None):
        """
        Checks that need no equations: ambient weights, embeddings of T (or
        C), profile laws and the residue check of the expected basket.
        """
        key = key or self.key_for(record)
        checks = []
        table = record.table

        ok = (
            record.profile_sum() == key.dimension - 3
            and all(a < b for (a, _), (b, _) in zip(record.profile, record.profile[1:]))
        )
        checks.append(
            report.CheckResult(
                "profile-law",
                report.PASS if ok else report.FAIL,
                "sum {} vs dim {} - 3".format(record.profile_sum(), key.dimension),
            )
        )
        count = len(key.coordinates) - record.profile_sum()
        checks.append(
            report.CheckResult(
                "ambient-count",
                report.PASS if count == len(record.ambient) else report.FAIL,
                "{} key coordinates minus {} cuts".format(len(key.coordinates), record.profile_sum()),
            )
        )
        if table is None:
            checks.append(report.CheckResult("ambient", report.FAIL, "no section table"))
            return checks

        x_space = section_space(key, record, "X")
        checks.append(
            report.CheckResult(
                "ambient",
                report.PASS if x_space.sorted_weights() == record.ambient else report.FAIL,
                "computed {} expected {}".format(x_space, record.ambient_string()),
            )
        )

        level_space = section_space(key, record, table.level)
        if table.embedding:
            same = sorted(table.embedding) == sorted(level_space.names)
            checks.append(
                report.CheckResult(
                    "embedding",
                    report.PASS if same else report.FAIL,
                    "{} {} = {}".format(table.level, level_space, ",".join(level_space.names)),
                )
            )

        expected = record.profile
        profiles_ok = table.profile("X") == expected
        t_profile = derive_T_profile(expected)
        profiles_ok = profiles_ok and table.profile("T") == t_profile
        if table.level == "C":
            profiles_ok = profiles_ok and table.profile("C") == derive_T_profile(t_profile)
        checks.append(
            report.CheckResult(
                "section-profile",
                report.PASS if profiles_ok else report.FAIL,
                "T profile {}".format(t_profile),
            )
        )

        problems = dataset_module.validate_record(self.dataset, record) if self.dataset else []
        checks.append(
            report.CheckResult(
                "section-rows",
                report.FAIL if problems else report.PASS,
                "; ".join(message for message, _ in problems[:3]),
            )
        )

        failing = [s for s in record.basket.counts if not residue_check(s, record.ambient)]
        checks.append(
            report.CheckResult(
                "residues",
                report.FAIL if failing else report.PASS,
                ", ".join(str(s) for s in failing),
            )
        )
        return checks

    def numerical_data(self, record, key):
        """
        Degree, genus and the first plurigenera from the key's Hilbert
        numerator, with the orbifold Riemann-Roch cross-check. Returns
        `(data, CheckResult)` or `(None, None)` without a numerator.
        """
        if key.numerator is None:
            return None, None
        weights = key.weights_for(record)
        data = hilbert.HilbertData(hilbert.section_numerator(key.numerator, record.profile), weights)
        series = data.expand(12)
        degree = data.anticanonical_degree()
        g, flagged = hilbert.genus(series)
        numerical = collections.OrderedDict(
            [
                ("degree", report.fraction_string(degree)),
                ("genus", g),
                ("plurigenera", series[:8]),
            ]
        )
        if flagged:
            numerical["genus_flag"] = "h0(-K) is zero"
        rr = hilbert.orbifold_rr_check(degree, record.basket, series)
        if rr is None:
            check = report.CheckResult("riemann-roch", report.SKIPPED, "unimplemented")
        else:
            check = report.CheckResult("riemann-roch", report.PASS if rr else report.FAIL)
        return numerical, check

    ################################################################################
    ## Claims over seeds
    ################################################################################

    def _plan(self, system, record, key, budget):
        table = record.table
        if table is not None and table.chart_plan is not None:
            plan = table.chart_plan
            status = validate_chart_plan(system, plan, **budget)
            if status != Status.TRUE:
                raise FanoVerifyException(
                    "Chart plan does not cover T outside the vertex ({})".format(status)
                )
            return plan
        leading = (table.chart_order if table is not None else []) or key.chart_order
        return default_chart_plan(system.space, leading)

    def _base_weights(self, record, key, settings, cuts):
        if not settings["restrict_to_base_loci"]:
            return None
        if key.singular_dimension is None or key.singular_dimension >= cuts:
            return None
        return sorted({b for b, _ in derive_T_profile(record.profile)})

    def _with_seed(self, seed, settings, run):
        """
        Call `run(seed)`, resampling when a point needs too large a field
        extension.
        """
        attempt = seed
        for k in range(settings["resample"] + 1):
            try:
                return run(attempt)
            except ExtensionTooLarge as e:
                logging.info("Seed {}: {}".format(attempt, e))
                attempt = "{}r{}".format(seed, k + 1)
        return None

    def run_claims(self, record, key, settings):
        """
        Claims A, B and C over all seeds. Returns `(claims, basket,
        findings)` for the report.
        """
        budget = self._budget(settings)
        p = settings["characteristic"]
        seeds = settings["seeds"]
        results = {name: collections.OrderedDict() for name in ("A", "B", "C")}
        evidence = {}
        details = collections.defaultdict(list)
        baskets = []
        findings = None

        for seed in helpers.progress(seeds, "No.{} seeds".format(record.number), self.quiet):
            logging.status("Class {}: seed {}".format(record.number, seed))

            def run_ab(s):
                T = build_T(key, record, s, p)
                plan = self._plan(T, record, key, budget)
                cuts = len(_rows(record, "T"))
                a = claim_A(
                    T,
                    plan,
                    seed=s,
                    base_weights=self._base_weights(record, key, settings, cuts),
                    max_extension_degree=settings["max_extension_degree"],
                    **budget
                )
                b = fixed_point_findings(
                    T,
                    plan,
                    seed=s,
                    max_extension_degree=settings["max_extension_degree"],
                    truncate=settings["u_point_truncation"],
                    **budget
                )
                return a, b

            outcome = self._with_seed(seed, settings, run_ab)
            if outcome is None:
                results["A"][seed] = report.INCONCLUSIVE
                results["B"][seed] = report.INCONCLUSIVE
                details["A"].append("seed {}: no small field extension after resampling".format(seed))
            else:
                (a_verdict, a_charts), (b_verdict, seed_findings, b_charts) = outcome
                results["A"][seed] = a_verdict
                evidence.setdefault("A", a_charts)
                b_claim, b_detail, basket = claim_B(seed_findings, record)
                results["B"][seed] = report.combine([b_verdict, b_claim])
                if b_detail:
                    details["B"].append("seed {}: {}".format(seed, b_detail))
                evidence.setdefault("B", b_charts)
                baskets.append(basket)
                if findings is None:
                    findings = seed_findings

            results["C"][seed] = self._run_claim_c(record, key, settings, seed, evidence, budget)

        if len(baskets) > 1 and any(b != baskets[0] for b in baskets[1:]):
            details["B"].append("seeds disagree on the basket")
            for seed in results["B"]:
                results["B"][seed] = report.FAIL

        claims = {}
        for name, per_seed in results.items():
            verdict = report.combine(per_seed.values())
            if len(set(per_seed.values())) > 1:
                details[name].append("seeds disagree")
            claims[name] = report.ClaimResult(
                name, verdict, "; ".join(details[name]), evidence.get(name, []), per_seed
            )
        return claims, (baskets[0] if baskets else None), (findings or [])

    def _run_claim_c(self, record, key, settings, seed, evidence, budget):
        p = settings["characteristic"]
        if settings["claim_c_mode"] == "direct":
            system = build_X(key, record, seed, p)
            base_weights = None
        else:
            system = build_T(key, record, seed, p)
            base_weights = sorted({b for b, _ in derive_T_profile(record.profile)})
        if system.witness is None:
            return report.SKIPPED
        divisor = system.cut(system.witness, "{} with witness".format(system.label))
        leading = (record.table.chart_order if record.table else []) or key.chart_order
        plan = default_chart_plan(divisor.space, leading)
        verdict, charts = claim_C(divisor, plan, base_weights=base_weights, **budget)
        evidence.setdefault("C", charts)
        return verdict

    ################################################################################
    ## Whole classes
    ################################################################################

    def verify_candidate(self, record, depth=None):
        """
        Table checks, then (at depth "full" with key equations) Claims A, B
        and C. Returns a `VerificationReport`.
        """
        settings = self.settings_for(record)
        if depth is not None:
            settings["depth"] = depth
        key = self.key_for(record)
        logging.status("Verifying class {} in {}".format(record.number, key.name))

        checks = self.table_checks(record, key)
        numerical, rr_check = self.numerical_data(record, key)
        if rr_check is not None:
            checks.append(rr_check)
        x_space = section_space(key, record, "X") if record.table is not None else None

        claims = {}
        basket = None
        findings = []
        depth = settings["depth"]
        if depth == "full" and not key.has_equations():
            logging.warning(
                "Key {} has no equations; class {} is checked at tables-only depth".format(
                    key.name, record.number
                )
            )
        elif depth == "full":
            claims, basket, findings = self.run_claims(record, key, settings)
        reason = "tables-only depth" if depth == "tables-only" else "no key equations"
        for name in report.VerificationReport.CLAIMS:
            if name not in claims:
                claims[name] = report.ClaimResult.skipped(name, reason)

        return report.VerificationReport(
            record.number,
            key.name,
            depth,
            seeds=settings["seeds"],
            characteristic=settings["characteristic"],
            checks=checks,
            claims=claims,
            ambient=None if x_space is None else x_space.sorted_weights(),
            expected_ambient=record.ambient,
            basket=basket,
            expected_basket=record.basket,
            findings=findings,
            expected_findings=record.findings,
            numerical=numerical,
        )

    def verify(self, numbers=None, depth=None):
        """
        Reports for the selected classes, in ascending class order.
        """
        selected = self.dataset.select(numbers)
        reports = []
        for record in helpers.progress(selected, "Classes", self.quiet):
            helpers.set_terminal_title("fanoverify : No.{}".format(record.number))
            reports.append(self.verify_candidate(record, depth))
        return reports
