"""Tests for building X, T and C and for the three claims."""

import random

import pytest

from fanoverify import report
from fanoverify.exceptions import FanoVerifyException
from fanoverify.fields import PrimeField
from fanoverify.ideals import Status
from fanoverify.pipeline import (
    System,
    Verifier,
    build_C,
    build_T,
    build_X,
    claim_C,
    classify_truncated,
    default_chart_plan,
    derive_T_profile,
    intermediate,
    validate_chart_plan,
)
from fanoverify.points import ClosedPoint
from fanoverify.poly import CoordinateRing
from fanoverify.records import ChartStep
from fanoverify.singularity import LocalizedSystem, NotQuasiSmooth, Smooth, lpc_classify
from fanoverify.wps import WeightedSpace

P = 101


def projective_system(text, witness):
    names = ["x0", "x1", "x2", "x3", "x4"]
    space = WeightedSpace(names, [1] * 5)
    ring = CoordinateRing(names, [1] * 5, P)
    system = System(ring, [ring.parse(text)], space, 3, ring.parse(witness), "quadric")
    return system.cut(system.witness)


class TestProfiles:
    def test_adds_a_weight_one_cut(self):
        assert derive_T_profile([(1, 1), (2, 1)]) == [(1, 2), (2, 1)]
        assert derive_T_profile([(2, 2), (3, 2), (4, 2), (5, 1), (6, 1), (7, 1)]) == [
            (1, 1),
            (2, 2),
            (3, 2),
            (4, 2),
            (5, 1),
            (6, 1),
            (7, 1),
        ]


class TestBuild:
    def test_ambients(self, quintic):
        record = quintic.record(1)
        key = quintic.key_for(record)
        X = build_X(key, record, seed=1, characteristic=P)
        T = build_T(key, record, seed=1, characteristic=P)
        assert X.space.sorted_weights() == [1, 1, 1, 1, 2]
        assert X.dimension == 3
        assert T.space.names == ("x0", "x1", "x2", "y")
        assert T.dimension == 2
        assert [name for name, _, _ in T.sections] == ["x3", "x4"]
        assert len(T.equations) == 1
        assert T.witness is not None

    def test_equations_are_quasi_homogeneous(self, quintic, seed):
        record = quintic.record(1)
        T = build_T(quintic.key_for(record), record, seed=seed, characteristic=P)
        assert T.ring.weighted_degree(T.equations[0]).degree == 5

    def test_curve_needs_a_curve_table(self, quintic):
        record = quintic.record(1)
        with pytest.raises(FanoVerifyException):
            build_C(quintic.key_for(record), record)

    def test_intermediate(self, quintic):
        record = quintic.record(1)
        key = quintic.key_for(record)
        assert intermediate(key, record, 0, characteristic=P).space.names == (
            "x0",
            "x1",
            "x2",
            "x3",
            "x4",
            "y",
        )
        assert intermediate(key, record, 1, characteristic=P).dimension == 2
        with pytest.raises(FanoVerifyException):
            intermediate(key, record, 2)

    def test_shipped_tables_build_ambients(self):
        from fanoverify.dataset import load_dataset

        dataset = load_dataset()
        record = dataset.record(393)
        X = build_X(dataset.key_for(record), record, characteristic=P)
        assert X.space.sorted_weights() == [1, 4, 5, 5, 6, 7, 8, 9]
        assert X.equations == []


class TestChartPlans:
    def test_default_order(self):
        space = WeightedSpace(["u", "a", "b"], [3, 1, 2])
        plan = default_chart_plan(space, leading=["b"])
        assert [step.chart for step in plan] == ["b", "a", "u"]
        assert plan[2].zero == ["b", "a"]

    def test_restriction_must_be_earlier(self):
        system = projective_system("x0*x1 + x2*x3 + x4^2", "x0")
        with pytest.raises(FanoVerifyException):
            validate_chart_plan(system, [ChartStep("x0"), ChartStep("x2", ["x1"])])

    def test_covering_plan(self):
        system = projective_system("x0*x1 + x2*x3 + x4^2", "x0")
        plan = default_chart_plan(system.space)
        assert validate_chart_plan(system, plan) == Status.TRUE


class TestClaimC:
    def test_isolated_singularities(self):
        system = projective_system("x0*x1 + x2*x3 + x4^2", "x0")
        verdict, charts = claim_C(system, default_chart_plan(system.space))
        assert verdict == report.PASS
        assert len(charts) == 5

    def test_singular_line(self):
        system = projective_system("x0*x1^2 - x3*x2^2 + x4*(x0^2 + x3^2)", "x4")
        verdict, charts = claim_C(system, default_chart_plan(system.space))
        assert verdict == report.FAIL
        assert any("positive dimension" in c.detail for c in charts)


class TestVerifier:
    def test_settings_layers(self, quintic):
        record = quintic.record(1)
        verifier = Verifier(quintic, {"max_pairs": 10, "seeds": None})
        settings = verifier.settings_for(record)
        assert settings["max_pairs"] == 10
        assert settings["seeds"] == [1, 2, 3]
        assert settings["u_point_truncation"] is False

    def test_class_settings(self):
        from fanoverify.dataset import load_dataset

        dataset = load_dataset()
        settings = Verifier(dataset).settings_for(dataset.record(11004))
        assert settings["u_point_truncation"] is True

    def test_bad_settings(self, quintic):
        with pytest.raises(FanoVerifyException):
            Verifier(quintic, {"claim_c_mode": "sideways"}).settings_for(quintic.record(1))
        with pytest.raises(FanoVerifyException):
            Verifier(quintic, {"depth": "deep"}).settings_for(quintic.record(1))

    def test_tables_only_shipped(self):
        from fanoverify.dataset import load_dataset

        dataset = load_dataset()
        reports = Verifier(dataset, quiet=True).verify()
        assert len(reports) == 31
        for r in reports:
            assert r.overall() == report.PASS, str(r)
            assert r.claims["A"].detail == "tables-only depth"

    def test_numerical_data(self, quintic):
        record = quintic.record(1)
        r = Verifier(quintic, quiet=True).verify_candidate(record)
        assert r.numerical["degree"] == "5/2"
        assert r.numerical["genus"] == 2
        assert r.check("riemann-roch").verdict == report.PASS

    def test_full_quasi_smooth(self, quintic):
        verifier = Verifier(quintic, {"seeds": [1, 2]}, quiet=True)
        r = verifier.verify_candidate(quintic.record(1), depth="full")
        assert r.claims["A"].verdict == report.PASS
        assert r.claims["B"].verdict == report.PASS
        assert r.claims["C"].verdict == report.PASS
        assert r.basket == r.expected_basket
        assert r.findings_diff() == ([], [])
        assert r.overall() == report.PASS

    def test_full_singular_section(self, quintic):
        verifier = Verifier(quintic, {"seeds": [1]}, quiet=True)
        r = verifier.verify_candidate(quintic.record(2), depth="full")
        assert r.claims["A"].verdict == report.FAIL
        assert r.claims["B"].verdict == report.PASS
        assert r.claims["C"].verdict == report.FAIL
        assert r.overall() == report.FAIL
        failing = [c for c in r.claims["A"].charts if c.verdict == report.FAIL]
        assert [c.step for c in failing] == ["x2-chart on {x0=x1=0}"]

    def test_truncation_agrees_on_linear_rows(self, quintic):
        overrides = {"seeds": [1], "u_point_truncation": True}
        r = Verifier(quintic, overrides, quiet=True).verify_candidate(quintic.record(1), depth="full")
        assert r.claims["B"].verdict == report.PASS
        assert r.basket == r.expected_basket

    def test_verdicts_do_not_depend_on_seed(self, quintic, seed):
        verifier = Verifier(quintic, {"seeds": [seed]}, quiet=True)
        r = verifier.verify_candidate(quintic.record(1), depth="full")
        assert {name: c.verdict for name, c in r.claims.items()} == {
            "A": report.PASS,
            "B": report.PASS,
            "C": report.PASS,
        }


def row_system(rhs):
    """
    T = {x*u + y^3 + z^3 = 0} with the row x = rhs substituted, in P(1,1,1).
    """
    names = ["y", "z", "u"]
    ring = CoordinateRing(names, [1, 1, 1], P)
    key_ring = CoordinateRing(["x"] + names, [2, 1, 1, 1], P)
    key_equation = key_ring.parse("x*u + y^3 + z^3")
    section = ring.parse(rhs)
    equation = key_ring.substitute(key_equation, {"x": section}, ring)
    return System(
        ring,
        [equation],
        WeightedSpace(names, [1, 1, 1]),
        1,
        sections=[("x", 2, section)],
        presubstitution=(key_ring, [key_equation]),
    )


def full_type(system, chart, point):
    chart_ring, equations = system.chart_equations(chart.coordinate)
    localized = LocalizedSystem.from_equations(
        chart_ring, equations, point.coordinates, point.field, chart.residuals, 1
    )
    return lpc_classify(localized, system.dimension)


class TestTruncation:
    def origin(self):
        return ClosedPoint({"y": 0, "z": 0}, PrimeField(P))

    def test_rows_without_chart_coordinate(self):
        system = row_system("y^2 + 3*y*z")
        chart = system.space.chart_of("u")
        truncated = classify_truncated(system, chart, self.origin(), 1)
        assert truncated == full_type(system, chart, self.origin())

    def test_rows_with_chart_coordinate_disagree(self):
        # u*y has degree two, but becomes the linear term y on the u-chart.
        system = row_system("u*y")
        chart = system.space.chart_of("u")
        assert isinstance(full_type(system, chart, self.origin()), Smooth)
        truncated = classify_truncated(system, chart, self.origin(), 1)
        assert isinstance(truncated, NotQuasiSmooth)
        assert truncated.corank == 1

    def test_only_at_the_origin(self):
        system = row_system("u*y")
        chart = system.space.chart_of("u")
        point = ClosedPoint({"y": 0, "z": 5}, PrimeField(P))
        assert classify_truncated(system, chart, point, 1) is None

    def test_needs_rows(self):
        system = projective_system("x0*x1 + x2*x3 + x4^2", "x0")
        chart = system.space.chart_of("x0")
        point = ClosedPoint({n: 0 for n in ["x1", "x2", "x3", "x4"]}, PrimeField(P))
        assert classify_truncated(system, chart, point, 1) is None


class TestSubstitution:
    def test_rows_are_substituted_soundly(self, quintic, seed):
        record = quintic.record(1)
        T = build_T(quintic.key_for(record), record, seed=seed, characteristic=P)
        key_ring, key_equations = T.presubstitution
        field = PrimeField(P)
        rng = random.Random(seed)
        for _ in range(25):
            point = {name: rng.randrange(P) for name in T.ring.names}
            full = dict(point)
            for name, _, rhs in T.sections:
                full[name] = T.ring.evaluate(rhs, point, field)
            for key_equation, equation in zip(key_equations, T.equations):
                assert key_ring.evaluate(key_equation, full, field) == T.ring.evaluate(
                    equation, point, field
                )

    def test_build_is_deterministic(self, quintic, seed):
        record = quintic.record(1)
        key = quintic.key_for(record)
        first = build_T(key, record, seed=seed, characteristic=P)
        second = build_T(key, record, seed=seed, characteristic=P)
        assert first.equations == second.equations
        assert [s[2] for s in first.sections] == [s[2] for s in second.sections]

    def test_profile_derivation_is_pure(self):
        profile = [(1, 1), (2, 2)]
        assert derive_T_profile(profile) == derive_T_profile(profile) == [(1, 2), (2, 2)]
        assert profile == [(1, 1), (2, 2)]
