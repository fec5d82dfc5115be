"""Tests for Hilbert series and the plurigenus formula."""

import fractions
import itertools

import pytest

from fanoverify import hilbert
from fanoverify.exceptions import FanoVerifyException
from fanoverify.singularity import Basket, QuotientSingularity
from fanoverify.wps import WeightedSpace


class TestSeries:
    def test_sextic_double_solid(self):
        data = hilbert.ci_hilbert([6], [1, 1, 1, 1, 3])
        assert data.anticanonical_degree() == 2
        assert hilbert.genus(data.expand(1)) == (2, False)

    def test_quartic(self):
        data = hilbert.ci_hilbert([4], [1, 1, 1, 1, 1])
        assert data.expand(3) == [1, 5, 15, 35]
        assert data.anticanonical_degree() == 4

    def test_numerator_forms_agree(self):
        assert hilbert.as_poly("1 - t^5") == hilbert.as_poly([1, 0, 0, 0, 0, -1])

    def test_section_numerator(self):
        numerator = hilbert.section_numerator("1 - t^5", [(1, 1)])
        data = hilbert.HilbertData(numerator, [1, 1, 1, 1, 1, 2])
        assert data.anticanonical_degree() == fractions.Fraction(5, 2)
        assert data.expand(6) == hilbert.ci_hilbert([5], [1, 1, 1, 1, 2]).expand(6)

    def test_cancel_factors(self):
        numerator = hilbert.cancel_factors(hilbert.ci_numerator([2, 3]), [2])
        assert numerator == hilbert.as_poly("1 - t^3")

    def test_not_a_threefold(self):
        with pytest.raises(FanoVerifyException):
            hilbert.ci_hilbert([2], [1, 1, 1]).anticanonical_degree()

    def test_constant_term(self):
        with pytest.raises(FanoVerifyException):
            hilbert.HilbertData("2 - t", [1, 1])

    def test_genus_flag(self):
        assert hilbert.genus([1, 0, 3]) == (-2, True)


class TestRiemannRoch:
    def test_formula_is_validated(self):
        assert hilbert.formula_validated()

    def test_smooth_quartic(self):
        assert hilbert.rr_prediction(4, [], 3) == [1, 5, 15, 35]

    def test_quintic_with_a_half_point(self):
        basket = Basket([QuotientSingularity(2, (1, 1, 1))])
        series = hilbert.ci_hilbert([5], [1, 1, 1, 1, 2]).expand(10)
        assert hilbert.orbifold_rr_check(fractions.Fraction(5, 2), basket, series)
        assert not hilbert.orbifold_rr_check(fractions.Fraction(5, 2), Basket(), series)


class TestCountingOracle:
    """Series coefficients against counting monomials minus relations."""

    def count(self, weights, n):
        if n < 0:
            return 0
        names = ["x{}".format(i) for i in range(len(weights))]
        return len(WeightedSpace(names, weights).monomials_of_weight(n))

    @pytest.mark.parametrize(
        "degrees,weights",
        [
            ([6], [1, 1, 1, 1, 3]),
            ([4], [1, 1, 1, 1, 1]),
            ([5], [1, 1, 1, 1, 2]),
            ([2, 3], [1, 1, 1, 1, 1, 1]),
            ([16], [1, 2, 3, 4, 7]),
        ],
    )
    def test_inclusion_exclusion(self, degrees, weights):
        series = hilbert.ci_hilbert(degrees, weights).expand(12)
        for n in range(13):
            expected = 0
            for k in range(len(degrees) + 1):
                for subset in itertools.combinations(degrees, k):
                    expected += (-1) ** k * self.count(weights, n - sum(subset))
            assert series[n] == expected

    @pytest.mark.parametrize(
        "degrees,weights",
        [([6], [1, 1, 1, 1, 3]), ([2, 3], [1, 1, 1, 1, 1, 1]), ([16], [1, 2, 3, 4, 7])],
    )
    def test_degree_is_product_quotient(self, degrees, weights):
        expected = fractions.Fraction(1)
        for d in degrees:
            expected *= d
        for a in weights:
            expected /= a
        assert hilbert.ci_hilbert(degrees, weights).anticanonical_degree() == expected

    def test_degree_ignores_redundant_cone_coordinate(self):
        plain = hilbert.ci_hilbert([6], [1, 1, 1, 1, 3])
        coned = hilbert.ci_hilbert([6, 2], [1, 1, 1, 1, 3, 2])
        assert plain.anticanonical_degree() == coned.anticanonical_degree()
