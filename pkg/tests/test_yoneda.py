import pytest
from unittest.mock import patch
from fractions import Fraction

from app.core.config import settings
from app.core.exceptions import ParameterOutOfRange
from app.services.yoneda import (
    T,
    E2Element,
    YonedaClass,
    act_on_yoneda,
    act_through_bar,
    action_columns,
    bosonization_basis,
    bosonization_yoneda,
    cup_k,
    d2_vanishes,
    e2_element,
    e2_equal,
    e2_generator,
    e2_page,
    e2_product,
    expected_action,
    group_action_on_yoneda,
    eta,
    k2_verdict_a,
    k2_verdict_bosonization,
    k2_verdicts,
    omega,
    series_coefficients,
    smash_ext1,
    unit,
    verify_bosonization,
    verify_yoneda,
    yoneda_basis,
    yoneda_dimension,
)


def all_pass(results):
    return [r for r in results if not r.passed] == []


class TestYonedaAlgebra:
    """Tests for H^*(A, k) and its cup product."""

    def test_basis_is_minimal(self):
        for n in range(5):
            assert yoneda_basis(n).differentials_vanish
        assert [c.render() for c in yoneda_basis(2).classes] == ["eta^2", "omega^2"]

    def test_dimensions(self):
        assert [yoneda_dimension(n) for n in range(5)] == [1, 2, 2, 2, 2]
        assert series_coefficients(lambda t: (1 + t) / (1 - t), 5) == [1, 2, 2, 2, 2]

    def test_class_validation(self):
        with pytest.raises(ParameterOutOfRange):
            YonedaClass(0, 1, 1)
        with pytest.raises(ParameterOutOfRange):
            omega(0)

    def test_render(self):
        assert YonedaClass(3, -1, Fraction(1, 2)).render() == "-eta^3 + 1/2*omega^3"
        assert YonedaClass(2).render() == "0"

    def test_eta_powers(self):
        assert cup_k(eta(1), eta(1)) == eta(2)
        assert cup_k(eta(2), eta(3)) == eta(5)

    def test_omega_products(self):
        assert cup_k(omega(2), eta(1)) == omega(3)
        assert cup_k(eta(1), omega(2)) == omega(3).scale(-1)
        assert cup_k(eta(2), omega(2)) == omega(4)
        assert cup_k(omega(1), eta(2)).is_zero()
        assert cup_k(omega(2), omega(2)).is_zero()

    def test_unit(self):
        assert cup_k(unit(), omega(3)) == omega(3)
        assert cup_k(eta(2), unit()) == eta(2)

    def test_k2(self):
        verdict = k2_verdict_a(6)
        assert verdict.is_k2
        assert verdict.witnesses["omega^5"] == "omega^2 (eta^1)^3 = omega^5"

    def test_checks(self):
        assert all_pass(verify_yoneda(4, 4))


class TestGroupAction:
    """Tests for the action of t on H^*(A, k)."""

    def test_degree_zero(self):
        assert action_columns(0) == [[1]]

    def test_degree_one(self):
        assert act_on_yoneda(T, eta(1)) == YonedaClass(1, -1, -1)
        assert act_on_yoneda(T, omega(1)) == YonedaClass(1, 0, -1)

    def test_higher_degrees_diagonal(self):
        assert action_columns(2) == [[1, 0], [0, -1]]
        assert action_columns(3) == [[-1, 0], [0, 1]]
        assert action_columns(4) == [[1, 0], [0, -1]]

    def test_matrix_labels(self):
        matrix = group_action_on_yoneda(1)
        assert matrix.row_labels == ["eta^1", "omega^1"]
        assert matrix.entries[(1, 0)] == -1

    def test_bar_lifts_agree(self):
        for q in range(1, 4):
            for cls in yoneda_basis(q).classes:
                assert act_through_bar(T, cls) == act_on_yoneda(T, cls)

    def test_high_degrees_stay_small(self):
        with patch.object(settings, "ORACLE_MAX_COLUMNS", 200):
            assert action_columns(settings.MAX_YONEDA_DEGREE) == expected_action(settings.MAX_YONEDA_DEGREE)
            assert action_columns(9) == expected_action(9)

    def test_multiplicative(self):
        left = act_on_yoneda(T, cup_k(omega(2), eta(1)))
        right = cup_k(act_on_yoneda(T, omega(2)), act_on_yoneda(T, eta(1)))
        assert left == right


class TestE2Page:
    """Tests for the E_2 page of the bosonization."""

    def test_bottom_row(self):
        assert e2_page(0, 0).basis == ["e"]
        assert e2_page(1, 0).basis == ["bar(e)"]

    def test_degree_one_vanishes(self):
        assert e2_page(0, 1).dimension == 0
        assert e2_page(1, 1).dimension == 0

    def test_parity(self):
        assert e2_page(0, 2).basis == ["eta^2"]
        assert e2_page(1, 2).basis == ["bar(eta^2)"]
        assert e2_page(0, 3).basis == ["omega^3"]
        assert e2_page(1, 3).basis == ["bar(omega^3)"]

    def test_higher_rows_vanish(self):
        assert e2_page(2, 4).dimension == 0
        with pytest.raises(ParameterOutOfRange):
            e2_page(-1, 0)

    def test_products(self):
        bar_e = e2_generator("bar(e)")
        omega3 = e2_generator("omega^3")
        assert e2_product(bar_e, bar_e).is_zero()
        assert e2_equal(e2_product(bar_e, omega3), e2_element(1, omega(3)))
        assert e2_equal(e2_product(omega3, bar_e), e2_element(1, omega(3)).scale(-1))
        assert e2_product(omega3, omega3).is_zero()

    def test_coinvariant_in_image_is_zero(self):
        assert E2Element(1, 2, (Fraction(0), Fraction(1))).is_zero()
        assert not E2Element(1, 2, (Fraction(1), Fraction(0))).is_zero()


class TestBosonization:
    """Tests for H^*(A#kZ, k)."""

    def test_smash_ext1(self):
        result = smash_ext1()
        assert result.dimension == 1
        assert result.basis == [{"delta(x)": "0", "delta(y)": "0", "delta(t)": "1", "delta(T)": "-1"}]

    def test_d2(self):
        certified, _ = d2_vanishes(5)
        assert certified

    def test_dimensions(self):
        summary = bosonization_yoneda(6)
        assert summary["d2_vanishes"]
        assert summary["dimensions"] == [1, 1, 1, 2, 2, 2, 2]
        expected = series_coefficients(lambda t: (1 + t) * (1 + t ** 3) / (1 - t ** 2), 7)
        assert expected == [1, 1, 1, 2, 2, 2, 2]

    def test_basis_names(self):
        assert sorted(b.render() for b in bosonization_basis(3)) == ["bar(eta^2)", "omega^3"]
        assert sorted(b.render() for b in bosonization_basis(4)) == ["bar(omega^3)", "eta^4"]

    def test_not_k2(self):
        verdict = k2_verdict_bosonization()
        assert not verdict.is_k2
        assert verdict.witnesses["omega^3"] == "outside the span of products"

    def test_checks(self):
        assert all_pass(verify_bosonization(5, 4))

    @pytest.mark.slow
    def test_default_window(self):
        results = verify_bosonization(settings.MAX_YONEDA_DEGREE)
        assert all_pass(results)
        assert len([r for r in results if r.name == "bosonization.action"]) == settings.MAX_YONEDA_DEGREE + 1

    def test_verdict_pair(self):
        plane, smash = k2_verdicts()
        assert (plane.algebra, plane.is_k2) == ("A", True)
        assert (smash.algebra, smash.is_k2) == ("A#kZ", False)
