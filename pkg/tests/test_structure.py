import pytest
from fractions import Fraction

from app.core.exceptions import FitImpossible, ParameterOutOfRange
from app.services.algebra import AlgebraElement, graded_basis, word_element
from app.services.cohomology import (
    C_CLASS,
    ONE_CLASS,
    Coefficients,
    Cochain,
    cohomology_representative,
    named_classes,
    s_class,
    t_class,
    u_class,
    v_class,
    w_class,
)
from app.services.resolution import generators_in_degree
from app.services.structure import (
    C_DERIVATION,
    Derivation,
    IntermediateSeriesModule,
    LiftingTable,
    RescaledClass,
    VirasoroElement,
    bracket_h1,
    bracket_h1_hn,
    cup,
    cup_cochains,
    cup_coordinates,
    expected_cup,
    expected_h1_action,
    explicit_lifting,
    h1_action,
    intermediate_series_match,
    lift_derivation,
    rescale,
    s_derivation,
    periodicity_matrix,
    verify_cup_periodicity,
    verify_cup_properties,
    verify_cup_table,
    verify_derivations,
    verify_h1_action,
    verify_h1_brackets,
    verify_lifting_agreement,
    verify_liftings,
    verify_poisson,
    virasoro_check,
    virasoro_image,
)


def all_pass(results):
    return [r for r in results if not r.passed] == []


class TestDerivations:
    """Tests for derivations of A and their commutators."""

    def setup_method(self):
        """Setup for each test method."""
        self.s0 = s_derivation(0)
        self.s1 = s_derivation(1)

    def test_values(self):
        assert self.s1.value_on_x == word_element("xyy", 3)
        assert self.s1.value_on_y == word_element("yyy")
        assert C_DERIVATION.value_on_y == word_element("x")

    def test_well_defined(self):
        assert C_DERIVATION.is_well_defined()
        assert s_derivation(3).is_well_defined()
        assert not Derivation(word_element("y"), AlgebraElement()).is_well_defined()

    def test_euler(self):
        for d in range(5):
            for monomial in graded_basis(d):
                element = AlgebraElement.monomial(monomial)
                assert self.s0.apply(element) == element.scale(d)

    def test_weight(self):
        assert self.s1.weight == 2
        assert C_DERIVATION.weight == 0
        with pytest.raises(ParameterOutOfRange):
            Derivation(word_element("x"), word_element("yyy")).weight

    def test_commutator(self):
        assert bracket_h1(self.s0, self.s1) == {s_class(1): 2}
        assert bracket_h1(self.s1, s_derivation(2)) == {s_class(3): 2}
        assert bracket_h1(C_DERIVATION, self.s1) == {}

    def test_from_class_rejects_other_degrees(self):
        with pytest.raises(ParameterOutOfRange):
            Derivation.from_class(t_class(0, 2))

    def test_checks(self):
        assert all_pass(verify_derivations(4, 5))
        assert all_pass(verify_h1_brackets(3))


class TestLiftings:
    """Tests for liftings of derivations to the minimal resolution."""

    def test_solver_squares_commute(self):
        lifting = lift_derivation(s_derivation(1), 4)
        assert lifting.max_degree >= 4
        for h in range(1, 5):
            for tag in generators_in_degree(h):
                assert lifting.square_defect(tag).is_zero()

    def test_tables_commute(self):
        for table in LiftingTable:
            lifting = explicit_lifting(table, 3)
            for h in range(1, 4):
                for tag in generators_in_degree(h):
                    assert lifting.square_defect(tag).is_zero()

    def test_c_table_in_high_degree(self):
        lifting = explicit_lifting(LiftingTable.C, 6)
        for tag in generators_in_degree(6):
            assert lifting.square_defect(tag).is_zero()

    def test_table_limit(self):
        with pytest.raises(ParameterOutOfRange):
            explicit_lifting(LiftingTable.BETA, 4)

    def test_not_a_derivation(self):
        with pytest.raises(ParameterOutOfRange):
            lift_derivation(Derivation(word_element("y"), AlgebraElement()), 2)

    def test_memoized(self):
        assert lift_derivation(C_DERIVATION, 2) is lift_derivation(C_DERIVATION, 3)

    def test_checks(self):
        assert all_pass(verify_liftings(4))
        assert all_pass(verify_lifting_agreement(1))


class TestBracketAction:
    """Tests for the action of HH^1 on higher cohomology."""

    def test_euler_on_t(self):
        for n in range(3):
            assert h1_action(s_class(0), t_class(n, 2)) == ({t_class(n, 2): 2 * (n - 1)} if n != 1 else {})

    def test_s1_on_u(self):
        assert h1_action(s_class(1), u_class(1, 2)) == {u_class(2, 2): -4, t_class(2, 2): 6}

    def test_c_acts_by_zero(self):
        for name in (t_class(1, 2), u_class(0, 2), v_class(1, 3), w_class(0, 3)):
            assert h1_action(C_CLASS, name) == {}

    def test_degree_one_agrees_with_commutator(self):
        lifting = lift_derivation(s_derivation(1), 1)
        assert bracket_h1_hn(s_derivation(1), s_class(2), lifting) == {s_class(3): 2}

    def test_unit(self):
        assert h1_action(s_class(2), ONE_CLASS) == {}

    def test_jacobi_extension(self):
        assert h1_action(s_class(3), t_class(1, 2)) == expected_h1_action(s_class(3), t_class(1, 2))

    def test_closed_forms(self):
        assert all_pass(verify_h1_action(2, 1, 1))


class TestCup:
    """Tests for the cup product."""

    def test_s_cup_s(self):
        assert cup(s_class(0), s_class(1)) == {t_class(2, 2): 4}
        assert cup(s_class(1), s_class(0)) == {t_class(2, 2): -4}
        assert cup(s_class(1), s_class(1)) == {}

    def test_unit(self):
        assert cup(ONE_CLASS, u_class(1, 2)) == {u_class(1, 2): 1}

    def test_periodicity(self):
        assert cup(u_class(0, 2), t_class(1, 2)) == {t_class(1, 4): 1}
        assert cup(u_class(0, 2), w_class(1, 3)) == {w_class(1, 5): 1}

    def test_c_is_nilpotent_factor(self):
        assert cup(C_CLASS, s_class(1)) == {}
        assert cup(C_CLASS, u_class(0, 2)) == {}

    def test_mixed_products(self):
        assert cup(u_class(0, 2), s_class(0)) == expected_cup(u_class(0, 2), s_class(0))
        assert cup(s_class(1), v_class(0, 3)) == {t_class(1, 4): -3}

    def test_field_coefficients(self):
        eta = Cochain.from_values(1, [1, None], Coefficients.FIELD)
        product = cup_cochains(eta, eta)
        assert product.coefficients == Coefficients.FIELD
        assert product.value(generators_in_degree(2)[0]) == AlgebraElement.scalar(1)

    def test_coordinates(self):
        left = {s_class(0): Fraction(1), s_class(1): Fraction(2)}
        assert cup_coordinates(left, {s_class(1): Fraction(1)}) == {t_class(2, 2): 4}

    def test_table(self):
        assert all_pass(verify_cup_table(1, 1))

    def test_properties(self):
        assert all_pass(verify_cup_properties(5))
        assert all_pass(verify_poisson(0))

    def test_periodicity_is_bijective(self):
        matrix = periodicity_matrix(2, -2)
        assert matrix.shape == (2, 2)
        assert matrix.rank() == 2
        results = verify_cup_periodicity(3, 4)
        assert all_pass(results)
        cells = [r for r in results if r.name == "cup.periodicity"]
        assert len(cells) == sum(4 + n + 2 for n in (2, 3))

    def test_periodicity_starts_in_degree_two(self):
        assert len(named_classes(0, 0)) != len(named_classes(2, -2))


class TestVirasoro:
    """Tests for the Virasoro identification."""

    def test_central_term(self):
        result = VirasoroElement.L(2).bracket(VirasoroElement.L(-2))
        assert result == VirasoroElement.L(0, -4) + VirasoroElement.central(Fraction(1, 2))
        assert VirasoroElement.central().bracket(VirasoroElement.L(3)) == VirasoroElement()

    def test_image(self):
        image = virasoro_image({s_class(2): Fraction(1), C_CLASS: Fraction(3)})
        assert image == VirasoroElement({2: 8, VirasoroElement.CENTRAL: 3})
        with pytest.raises(ParameterOutOfRange):
            virasoro_image({t_class(0, 2): Fraction(1)})

    def test_render(self):
        assert (VirasoroElement.L(1, 2) + VirasoroElement.central()).render() == "C + 2*L_1"

    def test_check(self):
        assert all_pass(virasoro_check(4, 2))


class TestIntermediateSeries:
    """Tests for the rescaled action and intermediate series fits."""

    def test_rescaled_names(self):
        assert RescaledClass(t_class(2, 4)).render() == "tau_2^4"
        assert RescaledClass(s_class(1)).render() == "L_1"
        assert rescale({t_class(1, 2): Fraction(3)}) == {RescaledClass(t_class(1, 2)): 12}

    def test_fit(self):
        table = {(s, n): Fraction(n - s - 1) for s in range(3) for n in range(4)}
        module = IntermediateSeriesModule.fit(table, 5)
        assert (module.a, module.b) == (-1, -1)
        assert module.act(2, 4) is None
        assert module.act(1, 2) == (0, 3)

    def test_fit_impossible(self):
        table = {(0, 0): Fraction(0), (1, 0): Fraction(1), (1, 1): Fraction(5)}
        with pytest.raises(FitImpossible):
            IntermediateSeriesModule.fit(table, 3)

    def test_even_family(self):
        (fit,) = intermediate_series_match(1, "even", 3)
        assert (fit.module.a, fit.module.b) == (-1, -1)
        assert fit.off_family == {}
        assert fit.central_zero

    def test_parity(self):
        with pytest.raises(ParameterOutOfRange):
            intermediate_series_match(1, "both", 3)
        with pytest.raises(ParameterOutOfRange):
            intermediate_series_match(0, "even", 3)

    def test_representatives_unchanged(self):
        assert cohomology_representative(t_class(0, 2)).degree == 2
