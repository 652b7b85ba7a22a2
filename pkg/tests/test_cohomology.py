import pytest
from fractions import Fraction
from unittest.mock import patch

from app.core.config import settings
from app.core.exceptions import NotACocycle, ParameterOutOfRange, ResourceGuardExceeded
from app.services.algebra import AlgebraElement, PBWMonomial, factorial_sum, word_element
from app.services.cohomology import (
    C_CLASS,
    ONE_CLASS,
    Chain,
    ClassFamily,
    Coefficients,
    Cochain,
    HomologyClass,
    HomologyFamily,
    LemmaId,
    MapId,
    bar_oracle_cohomology,
    bar_oracle_homology,
    cell_matrix,
    chain_differential,
    cohomology_cell,
    cohomology_representative,
    explicit_chain_differential,
    explicit_hom_differential,
    hom_differential,
    homology_cell,
    homology_oracle_columns,
    homology_representative,
    named_classes,
    named_homology_classes,
    oracle_columns,
    periodicity_relabel,
    reduce_chain_to_basis,
    reduce_to_basis,
    render_coordinates,
    s_class,
    solved_cycle_partner,
    t_class,
    two_cycle_partner,
    u_class,
    v_class,
    verify_cohomology,
    verify_complex_property,
    verify_explicit_differentials,
    verify_field_cohomology,
    verify_homology,
    verify_homology_oracle,
    verify_kernel_image_bases,
    verify_oracle,
    verify_periodicity,
    w_class,
)


def all_pass(results):
    return [r for r in results if not r.passed] == []


class TestDifferentials:
    """Tests for cochain and chain differentials."""

    def setup_method(self):
        """Setup for each test method."""
        self.x = word_element("x")
        self.y = word_element("y")

    def test_center_element(self):
        assert hom_differential(0, Cochain.from_values(0, [1])).is_zero()

    def test_d0_of_y(self):
        result = hom_differential(0, Cochain.from_values(0, [self.y]))
        assert result == Cochain.from_values(1, [word_element("xy") - word_element("yx"), None])

    def test_c_is_cocycle(self):
        assert hom_differential(1, Cochain.from_values(1, [None, self.x])).is_zero()

    def test_chain_d0(self):
        result = chain_differential(1, Chain.from_values(1, [self.y, None]))
        assert result == Chain.from_values(0, [word_element("yx") - word_element("xy")])
        assert chain_differential(1, Chain.from_values(1, [1, None])).is_zero()

    def test_explicit_formulas_agree(self):
        assert all_pass(verify_explicit_differentials(4, 4))

    def test_explicit_on_mixed_cochain(self):
        cochain = Cochain.from_values(3, [word_element("yxy"), word_element("xyy") + word_element("y")])
        assert hom_differential(3, cochain) == explicit_hom_differential(3, cochain)
        chain = Chain.from_values(4, [word_element("yy"), word_element("xy")])
        assert chain_differential(4, chain) == explicit_chain_differential(4, chain)

    def test_square_zero(self):
        assert all_pass(verify_complex_property(5, 4))

    def test_wrong_degree(self):
        with pytest.raises(ParameterOutOfRange):
            hom_differential(2, Cochain.from_values(1, [None, self.x]))

    def test_field_values_must_be_scalars(self):
        with pytest.raises(ParameterOutOfRange):
            Cochain.from_values(1, [self.x, None], Coefficients.FIELD)


class TestCells:
    """Tests for cohomology and homology cells."""

    def test_center(self):
        assert cohomology_cell(0, 0).dimension == 1
        for w in range(1, 5):
            assert cohomology_cell(0, w).dimension == 0

    def test_first_cohomology_weight_zero(self):
        assert cohomology_cell(1, 0).dimension == 2
        assert cohomology_cell(1, 1).dimension == 0
        assert cohomology_cell(1, 2).dimension == 1

    def test_second_cohomology_lowest_weight(self):
        assert cohomology_cell(2, -2).dimension == 2
        assert named_classes(2, -2) == [t_class(0, 2), u_class(0, 2)]

    def test_odd_cohomology_lowest_weight(self):
        assert cohomology_cell(3, -4).dimension == 1
        assert named_classes(3, -4) == [v_class(0, 3)]
        assert named_classes(3, -2) == [v_class(1, 3), w_class(0, 3)]

    def test_empty_cell(self):
        matrix = cell_matrix(MapId.COCHAIN, 2, -9)
        assert matrix.shape == (0, 0)
        assert cohomology_cell(2, -9).dimension == 0

    def test_field_coefficients(self):
        assert cohomology_cell(1, -1, Coefficients.FIELD).dimension == 2
        assert cohomology_cell(3, -3, Coefficients.FIELD).dimension == 1
        assert cohomology_cell(3, -4, Coefficients.FIELD).dimension == 1
        assert all_pass(verify_field_cohomology(5))

    def test_named_bases(self):
        assert all_pass(verify_cohomology(4, 4))

    def test_homology(self):
        assert homology_cell(0, 0).dimension == 1
        assert homology_cell(0, 3).dimension == 2
        assert homology_cell(1, 2).dimension == 2
        assert all_pass(verify_homology(4, 6))

    def test_periodicity(self):
        assert all_pass(verify_periodicity(6, 3))


class TestNamedClasses:
    """Tests for class catalogues and reduction to the named basis."""

    def test_weights(self):
        assert s_class(3).weight == 6
        assert t_class(2, 4).weight == 0
        assert v_class(1, 5).weight == -4
        assert w_class(1, 5).weight == -2
        assert C_CLASS.weight == 0

    def test_reduce_basis_element(self):
        assert reduce_to_basis(2, cohomology_representative(t_class(0, 2))) == {t_class(0, 2): 1}

    def test_reduce_modulo_coboundary(self):
        boundary = hom_differential(1, Cochain.from_values(1, [word_element("xy"), word_element("yx")]))
        cocycle = cohomology_representative(t_class(1, 2)) + boundary
        assert reduce_to_basis(2, cocycle) == {t_class(1, 2): 1}

    def test_reduce_mixed_weights(self):
        cocycle = cohomology_representative(s_class(1)).scale(3) - cohomology_representative(C_CLASS)
        assert reduce_to_basis(1, cocycle) == {s_class(1): 3, C_CLASS: -1}

    def test_not_a_cocycle(self):
        with pytest.raises(NotACocycle):
            reduce_to_basis(1, Cochain.from_values(1, [word_element("y"), None]))

    def test_invalid_class(self):
        with pytest.raises(ParameterOutOfRange):
            cohomology_representative(t_class(0, 3))

    def test_render(self):
        coordinates = {t_class(2, 2): Fraction(4), v_class(1, 3): Fraction(-1, 2)}
        assert render_coordinates(coordinates) == "4*t_2^2 - 1/2*v_1^3"
        assert ONE_CLASS.render() == "1"
        assert ClassFamily("u") == ClassFamily.U

    def test_periodicity_relabel(self):
        relabelled = periodicity_relabel(cohomology_representative(u_class(1, 2)))
        assert relabelled == cohomology_representative(u_class(1, 4))
        with pytest.raises(ParameterOutOfRange):
            periodicity_relabel(cohomology_representative(s_class(0)))


class TestHomologyClasses:
    """Tests for the named homology classes."""

    def test_solved_partner_for_y(self):
        assert solved_cycle_partner(0) == word_element("x")

    def test_solved_family_is_cycle(self):
        for n in range(0, 4):
            chain = homology_representative(HomologyClass(HomologyFamily.ONE_SOLVED, n, 1))
            assert chain_differential(1, chain).is_zero()

    def test_degree_two_sum_needs_partner(self):
        leading = Chain.from_values(2, [None, factorial_sum(0)])
        assert not chain_differential(2, leading).is_zero()
        for n in range(4):
            chain = Chain.from_values(2, [two_cycle_partner(n), factorial_sum(n)])
            assert chain_differential(2, chain).is_zero()

    def test_representatives_are_cycles(self):
        for degree in range(1, 7):
            for weight in range(12):
                for name in named_homology_classes(degree, weight):
                    assert chain_differential(degree, homology_representative(name)).is_zero(), name.render()

    def test_degree_zero(self):
        assert named_homology_classes(0, 0) == [HomologyClass(HomologyFamily.UNIT_Y, 0, 0)]
        assert len(named_homology_classes(0, 4)) == 2

    def test_reduce_chain(self):
        name = HomologyClass(HomologyFamily.EVEN_PAIR, 1, 4)
        assert reduce_chain_to_basis(4, homology_representative(name).scale(2)) == {name: 2}


class TestLemmasAndOracle:
    """Tests for kernel/image lemmas and the bar complex oracle."""

    def test_lemmas(self):
        for lemma in LemmaId:
            assert all_pass(verify_kernel_image_bases(lemma, 8))

    def test_delta_kills_odd_family(self):
        matrix = cell_matrix(MapId.DELTA, 0, 3)
        column = matrix.col_labels.index(PBWMonomial(1, 1, 0))
        assert matrix.column(column) == {}

    def test_oracle_cohomology(self):
        assert bar_oracle_cohomology(0, 0) == 1
        assert bar_oracle_cohomology(1, 0) == 2
        assert all_pass(verify_oracle(2, 2))

    def test_oracle_field(self):
        assert all_pass(verify_oracle(3, 0, Coefficients.FIELD))

    def test_oracle_homology(self):
        assert bar_oracle_homology(0, 3) == 2
        assert bar_oracle_homology(1, 2) == homology_cell(1, 2).dimension
        assert all_pass(verify_homology_oracle(2, 3))

    def test_default_windows_fit_guard(self):
        for n in range(settings.ORACLE_MAX_HDEG + 1):
            for w in range(-(n + 1), settings.ORACLE_MAX_WEIGHT + 1):
                assert oracle_columns(n, w) <= settings.ORACLE_MAX_COLUMNS
        for n in range(settings.ORACLE_HOMOLOGY_MAX_HDEG + 1):
            for w in range(settings.ORACLE_HOMOLOGY_MAX_WEIGHT + 1):
                assert homology_oracle_columns(n, w) <= settings.ORACLE_MAX_COLUMNS

    def test_guard_before_computing(self):
        with patch.object(settings, "ORACLE_MAX_COLUMNS", 5):
            with patch("app.services.cohomology.bar_oracle_cohomology") as oracle:
                with pytest.raises(ResourceGuardExceeded):
                    verify_oracle(2, 2)
                oracle.assert_not_called()

    @pytest.mark.slow
    def test_default_window(self):
        results = verify_oracle(settings.ORACLE_MAX_HDEG, settings.ORACLE_MAX_WEIGHT)
        assert all_pass(results)
        assert all_pass(verify_homology_oracle(settings.ORACLE_HOMOLOGY_MAX_HDEG, settings.ORACLE_HOMOLOGY_MAX_WEIGHT))

    def test_resource_guard(self):
        with patch.object(settings, "ORACLE_MAX_COLUMNS", 5):
            with pytest.raises(ResourceGuardExceeded):
                bar_oracle_cohomology(2, 2)
