import pytest
from fractions import Fraction

from app.core.exceptions import ParameterOutOfRange
from app.services.algebra import (
    ONE,
    X,
    Y,
    YX,
    AlgebraElement,
    CommutationKind,
    GroupPower,
    PBWMonomial,
    RewriteStrategy,
    apply_group_action,
    commutation_closed_form,
    commutation_word,
    factorial_sum,
    graded_basis,
    local_confluence_failures,
    monomial_from_word,
    multiply,
    multiply_monomials,
    normal_form,
    quotient_dimension_bruteforce,
    verify_rewriting,
)


class TestNormalForm:
    """Tests for rewriting to PBW normal form."""

    def setup_method(self):
        """Setup for each test method."""
        self.x = AlgebraElement.monomial(X)
        self.y = AlgebraElement.monomial(Y)

    def test_defining_relations(self):
        assert normal_form("xx").is_zero()
        assert normal_form("yyx") == AlgebraElement({PBWMonomial(1, 0, 2): 1, PBWMonomial(1, 1, 0): 1})

    def test_y_cubed_x(self):
        expected = AlgebraElement({PBWMonomial(0, 2, 0): 1, PBWMonomial(0, 1, 2): 1})
        assert normal_form("yyyx") == expected

    def test_y_squared_x_squared_vanishes(self):
        assert normal_form("yyxx").is_zero()

    def test_strategies_agree(self):
        for word in ["yyyyx", "yyxyyx", "yyyxyx", "xyyyyx", "yyyyyxyx"]:
            left = normal_form(word, RewriteStrategy.LEFTMOST)
            right = normal_form(word, RewriteStrategy.RIGHTMOST)
            assert left == right

    def test_letterwise_matches_rewriting(self):
        for length in range(9):
            for index in range(2 ** length):
                word = "".join("y" if index >> i & 1 else "x" for i in range(length))
                assert normal_form(word) == normal_form(word, RewriteStrategy.LEFTMOST)

    def test_long_words(self):
        assert normal_form("y" * 60 + "x") == commutation_closed_form(CommutationKind.EQ1, 30)
        assert normal_form("y" * 41 + "yx" * 3) == commutation_closed_form(CommutationKind.EQ4, 20, 3)

    def test_products_match_rewriting(self):
        for left in graded_basis(3) + graded_basis(4):
            for right in graded_basis(3) + graded_basis(2):
                computed = AlgebraElement(dict(multiply_monomials(left, right)))
                assert computed == normal_form(left.word + right.word, RewriteStrategy.RIGHTMOST)

    def test_irreducible_words_are_fixed(self):
        for monomial in graded_basis(6):
            assert normal_form(monomial.word) == AlgebraElement.monomial(monomial)

    def test_linear_combination(self):
        result = normal_form({"yyx": 1, "xyy": -1})
        assert result == AlgebraElement.monomial(PBWMonomial(1, 1, 0))

    def test_rejects_foreign_letters(self):
        with pytest.raises(ParameterOutOfRange):
            normal_form("xz")

    def test_monomial_from_word_rejects_redex(self):
        with pytest.raises(ValueError):
            monomial_from_word("yyx")
        assert monomial_from_word("xyxyy") == PBWMonomial(1, 1, 2)

    def test_local_confluence(self):
        assert local_confluence_failures(10) == []

    def test_multiplication_is_associative(self):
        basis = graded_basis(2) + graded_basis(1)
        for u in basis:
            for v in basis:
                for w in basis:
                    a = AlgebraElement.monomial(u)
                    b = AlgebraElement.monomial(v)
                    c = AlgebraElement.monomial(w)
                    assert multiply(multiply(a, b), c) == multiply(a, multiply(b, c))

    def test_relations_hold_in_products(self):
        assert (self.x * self.x).is_zero()
        relation = self.y * self.y * self.x - self.x * self.y * self.y - self.x * self.y * self.x
        assert relation.is_zero()


class TestGrading:
    """Tests for the graded basis and Hilbert series."""

    def test_basis_sizes(self):
        assert graded_basis(0) == [ONE]
        for degree in range(1, 9):
            assert len(graded_basis(degree)) == degree + 1

    def test_basis_order(self):
        assert [m.word for m in graded_basis(2)] == ["yy", "yx", "xy"]

    def test_bruteforce_dimension_matches_basis(self):
        for degree in range(0, 7):
            assert quotient_dimension_bruteforce(degree) == len(graded_basis(degree))

    def test_negative_degree(self):
        assert graded_basis(-1) == []


class TestCommutationClosedForms:
    """Tests for the four commutation formulas."""

    def test_against_rewriting(self):
        for n in range(0, 5):
            for kind in (CommutationKind.EQ1, CommutationKind.EQ2):
                assert commutation_closed_form(kind, n) == normal_form(commutation_word(kind, n), RewriteStrategy.LEFTMOST)
            for b in range(1, 4):
                for kind in (CommutationKind.EQ3, CommutationKind.EQ4):
                    assert commutation_closed_form(kind, n, b) == normal_form(commutation_word(kind, n, b), RewriteStrategy.LEFTMOST)

    def test_small_case(self):
        result = commutation_closed_form(CommutationKind.EQ3, 1, 1)
        assert result == AlgebraElement({PBWMonomial(0, 2, 0): 1, PBWMonomial(0, 1, 2): 1})

    def test_parameter_guards(self):
        with pytest.raises(ParameterOutOfRange):
            commutation_closed_form(CommutationKind.EQ3, 1, 0)
        with pytest.raises(ParameterOutOfRange):
            commutation_closed_form(CommutationKind.EQ1, -1)

    def test_factorial_sum(self):
        value = factorial_sum(2)
        assert value.coefficient(PBWMonomial(0, 2, 0)) == 2
        assert value.coefficient(PBWMonomial(0, 1, 2)) == 2
        assert value.coefficient(PBWMonomial(0, 0, 4)) == 1


class TestGroupAction:
    """Tests for the action of t."""

    def setup_method(self):
        """Setup for each test method."""
        self.t = GroupPower(1)
        self.t_inv = GroupPower(-1)

    def test_generators(self):
        y = AlgebraElement.monomial(Y)
        assert apply_group_action(self.t, y) == AlgebraElement({Y: -1, X: 1})
        assert apply_group_action(self.t_inv, y) == AlgebraElement({Y: -1, X: -1})

    def test_inverse(self):
        for degree in range(0, 5):
            for monomial in graded_basis(degree):
                v = AlgebraElement.monomial(monomial)
                assert apply_group_action(self.t_inv, apply_group_action(self.t, v)) == v

    def test_multiplicative(self):
        for u in graded_basis(2):
            for v in graded_basis(2):
                a = AlgebraElement.monomial(u)
                b = AlgebraElement.monomial(v)
                lhs = apply_group_action(self.t, a * b)
                rhs = apply_group_action(self.t, a) * apply_group_action(self.t, b)
                assert lhs == rhs

    def test_powers_compose(self):
        v = AlgebraElement.monomial(YX) + AlgebraElement.monomial(Y, 3)
        twice = apply_group_action(GroupPower(2), v)
        assert twice == apply_group_action(self.t, apply_group_action(self.t, v))


class TestRendering:
    """Tests for human readable output."""

    def test_render(self):
        assert AlgebraElement({PBWMonomial(1, 2, 0): 2}).render() == "2x(yx)^2"
        assert AlgebraElement().render() == "0"
        element = AlgebraElement({ONE: Fraction(1, 2), PBWMonomial(0, 0, 3): -1})
        assert element.render() == "1/2 - y^3"


class TestVerification:
    """Tests for the rewriting verification driver."""

    def test_small_window_passes(self):
        results = verify_rewriting(max_n=3, max_b=2, max_degree=10, brute_degree=4, confluence_length=5)
        assert [r for r in results if not r.passed] == []
        assert len([r for r in results if r.name == "rewriting.hilbert"]) == 11

    def test_default_confluence_window(self):
        results = verify_rewriting(max_n=1, max_b=1, max_degree=2, brute_degree=2, product_degree=3)
        confluence = [r for r in results if r.name == "rewriting.confluence"]
        assert [r.indices["max_length"] for r in confluence] == [10]
        assert [r for r in results if not r.passed] == []
        assert {r.indices["strategy"] for r in results if r.name == "rewriting.strategies"} == {"rightmost", "letterwise"}

    def test_results_sorted(self):
        results = verify_rewriting(max_n=1, max_b=1, max_degree=2, brute_degree=2, confluence_length=3)
        names = [r.name for r in results]
        assert names == sorted(names)
