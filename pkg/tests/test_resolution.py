import pytest
from itertools import product

from app.core.exceptions import InvalidBicomplexPosition, ParameterOutOfRange, PatternUnsupported
from app.services.algebra import ONE, AlgebraElement, PBWMonomial, monomial_from_word
from app.services.resolution import (
    UNIT_TAG,
    X_TAG,
    Y_TAG,
    BarElement,
    BicomplexMap,
    BimoduleElement,
    GeneratorKind,
    apply_f,
    bar_differential,
    bicomplex_map,
    comparison_f,
    comparison_g,
    differential,
    generators,
    generators_in_degree,
    supports_comparison_g,
    total_differential,
    verify_resolution,
    x_power,
    y_square_x_power,
)

FACTORS = [monomial_from_word(w) for w in ("x", "y", "yx", "yy", "xyy", "xyx")]


class TestMinimalResolution:
    """Tests for the differentials of the minimal resolution."""

    def test_generator_degrees(self):
        assert [g.internal_degree for g in generators(0)] == [1, 1]
        assert [g.internal_degree for g in generators(3)] == [4, 5]
        assert generators(-1) == [UNIT_TAG]
        assert generators_in_degree(2) == [x_power(1), y_square_x_power(1)]
        with pytest.raises(ParameterOutOfRange):
            generators(-2)

    def test_d0(self):
        expected = BimoduleElement.from_parts(-1, [(1, "x", UNIT_TAG, ""), (-1, "", UNIT_TAG, "x")])
        assert differential(0, BimoduleElement.generator(X_TAG)) == expected

    def test_d1_on_x_squared(self):
        expected = BimoduleElement.from_parts(0, [(1, "x", X_TAG, ""), (1, "", X_TAG, "x")])
        assert differential(1, BimoduleElement.generator(x_power(1))) == expected

    def test_d3_on_x_fourth(self):
        tag = x_power(3)
        expected = BimoduleElement.from_parts(2, [(1, "x", x_power(2), ""), (1, "", x_power(2), "x")])
        assert differential(3, BimoduleElement.generator(tag)) == expected

    def test_complex_property(self):
        for n in range(1, 9):
            for tag in generators(n):
                image = differential(n, BimoduleElement.generator(tag))
                assert differential(n - 1, image).is_zero()

    def test_complex_property_with_coefficients(self):
        left = AlgebraElement.from_word("yxy")
        right = AlgebraElement.from_word("yy")
        element = BimoduleElement.generator(y_square_x_power(2)).act(left, right)
        assert differential(1, differential(2, element)).is_zero()

    def test_minimality(self):
        for n in range(0, 9):
            for tag in generators(n):
                for (left, _, right), _ in differential(n, BimoduleElement.generator(tag)).items():
                    assert left.degree + right.degree >= 1

    def test_weight_preserved(self):
        for n in range(0, 6):
            for tag in generators(n):
                assert differential(n, BimoduleElement.generator(tag)).weights() == [tag.internal_degree]

    def test_wrong_index(self):
        with pytest.raises(ParameterOutOfRange):
            differential(2, BimoduleElement.generator(X_TAG))
        with pytest.raises(ParameterOutOfRange):
            differential(-1, BimoduleElement.generator(UNIT_TAG))


class TestBicomplex:
    """Tests for the bicomplex decomposition of the differential."""

    def test_reassembly(self):
        for n in range(2, 9):
            for tag in generators(n):
                element = BimoduleElement.generator(tag)
                assert total_differential(n, element) == differential(n, element)

    def test_d_component(self):
        result = bicomplex_map(BicomplexMap.D, 2, BimoduleElement.generator(y_square_x_power(2)))
        expected = BimoduleElement.from_parts(1, [
            (1, "yy", x_power(1), ""),
            (-1, "xy", x_power(1), ""),
            (-1, "", x_power(1), "yy"),
            (-1, "", x_power(1), "yx"),
        ])
        assert result == expected

    def test_anticommuting_squares_even(self):
        for n in (4, 6):
            y = BimoduleElement.generator(y_square_x_power(n))
            d_then_delta = bicomplex_map(BicomplexMap.DELTA, n - 1, bicomplex_map(BicomplexMap.D, n, y))
            delta_then_d = bicomplex_map(BicomplexMap.D, n - 1, bicomplex_map(BicomplexMap.DELTA_PRIME, n, y))
            assert (d_then_delta + delta_then_d).is_zero()
            twice = bicomplex_map(BicomplexMap.PARTIAL_PRIME, n - 1, bicomplex_map(BicomplexMap.DELTA_PRIME, n, y))
            assert twice.is_zero()

    def test_anticommuting_squares_odd(self):
        for n in (3, 5, 7):
            y = BimoduleElement.generator(y_square_x_power(n))
            first = bicomplex_map(BicomplexMap.PARTIAL, n - 1, bicomplex_map(BicomplexMap.D, n, y))
            second = bicomplex_map(BicomplexMap.D, n - 1, bicomplex_map(BicomplexMap.PARTIAL_PRIME, n, y))
            assert (first + second).is_zero()
            twice = bicomplex_map(BicomplexMap.DELTA_PRIME, n - 1, bicomplex_map(BicomplexMap.PARTIAL_PRIME, n, y))
            assert twice.is_zero()

    def test_x_column(self):
        for n in (2, 4):
            x = BimoduleElement.generator(x_power(n))
            assert bicomplex_map(BicomplexMap.DELTA, n - 1, bicomplex_map(BicomplexMap.PARTIAL, n, x)).is_zero()
        for n in (3, 5):
            x = BimoduleElement.generator(x_power(n))
            assert bicomplex_map(BicomplexMap.PARTIAL, n - 1, bicomplex_map(BicomplexMap.DELTA, n, x)).is_zero()

    def test_invalid_positions(self):
        with pytest.raises(InvalidBicomplexPosition):
            bicomplex_map(BicomplexMap.PARTIAL_PRIME, 2, BimoduleElement.generator(y_square_x_power(2)))
        with pytest.raises(InvalidBicomplexPosition):
            bicomplex_map(BicomplexMap.DELTA, 2, BimoduleElement.generator(x_power(2)))
        with pytest.raises(InvalidBicomplexPosition):
            bicomplex_map(BicomplexMap.D, 3, BimoduleElement.generator(x_power(3)))


class TestBarResolution:
    """Tests for the normalized bar resolution."""

    def test_b1(self):
        x = monomial_from_word("x")
        expected = BarElement(0, {(x, (), ONE): 1, (ONE, (), x): -1})
        assert bar_differential(1, BarElement.from_words(["x"])) == expected

    def test_b2_with_vanishing_product(self):
        x = monomial_from_word("x")
        expected = BarElement(1, {(x, (x,), ONE): 1, (ONE, (x,), x): 1})
        assert bar_differential(2, BarElement.from_words(["x", "x"])) == expected

    def test_square_zero(self):
        for length in (2, 3, 4):
            for words in product(["x", "y", "yx", "xy"], repeat=length):
                element = BarElement.from_words(list(words))
                assert bar_differential(length - 1, bar_differential(length, element)).is_zero()

    def test_degree_zero_factor_dropped(self):
        assert BarElement.pure([ONE, monomial_from_word("x")]).is_zero()


class TestComparisonMorphisms:
    """Tests for the comparison maps f and g."""

    def test_f2_on_y_squared_x(self):
        expected = (
            BarElement.pure([monomial_from_word("y"), monomial_from_word("x")], 1, monomial_from_word("y"))
            + BarElement.from_words(["y", "yx"])
            - BarElement.pure([monomial_from_word("y"), monomial_from_word("y")], 1, monomial_from_word("x"))
            - BarElement.from_words(["x", "yy"])
            - BarElement.pure([monomial_from_word("y"), monomial_from_word("x")], 1, monomial_from_word("x"))
            - BarElement.from_words(["x", "yx"])
        )
        assert comparison_f(2, y_square_x_power(1)) == expected

    def test_f_on_x_powers(self):
        assert comparison_f(4, x_power(3)) == BarElement.from_words(["x"] * 4)
        assert comparison_f(0, UNIT_TAG) == BarElement.pure(())

    def test_f_is_chain_map(self):
        for m in range(1, 7):
            for tag in generators_in_degree(m):
                lhs = bar_differential(m, comparison_f(m, tag))
                rhs = apply_f(differential(m - 1, BimoduleElement.generator(tag)))
                assert lhs == rhs

    def test_g1(self):
        expected = BimoduleElement.from_parts(0, [(1, "", Y_TAG, "x"), (1, "y", X_TAG, "")])
        assert comparison_g(1, BarElement.from_words(["yx"])) == expected

    def test_g_patterns(self):
        assert comparison_g(3, BarElement.from_words(["y", "x", "x"])).is_zero()
        result = comparison_g(3, BarElement.from_words(["y", "yx", "x"]))
        assert result == BimoduleElement.generator(y_square_x_power(2))
        result = comparison_g(2, BarElement.from_words(["yy", "x"]))
        assert result == BimoduleElement.generator(y_square_x_power(1))

    def test_g_unsupported(self):
        with pytest.raises(PatternUnsupported):
            comparison_g(2, BarElement.from_words(["x", "y"]))
        assert not supports_comparison_g([monomial_from_word("yyy"), monomial_from_word("x")])

    def test_g_is_chain_map_on_its_domain(self):
        checked = 0
        for length in (1, 2, 3, 4):
            for middle in product(FACTORS, repeat=length):
                if not supports_comparison_g(middle):
                    continue
                element = BarElement.pure(middle)
                try:
                    rhs = comparison_g(length - 1, bar_differential(length, element))
                except PatternUnsupported:
                    continue
                lhs = differential(length - 1, comparison_g(length, element))
                assert lhs == rhs
                checked += 1
        assert checked > 50

    def test_g_after_f_is_identity(self):
        for m in range(1, 6):
            for tag in generators_in_degree(m):
                assert comparison_g(m, comparison_f(m, tag)) == BimoduleElement.generator(tag)

    def test_kind_labels(self):
        assert y_square_x_power(3).kind == GeneratorKind.Y2X
        assert y_square_x_power(1).render() == "y^2x"
        assert x_power(2).render() == "x^3"


class TestVerification:
    """Tests for the resolution verification driver."""

    def test_small_window_passes(self):
        results = verify_resolution(max_index=4, f_degree=3, g_length=3)
        assert [r for r in results if r.failed] == []
        assert any(r.name == "resolution.g-domain" for r in results)

    def test_g_chain_map_to_length_five(self):
        results = verify_resolution(max_index=2, f_degree=1)
        assert [r for r in results if r.failed] == []
        domain = [r for r in results if r.name == "resolution.g-domain"]
        assert domain[0].indices == {"max_length": 5}
        g_checks = [r for r in results if r.name == "resolution.g-chain-map"]
        assert {r.indices["length"] for r in g_checks if r.passed} == {2, 3, 4, 5}
        assert all(r.passed or r.status == "SKIP" for r in g_checks)
        checked = len([r for r in g_checks if r.passed])
        skipped = len(g_checks) - checked
        assert domain[0].detail == f"{checked} bar terms checked, {skipped} skipped"
