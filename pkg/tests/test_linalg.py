from fractions import Fraction

from app.services.linalg import (
    GradedMatrix,
    complement_in_kernel,
    nullspace,
    rank,
    solve,
    sparse_matrix,
)


class TestExactLinearAlgebra:
    """Tests for the DomainMatrix helpers."""

    def setup_method(self):
        """Setup for each test method."""
        # [[1, 2, 3], [2, 4, 6]]
        self.matrix = sparse_matrix(2, 3, {(0, 0): 1, (0, 1): 2, (0, 2): 3, (1, 0): 2, (1, 1): 4, (1, 2): 6})

    def test_rank(self):
        assert rank(self.matrix) == 1
        assert rank(sparse_matrix(0, 4, {})) == 0

    def test_nullspace(self):
        kernel = nullspace(self.matrix)
        assert len(kernel) == 2
        for vector in kernel:
            assert vector[0] + 2 * vector[1] + 3 * vector[2] == 0

    def test_solve_consistent(self):
        solution = solve(self.matrix, [Fraction(2), Fraction(4)])
        assert solution is not None
        assert solution[0] + 2 * solution[1] + 3 * solution[2] == 2

    def test_solve_inconsistent(self):
        assert solve(self.matrix, [Fraction(1), Fraction(1)]) is None

    def test_solve_rational(self):
        matrix = sparse_matrix(2, 2, {(0, 0): 3, (1, 1): 2})
        assert solve(matrix, [Fraction(1), Fraction(1)]) == [Fraction(1, 3), Fraction(1, 2)]


class TestGradedMatrix:
    """Tests for labelled matrices."""

    def test_compose_and_apply(self):
        first = GradedMatrix(["a", "b"], ["u"], {(0, 0): Fraction(1), (1, 0): Fraction(2)})
        second = GradedMatrix(["z"], ["a", "b"], {(0, 0): Fraction(1), (0, 1): Fraction(-1)})
        composite = second.compose(first)
        assert composite.apply([Fraction(1)]) == [Fraction(-1)]
        assert not composite.is_zero()

    def test_complement_in_kernel(self):
        # kernel spanned by e0, e1; image spanned by e0
        kernel = [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]]
        chosen = complement_in_kernel(kernel, [{0: Fraction(1)}], 2)
        assert chosen == [[Fraction(0), Fraction(1)]]
