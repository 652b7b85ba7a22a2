import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Generic, Hashable, List, Optional, Sequence, Tuple, TypeVar

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

# Configure logging
logger = logging.getLogger(__name__)

Entries = Dict[Tuple[int, int], Fraction]
Vector = List[Fraction]
Label = TypeVar("Label", bound=Hashable)


def to_qq(value) -> "QQ":
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def from_qq(value) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


def sparse_matrix(n_rows: int, n_cols: int, entries: Entries) -> DomainMatrix:
    """Build an exact rational DomainMatrix from a {(row, col): value} mapping."""
    rows: Dict[int, Dict[int, object]] = {}
    for (i, j), value in entries.items():
        if value:
            rows.setdefault(i, {})[j] = to_qq(value)
    return DomainMatrix(rows, (n_rows, n_cols), QQ)


def _is_empty(matrix: DomainMatrix) -> bool:
    n_rows, n_cols = matrix.shape
    return n_rows == 0 or n_cols == 0


def rank(matrix: DomainMatrix) -> int:
    if _is_empty(matrix):
        return 0
    return int(matrix.rank())


def rref(matrix: DomainMatrix) -> Tuple[Dict[int, Dict[int, Fraction]], Tuple[int, ...]]:
    """
    Reduced row echelon form.

    Returns:
        (rows as {row: {col: value}}, pivot columns)
    """
    if _is_empty(matrix):
        return {}, ()
    reduced, pivots = matrix.rref()
    rows = {i: {j: from_qq(v) for j, v in row.items()} for i, row in reduced.to_dod().items()}
    return rows, tuple(pivots)


def nullspace(matrix: DomainMatrix) -> List[Vector]:
    """A basis of the kernel, one vector per free column (free variable set to 1)."""
    n_rows, n_cols = matrix.shape
    if n_cols == 0:
        return []
    rows, pivots = rref(matrix)
    pivot_set = set(pivots)
    basis = []
    for free in range(n_cols):
        if free in pivot_set:
            continue
        vector = [Fraction(0)] * n_cols
        vector[free] = Fraction(1)
        for row_index, pivot in enumerate(pivots):
            value = rows.get(row_index, {}).get(free)
            if value:
                vector[pivot] = -value
        basis.append(vector)
    return basis


def solve(matrix: DomainMatrix, rhs: Sequence[Fraction]) -> Optional[Vector]:
    """
    Particular solution of matrix * v = rhs with free variables set to zero.

    Returns:
        The solution vector, or None when the system is inconsistent
    """
    n_rows, n_cols = matrix.shape
    if n_rows == 0:
        return [Fraction(0)] * n_cols
    augmented: Entries = {}
    for i, row in matrix.to_dod().items():
        for j, value in row.items():
            augmented[(i, j)] = from_qq(value)
    for i, value in enumerate(rhs):
        if value:
            augmented[(i, n_cols)] = Fraction(value)
    rows, pivots = rref(sparse_matrix(n_rows, n_cols + 1, augmented))
    if n_cols in pivots:
        return None
    solution = [Fraction(0)] * n_cols
    for row_index, pivot in enumerate(pivots):
        solution[pivot] = rows.get(row_index, {}).get(n_cols, Fraction(0))
    return solution


def matrix_from_columns(columns: Sequence[Dict[int, Fraction]], n_rows: int) -> DomainMatrix:
    entries: Entries = {}
    for j, column in enumerate(columns):
        for i, value in column.items():
            if value:
                entries[(i, j)] = Fraction(value)
    return sparse_matrix(n_rows, len(columns), entries)


def span_rank(vectors: Sequence[Dict[int, Fraction]], dimension: int) -> int:
    return rank(matrix_from_columns(vectors, dimension))


@dataclass
class GradedMatrix(Generic[Label]):
    """
    A matrix between two finite labelled bases; column j is the image of col_labels[j].
    """
    row_labels: List[Label]
    col_labels: List[Label]
    entries: Entries = field(default_factory=dict)

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.row_labels), len(self.col_labels)

    def to_domain_matrix(self) -> DomainMatrix:
        return sparse_matrix(len(self.row_labels), len(self.col_labels), self.entries)

    def rank(self) -> int:
        return rank(self.to_domain_matrix())

    def nullspace(self) -> List[Vector]:
        return nullspace(self.to_domain_matrix())

    def is_zero(self) -> bool:
        return not any(self.entries.values())

    def column(self, j: int) -> Dict[int, Fraction]:
        return {i: v for (i, jj), v in self.entries.items() if jj == j and v}

    def columns(self) -> List[Dict[int, Fraction]]:
        result: List[Dict[int, Fraction]] = [dict() for _ in self.col_labels]
        for (i, j), value in self.entries.items():
            if value:
                result[j][i] = value
        return result

    def solve(self, rhs: Sequence[Fraction]) -> Optional[Vector]:
        return solve(self.to_domain_matrix(), rhs)

    def apply(self, vector: Sequence[Fraction]) -> Vector:
        result = [Fraction(0)] * len(self.row_labels)
        for (i, j), value in self.entries.items():
            if vector[j]:
                result[i] += value * vector[j]
        return result

    def compose(self, other: "GradedMatrix") -> "GradedMatrix":
        """self after other; other's row labels must equal self's column labels."""
        entries: Entries = {}
        left = self.columns()
        for (k, j), value in other.entries.items():
            for i, inner in left[k].items():
                entries[(i, j)] = entries.get((i, j), Fraction(0)) + inner * value
        return GradedMatrix(self.row_labels, other.col_labels, {key: v for key, v in entries.items() if v})

    def to_json(self) -> Dict[str, object]:
        return {
            "rows": [str(label) for label in self.row_labels],
            "cols": [str(label) for label in self.col_labels],
            "entries": [[i, j, str(v)] for (i, j), v in sorted(self.entries.items()) if v],
        }


def complement_in_kernel(
    kernel: Sequence[Vector], image_columns: Sequence[Dict[int, Fraction]], dimension: int
) -> List[Vector]:
    """
    Greedily pick kernel vectors that stay independent modulo the image.

    Returns:
        Vectors whose classes form a basis of kernel / image
    """
    chosen_columns: List[Dict[int, Fraction]] = list(image_columns)
    current = span_rank(chosen_columns, dimension)
    chosen: List[Vector] = []
    for vector in kernel:
        candidate = {i: v for i, v in enumerate(vector) if v}
        new_rank = span_rank(chosen_columns + [candidate], dimension)
        if new_rank > current:
            chosen_columns.append(candidate)
            chosen.append(vector)
            current = new_rank
    return chosen
