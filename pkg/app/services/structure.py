"""
Multiplicative and Lie structure of HH^*(A, A): cup products computed through the comparison
maps, derivations of A and their liftings to the minimal resolution, the Gerstenhaber action of
HH^1 on every HH^n, and the Virasoro / intermediate series descriptions of that action.
"""

import logging
import threading
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Dict, List, Mapping, NamedTuple, Optional, Tuple, Union

from app.core.exceptions import (
    BasisMismatch,
    FitImpossible,
    NoSolution,
    NotACocycle,
    ParameterOutOfRange,
    PatternUnsupported,
)
from app.services.algebra import (
    ONE,
    AlgebraElement,
    Coefficient,
    PBWMonomial,
    format_coefficient,
    graded_basis,
    word_element,
)
from app.services.checks import CheckResult, run_parallel
from app.services.cohomology import (
    C_CLASS,
    ONE_CLASS,
    ClassCoordinates,
    ClassFamily,
    Cochain,
    Coefficients,
    CohomologyClass,
    coordinates_to_json,
    cohomology_representative,
    named_classes,
    reduce_to_basis,
    relabel_class,
    render_coordinates,
    s_class,
    t_class,
    u_class,
    v_class,
    w_class,
)
from app.services.linalg import GradedMatrix
from app.services.resolution import (
    BarElement,
    BimoduleElement,
    GeneratorKind,
    GeneratorTag,
    comparison_f,
    comparison_g,
    differential,
    differential_on_generator,
    generators,
    generators_in_degree,
    x_power,
    y_square_x_power,
)

# Configure logging
logger = logging.getLogger(__name__)

# Brackets [s_m, -] on degrees >= 2 are lifted directly up to this m; larger m go through Jacobi
DIRECT_LIFT_MAX_M = 2


def _add_into(target: Dict, source: Mapping, factor: Coefficient = 1) -> Dict:
    factor = Fraction(factor)
    for key, value in source.items():
        total = target.get(key, Fraction(0)) + value * factor
        if total:
            target[key] = total
        else:
            target.pop(key, None)
    return target


def _sorted_coordinates(coordinates: Mapping[CohomologyClass, Fraction]) -> Tuple[Tuple[CohomologyClass, Fraction], ...]:
    return tuple(sorted(
        ((name, value) for name, value in coordinates.items() if value),
        key=lambda item: (item[0].family.value, item[0].degree, item[0].n),
    ))


# Derivations


@dataclass(frozen=True)
class Derivation:
    """A derivation of A, determined by its values on x and y and extended by Leibniz."""
    value_on_x: AlgebraElement
    value_on_y: AlgebraElement
    name: str = field(default="", compare=False)

    @classmethod
    def from_cochain(cls, cochain: Cochain, name: str = "") -> "Derivation":
        if cochain.degree != 1 or cochain.coefficients != Coefficients.ALGEBRA:
            raise ParameterOutOfRange("A derivation is an A-valued cochain of degree 1")
        value_on_x, value_on_y = cochain.pair()
        return cls(value_on_x, value_on_y, name)

    @classmethod
    def from_class(cls, name: CohomologyClass) -> "Derivation":
        name = CohomologyClass(*name)
        if name.degree != 1:
            raise ParameterOutOfRange(f"{name} is not a class of HH^1")
        return cls.from_cochain(cohomology_representative(name), name.render())

    def value(self, letter: str) -> AlgebraElement:
        if letter == "x":
            return self.value_on_x
        if letter == "y":
            return self.value_on_y
        raise ParameterOutOfRange(f"Unknown generator {letter!r}")

    @property
    def weight(self) -> int:
        """Degree shift of a homogeneous derivation (0 for the zero derivation)."""
        weights = {d - 1 for d in self.value_on_x.degrees()} | {d - 1 for d in self.value_on_y.degrees()}
        if len(weights) > 1:
            raise ParameterOutOfRange(f"Derivation {self.render()} is not homogeneous")
        return weights.pop() if weights else 0

    def apply_to_word(self, word: str) -> AlgebraElement:
        """Leibniz rule letter by letter on a free word, then normal form."""
        result = AlgebraElement()
        for i, letter in enumerate(word):
            value = self.value(letter)
            if value.is_zero():
                continue
            result = result + word_element(word[:i]) * value * word_element(word[i + 1:])
        return result

    def apply(self, element: AlgebraElement) -> AlgebraElement:
        result = AlgebraElement()
        for monomial, coefficient in element.items():
            result = result + _derivation_on_monomial(self, monomial).scale(coefficient)
        return result

    def is_well_defined(self) -> bool:
        """Both defining relations x^2 and y^2x - xy^2 - xyx must map to zero."""
        if not self.apply_to_word("xx").is_zero():
            return False
        cubic = self.apply_to_word("yyx") - self.apply_to_word("xyy") - self.apply_to_word("xyx")
        return cubic.is_zero()

    def commutator(self, other: "Derivation") -> "Derivation":
        """self o other - other o self."""
        name = f"[{self.name},{other.name}]" if self.name and other.name else ""
        return Derivation(
            self.apply(other.value_on_x) - other.apply(self.value_on_x),
            self.apply(other.value_on_y) - other.apply(self.value_on_y),
            name,
        )

    def to_cochain(self) -> Cochain:
        return Cochain.from_values(1, [self.value_on_x, self.value_on_y])

    def render(self) -> str:
        return self.name or f"(x -> {self.value_on_x.render()}, y -> {self.value_on_y.render()})"


@lru_cache(maxsize=None)
def _derivation_on_monomial(derivation: Derivation, monomial: PBWMonomial) -> AlgebraElement:
    return derivation.apply_to_word(monomial.word)


C_DERIVATION = Derivation.from_class(C_CLASS)


def s_derivation(m: int) -> Derivation:
    return Derivation.from_class(s_class(m))


def euler_defect(max_degree: int) -> int:
    """Number of PBW monomials of degree <= max_degree on which s_0 is not multiplication by the degree."""
    s0 = s_derivation(0)
    failures = 0
    for d in range(max_degree + 1):
        for monomial in graded_basis(d):
            element = AlgebraElement.monomial(monomial)
            if s0.apply(element) != element.scale(d):
                failures += 1
    return failures


def bracket_h1(left: Derivation, right: Derivation) -> ClassCoordinates:
    """The commutator of two derivations, reduced to named coordinates of HH^1."""
    return reduce_to_basis(1, left.commutator(right).to_cochain())


# Liftings to the minimal resolution


class LiftingMap:
    """
    A lifting of a derivation D to the minimal resolution.

    Level 0 is D (x) 1 + 1 (x) D on A (x) A; level h >= 1 stores the image of 1 (x) g (x) 1 for
    the generators g of homological degree h. Values are extended as D^e-operators.
    """

    def __init__(
        self,
        base: Derivation,
        values: Optional[Mapping[GeneratorTag, BimoduleElement]] = None,
        source: str = "solver",
    ):
        self.base = base
        self.source = source
        self._values: Dict[GeneratorTag, BimoduleElement] = dict(values or {})
        self._lock = threading.Lock()

    @property
    def max_degree(self) -> int:
        h = 0
        while all(tag in self._values for tag in generators_in_degree(h + 1)):
            h += 1
        return h

    def value(self, tag: GeneratorTag) -> BimoduleElement:
        if tag.kind == GeneratorKind.UNIT:
            return BimoduleElement.zero(-1)
        if tag not in self._values:
            raise ParameterOutOfRange(f"Lifting of {self.base.render()} not available on {tag}")
        return self._values[tag]

    def apply(self, element: BimoduleElement) -> BimoduleElement:
        """L(l (x) g (x) r) = D(l) (x) g (x) r + l L(g) r + l (x) g (x) D(r)."""
        result = BimoduleElement.zero(element.index)
        for (left, tag, right), coefficient in element.items():
            l = AlgebraElement.monomial(left)
            r = AlgebraElement.monomial(right)
            generator = BimoduleElement.generator(tag)
            part = generator.act(self.base.apply(l), r) + generator.act(l, self.base.apply(r))
            if tag.kind != GeneratorKind.UNIT:
                part = part + self.value(tag).act(l, r)
            result = result + part.scale(coefficient)
        return result

    def square_defect(self, tag: GeneratorTag) -> BimoduleElement:
        """d(L(g)) - L(d(g)); zero exactly when the square at g commutes."""
        return differential(tag.index, self.value(tag)) - self.apply(differential_on_generator(tag))

    def extend(self, max_degree: int) -> "LiftingMap":
        with self._lock:
            for h in range(self.max_degree + 1, max_degree + 1):
                for tag in generators_in_degree(h):
                    self._values[tag] = _solve_lifting_value(self, tag)
                logger.debug(f"Lifted {self.base.render()} to homological degree {h}")
        return self

    def to_json(self) -> Dict[str, str]:
        return {f"{tag.homological_degree}:{tag.render()}": value.render() for tag, value in sorted(
            self._values.items(), key=lambda item: (item[0].index, item[0].kind.value)
        )}


BimoduleLabel = Tuple[PBWMonomial, GeneratorTag, PBWMonomial]


def bimodule_cell_basis(index: int, weight: int) -> List[BimoduleLabel]:
    """Monomial basis l (x) g (x) r of P_index in a fixed total weight."""
    labels = []
    for tag in generators(index):
        free = weight - tag.internal_degree
        for a in range(free + 1):
            for left in graded_basis(a):
                labels.extend((left, tag, right) for right in graded_basis(free - a))
    return labels


@lru_cache(maxsize=None)
def differential_cell(index: int, weight: int) -> GradedMatrix:
    """d_index restricted to the weight-`weight` part of P_index."""
    source = bimodule_cell_basis(index, weight)
    target = bimodule_cell_basis(index - 1, weight)
    position = {label: i for i, label in enumerate(target)}
    entries: Dict[Tuple[int, int], Fraction] = {}
    for j, label in enumerate(source):
        for key, value in differential(index, BimoduleElement(index, {label: 1})).items():
            entries[(position[key], j)] = value
    return GradedMatrix(target, source, entries)


def _solve_lifting_value(lifting: LiftingMap, tag: GeneratorTag) -> BimoduleElement:
    index = tag.index
    rhs = lifting.apply(differential_on_generator(tag))
    weight = tag.internal_degree + lifting.base.weight
    if rhs.is_zero():
        return BimoduleElement.zero(index)
    if rhs.weights() != [weight]:
        raise NoSolution(f"Right-hand side for {tag} is not homogeneous of weight {weight}")
    matrix = differential_cell(index, weight)
    vector = [rhs.coefficient(*label) for label in matrix.row_labels]
    solution = matrix.solve(vector)
    if solution is None:
        raise NoSolution(f"No lifting of {lifting.base.render()} on {tag}")
    return BimoduleElement(index, {label: v for label, v in zip(matrix.col_labels, solution) if v})


_LIFTINGS: Dict[Derivation, LiftingMap] = {}
_LIFTINGS_LOCK = threading.Lock()


def lift_derivation(derivation: Derivation, max_degree: int) -> LiftingMap:
    """
    Lift a homogeneous derivation to the minimal resolution up to the given homological degree.

    Each generator is solved independently from d(L(g)) = L(d(g)); results are memoized per
    derivation.

    Raises:
        ParameterOutOfRange: if the derivation does not respect the relations of A
        NoSolution: if some commuting-square system is inconsistent
    """
    if not derivation.is_well_defined():
        raise ParameterOutOfRange(f"{derivation.render()} is not a derivation of A")
    with _LIFTINGS_LOCK:
        lifting = _LIFTINGS.get(derivation)
        if lifting is None:
            lifting = _LIFTINGS[derivation] = LiftingMap(derivation)
    return lifting.extend(max_degree)


class LiftingTable(str, Enum):
    C = "c"
    ALPHA = "alpha"
    BETA = "beta"
    GAMMA = "gamma"


_TABLE_DERIVATIONS = {
    LiftingTable.C: C_CLASS,
    LiftingTable.ALPHA: s_class(0),
    LiftingTable.BETA: s_class(1),
    LiftingTable.GAMMA: s_class(2),
}


def _tabulated_value(table: LiftingTable, derivation: Derivation, tag: GeneratorTag) -> BimoduleElement:
    h = tag.homological_degree
    index = tag.index
    if h == 1:
        return comparison_g(1, BarElement.from_factors([derivation.value(tag.word)]))
    if table == LiftingTable.ALPHA:
        return BimoduleElement.generator(tag, tag.internal_degree)
    top_x = x_power(index)
    top_y = y_square_x_power(index)
    if table == LiftingTable.C:
        if tag.kind == GeneratorKind.XPOW:
            return BimoduleElement.zero(index)
        return BimoduleElement.from_parts(index, [
            (1, "y", top_x, ""), ((-1) ** (h + 1), "", top_x, "y"), (-1, "x", top_x, ""),
        ])
    if h > 3:
        raise ParameterOutOfRange(f"The {table.value} table stops at homological degree 3")
    if table == LiftingTable.BETA:
        if tag.kind == GeneratorKind.XPOW:
            return BimoduleElement.from_parts(index, [
                (3, "x", top_y, ""), (3 * h, "", top_x, "yy"), (3 * h - 3, "", top_x, "yx"),
            ])
        return BimoduleElement.from_parts(index, [
            (2, "yy", top_y, ""), (3 * h - 1, "", top_y, "yy"), (3 * h - 4, "", top_y, "yx"), (-2, "xy", top_y, ""),
        ])
    if tag.kind == GeneratorKind.XPOW:
        outer = 10 if h == 2 else 15
        inner = 10 if h == 2 else 20
        return BimoduleElement.from_parts(index, [
            (outer, "", top_x, "yyyy"), (5, "xyy", top_y, ""), (5, "x", top_y, "yy"), (5, "x", top_y, "yx"),
            (inner, "", top_x, "yxyy"), (inner, "", top_x, "yxyx"),
        ])
    outer = 7 if h == 2 else 12
    inner = 4 if h == 2 else 14
    return BimoduleElement.from_parts(index, [
        (2, "yyyy", top_y, ""), (2, "yy", top_y, "yy"), (2, "yy", top_y, "yx"),
        (outer, "", top_y, "yyyy"), (inner, "", top_y, "yxyy"), (inner, "", top_y, "yxyx"),
        (-4, "xyyy", top_y, ""), (-2, "xy", top_y, "yy"), (-2, "xy", top_y, "yx"),
    ])


def explicit_lifting(table: LiftingTable, max_degree: int) -> LiftingMap:
    """
    The closed-form liftings of c (all degrees), s_0 (all degrees), s_1 and s_2 (degrees <= 3).
    """
    table = LiftingTable(table)
    derivation = Derivation.from_class(_TABLE_DERIVATIONS[table])
    values = {}
    for h in range(1, max_degree + 1):
        for tag in generators_in_degree(h):
            values[tag] = _tabulated_value(table, derivation, tag)
    return LiftingMap(derivation, values, source=f"table:{table.value}")


# Gerstenhaber bracket with HH^1


def bracket_cochain(lifting: LiftingMap, cochain: Cochain) -> Cochain:
    """[D, phi](g) = D(phi(g)) - phi(L(1 (x) g (x) 1)) on every generator g."""
    n = cochain.degree
    derivation = lifting.base
    values = {}
    for tag in generators_in_degree(n):
        value = derivation.apply(cochain.value(tag))
        if n >= 1:
            value = value - cochain.evaluate(lifting.value(tag))
        values[tag] = value
    return Cochain(n, values, cochain.coefficients)


def bracket_h1_hn(
    derivation: Derivation, cochain: Union[Cochain, CohomologyClass], lifting: Optional[LiftingMap] = None
) -> ClassCoordinates:
    """
    The action of a derivation on a cocycle of degree n, reduced to the named basis.

    Args:
        derivation: a homogeneous derivation of A
        cochain: a cocycle, or a named class whose representative is used
        lifting: a lifting of the derivation; the memoized solver lifting when omitted
    """
    if isinstance(cochain, tuple):
        cochain = cohomology_representative(CohomologyClass(*cochain))
    n = cochain.degree
    if lifting is None:
        lifting = lift_derivation(derivation, max(n, 1))
    return reduce_to_basis(n, bracket_cochain(lifting, cochain))


@lru_cache(maxsize=None)
def _direct_bracket(delta: CohomologyClass, name: CohomologyClass) -> Tuple[Tuple[CohomologyClass, Fraction], ...]:
    derivation = Derivation.from_class(delta)
    if name.degree == 0:
        return ()
    if name.degree == 1:
        return _sorted_coordinates(bracket_h1(derivation, Derivation.from_class(name)))
    return _sorted_coordinates(bracket_h1_hn(derivation, name))


@lru_cache(maxsize=None)
def _s_bracket(m: int, name: CohomologyClass) -> Tuple[Tuple[CohomologyClass, Fraction], ...]:
    if name.degree <= 1 or m <= DIRECT_LIFT_MAX_M:
        return _direct_bracket(s_class(m), name)
    # [s_1, s_{m-1}] = 2(m-2) s_m
    first = action_on_coordinates(s_class(1), action_on_coordinates(s_class(m - 1), {name: Fraction(1)}))
    second = action_on_coordinates(s_class(m - 1), action_on_coordinates(s_class(1), {name: Fraction(1)}))
    result = _add_into(dict(first), second, -1)
    return _sorted_coordinates({k: v / (2 * (m - 2)) for k, v in result.items()})


def h1_action(delta: CohomologyClass, name: CohomologyClass) -> ClassCoordinates:
    """
    [delta, name] for a named class delta of HH^1 (c or s_m) acting on any named class.

    Brackets of s_m with m > 2 on degrees >= 2 follow from the Jacobi identity with s_1.
    """
    delta = CohomologyClass(*delta)
    name = CohomologyClass(*name)
    if delta.degree != 1:
        raise ParameterOutOfRange(f"{delta} is not a class of HH^1")
    if delta.family == ClassFamily.S:
        return dict(_s_bracket(delta.n, name))
    return dict(_direct_bracket(delta, name))


def action_on_coordinates(delta: CohomologyClass, coordinates: Mapping[CohomologyClass, Fraction]) -> ClassCoordinates:
    result: ClassCoordinates = {}
    for name, value in coordinates.items():
        _add_into(result, h1_action(delta, name), value)
    return result


# Cup product


@lru_cache(maxsize=None)
def _value_on_bar(cochain: Cochain, coefficients: Coefficients, middle: Tuple[PBWMonomial, ...]) -> AlgebraElement:
    return cochain.evaluate(comparison_g(len(middle), BarElement.pure(middle)))


def cup_cochains(left: Cochain, right: Cochain) -> Cochain:
    """
    (left g_p  cup  right g_q) f_{p+q} on the generators of degree p + q.

    With k coefficients only the terms 1 (x) ... (x) 1 of f survive the augmentation.

    Raises:
        PatternUnsupported: if a bar term falls outside the domain of g
    """
    if left.coefficients != right.coefficients:
        raise ParameterOutOfRange("Cannot multiply cochains with different coefficients")
    p, q = left.degree, right.degree
    n = p + q
    field_coefficients = left.coefficients == Coefficients.FIELD
    values = {}
    for tag in generators_in_degree(n):
        total = AlgebraElement()
        for (l, middle, r), coefficient in comparison_f(n, tag).items():
            if field_coefficients and (l != ONE or r != ONE):
                continue
            first = _value_on_bar(left, left.coefficients, middle[:p])
            if first.is_zero():
                continue
            second = _value_on_bar(right, right.coefficients, middle[p:])
            if second.is_zero():
                continue
            term = AlgebraElement.monomial(l) * first * second * AlgebraElement.monomial(r)
            total = total + term.scale(coefficient)
        values[tag] = total
    return Cochain(n, values, left.coefficients)


@lru_cache(maxsize=None)
def _cup_named(left: CohomologyClass, right: CohomologyClass) -> Tuple[Tuple[CohomologyClass, Fraction], ...]:
    cochain = cup_cochains(cohomology_representative(left), cohomology_representative(right))
    return _sorted_coordinates(reduce_to_basis(cochain.degree, cochain))


def cup(left: CohomologyClass, right: CohomologyClass) -> ClassCoordinates:
    """Cup product of two named classes in named coordinates."""
    return dict(_cup_named(CohomologyClass(*left), CohomologyClass(*right)))


def cup_coordinates(left: Mapping[CohomologyClass, Fraction], right: Mapping[CohomologyClass, Fraction]) -> ClassCoordinates:
    result: ClassCoordinates = {}
    for (a, x), (b, y) in product(left.items(), right.items()):
        _add_into(result, cup(a, b), x * y)
    return result


def expected_cup(left: CohomologyClass, right: CohomologyClass) -> ClassCoordinates:
    """The product of two named generators as listed in the product table."""
    left = CohomologyClass(*left)
    right = CohomologyClass(*right)
    if left.family == ClassFamily.ONE:
        return {right: Fraction(1)}
    if right.family == ClassFamily.ONE:
        return {left: Fraction(1)}
    F = ClassFamily
    pair = (left.family, right.family)
    m, n = left.n, right.n
    p, q = left.degree, right.degree
    total = p + q

    def only(name: CohomologyClass, value: Coefficient = 1) -> ClassCoordinates:
        return {name: Fraction(value)} if value else {}

    if F.C in pair:
        return {}
    if pair == (F.S, F.S):
        return only(t_class(m + n + 1, 2), 4 * (n - m))
    if pair == (F.U, F.S):
        return {w_class(m + n, total): Fraction(2 * n + 1), v_class(m + n + 1, total): Fraction(2)}
    if pair == (F.S, F.U):
        return {w_class(m + n, total): Fraction(2 * m + 1), v_class(m + n + 1, total): Fraction(2)}
    if pair == (F.V, F.S):
        return only(t_class(m + n, total), 2 * n + 1)
    if pair == (F.S, F.V):
        return only(t_class(m + n, total), -(2 * m + 1))
    if pair == (F.W, F.S):
        return only(t_class(m + n + 1, total), -2)
    if pair == (F.S, F.W):
        return only(t_class(m + n + 1, total), 2)
    if pair in ((F.T, F.U), (F.U, F.T)):
        return only(t_class(m + n, total))
    if pair == (F.U, F.U):
        return only(u_class(m + n, total))
    if pair in ((F.U, F.V), (F.V, F.U)):
        return only(v_class(m + n, total))
    if pair in ((F.U, F.W), (F.W, F.U)):
        return only(w_class(m + n, total))
    if pair == (F.V, F.W):
        return only(t_class(m + n, total))
    if pair == (F.W, F.V):
        return only(t_class(m + n, total), -1)
    return {}


def table_classes(max_index: int, max_pq: int) -> List[CohomologyClass]:
    """Generators c, s_n, t/u_n^{2q}, v/w_n^{2q+1} within the index window, in table order."""
    classes = [C_CLASS] + [s_class(n) for n in range(max_index + 1)]
    for family, parity in ((t_class, 0), (u_class, 0), (v_class, 1), (w_class, 1)):
        for q in range(1, max_pq + 1):
            classes.extend(family(n, 2 * q + parity) for n in range(max_index + 1))
    return classes


def _cup_check(left: CohomologyClass, right: CohomologyClass) -> List[CheckResult]:
    indices = {"left": left.render(), "right": right.render()}
    try:
        computed = render_coordinates(cup(left, right))
    except (PatternUnsupported, NotACocycle, BasisMismatch) as e:
        return [CheckResult.failure("cup.table", indices, str(e), render_coordinates(expected_cup(left, right)))]
    return [CheckResult.compare("cup.table", indices, render_coordinates(expected_cup(left, right)), computed)]


def verify_cup_table(max_index: int, max_pq: int, workers: int = 1) -> List[CheckResult]:
    classes = table_classes(max_index, max_pq)
    tasks = [lambda a=a, b=b: _cup_check(a, b) for a in classes for b in classes]
    return run_parallel(tasks, workers)


_PROPERTY_SAMPLE = (
    C_CLASS, s_class(0), s_class(1), t_class(0, 2), t_class(1, 2), u_class(0, 2), u_class(1, 2),
    v_class(0, 3), w_class(0, 3),
)


def periodicity_matrix(n: int, w: int) -> GradedMatrix[CohomologyClass]:
    """Cup with u_0^2 as a map HH^n_w -> HH^{n+2}_{w-2} in the named bases."""
    u0 = u_class(0, 2)
    targets = named_classes(n + 2, w - 2)
    position = {name: i for i, name in enumerate(targets)}
    entries = {}
    sources = named_classes(n, w)
    for j, name in enumerate(sources):
        for image, value in cup(u0, name).items():
            if image not in position:
                raise BasisMismatch(f"{image.render()} is not a basis class of HH^{n + 2}_{w - 2}")
            entries[(position[image], j)] = value
    return GradedMatrix(targets, sources, entries)


def verify_cup_periodicity(max_degree: int = 5, max_weight: int = 8) -> List[CheckResult]:
    """Cup with u_0^2 is an isomorphism on every cell of degree 2..max_degree and relabels the named classes."""
    results = []
    u0 = u_class(0, 2)
    for n in range(2, max_degree + 1):
        for w in range(-(n + 1), max_weight + 1):
            indices = {"degree": n, "weight": w}
            try:
                matrix = periodicity_matrix(n, w)
            except (PatternUnsupported, NotACocycle, BasisMismatch) as e:
                results.append(CheckResult.failure("cup.periodicity", indices, str(e), "bijection"))
                continue
            rows, columns = matrix.shape
            results.append(CheckResult.compare(
                "cup.periodicity", indices, [columns] * 3, [rows, columns, matrix.rank()],
                "target dimension, source dimension, rank"
            ))
            for name in matrix.col_labels:
                results.append(CheckResult.compare(
                    "cup.periodicity-relabel", {"class": name.render()},
                    relabel_class(name).render(), render_coordinates(cup(u0, name)),
                ))
    return results


def verify_cup_properties(max_total_degree: int = 8) -> List[CheckResult]:
    """Unit, graded commutativity and associativity on sampled triples."""
    results = []
    for name in _PROPERTY_SAMPLE:
        indices = {"class": name.render()}
        results.append(CheckResult.compare("cup.unit", indices, name.render(), render_coordinates(cup(ONE_CLASS, name))))
    for a, b in product(_PROPERTY_SAMPLE, repeat=2):
        sign = (-1) ** (a.degree * b.degree)
        expected = {k: v * sign for k, v in cup(b, a).items()}
        results.append(CheckResult.compare(
            "cup.graded-commutative", {"left": a.render(), "right": b.render()},
            render_coordinates(expected), render_coordinates(cup(a, b)),
        ))
    for a, b, c in product(_PROPERTY_SAMPLE, repeat=3):
        if a.degree + b.degree + c.degree > max_total_degree:
            continue
        one = {a: Fraction(1)}
        left = cup_coordinates(cup(a, b), {c: Fraction(1)})
        right = cup_coordinates(one, cup(b, c))
        results.append(CheckResult.compare(
            "cup.associative", {"a": a.render(), "b": b.render(), "c": c.render()},
            render_coordinates(left), render_coordinates(right),
        ))
    u0 = u_class(0, 2)
    for name in _PROPERTY_SAMPLE:
        if name.degree < 2:
            continue
        results.append(CheckResult.compare(
            "cup.periodicity", {"class": name.render()}, relabel_class(name).render(), render_coordinates(cup(u0, name))
        ))
    return results


# Closed forms for the HH^1-action


def expected_h1_action(delta: CohomologyClass, name: CohomologyClass) -> Optional[ClassCoordinates]:
    """Closed-form brackets where they are known; None for the odd-degree families."""
    delta = CohomologyClass(*delta)
    name = CohomologyClass(*name)
    if delta.family == ClassFamily.C or name.family in (ClassFamily.ONE, ClassFamily.C):
        return {}
    m, n, degree = delta.n, name.n, name.degree
    if name.family == ClassFamily.S:
        value = 2 * (n - m)
        return {s_class(m + n): Fraction(value)} if value else {}
    p = degree // 2
    if name.family == ClassFamily.T:
        value = 2 * (n - (2 * p - 1) * m - p)
        return {t_class(n + m, degree): Fraction(value)} if value else {}
    if name.family == ClassFamily.U:
        result = {
            u_class(n + m, degree): Fraction(2 * (n - 2 * p * m - p)),
            t_class(n + m, degree): Fraction(2 * p * m * (2 * m + 1)),
        }
        return {k: v for k, v in result.items() if v}
    return None


def _action_check(delta: CohomologyClass, name: CohomologyClass) -> List[CheckResult]:
    indices = {"delta": delta.render(), "class": name.render()}
    try:
        computed = h1_action(delta, name)
    except (NoSolution, NotACocycle, BasisMismatch) as e:
        return [CheckResult.failure("bracket.action", indices, str(e))]
    expected = expected_h1_action(delta, name)
    if expected is None:
        return [CheckResult("bracket.action", indices, None, render_coordinates(computed), detail="no closed form; computed")]
    return [CheckResult.compare("bracket.action", indices, render_coordinates(expected), render_coordinates(computed))]


def action_classes(max_index: int, max_p: int) -> List[CohomologyClass]:
    classes = []
    for p in range(1, max_p + 1):
        for n in range(max_index + 1):
            classes.extend([t_class(n, 2 * p), u_class(n, 2 * p), v_class(n, 2 * p + 1), w_class(n, 2 * p + 1)])
    return classes


def verify_h1_action(max_m: int, max_index: int, max_p: int, workers: int = 1) -> List[CheckResult]:
    """[c, -] and [s_m, -] on t, u, v, w classes against the closed forms."""
    deltas = [C_CLASS] + [s_class(m) for m in range(max_m + 1)]
    classes = action_classes(max_index, max_p)
    for delta in deltas:
        if delta.family == ClassFamily.S:
            lift_derivation(s_derivation(min(delta.n, DIRECT_LIFT_MAX_M)), 2 * max_p + 1)
    tasks = [lambda d=d, c=c: _action_check(d, c) for d in deltas for c in classes]
    return run_parallel(tasks, workers)


def verify_h1_brackets(max_m: int) -> List[CheckResult]:
    """[s_m, s_n] = 2(n - m) s_{m+n} and [c, s_n] = 0 from commutators of derivations."""
    results = []
    deltas = [C_CLASS] + [s_class(m) for m in range(max_m + 1)]
    for a, b in product(deltas, repeat=2):
        indices = {"left": a.render(), "right": b.render()}
        computed = bracket_h1(Derivation.from_class(a), Derivation.from_class(b))
        expected = expected_h1_action(a, b) if a.family == ClassFamily.S else {}
        if b.family == ClassFamily.C:
            expected = {}
        results.append(CheckResult.compare("bracket.h1", indices, render_coordinates(expected), render_coordinates(computed)))
    return results


def verify_derivations(max_m: int, euler_degree: int = 8) -> List[CheckResult]:
    results = []
    for delta in [C_CLASS] + [s_class(m) for m in range(max_m + 1)]:
        derivation = Derivation.from_class(delta)
        results.append(CheckResult.compare("derivation.well-defined", {"class": delta.render()}, True, derivation.is_well_defined()))
    results.append(CheckResult.compare("derivation.euler", {"max_degree": euler_degree}, 0, euler_defect(euler_degree)))
    return results


def _square_defects(lifting: LiftingMap, max_degree: int) -> int:
    return sum(
        0 if lifting.square_defect(tag).is_zero() else 1
        for h in range(1, max_degree + 1)
        for tag in generators_in_degree(h)
    )


def verify_liftings(max_degree: int) -> List[CheckResult]:
    """Commuting squares for solver liftings of c, s_0, s_1, s_2 and for the closed-form tables."""
    results = []
    for delta in (C_CLASS, s_class(0), s_class(1), s_class(2)):
        try:
            lifting = lift_derivation(Derivation.from_class(delta), max_degree)
        except NoSolution as e:
            results.append(CheckResult.failure("lifting.solver", {"class": delta.render()}, str(e)))
            continue
        results.append(CheckResult.compare("lifting.solver", {"class": delta.render()}, 0, _square_defects(lifting, max_degree)))
    for table in LiftingTable:
        top = max_degree if table in (LiftingTable.C, LiftingTable.ALPHA) else min(max_degree, 3)
        lifting = explicit_lifting(table, top)
        results.append(CheckResult.compare("lifting.table", {"table": table.value}, 0, _square_defects(lifting, top)))
    return results


def verify_lifting_agreement(max_index: int) -> List[CheckResult]:
    """Solver and closed-form liftings induce the same brackets on degree 2 and 3 classes."""
    results = []
    classes = [name for n in range(max_index + 1) for name in (t_class(n, 2), u_class(n, 2), v_class(n, 3), w_class(n, 3))]
    for table in LiftingTable:
        tabulated = explicit_lifting(table, 3)
        derivation = tabulated.base
        solver = lift_derivation(derivation, 3)
        for name in classes:
            indices = {"table": table.value, "class": name.render()}
            expected = render_coordinates(bracket_h1_hn(derivation, name, solver))
            computed = render_coordinates(bracket_h1_hn(derivation, name, tabulated))
            results.append(CheckResult.compare("lifting.agreement", indices, expected, computed))
    return results


def verify_jacobi_extension(max_index: int) -> List[CheckResult]:
    """[s_3, -] obtained through Jacobi agrees with a direct lifting of s_3 on degree 2 classes."""
    results = []
    s3 = s_derivation(3)
    for n in range(max_index + 1):
        for name in (t_class(n, 2), u_class(n, 2)):
            direct = bracket_h1_hn(s3, name)
            results.append(CheckResult.compare(
                "bracket.jacobi", {"class": name.render()}, render_coordinates(direct), render_coordinates(h1_action(s_class(3), name))
            ))
    return results


def verify_poisson(max_index: int = 1) -> List[CheckResult]:
    """[delta, a cup b] = [delta, a] cup b + a cup [delta, b]."""
    results = []
    sample = [s_class(n) for n in range(max_index + 1)] + [t_class(n, 2) for n in range(max_index + 1)]
    sample += [u_class(n, 2) for n in range(max_index + 1)] + [C_CLASS]
    for delta in (C_CLASS, s_class(0), s_class(1)):
        for a, b in product(sample, repeat=2):
            if a.degree + b.degree > 4:
                continue
            left = action_on_coordinates(delta, cup(a, b))
            right = cup_coordinates(h1_action(delta, a), {b: Fraction(1)})
            _add_into(right, cup_coordinates({a: Fraction(1)}, h1_action(delta, b)))
            indices = {"delta": delta.render(), "left": a.render(), "right": b.render()}
            results.append(CheckResult.compare("bracket.poisson", indices, render_coordinates(right), render_coordinates(left)))
    return results


def verify_periodicity_transport(max_m: int, max_index: int, max_p: int) -> List[CheckResult]:
    """[s_m, u_n^{2p+2}] through [s_m, u_0^2] cup u_n^{2p} + u_0^2 cup [s_m, u_n^{2p}]."""
    results = []
    u0 = u_class(0, 2)
    for m in range(max_m + 1):
        for n in range(max_index + 1):
            for p in range(1, max_p + 1):
                name = u_class(n, 2 * p)
                transported = cup_coordinates(h1_action(s_class(m), u0), {name: Fraction(1)})
                _add_into(transported, cup_coordinates({u0: Fraction(1)}, h1_action(s_class(m), name)))
                expected = expected_h1_action(s_class(m), u_class(n, 2 * p + 2))
                indices = {"m": m, "n": n, "p": p}
                results.append(CheckResult.compare(
                    "bracket.periodicity", indices, render_coordinates(expected), render_coordinates(transported)
                ))
    return results


# Virasoro identification


class VirasoroElement:
    """A finite combination of the central element C and the L_m."""

    CENTRAL = "C"

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[Union[int, str], Coefficient]] = None):
        self._terms: Dict[Union[int, str], Fraction] = {}
        for key, value in (terms or {}).items():
            value = Fraction(value)
            if value:
                self._terms[key] = self._terms.get(key, Fraction(0)) + value

    @classmethod
    def L(cls, m: int, coefficient: Coefficient = 1) -> "VirasoroElement":
        return cls({m: coefficient})

    @classmethod
    def central(cls, coefficient: Coefficient = 1) -> "VirasoroElement":
        return cls({cls.CENTRAL: coefficient})

    def __add__(self, other: "VirasoroElement") -> "VirasoroElement":
        return VirasoroElement(_add_into(dict(self._terms), other._terms))

    def scale(self, factor: Coefficient) -> "VirasoroElement":
        return VirasoroElement({k: v * Fraction(factor) for k, v in self._terms.items()})

    def bracket(self, other: "VirasoroElement") -> "VirasoroElement":
        """[L_m, L_n] = (n - m) L_{m+n} + delta_{m,-n} (m^3 - m)/12 C, with C central."""
        result: Dict[Union[int, str], Fraction] = {}
        for (i, a), (j, b) in product(self._terms.items(), other._terms.items()):
            if i == self.CENTRAL or j == self.CENTRAL:
                continue
            _add_into(result, {i + j: Fraction(j - i)}, a * b)
            if i == -j:
                _add_into(result, {self.CENTRAL: Fraction(i ** 3 - i, 12)}, a * b)
        return VirasoroElement(result)

    def __eq__(self, other) -> bool:
        if not isinstance(other, VirasoroElement):
            return NotImplemented
        return {k: v for k, v in self._terms.items() if v} == {k: v for k, v in other._terms.items() if v}

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def render(self) -> str:
        pieces = []
        keys = sorted(self._terms, key=lambda k: (k != self.CENTRAL, k if isinstance(k, int) else -1))
        for key in keys:
            value = self._terms[key]
            if not value:
                continue
            label = "C" if key == self.CENTRAL else f"L_{key}"
            pieces.append(label if value == 1 else f"{format_coefficient(value)}*{label}")
        return " + ".join(pieces) if pieces else "0"

    def __repr__(self) -> str:
        return f"VirasoroElement({self.render()})"


def virasoro_image(coordinates: Mapping[CohomologyClass, Fraction]) -> VirasoroElement:
    """c -> C and s_m -> 2^{m+1} L_m."""
    terms: Dict[Union[int, str], Fraction] = {}
    for name, value in coordinates.items():
        if name.family == ClassFamily.C:
            _add_into(terms, {VirasoroElement.CENTRAL: value})
        elif name.family == ClassFamily.S:
            _add_into(terms, {name.n: value * 2 ** (name.n + 1)})
        else:
            raise ParameterOutOfRange(f"{name} does not belong to HH^1")
    return VirasoroElement(terms)


def virasoro_check(max_m: int, jacobi_max: int = 3) -> List[CheckResult]:
    """
    Transport computed HH^1 brackets to Virasoro brackets and check antisymmetry and Jacobi.
    """
    results = []
    basis = [C_CLASS] + [s_class(m) for m in range(max_m + 1)]
    brackets: Dict[Tuple[CohomologyClass, CohomologyClass], ClassCoordinates] = {}
    for a, b in product(basis, repeat=2):
        brackets[(a, b)] = bracket_h1(Derivation.from_class(a), Derivation.from_class(b))
    for (a, b), computed in brackets.items():
        indices = {"left": a.render(), "right": b.render()}
        expected = virasoro_image({a: Fraction(1)}).bracket(virasoro_image({b: Fraction(1)}))
        results.append(CheckResult.compare("virasoro.transport", indices, expected.render(), virasoro_image(computed).render()))
        negated = {k: -v for k, v in brackets[(b, a)].items()}
        results.append(CheckResult.compare("virasoro.antisymmetry", indices, render_coordinates(negated), render_coordinates(computed)))

    def bracket_coordinates(left: Mapping, right: Mapping) -> ClassCoordinates:
        result: ClassCoordinates = {}
        for (a, x), (b, y) in product(left.items(), right.items()):
            _add_into(result, bracket_h1(Derivation.from_class(a), Derivation.from_class(b)), x * y)
        return result

    small = [C_CLASS] + [s_class(m) for m in range(min(max_m, jacobi_max) + 1)]
    for a, b, c in product(small, repeat=3):
        total: ClassCoordinates = {}
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            _add_into(total, bracket_coordinates({x: Fraction(1)}, bracket_coordinates({y: Fraction(1)}, {z: Fraction(1)})))
        indices = {"a": a.render(), "b": b.render(), "c": c.render()}
        results.append(CheckResult.compare("virasoro.jacobi", indices, "0", render_coordinates(total)))
    return results


# Rescaled classes and intermediate series modules


_RESCALED_NAMES = {
    ClassFamily.S: "L",
    ClassFamily.T: "tau",
    ClassFamily.U: "mu",
    ClassFamily.V: "nu",
    ClassFamily.W: "omega",
}


class RescaledClass(NamedTuple):
    """L_m = s_m / 2^{m+1}; tau, mu, nu, omega are t, u, v, w divided by 2^{n+1}."""
    base: CohomologyClass

    @property
    def factor(self) -> int:
        if self.base.family in (ClassFamily.ONE, ClassFamily.C):
            return 1
        return 2 ** (self.base.n + 1)

    def render(self) -> str:
        family = self.base.family
        if family not in _RESCALED_NAMES:
            return self.base.render()
        if family == ClassFamily.S:
            return f"L_{self.base.n}"
        return f"{_RESCALED_NAMES[family]}_{self.base.n}^{self.base.degree}"


def rescale(coordinates: Mapping[CohomologyClass, Fraction]) -> Dict[RescaledClass, Fraction]:
    """Coordinates in the named basis rewritten in the rescaled basis."""
    return {RescaledClass(name): value * RescaledClass(name).factor for name, value in coordinates.items() if value}


def rescaled_action(m: int, name: CohomologyClass) -> Dict[RescaledClass, Fraction]:
    """L_m acting on the rescaled class of `name`, in rescaled coordinates."""
    scale = Fraction(1, 2 ** (m + 1) * RescaledClass(name).factor)
    return {k: v * scale for k, v in rescale(h1_action(s_class(m), name)).items()}


@dataclass
class IntermediateSeriesModule:
    """Truncated V_{a,b}: L_s . v_n = (n + a s + b) v_{n+s} for n + s <= truncation, C . v_n = 0."""
    a: Fraction
    b: Fraction
    truncation: int

    def coefficient(self, s: int, n: int) -> Fraction:
        return n + self.a * s + self.b

    def act(self, s: int, n: int) -> Optional[Tuple[Fraction, int]]:
        if n + s > self.truncation:
            return None
        return self.coefficient(s, n), n + s

    @classmethod
    def fit(cls, table: Mapping[Tuple[int, int], Fraction], truncation: int) -> "IntermediateSeriesModule":
        """
        Fit (a, b) from the (s, n) -> coefficient table.

        Raises:
            FitImpossible: if no (a, b) reproduces every entry
        """
        if (0, 0) not in table or (1, 0) not in table:
            raise FitImpossible("The table must contain the entries (0, 0) and (1, 0)")
        b = table[(0, 0)]
        a = table[(1, 0)] - b
        module = cls(a, b, truncation)
        mismatches = [(s, n) for (s, n), value in table.items() if module.coefficient(s, n) != value]
        if mismatches:
            raise FitImpossible(f"No intermediate series fits the action; first mismatch at (s, n) = {mismatches[0]}")
        return module


@dataclass
class SeriesFit:
    """The fitted module of one family together with everything the fit ignored."""
    family: ClassFamily
    degree: int
    module: IntermediateSeriesModule
    table: Dict[Tuple[int, int], Fraction]
    off_family: Dict[str, str] = field(default_factory=dict)
    central_zero: bool = True


def _family_class(family: ClassFamily, n: int, degree: int) -> CohomologyClass:
    return CohomologyClass(family, n, degree)


def fit_family(family: ClassFamily, degree: int, truncation: int, max_s: int = DIRECT_LIFT_MAX_M) -> SeriesFit:
    """
    Compute L_s on the rescaled classes of one family and fit an intermediate series module.

    Components outside the family are kept in `off_family`, keyed by "s,n".
    """
    table: Dict[Tuple[int, int], Fraction] = {}
    off_family: Dict[str, str] = {}
    central_zero = True
    for n in range(truncation + 1):
        name = _family_class(family, n, degree)
        if h1_action(C_CLASS, name):
            central_zero = False
        for s in range(max_s + 1):
            if n + s > truncation:
                continue
            action = rescaled_action(s, name)
            target = RescaledClass(_family_class(family, n + s, degree))
            table[(s, n)] = action.pop(target, Fraction(0))
            if action:
                off_family[f"{s},{n}"] = " + ".join(f"{format_coefficient(v)}*{k.render()}" for k, v in sorted(action.items()))
    module = IntermediateSeriesModule.fit(table, truncation)
    return SeriesFit(family, degree, module, table, off_family, central_zero)


def intermediate_series_match(p: int, parity: str, truncation: int, max_s: int = DIRECT_LIFT_MAX_M) -> List[SeriesFit]:
    """
    Fit the HH^1-action on the family spanning I_{2p} (even) or on the omega and nu families in
    degree 2p + 1 (odd).

    Raises:
        FitImpossible: if a family admits no intermediate series parameters
    """
    if p < 1:
        raise ParameterOutOfRange(f"p must be >= 1, got {p}")
    if parity == "even":
        return [fit_family(ClassFamily.T, 2 * p, truncation, max_s)]
    if parity == "odd":
        return [fit_family(ClassFamily.W, 2 * p + 1, truncation, max_s), fit_family(ClassFamily.V, 2 * p + 1, truncation, max_s)]
    raise ParameterOutOfRange(f"parity must be 'even' or 'odd', got {parity!r}")


def _describe_fit(fit: SeriesFit) -> Dict[str, str]:
    return {"a": format_coefficient(fit.module.a), "b": format_coefficient(fit.module.b)}


def verify_intermediate_series(max_p: int, truncation: int, max_s: int = DIRECT_LIFT_MAX_M) -> List[CheckResult]:
    """
    Even families must give (a, b) = (-(2p-1), -p) with no components outside the family. Odd
    families are reported with their fitted parameters; the omega family must be closed.
    """
    results = []
    for p in range(1, max_p + 1):
        indices = {"p": p, "parity": "even"}
        try:
            (fit,) = intermediate_series_match(p, "even", truncation, max_s)
        except FitImpossible as e:
            results.append(CheckResult.failure("series.fit", indices, str(e)))
        else:
            expected = {"a": format_coefficient(-(2 * p - 1)), "b": format_coefficient(-p)}
            results.append(CheckResult.compare("series.fit", indices, expected, _describe_fit(fit)))
            results.append(CheckResult.compare("series.closed", indices, {}, fit.off_family))
            results.append(CheckResult.compare("series.central", indices, True, fit.central_zero))

        indices = {"p": p, "parity": "odd"}
        try:
            omega, nu = intermediate_series_match(p, "odd", truncation, max_s)
        except FitImpossible as e:
            results.append(CheckResult.failure("series.fit", indices, str(e)))
            continue
        claimed = f"printed constants: omega (a, b) = ({-2 * p}, {-p}), nu diagonal ({-(2 * p + 1)}, {-(p + 1)})"
        computed = {"omega": _describe_fit(omega), "nu": _describe_fit(nu), "nu_off_family": nu.off_family}
        results.append(CheckResult("series.fit", indices, None, computed, detail=claimed))
        results.append(CheckResult.compare("series.closed", indices, {}, omega.off_family))
        results.append(CheckResult.compare("series.central", indices, True, omega.central_zero and nu.central_zero))
    return results


def bracket_table(max_m: int, max_index: int, max_p: int) -> List[Dict[str, object]]:
    """JSON-ready rows {delta, class, result} of the HH^1-action."""
    rows = []
    for delta in [C_CLASS] + [s_class(m) for m in range(max_m + 1)]:
        for name in action_classes(max_index, max_p):
            rows.append({"delta": delta.render(), "class": name.render(), "result": coordinates_to_json(h1_action(delta, name))})
    return rows
