"""
Minimal projective bimodule resolution of the super Jordan plane, its bicomplex
decomposition, the normalized bar resolution and the comparison maps between them.

Generators are indexed by their ambiguity index n: the generator of A (x) kA_n (x) A
sits in homological degree n + 1, and the unit generator has index -1.
"""

import logging
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple, Union

from app.core.exceptions import InvalidBicomplexPosition, ParameterOutOfRange, PatternUnsupported
from app.services.algebra import (
    ONE,
    AlgebraElement,
    Coefficient,
    PBWMonomial,
    format_coefficient,
    monomial_from_word,
    multiply_monomials,
    normal_form,
)
from app.services.checks import CheckResult

# Configure logging
logger = logging.getLogger(__name__)


class GeneratorKind(str, Enum):
    UNIT = "1"
    X = "x"
    Y = "y"
    XPOW = "x^n"
    Y2X = "y^2x^n"


class GeneratorTag(NamedTuple):
    """A free generator of the minimal resolution."""
    index: int
    kind: GeneratorKind

    @property
    def homological_degree(self) -> int:
        return self.index + 1

    @property
    def internal_degree(self) -> int:
        if self.kind == GeneratorKind.UNIT:
            return 0
        if self.kind in (GeneratorKind.X, GeneratorKind.Y):
            return 1
        if self.kind == GeneratorKind.XPOW:
            return self.index + 1
        return self.index + 2

    @property
    def word(self) -> str:
        if self.kind == GeneratorKind.UNIT:
            return ""
        if self.kind == GeneratorKind.X:
            return "x"
        if self.kind == GeneratorKind.Y:
            return "y"
        if self.kind == GeneratorKind.XPOW:
            return "x" * (self.index + 1)
        return "yy" + "x" * self.index

    def render(self) -> str:
        if self.kind == GeneratorKind.UNIT:
            return "1"
        if self.kind in (GeneratorKind.X, GeneratorKind.Y):
            return self.kind.value
        if self.kind == GeneratorKind.XPOW:
            return f"x^{self.index + 1}"
        return "y^2x" if self.index == 1 else f"y^2x^{self.index}"

    def __str__(self) -> str:
        return self.render()


UNIT_TAG = GeneratorTag(-1, GeneratorKind.UNIT)
X_TAG = GeneratorTag(0, GeneratorKind.X)
Y_TAG = GeneratorTag(0, GeneratorKind.Y)


def x_power(index: int) -> GeneratorTag:
    """The x-type generator at the given index (x itself at index 0)."""
    return X_TAG if index == 0 else GeneratorTag(index, GeneratorKind.XPOW)


def y_square_x_power(index: int) -> GeneratorTag:
    """The y-type generator at the given index (y itself at index 0)."""
    return Y_TAG if index == 0 else GeneratorTag(index, GeneratorKind.Y2X)


def generators(index: int) -> List[GeneratorTag]:
    """Free generators of P_{index}, x-type first."""
    if index < -1:
        raise ParameterOutOfRange(f"Generator index must be >= -1, got {index}")
    if index == -1:
        return [UNIT_TAG]
    return [x_power(index), y_square_x_power(index)]


def generators_in_degree(homological_degree: int) -> List[GeneratorTag]:
    """Generators carried by cochains and chains of the given homological degree."""
    if homological_degree < 0:
        return []
    return generators(homological_degree - 1)


BimoduleTerm = Tuple[PBWMonomial, GeneratorTag, PBWMonomial]


class BimoduleElement:
    """A finite sum of c * l (x) g (x) r in P_index with PBW monomials l, r."""

    __slots__ = ("index", "_terms")

    def __init__(self, index: int, terms: Optional[Dict[BimoduleTerm, Coefficient]] = None):
        self.index = index
        clean: Dict[BimoduleTerm, Fraction] = {}
        for (left, tag, right), coefficient in (terms or {}).items():
            if tag.index != index:
                raise ParameterOutOfRange(f"Generator {tag} does not belong to P_{index}")
            coefficient = Fraction(coefficient)
            if coefficient:
                key = (left, tag, right)
                clean[key] = clean.get(key, Fraction(0)) + coefficient
        self._terms = {key: c for key, c in clean.items() if c}

    @classmethod
    def zero(cls, index: int) -> "BimoduleElement":
        return cls(index)

    @classmethod
    def generator(cls, tag: GeneratorTag, coefficient: Coefficient = 1) -> "BimoduleElement":
        return cls(tag.index, {(ONE, tag, ONE): coefficient})

    @classmethod
    def from_parts(
        cls,
        index: int,
        parts: Iterable[Tuple[Coefficient, Union[str, AlgebraElement], GeneratorTag, Union[str, AlgebraElement]]],
    ) -> "BimoduleElement":
        """
        Build c * l (x) g (x) r sums where l and r are words or algebra elements.
        """
        accumulated: Dict[BimoduleTerm, Fraction] = {}
        for coefficient, left, tag, right in parts:
            left = normal_form(left) if isinstance(left, str) else left
            right = normal_form(right) if isinstance(right, str) else right
            for lm, lc in left.items():
                for rm, rc in right.items():
                    key = (lm, tag, rm)
                    accumulated[key] = accumulated.get(key, Fraction(0)) + Fraction(coefficient) * lc * rc
        return cls(index, accumulated)

    def items(self) -> List[Tuple[BimoduleTerm, Fraction]]:
        return sorted(
            self._terms.items(),
            key=lambda item: (item[0][1].kind.value, item[0][0].sort_key(), item[0][2].sort_key()),
        )

    def coefficient(self, left: PBWMonomial, tag: GeneratorTag, right: PBWMonomial) -> Fraction:
        return self._terms.get((left, tag, right), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def weights(self) -> List[int]:
        return sorted({l.degree + tag.internal_degree + r.degree for (l, tag, r) in self._terms})

    def _check_index(self, other: "BimoduleElement") -> None:
        if other.index != self.index:
            raise ParameterOutOfRange(f"Cannot combine P_{self.index} with P_{other.index}")

    def __add__(self, other: "BimoduleElement") -> "BimoduleElement":
        self._check_index(other)
        result = dict(self._terms)
        for key, coefficient in other._terms.items():
            result[key] = result.get(key, Fraction(0)) + coefficient
        return BimoduleElement(self.index, result)

    def __neg__(self) -> "BimoduleElement":
        return BimoduleElement(self.index, {key: -c for key, c in self._terms.items()})

    def __sub__(self, other: "BimoduleElement") -> "BimoduleElement":
        return self + (-other)

    def scale(self, factor: Coefficient) -> "BimoduleElement":
        return BimoduleElement(self.index, {key: c * Fraction(factor) for key, c in self._terms.items()})

    def act(self, left: AlgebraElement, right: AlgebraElement) -> "BimoduleElement":
        """left * self * right."""
        accumulated: Dict[BimoduleTerm, Fraction] = {}
        for (l, tag, r), coefficient in self._terms.items():
            for lm, lc in left.items():
                for new_left, lv in multiply_monomials(lm, l):
                    for rm, rc in right.items():
                        for new_right, rv in multiply_monomials(r, rm):
                            key = (new_left, tag, new_right)
                            accumulated[key] = accumulated.get(key, Fraction(0)) + coefficient * lc * lv * rc * rv
        return BimoduleElement(self.index, accumulated)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BimoduleElement):
            return NotImplemented
        return self.index == other.index and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.index, frozenset(self._terms.items())))

    def render(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for (left, tag, right), coefficient in self.items():
            body = f"{left.render()}⊗{tag.render()}⊗{right.render()}"
            pieces.append(body if coefficient == 1 else f"{format_coefficient(coefficient)}*{body}")
        return " + ".join(pieces)

    def __repr__(self) -> str:
        return f"BimoduleElement[{self.index}]({self.render()})"


# Differential of the minimal resolution


@lru_cache(maxsize=None)
def differential_on_generator(tag: GeneratorTag) -> BimoduleElement:
    """d applied to 1 (x) tag (x) 1; lands in P_{tag.index - 1}."""
    n = tag.index
    if tag.kind == GeneratorKind.UNIT:
        raise ParameterOutOfRange("The augmentation is not part of the resolution differential")
    if n == 0:
        return BimoduleElement.from_parts(-1, [(1, tag.word, UNIT_TAG, ""), (-1, "", UNIT_TAG, tag.word)])
    if n == 1 and tag.kind == GeneratorKind.XPOW:
        return BimoduleElement.from_parts(0, [(1, "x", X_TAG, ""), (1, "", X_TAG, "x")])
    if n == 1:
        return BimoduleElement.from_parts(0, [
            (1, "yy", X_TAG, ""),
            (1, "y", Y_TAG, "x"),
            (1, "", Y_TAG, "yx"),
            (-1, "xy", Y_TAG, ""),
            (-1, "x", Y_TAG, "y"),
            (-1, "", X_TAG, "yy"),
            (-1, "xy", X_TAG, ""),
            (-1, "x", Y_TAG, "x"),
            (-1, "", X_TAG, "yx"),
        ])

    sign = (-1) ** (n + 1)
    previous_x = x_power(n - 1)
    previous_y = y_square_x_power(n - 1)
    if tag.kind == GeneratorKind.XPOW:
        return BimoduleElement.from_parts(n - 1, [(1, "x", previous_x, ""), (sign, "", previous_x, "x")])
    return BimoduleElement.from_parts(n - 1, [
        (1, "yy", previous_x, ""),
        (sign, "", previous_y, "x"),
        (-1, "x", previous_y, ""),
        (-1, "xy", previous_x, ""),
        (-1, "", previous_x, "yy"),
        (-1, "", previous_x, "yx"),
    ])


def _apply_on_generators(element: BimoduleElement, index: int, image_of) -> BimoduleElement:
    result = BimoduleElement.zero(index)
    for (left, tag, right), coefficient in element._terms.items():
        image = image_of(tag)
        if image.is_zero():
            continue
        result = result + image.act(AlgebraElement.monomial(left), AlgebraElement.monomial(right)).scale(coefficient)
    return result


def differential(n: int, element: BimoduleElement) -> BimoduleElement:
    """
    The differential d_n : P_n -> P_{n-1} of the minimal resolution (n = ambiguity index).

    Args:
        n: index of the source, n >= 0
        element: an element of P_n

    Returns:
        d_n(element) in P_{n-1}
    """
    if n < 0:
        raise ParameterOutOfRange(f"Differential index must be >= 0, got {n}")
    if element.index != n:
        raise ParameterOutOfRange(f"Element lives in P_{element.index}, not P_{n}")
    return _apply_on_generators(element, n - 1, differential_on_generator)


def augmentation(element: BimoduleElement) -> AlgebraElement:
    """The multiplication map P_{-1} = A (x) A -> A."""
    if element.index != -1:
        raise ParameterOutOfRange("Augmentation only applies to P_{-1}")
    result = AlgebraElement()
    for (left, _, right), coefficient in element._terms.items():
        for monomial, value in multiply_monomials(left, right):
            result = result + AlgebraElement.monomial(monomial, coefficient * value)
    return result


# Bicomplex decomposition


class BicomplexMap(str, Enum):
    D = "d"
    DELTA = "delta"
    DELTA_PRIME = "delta'"
    PARTIAL = "partial"
    PARTIAL_PRIME = "partial'"


def _bicomplex_image(name: BicomplexMap, n: int, tag: GeneratorTag) -> BimoduleElement:
    previous_x = x_power(n - 1)
    previous_y = y_square_x_power(n - 1)
    if name in (BicomplexMap.DELTA, BicomplexMap.PARTIAL):
        valid = tag.kind == GeneratorKind.XPOW and n >= 1
        valid = valid and (n % 2 == 1 if name == BicomplexMap.DELTA else n % 2 == 0 and n >= 2)
        if not valid:
            raise InvalidBicomplexPosition(f"{name.value} is not defined on {tag} at index {n}")
        sign = 1 if name == BicomplexMap.DELTA else -1
        return BimoduleElement.from_parts(n - 1, [(1, "x", previous_x, ""), (sign, "", previous_x, "x")])

    if tag.kind != GeneratorKind.Y2X or n < 2:
        raise InvalidBicomplexPosition(f"{name.value} is not defined on {tag} at index {n}")
    if name == BicomplexMap.D:
        return BimoduleElement.from_parts(n - 1, [
            (1, "yy", previous_x, ""),
            (-1, "xy", previous_x, ""),
            (-1, "", previous_x, "yy"),
            (-1, "", previous_x, "yx"),
        ])
    if name == BicomplexMap.DELTA_PRIME:
        if n % 2 != 0:
            raise InvalidBicomplexPosition(f"delta' is only defined at even index, got {n}")
        return BimoduleElement.from_parts(n - 1, [(-1, "x", previous_y, ""), (-1, "", previous_y, "x")])
    if n % 2 != 1:
        raise InvalidBicomplexPosition(f"partial' is only defined at odd index, got {n}")
    return BimoduleElement.from_parts(n - 1, [(-1, "x", previous_y, ""), (1, "", previous_y, "x")])


def bicomplex_map(name: BicomplexMap, n: int, element: BimoduleElement) -> BimoduleElement:
    """
    Apply one component of the bicomplex decomposition of d_n.

    Raises:
        InvalidBicomplexPosition: if the map is not defined on some term of the element
    """
    name = BicomplexMap(name)
    if element.index != n:
        raise ParameterOutOfRange(f"Element lives in P_{element.index}, not P_{n}")
    return _apply_on_generators(element, n - 1, lambda tag: _bicomplex_image(name, n, tag))


def total_differential(n: int, element: BimoduleElement) -> BimoduleElement:
    """Reassemble d_n (n >= 2) from the bicomplex components."""
    if n < 2:
        raise ParameterOutOfRange(f"The bicomplex decomposition starts at index 2, got {n}")
    x_part = BimoduleElement(n, {key: c for key, c in element._terms.items() if key[1].kind == GeneratorKind.XPOW})
    y_part = element - x_part
    column = BicomplexMap.DELTA if n % 2 == 1 else BicomplexMap.PARTIAL
    row = BicomplexMap.PARTIAL_PRIME if n % 2 == 1 else BicomplexMap.DELTA_PRIME
    return bicomplex_map(column, n, x_part) + bicomplex_map(BicomplexMap.D, n, y_part) + bicomplex_map(row, n, y_part)


# Normalized bar resolution


BarTerm = Tuple[PBWMonomial, Tuple[PBWMonomial, ...], PBWMonomial]


class BarElement:
    """
    A sum of c * l (x) m_1 (x) ... (x) m_degree (x) r in the normalized bar resolution.

    Terms with a middle factor of degree zero vanish and are dropped.
    """

    __slots__ = ("degree", "_terms")

    def __init__(self, degree: int, terms: Optional[Dict[BarTerm, Coefficient]] = None):
        self.degree = degree
        clean: Dict[BarTerm, Fraction] = {}
        for (left, middle, right), coefficient in (terms or {}).items():
            middle = tuple(middle)
            if len(middle) != degree:
                raise ParameterOutOfRange(f"Bar term of length {len(middle)} in degree {degree}")
            if any(m.degree == 0 for m in middle):
                continue
            coefficient = Fraction(coefficient)
            if coefficient:
                key = (left, middle, right)
                clean[key] = clean.get(key, Fraction(0)) + coefficient
        self._terms = {key: c for key, c in clean.items() if c}

    @classmethod
    def pure(
        cls,
        middle: Sequence[PBWMonomial],
        coefficient: Coefficient = 1,
        left: PBWMonomial = ONE,
        right: PBWMonomial = ONE,
    ) -> "BarElement":
        return cls(len(middle), {(left, tuple(middle), right): coefficient})

    @classmethod
    def from_words(cls, words: Sequence[str], coefficient: Coefficient = 1) -> "BarElement":
        return cls.pure([monomial_from_word(w) for w in words], coefficient)

    @classmethod
    def from_factors(
        cls,
        factors: Sequence[AlgebraElement],
        coefficient: Coefficient = 1,
        left: Optional[AlgebraElement] = None,
        right: Optional[AlgebraElement] = None,
    ) -> "BarElement":
        """Expand l (x) a_1 (x) ... (x) a_k (x) r multilinearly."""
        left = left if left is not None else AlgebraElement.scalar(1)
        right = right if right is not None else AlgebraElement.scalar(1)
        partial: List[Tuple[Tuple[PBWMonomial, ...], Fraction]] = [((), Fraction(coefficient))]
        for factor in factors:
            partial = [(middle + (m,), c * v) for middle, c in partial for m, v in factor.items()]
        terms: Dict[BarTerm, Fraction] = {}
        for lm, lc in left.items():
            for rm, rc in right.items():
                for middle, c in partial:
                    key = (lm, middle, rm)
                    terms[key] = terms.get(key, Fraction(0)) + c * lc * rc
        return cls(len(factors), terms)

    def items(self) -> List[Tuple[BarTerm, Fraction]]:
        return sorted(
            self._terms.items(),
            key=lambda item: (item[0][0].sort_key(), tuple(m.sort_key() for m in item[0][1]), item[0][2].sort_key()),
        )

    def is_zero(self) -> bool:
        return not self._terms

    def weights(self) -> List[int]:
        return sorted({l.degree + sum(m.degree for m in middle) + r.degree for (l, middle, r) in self._terms})

    def __add__(self, other: "BarElement") -> "BarElement":
        if other.degree != self.degree:
            raise ParameterOutOfRange(f"Cannot combine bar degrees {self.degree} and {other.degree}")
        result = dict(self._terms)
        for key, coefficient in other._terms.items():
            result[key] = result.get(key, Fraction(0)) + coefficient
        return BarElement(self.degree, result)

    def __neg__(self) -> "BarElement":
        return BarElement(self.degree, {key: -c for key, c in self._terms.items()})

    def __sub__(self, other: "BarElement") -> "BarElement":
        return self + (-other)

    def scale(self, factor: Coefficient) -> "BarElement":
        return BarElement(self.degree, {key: c * Fraction(factor) for key, c in self._terms.items()})

    def act(self, left: AlgebraElement, right: AlgebraElement) -> "BarElement":
        accumulated: Dict[BarTerm, Fraction] = {}
        for (l, middle, r), coefficient in self._terms.items():
            for lm, lc in left.items():
                for new_left, lv in multiply_monomials(lm, l):
                    for rm, rc in right.items():
                        for new_right, rv in multiply_monomials(r, rm):
                            key = (new_left, middle, new_right)
                            accumulated[key] = accumulated.get(key, Fraction(0)) + coefficient * lc * lv * rc * rv
        return BarElement(self.degree, accumulated)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BarElement):
            return NotImplemented
        return self.degree == other.degree and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.degree, frozenset(self._terms.items())))

    def render(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for (left, middle, right), coefficient in self.items():
            body = "⊗".join([left.render()] + [m.render() for m in middle] + [right.render()])
            pieces.append(body if coefficient == 1 else f"{format_coefficient(coefficient)}*{body}")
        return " + ".join(pieces)

    def __repr__(self) -> str:
        return f"BarElement[{self.degree}]({self.render()})"


def bar_differential(n: int, element: BarElement) -> BarElement:
    """
    b_n(a_0 (x) ... (x) a_{n+1}) = sum_i (-1)^i a_0 (x) ... (x) a_i a_{i+1} (x) ... (x) a_{n+1}.
    """
    if n < 1:
        raise ParameterOutOfRange(f"Bar differential degree must be >= 1, got {n}")
    if element.degree != n:
        raise ParameterOutOfRange(f"Element has bar degree {element.degree}, not {n}")
    accumulated: Dict[BarTerm, Fraction] = {}

    def add(key: BarTerm, value: Fraction) -> None:
        accumulated[key] = accumulated.get(key, Fraction(0)) + value

    for (left, middle, right), coefficient in element._terms.items():
        for monomial, value in multiply_monomials(left, middle[0]):
            add((monomial, middle[1:], right), coefficient * value)
        for i in range(n - 1):
            sign = (-1) ** (i + 1)
            for monomial, value in multiply_monomials(middle[i], middle[i + 1]):
                add((left, middle[:i] + (monomial,) + middle[i + 2:], right), sign * coefficient * value)
        for monomial, value in multiply_monomials(middle[-1], right):
            add((left, middle[:-1], monomial), (-1) ** n * coefficient * value)
    return BarElement(n - 1, accumulated)


# Comparison morphisms


@lru_cache(maxsize=None)
def comparison_f(n: int, tag: GeneratorTag) -> BarElement:
    """
    The comparison morphism f_n : P -> Bar on the generator tag of homological degree n.
    """
    if n < 0 or tag.index != n - 1:
        raise ParameterOutOfRange(f"Generator {tag} does not sit in homological degree {n}")
    if n == 0:
        return BarElement.pure(())
    if n == 1:
        return BarElement.from_words([tag.word])
    if tag.kind == GeneratorKind.XPOW:
        return BarElement.from_words(["x"] * n)

    parts: List[Tuple[int, str, List[str]]] = [
        (1, "y", ["y"] + ["x"] * (n - 1)),
        (1, "", ["y", "yx"] + ["x"] * (n - 2)),
        (-1, "x", ["y", "y"] + ["x"] * (n - 2)),
        (-1, "", ["x", "yy"] + ["x"] * (n - 2)),
        (-1, "x", ["y"] + ["x"] * (n - 1)),
        (-1, "", ["x", "yx"] + ["x"] * (n - 2)),
    ]
    result = BarElement(n)
    for coefficient, left, words in parts:
        result = result + BarElement.pure([monomial_from_word(w) for w in words], coefficient, monomial_from_word(left))
    for i in range(n - 2):
        tail = ["x"] * (n - 3 - i)
        for word in ("yy", "yx"):
            result = result + BarElement.from_words(["x"] * (2 + i) + [word] + tail, (-1) ** i)
    return result


def apply_f(element: BimoduleElement) -> BarElement:
    """Extend f bimodule-linearly to P_n."""
    n = element.index + 1
    result = BarElement(n)
    for (left, tag, right), coefficient in element._terms.items():
        image = comparison_f(n, tag).act(AlgebraElement.monomial(left), AlgebraElement.monomial(right))
        result = result + image.scale(coefficient)
    return result


_FACTOR_NAMES: Dict[PBWMonomial, str] = {
    PBWMonomial(1, 0, 0): "x",
    PBWMonomial(0, 0, 1): "y",
    PBWMonomial(0, 1, 0): "yx",
    PBWMonomial(0, 0, 2): "yy",
    PBWMonomial(1, 0, 2): "xyy",
    PBWMonomial(1, 1, 0): "xyx",
}


def _word_positions(monomial: PBWMonomial) -> BimoduleElement:
    parts = []
    word = monomial.word
    for j, letter in enumerate(word):
        parts.append((1, word[:j], X_TAG if letter == "x" else Y_TAG, word[j + 1:]))
    return BimoduleElement.from_parts(0, parts)


@lru_cache(maxsize=None)
def _g_on_middle(middle: Tuple[PBWMonomial, ...]) -> BimoduleElement:
    n = len(middle)
    if n == 0:
        return BimoduleElement.generator(UNIT_TAG)
    if n == 1:
        return _word_positions(middle[0])

    index = n - 1
    top_x = x_power(index)
    top_y = y_square_x_power(index)
    names = [_FACTOR_NAMES.get(m) for m in middle]
    if None in names:
        raise PatternUnsupported(f"Factor outside the comparison domain in {[m.render() for m in middle]}")
    special = [(i, name) for i, name in enumerate(names) if name != "x"]

    if not special:
        return BimoduleElement.generator(top_x)
    zero = BimoduleElement.zero(index)
    if len(special) == 1:
        i, name = special[0]
        if name == "y" and i == 0:
            return zero
        if name == "yy":
            return BimoduleElement.generator(top_y) if i == 0 else zero
        if name == "yx":
            return BimoduleElement.from_parts(index, [(1, "y", top_x, "")]) if i == 0 else zero
        if name == "xyy":
            tail = [(1, "", top_x, "yy")]
            if i < n - 1:
                tail.append((1, "", top_x, "yx"))
            if i == 0:
                tail.insert(0, (1, "x", top_y, ""))
            return BimoduleElement.from_parts(index, tail)
        if name == "xyx":
            if i == 0:
                return BimoduleElement.from_parts(index, [(1, "xy", top_x, "")])
            if i == n - 1:
                return BimoduleElement.from_parts(index, [(1, "", top_x, "yx")])
            return zero
    if len(special) == 2 and special[0] == (0, "y") and special[1][0] == 1:
        if special[1][1] == "yx":
            return BimoduleElement.generator(top_y)
        if special[1][1] == "y":
            return zero
    raise PatternUnsupported(f"No comparison value for {[m.render() for m in middle]}")


def supports_comparison_g(middle: Sequence[PBWMonomial]) -> bool:
    try:
        _g_on_middle(tuple(middle))
    except PatternUnsupported:
        return False
    return True


def comparison_g(n: int, element: BarElement) -> BimoduleElement:
    """
    The comparison morphism g_n : Bar -> P on bar terms of degree n.

    Raises:
        PatternUnsupported: if a term lies outside the supported patterns
    """
    if element.degree != n:
        raise ParameterOutOfRange(f"Element has bar degree {element.degree}, not {n}")
    result = BimoduleElement.zero(n - 1)
    for (left, middle, right), coefficient in element._terms.items():
        image = _g_on_middle(middle)
        if image.is_zero():
            continue
        result = result + image.act(AlgebraElement.monomial(left), AlgebraElement.monomial(right)).scale(coefficient)
    return result


# Verification


_G_FACTORS = tuple(_FACTOR_NAMES)


def verify_resolution(max_index: int = 8, f_degree: int = 5, g_length: int = 5) -> List[CheckResult]:
    """
    d o d = 0, minimality and weight preservation of the differentials, the bicomplex reassembly,
    f and g as chain maps (g on its domain) and g o f = id.
    """
    results = []
    for n in range(max_index + 1):
        for tag in generators(n):
            indices = {"index": n, "generator": tag.render()}
            image = differential(n, BimoduleElement.generator(tag))
            if n >= 1:
                results.append(CheckResult.compare("resolution.complex", indices, True, differential(n - 1, image).is_zero()))
            radical = all(left.degree + right.degree >= 1 for (left, _, right), _ in image.items())
            results.append(CheckResult.compare("resolution.minimal", indices, True, radical))
            results.append(CheckResult.compare("resolution.weight", indices, [tag.internal_degree], image.weights()))
            if n >= 2:
                reassembled = total_differential(n, BimoduleElement.generator(tag))
                results.append(CheckResult.compare("resolution.bicomplex", indices, image.render(), reassembled.render()))

    for m in range(1, f_degree + 1):
        for tag in generators_in_degree(m):
            indices = {"degree": m, "generator": tag.render()}
            lhs = bar_differential(m, comparison_f(m, tag))
            rhs = apply_f(differential(m - 1, BimoduleElement.generator(tag)))
            results.append(CheckResult.compare("resolution.f-chain-map", indices, rhs.render(), lhs.render()))
            back = comparison_g(m, comparison_f(m, tag))
            results.append(CheckResult.compare("resolution.g-after-f", indices, BimoduleElement.generator(tag).render(), back.render()))

    checked = skipped = 0
    for length in range(2, g_length + 1):
        for middle in product(_G_FACTORS, repeat=length):
            if not supports_comparison_g(middle):
                continue
            element = BarElement.pure(middle)
            indices = {"length": length, "middle": "|".join(m.render() for m in middle)}
            try:
                rhs = comparison_g(length - 1, bar_differential(length, element))
            except PatternUnsupported as e:
                results.append(CheckResult.skipped("resolution.g-chain-map", indices, f"boundary leaves the domain of g: {e}"))
                skipped += 1
                continue
            lhs = differential(length - 1, comparison_g(length, element))
            results.append(CheckResult.compare("resolution.g-chain-map", indices, rhs.render(), lhs.render()))
            checked += 1
    detail = f"{checked} bar terms checked, {skipped} skipped"
    results.append(CheckResult.compare("resolution.g-domain", {"max_length": g_length}, True, checked > 0, detail=detail))
    logger.info(f"Resolution checks: {len(results)} results, g verified on {checked} bar terms, {skipped} skipped")
    return sorted(results, key=CheckResult.sort_key)
