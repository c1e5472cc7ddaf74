# Copyright (c) Antmicro
# SPDX-License-Identifier: Apache-2.0

import random
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Optional, Sequence, Union

from .coeff import Laurent, ONE, Rational
from .trees import RootedTree, trees_up_to

class Sector(Enum):
    PLAIN = 'plain'
    HAT = 'hat'

    @property
    def sign(self) -> int:
        # The hat sector is the mirror algebra with q replaced by q^-1
        return 1 if self is Sector.PLAIN else -1

@dataclass(frozen=True)
class EPower:
    power: int

Generator = Union[RootedTree, EPower]

@dataclass(frozen=True)
class BasisMonomial:
    """ Normal-form basis element: sorted tree word followed by e^e_power. """
    sector: Sector
    trees: tuple[RootedTree, ...] = ()
    e_power: int = 0

    def __post_init__(self):
        assert all(not b < a for a, b in zip(self.trees, self.trees[1:])), \
            f'Trees of a basis monomial must be sorted: {[str(t) for t in self.trees]}'
        if not self.trees and self.e_power == 0:
            # The empty word is the adjoined unit, whichever sector it came from
            object.__setattr__(self, 'sector', Sector.PLAIN)

    @property
    def vertices(self) -> int:
        return sum(tree.vertices for tree in self.trees)

    @property
    def is_unit(self) -> bool:
        return not self.trees and self.e_power == 0

    @property
    def sort_key(self) -> tuple:
        return (self.sector is Sector.HAT, tuple(tree.sort_key for tree in self.trees), self.e_power)

    def word(self) -> list[Generator]:
        word: list[Generator] = list(self.trees)
        if self.e_power != 0:
            word.append(EPower(self.e_power))
        return word

    def with_sector(self, sector: Sector) -> 'BasisMonomial':
        return BasisMonomial(sector, self.trees, self.e_power)

    def __str__(self) -> str:
        from .textio import print_monomial
        return print_monomial(self)

UNIT = BasisMonomial(Sector.PLAIN)

def accumulate_term(target: dict, key, coefficient: Laurent):
    total = target.get(key)
    total = coefficient if total is None else total + coefficient
    if total:
        target[key] = total
    else:
        target.pop(key, None)

class Element:
    """ Finite linear combination of basis monomials with Laurent coefficients. """
    __slots__ = ('_support',)

    def __init__(self, support: Optional[Mapping[BasisMonomial, Union[Laurent, Rational]]] = None):
        cleaned: dict[BasisMonomial, Laurent] = {}
        for monomial, coefficient in (support or {}).items():
            coefficient = Laurent.promote(coefficient)
            if coefficient:
                cleaned[monomial] = coefficient
        self._support = cleaned

    @classmethod
    def from_monomial(cls, monomial: BasisMonomial, coefficient: Union[Laurent, Rational] = ONE) -> 'Element':
        return cls({monomial: coefficient})

    @classmethod
    def from_tree(cls, tree: RootedTree, sector: Sector = Sector.PLAIN) -> 'Element':
        return cls({BasisMonomial(sector, (tree,)): ONE})

    @classmethod
    def e(cls, power: int = 1, sector: Sector = Sector.PLAIN) -> 'Element':
        return cls({BasisMonomial(sector, (), power): ONE})

    def items(self) -> list[tuple[BasisMonomial, Laurent]]:
        return sorted(self._support.items(), key=lambda item: item[0].sort_key)

    def monomials(self) -> list[BasisMonomial]:
        return [monomial for monomial, _ in self.items()]

    def coefficient(self, monomial: BasisMonomial) -> Laurent:
        return self._support.get(monomial, Laurent())

    def scale(self, coefficient: Union[Laurent, Rational]) -> 'Element':
        coefficient = Laurent.promote(coefficient)
        return Element({m: c * coefficient for m, c in self._support.items()})

    def specialize(self, at: Union[Rational, float]) -> dict[BasisMonomial, Union[Fraction, float]]:
        result = {m: c.evaluate(at) for m, c in self._support.items()}
        return {m: value for m, value in result.items() if value != 0}

    def __len__(self) -> int:
        return len(self._support)

    def __bool__(self) -> bool:
        return bool(self._support)

    def __add__(self, other: 'Element') -> 'Element':
        if not isinstance(other, Element):
            return NotImplemented
        result = dict(self._support)
        for monomial, coefficient in other._support.items():
            accumulate_term(result, monomial, coefficient)
        return Element(result)

    def __neg__(self) -> 'Element':
        return Element({m: -c for m, c in self._support.items()})

    def __sub__(self, other: 'Element') -> 'Element':
        if not isinstance(other, Element):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other) -> 'Element':
        if isinstance(other, Element):
            return multiply(self, other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other) -> 'Element':
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self._support == other._support

    def __hash__(self) -> int:
        return hash(frozenset(self._support.items()))

    def __str__(self) -> str:
        from .textio import print_element
        return print_element(self)

    def __repr__(self) -> str:
        return f'Element({str(self)!r})'

ZERO_ELEMENT = Element()
UNIT_ELEMENT = Element.from_monomial(UNIT)

def _normal_form(sector: Sector, word: Iterable[Generator]) -> tuple[int, BasisMonomial]:
    # Each pair of generators that changes relative order contributes its own
    # exchange exponent, the total does not depend on the rewriting path
    exponent = 0
    e_power = 0
    trees: list[RootedTree] = []
    for generator in word:
        if isinstance(generator, EPower):
            e_power += generator.power
            continue
        exponent += e_power * generator.vertices
        for earlier in trees:
            if generator < earlier:
                exponent += generator.vertices - earlier.vertices
        trees.append(generator)
    return sector.sign * exponent, BasisMonomial(sector, tuple(sorted(trees)), e_power)

def normalize_word(sector: Sector, word: Sequence[Generator]) -> Element:
    exponent, monomial = _normal_form(sector, word)
    return Element.from_monomial(monomial, Laurent.monomial(exponent))

@lru_cache(maxsize=None)
def multiply_monomials(a: BasisMonomial, b: BasisMonomial) -> tuple[int, BasisMonomial]:
    """ Product of two basis monomials as (q exponent, basis monomial). """
    if a.sector is b.sector:
        return _normal_form(a.sector, a.word() + b.word())
    # Mixed products move the plain factor into the hat sector
    exponent, product = _normal_form(Sector.HAT, a.word() + b.word())
    if a.sector is Sector.PLAIN:
        return exponent - a.vertices, product
    return exponent + b.vertices, product

def multiply(a: Element, b: Element) -> Element:
    result: dict[BasisMonomial, Laurent] = {}
    for m, c in a._support.items():
        for n, d in b._support.items():
            exponent, product = multiply_monomials(m, n)
            accumulate_term(result, product, (c * d).shifted(exponent))
    return Element(result)

def hat_twist(a: Element, invert_coefficients: bool = True) -> Element:
    result: dict[BasisMonomial, Laurent] = {}
    for monomial, coefficient in a._support.items():
        if monomial.sector is Sector.HAT:
            raise ValueError(f'hat_twist expects plain input, got {monomial}')
        image = coefficient.q_invert() if invert_coefficients else coefficient
        accumulate_term(result, monomial.with_sector(Sector.HAT), image)
    return Element(result)

def hat_untwist(a: Element, invert_coefficients: bool = True) -> Element:
    result: dict[BasisMonomial, Laurent] = {}
    for monomial, coefficient in a._support.items():
        if monomial.sector is Sector.PLAIN and not monomial.is_unit:
            raise ValueError(f'hat_untwist expects hat input, got {monomial}')
        image = coefficient.q_invert() if invert_coefficients else coefficient
        accumulate_term(result, monomial.with_sector(Sector.PLAIN), image)
    return Element(result)

TensorKey = tuple[BasisMonomial, ...]

class Tensor:
    """ Finite linear combination of tuples of basis monomials, all of one arity. """
    __slots__ = ('_support', 'arity')

    def __init__(self, arity: int, support: Optional[Mapping[TensorKey, Union[Laurent, Rational]]] = None):
        cleaned: dict[TensorKey, Laurent] = {}
        for key, coefficient in (support or {}).items():
            assert len(key) == arity, f'Tensor key of arity {len(key)} in a tensor of arity {arity}'
            coefficient = Laurent.promote(coefficient)
            if coefficient:
                cleaned[key] = coefficient
        self._support = cleaned
        self.arity = arity

    @classmethod
    def unit(cls, arity: int = 2) -> 'Tensor':
        return cls(arity, {(UNIT,) * arity: ONE})

    @classmethod
    def outer(cls, *factors: Element) -> 'Tensor':
        result: dict[TensorKey, Laurent] = {(): ONE}
        for factor in factors:
            extended: dict[TensorKey, Laurent] = {}
            for key, coefficient in result.items():
                for monomial, value in factor._support.items():
                    accumulate_term(extended, key + (monomial,), coefficient * value)
            result = extended
        return cls(len(factors), result)

    def items(self) -> list[tuple[TensorKey, Laurent]]:
        return sorted(self._support.items(), key=lambda item: tuple(m.sort_key for m in item[0]))

    def scale(self, coefficient: Union[Laurent, Rational]) -> 'Tensor':
        coefficient = Laurent.promote(coefficient)
        return Tensor(self.arity, {k: c * coefficient for k, c in self._support.items()})

    def expand_slot(self, slot: int, function: Callable[[BasisMonomial], 'Tensor']) -> 'Tensor':
        """ Replace the monomial in `slot` by the tensor `function` maps it to. """
        result: dict[TensorKey, Laurent] = {}
        arity = None
        for key, coefficient in self._support.items():
            image = function(key[slot])
            arity = self.arity - 1 + image.arity
            for inner, value in image._support.items():
                accumulate_term(result, key[:slot] + inner + key[slot + 1:], coefficient * value)
        return Tensor(arity if arity is not None else self.arity + 1, result)

    def contract(self) -> Element:
        """ Multiply the slots of every term, evaluated left to right. """
        result: dict[BasisMonomial, Laurent] = {}
        for key, coefficient in self._support.items():
            exponent, product = 0, UNIT
            for monomial in key:
                step, product = multiply_monomials(product, monomial)
                exponent += step
            accumulate_term(result, product, coefficient.shifted(exponent))
        return Element(result)

    def __len__(self) -> int:
        return len(self._support)

    def __bool__(self) -> bool:
        return bool(self._support)

    def __add__(self, other: 'Tensor') -> 'Tensor':
        if not isinstance(other, Tensor):
            return NotImplemented
        assert self.arity == other.arity, f'Cannot add tensors of arity {self.arity} and {other.arity}'
        result = dict(self._support)
        for key, coefficient in other._support.items():
            accumulate_term(result, key, coefficient)
        return Tensor(self.arity, result)

    def __neg__(self) -> 'Tensor':
        return Tensor(self.arity, {k: -c for k, c in self._support.items()})

    def __sub__(self, other: 'Tensor') -> 'Tensor':
        if not isinstance(other, Tensor):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other) -> 'Tensor':
        if isinstance(other, Tensor):
            return tensor_multiply(self, other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other) -> 'Tensor':
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __eq__(self, other) -> bool:
        if not isinstance(other, Tensor):
            return NotImplemented
        return self.arity == other.arity and self._support == other._support

    def __hash__(self) -> int:
        return hash((self.arity, frozenset(self._support.items())))

    def __str__(self) -> str:
        from .textio import print_tensor
        return print_tensor(self)

    def __repr__(self) -> str:
        return f'Tensor({str(self)!r})'

def tensor_multiply(a: Tensor, b: Tensor) -> Tensor:
    assert a.arity == b.arity, f'Cannot multiply tensors of arity {a.arity} and {b.arity}'
    result: dict[TensorKey, Laurent] = {}
    for k1, c1 in a._support.items():
        for k2, c2 in b._support.items():
            exponent = 0
            key = []
            for m, n in zip(k1, k2):
                step, product = multiply_monomials(m, n)
                exponent += step
                key.append(product)
            accumulate_term(result, tuple(key), (c1 * c2).shifted(exponent))
    return Tensor(a.arity, result)

class ForestPolynomial:
    """ Element of the commutative algebra of forests with rational coefficients. """
    __slots__ = ('_support',)

    def __init__(self, support: Optional[Mapping[Sequence[RootedTree], Rational]] = None):
        cleaned: dict[tuple[RootedTree, ...], Fraction] = {}
        for forest, coefficient in (support or {}).items():
            key = tuple(sorted(forest))
            cleaned[key] = cleaned.get(key, Fraction(0)) + Fraction(coefficient)
        self._support = {k: v for k, v in cleaned.items() if v != 0}

    @classmethod
    def from_forest(cls, forest: Iterable[RootedTree], coefficient: Rational = 1) -> 'ForestPolynomial':
        return cls({tuple(forest): coefficient})

    def items(self) -> list[tuple[tuple[RootedTree, ...], Fraction]]:
        return sorted(self._support.items(), key=lambda item: tuple(t.sort_key for t in item[0]))

    def __bool__(self) -> bool:
        return bool(self._support)

    def __add__(self, other: 'ForestPolynomial') -> 'ForestPolynomial':
        result = dict(self._support)
        for key, value in other._support.items():
            result[key] = result.get(key, Fraction(0)) + value
        return ForestPolynomial(result)

    def __neg__(self) -> 'ForestPolynomial':
        return ForestPolynomial({k: -v for k, v in self._support.items()})

    def __sub__(self, other: 'ForestPolynomial') -> 'ForestPolynomial':
        return self + (-other)

    def __mul__(self, other) -> 'ForestPolynomial':
        if not isinstance(other, ForestPolynomial):
            other = Fraction(other)
            return ForestPolynomial({k: v * other for k, v in self._support.items()})
        result: dict[tuple[RootedTree, ...], Fraction] = {}
        for k1, v1 in self._support.items():
            for k2, v2 in other._support.items():
                key = tuple(sorted(k1 + k2))
                result[key] = result.get(key, Fraction(0)) + v1 * v2
        return ForestPolynomial(result)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, ForestPolynomial):
            return NotImplemented
        return self._support == other._support

    def __hash__(self) -> int:
        return hash(frozenset(self._support.items()))

    def __str__(self) -> str:
        from .coeff import format_rational
        if not self._support:
            return '0'
        output = ''
        for forest, value in self.items():
            body = '*'.join(str(tree) for tree in forest) if forest else '1'
            if value == 1:
                term = body
            elif value == -1:
                term = f'-{body}'
            else:
                term = f'{format_rational(value)}*{body}'
            if output and not term.startswith('-'):
                output += '+'
            output += term
        return output

    def __repr__(self) -> str:
        return f'ForestPolynomial({str(self)!r})'

def classical_project(a: Element) -> ForestPolynomial:
    """ Image in the commutative forest algebra: q = 1, e = 1, sectors merged. """
    result: dict[tuple[RootedTree, ...], Fraction] = {}
    for monomial, coefficient in a._support.items():
        result[monomial.trees] = result.get(monomial.trees, Fraction(0)) + coefficient.evaluate(1)
    return ForestPolynomial(result)

def sector_pattern(*monomials: BasisMonomial) -> str:
    return '*'.join(m.sector.value for m in monomials)

def associativity_discrepancy(a: BasisMonomial, b: BasisMonomial, c: BasisMonomial) -> Optional[int]:
    """ Exponent k with (ab)c = q^k a(bc), None if the bracketings differ beyond a q-power. """
    e1, ab = multiply_monomials(a, b)
    e2, left = multiply_monomials(ab, c)
    e3, bc = multiply_monomials(b, c)
    e4, right = multiply_monomials(a, bc)
    if left != right:
        return None
    return (e1 + e2) - (e3 + e4)

def random_monomial(rng: random.Random, v_max: int, sector: Optional[Sector] = None) -> BasisMonomial:
    pool = trees_up_to(v_max)
    budget = rng.randint(0, v_max)
    trees: list[RootedTree] = []
    while True:
        candidates = [tree for tree in pool if tree.vertices <= budget]
        if not candidates or rng.random() < 0.3:
            break
        tree = rng.choice(candidates)
        trees.append(tree)
        budget -= tree.vertices
    if sector is None:
        sector = rng.choice([Sector.PLAIN, Sector.HAT])
    return BasisMonomial(sector, tuple(sorted(trees)), rng.choice([-1, 0, 1]))

@dataclass
class AssociativityReport:
    samples: int = 0
    associative: int = 0
    # Bracketings landing on different basis monomials (unit collapse across sectors)
    mismatched: int = 0
    discrepancies: dict[str, Counter] = field(default_factory=dict)

    def record(self, pattern: str, exponent: Optional[int]):
        self.samples += 1
        if exponent == 0:
            self.associative += 1
        elif exponent is None:
            self.mismatched += 1
        else:
            self.discrepancies.setdefault(pattern, Counter())[exponent] += 1

def associativity_probe(v_max: int, samples: int, seed: int) -> AssociativityReport:
    assert v_max <= 4, f'The associativity probe supports v_max <= 4, got {v_max=}'
    rng = random.Random(seed)
    report = AssociativityReport()
    for _ in range(samples):
        triple = [random_monomial(rng, v_max) for _ in range(3)]
        report.record(sector_pattern(*triple), associativity_discrepancy(*triple))
    return report
